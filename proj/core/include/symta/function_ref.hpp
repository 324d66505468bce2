#pragma once

#include <functional>
#include <memory>
#include <type_traits>
#include <utility>

namespace symta {

/// Non-owning reference to a callable. The referenced callable must outlive
/// every invocation made through the reference.
template <class Signature>
class FunctionRef;

template <class R, class... Args>
class FunctionRef<R(Args...)> {
 public:
  template <class F>
    requires(!std::is_same_v<std::remove_cvref_t<F>, FunctionRef> &&
             !std::is_function_v<std::remove_reference_t<F>> &&
             std::is_invocable_r_v<R, F &, Args...>)
  FunctionRef(F &&f) noexcept  // NOLINT(google-explicit-constructor)
      : call_([](Storage s, Args... args) -> R {
          return std::invoke(*static_cast<std::remove_reference_t<F> *>(s.object),
                             std::forward<Args>(args)...);
        }) {
    storage_.object = const_cast<void *>(static_cast<const void *>(std::addressof(f)));
  }

  FunctionRef(R (*f)(Args...)) noexcept  // NOLINT(google-explicit-constructor)
      : call_([](Storage s, Args... args) -> R {
          return s.function(std::forward<Args>(args)...);
        }) {
    storage_.function = f;
  }

  R operator()(Args... args) const {
    return call_(storage_, std::forward<Args>(args)...);
  }

 private:
  union Storage {
    void *object;
    R (*function)(Args...);
  };
  Storage storage_{};
  R (*call_)(Storage, Args...);
};

}  // namespace symta
