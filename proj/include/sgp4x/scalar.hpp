#pragma once

#include <type_traits>

namespace sgp4x {

/// Underlying IEEE type of a kernel scalar. Specialised for dual numbers.
template <class T>
struct real_type {
  using type = T;
};

template <class T>
using real_t = typename real_type<T>::type;

/// Primal value used for every comparison the kernel makes.
inline constexpr float value_of(float x) noexcept { return x; }
inline constexpr double value_of(double x) noexcept { return x; }

/// Both operands are already evaluated by the caller; this only picks one.
template <class T>
constexpr T select(bool take_first, const T& a, const T& b) {
  return take_first ? a : b;
}

}  // namespace sgp4x
