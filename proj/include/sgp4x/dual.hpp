#pragma once

// Forward-mode dual numbers with K simultaneously seeded directions.

#include <array>
#include <cmath>
#include <cstddef>

#include "sgp4x/scalar.hpp"

namespace sgp4x {

template <class R, std::size_t K>
class Dual {
 public:
  using tangent_type = std::array<R, K>;

  constexpr Dual() = default;
  // Constants carry zero tangent.
  constexpr Dual(R value) : value_(value), tangent_{} {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(R value, const tangent_type& tangent) : value_(value), tangent_(tangent) {}

  /// A variable seeded along direction `k`.
  static constexpr Dual variable(R value, std::size_t k) {
    Dual d(value);
    d.tangent_[k] = R(1);
    return d;
  }

  constexpr R value() const noexcept { return value_; }
  constexpr const tangent_type& tangent() const noexcept { return tangent_; }
  constexpr R tangent(std::size_t k) const noexcept { return tangent_[k]; }

  friend constexpr R value_of(const Dual& x) noexcept { return x.value_; }

  friend constexpr Dual operator-(const Dual& a) {
    Dual out(-a.value_);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = -a.tangent_[k];
    return out;
  }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    Dual out(a.value_ + b.value_);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = a.tangent_[k] + b.tangent_[k];
    return out;
  }
  friend constexpr Dual operator+(const Dual& a, R b) { return Dual(a.value_ + b, a.tangent_); }
  friend constexpr Dual operator+(R a, const Dual& b) { return Dual(a + b.value_, b.tangent_); }

  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    Dual out(a.value_ - b.value_);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = a.tangent_[k] - b.tangent_[k];
    return out;
  }
  friend constexpr Dual operator-(const Dual& a, R b) { return Dual(a.value_ - b, a.tangent_); }
  friend constexpr Dual operator-(R a, const Dual& b) { return a + (-b); }

  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    Dual out(a.value_ * b.value_);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = a.tangent_[k] * b.value_ + a.value_ * b.tangent_[k];
    return out;
  }
  friend constexpr Dual operator*(const Dual& a, R b) {
    Dual out(a.value_ * b);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = a.tangent_[k] * b;
    return out;
  }
  friend constexpr Dual operator*(R a, const Dual& b) { return b * a; }

  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    const R q = a.value_ / b.value_;
    Dual out(q);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = (a.tangent_[k] - q * b.tangent_[k]) / b.value_;
    return out;
  }
  friend constexpr Dual operator/(const Dual& a, R b) {
    Dual out(a.value_ / b);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = a.tangent_[k] / b;
    return out;
  }
  friend constexpr Dual operator/(R a, const Dual& b) {
    const R q = a / b.value_;
    Dual out(q);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = -q * b.tangent_[k] / b.value_;
    return out;
  }

  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }

  // Elementary functions: value f(x), tangent f'(x) * dx.

  friend Dual sin(const Dual& x) { return x.chain(std::sin(x.value_), std::cos(x.value_)); }
  friend Dual cos(const Dual& x) { return x.chain(std::cos(x.value_), -std::sin(x.value_)); }
  friend Dual sqrt(const Dual& x) {
    const R s = std::sqrt(x.value_);
    return x.chain(s, R(0.5) / s);
  }
  friend Dual exp(const Dual& x) {
    const R e = std::exp(x.value_);
    return x.chain(e, e);
  }
  friend Dual log(const Dual& x) { return x.chain(std::log(x.value_), R(1) / x.value_); }
  friend Dual abs(const Dual& x) { return x.value_ < R(0) ? -x : x; }
  friend Dual fabs(const Dual& x) { return abs(x); }

  friend Dual pow(const Dual& x, R p) { return x.chain(std::pow(x.value_, p), p * std::pow(x.value_, p - R(1))); }
  friend Dual pow(const Dual& x, const Dual& p) {
    const R v = std::pow(x.value_, p.value_);
    Dual out(v);
    const R dx = p.value_ * std::pow(x.value_, p.value_ - R(1));
    const R dp = v * std::log(x.value_);
    for (std::size_t k = 0; k < K; ++k)
      out.tangent_[k] = dx * x.tangent_[k] + (p.tangent_[k] == R(0) ? R(0) : dp * p.tangent_[k]);
    return out;
  }

  friend Dual atan2(const Dual& y, const Dual& x) {
    const R den = x.value_ * x.value_ + y.value_ * y.value_;
    Dual out(std::atan2(y.value_, x.value_));
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = (x.value_ * y.tangent_[k] - y.value_ * x.tangent_[k]) / den;
    return out;
  }

  // d/da fmod(a, b) = 1 and d/db = -trunc(a/b) wherever the quotient is
  // locally constant.
  friend Dual fmod(const Dual& a, R b) { return Dual(std::fmod(a.value_, b), a.tangent_); }
  friend Dual fmod(const Dual& a, const Dual& b) {
    const R r = std::fmod(a.value_, b.value_);
    const R n = (a.value_ - r) / b.value_;
    Dual out(r);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = a.tangent_[k] - n * b.tangent_[k];
    return out;
  }

 private:
  Dual chain(R value, R derivative) const {
    Dual out(value);
    for (std::size_t k = 0; k < K; ++k) out.tangent_[k] = derivative * tangent_[k];
    return out;
  }

  R value_{};
  tangent_type tangent_{};
};

template <class R, std::size_t K>
struct real_type<Dual<R, K>> {
  using type = R;
};

}  // namespace sgp4x
