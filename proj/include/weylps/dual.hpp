#pragma once

#include "weylps/scalar.hpp"

namespace weylps {

/// Forward-mode dual number v + d·ε with ε² = 0. Over Rat this yields exact
/// directional derivatives of rational maps.
template <class S>
struct Dual {
  S v{};
  S d{};

  Dual() = default;
  Dual(S value, S deriv) : v(std::move(value)), d(std::move(deriv)) {}

  Dual operator-() const { return {-v, -d}; }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v = v * o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const S inv = checked_inverse(o.v);
    d = (d - v * inv * o.d) * inv;
    v = v * inv;
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
};

template <class S>
struct ScalarTraits<Dual<S>> {
  static Dual<S> from_rat(const Rat& r) { return {ScalarTraits<S>::from_rat(r), ScalarTraits<S>::from_rat(Rat(0))}; }
  static bool is_zero(const Dual<S>& x) { return ScalarTraits<S>::is_zero(x.v); }
};

}  // namespace weylps
