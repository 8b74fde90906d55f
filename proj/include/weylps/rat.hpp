#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace weylps {

/// Exact rational number backed by GMP. Always stored in canonical form
/// (gcd(|num|, den) = 1, den > 0).
class Rat {
 public:
  Rat() = default;

  template <std::integral I>
  Rat(I value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  Rat(long numerator, long denominator);
  explicit Rat(mpq_class q);

  /// Parses "p/q" or "p" with an optional leading '-'. Throws std::invalid_argument.
  static Rat parse(std::string_view text);

  /// Exact binary value of a finite double.
  static Rat from_double(double value);

  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] const mpq_class& raw() const { return q_; }
  [[nodiscard]] std::string numerator_str() const { return q_.get_num().get_str(); }
  [[nodiscard]] std::string denominator_str() const { return q_.get_den().get_str(); }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) {
    q_ += o.q_;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    q_ -= o.q_;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    q_ *= o.q_;
    return *this;
  }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class q_{0};
};

Rat abs(const Rat& r);
Rat pow(const Rat& base, int exponent);

}  // namespace weylps

template <>
struct std::hash<weylps::Rat> {
  std::size_t operator()(const weylps::Rat& r) const noexcept;
};
