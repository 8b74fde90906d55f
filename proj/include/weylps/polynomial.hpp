#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylps/linalg.hpp"
#include "weylps/rat.hpp"
#include "weylps/scalar.hpp"

namespace weylps {

using Exponent = std::vector<int>;

/// Graded lexicographic order: lower total degree first, ties broken by
/// comparing exponent vectors lexicographically (larger x0 power first).
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// All exponent vectors of total degree <= degree in nvars variables, in
/// graded-lex order.
std::vector<Exponent> monomials_up_to(std::size_t nvars, int degree);

/// Sparse multivariate polynomial with exact coefficients. Zero coefficients
/// are never stored.
class ExactPolynomial {
 public:
  using Terms = std::map<Exponent, Rat, GradedLex>;

  ExactPolynomial() = default;
  explicit ExactPolynomial(std::size_t nvars) : nvars_(nvars) {}

  static ExactPolynomial constant(std::size_t nvars, const Rat& c);
  static ExactPolynomial variable(std::size_t nvars, std::size_t i);

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] int total_degree() const;
  [[nodiscard]] Rat coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Rat& c);

  [[nodiscard]] ExactPolynomial derivative(std::size_t var) const;

  template <class S>
  S evaluate(const std::vector<S>& x) const;

  ExactPolynomial operator-() const;
  ExactPolynomial& operator+=(const ExactPolynomial& o);
  ExactPolynomial& operator-=(const ExactPolynomial& o);
  friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) { return a += b; }
  friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) { return a -= b; }
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const Rat& c, const ExactPolynomial& p);
  friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, e.g. "2*x0^3*x1 - 1/2*x2 + 5".
  [[nodiscard]] std::string str(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

template <class S>
S ExactPolynomial::evaluate(const std::vector<S>& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("polynomial evaluated at point of wrong dimension");
  int maxdeg = 0;
  for (const auto& [e, c] : terms_)
    for (int k : e) maxdeg = std::max(maxdeg, k);
  std::vector<std::vector<S>> pw(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    pw[i].reserve(static_cast<std::size_t>(maxdeg) + 1);
    pw[i].push_back(from_rat<S>(Rat(1)));
    for (int k = 1; k <= maxdeg; ++k) pw[i].push_back(pw[i].back() * x[i]);
  }
  S acc = from_rat<S>(Rat(0));
  for (const auto& [e, c] : terms_) {
    S t = from_rat<S>(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) t = t * pw[i][static_cast<std::size_t>(e[i])];
    acc = acc + t;
  }
  return acc;
}

/// Floating-point copy of a polynomial for fast repeated evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const ExactPolynomial& p);

  template <class V>
  V operator()(const std::vector<std::vector<V>>& powers) const {
    V acc{};
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      V term(coef_[t]);
      const auto* e = &exps_[t * nvars_];
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) term *= powers[i][e[i]];
      acc += term;
    }
    return acc;
  }
  [[nodiscard]] int max_exponent() const { return max_exp_; }

 private:
  std::size_t nvars_ = 0;
  std::vector<double> coef_;
  std::vector<std::uint8_t> exps_;
  int max_exp_ = 0;
};

/// Deterministic source of random rationals.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rat rational(long num_bound = 20, long den_bound = 9);
  RatVector vector(std::size_t n, long num_bound = 20, long den_bound = 9);
  /// Rational whose denominator is a product of two largish primes; used to
  /// push lattice samples off special loci.
  Rat generic_offset();
  /// Parameter vector of length n with exact unit sum.
  RatVector unit_sum(std::size_t n, long num_bound = 20, long den_bound = 9);
  double uniform(double lo, double hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Raised by the interpolation routines.
class InterpolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolySample {
  RatVector point;
  Rat value;
};

/// Solves the exact Vandermonde-type system for the coefficients of a
/// polynomial of total degree <= degree_bound through the samples.
ExactPolynomial interpolate_polynomial(const std::vector<PolySample>& samples, std::size_t nvars, int degree_bound);

using RatMap = std::function<RatVector(const RatVector&)>;

/// Recovers a polynomial map R^nvars -> R^nout of total degree <= degree_bound
/// from values on a shifted principal simplex lattice (Newton forward
/// differences), then checks `verify_points` random held-out points.
/// The map may throw SingularError at a sample; the lattice is then reshifted.
std::vector<ExactPolynomial> interpolate_polynomial_map(const RatMap& f, std::size_t nvars, std::size_t nout,
                                                        int degree_bound, RationalSampler& sampler,
                                                        int verify_points = 8);

}  // namespace weylps
