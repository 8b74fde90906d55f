#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "weylps/dual.hpp"
#include "weylps/laurent.hpp"
#include "weylps/linalg.hpp"
#include "weylps/polynomial.hpp"

using namespace weylps;

namespace {

LaurentSeries random_series(RationalSampler& rs, int start, int len, int order) {
  std::vector<Rat> c;
  for (int i = 0; i < len; ++i) c.push_back(rs.rational());
  if (c.front().is_zero()) c.front() = Rat(1);
  return LaurentSeries(start, c, order);
}

// Leibniz expansion, independent of the elimination code.
Rat leibniz_det(const RatMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rat total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rat term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rat parse and print") {
  CHECK(Rat::parse("3/6") == Rat(1, 2));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK(Rat::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630");
  CHECK(Rat(-4, 6).str() == "-2/3");
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("+2"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
  CHECK(Rat::from_double(0.375) == Rat(3, 8));
}

TEST_CASE("rat cross-multiplication identity") {
  RationalSampler rs(11);
  for (int k = 0; k < 200; ++k) {
    const long a = static_cast<long>(rs.engine()() % 1000) - 500;
    const long b = static_cast<long>(rs.engine()() % 999) + 1;
    const long c = static_cast<long>(rs.engine()() % 1000) - 500;
    const long d = static_cast<long>(rs.engine()() % 999) + 1;
    CHECK((Rat(a, b) + Rat(c, d)) * Rat(b * d) == Rat(a * d + c * b));
  }
}

TEST_CASE("series product cancels exponents") {
  const auto a = LaurentSeries::monomial(Rat(1), -1);
  const auto b = LaurentSeries::monomial(Rat(1), 1);
  const auto p = a * b;
  CHECK(p.valuation() == 0);
  CHECK(p.coeff(0) == Rat(1));
  CHECK(p.is_exact());
}

TEST_CASE("series product of pole and zero solutions") {
  // (-1/T + c00 + ...)(-a1 T + c21 T^2 + ...) = a1 - (c21 + a1 c00) T + ...
  RationalSampler rs(5);
  for (int k = 0; k < 20; ++k) {
    const Rat c00 = rs.rational(), c21 = rs.rational(), a1 = rs.rational(), x = rs.rational(), y = rs.rational();
    const LaurentSeries f0(-1, {Rat(-1), c00, x}, 1);
    const LaurentSeries f1(1, {-a1, c21, y}, 3);
    const auto p = f0 * f1;
    CHECK(p.order() == 2);
    CHECK(p.coeff(0) == a1);
    CHECK(p.coeff(1) == -(c21 + a1 * c00));
  }
}

TEST_CASE("series commutativity and order bookkeeping") {
  RationalSampler rs(7);
  for (int k = 0; k < 30; ++k) {
    const auto a = random_series(rs, -1, 6, 4);
    const auto b = random_series(rs, 1, 5, 6);
    const auto d = a * b - b * a;
    CHECK(d.is_zero());
    CHECK((a * b).order() == std::min(4 + 1, 6 - 1));
  }
  CHECK_THROWS_AS((void)LaurentSeries::zero(3).coeff(4), std::out_of_range);
}

TEST_CASE("series inverse") {
  SUBCASE("pole from simple zero") {
    RationalSampler rs(3);
    for (int k = 0; k < 10; ++k) {
      const Rat kk = rs.rational();
      const LaurentSeries u0(1, {Rat(-1), -kk / Rat(2)}, 2);
      const auto f0 = u0.inverse();
      CHECK(f0.order() == 0);
      CHECK(f0.coeff(-1) == Rat(-1));
      CHECK(f0.coeff(0) == kk / Rat(2));
    }
  }
  SUBCASE("unit") {
    const auto one = LaurentSeries::constant(Rat(1));
    CHECK(one.inverse().agrees_with(one));
  }
  SUBCASE("defining property") {
    const auto a = LaurentSeries::linear(Rat(2), Rat(3));
    const auto p = a.inverse(10) * a;
    CHECK(p.order() == 10);
    CHECK(p.coeff(0) == Rat(1));
    for (int n = 1; n <= 10; ++n) CHECK(p.coeff(n).is_zero());
  }
  SUBCASE("involution") {
    RationalSampler rs(9);
    for (int k = 0; k < 20; ++k) {
      const auto a = random_series(rs, static_cast<int>(k % 3) - 1, 7, 6);
      const auto b = a.inverse().inverse();
      CHECK(b.order() == a.order());
      CHECK(b.agrees_with(a));
    }
  }
  CHECK_THROWS_AS((void)LaurentSeries::zero(5).inverse(), SingularError);
}

TEST_CASE("series derivative and evaluation") {
  const LaurentSeries s(-1, {Rat(2), Rat(3), Rat(4)}, LaurentSeries::kExact);  // 2/T + 3 + 4T
  const auto d = s.derivative();
  CHECK(d.coeff(-2) == Rat(-2));
  CHECK(d.coeff(0) == Rat(4));
  CHECK(s.evaluate(Rat(2)) == Rat(1) + Rat(3) + Rat(8));
  CHECK(s.evaluate(0.5) == doctest::Approx(4.0 + 3.0 + 2.0));
}

TEST_CASE("dual numbers differentiate rational functions exactly") {
  // d/dx (x^2 + 1)/(x - 3) at x = 1 : (2x(x-3) - (x^2+1))/(x-3)^2 = (-4 - 2)/4
  const Dual<Rat> x(Rat(1), Rat(1));
  const Dual<Rat> one(Rat(1), Rat(0));
  const Dual<Rat> three(Rat(3), Rat(0));
  const auto y = (x * x + one) / (x - three);
  CHECK(y.v == Rat(-1));
  CHECK(y.d == Rat(-3, 2));
  CHECK_THROWS_AS(one / (x - one), SingularError);
}

TEST_CASE("determinant and kernels") {
  RationalSampler rs(21);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 5);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = (k % 4 == 0 && j == 0) ? Rat(0) : rs.rational(5, 3);
    CHECK(determinant(m) == leibniz_det(m));
  }
  RatMatrix s(3, 3);
  s(0, 0) = 1; s(0, 1) = 2; s(0, 2) = 3;
  s(1, 0) = 2; s(1, 1) = 4; s(1, 2) = 6;
  s(2, 0) = 1; s(2, 1) = 0; s(2, 2) = 1;
  CHECK(determinant(s).is_zero());
  CHECK(kernel_dimension(s) == 1);
  for (const auto& v : kernel_basis(s)) {
    const auto z = s * v;
    for (const auto& e : z) CHECK(e.is_zero());
  }
}

TEST_CASE("interpolation through samples") {
  SUBCASE("constant") {
    std::vector<PolySample> samples{{{Rat(1)}, Rat(5)}, {{Rat(2)}, Rat(5)}, {{Rat(7)}, Rat(5)}};
    const auto p = interpolate_polynomial(samples, 1, 2);
    CHECK(p == ExactPolynomial::constant(1, Rat(5)));
    CHECK(p.str() == "5");
  }
  SUBCASE("x^2 + y") {
    RationalSampler rs(2);
    std::vector<PolySample> samples;
    for (int k = 0; k < 10; ++k) {
      const auto pt = rs.vector(2);
      samples.push_back({pt, pt[0] * pt[0] + pt[1]});
    }
    const auto p = interpolate_polynomial(samples, 2, 2);
    CHECK(p.str({"x", "y"}) == "x^2 + y");
    for (int k = 0; k < 10; ++k) {
      const auto pt = rs.vector(2);
      CHECK(p.evaluate(pt) == pt[0] * pt[0] + pt[1]);
    }
  }
  SUBCASE("1/x is rejected") {
    std::vector<PolySample> samples;
    for (int k = 1; k <= 6; ++k) samples.push_back({{Rat(k)}, Rat(1, k)});
    CHECK_THROWS_WITH_AS(interpolate_polynomial(samples, 1, 3), doctest::Contains("not polynomial"),
                         InterpolationError);
  }
  SUBCASE("degenerate points") {
    std::vector<PolySample> samples;
    for (int k = 1; k <= 6; ++k) samples.push_back({{Rat(k), Rat(k)}, Rat(k)});
    CHECK_THROWS_WITH_AS(interpolate_polynomial(samples, 2, 2), doctest::Contains("general position"),
                         InterpolationError);
  }
}

TEST_CASE("lattice interpolation of a polynomial map") {
  RationalSampler coeffs(4);
  std::vector<ExactPolynomial> truth(3, ExactPolynomial(4));
  for (auto& p : truth) {
    for (const auto& e : monomials_up_to(4, 5)) {
      if (coeffs.engine()() % 4 == 0) p.add_term(e, coeffs.rational());
    }
  }
  RatMap f = [&](const RatVector& x) {
    RatVector y;
    for (const auto& p : truth) y.push_back(p.evaluate(x));
    return y;
  };
  RationalSampler rs(99);
  const auto got = interpolate_polynomial_map(f, 4, 3, 6, rs);
  REQUIRE(got.size() == 3);
  for (std::size_t o = 0; o < 3; ++o) CHECK(got[o] == truth[o]);

  RatMap g = [](const RatVector& x) {
    if (x[0].is_zero()) throw SingularError("pole");
    return RatVector{Rat(1) / x[0]};
  };
  CHECK_THROWS_AS(interpolate_polynomial_map(g, 1, 1, 4, rs), InterpolationError);
}

TEST_CASE("compiled polynomial matches exact evaluation") {
  ExactPolynomial p(2);
  p.add_term({2, 1}, Rat(3, 2));
  p.add_term({0, 0}, Rat(-1));
  const CompiledPolynomial c(p);
  std::vector<std::vector<double>> pw{{1.0, 2.0, 4.0}, {1.0, 3.0, 9.0}};
  CHECK(c(pw) == doctest::Approx(1.5 * 4.0 * 3.0 - 1.0));
}
