#include "doctest.h"
#include "weylps/hamiltonian.hpp"
#include "weylps/system.hpp"

using namespace weylps;

namespace {

RatVector generic(RationalSampler& rs, std::size_t n) {
  RatVector x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(rs.rational() + rs.generic_offset());
  return x;
}

bool all_zero(const std::array<Rat, 4>& r) {
  for (const auto& v : r)
    if (!v.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("canonical coordinates") {
  const RatVector f{Rat(2), Rat(3), Rat(5), Rat(7), Rat(11)};
  const auto cp = to_canonical({ChartId::empty(4), f});
  CHECK(cp.pq == std::array<Rat, 4>{Rat(3), Rat(5), Rat(10), Rat(11)});
  CHECK(cp.t == Rat(28));

  RationalSampler rs(1);
  for (const auto& c : all_charts(4)) {
    for (int k = 0; k < 20; ++k) {
      const ChartPoint p{c, generic(rs, 5)};
      const auto back = from_canonical(to_canonical(p));
      CHECK(back.chart == c);
      CHECK(back.x == p.x);
    }
  }
  CHECK_THROWS_AS((void)hamiltonian_frame(ChartId::empty(2)), std::invalid_argument);
}

TEST_CASE("Hamiltonian values") {
  const RatVector a(5, Rat(1, 5));
  const CanonicalPoint one{ChartId::empty(4), {Rat(1), Rat(1), Rat(1), Rat(1)}, Rat(5)};
  CHECK(hamiltonian_value(ChartId::empty(4), a, one) == Rat(19, 5));
  const CanonicalPoint zero{ChartId::empty(4), {Rat(0), Rat(0), Rat(0), Rat(0)}, Rat(3)};
  CHECK(hamiltonian_value(ChartId::empty(4), a, zero) == Rat(0));

  // the polynomial form against direct evaluation over Rat
  RationalSampler rs(2);
  const auto b = rs.unit_sum(5);
  const auto rat = [](const Rat& r) { return r; };
  for (const auto& c : hamiltonian_charts()) {
    const auto z = generic(rs, 5);
    const CanonicalPoint cp{c, {z[0], z[1], z[2], z[3]}, z[4]};
    const auto direct = hamiltonian_formula<Rat>(hamiltonian_frame(c).base, b, z[0], z[1], z[2], z[3], z[4], rat);
    CHECK(hamiltonian_value(c, b, cp) == direct);
  }
}

TEST_CASE("Hamilton equations reproduce the flow") {
  RationalSampler rs(3);
  for (int k = 0; k < 2; ++k) {
    const auto a = rs.unit_sum(5);
    const auto rep = verify_hamilton_equations(a, 50, 10 + static_cast<std::uint64_t>(k));
    for (const auto& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
    CHECK(rep.checks == 350);
  }
  // f = 0 in the empty chart: both sides are the parameter-driven part
  const auto a = rs.unit_sum(5);
  const CanonicalPoint origin{ChartId::empty(4), {Rat(0), Rat(0), Rat(0), Rat(0)}, Rat(0)};
  CHECK(all_zero(hamilton_check(ChartId::empty(4), a, origin)));
}

TEST_CASE("rotated charts inherit the Hamiltonian structure") {
  RationalSampler rs(4);
  const auto a = rs.unit_sum(5);
  for (const auto& c : all_charts(4)) {
    INFO(c.str());
    for (int k = 0; k < 3; ++k) {
      const auto cp = to_canonical({c, generic(rs, 5)});
      CHECK(all_zero(hamilton_check(c, a, cp)));
    }
  }
}

TEST_CASE("perturbed Hamiltonian is rejected") {
  RationalSampler rs(5);
  const auto a = rs.unit_sum(5);
  for (const auto& c : hamiltonian_charts()) {
    auto h = hamiltonian(c, a);
    h.add_term({2, 1, 0, 0, 0}, Rat(1, 7));
    const auto cp = to_canonical({c, generic(rs, 5)});
    CHECK_FALSE(all_zero(hamilton_check(h, a, cp)));
  }
}

TEST_CASE("chart transitions are symplectic") {
  RationalSampler rs(6);
  const auto a = rs.unit_sum(5);
  const auto rep = verify_symplectic(a, 20, 7);
  for (const auto& v : rep.violations) MESSAGE(v);
  CHECK(rep.ok());
  CHECK(rep.checks + rep.skipped == 8 * 20);
  CHECK(rep.checks >= 8 * 18);

  const auto cp = to_canonical({ChartId::parse(4, "13-"), generic(rs, 5)});
  CHECK(canonical_jacobian(cp.chart, a, cp) == RatMatrix::identity(4));
  CHECK(*symplectic_check(cp.chart, a, cp));

  // a non-canonical rescaling fails the test
  const auto j = canonical_jacobian(ChartId::parse(4, "1-"), a, to_canonical({ChartId::empty(4), generic(rs, 5)}));
  RatMatrix scaled = j;
  for (std::size_t c = 0; c < 4; ++c) scaled(0, c) *= Rat(2);
  RatMatrix omega(4, 4);
  omega(0, 2) = omega(1, 3) = Rat(1);
  omega(2, 0) = omega(3, 1) = Rat(-1);
  CHECK(j.transpose() * omega * j == omega);
  CHECK_FALSE(scaled.transpose() * omega * scaled == omega);
}

TEST_CASE("sum of coordinates advances with time") {
  // (sum f)' = sum alpha = 1 in every chart
  RationalSampler rs(8);
  const auto a = rs.unit_sum(5);
  for (const auto& c : all_charts(4)) {
    const auto v = pushforward(c, a, generic(rs, 5));
    Rat s;
    for (const auto& x : v) s += x;
    CHECK(s == Rat(1));
  }
}
