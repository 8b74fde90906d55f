#include "weylps/hamiltonian.hpp"

#include <sstream>
#include <stdexcept>

#include "weylps/dual.hpp"

namespace weylps {

namespace {

constexpr std::size_t kVars = 5;  // p1, q1, p2, q2, t

int wrap5(int i) { return ((i % 5) + 5) % 5; }

// Chart coordinates summed into p1, q1, p2, q2 for each base chart.
std::array<std::vector<int>, 4> base_rows(HamiltonianBase b) {
  switch (b) {
    case HamiltonianBase::Empty:
      return {{{1}, {2}, {1, 3}, {4}}};
    case HamiltonianBase::OnePlus:
      return {{{4}, {0, 2}, {1}, {2}}};
    case HamiltonianBase::OneMinus:
    case HamiltonianBase::ThirteenMinus:
      return {{{0}, {1}, {0, 2}, {3}}};
    case HamiltonianBase::ThirteenPlus:
      return {{{1}, {2, 4}, {3}, {4}}};
    case HamiltonianBase::TriplePlus:
      return {{{0}, {1, 3}, {2}, {3}}};
    case HamiltonianBase::TripleMinus:
      return {{{1}, {2}, {1, 3}, {4}}};
  }
  throw std::logic_error("unknown Hamiltonian chart");
}

// Linear map from chart coordinates to (p1, q1, p2, q2, t).
RatMatrix canonical_matrix(const ChartId& chart) {
  const auto fr = hamiltonian_frame(chart);
  const auto rows = base_rows(fr.base);
  RatMatrix m(kVars, kVars);
  for (std::size_t r = 0; r < 4; ++r)
    for (int j : rows[r]) m(r, static_cast<std::size_t>(wrap5(j + fr.shift))) += Rat(1);
  for (std::size_t j = 0; j < kVars; ++j) m(4, j) = Rat(1);
  return m;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Rat(1);
  }
  const auto e = rref(aug);
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.pivots.size() <= i || e.pivots[i] != i) throw std::logic_error("canonical map not invertible");
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
  }
  return inv;
}

RatVector base_alpha(const ChartId& chart, const RatVector& alpha) {
  const int m = hamiltonian_frame(chart).shift;
  RatVector a(5);
  for (int j = 0; j < 5; ++j) a[static_cast<std::size_t>(j)] = alpha[static_cast<std::size_t>(wrap5(j + m))];
  return a;
}

RatVector canonical_vector(const CanonicalPoint& cp) { return {cp.pq[0], cp.pq[1], cp.pq[2], cp.pq[3], cp.t}; }

RatVector generic_point(RationalSampler& rs) {
  RatVector x;
  for (int i = 0; i < 5; ++i) x.push_back(rs.rational() + rs.generic_offset());
  return x;
}

std::string describe(const ChartId& c, const std::array<Rat, 4>& r) {
  std::ostringstream os;
  os << "chart " << c.str() << ": residual (" << r[0] << ", " << r[1] << ", " << r[2] << ", " << r[3] << ")";
  return os.str();
}

}  // namespace

HamiltonianFrame hamiltonian_frame(const ChartId& chart) {
  if (chart.l != 4) throw std::invalid_argument("Hamiltonians are defined for l = 4 only");
  const bool plus = chart.sign > 0;
  switch (chart.kind) {
    case ChartId::Kind::Empty:
      return {HamiltonianBase::Empty, 0};
    case ChartId::Kind::Single:
      return {plus ? HamiltonianBase::OnePlus : HamiltonianBase::OneMinus, wrap5(chart.center - 1)};
    case ChartId::Kind::Pair:
      return {plus ? HamiltonianBase::ThirteenPlus : HamiltonianBase::ThirteenMinus, wrap5(chart.center - 2)};
    case ChartId::Kind::Triple:
      return {plus ? HamiltonianBase::TriplePlus : HamiltonianBase::TripleMinus, wrap5(chart.center - 2)};
  }
  throw std::logic_error("unknown chart kind");
}

std::vector<ChartId> hamiltonian_charts() {
  std::vector<ChartId> out;
  for (const char* s : {"empty", "1+", "1-", "13+", "13-", "132+", "132-"}) out.push_back(ChartId::parse(4, s));
  return out;
}

CanonicalPoint to_canonical(const ChartPoint& x) {
  const auto v = canonical_matrix(x.chart) * x.x;
  return {x.chart, {v[0], v[1], v[2], v[3]}, v[4]};
}

ChartPoint from_canonical(const CanonicalPoint& cp) {
  return {cp.chart, inverse(canonical_matrix(cp.chart)) * canonical_vector(cp)};
}

ExactPolynomial hamiltonian(const ChartId& chart, const RatVector& alpha) {
  using P = ExactPolynomial;
  const auto v = [](std::size_t i) { return P::variable(kVars, i); };
  const auto k = [](const Rat& r) { return P::constant(kVars, r); };
  return hamiltonian_formula<P>(hamiltonian_frame(chart).base, base_alpha(chart, alpha), v(0), v(1), v(2), v(3),
                                v(4), k);
}

Rat hamiltonian_value(const ChartId& chart, const RatVector& alpha, const CanonicalPoint& cp) {
  return hamiltonian(chart, alpha).evaluate(canonical_vector(cp));
}

std::array<Rat, 4> hamilton_check(const ChartId& chart, const RatVector& alpha, const CanonicalPoint& cp) {
  if (!(chart == cp.chart)) throw std::invalid_argument("canonical point belongs to another chart");
  return hamilton_check(hamiltonian(chart, alpha), alpha, cp);
}

std::array<Rat, 4> hamilton_check(const ExactPolynomial& h, const RatVector& alpha, const CanonicalPoint& cp) {
  const auto x = from_canonical(cp);
  const auto flow = canonical_matrix(cp.chart) * pushforward(cp.chart, alpha, x.x);
  const auto z = canonical_vector(cp);
  const auto d = [&](std::size_t var) { return h.derivative(var).evaluate(z); };
  // dp/dt = -dH/dq, dq/dt = dH/dp
  return {-d(1) - flow[0], d(0) - flow[1], -d(3) - flow[2], d(2) - flow[3]};
}

RatMatrix canonical_jacobian(const ChartId& to, const RatVector& alpha, const CanonicalPoint& cp) {
  using D = Dual<Rat>;
  const auto inv = inverse(canonical_matrix(cp.chart));
  const auto out = canonical_matrix(to);
  const auto x = from_canonical(cp).x;
  const auto path = transition_path(cp.chart, to);
  // (q1, q2, p1, p2) -> index into (p1, q1, p2, q2)
  constexpr std::array<std::size_t, 4> order{1, 3, 0, 2};
  RatMatrix j(4, 4);
  for (std::size_t col = 0; col < 4; ++col) {
    std::vector<D> xd;
    for (std::size_t i = 0; i < kVars; ++i) xd.emplace_back(x[i], inv(i, order[col]));
    const auto y = apply_path(path, alpha, xd);
    for (std::size_t row = 0; row < 4; ++row) {
      Rat s;
      for (std::size_t i = 0; i < kVars; ++i) s += out(order[row], i) * y[i].d;
      j(row, col) = s;
    }
  }
  return j;
}

std::optional<bool> symplectic_check(const ChartId& to, const RatVector& alpha, const CanonicalPoint& cp) {
  RatMatrix j;
  try {
    j = canonical_jacobian(to, alpha, cp);
  } catch (const SingularError&) {
    return std::nullopt;
  }
  RatMatrix omega(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    omega(i, i + 2) = Rat(1);
    omega(i + 2, i) = Rat(-1);
  }
  return j.transpose() * omega * j == omega;
}

CheckReport verify_hamilton_equations(const RatVector& alpha, int samples, std::uint64_t seed) {
  CheckReport rep;
  RationalSampler rs(seed);
  for (const auto& c : hamiltonian_charts()) {
    const auto h = hamiltonian(c, alpha);
    for (int s = 0; s < samples; ++s) {
      ++rep.samples;
      const auto cp = to_canonical({c, generic_point(rs)});
      std::array<Rat, 4> r;
      try {
        r = hamilton_check(h, alpha, cp);
      } catch (const SingularError&) {
        ++rep.skipped;
        continue;
      }
      ++rep.checks;
      bool zero = true;
      for (const auto& v : r) zero = zero && v.is_zero();
      if (!zero) rep.violations.push_back(describe(c, r));
    }
  }
  return rep;
}

CheckReport verify_symplectic(const RatVector& alpha, int samples, std::uint64_t seed) {
  CheckReport rep;
  RationalSampler rs(seed);
  const auto charts = hamiltonian_charts();
  std::vector<std::pair<ChartId, ChartId>> pairs;
  for (std::size_t k = 1; k < charts.size(); ++k) pairs.emplace_back(charts[0], charts[k]);
  pairs.emplace_back(ChartId::parse(4, "13-"), ChartId::parse(4, "132+"));
  pairs.emplace_back(ChartId::parse(4, "132+"), ChartId::parse(4, "13-"));
  for (const auto& [a, b] : pairs) {
    for (int s = 0; s < samples; ++s) {
      ++rep.samples;
      const auto cp = to_canonical({a, generic_point(rs)});
      const auto ok = symplectic_check(b, alpha, cp);
      if (!ok) {
        ++rep.skipped;
        continue;
      }
      ++rep.checks;
      if (!*ok) rep.violations.push_back(a.str() + " -> " + b.str() + ": J^T Omega J != Omega");
    }
  }
  return rep;
}

}  // namespace weylps
