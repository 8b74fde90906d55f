#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylps/atlas.hpp"
#include "weylps/polynomial.hpp"
#include "weylps/report.hpp"

namespace weylps {

/// The seven charts of the A4 atlas whose Hamiltonians are written out; every
/// other chart (except the empty one) is a rotation of one of them.
enum class HamiltonianBase { Empty, OnePlus, OneMinus, ThirteenPlus, ThirteenMinus, TriplePlus, TripleMinus };

/// Base chart and rotation m with chart == base.rotated(m). Throws
/// std::invalid_argument for l != 4.
struct HamiltonianFrame {
  HamiltonianBase base;
  int shift;
};
HamiltonianFrame hamiltonian_frame(const ChartId& chart);

/// Canonical coordinates (p1, q1, p2, q2) and time t = sum of chart
/// coordinates.
struct CanonicalPoint {
  ChartId chart;
  std::array<Rat, 4> pq;  // p1, q1, p2, q2
  Rat t;
};

CanonicalPoint to_canonical(const ChartPoint& x);
ChartPoint from_canonical(const CanonicalPoint& cp);

/// The printed Hamiltonian of a base chart, evaluated over any ring. `k`
/// turns a rational constant into a ring element.
template <class S, class K>
S hamiltonian_formula(HamiltonianBase base, const RatVector& alpha, const S& p1, const S& q1, const S& p2,
                      const S& q2, const S& t, K k) {
  const S a0 = k(alpha[0]), a1 = k(alpha[1]), a2 = k(alpha[2]), a3 = k(alpha[3]), a4 = k(alpha[4]);
  const S two = k(Rat(2));
  const S qp1 = q1 * p1, qp2 = q2 * p2;
  switch (base) {
    case HamiltonianBase::Empty:
      return (t - q1 - p1) * qp1 + (t - q2 - p2) * qp2 - two * qp1 * q2 - a1 * q1 + a2 * p1 - (a1 + a3) * q2 +
             a4 * p2;
    case HamiltonianBase::OnePlus:
      return (t - q1 - p1) * qp1 - t * (qp2 + a1) - q2 * (qp2 + a1) * (qp2 + a1 + a2) + two * p1 * qp2 +
             (a0 + two * a1 + a2) * p1 - a4 * q1 + p2;
    case HamiltonianBase::OneMinus:
      return (t - q2 - p2) * qp2 - t * (qp1 - a1) - p1 * (a1 - qp1) * (a0 + a1 - qp1) + two * qp1 * q2 + q1 -
             (a0 + two * a1 + a2) * q2 + a3 * p2;
    case HamiltonianBase::ThirteenPlus:
      return k(Rat(0)) - q1 * (qp1 + a1) * (qp1 + a1 + a2) - q2 * (qp2 + a3) * (qp2 + a3 + a4) -
             q1 * (qp1 + a1) * (two * qp2 + two * a3 + a4) - t * (qp1 + a1 + qp2 + a3) + p1 + p2;
    case HamiltonianBase::ThirteenMinus:
      return k(Rat(0)) - p1 * (a1 - qp1) * (a0 + a1 - qp1) - p2 * (a3 - qp2) * (a2 + a3 - qp2) -
             p2 * (a3 - qp2) * (a0 + two * a1 - two * qp1) + t * (a1 - qp1 + a3 - qp2) + q1 + q2;
    case HamiltonianBase::TriplePlus:
      return q2 * (qp2 + a2) * (qp2 + a2 + a3) * (a0 + two * a1 - two * qp1 + qp2 + two * a2 + a3) -
             p1 * (a1 - qp1 + qp2 + two * a2 + a3) * (a0 + a1 - qp1 + qp2 + two * a2 + a3) -
             p1 * (qp2 * (a0 + two * a1 - two * qp1) - a2 * (a2 + a3) + p1 * p2) +
             t * (a1 - qp1 + qp2 + a2 + a3) + q1;
    case HamiltonianBase::TripleMinus:
      return k(Rat(0)) -
             p1 * (a2 - qp1) * (a1 + a2 - qp1) * (a1 + two * a2 - qp1 + two * qp2 + two * a3 + a4) -
             q2 * (a1 + two * a2 - qp1 + qp2 + a3) * (a1 + two * a2 - qp1 + qp2 + a3 + a4) +
             q2 * (qp1 * (two * qp2 + two * a3 + a4) + (a1 + a2) * a2 - q1 * q2) -
             t * (a1 + a2 - qp1 + qp2 + a3) + p2;
  }
  return k(Rat(0));
}

/// Hamiltonian of `chart` as a polynomial in (p1, q1, p2, q2, t). Rotated
/// charts use the base formula with rotated parameters.
ExactPolynomial hamiltonian(const ChartId& chart, const RatVector& alpha);

Rat hamiltonian_value(const ChartId& chart, const RatVector& alpha, const CanonicalPoint& cp);

/// (dH/dp, -dH/dq) minus the flow pushed into canonical coordinates, ordered
/// as (p1, q1, p2, q2) velocity components. Zero iff Hamilton's equations
/// hold at cp.
std::array<Rat, 4> hamilton_check(const ChartId& chart, const RatVector& alpha, const CanonicalPoint& cp);

/// Same with a caller-supplied H (used for negative controls).
std::array<Rat, 4> hamilton_check(const ExactPolynomial& h, const RatVector& alpha, const CanonicalPoint& cp);

/// Exact Jacobian J of the canonical transition from cp.chart to `to` at
/// fixed t, in the variable order (q1, q2, p1, p2).
RatMatrix canonical_jacobian(const ChartId& to, const RatVector& alpha, const CanonicalPoint& cp);

/// J^T Omega J == Omega with Omega = [[0, I], [-I, 0]]. Returns nullopt if
/// the transition is singular at cp.
std::optional<bool> symplectic_check(const ChartId& to, const RatVector& alpha, const CanonicalPoint& cp);

/// Hamilton residuals on `samples` random exact points in each of the seven
/// base charts.
CheckReport verify_hamilton_equations(const RatVector& alpha, int samples, std::uint64_t seed);

/// Symplectic condition for the six transitions out of the empty chart and
/// for 13- <-> 132+.
CheckReport verify_symplectic(const RatVector& alpha, int samples, std::uint64_t seed);

/// The seven base charts in listing order.
std::vector<ChartId> hamiltonian_charts();

}  // namespace weylps
