#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylps/atlas.hpp"
#include "weylps/group_word.hpp"
#include "weylps/report.hpp"

namespace weylps {

/// A point of the fiber E(alpha), given in one chart.
struct FiberPoint {
  RatVector alpha;
  ChartPoint point;
};

/// sigma_w applied to a chart point. Letters act left to right. The image is
/// reported in the same chart when that chart contains it, otherwise in the
/// first chart (empty chart, then atlas order) that does.
FiberPoint act_on_point(const GroupWord& w, const FiberPoint& p);

/// Single generator. Uses the closed formulas where they apply and the
/// rational composite through the empty chart (with the limit fallback)
/// elsewhere.
FiberPoint apply_letter_to_point(const Letter& g, const FiberPoint& p);

/// Same as apply_letter_to_point but always takes the generic route; used to
/// cross-check the closed formulas.
FiberPoint apply_letter_generic(const Letter& g, const FiberPoint& p);

/// s_i^2 = 1, braid and commutation relations, pi^{l+1} = 1 and
/// pi s_i = s_{i+1} pi on random exact points (parameters and coordinates;
/// points are placed in random charts).
CheckReport verify_relations(int l, int samples, std::uint64_t seed);

/// D sigma_w(p) X_alpha(p) = X_{w(alpha)}(sigma_w(p)) at random points of the
/// empty chart. Points where the action is singular are skipped.
CheckReport verify_equivariance(const GroupWord& w, const RatVector& alpha, int samples, std::uint64_t seed);

/// Image of a stratum under sigma_i. `in_divisor` tells whether the source
/// lies in D_i; the result's `in_divisor` is set when the table fixes it.
struct StratumImage {
  StratumId stratum;
  std::optional<bool> in_divisor;
};

/// Throws std::domain_error("degenerate: table does not apply") for rows
/// that need alpha_i != 0 when alpha_pivot_nonzero is false.
StratumImage stratum_image(int i, const StratumId& s, bool in_divisor, bool alpha_pivot_nonzero = true);

/// Checks stratum_image pointwise on sampled exact points of every stratum
/// (inside and outside D_i) for every generator s_i.
CheckReport verify_strata(int l, int samples, std::uint64_t seed);

}  // namespace weylps
