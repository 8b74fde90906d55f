#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylps/laurent.hpp"
#include "weylps/residue.hpp"

namespace weylps {

using FreeBindings = std::map<std::string, Rat>;

/// One free constant of a pole family: the coefficient c_n^index.
struct FreeSlot {
  std::string name;  // "c0^0", "c2^1", ...
  int n = 0;
  int index = 0;
};

/// Free-constant coordinates of a class, fixed so that the printed
/// parametrisations are reproduced literally (rotated classes shift indices).
std::vector<FreeSlot> free_slots(const ResidueClass& cls);
std::string free_name(int n, int index);

/// Formal meromorphic solution f_i = sum_n c_n^i T^n, truncated at order N.
struct LaurentFamily {
  ParamPoint alpha;
  ResidueClass cls;
  int order = 0;
  std::vector<LaurentSeries> f;  // one series per component
  FreeBindings free;

  [[nodiscard]] int l() const { return alpha.l; }
  [[nodiscard]] Rat coeff(int n, int i) const { return f[static_cast<std::size_t>(i)].coeff(n); }
  [[nodiscard]] RatVector residue() const;
};

constexpr int kDefaultSeriesOrder = 12;

/// Runs the coefficient recursion. Throws std::invalid_argument when the
/// binding names differ from free_slots(cls), std::logic_error when a
/// resonant system is inconsistent.
LaurentFamily expand(const ParamPoint& alpha, const ResidueClass& cls, const FreeBindings& free,
                     int order = kDefaultSeriesOrder);

/// Substitutes the truncated series into the system; true iff the remainder
/// vanishes through the known order.
bool satisfies_recursion(const LaurentFamily& family);

/// Series-level Backlund transformation. Throws std::domain_error
/// ("degenerate Bäcklund pivot") when some applied s_i has alpha_i = 0.
LaurentFamily apply_bt_to_family(const GroupWord& word, const LaurentFamily& family);

/// Matches the residue vector against the enumerated classes. Throws
/// std::invalid_argument ("not a valid pole type") otherwise.
ResidueClass classify_residue(int l, const RatVector& residue);
ResidueClass classify_family(const LaurentFamily& family);

/// Free constants predicted from the values h of the canonical chart
/// coordinates at the pole (the chart where the family passes through the
/// exceptional locus at T = 0). h is the full coordinate vector there; the
/// entries that vanish at the pole are ignored.
FreeBindings correspondence_free_constants(const ResidueClass& cls, const RatVector& alpha, const RatVector& h);

}  // namespace weylps
