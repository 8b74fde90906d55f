#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weylps/group_word.hpp"
#include "weylps/linalg.hpp"

namespace weylps {

/// Shape of a pole family: holomorphic, or one of the three residue patterns
/// "(i)", "(i-1 i+1)", "(i-1 i+1 i)" up to rotation.
enum class PoleKind { Holomorphic = 0, Single = 1, Pair = 2, Triple = 3 };

struct ResidueClass {
  int l = 0;
  RatVector residue;
  PoleKind kind = PoleKind::Holomorphic;
  int rotation = 0;       // index shift relative to the representative
  std::string type_label; // "(∅)", "(1)", "(13)", "(132)", ...
  GroupWord bt_word;
  int n_free = 0;

  /// Digits of the label without parentheses ("" for the holomorphic class).
  [[nodiscard]] std::string digits() const;
  friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
    return a.l == b.l && a.residue == b.residue;
  }
};

/// Leading-balance residue vector of the representative of a kind
/// ((-1,0,1,0,0), (-1,0,0,0,1), (-1,-3,0,3,1) for l = 4; (-1,0,1) for l = 2).
RatVector representative_residue(int l, PoleKind kind);

/// All pole classes (nonzero residue vectors) found by support-subset
/// enumeration, in table order: (1),(2),...,(0), then pairs, then triples.
std::vector<ResidueClass> enumerate_residues(int l);
/// The holomorphic class (zero residue, n_free = l + 1).
ResidueClass holomorphic_class(int l);
/// Holomorphic class followed by enumerate_residues(l).
std::vector<ResidueClass> all_classes(int l);

/// True iff -c^i = c^i G^i(c) for every i.
bool satisfies_leading_balance(const RatVector& c);

/// P_n: diagonal n - G^i(c), entry (i, i+k) = -(-1)^{k-1} c^i.
RatMatrix resonance_matrix(const RatVector& residue, int n);
Rat resonance_det(const RatVector& residue, int n);
/// (n, dim ker P_n) for every n in [0, n_max] with det P_n = 0.
std::vector<std::pair<int, int>> resonance_structure(const RatVector& residue, int n_max = 6);

}  // namespace weylps
