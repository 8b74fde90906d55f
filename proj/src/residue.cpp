#include "weylps/residue.hpp"

#include <algorithm>
#include <stdexcept>

namespace weylps {

namespace {

std::string rep_digits(PoleKind kind) {
  switch (kind) {
    case PoleKind::Single:
      return "1";
    case PoleKind::Pair:
      return "13";
    case PoleKind::Triple:
      return "132";
    case PoleKind::Holomorphic:
      break;
  }
  return "";
}

std::vector<PoleKind> kinds_for(int l) {
  if (l == 2) return {PoleKind::Single};
  return {PoleKind::Single, PoleKind::Pair, PoleKind::Triple};
}

ResidueClass make_class(int l, PoleKind kind, int m) {
  ResidueClass c;
  c.l = l;
  c.kind = kind;
  c.rotation = m;
  c.residue = rotate(representative_residue(l, kind), m);
  std::string digits;
  for (char d : rep_digits(kind)) digits += static_cast<char>('0' + wrap(d - '0' + m, l + 1));
  c.type_label = "(" + digits + ")";
  std::vector<Letter> word;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) word.push_back(Letter::s(*it - '0'));
  c.bt_word = GroupWord(std::move(word));
  c.n_free = 0;
  for (const auto& [n, k] : resonance_structure(c.residue)) c.n_free += k;
  return c;
}

}  // namespace

std::string ResidueClass::digits() const {
  if (kind == PoleKind::Holomorphic) return "";
  return type_label.substr(1, type_label.size() - 2);
}

RatVector representative_residue(int l, PoleKind kind) {
  require_supported_l(l);
  RatVector r(static_cast<std::size_t>(l + 1));
  switch (kind) {
    case PoleKind::Holomorphic:
      break;
    case PoleKind::Single:
      r[0] = -1;
      r[2] = 1;
      break;
    case PoleKind::Pair:
      if (l != 4) throw std::invalid_argument("pair-type poles exist only for l = 4");
      r[0] = -1;
      r[4] = 1;
      break;
    case PoleKind::Triple:
      if (l != 4) throw std::invalid_argument("triple-type poles exist only for l = 4");
      r = {Rat(-1), Rat(-3), Rat(0), Rat(3), Rat(1)};
      break;
  }
  return r;
}

bool satisfies_leading_balance(const RatVector& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (-c[i] != c[i] * alternating_sum(c, static_cast<int>(i))) return false;
  }
  return true;
}

std::vector<ResidueClass> enumerate_residues(int l) {
  require_supported_l(l);
  const int n = l + 1;
  std::vector<RatVector> found;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const std::size_t s = support.size();
    RatMatrix a(s, s);
    RatVector b(s, Rat(-1));
    for (std::size_t r = 0; r < s; ++r) {
      const int i = support[r];
      for (std::size_t c = 0; c < s; ++c) {
        const int k = wrap(support[c] - i, n);
        if (k == 0) continue;
        a(r, c) = Rat(k % 2 == 1 ? 1 : -1);
      }
    }
    const LinearSolution sol = solve_linear(a, b);
    if (!sol.consistent) continue;
    if (!sol.free_cols.empty()) throw std::logic_error("leading balance has a continuous family of solutions");
    if (std::any_of(sol.x.begin(), sol.x.end(), [](const Rat& v) { return v.is_zero(); })) continue;
    RatVector c(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < s; ++r) c[static_cast<std::size_t>(support[r])] = sol.x[r];
    found.push_back(std::move(c));
  }

  std::vector<ResidueClass> out;
  for (PoleKind kind : kinds_for(l)) {
    for (int m = 0; m < n; ++m) {
      // table order lists (1),(2),...,(l),(0): rotation m = 0 is label "1"
      ResidueClass c = make_class(l, kind, m);
      const auto it = std::find(found.begin(), found.end(), c.residue);
      if (it == found.end()) throw std::logic_error("representative " + c.type_label + " missing from enumeration");
      found.erase(it);
      out.push_back(std::move(c));
    }
  }
  if (!found.empty()) throw std::logic_error("enumeration produced residue vectors outside the known classes");
  return out;
}

ResidueClass holomorphic_class(int l) {
  require_supported_l(l);
  ResidueClass c;
  c.l = l;
  c.kind = PoleKind::Holomorphic;
  c.residue = RatVector(static_cast<std::size_t>(l + 1));
  c.type_label = "(∅)";
  c.n_free = l + 1;
  return c;
}

std::vector<ResidueClass> all_classes(int l) {
  std::vector<ResidueClass> out{holomorphic_class(l)};
  for (auto& c : enumerate_residues(l)) out.push_back(std::move(c));
  return out;
}

RatMatrix resonance_matrix(const RatVector& residue, int n) {
  const int size = static_cast<int>(residue.size());
  RatMatrix p(residue.size(), residue.size());
  for (int i = 0; i < size; ++i) {
    const Rat& ci = residue[static_cast<std::size_t>(i)];
    p(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Rat(n) - alternating_sum(residue, i);
    for (int k = 1; k < size; ++k) {
      const auto j = static_cast<std::size_t>(wrap(i + k, size));
      p(static_cast<std::size_t>(i), j) = k % 2 == 1 ? -ci : ci;
    }
  }
  return p;
}

Rat resonance_det(const RatVector& residue, int n) { return determinant(resonance_matrix(residue, n)); }

std::vector<std::pair<int, int>> resonance_structure(const RatVector& residue, int n_max) {
  std::vector<std::pair<int, int>> out;
  for (int n = 0; n <= n_max; ++n) {
    const RatMatrix p = resonance_matrix(residue, n);
    if (!determinant(p).is_zero()) continue;
    out.emplace_back(n, static_cast<int>(kernel_dimension(p)));
  }
  return out;
}

}  // namespace weylps
