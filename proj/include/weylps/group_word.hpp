#pragma once

#include <string>
#include <vector>

#include "weylps/system.hpp"

namespace weylps {

/// One generator of the extended affine Weyl group: s_i, pi or pi^-1.
struct Letter {
  enum class Kind { S, Pi, PiInv };
  Kind kind = Kind::S;
  int index = 0;  // only meaningful for S

  static Letter s(int i) { return {Kind::S, i}; }
  static Letter pi() { return {Kind::Pi, 0}; }
  static Letter pi_inv() { return {Kind::PiInv, 0}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Free word in s_0..s_l, pi, pi^-1. Letters act left to right: the point
/// map of (w w') is sigma_{w'} after sigma_w.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Accepts "id", "s2 s3 s1", "s2s3s1", "pi", "pi^-1" (spaces optional).
  static GroupWord parse(const std::string& text);

  [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] GroupWord concat(const GroupWord& other) const;
  /// Every generator index shifted by m (conjugation by pi^m).
  [[nodiscard]] GroupWord rotated(int m, int l) const;
  [[nodiscard]] std::string str() const;
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// s_i(alpha_j) = alpha_j - alpha_i a_ij; pi(alpha_j) = alpha_{j+1}.
RatVector apply_letter_to_params(const Letter& g, const RatVector& alpha);
RatVector act_on_params(const GroupWord& w, const RatVector& alpha);
ParamPoint act_on_params(const GroupWord& w, const ParamPoint& alpha);

/// Action of one generator on the original coordinates f given the current
/// parameters. s_i with alpha_i = 0 is the identity on f.
template <class S>
std::vector<S> apply_letter_to_f(const Letter& g, const RatVector& alpha, const std::vector<S>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<S> out = f;
  switch (g.kind) {
    case Letter::Kind::Pi:
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(wrap(j + 1, n))];
      break;
    case Letter::Kind::PiInv:
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(wrap(j - 1, n))];
      break;
    case Letter::Kind::S: {
      const int i = wrap(g.index, n);
      const Rat& a = alpha[static_cast<std::size_t>(i)];
      if (a.is_zero()) break;
      const S t = from_rat<S>(a) * checked_inverse(f[static_cast<std::size_t>(i)]);
      out[static_cast<std::size_t>(wrap(i + 1, n))] = out[static_cast<std::size_t>(wrap(i + 1, n))] + t;
      out[static_cast<std::size_t>(wrap(i - 1, n))] = out[static_cast<std::size_t>(wrap(i - 1, n))] - t;
      break;
    }
  }
  return out;
}

/// Applies the word to (alpha, f) in chart-free original coordinates.
template <class S>
std::vector<S> act_on_f(const GroupWord& w, RatVector& alpha, std::vector<S> f) {
  for (const auto& g : w.letters()) {
    f = apply_letter_to_f(g, alpha, f);
    alpha = apply_letter_to_params(g, alpha);
  }
  return f;
}

}  // namespace weylps
