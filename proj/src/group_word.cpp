#include "weylps/group_word.hpp"

#include <cctype>
#include <stdexcept>

namespace weylps {

GroupWord GroupWord::parse(const std::string& text) {
  std::vector<Letter> out;
  std::size_t p = 0;
  auto skip_space = [&] {
    while (p < text.size() && (std::isspace(static_cast<unsigned char>(text[p])) || text[p] == '*')) ++p;
  };
  skip_space();
  if (text.compare(p, std::string::npos, "id") == 0) return GroupWord();
  while (skip_space(), p < text.size()) {
    if (text[p] == 's') {
      ++p;
      const std::size_t b = p;
      while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
      if (b == p) throw std::invalid_argument("malformed group word: '" + text + "'");
      // "s231" is read as s2 s3 s1
      for (std::size_t k = b; k < p; ++k) out.push_back(Letter::s(text[k] - '0'));
    } else if (text.compare(p, 2, "pi") == 0) {
      p += 2;
      if (text.compare(p, 3, "^-1") == 0) {
        p += 3;
        out.push_back(Letter::pi_inv());
      } else {
        out.push_back(Letter::pi());
      }
    } else {
      throw std::invalid_argument("malformed group word: '" + text + "'");
    }
  }
  return GroupWord(std::move(out));
}

GroupWord GroupWord::concat(const GroupWord& other) const {
  std::vector<Letter> l = letters_;
  l.insert(l.end(), other.letters_.begin(), other.letters_.end());
  return GroupWord(std::move(l));
}

GroupWord GroupWord::rotated(int m, int l) const {
  std::vector<Letter> out = letters_;
  for (auto& g : out)
    if (g.kind == Letter::Kind::S) g.index = wrap(g.index + m, l + 1);
  return GroupWord(std::move(out));
}

std::string GroupWord::str() const {
  if (letters_.empty()) return "id";
  std::string s;
  for (const auto& g : letters_) {
    if (!s.empty()) s += ' ';
    switch (g.kind) {
      case Letter::Kind::S:
        s += "s" + std::to_string(g.index);
        break;
      case Letter::Kind::Pi:
        s += "pi";
        break;
      case Letter::Kind::PiInv:
        s += "pi^-1";
        break;
    }
  }
  return s;
}

RatVector apply_letter_to_params(const Letter& g, const RatVector& alpha) {
  const int n = static_cast<int>(alpha.size());
  const int l = n - 1;
  RatVector out = alpha;
  switch (g.kind) {
    case Letter::Kind::Pi:
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = alpha[static_cast<std::size_t>(wrap(j + 1, n))];
      break;
    case Letter::Kind::PiInv:
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = alpha[static_cast<std::size_t>(wrap(j - 1, n))];
      break;
    case Letter::Kind::S: {
      const int i = wrap(g.index, n);
      const Rat ai = alpha[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) {
        const int a = cartan(l, i, j);
        if (a != 0) out[static_cast<std::size_t>(j)] -= ai * Rat(a);
      }
      break;
    }
  }
  return out;
}

RatVector act_on_params(const GroupWord& w, const RatVector& alpha) {
  RatVector a = alpha;
  for (const auto& g : w.letters()) a = apply_letter_to_params(g, a);
  return a;
}

ParamPoint act_on_params(const GroupWord& w, const ParamPoint& alpha) {
  return ParamPoint::unchecked(alpha.l, act_on_params(w, alpha.alpha));
}

}  // namespace weylps
