#pragma once

// Hand transcription of the published expansions. Used as an independent
// oracle for the recursion engine: coefficient tables are written out
// literally, not computed.

#include <map>
#include <vector>

#include "weylps/rat.hpp"
#include "weylps/series.hpp"

namespace printed {

using weylps::Rat;
// expected[i][n] = coefficient of T^n in f_i
using Table = std::vector<std::map<int, Rat>>;

inline Rat lin(const weylps::RatVector& a, std::initializer_list<int> w) {
  Rat s(0);
  std::size_t j = 0;
  for (int x : w) s += Rat(x) * a[j++];
  return s;
}

inline Table a2_type1(const weylps::RatVector& a, const weylps::FreeBindings& fb) {
  const Rat c00 = fb.at("c0^0");
  const Rat third(1, 3);
  Table t(3);
  t[0] = {{-1, Rat(-1)}, {0, c00}, {1, third * (lin(a, {2, 3, 1}) - c00 * c00)}};
  t[1] = {{-1, Rat(0)}, {0, Rat(0)}, {1, -a[1]}};
  t[2] = {{-1, Rat(1)}, {0, c00}, {1, third * (lin(a, {1, 3, 2}) + c00 * c00)}};
  return t;
}

inline Table a4_type1(const weylps::RatVector& a, const weylps::FreeBindings& fb) {
  const Rat c00 = fb.at("c0^0"), c02 = fb.at("c0^2"), c03 = fb.at("c0^3");
  const Rat c = c03 - c02;
  const Rat third(1, 3);
  Table t(5);
  t[0] = {{-1, Rat(-1)}, {0, c00},
          {1, third * (lin(a, {2, 3, 1, -1, 1}) - c00 * c00 + Rat(2) * c02 * c02 - Rat(2) * c * c)}};
  t[1] = {{-1, Rat(0)}, {0, Rat(0)}, {1, -a[1]}};
  t[2] = {{-1, Rat(1)}, {0, c02},
          {1, third * (lin(a, {1, 3, 2, 1, -1}) + c02 * c02 - Rat(2) * c00 * c00 + Rat(2) * c * c)}};
  t[3] = {{-1, Rat(0)}, {0, c02 + c}, {1, a[3] - c02 * c02 + c * c}};
  t[4] = {{-1, Rat(0)}, {0, c00 + c}, {1, a[4] + c00 * c00 - c * c}};
  return t;
}

inline Table a4_type13(const weylps::RatVector& a, const weylps::FreeBindings& fb) {
  const Rat c00 = fb.at("c0^0"), c21 = fb.at("c2^1"), c23 = fb.at("c2^3");
  const Rat third(1, 3);
  Table t(5);
  t[0] = {{-1, Rat(-1)}, {0, c00}, {1, third * (lin(a, {2, 3, 1, 3, 1}) - c00 * c00)}};
  t[1] = {{-1, Rat(0)}, {0, Rat(0)}, {1, -a[1]}, {2, c21}};
  t[2] = {{-1, Rat(0)}, {0, Rat(0)}, {1, third * a[2]}, {2, Rat(0)}};
  t[3] = {{-1, Rat(0)}, {0, Rat(0)}, {1, -a[3]}, {2, c23}};
  t[4] = {{-1, Rat(1)}, {0, c00}, {1, third * (lin(a, {1, 3, 1, 3, 2}) + c00 * c00)}};
  return t;
}

inline Table a4_type132(const weylps::RatVector& a, const weylps::FreeBindings& fb) {
  const Rat c00 = fb.at("c0^0"), c23 = fb.at("c2^3"), c42 = fb.at("c4^2");
  const Rat third(1, 3), fifth(1, 5), half(1, 2);
  const Rat q = c23 - half * lin(a, {1, 3, 5, 3, 1}) * c00;
  Table t(5);
  t[0] = {{-1, Rat(-1)}, {0, c00}, {1, third * (lin(a, {2, 3, 5, 3, 1}) - c00 * c00)}, {2, -c23}};
  t[1] = {{-1, Rat(-3)}, {0, Rat(0)}, {1, fifth * (lin(a, {1, -2, -5, -3, -1}) - Rat(2) * c00 * c00)}, {2, q}};
  t[2] = {{-1, Rat(0)},
          {0, Rat(0)},
          {1, -third * a[2]},
          {2, Rat(0)},
          {3, Rat(1, 45) * a[2] * (lin(a, {-1, -3, 0, 3, 1}) + Rat(2) * c00 * c00)},
          {4, c42}};
  t[3] = {{-1, Rat(3)}, {0, Rat(0)}, {1, -fifth * (lin(a, {1, 3, 5, 2, -1}) - Rat(2) * c00 * c00)}, {2, c23}};
  t[4] = {{-1, Rat(1)}, {0, c00}, {1, third * (lin(a, {1, 3, 5, 3, 2}) + c00 * c00)}, {2, -q}};
  return t;
}

}  // namespace printed
