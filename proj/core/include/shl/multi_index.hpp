#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace shl {

// A multi-index {i_1 < ... < i_k} c {1,...,m} stored as a bitmask
// (index i occupies bit i-1). Set semantics make the strictly
// increasing order implicit.
using Mask = std::uint32_t;

// Models are desk scale; the bitmask representation caps the ambient dimension.
inline constexpr int kMaxDim = 12;

namespace mask {

inline int degree(Mask I) { return std::popcount(I); }

inline Mask bit(int idx) { return Mask{1} << (idx - 1); }  // idx is 1-based

inline bool contains(Mask I, int idx) { return (I & bit(idx)) != 0; }

inline std::vector<int> indices(Mask I) {
  std::vector<int> out;
  while (I) {
    out.push_back(std::countr_zero(I) + 1);
    I &= I - 1;
  }
  return out;
}

inline Mask from_indices(const std::vector<int>& idxs) {
  Mask I = 0;
  for (int i : idxs) I |= bit(i);
  return I;
}

// Sign of e^I ^ e^J for disjoint I, J: parity of pairs (i,j) in I x J with i > j.
inline int wedge_sign(Mask I, Mask J) {
  int inv = 0;
  for (Mask j = J; j;) {
    int b = std::countr_zero(j);
    inv += std::popcount(I >> (b + 1));
    j &= j - 1;
  }
  return (inv & 1) ? -1 : 1;
}

// Sign picked up when iota_{v_idx} removes idx from I: (-1)^{#elements of I below idx}.
inline int removal_sign(Mask I, int idx) {
  return (std::popcount(I & (bit(idx) - 1)) & 1) ? -1 : 1;
}

// All degree-k masks over indices 1..m contained in `within`, ascending.
std::vector<Mask> degree_basis(int m, int k, Mask within);
std::vector<Mask> degree_basis(int m, int k);

inline Mask full(int m) { return (m >= 32) ? ~Mask{0} : (Mask{1} << m) - 1; }

}  // namespace mask
}  // namespace shl
