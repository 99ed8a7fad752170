#pragma once

#include <cstddef>
#include <vector>

#include "shl/complex.hpp"

namespace shl {

// Finite group of invertible linear chart changes, closed under
// products (hence under inverses). Element order is the deterministic
// breadth-first closure order, identity first.
struct GroupAction {
  std::vector<QMatrix> generators;
  std::vector<QMatrix> elements;
  std::size_t order() const { return elements.size(); }
};

inline constexpr std::size_t kDefaultGroupBound = 10000;

// Throws Error(group_invalid) on singular generators or when the
// closure exceeds the bound (infinite or too-large group).
GroupAction close_group(const std::vector<QMatrix>& generators,
                        std::size_t max_elements = kDefaultGroupBound);

// Averaging projector (1/|G|) sum_g g^* xi. Idempotent, fixes invariant
// forms, and commutes with d when the action is by automorphisms.
Form reynolds(const GroupAction& G, const Form& xi);

// Every generator must commute with the differential on generators;
// throws Error(group_invalid) naming the offending generator otherwise.
void require_automorphisms(const ComplexModel& model, const GroupAction& G);

// Needed before restricting the symplectic operator suite.
void require_omega_invariant(const GroupAction& G, const Form& omega);

// The subcomplex of invariant forms with its induced differential.
Subcomplex invariant_complex(const ComplexModel& model, const GroupAction& G);

}  // namespace shl
