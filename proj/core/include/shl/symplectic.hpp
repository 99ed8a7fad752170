#pragma once

#include <string>
#include <vector>

#include "shl/complex.hpp"
#include "shl/exterior.hpp"

namespace shl {

// A closed nondegenerate 2-form together with everything derived from
// it: the musical isomorphisms, the Poisson bivector and the normalized
// volume mu = omega^n / n!. The normalization is what makes star an
// involution on every degree.
//
// `active` restricts the construction to a coordinate subset of the
// basis; the transversally symplectic structures of foliated models use
// this with the transverse index set. For plain symplectic models it is
// the full index range.
struct SymplecticData {
  int dim = 0;
  Mask active = 0;
  int n = 0;
  Form omega{0, 2};
  Form volume{0, 0};
  QMatrix flat_matrix;   // row i = coefficients of iota_{d_i} omega
  QMatrix sharp_matrix;  // inverse on the active block, zero elsewhere
  Multivector poisson{0, 2};

  std::vector<Form> flat_table;          // indexed by mask, masks within active only
  std::vector<Multivector> sharp_table;  // same indexing
};

SymplecticData make_symplectic(const ComplexModel& model, const Form& omega);
SymplecticData make_transverse_symplectic(const ComplexModel& model, const Form& omega, Mask active);

Form flat(const SymplecticData& s, const Multivector& X);
Multivector sharp(const SymplecticData& s, const Form& xi);

// star xi = iota_{sharp xi} mu; degree k -> 2n-k; star^2 = id.
Form star(const SymplecticData& s, const Form& xi);

// delta xi = (-1)^k star d star xi (the symplectic codifferential; no metric).
Form codifferential(const ComplexModel& model, const SymplecticData& s, const Form& xi);

Form op_Y(const SymplecticData& s, const Form& xi);  // omega ^ xi
Form op_X(const SymplecticData& s, const Form& xi);  // star Y star
Form op_H(const SymplecticData& s, const Form& xi);  // (n - k) xi

// X xi = 0. Input must be homogeneous (forms are by construction); the
// equivalent criterion Y^{k+1} xi = 0 in degree n-k is property-tested.
bool primitive_test(const SymplecticData& s, const Form& xi);

// Unique splitting xi = sum_r Y^r p_r with every p_r primitive; entry r
// of the result is p_r (possibly zero).
std::vector<Form> lefschetz_decompose(const SymplecticData& s, const Form& xi);

// Basis of ker d intersect ker delta in degree k.
std::vector<Form> harmonic_basis(const ComplexModel& model, const SymplecticData& s, int k);

struct IdentityCheck {
  std::string name;
  bool pass = true;
  std::string counterexample;  // literal of the first failing basis form
};
struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = true;
};

// Evaluates, exactly and on the full basis of every degree: star^2 = id,
// the sl(2) relations, and the operator commutators
//   [Y,d] = 0, [X,delta] = 0, [X,d] = -delta, [Y,delta] = -d,
//   [H,d] = -d, [H,delta] = delta
// plus closure of the harmonic space under X, Y, H. The H commutators
// are the graded forms forced by H acting as (n-k); they reduce to zero
// exactly on closed (resp. coclosed) forms.
IdentityReport check_operator_identities(const ComplexModel& model, const SymplecticData& s);
IdentityReport check_operator_identities(const ComplexModel& model, const SymplecticData& s,
                                         const std::vector<std::vector<Form>>& bases);

}  // namespace shl
