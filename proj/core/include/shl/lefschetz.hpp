#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shl/complex.hpp"
#include "shl/symplectic.hpp"

namespace shl {

// A cochain complex carrying a compatible symplectic operator suite, in
// subspace coordinates. Instances cover the three situations the theory
// is applied to: the full complex, a finite-group invariant subcomplex,
// and the basic complex of a foliated model with its transverse
// structure. All operator matrices and cohomology bases are built once
// at construction and immutable afterwards.
class SymplecticComplex {
 public:
  SymplecticComplex(const ComplexModel& model, SymplecticData symp, Subcomplex sub);
  static SymplecticComplex full(const ComplexModel& model, const SymplecticData& symp);

  const ComplexModel& model() const { return *model_; }
  const SymplecticData& symp() const { return symp_; }
  const Subcomplex& sub() const { return sub_; }
  int n() const { return symp_.n; }
  int top() const { return 2 * symp_.n; }

  const QMatrix& d_mat(int k) const { return mat(d_, k); }        // k -> k+1
  const QMatrix& delta_mat(int k) const { return mat(delta_, k); }  // k -> k-1
  const QMatrix& y_mat(int k) const { return mat(y_, k); }        // k -> k+2

  const CohomologyBasis& coh(int k) const;
  const std::vector<Form>& harmonic(int k) const;

  // Matrix of Y^count starting at the given degree (sub coordinates).
  QMatrix y_power(int from_degree, int count) const;

  std::optional<std::vector<Rational>> class_coords(int k, const Form& xi) const;

 private:
  const QMatrix& mat(const std::vector<QMatrix>& v, int k) const;

  const ComplexModel* model_;
  SymplecticData symp_;
  Subcomplex sub_;
  std::vector<QMatrix> d_, delta_, y_;
  std::vector<CohomologyBasis> coh_;
  std::vector<std::vector<Form>> harmonic_;
};

struct LefschetzPower {
  int k = 0;
  QMatrix matrix;  // L^k : H^{n-k} -> H^{n+k} in the chosen cohomology bases
  int rank = 0;
  int dim_source = 0;
  int dim_target = 0;
  bool surjective = false;
};

struct LefschetzReport {
  std::vector<LefschetzPower> powers;  // k = 0..n
  std::vector<bool> representable;     // degree j = 0..2n
  std::vector<int> betti;              // dim H^j
  std::vector<int> harmonic_dims;      // dim (ker d ^ ker delta)_j
  bool all_surjective = false;
  bool all_representable = false;
  std::string verdict() const;  // "TRUE/TRUE" or "FALSE/FALSE" (agreement is asserted)
  std::vector<int> failing_powers() const;
};

// Matrix of L^k on cohomology, [xi] -> [omega^k ^ xi].
LefschetzPower lefschetz_power(const SymplecticComplex& S, int k);

// True iff every class in H^j has a representative in ker d ^ ker delta.
bool harmonic_representability(const SymplecticComplex& S, int j);

// Computes both sides of the equivalence independently and asserts they
// agree; disagreement is a hard failure (convention or logic bug) and
// raises Error(equivalence_violation) with a witness class.
LefschetzReport mathieu_equivalence_check(const SymplecticComplex& S);

// Lefschetz powers whose surjectivity the harmonize recursion relies on
// for a closed form of the given degree.
std::vector<int> harmonize_required_powers(const SymplecticComplex& S, int degree);

// Constructive harmonization: returns a harmonic form cohomologous to
// xi. Requires d xi = 0 (Error(not_closed) otherwise) and surjectivity
// of the required Lefschetz powers (HypothesisViolated otherwise).
Form harmonize(const SymplecticComplex& S, const Form& xi);

}  // namespace shl
