#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shl/exterior.hpp"
#include "shl/linalg.hpp"

namespace shl {

// One structure constant: [x_i, x_j] = sum_k c^k_{ij} x_k, stored with i < j.
struct BracketTerm {
  int i, j, k;
  Rational c;
};

// Finite-dimensional cochain complex presented by Lie-algebra structure
// constants. The differential acts on generators by
//   d e^k = - sum_{i<j} c^k_{ij} e^i ^ e^j
// and extends as a degree +1 derivation. d^2 = 0 is equivalent to the
// Jacobi identity and is checked by validate().
class ComplexModel {
 public:
  ComplexModel(int dim, std::vector<BracketTerm> brackets, std::string name = "");

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<BracketTerm>& brackets() const { return brackets_; }
  const Form& d_generator(int k) const;  // k is 1-based

  Form differential(const Form& xi) const;

  struct Validation {
    bool valid = true;
    std::vector<std::string> violations;
  };
  Validation validate() const;
  void require_valid() const;  // throws Error(model_invalid) listing violations

 private:
  int dim_;
  std::string name_;
  std::vector<BracketTerm> brackets_;
  std::vector<Form> d_gen_;  // d e^k per generator
};

// A d-stable graded subspace of the full form space, with canonical
// (reduced echelon) bases per degree and the induced differential in
// subspace coordinates. The full complex is the special case whose
// basis is the standard monomial basis.
class Subcomplex {
 public:
  static Subcomplex full(const ComplexModel& model);
  // Spanning sets per degree (index = degree, 0..dim). Spans are
  // canonicalized; the result must be d-stable or construction fails.
  static Subcomplex from_spans(const ComplexModel& model, std::vector<std::vector<Form>> spans);

  const ComplexModel& model() const { return *model_; }
  int top() const { return static_cast<int>(basis_.size()) - 1; }
  int dim(int k) const;
  const std::vector<Form>& basis(int k) const;
  const std::vector<Mask>& ambient_masks(int k) const;

  // Coordinates of a form in the degree-k basis; nullopt when the form
  // is not in the subspace.
  std::optional<std::vector<Rational>> coords(int k, const Form& xi) const;
  std::vector<Rational> coords_or_fail(int k, const Form& xi, const char* what) const;
  Form from_coords(int k, std::span<const Rational> c) const;
  bool contains(int k, const Form& xi) const { return coords(k, xi).has_value(); }

  // Induced differential, degree k -> k+1, in subspace coordinates.
  const QMatrix& d_matrix(int k) const;

  std::vector<Rational> ambient_coords(int k, const Form& xi) const;

 private:
  Subcomplex() = default;
  void build(const ComplexModel& model, std::vector<std::vector<Form>> spans);

  const ComplexModel* model_ = nullptr;
  std::vector<std::vector<Form>> basis_;
  std::vector<std::vector<Mask>> masks_;
  std::vector<QMatrix> basis_rows_;         // per degree: rows = basis in ambient coords (RREF)
  std::vector<std::vector<int>> pivots_;    // per degree
  std::vector<QMatrix> d_;                  // per degree
};

// Basis of H^k: closed representatives with exact coordinate queries.
class CohomologyBasis {
 public:
  int degree() const { return degree_; }
  int dim() const { return static_cast<int>(reps_.size()); }
  const std::vector<Form>& representatives() const { return reps_; }

  // Coordinates of [xi] in this basis; nullopt when d xi != 0.
  // The zero vector characterizes exact forms.
  std::optional<std::vector<Rational>> class_coords(const Form& xi) const;

 private:
  friend CohomologyBasis cohomology(const Subcomplex& sub, int k);
  const Subcomplex* sub_ = nullptr;
  int degree_ = 0;
  std::vector<Form> reps_;
  QMatrix span_rows_;  // rows spanning ker d_k: exact rows first, then representative rows
  int exact_rows_ = 0;
};

CohomologyBasis cohomology(const Subcomplex& sub, int k);

// Any theta in the subcomplex with d theta = target; nullopt when target
// is not in the image of d. Deterministic (free variables zero).
std::optional<Form> solve_d(const Subcomplex& sub, const Form& target);

}  // namespace shl
