#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "shl/lefschetz.hpp"
#include "shl/model_io.hpp"
#include "shl/symplectic.hpp"

namespace shl {

// A foliation modeled by a Lie subalgebra h of the model: the leafwise
// directions are a subset of the basis, the transverse distribution is
// the complementary coordinate subspace, and the metric is block
// diagonal with respect to that splitting. chi is the leafwise volume
// e^{h} scaled by the metric volume of the leaf block (which must be a
// rational square) and an orientation sign.
struct FoliationBlock {
  Mask leaf = 0;
  int p = 0;
  Mask transverse = 0;
  int codim = 0;  // 2n
  QMatrix metric;
  int chi_sign = 1;
  Rational chi_scale = 1;
  Form chi{0, 0};
};

FoliationBlock make_foliation(const ComplexModel& model, const FoliationSpec& spec);

// Transverse symplectic structure of a foliated model: omega must be
// basic (iota_T omega = L_T omega = 0 for leafwise T) and nondegenerate
// on the transverse indices.
SymplecticData transverse_symplectic(const ComplexModel& model, const FoliationBlock& fol,
                                     const Form& omega);

// iota_T xi = 0 and L_T xi = 0 for every leafwise direction T.
bool is_basic(const ComplexModel& model, const FoliationBlock& fol, const Form& xi);

Subcomplex basic_complex(const ComplexModel& model, const FoliationBlock& fol);

// Bigrading by (leafwise, transverse) degree.
using Bidegree = std::pair<int, int>;
std::map<Bidegree, Form> bigrade(const FoliationBlock& fol, const Form& xi);
Form bigrade_component(const FoliationBlock& fol, const Form& xi, int r, int s);

// Component d_{dr,ds} of the differential; (dr,ds) is one of (1,0),
// (0,1), (-1,2) on models whose leaf directions close under brackets.
Form d_component(const ComplexModel& model, const FoliationBlock& fol, const Form& xi, int dr, int ds);

struct DSplitCheck {
  bool residual_free = true;
  std::string counterexample;
};
// d = d_{1,0} + d_{0,1} + d_{-1,2} exactly on every basis monomial.
DSplitCheck check_d_split(const ComplexModel& model, const FoliationBlock& fol);

// The unique transverse 1-form with d_{0,1} chi = kappa ^ chi.
Form mean_curvature(const ComplexModel& model, const FoliationBlock& fol);
inline bool is_minimal(const Form& kappa) { return kappa.is_zero(); }
bool is_tense(const ComplexModel& model, const FoliationBlock& fol, const Form& kappa);

// star_t: the transverse star gated to basic forms.
Form star_t(const ComplexModel& model, const FoliationBlock& fol, const SymplecticData& transverse,
            const Form& xi);

// star_t computed through an explicitly chosen transverse complement:
// the complement is spanned by v_j = d_j + sum_{i in h} shear(i,j) d_i
// for transverse j. The result does not depend on the shear; the
// acceptance suite pins this. shear is indexed by (leaf row, transverse
// column) in increasing index order.
Form star_t_with_complement(const ComplexModel& model, const FoliationBlock& fol,
                            const SymplecticData& transverse, const QMatrix& shear, const Form& xi);

// delta_t xi = (-1)^k star_t d star_t xi on basic forms.
Form delta_t(const ComplexModel& model, const FoliationBlock& fol, const SymplecticData& transverse,
             const Form& xi);

// The metric star suite: flat is iota_{X^transverse} omega + g(X^leafwise, .),
// the volume is (omega^n/n!) ^ chi, and the codifferential uses the
// (0,1) part of the differential.
class StarA {
 public:
  StarA(const ComplexModel& model, const FoliationBlock& fol, const SymplecticData& transverse);
  Form apply(const Form& xi) const;            // star_a
  Form codifferential(const Form& xi) const;   // delta_a = (-1)^k star_a d_{0,1} star_a
  Multivector flat_inverse(const Form& xi) const;
  const Form& volume() const { return volume_; }

 private:
  const ComplexModel* model_;
  const FoliationBlock* fol_;
  QMatrix flat_rows_;  // row i = coefficients of flat(d_i)
  std::vector<Multivector> inv_table_;  // per mask
  Form volume_{0, 0};
};

// Both sides of the bracket identity
//   [Y, delta_a] xi = (-1)^{p(k-1)+1} (iota_T omega ^ xi + d xi)
// for a basic homogeneous xi, with T = flat^{-1}(kappa).
std::pair<Form, Form> bracket_Y_delta_a_sides(const ComplexModel& model, const FoliationBlock& fol,
                                              const SymplecticData& transverse, const StarA& sa,
                                              const Form& basic_xi);

struct Theorem41Report {
  Form kappa{0, 1};
  bool minimal = false;
  bool tense = false;
  std::vector<int> basic_betti;
  int top_basic_dim = 0;
  bool top_basic_nonzero = false;
  // Present only when kappa = 0 (the theorem's hypothesis).
  std::optional<LefschetzReport> equivalence;
  bool harmonic_sets_coincide = true;  // star_a- vs star_t-harmonic basic forms, kappa = 0 only
};

Theorem41Report theorem41_check(const ComplexModel& model, const FoliationBlock& fol,
                                const Form& omega);

}  // namespace shl
