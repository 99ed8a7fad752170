#include "shl/foliated.hpp"

#include <sstream>

namespace shl {

namespace {

Rational determinant(const QMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorClass::internal, "determinant of non-square matrix");
  QMatrix m = a;
  int n = m.rows();
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(m.at(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Rational inv = 1 / m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (is_zero(m.at(r, col))) continue;
      Rational f = m.at(r, col) * inv;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
    }
  }
  return det;
}

QMatrix principal_block(const QMatrix& g, const std::vector<int>& idx) {
  QMatrix b(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b.at(static_cast<int>(i), static_cast<int>(j)) = g.at(idx[i] - 1, idx[j] - 1);
  return b;
}

bool positive_definite(const QMatrix& g) {
  // Exact Sylvester criterion.
  for (int k = 1; k <= g.rows(); ++k) {
    QMatrix lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead.at(i, j) = g.at(i, j);
    if (sgn(determinant(lead)) <= 0) return false;
  }
  return true;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class num = x.get_num(), den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn) / Rational(rd);
}

}  // namespace

FoliationBlock make_foliation(const ComplexModel& model, const FoliationSpec& spec) {
  FoliationBlock fol;
  int m = model.dim();
  if (spec.leaf_basis.empty()) fail(ErrorClass::foliation_invalid, "leaf_basis must not be empty");
  for (int idx : spec.leaf_basis) {
    if (idx < 1 || idx > m) fail(ErrorClass::foliation_invalid, "leaf_basis index out of range");
    if (mask::contains(fol.leaf, idx)) fail(ErrorClass::foliation_invalid, "leaf_basis has repeated indices");
    fol.leaf |= mask::bit(idx);
  }
  fol.p = mask::degree(fol.leaf);
  fol.transverse = mask::full(m) & ~fol.leaf;
  fol.codim = m - fol.p;
  if (fol.codim <= 0 || fol.codim % 2 != 0)
    fail(ErrorClass::foliation_invalid,
         "codimension must be even and positive (got " + std::to_string(fol.codim) + ")");

  // h must close under brackets: [h,h] stays inside h.
  for (const BracketTerm& b : model.brackets()) {
    if (mask::contains(fol.leaf, b.i) && mask::contains(fol.leaf, b.j) &&
        !mask::contains(fol.leaf, b.k))
      fail(ErrorClass::foliation_invalid,
           "leaf_basis does not span a subalgebra: [x" + std::to_string(b.i) + ", x" +
               std::to_string(b.j) + "] has a component along x" + std::to_string(b.k));
  }

  if (spec.metric.rows() != m || spec.metric.cols() != m)
    fail(ErrorClass::foliation_invalid, "metric must be an m x m matrix");
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      if (!(spec.metric.at(i - 1, j - 1) == spec.metric.at(j - 1, i - 1)))
        fail(ErrorClass::foliation_invalid, "metric is not symmetric");
      bool li = mask::contains(fol.leaf, i), lj = mask::contains(fol.leaf, j);
      if (li != lj && !is_zero(spec.metric.at(i - 1, j - 1)))
        fail(ErrorClass::foliation_invalid,
             "metric must make the leaf directions orthogonal to the transverse ones");
    }
  if (!positive_definite(spec.metric)) fail(ErrorClass::foliation_invalid, "metric is not positive definite");
  fol.metric = spec.metric;
  fol.chi_sign = spec.chi_sign;

  // chi = sign * sqrt(det g|_h) * e^{h}. The scale must stay rational so
  // every identity downstream is exact.
  Rational det_h = determinant(principal_block(spec.metric, mask::indices(fol.leaf)));
  auto scale = rational_sqrt(det_h);
  if (!scale)
    fail(ErrorClass::foliation_invalid,
         "det of the leaf metric block must be the square of a rational (got " + to_string(det_h) +
             "); rescale the metric");
  fol.chi_scale = *scale;
  Form chi = Form::unit_basis(m, fol.leaf);
  chi *= fol.chi_scale * Rational(fol.chi_sign);
  fol.chi = std::move(chi);
  return fol;
}

SymplecticData transverse_symplectic(const ComplexModel& model, const FoliationBlock& fol,
                                     const Form& omega) {
  if (omega.support() & fol.leaf)
    fail(ErrorClass::omega_invalid, "omega is not basic: it has components along the leaf directions");
  SymplecticData s = make_transverse_symplectic(model, omega, fol.transverse);
  // iota_T omega = 0 holds by support; L_T omega = iota_T d omega = 0
  // since omega is closed. Nothing further to check.
  return s;
}

bool is_basic(const ComplexModel& model, const FoliationBlock& fol, const Form& xi) {
  if (xi.support() & fol.leaf) return false;
  Form dxi = model.differential(xi);
  return (dxi.support() & fol.leaf) == 0;
}

Subcomplex basic_complex(const ComplexModel& model, const FoliationBlock& fol) {
  int m = model.dim();
  std::vector<std::vector<Form>> spans(m + 1);
  for (int k = 0; k <= m; ++k) {
    auto candidates = mask::degree_basis(m, k, fol.transverse);
    if (candidates.empty()) continue;
    // L_T xi = iota_T d xi; kill every component of d xi touching the leaf.
    std::vector<Mask> bad;
    for (Mask I : mask::degree_basis(m, k + 1))
      if (I & fol.leaf) bad.push_back(I);
    QMatrix cond(static_cast<int>(bad.size()), static_cast<int>(candidates.size()));
    std::map<Mask, int> row_of;
    for (std::size_t r = 0; r < bad.size(); ++r) row_of[bad[r]] = static_cast<int>(r);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Form df = model.differential(Form::unit_basis(m, candidates[c]));
      for (const auto& [I, v] : df.terms()) {
        auto it = row_of.find(I);
        if (it != row_of.end()) cond.at(it->second, static_cast<int>(c)) = v;
      }
    }
    QMatrix K = cond.kernel();
    for (int c = 0; c < K.cols(); ++c) {
      Form f(m, k);
      for (std::size_t i = 0; i < candidates.size(); ++i)
        f.add_term(candidates[i], K.at(static_cast<int>(i), c));
      spans[k].push_back(std::move(f));
    }
  }
  return Subcomplex::from_spans(model, std::move(spans));
}

std::map<Bidegree, Form> bigrade(const FoliationBlock& fol, const Form& xi) {
  std::map<Bidegree, Form> out;
  for (const auto& [I, c] : xi.terms()) {
    int r = mask::degree(I & fol.leaf);
    int s = mask::degree(I & fol.transverse);
    auto [it, inserted] = out.try_emplace(Bidegree{r, s}, Form(xi.dim(), r + s));
    it->second.add_term(I, c);
  }
  return out;
}

Form bigrade_component(const FoliationBlock& fol, const Form& xi, int r, int s) {
  Form out(xi.dim(), r + s);
  for (const auto& [I, c] : xi.terms()) {
    if (mask::degree(I & fol.leaf) == r && mask::degree(I & fol.transverse) == s) out.add_term(I, c);
  }
  return out;
}

Form d_component(const ComplexModel& model, const FoliationBlock& fol, const Form& xi, int dr,
                 int ds) {
  Form out(xi.dim(), xi.degree() + 1);
  for (const auto& [bd, comp] : bigrade(fol, xi)) {
    Form dcomp = model.differential(comp);
    out += bigrade_component(fol, dcomp, bd.first + dr, bd.second + ds);
  }
  return out;
}

DSplitCheck check_d_split(const ComplexModel& model, const FoliationBlock& fol) {
  DSplitCheck chk;
  int m = model.dim();
  for (int k = 0; k <= m && chk.residual_free; ++k) {
    for (Mask I : mask::degree_basis(m, k)) {
      Form e = Form::unit_basis(m, I);
      Form d = model.differential(e);
      Form sum = d_component(model, fol, e, 1, 0);
      sum += d_component(model, fol, e, 0, 1);
      sum += d_component(model, fol, e, -1, 2);
      if (!(sum == d)) {
        chk.residual_free = false;
        chk.counterexample = to_string(e);
        break;
      }
    }
  }
  return chk;
}

Form mean_curvature(const ComplexModel& model, const FoliationBlock& fol) {
  Form dchi01 = d_component(model, fol, fol.chi, 0, 1);
  Form kappa(model.dim(), 1);
  Rational chi_coeff = fol.chi.coeff(fol.leaf);
  for (int j : mask::indices(fol.transverse)) {
    Rational c = dchi01.coeff(fol.leaf | mask::bit(j));
    if (is_zero(c)) continue;
    kappa.add_term(mask::bit(j), c / (chi_coeff * mask::wedge_sign(mask::bit(j), fol.leaf)));
  }
  if (!(wedge(kappa, fol.chi) == dchi01))
    fail(ErrorClass::internal, "mean curvature system is inconsistent: d_{0,1} chi is not kappa ^ chi");
  return kappa;
}

bool is_tense(const ComplexModel& model, const FoliationBlock& fol, const Form& kappa) {
  return is_basic(model, fol, kappa);
}

Form star_t(const ComplexModel& model, const FoliationBlock& fol, const SymplecticData& transverse,
            const Form& xi) {
  if (!is_basic(model, fol, xi)) fail(ErrorClass::foliation_invalid, "star_t: form is not basic");
  return star(transverse, xi);
}

Form star_t_with_complement(const ComplexModel& model, const FoliationBlock& fol,
                            const SymplecticData& transverse, const QMatrix& shear, const Form& xi) {
  if (!is_basic(model, fol, xi)) fail(ErrorClass::foliation_invalid, "star_t: form is not basic");
  auto leaf_idx = mask::indices(fol.leaf);
  auto trans_idx = mask::indices(fol.transverse);
  if (shear.rows() != fol.p || shear.cols() != fol.codim)
    fail(ErrorClass::usage, "shear must be p x 2n");
  int m = model.dim();

  // Complement vectors and their flats.
  std::vector<Multivector> v(trans_idx.size(), Multivector(m, 1));
  QMatrix F(fol.codim, fol.codim);
  for (std::size_t j = 0; j < trans_idx.size(); ++j) {
    Multivector vj(m, 1);
    vj.add_term(mask::bit(trans_idx[j]), Rational(1));
    for (std::size_t i = 0; i < leaf_idx.size(); ++i)
      vj.add_term(mask::bit(leaf_idx[i]), shear.at(static_cast<int>(i), static_cast<int>(j)));
    Form fj = contract(vj, transverse.omega);
    for (std::size_t l = 0; l < trans_idx.size(); ++l)
      F.at(static_cast<int>(j), static_cast<int>(l)) = fj.coeff(mask::bit(trans_idx[l]));
    v[j] = std::move(vj);
  }
  auto Finv = F.inverse();
  if (!Finv) fail(ErrorClass::internal, "complement flat is singular");

  // sharp'(e^l) = sum_j Finv[l][j] v_j, extended multiplicatively.
  auto sharp1 = [&](int l_pos) {
    Multivector out(m, 1);
    for (std::size_t j = 0; j < trans_idx.size(); ++j) {
      Multivector t = v[j];
      t *= Finv->at(l_pos, static_cast<int>(j));
      out += t;
    }
    return out;
  };
  Form out(m, 2 * transverse.n - xi.degree());
  for (const auto& [I, c] : xi.terms()) {
    Multivector mv = Multivector::scalar(m, Rational(1));
    for (int idx : mask::indices(I)) {
      int pos = static_cast<int>(std::find(trans_idx.begin(), trans_idx.end(), idx) - trans_idx.begin());
      mv = wedge(mv, sharp1(pos));
    }
    Form t = contract(mv, transverse.volume);
    t *= c;
    out += t;
  }
  return out;
}

Form delta_t(const ComplexModel& model, const FoliationBlock& fol, const SymplecticData& transverse,
             const Form& xi) {
  if (!is_basic(model, fol, xi)) fail(ErrorClass::foliation_invalid, "delta_t: form is not basic");
  return codifferential(model, transverse, xi);
}

StarA::StarA(const ComplexModel& model, const FoliationBlock& fol, const SymplecticData& transverse)
    : model_(&model), fol_(&fol) {
  int m = model.dim();
  flat_rows_ = QMatrix(m, m);
  for (int i = 1; i <= m; ++i) {
    if (mask::contains(fol.leaf, i)) {
      for (int j = 1; j <= m; ++j) flat_rows_.at(i - 1, j - 1) = fol.metric.at(i - 1, j - 1);
    } else {
      for (int j = 1; j <= m; ++j) flat_rows_.at(i - 1, j - 1) = transverse.flat_matrix.at(i - 1, j - 1);
    }
  }
  auto inv = flat_rows_.inverse();
  if (!inv) fail(ErrorClass::internal, "metric flat is singular");

  inv_table_.assign(std::size_t{1} << m, Multivector(m, 0));
  Mask all = mask::full(m);
  for (Mask I = 0;; ++I) {
    Multivector mv = Multivector::scalar(m, Rational(1));
    for (int idx : mask::indices(I)) {
      Multivector v1(m, 1);
      for (int j = 1; j <= m; ++j) v1.add_term(mask::bit(j), inv->at(idx - 1, j - 1));
      mv = wedge(mv, v1);
    }
    inv_table_[I] = std::move(mv);
    if (I == all) break;
  }
  volume_ = wedge(transverse.volume, fol.chi);
}

Multivector StarA::flat_inverse(const Form& xi) const {
  Multivector out(xi.dim(), xi.degree());
  for (const auto& [I, c] : xi.terms()) {
    Multivector t = inv_table_[I];
    t *= c;
    out += t;
  }
  return out;
}

Form StarA::apply(const Form& xi) const { return contract(flat_inverse(xi), volume_); }

Form StarA::codifferential(const Form& xi) const {
  int k = xi.degree();
  Form out = apply(d_component(*model_, *fol_, apply(xi), 0, 1));
  if (k & 1) out *= Rational(-1);
  return out;
}

std::pair<Form, Form> bracket_Y_delta_a_sides(const ComplexModel& model, const FoliationBlock& fol,
                                              const SymplecticData& transverse, const StarA& sa,
                                              const Form& basic_xi) {
  if (!is_basic(model, fol, basic_xi))
    fail(ErrorClass::foliation_invalid, "bracket check requires a basic form");
  int k = basic_xi.degree();
  Form lhs = wedge(transverse.omega, sa.codifferential(basic_xi)) -
             sa.codifferential(wedge(transverse.omega, basic_xi));

  Form kappa = mean_curvature(model, fol);
  Multivector T = sa.flat_inverse(kappa);
  Form rhs = wedge(contract(T, transverse.omega), basic_xi) + model.differential(basic_xi);
  int sign = ((fol.p * (k - 1)) % 2 == 0) ? 1 : -1;
  rhs *= Rational(-sign);
  return {lhs, rhs};
}

Theorem41Report theorem41_check(const ComplexModel& model, const FoliationBlock& fol,
                                const Form& omega) {
  Theorem41Report rep;
  SymplecticData st = transverse_symplectic(model, fol, omega);
  rep.kappa = mean_curvature(model, fol);
  rep.minimal = rep.kappa.is_zero();
  rep.tense = is_tense(model, fol, rep.kappa);

  Subcomplex basic = basic_complex(model, fol);
  for (int k = 0; k <= fol.codim; ++k) rep.basic_betti.push_back(cohomology(basic, k).dim());
  rep.top_basic_dim = rep.basic_betti.back();
  rep.top_basic_nonzero = rep.top_basic_dim > 0;

  if (rep.minimal) {
    SymplecticComplex S(model, st, std::move(basic));
    rep.equivalence = mathieu_equivalence_check(S);

    // With kappa = 0 the star_a- and star_t-harmonic basic forms agree:
    // compare the two kernels degree by degree.
    StarA sa(model, fol, st);
    rep.harmonic_sets_coincide = true;
    for (int k = 0; k <= fol.codim && rep.harmonic_sets_coincide; ++k) {
      int dk = S.sub().dim(k);
      if (dk == 0) continue;
      QMatrix delta_a_mat(S.sub().dim(std::max(k - 1, 0)), dk);
      for (int c = 0; c < dk; ++c) {
        Form img = sa.codifferential(S.sub().basis(k)[c]);
        auto coords = S.sub().coords(std::max(k - 1, 0), img);
        if (!coords) {
          rep.harmonic_sets_coincide = false;
          break;
        }
        delta_a_mat.set_column(c, *coords);
      }
      if (!rep.harmonic_sets_coincide) break;
      QMatrix Ka = QMatrix::vstack(S.d_mat(k), delta_a_mat).kernel();
      QMatrix Kt = QMatrix::vstack(S.d_mat(k), S.delta_mat(k)).kernel();
      int ra = Ka.transposed().rank();
      int rt = Kt.transposed().rank();
      int rjoint = QMatrix::vstack(Ka.transposed(), Kt.transposed()).rank();
      if (!(ra == rt && rt == rjoint)) rep.harmonic_sets_coincide = false;
    }
  }
  return rep;
}

}  // namespace shl
