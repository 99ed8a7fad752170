#include "shl/complex.hpp"

#include <algorithm>
#include <sstream>

namespace shl {

ComplexModel::ComplexModel(int dim, std::vector<BracketTerm> brackets, std::string name)
    : dim_(dim), name_(std::move(name)) {
  if (dim < 1 || dim > kMaxDim)
    fail(ErrorClass::parse, "model dimension must be within 1.." + std::to_string(kMaxDim));
  std::vector<std::vector<bool>> seen;  // (i,j,k) with i<j, flattened lazily
  auto key_seen = [&](int i, int j, int k) {
    std::size_t key = (static_cast<std::size_t>(i) * (dim + 1) + j) * (dim + 1) + k;
    if (seen.empty()) seen.resize(1);
    if (seen[0].size() <= key) seen[0].resize(key + 1, false);
    bool was = seen[0][key];
    seen[0][key] = true;
    return was;
  };
  for (BracketTerm t : brackets) {
    if (t.i < 1 || t.i > dim || t.j < 1 || t.j > dim || t.k < 1 || t.k > dim)
      fail(ErrorClass::parse, "bracket index out of range");
    if (t.i == t.j) {
      if (!is_zero(t.c)) fail(ErrorClass::parse, "bracket [i,i] must vanish (antisymmetry)");
      continue;
    }
    if (t.i > t.j) {
      std::swap(t.i, t.j);
      t.c = -t.c;
    }
    if (is_zero(t.c)) continue;
    if (key_seen(t.i, t.j, t.k))
      fail(ErrorClass::parse, "duplicate or non-antisymmetric bracket entry for (" +
                                  std::to_string(t.i) + "," + std::to_string(t.j) + "," +
                                  std::to_string(t.k) + ")");
    brackets_.push_back(std::move(t));
  }
  std::sort(brackets_.begin(), brackets_.end(), [](const BracketTerm& a, const BracketTerm& b) {
    return std::tie(a.k, a.i, a.j) < std::tie(b.k, b.i, b.j);
  });
  d_gen_.reserve(dim_);
  for (int k = 1; k <= dim_; ++k) d_gen_.emplace_back(dim_, 2);
  for (const BracketTerm& t : brackets_)
    d_gen_[t.k - 1].add_term(mask::bit(t.i) | mask::bit(t.j), -t.c);
}

const Form& ComplexModel::d_generator(int k) const {
  if (k < 1 || k > dim_) fail(ErrorClass::internal, "generator index out of range");
  return d_gen_[k - 1];
}

Form ComplexModel::differential(const Form& xi) const {
  if (xi.dim() != dim_) fail(ErrorClass::model_invalid, "differential: ambient dimension mismatch");
  Form out(dim_, xi.degree() + 1);
  for (const auto& [I, c] : xi.terms()) {
    auto idxs = mask::indices(I);
    Mask pre = 0;
    for (std::size_t t = 0; t < idxs.size(); ++t) {
      const Form& dg = d_gen_[idxs[t] - 1];
      if (!dg.is_zero()) {
        Mask post = I & ~pre & ~mask::bit(idxs[t]);
        // d(e^pre ^ e^it ^ e^post) contribution: (-1)^{|pre|} e^pre ^ (d e^it) ^ e^post
        int sign = (t & 1) ? -1 : 1;
        for (const auto& [D, cd] : dg.terms()) {
          if (D & (pre | post)) continue;
          Rational v = c * cd * sign;
          v *= mask::wedge_sign(pre, D);
          v *= mask::wedge_sign(pre | D, post);
          out.add_term(pre | D | post, v);
        }
      }
      pre |= mask::bit(idxs[t]);
    }
  }
  return out;
}

ComplexModel::Validation ComplexModel::validate() const {
  Validation v;
  for (int k = 1; k <= dim_; ++k) {
    Form dd = differential(d_gen_[k - 1]);
    if (!dd.is_zero()) {
      v.valid = false;
      v.violations.push_back("d^2 e{" + std::to_string(k) + "} = " + to_string(dd) +
                             " (Jacobi identity fails at generator " + std::to_string(k) + ")");
    }
  }
  return v;
}

void ComplexModel::require_valid() const {
  Validation v = validate();
  if (v.valid) return;
  std::ostringstream os;
  os << "model '" << name_ << "' rejected:";
  for (const auto& s : v.violations) os << "\n  " << s;
  fail(ErrorClass::model_invalid, os.str());
}

// ---------------------------------------------------------------------------

int Subcomplex::dim(int k) const {
  if (k < 0 || k >= static_cast<int>(basis_.size())) return 0;
  return static_cast<int>(basis_[k].size());
}

const std::vector<Form>& Subcomplex::basis(int k) const {
  static const std::vector<Form> empty;
  if (k < 0 || k >= static_cast<int>(basis_.size())) return empty;
  return basis_[k];
}

const std::vector<Mask>& Subcomplex::ambient_masks(int k) const {
  static const std::vector<Mask> empty;
  if (k < 0 || k >= static_cast<int>(masks_.size())) return empty;
  return masks_[k];
}

std::vector<Rational> Subcomplex::ambient_coords(int k, const Form& xi) const {
  const auto& mk = masks_[k];
  std::vector<Rational> x(mk.size(), Rational(0));
  for (std::size_t j = 0; j < mk.size(); ++j) x[j] = xi.coeff(mk[j]);
  // every term of xi must live on a known mask
  std::size_t nonzero = 0;
  for (const auto& v : x)
    if (!is_zero(v)) ++nonzero;
  if (nonzero != xi.terms().size()) fail(ErrorClass::internal, "form has unexpected support");
  return x;
}

std::optional<std::vector<Rational>> Subcomplex::coords(int k, const Form& xi) const {
  if (!xi.is_zero() && xi.degree() != k) return std::nullopt;
  if (k < 0 || k >= static_cast<int>(basis_.size())) return xi.is_zero() ? std::make_optional(std::vector<Rational>{}) : std::nullopt;
  std::vector<Rational> x = ambient_coords(k, xi);
  const QMatrix& rows = basis_rows_[k];
  const auto& piv = pivots_[k];
  std::vector<Rational> c(rows.rows(), Rational(0));
  for (int r = 0; r < rows.rows(); ++r) {
    c[r] = x[piv[r]];
    if (is_zero(c[r])) continue;
    for (int j = 0; j < rows.cols(); ++j)
      if (!is_zero(rows.at(r, j))) x[j] -= c[r] * rows.at(r, j);
  }
  if (!vec_is_zero(x)) return std::nullopt;
  return c;
}

std::vector<Rational> Subcomplex::coords_or_fail(int k, const Form& xi, const char* what) const {
  auto c = coords(k, xi);
  if (!c) fail(ErrorClass::internal, std::string(what) + ": form not in subcomplex at degree " + std::to_string(k));
  return *c;
}

Form Subcomplex::from_coords(int k, std::span<const Rational> c) const {
  Form out(model_->dim(), k);
  if (static_cast<int>(c.size()) != dim(k)) fail(ErrorClass::internal, "from_coords: size mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_zero(c[i])) continue;
    Form term = basis_[k][i];
    term *= c[i];
    out += term;
  }
  return out;
}

const QMatrix& Subcomplex::d_matrix(int k) const {
  static const QMatrix empty;
  if (k < 0 || k >= static_cast<int>(d_.size())) return empty;
  return d_[k];
}

Subcomplex Subcomplex::full(const ComplexModel& model) {
  std::vector<std::vector<Form>> spans(model.dim() + 1);
  for (int k = 0; k <= model.dim(); ++k)
    for (Mask I : mask::degree_basis(model.dim(), k)) spans[k].push_back(Form::unit_basis(model.dim(), I));
  Subcomplex s;
  s.build(model, std::move(spans));
  return s;
}

Subcomplex Subcomplex::from_spans(const ComplexModel& model, std::vector<std::vector<Form>> spans) {
  Subcomplex s;
  spans.resize(model.dim() + 1);
  s.build(model, std::move(spans));
  return s;
}

void Subcomplex::build(const ComplexModel& model, std::vector<std::vector<Form>> spans) {
  model_ = &model;
  int m = model.dim();
  basis_.assign(m + 1, {});
  masks_.assign(m + 1, {});
  basis_rows_.assign(m + 1, QMatrix());
  pivots_.assign(m + 1, {});
  d_.assign(m + 1, QMatrix());

  for (int k = 0; k <= m; ++k) {
    masks_[k] = mask::degree_basis(m, k);
    int cols = static_cast<int>(masks_[k].size());
    QMatrix rows(static_cast<int>(spans[k].size()), cols);
    for (int i = 0; i < rows.rows(); ++i) {
      const Form& f = spans[k][i];
      if (!f.is_zero() && f.degree() != k) fail(ErrorClass::internal, "span form has wrong degree");
      for (int j = 0; j < cols; ++j) rows.at(i, j) = f.coeff(masks_[k][j]);
    }
    auto ech = rows.echelon();
    QMatrix reduced(ech.rank, cols);
    for (int r = 0; r < ech.rank; ++r)
      for (int j = 0; j < cols; ++j) reduced.at(r, j) = ech.rref.at(r, j);
    basis_rows_[k] = std::move(reduced);
    pivots_[k] = ech.pivot_cols;
    for (int r = 0; r < ech.rank; ++r) {
      Form f(m, k);
      for (int j = 0; j < cols; ++j) f.add_term(masks_[k][j], basis_rows_[k].at(r, j));
      basis_[k].push_back(std::move(f));
    }
  }

  for (int k = 0; k <= m; ++k) {
    int next = (k + 1 <= m) ? dim(k + 1) : 0;
    QMatrix dk(next, dim(k));
    for (int i = 0; i < dim(k); ++i) {
      Form df = model.differential(basis_[k][i]);
      if (df.is_zero()) continue;
      if (k + 1 > m) fail(ErrorClass::internal, "differential escapes top degree");
      auto c = coords(k + 1, df);
      if (!c) fail(ErrorClass::internal, "subspace is not d-stable at degree " + std::to_string(k));
      dk.set_column(i, *c);
    }
    d_[k] = std::move(dk);
  }
}

// ---------------------------------------------------------------------------

CohomologyBasis cohomology(const Subcomplex& sub, int k) {
  CohomologyBasis H;
  H.sub_ = &sub;
  H.degree_ = k;
  int n_k = sub.dim(k);

  // Exact rows: reduced echelon of the image of d_{k-1}.
  QMatrix img_rows(0, n_k);
  if (k >= 1 && sub.dim(k - 1) > 0 && n_k > 0) {
    const QMatrix& dprev = sub.d_matrix(k - 1);
    img_rows = dprev.transposed().echelon().rref;
  } else {
    img_rows = QMatrix(0, n_k);
  }
  int exact_rank = 0;
  {
    auto e = img_rows.echelon();
    exact_rank = e.rank;
    QMatrix rows(e.rank, n_k);
    for (int r = 0; r < e.rank; ++r)
      for (int j = 0; j < n_k; ++j) rows.at(r, j) = e.rref.at(r, j);
    img_rows = std::move(rows);
  }

  // Workspace in mutual reduced echelon form, seeded with the exact rows.
  std::vector<std::vector<Rational>> work;
  std::vector<int> work_piv;
  auto reduce = [&](std::vector<Rational> v) {
    for (std::size_t r = 0; r < work.size(); ++r) {
      const Rational& c = v[work_piv[r]];
      if (is_zero(c)) continue;
      Rational f = c;
      for (int j = 0; j < n_k; ++j)
        if (!is_zero(work[r][j])) v[j] -= f * work[r][j];
    }
    return v;
  };
  auto insert_row = [&](std::vector<Rational> v) -> int {
    int lead = -1;
    for (int j = 0; j < n_k; ++j)
      if (!is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead < 0) return -1;
    Rational inv = 1 / v[lead];
    for (int j = lead; j < n_k; ++j) v[j] *= inv;
    for (std::size_t r = 0; r < work.size(); ++r) {
      Rational f = work[r][lead];
      if (is_zero(f)) continue;
      for (int j = 0; j < n_k; ++j)
        if (!is_zero(v[j])) work[r][j] -= f * v[j];
    }
    work.push_back(std::move(v));
    work_piv.push_back(lead);
    return static_cast<int>(work.size()) - 1;
  };
  for (int r = 0; r < img_rows.rows(); ++r) insert_row(img_rows.row(r));

  // Representatives: kernel vectors that are independent of the exact rows,
  // reduced against everything chosen so far. Output is canonical.
  std::vector<std::vector<Rational>> rep_rows;
  if (n_k > 0) {
    QMatrix ker = sub.d_matrix(k).kernel();
    for (int c = 0; c < ker.cols(); ++c) {
      std::vector<Rational> v = reduce(ker.column(c));
      // normalize and insert; keep a copy as representative if independent
      std::vector<Rational> before = v;
      int lead = -1;
      for (int j = 0; j < n_k; ++j)
        if (!is_zero(before[j])) {
          lead = j;
          break;
        }
      if (lead < 0) continue;
      Rational inv = 1 / before[lead];
      for (auto& x : before) x *= inv;
      insert_row(std::move(v));
      rep_rows.push_back(std::move(before));
    }
  }

  H.exact_rows_ = img_rows.rows();
  QMatrix span(H.exact_rows_ + static_cast<int>(rep_rows.size()), n_k);
  for (int r = 0; r < img_rows.rows(); ++r)
    for (int j = 0; j < n_k; ++j) span.at(r, j) = img_rows.at(r, j);
  for (std::size_t r = 0; r < rep_rows.size(); ++r) {
    for (int j = 0; j < n_k; ++j) span.at(H.exact_rows_ + static_cast<int>(r), j) = rep_rows[r][j];
    H.reps_.push_back(sub.from_coords(k, rep_rows[r]));
  }
  H.span_rows_ = std::move(span);
  return H;
}

std::optional<std::vector<Rational>> CohomologyBasis::class_coords(const Form& xi) const {
  const Subcomplex& sub = *sub_;
  if (!xi.is_zero() && xi.degree() != degree_)
    fail(ErrorClass::model_invalid, "class_coords: degree mismatch");
  auto x = sub.coords(degree_, xi);
  if (!x) fail(ErrorClass::internal, "class_coords: form not in subcomplex");
  auto dx = sub.d_matrix(degree_).apply(*x);
  if (!vec_is_zero(dx)) return std::nullopt;  // not closed
  if (dim() == 0 && span_rows_.rows() == 0) return std::vector<Rational>{};
  auto sol = span_rows_.transposed().solve(*x);
  if (!sol) fail(ErrorClass::internal, "class_coords: closed form outside kernel span");
  std::vector<Rational> out(sol->begin() + exact_rows_, sol->end());
  return out;
}

std::optional<Form> solve_d(const Subcomplex& sub, const Form& target) {
  int t = target.degree();
  if (target.is_zero()) return Form::zero(sub.model().dim(), std::max(t - 1, 0));
  if (t < 1) fail(ErrorClass::model_invalid, "solve_d: target degree must be at least 1");
  auto x = sub.coords(t, target);
  if (!x) fail(ErrorClass::internal, "solve_d: target not in subcomplex");
  auto sol = sub.d_matrix(t - 1).solve(*x);
  if (!sol) return std::nullopt;
  return sub.from_coords(t - 1, *sol);
}

}  // namespace shl
