#include "shl/symplectic.hpp"

#include <functional>

namespace shl {

namespace {

void require_active_support(const SymplecticData& s, const Form& xi, const char* op) {
  if (xi.support() & ~s.active)
    fail(ErrorClass::model_invalid,
         std::string(op) + ": form has components outside the transverse index set");
}

// Matrix of a pointwise operator: columns are the images of the given
// input forms, expressed over an explicit output monomial basis.
QMatrix op_matrix(const std::vector<Form>& inputs, const std::vector<Mask>& out_masks,
                  const std::function<Form(const Form&)>& op) {
  QMatrix M(static_cast<int>(out_masks.size()), static_cast<int>(inputs.size()));
  std::map<Mask, int> row_of;
  for (std::size_t r = 0; r < out_masks.size(); ++r) row_of[out_masks[r]] = static_cast<int>(r);
  for (std::size_t c = 0; c < inputs.size(); ++c) {
    Form img = op(inputs[c]);
    for (const auto& [I, v] : img.terms()) {
      auto it = row_of.find(I);
      if (it == row_of.end()) fail(ErrorClass::internal, "operator image escapes the expected basis");
      M.at(it->second, static_cast<int>(c)) = v;
    }
  }
  return M;
}

std::vector<Form> monomials(int dim, int k, Mask within) {
  std::vector<Form> out;
  for (Mask I : mask::degree_basis(dim, k, within)) out.push_back(Form::unit_basis(dim, I));
  return out;
}

}  // namespace

SymplecticData make_transverse_symplectic(const ComplexModel& model, const Form& omega, Mask active) {
  SymplecticData s;
  s.dim = model.dim();
  s.active = active & mask::full(s.dim);
  int act = mask::degree(s.active);
  if (act == 0 || act % 2 != 0)
    fail(ErrorClass::omega_invalid, "symplectic index set must have positive even size (got " +
                                        std::to_string(act) + ")");
  s.n = act / 2;
  if (!omega.is_zero() && omega.degree() != 2) fail(ErrorClass::omega_invalid, "omega must be a 2-form");
  if (omega.support() & ~s.active)
    fail(ErrorClass::omega_invalid, "omega has components outside the symplectic index set");
  s.omega = omega;

  Form dw = model.differential(omega);
  if (!dw.is_zero()) fail(ErrorClass::omega_invalid, "omega is not closed: d omega = " + to_string(dw));

  // flat(d_i) = iota_{d_i} omega, as rows of an m x m matrix.
  s.flat_matrix = QMatrix(s.dim, s.dim);
  for (int i = 1; i <= s.dim; ++i) {
    if (!mask::contains(s.active, i)) continue;
    Multivector di = Multivector::unit_basis(s.dim, mask::bit(i));
    Form fi = contract(di, omega);
    for (int j = 1; j <= s.dim; ++j) s.flat_matrix.at(i - 1, j - 1) = fi.coeff(mask::bit(j));
  }
  // Invert on the active block.
  auto act_idx = mask::indices(s.active);
  QMatrix block(act, act);
  for (int a = 0; a < act; ++a)
    for (int b = 0; b < act; ++b) block.at(a, b) = s.flat_matrix.at(act_idx[a] - 1, act_idx[b] - 1);
  auto inv = block.inverse();
  if (!inv) fail(ErrorClass::omega_invalid, "omega is degenerate on the symplectic index set");
  s.sharp_matrix = QMatrix(s.dim, s.dim);
  for (int a = 0; a < act; ++a)
    for (int b = 0; b < act; ++b) s.sharp_matrix.at(act_idx[a] - 1, act_idx[b] - 1) = inv->at(a, b);

  // volume = omega^n / n!
  Form vol = Form::scalar(s.dim, Rational(1));
  for (int i = 0; i < s.n; ++i) vol = wedge(vol, omega);
  Rational fact(1);
  for (int i = 2; i <= s.n; ++i) fact *= i;
  vol *= Rational(1) / fact;
  s.volume = std::move(vol);

  // Musical tables for every monomial within the active index set.
  s.flat_table.assign(std::size_t{1} << s.dim, Form(s.dim, 0));
  s.sharp_table.assign(std::size_t{1} << s.dim, Multivector(s.dim, 0));
  for (Mask I = 0;; I = ((I | ~s.active) + 1) & s.active) {
    Form f = Form::scalar(s.dim, Rational(1));
    Multivector v = Multivector::scalar(s.dim, Rational(1));
    for (int idx : mask::indices(I)) {
      Form f1(s.dim, 1);
      Multivector v1(s.dim, 1);
      for (int j = 1; j <= s.dim; ++j) {
        f1.add_term(mask::bit(j), s.flat_matrix.at(idx - 1, j - 1));
        v1.add_term(mask::bit(j), s.sharp_matrix.at(idx - 1, j - 1));
      }
      f = wedge(f, f1);
      v = wedge(v, v1);
    }
    s.flat_table[I] = std::move(f);
    s.sharp_table[I] = std::move(v);
    if (I == s.active) break;
  }

  s.poisson = sharp(s, omega);
  return s;
}

SymplecticData make_symplectic(const ComplexModel& model, const Form& omega) {
  if (model.dim() % 2 != 0)
    fail(ErrorClass::omega_invalid, "symplectic model must have even dimension (got " +
                                        std::to_string(model.dim()) + ")");
  return make_transverse_symplectic(model, omega, mask::full(model.dim()));
}

Form flat(const SymplecticData& s, const Multivector& X) {
  if (X.support() & ~s.active)
    fail(ErrorClass::model_invalid, "flat: multivector has components outside the symplectic index set");
  Form out(s.dim, X.degree());
  for (const auto& [I, c] : X.terms()) {
    Form t = s.flat_table[I];
    t *= c;
    out += t;
  }
  return out;
}

Multivector sharp(const SymplecticData& s, const Form& xi) {
  require_active_support(s, xi, "sharp");
  Multivector out(s.dim, xi.degree());
  for (const auto& [I, c] : xi.terms()) {
    Multivector t = s.sharp_table[I];
    t *= c;
    out += t;
  }
  return out;
}

Form star(const SymplecticData& s, const Form& xi) {
  require_active_support(s, xi, "star");
  return contract(sharp(s, xi), s.volume);
}

Form codifferential(const ComplexModel& model, const SymplecticData& s, const Form& xi) {
  int k = xi.degree();
  Form out = star(s, model.differential(star(s, xi)));
  if (k & 1) out *= Rational(-1);
  return out;
}

Form op_Y(const SymplecticData& s, const Form& xi) { return wedge(s.omega, xi); }

Form op_X(const SymplecticData& s, const Form& xi) { return star(s, op_Y(s, star(s, xi))); }

Form op_H(const SymplecticData& s, const Form& xi) {
  Form out = xi;
  out *= Rational(s.n - xi.degree());
  return out;
}

bool primitive_test(const SymplecticData& s, const Form& xi) { return op_X(s, xi).is_zero(); }

std::vector<Form> lefschetz_decompose(const SymplecticData& s, const Form& xi) {
  require_active_support(s, xi, "lefschetz_decompose");
  int j = xi.degree();
  int rmax = j / 2;
  auto masks_j = mask::degree_basis(s.dim, j, s.active);

  // Columns: Y^r applied to a primitive basis of degree j - 2r, all r.
  std::vector<Form> primitive_of_col;
  std::vector<int> r_of_col;
  QMatrix cols(static_cast<int>(masks_j.size()), 0);
  std::vector<std::vector<Rational>> col_data;
  for (int r = 0; r <= rmax; ++r) {
    int deg = j - 2 * r;
    auto masks_deg = mask::degree_basis(s.dim, deg, s.active);
    auto masks_out = mask::degree_basis(s.dim, deg - 2, s.active);
    QMatrix X = op_matrix(monomials(s.dim, deg, s.active), masks_out,
                          [&](const Form& f) { return op_X(s, f); });
    QMatrix P = X.kernel();
    for (int c = 0; c < P.cols(); ++c) {
      Form p(s.dim, deg);
      for (std::size_t i = 0; i < masks_deg.size(); ++i) p.add_term(masks_deg[i], P.at(static_cast<int>(i), c));
      Form img = p;
      for (int t = 0; t < r; ++t) img = op_Y(s, img);
      std::vector<Rational> col(masks_j.size(), Rational(0));
      for (std::size_t i = 0; i < masks_j.size(); ++i) col[i] = img.coeff(masks_j[i]);
      col_data.push_back(std::move(col));
      primitive_of_col.push_back(std::move(p));
      r_of_col.push_back(r);
    }
  }
  QMatrix A(static_cast<int>(masks_j.size()), static_cast<int>(col_data.size()));
  for (std::size_t c = 0; c < col_data.size(); ++c) A.set_column(static_cast<int>(c), col_data[c]);
  std::vector<Rational> rhs(masks_j.size(), Rational(0));
  for (std::size_t i = 0; i < masks_j.size(); ++i) rhs[i] = xi.coeff(masks_j[i]);
  auto sol = A.solve(rhs);
  if (!sol) fail(ErrorClass::internal, "lefschetz decomposition has no solution");

  std::vector<Form> parts;
  for (int r = 0; r <= rmax; ++r) parts.push_back(Form::zero(s.dim, j - 2 * r));
  for (std::size_t c = 0; c < col_data.size(); ++c) {
    if (is_zero((*sol)[c])) continue;
    Form t = primitive_of_col[c];
    t *= (*sol)[c];
    parts[r_of_col[c]] += t;
  }
  return parts;
}

// Harmonic vectors inside the span of the given degree-k forms.
static std::vector<Form> harmonic_in_span(const ComplexModel& model, const SymplecticData& s, int k,
                                          const std::vector<Form>& span) {
  if (span.empty()) return {};
  auto masks_up = mask::degree_basis(s.dim, k + 1);  // d may leave the active set; track the full space
  auto masks_dn = mask::degree_basis(s.dim, k - 1, s.active);
  QMatrix D = op_matrix(span, masks_up, [&](const Form& f) { return model.differential(f); });
  QMatrix Dl = op_matrix(span, masks_dn, [&](const Form& f) { return codifferential(model, s, f); });
  QMatrix K = QMatrix::vstack(D, Dl).kernel();
  std::vector<Form> out;
  for (int c = 0; c < K.cols(); ++c) {
    Form f(s.dim, k);
    for (std::size_t i = 0; i < span.size(); ++i) {
      Form t = span[i];
      t *= K.at(static_cast<int>(i), c);
      f += t;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Form> harmonic_basis(const ComplexModel& model, const SymplecticData& s, int k) {
  return harmonic_in_span(model, s, k, monomials(s.dim, k, s.active));
}

IdentityReport check_operator_identities(const ComplexModel& model, const SymplecticData& s) {
  std::vector<std::vector<Form>> bases;
  for (int k = 0; k <= mask::degree(s.active); ++k) {
    std::vector<Form> b;
    for (Mask I : mask::degree_basis(s.dim, k, s.active)) b.push_back(Form::unit_basis(s.dim, I));
    bases.push_back(std::move(b));
  }
  return check_operator_identities(model, s, bases);
}

IdentityReport check_operator_identities(const ComplexModel& model, const SymplecticData& s,
                                         const std::vector<std::vector<Form>>& bases) {
  IdentityReport rep;
  auto d = [&](const Form& f) { return model.differential(f); };
  auto dl = [&](const Form& f) { return codifferential(model, s, f); };
  auto X = [&](const Form& f) { return op_X(s, f); };
  auto Y = [&](const Form& f) { return op_Y(s, f); };
  auto H = [&](const Form& f) { return op_H(s, f); };

  struct Item {
    const char* name;
    std::function<bool(const Form&)> holds;
  };
  const std::vector<Item> items = {
      {"star2_id", [&](const Form& f) { return star(s, star(s, f)) == f; }},
      {"sl2_XY_H", [&](const Form& f) { return X(Y(f)) - Y(X(f)) == H(f); }},
      {"sl2_HX_2X",
       [&](const Form& f) {
         Form two_x = X(f);
         two_x *= Rational(2);
         return H(X(f)) - X(H(f)) == two_x;
       }},
      {"sl2_HY_m2Y",
       [&](const Form& f) {
         Form m2y = Y(f);
         m2y *= Rational(-2);
         return H(Y(f)) - Y(H(f)) == m2y;
       }},
      {"comm_Yd_zero", [&](const Form& f) { return Y(d(f)) == d(Y(f)); }},
      {"comm_Xdelta_zero", [&](const Form& f) { return X(dl(f)) == dl(X(f)); }},
      {"comm_Xd_minus_delta", [&](const Form& f) { return X(d(f)) - d(X(f)) == -dl(f); }},
      {"comm_Ydelta_minus_d", [&](const Form& f) { return Y(dl(f)) - dl(Y(f)) == -d(f); }},
      {"comm_Hd_minus_d", [&](const Form& f) { return H(d(f)) - d(H(f)) == -d(f); }},
      {"comm_Hdelta_delta", [&](const Form& f) { return H(dl(f)) - dl(H(f)) == dl(f); }},
      {"delta_squared_zero", [&](const Form& f) { return dl(dl(f)).is_zero(); }},
  };
  for (const auto& item : items) {
    IdentityCheck chk{item.name, true, ""};
    for (const auto& degree_basis : bases) {
      for (const Form& f : degree_basis) {
        if (!item.holds(f)) {
          chk.pass = false;
          chk.counterexample = to_string(f);
          break;
        }
      }
      if (!chk.pass) break;
    }
    rep.all_pass = rep.all_pass && chk.pass;
    rep.checks.push_back(std::move(chk));
  }

  // X, Y, H map ker d intersect ker delta into itself.
  IdentityCheck closure{"harmonic_space_closed_under_sl2", true, ""};
  for (std::size_t k = 0; k < bases.size() && closure.pass; ++k) {
    for (const Form& h : harmonic_in_span(model, s, static_cast<int>(k), bases[k])) {
      for (const Form& img : {X(h), Y(h), H(h)}) {
        if (!d(img).is_zero() || !dl(img).is_zero()) {
          closure.pass = false;
          closure.counterexample = to_string(h);
          break;
        }
      }
      if (!closure.pass) break;
    }
  }
  rep.all_pass = rep.all_pass && closure.pass;
  rep.checks.push_back(std::move(closure));
  return rep;
}

}  // namespace shl
