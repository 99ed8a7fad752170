#include "shl/lefschetz.hpp"

#include <algorithm>
#include <sstream>

namespace shl {

namespace {

QMatrix operator_matrix(const Subcomplex& sub, int k_in, int k_out,
                        const std::function<Form(const Form&)>& op, const char* what) {
  QMatrix M(sub.dim(k_out), sub.dim(k_in));
  for (int c = 0; c < sub.dim(k_in); ++c) {
    Form img = op(sub.basis(k_in)[c]);
    auto coords = sub.coords(k_out, img);
    if (!coords)
      fail(ErrorClass::internal,
           std::string(what) + " leaves the subcomplex at degree " + std::to_string(k_in));
    M.set_column(c, *coords);
  }
  return M;
}

}  // namespace

SymplecticComplex::SymplecticComplex(const ComplexModel& model, SymplecticData symp, Subcomplex sub)
    : model_(&model), symp_(std::move(symp)), sub_(std::move(sub)) {
  int t = top();
  for (int k = t + 1; k <= sub_.top(); ++k) {
    if (sub_.dim(k) != 0)
      fail(ErrorClass::internal, "subcomplex has forms above degree 2n; incompatible symplectic data");
  }
  d_.resize(t + 1);
  delta_.resize(t + 1);
  y_.resize(t + 1);
  for (int k = 0; k <= t; ++k) {
    d_[k] = operator_matrix(sub_, k, std::min(k + 1, sub_.top()), [&](const Form& f) { return model.differential(f); },
                            "differential");
    delta_[k] = operator_matrix(sub_, k, std::max(k - 1, 0),
                                [&](const Form& f) { return codifferential(model, symp_, f); },
                                "codifferential");
    y_[k] = operator_matrix(sub_, k, std::min(k + 2, sub_.top()), [&](const Form& f) { return op_Y(symp_, f); },
                            "wedge with omega");
  }
  coh_.reserve(t + 1);
  harmonic_.reserve(t + 1);
  for (int k = 0; k <= t; ++k) {
    coh_.push_back(cohomology(sub_, k));
    // Harmonic basis inside the subcomplex: kernel of stacked d, delta.
    QMatrix K = QMatrix::vstack(d_[k], delta_[k]).kernel();
    std::vector<Form> hk;
    for (int c = 0; c < K.cols(); ++c) hk.push_back(sub_.from_coords(k, K.column(c)));
    harmonic_.push_back(std::move(hk));
  }
}

SymplecticComplex SymplecticComplex::full(const ComplexModel& model, const SymplecticData& symp) {
  return SymplecticComplex(model, symp, Subcomplex::full(model));
}

const QMatrix& SymplecticComplex::mat(const std::vector<QMatrix>& v, int k) const {
  static const QMatrix empty;
  if (k < 0 || k >= static_cast<int>(v.size())) return empty;
  return v[k];
}

const CohomologyBasis& SymplecticComplex::coh(int k) const {
  if (k < 0 || k > top()) fail(ErrorClass::internal, "cohomology degree out of range");
  return coh_[k];
}

const std::vector<Form>& SymplecticComplex::harmonic(int k) const {
  static const std::vector<Form> empty;
  if (k < 0 || k > top()) return empty;
  return harmonic_[k];
}

QMatrix SymplecticComplex::y_power(int from_degree, int count) const {
  QMatrix M = QMatrix::identity(sub_.dim(from_degree));
  int deg = from_degree;
  for (int i = 0; i < count; ++i) {
    M = y_mat(deg) * M;
    deg += 2;
  }
  return M;
}

std::optional<std::vector<Rational>> SymplecticComplex::class_coords(int k, const Form& xi) const {
  return coh(k).class_coords(xi);
}

// ---------------------------------------------------------------------------

std::string LefschetzReport::verdict() const {
  auto word = [](bool b) { return b ? std::string("TRUE") : std::string("FALSE"); };
  return word(all_representable) + "/" + word(all_surjective);
}

std::vector<int> LefschetzReport::failing_powers() const {
  std::vector<int> out;
  for (const auto& p : powers)
    if (!p.surjective) out.push_back(p.k);
  return out;
}

LefschetzPower lefschetz_power(const SymplecticComplex& S, int k) {
  int n = S.n();
  if (k < 0 || k > n) fail(ErrorClass::usage, "Lefschetz power k must lie in 0..n");
  const CohomologyBasis& src = S.coh(n - k);
  const CohomologyBasis& dst = S.coh(n + k);
  LefschetzPower P;
  P.k = k;
  P.dim_source = src.dim();
  P.dim_target = dst.dim();
  P.matrix = QMatrix(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    Form img = src.representatives()[c];
    for (int i = 0; i < k; ++i) img = op_Y(S.symp(), img);
    auto coords = dst.class_coords(img);
    if (!coords) fail(ErrorClass::internal, "omega^k ^ (closed form) is not closed");
    P.matrix.set_column(c, *coords);
  }
  P.rank = P.matrix.rank();
  P.surjective = (P.rank == P.dim_target);
  return P;
}

bool harmonic_representability(const SymplecticComplex& S, int j) {
  if (j < 0 || j > S.top()) fail(ErrorClass::usage, "degree out of range");
  const CohomologyBasis& H = S.coh(j);
  if (H.dim() == 0) return true;
  QMatrix M(H.dim(), static_cast<int>(S.harmonic(j).size()));
  for (std::size_t c = 0; c < S.harmonic(j).size(); ++c) {
    auto coords = H.class_coords(S.harmonic(j)[c]);
    if (!coords) fail(ErrorClass::internal, "harmonic form is not closed");
    M.set_column(static_cast<int>(c), *coords);
  }
  return M.rank() == H.dim();
}

namespace {

// A target-space class outside the column span of M, as coordinates.
std::optional<int> uncovered_unit(const QMatrix& M) {
  for (int r = 0; r < M.rows(); ++r) {
    std::vector<Rational> e(M.rows(), Rational(0));
    e[r] = 1;
    if (!M.solve(e)) return r;
  }
  return std::nullopt;
}

}  // namespace

LefschetzReport mathieu_equivalence_check(const SymplecticComplex& S) {
  LefschetzReport rep;
  int n = S.n();
  rep.all_surjective = true;
  rep.all_representable = true;
  for (int k = 0; k <= n; ++k) {
    rep.powers.push_back(lefschetz_power(S, k));
    rep.all_surjective = rep.all_surjective && rep.powers.back().surjective;
  }
  for (int j = 0; j <= S.top(); ++j) {
    bool ok = harmonic_representability(S, j);
    rep.representable.push_back(ok);
    rep.betti.push_back(S.coh(j).dim());
    rep.harmonic_dims.push_back(static_cast<int>(S.harmonic(j).size()));
    rep.all_representable = rep.all_representable && ok;
  }
  if (rep.all_surjective != rep.all_representable) {
    // The equivalence is a theorem; disagreement means a convention or
    // logic bug. Dump a witness for the failing side.
    std::ostringstream os;
    os << "equivalence check disagreement on model '" << S.model().name() << "': "
       << "harmonic representability = " << (rep.all_representable ? "TRUE" : "FALSE")
       << ", hard Lefschetz = " << (rep.all_surjective ? "TRUE" : "FALSE");
    if (!rep.all_surjective) {
      for (const auto& p : rep.powers) {
        if (p.surjective) continue;
        os << "; L^" << p.k << " has rank " << p.rank << " < " << p.dim_target;
        if (auto r = uncovered_unit(p.matrix))
          os << ", class not in image: [" << to_string(S.coh(S.n() + p.k).representatives()[*r]) << "]";
        break;
      }
    }
    for (int j = 0; j <= S.top(); ++j) {
      if (rep.representable[j]) continue;
      os << "; degree " << j << " has classes without harmonic representative";
      break;
    }
    fail(ErrorClass::equivalence_violation, os.str());
  }
  return rep;
}

std::vector<int> harmonize_required_powers(const SymplecticComplex& S, int degree) {
  int n = S.n();
  std::vector<int> out;
  int j = degree;
  if (j > n) {
    out.push_back(j - n);
    j = 2 * n - j;
  }
  while (j >= 2) {
    out.push_back(n - j + 2);
    j -= 2;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Form harmonize_rec(const SymplecticComplex& S, const Form& xi, int j) {
  // Closed forms of degree 0 or 1 are already harmonic (degree 0 by the
  // degree floor of delta; degree 1 because closed 1-forms are primitive).
  if (j <= 1 || xi.is_zero()) return xi;
  const Subcomplex& sub = S.sub();
  int n = S.n();

  if (j > n) {
    // Pull the class back through the surjective L^k, harmonize below
    // the middle degree, then push forward with omega^k.
    int k = j - n;
    auto cls = S.class_coords(j, xi);
    if (!cls) fail(ErrorClass::internal, "harmonize: lost closedness");
    LefschetzPower L = lefschetz_power(S, k);
    auto pre = L.matrix.solve(*cls);
    if (!pre) fail(ErrorClass::internal, "harmonize: surjectivity hypothesis failed during recursion");
    Form psi(sub.model().dim(), n - k);
    for (int i = 0; i < S.coh(n - k).dim(); ++i) {
      if (is_zero((*pre)[i])) continue;
      Form t = S.coh(n - k).representatives()[i];
      t *= (*pre)[i];
      psi += t;
    }
    Form psi_bar = harmonize_rec(S, psi, n - k);
    Form out = psi_bar;
    for (int i = 0; i < k; ++i) out = op_Y(S.symp(), out);
    // [omega^k ^ psi_bar] = L^k [psi] = [xi]; but xi itself need not equal it,
    // so append the exact correction to stay cohomologous on the nose.
    Form diff = xi - out;
    auto lambda = solve_d(sub, diff);
    if (!lambda) fail(ErrorClass::internal, "harmonize: representative drift is not exact");
    return out;
  }

  int k = n - j;
  // (a) one joint linear solve for closed eta (degree j-2) and theta
  // (degree n+k+1) with omega^{k+2} ^ eta + d theta = omega^{k+1} ^ xi.
  int deg_eta = j - 2;
  int deg_theta = n + k + 1;
  auto xi_coords = sub.coords_or_fail(j, xi, "harmonize");
  QMatrix Yk1 = S.y_power(j, k + 1);
  std::vector<Rational> rhs = Yk1.apply(xi_coords);  // degree n+k+2
  QMatrix Yk2 = S.y_power(deg_eta, k + 2);           // eta columns
  const QMatrix& Dtheta = S.d_mat(deg_theta);
  const QMatrix& Deta = S.d_mat(deg_eta);

  QMatrix top = QMatrix::hstack(Yk2, Dtheta);
  QMatrix bottom = QMatrix::hstack(Deta, QMatrix(Deta.rows(), Dtheta.cols()));
  QMatrix A = QMatrix::vstack(top, bottom);
  std::vector<Rational> b = rhs;
  b.resize(rhs.size() + Deta.rows(), Rational(0));
  auto sol = A.solve(b);
  if (!sol) fail(ErrorClass::internal, "harmonize: step (a) system is inconsistent");
  std::vector<Rational> eta_coords(sol->begin(), sol->begin() + sub.dim(deg_eta));
  std::vector<Rational> theta_coords(sol->begin() + sub.dim(deg_eta), sol->end());
  Form eta = sub.from_coords(deg_eta, eta_coords);
  Form theta = sub.from_coords(deg_theta, theta_coords);

  // (b) harmonize eta recursively and peel off the exact discrepancy.
  Form eta_bar = harmonize_rec(S, eta, deg_eta);
  Form lambda(sub.model().dim(), std::max(deg_eta - 1, 0));
  if (!(eta == eta_bar)) {
    auto l = solve_d(sub, eta - eta_bar);
    if (!l) fail(ErrorClass::internal, "harmonize: eta - eta_bar is not exact");
    lambda = *l;
  }

  // (c) zeta with omega^{k+1} ^ zeta = theta; Y^{k+1} is invertible from
  // degree j-1 = n-(k+1) to degree n+k+1.
  QMatrix Yz = S.y_power(j - 1, k + 1);
  auto zeta_coords = Yz.solve(theta_coords);
  if (!zeta_coords) fail(ErrorClass::internal, "harmonize: Y^{k+1} failed to reach theta");
  Form zeta = sub.from_coords(j - 1, *zeta_coords);

  // (d) xi_bar = xi - d(zeta + omega ^ lambda).
  Form correction = zeta + op_Y(S.symp(), lambda);
  return xi - S.model().differential(correction);
}

}  // namespace

Form harmonize(const SymplecticComplex& S, const Form& xi) {
  int j = xi.degree();
  if (xi.is_zero()) return xi;
  if (j < 0 || j > S.top()) fail(ErrorClass::usage, "harmonize: degree out of range");
  if (!S.sub().contains(j, xi))
    fail(ErrorClass::usage, "harmonize: form does not belong to the subcomplex");
  if (!S.model().differential(xi).is_zero())
    fail(ErrorClass::not_closed, "harmonize: input is not closed (d xi != 0)");
  for (int k : harmonize_required_powers(S, j)) {
    LefschetzPower L = lefschetz_power(S, k);
    if (!L.surjective) {
      std::ostringstream os;
      os << "hypothesis violated at k=" << k << ": L^" << k << " : H^" << (S.n() - k) << " -> H^"
         << (S.n() + k) << " has rank " << L.rank << " < " << L.dim_target;
      throw HypothesisViolated(k, os.str());
    }
  }
  return harmonize_rec(S, xi, j);
}

}  // namespace shl
