#include <doctest.h>

#include "shl/lefschetz.hpp"
#include "test_util.hpp"

using namespace shl;

namespace {

SymplecticComplex make_S(const std::string& name) {
  ModelFile mf = test::fixture(name);
  ComplexModel* model = new ComplexModel(build_model(mf));  // keep alive for the test binary
  SymplecticData s = make_symplectic(*model, *mf.omega);
  return SymplecticComplex::full(*model, s);
}

Form e(int m, std::initializer_list<int> idx) {
  return Form::unit_basis(m, mask::from_indices(std::vector<int>(idx)));
}

Form random_closed(const SymplecticComplex& S, int degree) {
  // harmonic representative plus an exact perturbation
  Form f(S.model().dim(), degree);
  for (const Form& h : S.harmonic(degree)) {
    Form t = h;
    t *= test::random_rational();
    f += t;
  }
  if (degree >= 1) f += S.model().differential(test::random_form(S.model().dim(), degree - 1, 0.5));
  return f;
}

}  // namespace

TEST_CASE("L^0 is the identity") {
  for (auto* name : {"torus4", "kodaira_thurston"}) {
    SymplecticComplex S = make_S(name);
    LefschetzPower L0 = lefschetz_power(S, 0);
    CHECK(L0.matrix.is_identity());
  }
}

TEST_CASE("torus4: L^1 invertible; KT: L^1 deficient") {
  SymplecticComplex t4 = make_S("torus4");
  LefschetzPower L1 = lefschetz_power(t4, 1);
  CHECK(L1.dim_source == 4);
  CHECK(L1.dim_target == 4);
  CHECK(L1.rank == 4);
  CHECK(L1.surjective);

  SymplecticComplex kt = make_S("kodaira_thurston");
  LefschetzPower K1 = lefschetz_power(kt, 1);
  CHECK(K1.dim_source == 3);
  CHECK(K1.dim_target == 3);
  CHECK(K1.rank == 2);
  CHECK_FALSE(K1.surjective);
  LefschetzPower K2 = lefschetz_power(kt, 2);
  CHECK(K2.surjective);
}

TEST_CASE("representability per degree") {
  SymplecticComplex kt = make_S("kodaira_thurston");
  CHECK(harmonic_representability(kt, 0));
  CHECK(harmonic_representability(kt, 1));
  CHECK(harmonic_representability(kt, 4));
  bool both_middle = harmonic_representability(kt, 2) && harmonic_representability(kt, 3);
  CHECK_FALSE(both_middle);  // at least one middle degree fails

  SymplecticComplex t4 = make_S("torus4");
  for (int j = 0; j <= 4; ++j) CHECK(harmonic_representability(t4, j));
}

TEST_CASE("equivalence check: both sides computed independently and agreeing") {
  LefschetzReport t4 = mathieu_equivalence_check(make_S("torus4"));
  CHECK(t4.all_representable);
  CHECK(t4.all_surjective);
  CHECK(t4.verdict() == "TRUE/TRUE");

  LefschetzReport t6 = mathieu_equivalence_check(make_S("torus6"));
  CHECK(t6.verdict() == "TRUE/TRUE");

  LefschetzReport kt = mathieu_equivalence_check(make_S("kodaira_thurston"));
  CHECK_FALSE(kt.all_representable);
  CHECK_FALSE(kt.all_surjective);
  CHECK(kt.verdict() == "FALSE/FALSE");
  CHECK(kt.failing_powers() == std::vector<int>{1});
  CHECK(kt.betti == std::vector<int>{1, 3, 4, 3, 1});
}

TEST_CASE("diagram commutativity: class(omega^k ^ h) = L^k class(h) for harmonic h") {
  for (auto* name : {"torus4", "torus6", "kodaira_thurston"}) {
    SymplecticComplex S = make_S(name);
    int n = S.n();
    for (int k = 0; k <= n; ++k) {
      LefschetzPower L = lefschetz_power(S, k);
      for (const Form& h : S.harmonic(n - k)) {
        Form img = h;
        for (int t = 0; t < k; ++t) img = op_Y(S.symp(), img);
        auto lhs = S.class_coords(n + k, img);
        auto src = S.class_coords(n - k, h);
        REQUIRE(lhs.has_value());
        REQUIRE(src.has_value());
        CHECK(*lhs == L.matrix.apply(*src));
      }
    }
  }
}

TEST_CASE("harmonize: base cases return the input unchanged") {
  SymplecticComplex t4 = make_S("torus4");
  Form one = Form::scalar(4, Rational(7));
  CHECK(harmonize(t4, one) == one);
  Form e1 = e(4, {1});
  CHECK(harmonize(t4, e1) == e1);
}

TEST_CASE("harmonize on torus6: postconditions hold exactly") {
  SymplecticComplex S = make_S("torus6");
  const ComplexModel& model = S.model();
  for (int degree = 0; degree <= 6; ++degree) {
    for (int iter = 0; iter < 8; ++iter) {
      Form xi = random_closed(S, degree);
      Form out = harmonize(S, xi);
      CHECK(model.differential(out).is_zero());
      CHECK(codifferential(model, S.symp(), out).is_zero());
      auto ci = S.class_coords(degree, xi);
      auto co = out.is_zero() ? S.class_coords(degree, Form::zero(6, degree)) : S.class_coords(degree, out);
      REQUIRE(ci.has_value());
      REQUIRE(co.has_value());
      CHECK(*ci == *co);
    }
  }
}

TEST_CASE("harmonize on KT: allowed degrees produce certified output") {
  SymplecticComplex S = make_S("kodaira_thurston");
  const ComplexModel& model = S.model();
  // Degree 2 is reachable (needs only L^2); inputs may have nonzero d-exact parts.
  for (int iter = 0; iter < 25; ++iter) {
    Form xi = random_closed(S, 2);
    REQUIRE(model.differential(xi).is_zero());
    Form out = harmonize(S, xi);
    CHECK(model.differential(out).is_zero());
    CHECK(codifferential(model, S.symp(), out).is_zero());
    auto ci = S.class_coords(2, xi);
    auto co = S.class_coords(2, out);
    CHECK(*ci == *co);
  }
  // Degree 4 goes through the above-middle branch with L^2.
  Form top = random_closed(S, 4);
  Form out4 = harmonize(S, top);
  CHECK(model.differential(out4).is_zero());
  CHECK(codifferential(model, S.symp(), out4).is_zero());
  CHECK(*S.class_coords(4, top) == *S.class_coords(4, out4));
}

TEST_CASE("harmonize on KT: blocked degree raises the hypothesis error, never a wrong form") {
  SymplecticComplex S = make_S("kodaira_thurston");
  CHECK(harmonize_required_powers(S, 3) == std::vector<int>{1});
  Form closed3 = e(4, {1, 2, 3});  // d vanishes on all 3-forms here
  REQUIRE(S.model().differential(closed3).is_zero());
  CHECK_THROWS_AS((void)harmonize(S, closed3), HypothesisViolated);
  try {
    (void)harmonize(S, closed3);
  } catch (const HypothesisViolated& e) {
    CHECK(e.k() == 1);
    CHECK(std::string(e.what()).find("k=1") != std::string::npos);
  }
}

TEST_CASE("harmonize rejects non-closed input") {
  SymplecticComplex S = make_S("kodaira_thurston");
  Form e4 = e(4, {4});
  REQUIRE_FALSE(S.model().differential(e4).is_zero());
  CHECK_THROWS_AS((void)harmonize(S, e4), Error);
  try {
    (void)harmonize(S, e4);
  } catch (const Error& err) {
    CHECK(err.cls() == ErrorClass::not_closed);
  }
}

TEST_CASE("harmonize of an already harmonic form is harmonic and cohomologous") {
  SymplecticComplex S = make_S("torus6");
  for (int degree : {2, 3, 4}) {
    for (const Form& h : S.harmonic(degree)) {
      Form out = harmonize(S, h);
      CHECK(S.model().differential(out).is_zero());
      CHECK(codifferential(S.model(), S.symp(), out).is_zero());
      CHECK(*S.class_coords(degree, out) == *S.class_coords(degree, h));
    }
  }
}

TEST_CASE("required powers bookkeeping") {
  SymplecticComplex t6 = make_S("torus6");
  CHECK(harmonize_required_powers(t6, 0).empty());
  CHECK(harmonize_required_powers(t6, 1).empty());
  CHECK(harmonize_required_powers(t6, 2) == std::vector<int>{3});
  CHECK(harmonize_required_powers(t6, 3) == std::vector<int>{2});
  CHECK(harmonize_required_powers(t6, 4) == std::vector<int>{1, 3});
  CHECK(harmonize_required_powers(t6, 5) == std::vector<int>{2});
  CHECK(harmonize_required_powers(t6, 6) == std::vector<int>{3});
}
