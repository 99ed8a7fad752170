#include <doctest.h>

#include "shl/complex.hpp"
#include "test_util.hpp"

using namespace shl;

namespace {

ComplexModel abelian(int m) { return ComplexModel(m, {}, "abelian"); }

ComplexModel kt() {
  return ComplexModel(4, {{1, 2, 4, Rational(1)}}, "kodaira_thurston");
}

Form e(int m, std::initializer_list<int> idx) {
  return Form::unit_basis(m, mask::from_indices(std::vector<int>(idx)));
}

}  // namespace

TEST_CASE("differential on abelian models vanishes") {
  ComplexModel model = abelian(4);
  for (int k = 0; k <= 4; ++k)
    for (Mask I : mask::degree_basis(4, k))
      CHECK(model.differential(Form::unit_basis(4, I)).is_zero());
}

TEST_CASE("Kodaira-Thurston differential and Leibniz expansion") {
  ComplexModel model = kt();
  CHECK(model.differential(e(4, {4})) == -e(4, {1, 2}));
  CHECK(model.differential(e(4, {1})).is_zero());
  // d(e4 ^ e3) = d e4 ^ e3 = -e12 ^ e3 = -e123
  Form e43 = wedge(e(4, {4}), e(4, {3}));
  CHECK(model.differential(e43) == -e(4, {1, 2, 3}));
}

TEST_CASE("differential satisfies the Leibniz rule on random forms") {
  ComplexModel model = kt();
  for (int iter = 0; iter < 20; ++iter) {
    Form a = test::random_form(4, 1);
    Form b = test::random_form(4, 2);
    Form lhs = model.differential(wedge(a, b));
    Form rhs = wedge(model.differential(a), b) - wedge(a, model.differential(b));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("validation accepts the catalog algebras and rejects a Jacobi breaker") {
  CHECK(abelian(4).validate().valid);
  CHECK(kt().validate().valid);
  // [x1,x2] = x3, [x3,x4] = x1 violates Jacobi.
  ComplexModel bad(4, {{1, 2, 3, Rational(1)}, {3, 4, 1, Rational(1)}}, "broken");
  auto v = bad.validate();
  CHECK_FALSE(v.valid);
  REQUIRE_FALSE(v.violations.empty());
  CHECK(v.violations[0].find("generator") != std::string::npos);
  CHECK_THROWS_AS(bad.require_valid(), Error);
}

TEST_CASE("bracket normalization and duplicate rejection") {
  // (j,i) entries fold into (i,j) with a sign flip.
  ComplexModel a(3, {{2, 1, 3, Rational(-1)}});
  CHECK(a.differential(e(3, {3})) == -e(3, {1, 2}));
  CHECK_THROWS_AS(ComplexModel(3, {{1, 2, 3, Rational(1)}, {2, 1, 3, Rational(1)}}), Error);
  CHECK_THROWS_AS(ComplexModel(3, {{1, 1, 2, Rational(1)}}), Error);
}

TEST_CASE("cohomology dimensions") {
  ComplexModel ab = abelian(4);
  Subcomplex full_ab = Subcomplex::full(ab);
  CHECK(cohomology(full_ab, 1).dim() == 4);

  ComplexModel m = kt();
  Subcomplex full = Subcomplex::full(m);

  // Independent route for H^1: enumerate the four 1-form generators.
  int closed = 0;
  for (Mask I : mask::degree_basis(4, 1))
    if (m.differential(Form::unit_basis(4, I)).is_zero()) ++closed;
  CHECK(closed == 3);

  CohomologyBasis H1 = cohomology(full, 1);
  CHECK(H1.dim() == 3);
  REQUIRE(H1.representatives().size() == 3);
  CHECK(H1.representatives()[0] == e(4, {1}));
  CHECK(H1.representatives()[1] == e(4, {2}));
  CHECK(H1.representatives()[2] == e(4, {3}));

  std::vector<int> betti;
  for (int k = 0; k <= 4; ++k) betti.push_back(cohomology(full, k).dim());
  CHECK(betti == std::vector<int>{1, 3, 4, 3, 1});

  // Top degree is at most one-dimensional.
  CHECK(cohomology(full, 4).dim() <= 1);
}

TEST_CASE("Euler characteristic bookkeeping") {
  for (auto* name : {"torus4", "torus6", "kodaira_thurston", "heis_r2", "solv5"}) {
    ModelFile mf = test::fixture(name);
    ComplexModel model = build_model(mf);
    Subcomplex full = Subcomplex::full(model);
    long chi_forms = 0, chi_coh = 0;
    for (int k = 0; k <= model.dim(); ++k) {
      long sgn = (k % 2 == 0) ? 1 : -1;
      chi_forms += sgn * full.dim(k);
      chi_coh += sgn * cohomology(full, k).dim();
    }
    CHECK(chi_forms == chi_coh);
  }
}

TEST_CASE("class_coords basics and gauge invariance") {
  ComplexModel m = kt();
  Subcomplex full = Subcomplex::full(m);
  CohomologyBasis H2 = cohomology(full, 2);

  // d eta has zero class.
  Form eta = test::random_form(4, 1);
  auto z = H2.class_coords(m.differential(eta));
  REQUIRE(z.has_value());
  CHECK(vec_is_zero(*z));

  // The first representative has unit coordinates.
  auto u = H2.class_coords(H2.representatives()[0]);
  REQUIRE(u.has_value());
  CHECK((*u)[0] == Rational(1));
  for (std::size_t i = 1; i < u->size(); ++i) CHECK((*u)[i] == Rational(0));

  // Adding any exact form leaves the coordinates unchanged.
  CohomologyBasis H1 = cohomology(full, 1);
  for (int iter = 0; iter < 10; ++iter) {
    Form base = e(4, {1});
    Form shifted = base + m.differential(Form::scalar(4, test::random_rational()));
    auto c0 = H1.class_coords(base);
    auto c1 = H1.class_coords(shifted);
    REQUIRE(c0.has_value());
    REQUIRE(c1.has_value());
    CHECK(*c0 == *c1);
  }
  for (int iter = 0; iter < 10; ++iter) {
    Form closed = test::random_form(4, 2);
    if (!m.differential(closed).is_zero()) continue;
    Form shifted = closed + m.differential(test::random_form(4, 1));
    CHECK(*H2.class_coords(closed) == *H2.class_coords(shifted));
  }

  // Not-closed forms are signalled, not coerced.
  CHECK_FALSE(H1.class_coords(e(4, {4})).has_value());
}

TEST_CASE("solve_d") {
  ComplexModel m = kt();
  Subcomplex full = Subcomplex::full(m);

  auto zero = solve_d(full, Form::zero(4, 2));
  REQUIRE(zero.has_value());
  CHECK(zero->is_zero());

  Form target = -e(4, {1, 2});
  auto theta = solve_d(full, target);
  REQUIRE(theta.has_value());
  CHECK(m.differential(*theta) == target);
  auto theta2 = solve_d(full, target);
  CHECK(*theta == *theta2);  // deterministic

  ComplexModel ab = abelian(4);
  Subcomplex full_ab = Subcomplex::full(ab);
  CHECK_FALSE(solve_d(full_ab, e(4, {1})).has_value());
}

TEST_CASE("solve_d composed with the differential reproduces targets") {
  ComplexModel m = kt();
  Subcomplex full = Subcomplex::full(m);
  for (int iter = 0; iter < 25; ++iter) {
    int k = 1 + iter % 3;
    Form eta = test::random_form(4, k);
    Form target = m.differential(eta);
    auto theta = solve_d(full, target);
    REQUIRE(theta.has_value());
    CHECK(m.differential(*theta) == target);
  }
}
