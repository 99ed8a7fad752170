#include <doctest.h>

#include "shl/foliated.hpp"
#include "test_util.hpp"

using namespace shl;

namespace {

Form e(int m, std::initializer_list<int> idx) {
  return Form::unit_basis(m, mask::from_indices(std::vector<int>(idx)));
}

struct Fixture {
  ComplexModel model;
  FoliationBlock fol;
  SymplecticData st;
};

Fixture load_foliated(const std::string& name) {
  ModelFile mf = test::fixture(name);
  ComplexModel model = build_model(mf);
  FoliationBlock fol = make_foliation(model, *mf.foliation);
  SymplecticData st = transverse_symplectic(model, fol, *mf.omega);
  return {std::move(model), std::move(fol), std::move(st)};
}

FoliationSpec identity_spec(int m, std::vector<int> leaf) {
  return {std::move(leaf), QMatrix::identity(m), 1};
}

std::vector<Form> basic_monomials(const Fixture& fx, int k) {
  std::vector<Form> out;
  for (Mask I : mask::degree_basis(fx.model.dim(), k, fx.fol.transverse))
    out.push_back(Form::unit_basis(fx.model.dim(), I));
  return out;
}

}  // namespace

TEST_CASE("make_foliation validation") {
  ComplexModel ab5(5, {}, "ab5");
  CHECK_NOTHROW((void)make_foliation(ab5, identity_spec(5, {5})));
  // odd codimension
  CHECK_THROWS_AS((void)make_foliation(ab5, identity_spec(5, {4, 5})), Error);
  // repeated index
  CHECK_THROWS_AS((void)make_foliation(ab5, identity_spec(5, {5, 5})), Error);
  // leaf not a subalgebra: [x4,x5] = x1 with h = span(x4,x5)
  ComplexModel bad(6, {{4, 5, 1, Rational(1)}}, "bad");
  CHECK_THROWS_AS((void)make_foliation(bad, identity_spec(6, {4, 5})), Error);
  // metric must be block diagonal, symmetric, positive definite
  FoliationSpec off = identity_spec(5, {5});
  off.metric.at(0, 4) = 1;
  off.metric.at(4, 0) = 1;
  CHECK_THROWS_AS((void)make_foliation(ab5, off), Error);
  FoliationSpec neg = identity_spec(5, {5});
  neg.metric.at(0, 0) = -1;
  CHECK_THROWS_AS((void)make_foliation(ab5, neg), Error);
  // leaf metric determinant must be a rational square
  FoliationSpec nosqrt = identity_spec(5, {5});
  nosqrt.metric.at(4, 4) = 2;
  CHECK_THROWS_AS((void)make_foliation(ab5, nosqrt), Error);
  FoliationSpec sq = identity_spec(5, {5});
  sq.metric.at(4, 4) = 4;
  FoliationBlock fol = make_foliation(ab5, sq);
  CHECK(fol.chi_scale == Rational(2));
  CHECK(fol.chi == Rational(2) * e(5, {5}));
}

TEST_CASE("basic complex of the catalog foliations") {
  Fixture heis = load_foliated("heis_r2");
  Subcomplex basic = basic_complex(heis.model, heis.fol);
  CHECK(basic.dim(1) == 4);
  for (auto idx : {1, 2, 4, 5}) CHECK(basic.contains(1, e(5, {idx})));
  CHECK_FALSE(basic.contains(1, e(5, {3})));
  // basic forms avoid the leaf index entirely here, so dims match Lambda(D)
  CHECK(basic.dim(2) == 6);
  CHECK(basic.dim(4) == 1);

  ComplexModel ab5(5, {}, "ab5");
  FoliationBlock fol5 = make_foliation(ab5, identity_spec(5, {5}));
  Subcomplex b5 = basic_complex(ab5, fol5);
  for (int k = 0; k <= 4; ++k)
    CHECK(b5.dim(k) == static_cast<int>(mask::degree_basis(5, k, fol5.transverse).size()));
}

TEST_CASE("product model: basic complex matches the transverse factor") {
  // [x1,x2] = x3 on indices 1..4 with an inert leaf direction 5
  ComplexModel prod(5, {{1, 2, 3, Rational(1)}}, "product");
  FoliationBlock fol = make_foliation(prod, identity_spec(5, {5}));
  Subcomplex basic = basic_complex(prod, fol);

  ComplexModel factor(4, {{1, 2, 3, Rational(1)}}, "factor");
  Subcomplex full = Subcomplex::full(factor);

  for (int k = 0; k <= 4; ++k) {
    CHECK(basic.dim(k) == full.dim(k));
    CHECK(cohomology(basic, k).dim() == cohomology(full, k).dim());
  }
  // The embedding is index-preserving: differentials agree on monomials.
  for (int k = 0; k <= 4; ++k) {
    for (Mask I : mask::degree_basis(4, k)) {
      Form df4 = factor.differential(Form::unit_basis(4, I));
      Form df5 = prod.differential(Form::unit_basis(5, I));
      CHECK(to_string(df4) == to_string(df5));
    }
  }

  // Lemma-style commutation: star_t on the product equals the plain
  // symplectic star of the factor under the same labels.
  Form omega4 = parse_form(4, "e{1,3} + e{2,4}");
  Form omega5 = parse_form(5, "e{1,3} + e{2,4}");
  SymplecticData s4 = make_symplectic(factor, omega4);
  SymplecticData s5 = transverse_symplectic(prod, fol, omega5);
  for (int k = 0; k <= 4; ++k) {
    for (Mask I : mask::degree_basis(4, k)) {
      Form lhs = star_t(prod, fol, s5, Form::unit_basis(5, I));
      Form rhs = star(s4, Form::unit_basis(4, I));
      CHECK(to_string(lhs) == to_string(rhs));
    }
  }
}

TEST_CASE("bigrading") {
  Fixture solv = load_foliated("solv5");
  Form mixed = e(5, {1, 5});  // transverse 1, leaf 5
  auto comps = bigrade(solv.fol, mixed);
  REQUIRE(comps.size() == 1);
  CHECK(comps.begin()->first == Bidegree{1, 1});

  CHECK(bigrade(solv.fol, solv.fol.chi).begin()->first == Bidegree{1, 0});

  // basic forms are pure type (0, k)
  for (int k = 0; k <= solv.fol.codim; ++k)
    for (Mask I : mask::degree_basis(5, k, solv.fol.transverse)) {
      auto c = bigrade(solv.fol, Form::unit_basis(5, I));
      REQUIRE(c.size() == 1);
      CHECK(c.begin()->first == Bidegree{0, k});
    }

  for (int iter = 0; iter < 10; ++iter) {
    Form f = test::random_form(5, 2);
    Form sum(5, 2);
    for (const auto& [bd, comp] : bigrade(solv.fol, f)) sum += comp;
    CHECK(sum == f);
  }

  // A (r,s) component dies under r+1 leafwise or s+1 transverse contractions.
  Form comp = bigrade_component(solv.fol, e(5, {1, 2}) + e(5, {1, 5}), 1, 1);
  CHECK(comp == e(5, {1, 5}));
  Multivector leaf2 = wedge(Multivector::unit_basis(5, mask::bit(5)),
                            Multivector::unit_basis(5, mask::bit(5)));
  CHECK(leaf2.is_zero());  // only one leaf direction here, so r+1 = 2 contractions vanish trivially
}

TEST_CASE("d-split on the catalog fixtures") {
  ComplexModel ab6(6, {}, "ab6");
  FoliationBlock fol6 = make_foliation(ab6, identity_spec(6, {5, 6}));
  for (int k = 0; k <= 6; ++k)
    for (Mask I : mask::degree_basis(6, k)) {
      Form f = Form::unit_basis(6, I);
      CHECK(d_component(ab6, fol6, f, 1, 0).is_zero());
      CHECK(d_component(ab6, fol6, f, 0, 1).is_zero());
      CHECK(d_component(ab6, fol6, f, -1, 2).is_zero());
    }

  Fixture heis = load_foliated("heis_r2");
  Form dchi = heis.model.differential(heis.fol.chi);
  CHECK(dchi == -e(5, {1, 2}));
  CHECK(d_component(heis.model, heis.fol, heis.fol.chi, 0, 1).is_zero());
  CHECK(d_component(heis.model, heis.fol, heis.fol.chi, -1, 2) == dchi);
  CHECK(check_d_split(heis.model, heis.fol).residual_free);

  Fixture solv = load_foliated("solv5");
  CHECK(d_component(solv.model, solv.fol, solv.fol.chi, 0, 1) == -e(5, {1, 5}));
  CHECK(d_component(solv.model, solv.fol, solv.fol.chi, -1, 2).is_zero());
  CHECK(check_d_split(solv.model, solv.fol).residual_free);
}

TEST_CASE("mean curvature, tense and minimal flags") {
  ComplexModel ab5(5, {}, "ab5");
  FoliationBlock fol5 = make_foliation(ab5, identity_spec(5, {5}));
  CHECK(mean_curvature(ab5, fol5).is_zero());

  Fixture heis = load_foliated("heis_r2");
  Form kh = mean_curvature(heis.model, heis.fol);
  CHECK(kh.is_zero());
  CHECK(is_minimal(kh));
  CHECK(is_tense(heis.model, heis.fol, kh));

  Fixture solv = load_foliated("solv5");
  Form ks = mean_curvature(solv.model, solv.fol);
  CHECK(ks == -e(5, {1}));
  CHECK_FALSE(is_minimal(ks));
  CHECK(is_tense(solv.model, solv.fol, ks));

  // kappa does not depend on the chi orientation or scale.
  ModelFile mf = test::fixture("solv5");
  FoliationSpec flipped = *mf.foliation;
  flipped.chi_sign = -1;
  FoliationBlock fol_f = make_foliation(solv.model, flipped);
  CHECK(mean_curvature(solv.model, fol_f) == ks);
  FoliationSpec scaled = *mf.foliation;
  scaled.metric.at(4, 4) = 9;
  FoliationBlock fol_s = make_foliation(solv.model, scaled);
  CHECK(mean_curvature(solv.model, fol_s) == ks);
}

TEST_CASE("star_t basics") {
  Fixture heis = load_foliated("heis_r2");
  Form one = Form::scalar(5, Rational(1));
  CHECK(star_t(heis.model, heis.fol, heis.st, one) == e(5, {1, 2, 4, 5}));
  CHECK_THROWS_AS((void)star_t(heis.model, heis.fol, heis.st, e(5, {3})), Error);

  for (const auto& name : {std::string("heis_r2"), std::string("solv5")}) {
    Fixture fx = load_foliated(name);
    for (int k = 0; k <= fx.fol.codim; ++k)
      for (const Form& b : basic_monomials(fx, k))
        CHECK(star_t(fx.model, fx.fol, fx.st, star_t(fx.model, fx.fol, fx.st, b)) == b);
  }
}

TEST_CASE("star_t does not depend on the transverse complement") {
  for (const auto& name : {std::string("heis_r2"), std::string("solv5")}) {
    Fixture fx = load_foliated(name);
    QMatrix shear1(fx.fol.p, fx.fol.codim), shear2(fx.fol.p, fx.fol.codim);
    for (int i = 0; i < fx.fol.p; ++i)
      for (int j = 0; j < fx.fol.codim; ++j) {
        shear1.at(i, j) = 1;
        shear2.at(i, j) = make_rational(2 * j - 3 * i + 1, 2);
      }
    for (int k = 0; k <= fx.fol.codim; ++k) {
      for (const Form& b : basic_monomials(fx, k)) {
        Form base = star_t(fx.model, fx.fol, fx.st, b);
        CHECK(star_t_with_complement(fx.model, fx.fol, fx.st, shear1, b) == base);
        CHECK(star_t_with_complement(fx.model, fx.fol, fx.st, shear2, b) == base);
      }
    }
  }
}

TEST_CASE("star_a restricted to basic forms is star_t wedge chi") {
  for (const auto& name : {std::string("heis_r2"), std::string("solv5")}) {
    Fixture fx = load_foliated(name);
    StarA sa(fx.model, fx.fol, fx.st);
    CHECK(sa.apply(Form::scalar(5, Rational(1))) == wedge(fx.st.volume, fx.fol.chi));
    for (int k = 0; k <= fx.fol.codim; ++k)
      for (const Form& b : basic_monomials(fx, k))
        CHECK(sa.apply(b) == wedge(star(fx.st, b), fx.fol.chi));
    // the pure (p,0) input chi lands on the transverse volume, up to sign
    Form sa_chi = sa.apply(fx.fol.chi);
    bool matches = (sa_chi == fx.st.volume) || (sa_chi == -fx.st.volume);
    CHECK(matches);
  }
}

TEST_CASE("delta_a closed-form identity on basic forms") {
  // abelian: everything vanishes
  ComplexModel ab5(5, {}, "ab5");
  FoliationBlock fol5 = make_foliation(ab5, identity_spec(5, {5}));
  SymplecticData st5 = transverse_symplectic(ab5, fol5, parse_form(5, "e{1,2} + e{3,4}"));
  StarA sa5(ab5, fol5, st5);
  for (int k = 0; k <= 4; ++k)
    for (Mask I : mask::degree_basis(5, k, fol5.transverse))
      CHECK(sa5.codifferential(Form::unit_basis(5, I)).is_zero());

  for (const auto& name : {std::string("heis_r2"), std::string("solv5")}) {
    Fixture fx = load_foliated(name);
    StarA sa(fx.model, fx.fol, fx.st);
    Form kappa = mean_curvature(fx.model, fx.fol);
    Multivector T = sa.flat_inverse(kappa);
    int p = fx.fol.p;
    for (int k = 0; k <= fx.fol.codim; ++k) {
      for (const Form& b : basic_monomials(fx, k)) {
        Form rhs = delta_t(fx.model, fx.fol, fx.st, b) + contract(T, b);
        if ((p * (k - 1)) % 2 != 0) rhs *= Rational(-1);
        CHECK(sa.codifferential(b) == rhs);
      }
      // random basic combinations too
      for (int iter = 0; iter < 5; ++iter) {
        Form b(5, k);
        for (const Form& mono : basic_monomials(fx, k)) {
          Form t = mono;
          t *= test::random_rational();
          b += t;
        }
        if (b.is_zero()) continue;
        Form rhs = delta_t(fx.model, fx.fol, fx.st, b) + contract(T, b);
        if ((p * (k - 1)) % 2 != 0) rhs *= Rational(-1);
        CHECK(sa.codifferential(b) == rhs);
      }
    }
  }
}

TEST_CASE("delta_a identity survives a non-identity leaf metric") {
  ModelFile mf = test::fixture("solv5");
  ComplexModel model = build_model(mf);
  FoliationSpec spec = *mf.foliation;
  spec.metric.at(4, 4) = 4;  // chi = 2 e{5}
  FoliationBlock fol = make_foliation(model, spec);
  SymplecticData st = transverse_symplectic(model, fol, *mf.omega);
  StarA sa(model, fol, st);
  Form kappa = mean_curvature(model, fol);
  Multivector T = sa.flat_inverse(kappa);
  for (int k = 0; k <= fol.codim; ++k) {
    for (Mask I : mask::degree_basis(5, k, fol.transverse)) {
      Form b = Form::unit_basis(5, I);
      Form rhs = delta_t(model, fol, st, b) + contract(T, b);
      if ((fol.p * (k - 1)) % 2 != 0) rhs *= Rational(-1);
      CHECK(sa.codifferential(b) == rhs);
    }
  }
}

TEST_CASE("bracket of Y with delta_a matches the displayed formula") {
  for (const auto& name : {std::string("heis_r2"), std::string("solv5")}) {
    Fixture fx = load_foliated(name);
    StarA sa(fx.model, fx.fol, fx.st);
    for (int k = 0; k <= fx.fol.codim; ++k) {
      for (const Form& b : basic_monomials(fx, k)) {
        auto [lhs, rhs] = bracket_Y_delta_a_sides(fx.model, fx.fol, fx.st, sa, b);
        CHECK(lhs == rhs);
      }
    }
  }
  // kappa = 0 collapses the bracket to (a sign times) d, so closed basic
  // forms are annihilated.
  Fixture heis = load_foliated("heis_r2");
  StarA sa(heis.model, heis.fol, heis.st);
  Form closed = e(5, {1, 2});
  REQUIRE(heis.model.differential(closed).is_zero());
  auto [lhs, rhs] = bracket_Y_delta_a_sides(heis.model, heis.fol, heis.st, sa, closed);
  CHECK(lhs.is_zero());
  CHECK(rhs.is_zero());
}

TEST_CASE("theorem check: gating on kappa and the equivalence on the kappa = 0 fixture") {
  ModelFile heis = test::fixture("heis_r2");
  ComplexModel hm = build_model(heis);
  FoliationBlock hf = make_foliation(hm, *heis.foliation);
  Theorem41Report hrep = theorem41_check(hm, hf, *heis.omega);
  CHECK(hrep.minimal);
  CHECK(hrep.tense);
  CHECK(hrep.top_basic_nonzero);
  CHECK(hrep.basic_betti == std::vector<int>{1, 4, 6, 4, 1});
  REQUIRE(hrep.equivalence.has_value());
  CHECK(hrep.equivalence->verdict() == "TRUE/TRUE");
  CHECK(hrep.harmonic_sets_coincide);

  ModelFile solv = test::fixture("solv5");
  ComplexModel sm = build_model(solv);
  FoliationBlock sf = make_foliation(sm, *solv.foliation);
  Theorem41Report srep = theorem41_check(sm, sf, *solv.omega);
  CHECK_FALSE(srep.minimal);
  CHECK(srep.tense);
  CHECK(srep.top_basic_nonzero);
  CHECK_FALSE(srep.equivalence.has_value());

  // abelian 6-dimensional model, 2-dimensional leaves: trivially equivalent
  ComplexModel ab6(6, {}, "ab6");
  FoliationBlock fol6 = make_foliation(ab6, identity_spec(6, {5, 6}));
  Form omega6 = parse_form(6, "e{1,2} + e{3,4}");
  Theorem41Report arep = theorem41_check(ab6, fol6, omega6);
  CHECK(arep.minimal);
  REQUIRE(arep.equivalence.has_value());
  CHECK(arep.equivalence->verdict() == "TRUE/TRUE");
}
