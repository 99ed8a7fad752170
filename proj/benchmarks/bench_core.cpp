#include <benchmark/benchmark.h>

#include <random>

#include "shl/catalog.hpp"
#include "shl/lefschetz.hpp"
#include "shl/model_io.hpp"
#include "shl/report.hpp"

namespace {

using namespace shl;

Form random_form(std::mt19937_64& rng, int m, int k) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  Form f(m, k);
  for (Mask I : mask::degree_basis(m, k)) f.add_term(I, make_rational(num(rng), den(rng)));
  return f;
}

ComplexModel torus(int m) { return ComplexModel(m, {}, "torus" + std::to_string(m)); }

Form standard_omega(int m) {
  Form w(m, 2);
  for (int i = 1; i + 1 <= m; i += 2) w.add_term(mask::bit(i) | mask::bit(i + 1), Rational(1));
  return w;
}

void BM_wedge_m8(benchmark::State& state) {
  std::mt19937_64 rng(7);
  Form a = random_form(rng, 8, 2), b = random_form(rng, 8, 3);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(BM_wedge_m8);

void BM_star_m8(benchmark::State& state) {
  ComplexModel model = torus(8);
  SymplecticData s = make_symplectic(model, standard_omega(8));
  std::mt19937_64 rng(11);
  Form f = random_form(rng, 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(star(s, f));
}
BENCHMARK(BM_star_m8);

void BM_cohomology_kt(benchmark::State& state) {
  ModelFile mf = parse_model_json(catalog_fixture_json("kodaira_thurston"));
  ComplexModel model = build_model(mf);
  for (auto _ : state) {
    Subcomplex full = Subcomplex::full(model);
    for (int k = 0; k <= 4; ++k) benchmark::DoNotOptimize(cohomology(full, k).dim());
  }
}
BENCHMARK(BM_cohomology_kt);

void BM_report_torus6(benchmark::State& state) {
  ModelFile mf = parse_model_json(catalog_fixture_json("torus6"));
  ReportOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(run_report(mf, opt));
}
BENCHMARK(BM_report_torus6);

void BM_harmonize_torus6(benchmark::State& state) {
  ModelFile mf = parse_model_json(catalog_fixture_json("torus6"));
  ComplexModel model = build_model(mf);
  SymplecticData s = make_symplectic(model, *mf.omega);
  SymplecticComplex S = SymplecticComplex::full(model, s);
  std::mt19937_64 rng(3);
  Form f = random_form(rng, 6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(harmonize(S, f));
}
BENCHMARK(BM_harmonize_torus6);

}  // namespace

BENCHMARK_MAIN();
