#include "shl/report.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "shl/foliated.hpp"
#include "shl/invariant.hpp"
#include "shl/lefschetz.hpp"
#include "shl/version.hpp"

namespace shl {

namespace {

EquivalenceSection section_from(const LefschetzReport& rep) {
  EquivalenceSection s;
  for (std::size_t j = 0; j < rep.representable.size(); ++j)
    s.degrees.push_back({static_cast<int>(j), rep.betti[j], rep.harmonic_dims[j],
                         static_cast<bool>(rep.representable[j])});
  for (const auto& p : rep.powers)
    s.powers.push_back({p.k, p.rank, p.dim_source, p.dim_target, p.surjective});
  s.all_representable = rep.all_representable;
  s.all_surjective = rep.all_surjective;
  s.verdict = rep.verdict();
  return s;
}

FoliatedSection foliated_section(const ComplexModel& model, const ModelFile& mf) {
  FoliatedSection out;
  FoliationBlock fol = make_foliation(model, *mf.foliation);
  if (!mf.omega) fail(ErrorClass::omega_invalid, "foliated analysis requires an omega block");
  SymplecticData st = transverse_symplectic(model, fol, *mf.omega);

  Theorem41Report rep = theorem41_check(model, fol, *mf.omega);
  out.kappa = to_string(rep.kappa);
  out.minimal = rep.minimal;
  out.tense = rep.tense;
  out.basic_betti = rep.basic_betti;
  out.top_basic_dim = rep.top_basic_dim;
  out.top_basic_nonzero = rep.top_basic_nonzero;
  out.harmonic_sets_coincide = rep.harmonic_sets_coincide;
  if (rep.equivalence) out.equivalence = section_from(*rep.equivalence);

  out.d_split_ok = check_d_split(model, fol).residual_free;

  Subcomplex basic = basic_complex(model, fol);
  StarA sa(model, fol, st);
  Form kappa = rep.kappa;
  Multivector T = sa.flat_inverse(kappa);
  int p = fol.p;

  out.star_a_identity_ok = true;
  out.codifferential_identity_ok = true;
  out.bracket_identity_ok = true;
  out.star_t_complement_independent = true;

  QMatrix shear1(fol.p, fol.codim), shear2(fol.p, fol.codim);
  for (int i = 0; i < fol.p; ++i)
    for (int j = 0; j < fol.codim; ++j) {
      shear1.at(i, j) = 1;
      shear2.at(i, j) = make_rational(i + 2 * j + 1, 3);
    }

  for (int k = 0; k <= fol.codim; ++k) {
    for (const Form& b : basic.basis(k)) {
      // star_a b = (star_t b) ^ chi
      if (!(sa.apply(b) == wedge(star(st, b), fol.chi))) out.star_a_identity_ok = false;
      // delta_a b = (-1)^{p(k-1)} (delta_t b + iota_T b)
      Form rhs = codifferential(model, st, b) + contract(T, b, false);
      if ((p * (k - 1)) % 2 != 0) rhs *= Rational(-1);
      if (!(sa.codifferential(b) == rhs)) out.codifferential_identity_ok = false;
      auto [lhs, rhs2] = bracket_Y_delta_a_sides(model, fol, st, sa, b);
      if (!(lhs == rhs2)) out.bracket_identity_ok = false;
      Form st_b = star(st, b);
      if (!(star_t_with_complement(model, fol, st, shear1, b) == st_b) ||
          !(star_t_with_complement(model, fol, st, shear2, b) == st_b))
        out.star_t_complement_independent = false;
    }
  }
  return out;
}

}  // namespace

RunReport run_report(const ModelFile& mf, const ReportOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport r;
  r.model_name = mf.name;
  r.dim = mf.dim;

  ComplexModel model = build_model(mf);
  model.require_valid();

  if (!mf.omega && !opt.include_foliated)
    fail(ErrorClass::omega_invalid, "model has no omega block; nothing to analyze");

  bool main_built = false;
  try {
    if (!mf.omega) fail(ErrorClass::omega_invalid, "model has no omega block");
    SymplecticData symp = make_symplectic(model, *mf.omega);
    r.n = symp.n;
    SymplecticComplex S = SymplecticComplex::full(model, symp);
    r.main = section_from(mathieu_equivalence_check(S));
    main_built = true;
  } catch (const Error& e) {
    if (e.cls() == ErrorClass::omega_invalid && mf.foliation && opt.include_foliated) {
      r.main_note = "omega is transversally symplectic only; see the foliated section";
    } else {
      throw;
    }
  }

  if (opt.include_invariant) {
    if (mf.group.empty()) fail(ErrorClass::group_invalid, "model has no group block");
    if (!main_built)
      fail(ErrorClass::group_invalid, "invariant analysis needs a full symplectic structure");
    GroupAction G = close_group(mf.group, opt.group_bound);
    require_automorphisms(model, G);
    require_omega_invariant(G, *mf.omega);
    r.group_order = static_cast<int>(G.order());
    Subcomplex inv = invariant_complex(model, G);
    SymplecticData symp = make_symplectic(model, *mf.omega);
    SymplecticComplex S(model, symp, std::move(inv));
    r.invariant = section_from(mathieu_equivalence_check(S));
  }

  if (opt.include_foliated) {
    if (!mf.foliation) fail(ErrorClass::foliation_invalid, "model has no foliation block");
    r.foliated = foliated_section(model, mf);
    if (!main_built && r.foliated) r.n = static_cast<int>((r.foliated->basic_betti.size() - 1) / 2);
  }

  if (opt.with_timing) {
    auto t1 = std::chrono::steady_clock::now();
    r.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

const char* yn(bool b) { return b ? "yes" : "no"; }

void render_section(std::ostringstream& os, const EquivalenceSection& s, const std::string& indent) {
  os << indent << "degree  betti  harmonic  representable\n";
  for (const auto& d : s.degrees) {
    os << indent << "  " << d.degree << "       " << d.betti << "      " << d.harmonic_dim
       << "         " << yn(d.representable) << "\n";
  }
  os << indent << "lefschetz powers:\n";
  for (const auto& p : s.powers) {
    os << indent << "  L^" << p.k << ": rank " << p.rank << "/" << p.dim_target << " (from dim "
       << p.dim_source << ") " << (p.surjective ? "surjective" : "NOT surjective") << "\n";
  }
  os << indent << "equivalence: harmonic representability = " << (s.all_representable ? "TRUE" : "FALSE")
     << ", hard Lefschetz = " << (s.all_surjective ? "TRUE" : "FALSE") << "\n";
  os << indent << "verdict: equivalent: " << s.verdict << "\n";
  bool any_fail = false;
  for (const auto& p : s.powers)
    if (!p.surjective) {
      if (!any_fail) os << indent << "failing powers:";
      os << " k=" << p.k;
      any_fail = true;
    }
  if (any_fail) os << "\n";
}

}  // namespace

std::string report_to_text(const RunReport& r) {
  std::ostringstream os;
  os << "model: " << r.model_name << " (dim " << r.dim << ", n = " << r.n << ")\n";
  if (r.main) {
    render_section(os, *r.main, "");
  } else if (r.main_note) {
    os << "note: " << *r.main_note << "\n";
  }
  if (r.invariant) {
    os << "invariant complex (group order " << (r.group_order ? *r.group_order : 0) << "):\n";
    render_section(os, *r.invariant, "  ");
  }
  if (r.foliated) {
    const FoliatedSection& f = *r.foliated;
    os << "foliated analysis:\n";
    os << "  kappa: " << f.kappa << "\n";
    os << "  minimal (kappa = 0): " << yn(f.minimal) << "\n";
    os << "  tense (kappa basic): " << yn(f.tense) << "\n";
    os << "  dim H^" << (f.basic_betti.size() - 1) << "_B = " << f.top_basic_dim
       << " (nonzero: " << yn(f.top_basic_nonzero) << ")\n";
    os << "  basic betti:";
    for (int b : f.basic_betti) os << " " << b;
    os << "\n";
    os << "  d splits into (1,0) + (0,1) + (-1,2): " << yn(f.d_split_ok) << "\n";
    os << "  star_a = star_t ^ chi on basic forms: " << yn(f.star_a_identity_ok) << "\n";
    os << "  delta_a closed form identity on basic forms: " << yn(f.codifferential_identity_ok) << "\n";
    os << "  [Y, delta_a] bracket identity: " << yn(f.bracket_identity_ok) << "\n";
    os << "  star_t independent of complement: " << yn(f.star_t_complement_independent) << "\n";
    if (f.equivalence) {
      os << "  harmonic sets (star_a vs star_t) coincide: " << yn(f.harmonic_sets_coincide) << "\n";
      os << "  basic-complex equivalence:\n";
      render_section(os, *f.equivalence, "    ");
    } else {
      os << "  kappa != 0: theorem hypotheses not met; no equivalence asserted\n";
    }
  }
  if (r.timing_ms) os << "timing_ms: " << *r.timing_ms << "\n";
  return os.str();
}

namespace {

using nlohmann::ordered_json;

ordered_json section_json(const EquivalenceSection& s) {
  ordered_json j;
  j["degrees"] = ordered_json::array();
  for (const auto& d : s.degrees)
    j["degrees"].push_back({{"degree", d.degree},
                            {"betti", d.betti},
                            {"harmonic", d.harmonic_dim},
                            {"representable", d.representable}});
  j["powers"] = ordered_json::array();
  for (const auto& p : s.powers)
    j["powers"].push_back({{"k", p.k},
                           {"rank", p.rank},
                           {"dim_source", p.dim_source},
                           {"dim_target", p.dim_target},
                           {"surjective", p.surjective}});
  j["all_representable"] = s.all_representable;
  j["all_surjective"] = s.all_surjective;
  j["verdict"] = s.verdict;
  return j;
}

EquivalenceSection section_from_json(const ordered_json& j) {
  EquivalenceSection s;
  for (const auto& d : j.at("degrees"))
    s.degrees.push_back({d.at("degree").get<int>(), d.at("betti").get<int>(),
                         d.at("harmonic").get<int>(), d.at("representable").get<bool>()});
  for (const auto& p : j.at("powers"))
    s.powers.push_back({p.at("k").get<int>(), p.at("rank").get<int>(), p.at("dim_source").get<int>(),
                        p.at("dim_target").get<int>(), p.at("surjective").get<bool>()});
  s.all_representable = j.at("all_representable").get<bool>();
  s.all_surjective = j.at("all_surjective").get<bool>();
  s.verdict = j.at("verdict").get<std::string>();
  return s;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  ordered_json j;
  j["tool"] = "shl";
  j["version"] = kVersion;
  j["model"] = r.model_name;
  j["dim"] = r.dim;
  j["n"] = r.n;
  if (r.main) j["main"] = section_json(*r.main);
  if (r.main_note) j["main_note"] = *r.main_note;
  if (r.group_order) j["group_order"] = *r.group_order;
  if (r.invariant) j["invariant"] = section_json(*r.invariant);
  if (r.foliated) {
    const FoliatedSection& f = *r.foliated;
    ordered_json fj;
    fj["kappa"] = f.kappa;
    fj["minimal"] = f.minimal;
    fj["tense"] = f.tense;
    fj["top_basic_dim"] = f.top_basic_dim;
    fj["top_basic_nonzero"] = f.top_basic_nonzero;
    fj["basic_betti"] = f.basic_betti;
    fj["d_split_ok"] = f.d_split_ok;
    fj["star_a_identity_ok"] = f.star_a_identity_ok;
    fj["codifferential_identity_ok"] = f.codifferential_identity_ok;
    fj["bracket_identity_ok"] = f.bracket_identity_ok;
    fj["star_t_complement_independent"] = f.star_t_complement_independent;
    fj["harmonic_sets_coincide"] = f.harmonic_sets_coincide;
    if (f.equivalence) fj["equivalence"] = section_json(*f.equivalence);
    j["foliated"] = fj;
  }
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorClass::parse, std::string("report is not valid JSON: ") + e.what());
  }
  RunReport r;
  r.model_name = j.at("model").get<std::string>();
  r.dim = j.at("dim").get<int>();
  r.n = j.at("n").get<int>();
  if (j.contains("main")) r.main = section_from_json(j["main"]);
  if (j.contains("main_note")) r.main_note = j["main_note"].get<std::string>();
  if (j.contains("group_order")) r.group_order = j["group_order"].get<int>();
  if (j.contains("invariant")) r.invariant = section_from_json(j["invariant"]);
  if (j.contains("foliated")) {
    const auto& fj = j["foliated"];
    FoliatedSection f;
    f.kappa = fj.at("kappa").get<std::string>();
    f.minimal = fj.at("minimal").get<bool>();
    f.tense = fj.at("tense").get<bool>();
    f.top_basic_dim = fj.at("top_basic_dim").get<int>();
    f.top_basic_nonzero = fj.at("top_basic_nonzero").get<bool>();
    f.basic_betti = fj.at("basic_betti").get<std::vector<int>>();
    f.d_split_ok = fj.at("d_split_ok").get<bool>();
    f.star_a_identity_ok = fj.at("star_a_identity_ok").get<bool>();
    f.codifferential_identity_ok = fj.at("codifferential_identity_ok").get<bool>();
    f.bracket_identity_ok = fj.at("bracket_identity_ok").get<bool>();
    f.star_t_complement_independent = fj.at("star_t_complement_independent").get<bool>();
    f.harmonic_sets_coincide = fj.at("harmonic_sets_coincide").get<bool>();
    if (fj.contains("equivalence")) f.equivalence = section_from_json(fj["equivalence"]);
    r.foliated = f;
  }
  if (j.contains("timing_ms")) r.timing_ms = j["timing_ms"].get<double>();
  return r;
}

}  // namespace shl
