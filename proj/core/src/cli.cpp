#include "shl/cli.hpp"

#include <fstream>
#include <ostream>

#include "shl/catalog.hpp"
#include "shl/foliated.hpp"
#include "shl/invariant.hpp"
#include "shl/lefschetz.hpp"

namespace shl {

namespace {

int error_exit(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return static_cast<int>(e.cls());
}

}  // namespace

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err,
                 std::size_t group_bound) {
  try {
    ModelFile mf = load_model_file(path);
    out << "parse: ok (model '" << mf.name << "', dim " << mf.dim << ")\n";

    ComplexModel model = build_model(mf);
    auto v = model.validate();
    if (!v.valid) {
      for (const auto& s : v.violations) err << "FAIL: " << s << "\n";
      return static_cast<int>(ErrorClass::model_invalid);
    }
    out << "differential: ok (d^2 = 0 on all generators)\n";

    std::optional<FoliationBlock> fol;
    if (mf.foliation) {
      fol = make_foliation(model, *mf.foliation);
      out << "foliation: ok (p = " << fol->p << ", codim = " << fol->codim << ")\n";
    }

    if (mf.omega) {
      if (fol) {
        transverse_symplectic(model, *fol, *mf.omega);
        out << "omega: ok (closed, transversally nondegenerate, basic)\n";
      } else {
        make_symplectic(model, *mf.omega);
        out << "omega: ok (closed, nondegenerate)\n";
      }
    } else {
      out << "omega: absent (symplectic checks skipped)\n";
    }

    if (!mf.group.empty()) {
      GroupAction G = close_group(mf.group, group_bound);
      require_automorphisms(model, G);
      if (mf.omega) require_omega_invariant(G, *mf.omega);
      out << "group: ok (order " << G.order() << ")\n";
    }
    out << "OK\n";
    return 0;
  } catch (const Error& e) {
    return error_exit(e, err);
  }
}

int cmd_report(const std::string& path, bool as_json, const ReportOptions& opt, std::ostream& out,
               std::ostream& err) {
  try {
    ModelFile mf = load_model_file(path);
    RunReport r = run_report(mf, opt);
    out << (as_json ? report_to_json(r) : report_to_text(r));
    return 0;
  } catch (const Error& e) {
    return error_exit(e, err);
  }
}

int cmd_harmonize(const std::string& path, const std::string& form_literal, std::ostream& out,
                  std::ostream& err) {
  try {
    ModelFile mf = load_model_file(path);
    ComplexModel model = build_model(mf);
    model.require_valid();
    if (!mf.omega) fail(ErrorClass::omega_invalid, "model has no omega block");
    SymplecticData symp = make_symplectic(model, *mf.omega);
    SymplecticComplex S = SymplecticComplex::full(model, symp);

    Form xi = parse_form(model.dim(), form_literal);
    Form result = harmonize(S, xi);

    // Verify the certificate before printing anything.
    Form d_res = model.differential(result);
    Form delta_res = codifferential(model, symp, result);
    if (!d_res.is_zero()) fail(ErrorClass::internal, "certificate failed: d(result) != 0");
    if (!delta_res.is_zero()) fail(ErrorClass::internal, "certificate failed: delta(result) != 0");
    int j = xi.is_zero() ? 0 : xi.degree();
    auto ci = S.class_coords(j, xi);
    auto cr = S.class_coords(j, result);
    if (!ci || !cr || !vec_is_zero(vec_sub(*cr, *ci)))
      fail(ErrorClass::internal, "certificate failed: [result] != [input]");

    out << "input: " << to_string(xi) << "\n";
    out << "harmonized: " << to_string(result) << "\n";
    out << "certificate: d(result) = 0\n";
    out << "certificate: delta(result) = 0\n";
    out << "certificate: [result] - [input] = 0\n";
    return 0;
  } catch (const Error& e) {
    return error_exit(e, err);
  }
}

int cmd_catalog_list(std::ostream& out) {
  for (const auto& name : catalog_names()) out << name << "\n";
  return 0;
}

int cmd_catalog_emit(const std::string& name, const std::optional<std::string>& out_path,
                     std::ostream& out, std::ostream& err) {
  try {
    const std::string& text = catalog_fixture_json(name);
    if (out_path) {
      std::ofstream f(*out_path, std::ios::binary);
      if (!f) fail(ErrorClass::usage, "cannot write to " + *out_path);
      f << text;
      out << "wrote " << *out_path << "\n";
    } else {
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    return error_exit(e, err);
  }
}

}  // namespace shl
