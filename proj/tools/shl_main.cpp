#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "shl/cli.hpp"
#include "shl/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"shl - symplectically harmonic forms on finite-dimensional models"};
  app.set_version_flag("--version", std::string(shl::kVersion));
  app.require_subcommand(1);

  std::string path;
  std::string form_literal;
  std::string catalog_name;
  std::optional<std::string> emit_out;
  bool as_json = false;
  shl::ReportOptions opt;

  if (const char* env = std::getenv("SHL_MAX_GROUP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      std::cerr << "error: SHL_MAX_GROUP must be a positive integer\n";
      return 1;
    }
    opt.group_bound = static_cast<std::size_t>(v);
  }

  auto* validate = app.add_subcommand("validate", "parse and validate a model file");
  validate->add_option("file", path, "model file (JSON)")->required();

  auto* report = app.add_subcommand("report", "full analysis report");
  report->add_option("file", path, "model file (JSON)")->required();
  report->add_flag("--json", as_json, "machine-readable JSON output");
  report->add_flag("--invariant", opt.include_invariant, "analyze the group-invariant subcomplex");
  report->add_flag("--foliated", opt.include_foliated, "analyze the basic complex of the foliation");
  report->add_flag("--timing", opt.with_timing, "include wall-clock timing (output no longer byte-deterministic)");

  auto* harmonize = app.add_subcommand("harmonize", "harmonic representative of a closed form");
  harmonize->add_option("file", path, "model file (JSON)")->required();
  harmonize->add_option("--form", form_literal, "form literal, e.g. \"3/2 e{1,3} - e{2,4}\"")->required();

  auto* catalog = app.add_subcommand("catalog", "built-in fixture models");
  auto* list = catalog->add_subcommand("list", "list fixture names");
  auto* emit = catalog->add_subcommand("emit", "emit a fixture file");
  std::string emit_path;
  emit->add_option("name", catalog_name, "fixture name")->required();
  auto* out_opt = emit->add_option("--out", emit_path, "write to this path instead of stdout");
  catalog->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return shl::cmd_validate(path, std::cout, std::cerr, opt.group_bound);
  if (report->parsed()) return shl::cmd_report(path, as_json, opt, std::cout, std::cerr);
  if (harmonize->parsed()) return shl::cmd_harmonize(path, form_literal, std::cout, std::cerr);
  if (catalog->parsed()) {
    if (list->parsed()) return shl::cmd_catalog_list(std::cout);
    if (emit->parsed()) {
      if (out_opt->count() > 0) emit_out = emit_path;
      return shl::cmd_catalog_emit(catalog_name, emit_out, std::cout, std::cerr);
    }
  }
  return 1;
}
