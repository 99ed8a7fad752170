#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shl/model_io.hpp"

namespace shl {

struct ReportOptions {
  bool include_invariant = false;
  bool include_foliated = false;
  bool with_timing = false;  // timing is opt-in so that default output bytes are deterministic
  std::size_t group_bound = 10000;
};

struct DegreeRow {
  int degree = 0;
  int betti = 0;
  int harmonic_dim = 0;
  bool representable = false;
};

struct PowerRow {
  int k = 0;
  int rank = 0;
  int dim_source = 0;
  int dim_target = 0;
  bool surjective = false;
};

struct EquivalenceSection {
  std::vector<DegreeRow> degrees;
  std::vector<PowerRow> powers;
  bool all_representable = false;
  bool all_surjective = false;
  std::string verdict;  // "TRUE/TRUE" or "FALSE/FALSE"
};

struct FoliatedSection {
  std::string kappa;
  bool minimal = false;
  bool tense = false;
  int top_basic_dim = 0;
  bool top_basic_nonzero = false;
  std::vector<int> basic_betti;
  bool d_split_ok = false;
  bool star_a_identity_ok = false;
  bool codifferential_identity_ok = false;  // the closed-form delta_a identity on basic forms
  bool bracket_identity_ok = false;
  bool star_t_complement_independent = false;
  bool harmonic_sets_coincide = false;
  std::optional<EquivalenceSection> equivalence;  // only when kappa = 0
};

struct RunReport {
  std::string model_name;
  int dim = 0;
  int n = 0;  // half-dimension of the symplectic index set driving `main`
  std::optional<EquivalenceSection> main;
  std::optional<std::string> main_note;  // why `main` is absent
  std::optional<EquivalenceSection> invariant;
  std::optional<int> group_order;
  std::optional<FoliatedSection> foliated;
  std::optional<double> timing_ms;
};

RunReport run_report(const ModelFile& mf, const ReportOptions& opt);

std::string report_to_text(const RunReport& r);
std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

}  // namespace shl
