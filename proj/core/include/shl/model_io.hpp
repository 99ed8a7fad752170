#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shl/complex.hpp"

namespace shl {

struct FoliationSpec {
  std::vector<int> leaf_basis;  // 1-based indices spanning h
  QMatrix metric;               // m x m, symmetric positive definite, h and its complement orthogonal
  int chi_sign = 1;
};

// Parsed model file. Rationals are strings ("p/q") in the JSON; see the
// README for the exact schema.
struct ModelFile {
  std::string name;
  int dim = 0;
  std::vector<BracketTerm> brackets;
  std::optional<Form> omega;
  std::vector<QMatrix> group;
  std::optional<FoliationSpec> foliation;
};

ModelFile parse_model_json(const std::string& text);
ModelFile load_model_file(const std::string& path);
std::string model_to_json(const ModelFile& mf);

ComplexModel build_model(const ModelFile& mf);

}  // namespace shl
