#include "shl/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace shl {

namespace {

using nlohmann::ordered_json;

Rational rational_field(const ordered_json& j, const char* where) {
  if (!j.is_string()) fail(ErrorClass::parse, std::string(where) + ": rationals must be strings like \"p/q\"");
  return parse_rational(j.get<std::string>());
}

QMatrix matrix_field(const ordered_json& j, int dim, const char* where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(ErrorClass::parse, std::string(where) + ": expected " + std::to_string(dim) + " rows");
  QMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(ErrorClass::parse, std::string(where) + ": row " + std::to_string(i + 1) + " has wrong length");
    for (int c = 0; c < dim; ++c) m.at(i, c) = rational_field(row[c], where);
  }
  return m;
}

}  // namespace

ModelFile parse_model_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorClass::parse, std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorClass::parse, "model file must be a JSON object");

  ModelFile mf;
  mf.name = j.value("name", std::string("unnamed"));
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail(ErrorClass::parse, "missing integer field 'dim'");
  mf.dim = j["dim"].get<int>();
  if (mf.dim < 1 || mf.dim > kMaxDim)
    fail(ErrorClass::parse, "'dim' must be within 1.." + std::to_string(kMaxDim));

  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) fail(ErrorClass::parse, "'brackets' must be an array");
    for (const auto& b : j["brackets"]) {
      if (!b.is_array() || b.size() != 4 || !b[0].is_number_integer() || !b[1].is_number_integer() ||
          !b[2].is_number_integer())
        fail(ErrorClass::parse, "bracket entries must look like [i, j, k, \"p/q\"]");
      mf.brackets.push_back(
          {b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), rational_field(b[3], "brackets")});
    }
  }

  if (j.contains("omega")) {
    if (!j["omega"].is_array()) fail(ErrorClass::parse, "'omega' must be an array");
    Form omega(mf.dim, 2);
    std::vector<bool> seen(static_cast<std::size_t>(mf.dim + 1) * (mf.dim + 1), false);
    for (const auto& t : j["omega"]) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
        fail(ErrorClass::parse, "omega entries must look like [i, j, \"p/q\"]");
      int i = t[0].get<int>(), jj = t[1].get<int>();
      if (i < 1 || i > mf.dim || jj < 1 || jj > mf.dim || i == jj)
        fail(ErrorClass::parse, "omega entry has bad index pair");
      Rational c = rational_field(t[2], "omega");
      int a = std::min(i, jj), b = std::max(i, jj);
      if (seen[static_cast<std::size_t>(a) * (mf.dim + 1) + b])
        fail(ErrorClass::parse, "duplicate omega entry for pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
      seen[static_cast<std::size_t>(a) * (mf.dim + 1) + b] = true;
      if (i > jj) c = -c;
      omega.add_term(mask::bit(a) | mask::bit(b), c);
    }
    mf.omega = std::move(omega);
  }

  if (j.contains("group")) {
    if (!j["group"].is_array()) fail(ErrorClass::parse, "'group' must be an array of matrices");
    for (const auto& g : j["group"]) mf.group.push_back(matrix_field(g, mf.dim, "group"));
  }

  if (j.contains("foliation")) {
    const auto& f = j["foliation"];
    if (!f.is_object()) fail(ErrorClass::parse, "'foliation' must be an object");
    FoliationSpec fs;
    if (!f.contains("leaf_basis") || !f["leaf_basis"].is_array())
      fail(ErrorClass::parse, "foliation needs an integer array 'leaf_basis'");
    for (const auto& idx : f["leaf_basis"]) {
      if (!idx.is_number_integer()) fail(ErrorClass::parse, "leaf_basis entries must be integers");
      fs.leaf_basis.push_back(idx.get<int>());
    }
    if (!f.contains("metric")) fail(ErrorClass::parse, "foliation needs a 'metric' matrix");
    fs.metric = matrix_field(f["metric"], mf.dim, "foliation.metric");
    fs.chi_sign = f.value("chi_sign", 1);
    if (fs.chi_sign != 1 && fs.chi_sign != -1) fail(ErrorClass::parse, "chi_sign must be 1 or -1");
    mf.foliation = std::move(fs);
  }

  return mf;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorClass::parse, "cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

std::string model_to_json(const ModelFile& mf) {
  ordered_json j;
  j["name"] = mf.name;
  j["dim"] = mf.dim;
  j["brackets"] = ordered_json::array();
  for (const auto& b : mf.brackets) j["brackets"].push_back({b.i, b.j, b.k, to_string(b.c)});
  if (mf.omega) {
    j["omega"] = ordered_json::array();
    for (const auto& [I, c] : mf.omega->terms()) {
      auto idx = mask::indices(I);
      j["omega"].push_back({idx[0], idx[1], to_string(c)});
    }
  }
  if (!mf.group.empty()) {
    j["group"] = ordered_json::array();
    for (const auto& g : mf.group) {
      ordered_json rows = ordered_json::array();
      for (int i = 0; i < g.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < g.cols(); ++c) row.push_back(to_string(g.at(i, c)));
        rows.push_back(row);
      }
      j["group"].push_back(rows);
    }
  }
  if (mf.foliation) {
    ordered_json f;
    f["leaf_basis"] = mf.foliation->leaf_basis;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < mf.foliation->metric.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < mf.foliation->metric.cols(); ++c) row.push_back(to_string(mf.foliation->metric.at(i, c)));
      rows.push_back(row);
    }
    f["metric"] = rows;
    f["chi_sign"] = mf.foliation->chi_sign;
    j["foliation"] = f;
  }
  return j.dump(2) + "\n";
}

ComplexModel build_model(const ModelFile& mf) { return ComplexModel(mf.dim, mf.brackets, mf.name); }

}  // namespace shl
