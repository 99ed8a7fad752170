#include "shl/catalog.hpp"

#include <utility>

#include "shl/errors.hpp"

namespace shl {

namespace {

const std::pair<const char*, const char*> kFixtures[] = {
#include "shl_catalog_data.inc"
};

const std::vector<std::pair<std::string, std::string>>& fixtures() {
  static const std::vector<std::pair<std::string, std::string>> cache = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (const auto& [n, text] : kFixtures) v.emplace_back(n, text);
    return v;
  }();
  return cache;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : fixtures()) names.push_back(name);
  return names;
}

const std::string& catalog_fixture_json(const std::string& name) {
  for (const auto& [n, text] : fixtures())
    if (n == name) return text;
  fail(ErrorClass::unknown_name, "unknown catalog model '" + name + "'");
}

}  // namespace shl
