#pragma once

#include <string>
#include <vector>

namespace shl {

// Built-in model fixtures, emitted byte-exactly.
std::vector<std::string> catalog_names();
const std::string& catalog_fixture_json(const std::string& name);  // Error(unknown_name) if absent

}  // namespace shl
