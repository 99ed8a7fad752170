#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "shl/report.hpp"

namespace shl {

// Command bodies shared by the CLI binary and the tests. Each returns
// the process exit code (0 on success; see ErrorClass for the
// nonzero codes).
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err,
                 std::size_t group_bound = 10000);
int cmd_report(const std::string& path, bool as_json, const ReportOptions& opt, std::ostream& out,
               std::ostream& err);
int cmd_harmonize(const std::string& path, const std::string& form_literal, std::ostream& out,
                  std::ostream& err);
int cmd_catalog_list(std::ostream& out);
int cmd_catalog_emit(const std::string& name, const std::optional<std::string>& out_path,
                     std::ostream& out, std::ostream& err);

}  // namespace shl
