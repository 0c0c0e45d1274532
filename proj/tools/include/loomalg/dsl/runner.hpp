#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "loomalg/dsl/ast.hpp"

namespace loomalg::dsl {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::vector<long> box;  // overrides default windows; one radius is broadcast
  unsigned seed = 1;
  bool fail_fast = false;
  std::string source_name;
};

/// Executes the commands of a validated document in order.
Json run(const Document& doc, const RunOptions& options);

/// Report for a document that failed to parse.
Json diagnostics_report(const std::vector<Diagnostic>& diags, const std::string& source_name);

/// Human-readable rendering of a report.
std::string render_text(const Json& report);

/// "file:3:7: error[E002]: unresolved name 'x'" followed by the source line
/// and a caret underline.
std::string render_diagnostics(const std::vector<Diagnostic>& diags, std::string_view source,
                               const std::string& source_name);

}  // namespace loomalg::dsl
