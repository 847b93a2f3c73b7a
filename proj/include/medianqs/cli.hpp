#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "medianqs/sphere_geometry.hpp"

namespace medianqs {

/// Resolves a function source. Accepted forms:
///   builtin:z, builtin:shifted-square ((z - 0.3)^2), builtin:const:<c>
///   a JSON file holding an array of terms {"c": c, "i": i, "j": j, "k": k}
///   (or [c, i, j, k]), optionally wrapped as {"polynomial": [...]}
///   a JSON file holding {"N": n, "values": [...], "lip_bound": L}, optionally
///   nested as {"vertex_table": {"N": n, "values": [...]}, "lip_bound": L}
/// `lip_override` is required for vertex tables that carry no bound; for
/// polynomials it may not undercut the derived bound, which is kept.
/// Throws ParseError or ParameterError.
InputFunction load_function(const std::string& source, std::optional<double> lip_override = std::nullopt);

/// Same, from JSON text.
InputFunction parse_function(const std::string& json_text, std::optional<double> lip_override = std::nullopt);

/// Entry point of the medianqs tool. Returns the process exit status:
/// 0 success, 2 parse error, 3 parameter violation, 4 invariant violation,
/// 5 resource limit. Errors are written to `err` as a JSON object.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace medianqs
