#pragma once

#include "trustlam/ast.hpp"
#include "trustlam/diagnostics.hpp"

#include <string>
#include <vector>

namespace trustlam {

/// Parses a whole program. Throws ParseError with line/column on malformed
/// input, weights not summing to 1, duplicate or undeclared names.
Program parse_program(const std::string& text);

/// Parses a standalone distribution "p1 T1, ..., pn Tn" (as used by the CLI
/// --dist flag); atoms must be declared in `atoms`. Epsilon is set by the
/// caller.
Dist parse_dist_entries(const std::string& text, const std::vector<std::string>& atoms);

}  // namespace trustlam
