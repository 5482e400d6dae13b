#pragma once

#include "trustlam/ast.hpp"

#include <string>

namespace trustlam {

/// Concrete syntax for a term; re-parses to an alpha-equivalent term.
std::string print_term(const TermPtr& t);

std::string print_type(const TypePtr& ty);

/// "p1 T1, ..., pn Tn" without the epsilon.
std::string print_dist_entries(const Dist& d);

/// "(p1 T1, ..., pn Tn) @ eps"
std::string print_dist(const Dist& d);

std::string print_program(const Program& p);

}  // namespace trustlam
