#pragma once

#include "trustlam/ast.hpp"

#include <set>
#include <string>

namespace trustlam {

/// Free variables of a term. Constants and literals have none.
std::set<std::string> free_vars(const TermPtr& t);

/// Capture-avoiding substitution t[s/x]. Binders that would capture a free
/// variable of s are renamed fresh first.
TermPtr substitute(const TermPtr& t, const TermPtr& s, const std::string& x);

/// Identity up to consistent renaming of bound variables (annotations must
/// match structurally).
bool alpha_eq(const TermPtr& a, const TermPtr& b);

/// True / False / constants / abstractions, and tuples of values.
bool is_value(const TermPtr& t);

/// A variable name based on `base` that avoids everything in `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace trustlam
