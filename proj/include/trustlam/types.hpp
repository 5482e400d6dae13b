#pragma once

#include "trustlam/ast.hpp"
#include "trustlam/diagnostics.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace trustlam {

/// Declared atomic types plus the atomic subtype relation S, closed under
/// reflexivity and transitivity at construction.
class SubtypeEnv {
  public:
    SubtypeEnv() = default;
    SubtypeEnv(std::vector<std::string> atoms,
               const std::vector<std::pair<std::string, std::string>>& edges);

    bool has_atom(const std::string& a) const { return atoms_.count(a) != 0; }
    /// Reflexive-transitive atomic relation.
    bool atom_leq(const std::string& sub, const std::string& super) const;
    const std::set<std::string>& atoms() const { return atoms_; }

  private:
    std::set<std::string> atoms_;
    std::map<std::string, std::set<std::string>> supers_;  // transitive closure
};

/// Decidable subtype check. A non-sum type compared against a sum is treated
/// as a one-summand sum. The reserved bottom Bool annotation (see
/// `marker_bool`) is a subtype of every Bool type.
bool subtype(const TypePtr& a, const TypePtr& b, const SubtypeEnv& env);

/// Canonical supertype: the sum of the distinct types in `tys`, a single
/// distinct type returned bare.
TypePtr join(const std::vector<TypePtr>& tys);

/// The annotation given to a bare boolean when no Bool type is expected from
/// context: Bool(1 $bool)(0) over a reserved atom. Its content never affects
/// evaluation; it is a subtype of every Bool annotation.
TypePtr marker_bool();
bool is_marker_bool(const TypePtr& ty);

/// Atomic-declaration environment for a whole program: subtype relation plus
/// constant typings.
struct ProgramEnv {
    SubtypeEnv sub;
    std::map<std::string, TypePtr> consts;
};

ProgramEnv make_env(const Program& p);

using VarCtx = std::map<std::string, TypePtr>;

/// Syntax-directed type inference per the assignment rules, with a bidirectional
/// hint: `expected`, when non-null, only steers the annotation chosen for bare
/// booleans; it is never enforced. Throws TypeError.
TypePtr infer(const TermPtr& t, const VarCtx& ctx, const ProgramEnv& env,
              const TypePtr& expected = nullptr);

struct TypedTerm {
    TermPtr term;
    TypePtr ty;
};

/// Validates declarations, builds the environment and types the main term.
TypedTerm check_program(const Program& p);

}  // namespace trustlam
