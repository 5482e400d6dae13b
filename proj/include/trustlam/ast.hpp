#pragma once

#include "trustlam/rat.hpp"

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trustlam {

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// A distribution annotation: entries (p_i, B_i) with p_i >= 0 summing to 1,
/// plus the tolerance threshold epsilon. The same type may occur in several
/// entries; the total variation distance sums duplicate masses.
struct Dist {
    std::vector<std::pair<Rat, TypePtr>> entries;
    Rat epsilon;
};

// --- types -----------------------------------------------------------------

struct TAtom {
    std::string name;
};
struct TArrow {
    TypePtr dom;
    TypePtr cod;
};
struct TSum {
    std::vector<TypePtr> summands;  // nonempty, flattened, deduplicated
};
struct TTuplePow {
    TypePtr elem;
    int n;  // n >= 1
};
struct TBool {
    Dist dist;
};

struct TypeExpr {
    std::variant<TAtom, TArrow, TSum, TTuplePow, TBool> node;
};

TypePtr mk_atom(std::string name);
TypePtr mk_arrow(TypePtr dom, TypePtr cod);
/// Flattens nested sums, deduplicates structurally-equal summands (order
/// preserving) and collapses a single summand to the bare type.
TypePtr mk_sum(std::vector<TypePtr> summands);
TypePtr mk_tuple_pow(TypePtr elem, int n);
TypePtr mk_bool(Dist dist);

/// Structural equality on the sum-dedup normal form.
bool type_equal(const TypePtr& a, const TypePtr& b);
bool dist_equal(const Dist& a, const Dist& b);

// --- terms -----------------------------------------------------------------

struct Var {
    std::string name;
};
struct TrueLit {};
struct FalseLit {};
struct ConstRef {
    std::string name;
};
struct Abs {
    std::string var;
    TypePtr ann;  // binders carry mandatory annotations
    TermPtr body;
};
struct App {
    TermPtr fn;
    TermPtr arg;
};
struct Choice {
    std::vector<std::pair<Rat, TermPtr>> branches;  // weights > 0, sum = 1
};
struct Exp {
    int n;  // n >= 1
    TermPtr body;
};
struct TupleTerm {
    std::vector<TermPtr> elems;  // nonempty
};
struct Proj {
    TermPtr tuple;
    int index;  // 1-based, >= 1
};
struct TrustTerm {
    TermPtr arg;
    Dist ann;
};

struct Loc {
    int line = 0;
    int col = 0;
};

struct Term {
    std::variant<Var, TrueLit, FalseLit, ConstRef, Abs, App, Choice, Exp, TupleTerm, Proj,
                 TrustTerm>
        node;
    Loc loc;
};

TermPtr mk_var(std::string name, Loc loc = {});
TermPtr mk_true(Loc loc = {});
TermPtr mk_false(Loc loc = {});
TermPtr mk_const(std::string name, Loc loc = {});
TermPtr mk_abs(std::string var, TypePtr ann, TermPtr body, Loc loc = {});
TermPtr mk_app(TermPtr fn, TermPtr arg, Loc loc = {});
/// Throws std::invalid_argument unless every weight is positive and the
/// weights sum exactly to 1.
TermPtr mk_choice(std::vector<std::pair<Rat, TermPtr>> branches, Loc loc = {});
TermPtr mk_exp(int n, TermPtr body, Loc loc = {});
TermPtr mk_tuple(std::vector<TermPtr> elems, Loc loc = {});
TermPtr mk_proj(TermPtr tuple, int index, Loc loc = {});
TermPtr mk_trust(TermPtr arg, Dist ann, Loc loc = {});

/// A whole source program: declarations plus the main term.
struct Program {
    std::vector<std::string> atoms;
    std::vector<std::pair<std::string, std::string>> subtype_decls;  // (sub, super)
    std::vector<std::pair<std::string, std::string>> const_decls;    // (name, atom)
    TermPtr main;
};

}  // namespace trustlam
