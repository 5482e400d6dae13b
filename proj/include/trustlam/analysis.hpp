#pragma once

#include "trustlam/ast.hpp"
#include "trustlam/machine.hpp"
#include "trustlam/types.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace trustlam {

/// Tree of all CBN reduction alternatives; edge labels are exact
/// probabilities summing to 1 at every internal node, leaves are values.
struct RTree {
    TermPtr term;
    std::vector<std::pair<Rat, std::unique_ptr<RTree>>> children;
};

inline constexpr std::uint64_t kDefaultNodeLimit = 2000000;

/// Enumerates the whole reduction tree. Duplicate reducts from distinct rule
/// instances are distinct children. Throws EvalError when the node limit is
/// exceeded.
RTree build_tree(const TermPtr& t, const ProgramEnv& env,
                 std::uint64_t node_limit = kDefaultNodeLimit);

/// Distribution over output values: leaf probabilities summed over
/// alpha-equivalent leaves; totals exactly 1.
struct OutputDist {
    std::vector<std::pair<TermPtr, Rat>> entries;
};

OutputDist output_distribution(const TermPtr& t, const ProgramEnv& env,
                               std::uint64_t node_limit = kDefaultNodeLimit);

/// Pr(v) in `dist`, merging by alpha-equivalence; 0 when absent.
Rat output_prob(const OutputDist& dist, const TermPtr& v);

/// Exact probability that Trust?(exp[n] t) with this target reduces to True,
/// computed by grouping outputs into target buckets and enumerating
/// multinomial count vectors. `vector_cap` bounds the enumeration size.
Rat confidence(const TermPtr& t, const Dist& target, int n, const ProgramEnv& env,
               std::uint64_t vector_cap = 5000000);

/// Independent oracle: literally builds the reduction tree of
/// Trust?(exp[n] t) and sums the True-leaf probabilities. Exponential in n.
Rat confidence_via_tree(const TermPtr& t, const Dist& target, int n, const ProgramEnv& env,
                        std::uint64_t node_limit = kDefaultNodeLimit);

struct ConfidenceCurve {
    TermPtr term;
    Dist target;
    std::vector<std::pair<int, Rat>> points;
};

ConfidenceCurve confidence_curve(const TermPtr& t, const Dist& target, int n_max,
                                 const ProgramEnv& env);

enum class ConfidenceOrder { Precedes, Succeeds, Equivalent, Inconclusive };

const char* confidence_order_name(ConfidenceOrder o);

/// Finite-sample proxy for the limit of f(n)/g(n): examines the ratio at the
/// largest 5 shared grid points. A heuristic; "inconclusive" is an honest
/// verdict, not a failure.
ConfidenceOrder compare_confidence(const ConfidenceCurve& c1, const ConfidenceCurve& c2,
                                   const Rat& tol);

/// The conditional construct (s_1, ..., s_n | chooser):
/// (\x1...\xn. {p1 <t1,x1>, ..., pn <tn,xn>}) s1 ... sn with fresh binders.
/// `chooser` must be a choice of the same arity as `branches`.
TermPtr make_conditional(const std::vector<TermPtr>& branches, const TermPtr& chooser,
                         const ProgramEnv& env);

/// Pr(u | t_i) for the construct: by definition the probability that branch
/// s_i outputs u.
Rat conditional_prob(const TermPtr& u, std::size_t i, const std::vector<TermPtr>& branches,
                     const TermPtr& chooser, const ProgramEnv& env);

/// Pr(<u,v>) in the reduction tree of <t,s>.
Rat joint_prob(const TermPtr& t, const TermPtr& s, const TermPtr& u, const TermPtr& v,
               const ProgramEnv& env);

/// Probability that one run of t outputs a value whose type is a subtype of
/// some member of `tys`, via Trust?(exp[1] t) against (1 T1+...+Tk) @ 0.
Rat disjunction_prob(const TermPtr& t, const std::vector<TypePtr>& tys, const ProgramEnv& env);

}  // namespace trustlam
