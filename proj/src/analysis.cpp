#include "trustlam/analysis.hpp"

#include "trustlam/printer.hpp"
#include "trustlam/syntax.hpp"

#include <functional>

namespace trustlam {

namespace {

void build_rec(RTree& node, const ProgramEnv& env, std::uint64_t limit, std::uint64_t& count) {
    auto alts = step_alternatives(node.term, env);
    for (auto& alt : alts) {
        if (++count > limit)
            throw EvalError({"E_NODE_LIMIT",
                             "reduction tree exceeds node limit " + std::to_string(limit),
                             node.term->loc.line, node.term->loc.col});
        auto child = std::make_unique<RTree>();
        child->term = alt.reduct;
        build_rec(*child, env, limit, count);
        node.children.emplace_back(alt.probability, std::move(child));
    }
}

}  // namespace

RTree build_tree(const TermPtr& t, const ProgramEnv& env, std::uint64_t node_limit) {
    RTree root;
    root.term = t;
    std::uint64_t count = 1;
    if (count > node_limit)
        throw EvalError({"E_NODE_LIMIT", "node limit is zero", t->loc.line, t->loc.col});
    build_rec(root, env, node_limit, count);
    return root;
}

OutputDist output_distribution(const TermPtr& t, const ProgramEnv& env,
                               std::uint64_t node_limit) {
    OutputDist out;
    std::uint64_t count = 0;
    std::function<void(const TermPtr&, const Rat&)> walk = [&](const TermPtr& u, const Rat& p) {
        if (++count > node_limit)
            throw EvalError({"E_NODE_LIMIT",
                             "reduction tree exceeds node limit " + std::to_string(node_limit),
                             t->loc.line, t->loc.col});
        auto alts = step_alternatives(u, env);
        if (alts.empty()) {
            for (auto& [v, mass] : out.entries)
                if (alpha_eq(v, u)) {
                    mass += p;
                    return;
                }
            out.entries.emplace_back(u, p);
            return;
        }
        for (const auto& alt : alts) walk(alt.reduct, p * alt.probability);
    };
    walk(t, 1);
    return out;
}

Rat output_prob(const OutputDist& dist, const TermPtr& v) {
    for (const auto& [u, p] : dist.entries)
        if (alpha_eq(u, v)) return p;
    return 0;
}

namespace {

struct Buckets {
    std::vector<Rat> probs;  // aligned with target.entries
    Rat miss = 0;
};

// Groups the exact output distribution of t by first-match against the
// target's entry types (declaration order) -- the same canonical grouping
// trust_check applies to literal tuples.
Buckets bucket_outputs(const TermPtr& t, const Dist& target, const ProgramEnv& env) {
    Buckets b;
    b.probs.assign(target.entries.size(), Rat(0));
    OutputDist out = output_distribution(t, env);
    for (const auto& [v, p] : out.entries) {
        TypePtr ty = infer(v, {}, env);
        bool matched = false;
        for (std::size_t j = 0; j < target.entries.size(); ++j) {
            if (subtype(ty, target.entries[j].second, env.sub)) {
                b.probs[j] += p;
                matched = true;
                break;
            }
        }
        if (!matched) b.miss += p;
    }
    return b;
}

BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

}  // namespace

Rat confidence(const TermPtr& t, const Dist& target, int n, const ProgramEnv& env,
               std::uint64_t vector_cap) {
    if (n < 1) throw std::invalid_argument("confidence needs n >= 1");
    Buckets buckets = bucket_outputs(t, target, env);
    const int m = static_cast<int>(buckets.probs.size());
    if (binomial(n + m - 1, m - 1) > BigInt(vector_cap))
        throw EvalError({"E_ENUM_CAP",
                         "multinomial enumeration for n=" + std::to_string(n) +
                             " exceeds the configured cap",
                         0, 0});

    std::vector<BigInt> fact(static_cast<std::size_t>(n) + 1);
    fact[0] = 1;
    for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[i - 1] * i;

    Rat total = 0;
    std::vector<int> ks(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> enumerate = [&](int j, int remaining) {
        if (j == m - 1) {
            ks[static_cast<std::size_t>(j)] = remaining;
            if (remaining > 0 && buckets.probs[static_cast<std::size_t>(j)] == 0) return;
            // Any tuple containing an unmatched output fails the check, so
            // only all-matched count vectors can contribute.
            Dist empirical;
            empirical.epsilon = target.epsilon;
            BigInt coeff = fact[static_cast<std::size_t>(n)];
            Rat weight = 1;
            for (int i = 0; i < m; ++i) {
                const int k = ks[static_cast<std::size_t>(i)];
                empirical.entries.emplace_back(Rat(k, n), target.entries[static_cast<std::size_t>(i)].second);
                coeff /= fact[static_cast<std::size_t>(k)];
                for (int c = 0; c < k; ++c) weight *= buckets.probs[static_cast<std::size_t>(i)];
            }
            if (tv_distance(target, empirical, env.sub) <= target.epsilon)
                total += Rat(coeff) * weight;
            return;
        }
        const bool dead = buckets.probs[static_cast<std::size_t>(j)] == 0;
        for (int k = 0; k <= (dead ? 0 : remaining); ++k) {
            ks[static_cast<std::size_t>(j)] = k;
            enumerate(j + 1, remaining - k);
        }
    };
    enumerate(0, n);
    return total;
}

Rat confidence_via_tree(const TermPtr& t, const Dist& target, int n, const ProgramEnv& env,
                        std::uint64_t node_limit) {
    TermPtr probe = mk_trust(mk_exp(n, t), target);
    OutputDist out = output_distribution(probe, env, node_limit);
    return output_prob(out, mk_true());
}

ConfidenceCurve confidence_curve(const TermPtr& t, const Dist& target, int n_max,
                                 const ProgramEnv& env) {
    ConfidenceCurve curve{t, target, {}};
    for (int n = 1; n <= n_max; ++n) curve.points.emplace_back(n, confidence(t, target, n, env));
    return curve;
}

const char* confidence_order_name(ConfidenceOrder o) {
    switch (o) {
        case ConfidenceOrder::Precedes: return "precedes";
        case ConfidenceOrder::Succeeds: return "succeeds";
        case ConfidenceOrder::Equivalent: return "equivalent";
        case ConfidenceOrder::Inconclusive: return "inconclusive";
    }
    return "?";
}

ConfidenceOrder compare_confidence(const ConfidenceCurve& c1, const ConfidenceCurve& c2,
                                   const Rat& tol) {
    const std::size_t k = 5;
    if (c1.points.empty() || c1.points.size() != c2.points.size())
        return ConfidenceOrder::Inconclusive;
    const std::size_t start = c1.points.size() > k ? c1.points.size() - k : 0;
    bool all_below = true, all_above = true, all_near = true;
    for (std::size_t i = start; i < c1.points.size(); ++i) {
        if (c1.points[i].first != c2.points[i].first) return ConfidenceOrder::Inconclusive;
        const Rat& f = c1.points[i].second;
        const Rat& g = c2.points[i].second;
        if (g == 0) return ConfidenceOrder::Inconclusive;
        Rat ratio = f / g;
        if (!(ratio < 1 - tol)) all_below = false;
        if (!(ratio > 1 + tol)) all_above = false;
        if (rat_abs(ratio - 1) > tol) all_near = false;
    }
    if (all_near) return ConfidenceOrder::Equivalent;
    if (all_below) return ConfidenceOrder::Precedes;
    if (all_above) return ConfidenceOrder::Succeeds;
    return ConfidenceOrder::Inconclusive;
}

TermPtr make_conditional(const std::vector<TermPtr>& branches, const TermPtr& chooser,
                         const ProgramEnv& env) {
    const auto* choice = std::get_if<Choice>(&chooser->node);
    if (!choice) throw std::invalid_argument("chooser must be a probabilistic choice term");
    if (choice->branches.size() != branches.size())
        throw std::invalid_argument("conditional arity mismatch: " +
                                    std::to_string(branches.size()) + " branches vs " +
                                    std::to_string(choice->branches.size()) + "-ary chooser");

    std::set<std::string> taken = free_vars(chooser);
    for (const auto& s : branches)
        for (const auto& v : free_vars(s)) taken.insert(v);

    std::vector<std::string> vars;
    std::vector<TypePtr> anns;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        std::string x = fresh_name("x" + std::to_string(i + 1), taken);
        taken.insert(x);
        vars.push_back(x);
        anns.push_back(infer(branches[i], {}, env));
    }

    std::vector<std::pair<Rat, TermPtr>> pairs;
    pairs.reserve(branches.size());
    for (std::size_t i = 0; i < branches.size(); ++i)
        pairs.emplace_back(choice->branches[i].first,
                           mk_tuple({choice->branches[i].second, mk_var(vars[i])}));
    TermPtr body = mk_choice(std::move(pairs));
    for (std::size_t i = branches.size(); i-- > 0;) body = mk_abs(vars[i], anns[i], body);
    for (std::size_t i = 0; i < branches.size(); ++i) body = mk_app(body, branches[i]);
    return body;
}

Rat conditional_prob(const TermPtr& u, std::size_t i, const std::vector<TermPtr>& branches,
                     const TermPtr& chooser, const ProgramEnv& env) {
    const auto* choice = std::get_if<Choice>(&chooser->node);
    if (!choice || choice->branches.size() != branches.size())
        throw std::invalid_argument("chooser must be a choice matching the branch list");
    if (i >= branches.size()) throw std::out_of_range("conditional branch index out of range");
    return output_prob(output_distribution(branches[i], env), u);
}

Rat joint_prob(const TermPtr& t, const TermPtr& s, const TermPtr& u, const TermPtr& v,
               const ProgramEnv& env) {
    OutputDist out = output_distribution(mk_tuple({t, s}), env);
    return output_prob(out, mk_tuple({u, v}));
}

Rat disjunction_prob(const TermPtr& t, const std::vector<TypePtr>& tys, const ProgramEnv& env) {
    Dist target;
    target.entries.emplace_back(Rat(1), join(tys));
    target.epsilon = 0;
    TermPtr probe = mk_trust(mk_exp(1, t), std::move(target));
    return output_prob(output_distribution(probe, env), mk_true());
}

}  // namespace trustlam
