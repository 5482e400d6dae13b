#include "trustlam/machine.hpp"

#include "trustlam/printer.hpp"
#include "trustlam/syntax.hpp"

#include <algorithm>

namespace trustlam {

std::uint64_t RngState::next_u64() {
    // splitmix64 (Steele, Lea, Flood 2014); fixed so traces are reproducible.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

BigInt RngState::uniform_below(const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("uniform_below needs bound >= 1");
    if (bound == 1) return 0;
    const unsigned bits = boost::multiprecision::msb(bound - 1) + 1;
    while (true) {
        BigInt v = 0;
        unsigned got = 0;
        while (got < bits) {
            v <<= 64;
            v |= BigInt(next_u64());
            got += 64;
        }
        v >>= (got - bits);  // keep exactly `bits` random bits
        if (v < bound) return v;
    }
}

std::size_t sample_choice(const std::vector<Rat>& weights, RngState& rng) {
    BigInt lcd = 1;
    for (const auto& w : weights) lcd = boost::multiprecision::lcm(lcd, rat_den(w));
    BigInt u = rng.uniform_below(lcd);
    BigInt cum = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cum += rat_num(weights[i]) * (lcd / rat_den(weights[i]));
        if (u < cum) return i;
    }
    return weights.size() - 1;  // unreachable when weights sum to 1
}

namespace {

// Distribution support: distinct types with positive summed mass.
std::vector<std::pair<TypePtr, Rat>> massed_types(const Dist& d) {
    std::vector<std::pair<TypePtr, Rat>> out;
    for (const auto& [p, ty] : d.entries) {
        bool merged = false;
        for (auto& [t, mass] : out)
            if (type_equal(t, ty)) {
                mass += p;
                merged = true;
                break;
            }
        if (!merged) out.emplace_back(ty, p);
    }
    return out;
}

bool support_subset(const std::vector<std::pair<TypePtr, Rat>>& a,
                    const std::vector<std::pair<TypePtr, Rat>>& b) {
    for (const auto& [ty, mass] : a) {
        if (mass == 0) continue;
        bool found = false;
        for (const auto& [ty2, mass2] : b)
            if (mass2 > 0 && type_equal(ty, ty2)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace

Rat tv_distance(const Dist& p, const Dist& q, const SubtypeEnv& env) {
    (void)env;  // type comparison is structural equality, not subtyping
    auto pm = massed_types(p), qm = massed_types(q);
    if (!support_subset(pm, qm) && !support_subset(qm, pm)) return 1;
    Rat sup = 0;
    auto mass_in = [](const std::vector<std::pair<TypePtr, Rat>>& d, const TypePtr& ty) {
        for (const auto& [t, m] : d)
            if (type_equal(t, ty)) return m;
        return Rat(0);
    };
    std::vector<TypePtr> seen;
    auto visit = [&](const TypePtr& ty) {
        for (const auto& s : seen)
            if (type_equal(s, ty)) return;
        seen.push_back(ty);
        Rat diff = rat_abs(mass_in(pm, ty) - mass_in(qm, ty));
        if (diff > sup) sup = diff;
    };
    for (const auto& [ty, m] : pm) visit(ty);
    for (const auto& [ty, m] : qm) visit(ty);
    return sup;
}

std::optional<Dist> empirical_dist(const std::vector<TermPtr>& values, const Dist& target,
                                   const ProgramEnv& env) {
    std::vector<long> counts(target.entries.size(), 0);
    for (const auto& v : values) {
        TypePtr ty = infer(v, {}, env);
        bool matched = false;
        for (std::size_t j = 0; j < target.entries.size(); ++j) {
            if (subtype(ty, target.entries[j].second, env.sub)) {
                ++counts[j];
                matched = true;
                break;  // first match in declaration order
            }
        }
        if (!matched) return std::nullopt;
    }
    Dist out;
    out.epsilon = target.epsilon;
    const long n = static_cast<long>(values.size());
    for (std::size_t j = 0; j < target.entries.size(); ++j)
        out.entries.emplace_back(Rat(counts[j], n), target.entries[j].second);
    return out;
}

TermPtr trust_check(const std::vector<TermPtr>& values, const Dist& annotation,
                    const ProgramEnv& env) {
    auto empirical = empirical_dist(values, annotation, env);
    Rat dist = empirical ? tv_distance(annotation, *empirical, env.sub) : Rat(1);
    return dist <= annotation.epsilon ? mk_true() : mk_false();
}

const char* rule_tag_name(RuleTag tag) {
    switch (tag) {
        case RuleTag::Beta: return "beta";
        case RuleTag::Choice: return "choice";
        case RuleTag::Exp: return "exp";
        case RuleTag::Proj: return "proj";
        case RuleTag::TrustTrue: return "trust-true";
        case RuleTag::TrustFalse: return "trust-false";
        case RuleTag::Context: return "context";
    }
    return "?";
}

namespace {

[[noreturn]] void stuck(const TermPtr& t, const std::string& why) {
    throw EvalError({"E_STUCK", "stuck non-value (" + why + "): " + print_term(t), t->loc.line,
                     t->loc.col});
}

}  // namespace

std::vector<StepOutcome> step_alternatives(const TermPtr& t, const ProgramEnv& env) {
    if (is_value(t)) return {};
    if (std::holds_alternative<Var>(t->node)) stuck(t, "free variable");

    if (const auto* ap = std::get_if<App>(&t->node)) {
        if (const auto* abs = std::get_if<Abs>(&ap->fn->node))
            return {{substitute(abs->body, ap->arg, abs->var), 1, RuleTag::Beta}};
        if (is_value(ap->fn)) stuck(t, "application of a non-abstraction value");
        auto inner = step_alternatives(ap->fn, env);
        std::vector<StepOutcome> out;
        out.reserve(inner.size());
        for (auto& alt : inner)
            out.push_back({mk_app(alt.reduct, ap->arg, t->loc), alt.probability, alt.tag});
        return out;
    }
    if (const auto* c = std::get_if<Choice>(&t->node)) {
        std::vector<StepOutcome> out;
        out.reserve(c->branches.size());
        for (const auto& [p, b] : c->branches) out.push_back({b, p, RuleTag::Choice});
        return out;
    }
    if (const auto* e = std::get_if<Exp>(&t->node)) {
        // The body is copied verbatim, never pre-evaluated: the n runs must
        // be independent.
        std::vector<TermPtr> copies(static_cast<std::size_t>(e->n), e->body);
        return {{mk_tuple(std::move(copies), t->loc), 1, RuleTag::Exp}};
    }
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
        for (std::size_t i = 0; i < tp->elems.size(); ++i) {
            if (is_value(tp->elems[i])) continue;
            auto inner = step_alternatives(tp->elems[i], env);
            std::vector<StepOutcome> out;
            out.reserve(inner.size());
            for (auto& alt : inner) {
                std::vector<TermPtr> elems = tp->elems;
                elems[i] = alt.reduct;
                out.push_back({mk_tuple(std::move(elems), t->loc), alt.probability, alt.tag});
            }
            return out;
        }
        stuck(t, "tuple of values reached non-value path");
    }
    if (const auto* pr = std::get_if<Proj>(&t->node)) {
        if (const auto* tp = std::get_if<TupleTerm>(&pr->tuple->node)) {
            if (pr->index > static_cast<int>(tp->elems.size()))
                stuck(t, "projection index out of range");
            return {{tp->elems[static_cast<std::size_t>(pr->index - 1)], 1, RuleTag::Proj}};
        }
        if (is_value(pr->tuple)) stuck(t, "projection of a non-tuple value");
        auto inner = step_alternatives(pr->tuple, env);
        std::vector<StepOutcome> out;
        out.reserve(inner.size());
        for (auto& alt : inner)
            out.push_back({mk_proj(alt.reduct, pr->index, t->loc), alt.probability, alt.tag});
        return out;
    }
    const auto& tr = std::get<TrustTerm>(t->node);
    if (is_value(tr.arg)) {
        const auto* tp = std::get_if<TupleTerm>(&tr.arg->node);
        if (!tp) stuck(t, "trust subject is a non-tuple value");
        TermPtr verdict = trust_check(tp->elems, tr.ann, env);
        bool truthy = std::holds_alternative<TrueLit>(verdict->node);
        return {{verdict, 1, truthy ? RuleTag::TrustTrue : RuleTag::TrustFalse}};
    }
    auto inner = step_alternatives(tr.arg, env);
    std::vector<StepOutcome> out;
    out.reserve(inner.size());
    for (auto& alt : inner)
        out.push_back({mk_trust(alt.reduct, tr.ann, t->loc), alt.probability, alt.tag});
    return out;
}

StepOutcome step(const TermPtr& t, RngState& rng, const ProgramEnv& env) {
    auto alts = step_alternatives(t, env);
    if (alts.empty())
        throw EvalError({"E_VALUE", "step applied to a value", t->loc.line, t->loc.col});
    if (alts.size() == 1) return std::move(alts.front());
    std::vector<Rat> weights;
    weights.reserve(alts.size());
    for (const auto& a : alts) weights.push_back(a.probability);
    return std::move(alts[sample_choice(weights, rng)]);
}

Trace eval(const TermPtr& t, std::uint64_t seed, const ProgramEnv& env, std::uint64_t fuel) {
    RngState rng(seed);
    Trace tr;
    tr.seed = seed;
    TermPtr cur = t;
    for (std::uint64_t i = 0; i < fuel; ++i) {
        if (is_value(cur)) {
            tr.final = cur;
            return tr;
        }
        StepOutcome out = step(cur, rng, env);
        tr.steps.emplace_back(cur, out);
        cur = out.reduct;
    }
    if (is_value(cur)) {
        tr.final = cur;
        return tr;
    }
    throw EvalError({"E_FUEL",
                     "fuel exhausted after " + std::to_string(fuel) +
                         " steps; this signals an internal invariant violation",
                     t->loc.line, t->loc.col});
}

}  // namespace trustlam
