#include "trustlam/ast.hpp"

#include <stdexcept>

namespace trustlam {

TypePtr mk_atom(std::string name) {
    return std::make_shared<TypeExpr>(TypeExpr{TAtom{std::move(name)}});
}

TypePtr mk_arrow(TypePtr dom, TypePtr cod) {
    return std::make_shared<TypeExpr>(TypeExpr{TArrow{std::move(dom), std::move(cod)}});
}

TypePtr mk_sum(std::vector<TypePtr> summands) {
    if (summands.empty()) throw std::invalid_argument("sum type needs at least one summand");
    std::vector<TypePtr> flat;
    for (auto& s : summands) {
        if (auto* sum = std::get_if<TSum>(&s->node)) {
            for (const auto& inner : sum->summands) flat.push_back(inner);
        } else {
            flat.push_back(std::move(s));
        }
    }
    std::vector<TypePtr> dedup;
    for (auto& s : flat) {
        bool seen = false;
        for (const auto& d : dedup)
            if (type_equal(d, s)) {
                seen = true;
                break;
            }
        if (!seen) dedup.push_back(std::move(s));
    }
    if (dedup.size() == 1) return dedup.front();
    return std::make_shared<TypeExpr>(TypeExpr{TSum{std::move(dedup)}});
}

TypePtr mk_tuple_pow(TypePtr elem, int n) {
    if (n < 1) throw std::invalid_argument("tuple power needs n >= 1");
    return std::make_shared<TypeExpr>(TypeExpr{TTuplePow{std::move(elem), n}});
}

TypePtr mk_bool(Dist dist) {
    if (dist.entries.empty()) throw std::invalid_argument("distribution needs an entry");
    Rat total = 0;
    for (const auto& [p, ty] : dist.entries) {
        if (p < 0) throw std::invalid_argument("distribution probabilities must be nonnegative");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("distribution probabilities must sum to 1");
    return std::make_shared<TypeExpr>(TypeExpr{TBool{std::move(dist)}});
}

bool dist_equal(const Dist& a, const Dist& b) {
    if (a.epsilon != b.epsilon || a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].first != b.entries[i].first) return false;
        if (!type_equal(a.entries[i].second, b.entries[i].second)) return false;
    }
    return true;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* x = std::get_if<TAtom>(&a->node))
        return x->name == std::get<TAtom>(b->node).name;
    if (const auto* x = std::get_if<TArrow>(&a->node)) {
        const auto& y = std::get<TArrow>(b->node);
        return type_equal(x->dom, y.dom) && type_equal(x->cod, y.cod);
    }
    if (const auto* x = std::get_if<TSum>(&a->node)) {
        const auto& y = std::get<TSum>(b->node);
        // Summands are a multiset; normal forms are deduplicated, so mutual
        // containment suffices.
        auto contains = [](const std::vector<TypePtr>& hay, const TypePtr& needle) {
            for (const auto& h : hay)
                if (type_equal(h, needle)) return true;
            return false;
        };
        for (const auto& s : x->summands)
            if (!contains(y.summands, s)) return false;
        for (const auto& s : y.summands)
            if (!contains(x->summands, s)) return false;
        return true;
    }
    if (const auto* x = std::get_if<TTuplePow>(&a->node)) {
        const auto& y = std::get<TTuplePow>(b->node);
        return x->n == y.n && type_equal(x->elem, y.elem);
    }
    const auto& x = std::get<TBool>(a->node);
    const auto& y = std::get<TBool>(b->node);
    return dist_equal(x.dist, y.dist);
}

TermPtr mk_var(std::string name, Loc loc) {
    return std::make_shared<Term>(Term{Var{std::move(name)}, loc});
}
TermPtr mk_true(Loc loc) { return std::make_shared<Term>(Term{TrueLit{}, loc}); }
TermPtr mk_false(Loc loc) { return std::make_shared<Term>(Term{FalseLit{}, loc}); }
TermPtr mk_const(std::string name, Loc loc) {
    return std::make_shared<Term>(Term{ConstRef{std::move(name)}, loc});
}
TermPtr mk_abs(std::string var, TypePtr ann, TermPtr body, Loc loc) {
    return std::make_shared<Term>(Term{Abs{std::move(var), std::move(ann), std::move(body)}, loc});
}
TermPtr mk_app(TermPtr fn, TermPtr arg, Loc loc) {
    return std::make_shared<Term>(Term{App{std::move(fn), std::move(arg)}, loc});
}

TermPtr mk_choice(std::vector<std::pair<Rat, TermPtr>> branches, Loc loc) {
    if (branches.empty()) throw std::invalid_argument("choice needs at least one branch");
    Rat total = 0;
    for (const auto& [p, t] : branches) {
        if (p <= 0) throw std::invalid_argument("choice weights must be positive");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("choice weights must sum exactly to 1");
    return std::make_shared<Term>(Term{Choice{std::move(branches)}, loc});
}

TermPtr mk_exp(int n, TermPtr body, Loc loc) {
    if (n < 1) throw std::invalid_argument("exp needs n >= 1");
    return std::make_shared<Term>(Term{Exp{n, std::move(body)}, loc});
}
TermPtr mk_tuple(std::vector<TermPtr> elems, Loc loc) {
    if (elems.empty()) throw std::invalid_argument("tuple must be nonempty");
    return std::make_shared<Term>(Term{TupleTerm{std::move(elems)}, loc});
}
TermPtr mk_proj(TermPtr tuple, int index, Loc loc) {
    if (index < 1) throw std::invalid_argument("projection index must be >= 1");
    return std::make_shared<Term>(Term{Proj{std::move(tuple), index}, loc});
}
TermPtr mk_trust(TermPtr arg, Dist ann, Loc loc) {
    Rat total = 0;
    for (const auto& [p, ty] : ann.entries) {
        if (p < 0) throw std::invalid_argument("distribution probabilities must be nonnegative");
        total += p;
    }
    if (ann.entries.empty() || total != 1)
        throw std::invalid_argument("trust annotation probabilities must sum to 1");
    return std::make_shared<Term>(Term{TrustTerm{std::move(arg), std::move(ann)}, loc});
}

}  // namespace trustlam
