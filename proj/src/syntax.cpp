#include "trustlam/syntax.hpp"

#include <map>
#include <optional>

namespace trustlam {

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> out;
    auto walk = [&](auto&& self, const TermPtr& u, std::set<std::string>& bound) -> void {
        if (const auto* v = std::get_if<Var>(&u->node)) {
            if (!bound.count(v->name)) out.insert(v->name);
        } else if (const auto* a = std::get_if<Abs>(&u->node)) {
            bool fresh = bound.insert(a->var).second;
            self(self, a->body, bound);
            if (fresh) bound.erase(a->var);
        } else if (const auto* ap = std::get_if<App>(&u->node)) {
            self(self, ap->fn, bound);
            self(self, ap->arg, bound);
        } else if (const auto* c = std::get_if<Choice>(&u->node)) {
            for (const auto& [p, b] : c->branches) self(self, b, bound);
        } else if (const auto* e = std::get_if<Exp>(&u->node)) {
            self(self, e->body, bound);
        } else if (const auto* tp = std::get_if<TupleTerm>(&u->node)) {
            for (const auto& el : tp->elems) self(self, el, bound);
        } else if (const auto* pr = std::get_if<Proj>(&u->node)) {
            self(self, pr->tuple, bound);
        } else if (const auto* tr = std::get_if<TrustTerm>(&u->node)) {
            self(self, tr->arg, bound);
        }
    };
    std::set<std::string> bound;
    walk(walk, t, bound);
    return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

TermPtr substitute(const TermPtr& t, const TermPtr& s, const std::string& x) {
    switch (t->node.index()) {
        case 0: {  // Var
            const auto& v = std::get<Var>(t->node);
            return v.name == x ? s : t;
        }
        case 1:
        case 2:
        case 3:
            return t;  // literals and constants
        default:
            break;
    }
    if (const auto* a = std::get_if<Abs>(&t->node)) {
        if (a->var == x) return t;
        auto fv_s = free_vars(s);
        if (fv_s.count(a->var)) {
            // Binder would capture a free variable of s: rename it fresh.
            auto taken = fv_s;
            for (const auto& n : free_vars(a->body)) taken.insert(n);
            taken.insert(x);
            std::string y = fresh_name(a->var, taken);
            TermPtr renamed = substitute(a->body, mk_var(y), a->var);
            return mk_abs(y, a->ann, substitute(renamed, s, x), t->loc);
        }
        return mk_abs(a->var, a->ann, substitute(a->body, s, x), t->loc);
    }
    if (const auto* ap = std::get_if<App>(&t->node))
        return mk_app(substitute(ap->fn, s, x), substitute(ap->arg, s, x), t->loc);
    if (const auto* c = std::get_if<Choice>(&t->node)) {
        std::vector<std::pair<Rat, TermPtr>> bs;
        bs.reserve(c->branches.size());
        for (const auto& [p, b] : c->branches) bs.emplace_back(p, substitute(b, s, x));
        return mk_choice(std::move(bs), t->loc);
    }
    if (const auto* e = std::get_if<Exp>(&t->node))
        return mk_exp(e->n, substitute(e->body, s, x), t->loc);
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
        std::vector<TermPtr> els;
        els.reserve(tp->elems.size());
        for (const auto& el : tp->elems) els.push_back(substitute(el, s, x));
        return mk_tuple(std::move(els), t->loc);
    }
    if (const auto* pr = std::get_if<Proj>(&t->node))
        return mk_proj(substitute(pr->tuple, s, x), pr->index, t->loc);
    const auto& tr = std::get<TrustTerm>(t->node);
    return mk_trust(substitute(tr.arg, s, x), tr.ann, t->loc);
}

namespace {

bool alpha_eq_rec(const TermPtr& a, const TermPtr& b, std::map<std::string, std::string>& ab,
                  std::map<std::string, std::string>& ba) {
    if (a->node.index() != b->node.index()) return false;
    if (const auto* v = std::get_if<Var>(&a->node)) {
        const auto& w = std::get<Var>(b->node);
        auto ita = ab.find(v->name);
        auto itb = ba.find(w.name);
        if (ita != ab.end() || itb != ba.end())
            return ita != ab.end() && itb != ba.end() && ita->second == w.name &&
                   itb->second == v->name;
        return v->name == w.name;  // both free
    }
    if (std::holds_alternative<TrueLit>(a->node) || std::holds_alternative<FalseLit>(a->node))
        return true;
    if (const auto* c = std::get_if<ConstRef>(&a->node))
        return c->name == std::get<ConstRef>(b->node).name;
    if (const auto* x = std::get_if<Abs>(&a->node)) {
        const auto& y = std::get<Abs>(b->node);
        if (!type_equal(x->ann, y.ann)) return false;
        auto olda = ab.find(x->var) != ab.end() ? std::optional(ab[x->var]) : std::nullopt;
        auto oldb = ba.find(y.var) != ba.end() ? std::optional(ba[y.var]) : std::nullopt;
        ab[x->var] = y.var;
        ba[y.var] = x->var;
        bool ok = alpha_eq_rec(x->body, y.body, ab, ba);
        if (olda)
            ab[x->var] = *olda;
        else
            ab.erase(x->var);
        if (oldb)
            ba[y.var] = *oldb;
        else
            ba.erase(y.var);
        return ok;
    }
    if (const auto* x = std::get_if<App>(&a->node)) {
        const auto& y = std::get<App>(b->node);
        return alpha_eq_rec(x->fn, y.fn, ab, ba) && alpha_eq_rec(x->arg, y.arg, ab, ba);
    }
    if (const auto* x = std::get_if<Choice>(&a->node)) {
        const auto& y = std::get<Choice>(b->node);
        if (x->branches.size() != y.branches.size()) return false;
        for (std::size_t i = 0; i < x->branches.size(); ++i) {
            if (x->branches[i].first != y.branches[i].first) return false;
            if (!alpha_eq_rec(x->branches[i].second, y.branches[i].second, ab, ba)) return false;
        }
        return true;
    }
    if (const auto* x = std::get_if<Exp>(&a->node)) {
        const auto& y = std::get<Exp>(b->node);
        return x->n == y.n && alpha_eq_rec(x->body, y.body, ab, ba);
    }
    if (const auto* x = std::get_if<TupleTerm>(&a->node)) {
        const auto& y = std::get<TupleTerm>(b->node);
        if (x->elems.size() != y.elems.size()) return false;
        for (std::size_t i = 0; i < x->elems.size(); ++i)
            if (!alpha_eq_rec(x->elems[i], y.elems[i], ab, ba)) return false;
        return true;
    }
    if (const auto* x = std::get_if<Proj>(&a->node)) {
        const auto& y = std::get<Proj>(b->node);
        return x->index == y.index && alpha_eq_rec(x->tuple, y.tuple, ab, ba);
    }
    const auto& x = std::get<TrustTerm>(a->node);
    const auto& y = std::get<TrustTerm>(b->node);
    return dist_equal(x.ann, y.ann) && alpha_eq_rec(x.arg, y.arg, ab, ba);
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    std::map<std::string, std::string> ab, ba;
    return alpha_eq_rec(a, b, ab, ba);
}

bool is_value(const TermPtr& t) {
    if (std::holds_alternative<TrueLit>(t->node) || std::holds_alternative<FalseLit>(t->node) ||
        std::holds_alternative<ConstRef>(t->node) || std::holds_alternative<Abs>(t->node))
        return true;
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
        for (const auto& el : tp->elems)
            if (!is_value(el)) return false;
        return true;
    }
    return false;
}

}  // namespace trustlam
