#include "trustlam/types.hpp"

#include "trustlam/printer.hpp"

#include <algorithm>

namespace trustlam {

SubtypeEnv::SubtypeEnv(std::vector<std::string> atoms,
                       const std::vector<std::pair<std::string, std::string>>& edges)
    : atoms_(atoms.begin(), atoms.end()) {
    for (const auto& a : atoms_) supers_[a].insert(a);
    for (const auto& [sub, super] : edges) supers_[sub].insert(super);
    // Warshall-style closure; atom counts are tiny.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [a, ups] : supers_) {
            std::set<std::string> next = ups;
            for (const auto& b : ups) {
                auto it = supers_.find(b);
                if (it != supers_.end()) next.insert(it->second.begin(), it->second.end());
            }
            if (next.size() != ups.size()) {
                ups = std::move(next);
                changed = true;
            }
        }
    }
}

bool SubtypeEnv::atom_leq(const std::string& sub, const std::string& super) const {
    if (sub == super) return true;
    auto it = supers_.find(sub);
    return it != supers_.end() && it->second.count(super) != 0;
}

namespace {
const std::string kMarkerAtom = "$bool";
}

TypePtr marker_bool() {
    static const TypePtr marker = [] {
        Dist d;
        d.entries.emplace_back(Rat(1), mk_atom(kMarkerAtom));
        d.epsilon = 0;
        return mk_bool(std::move(d));
    }();
    return marker;
}

bool is_marker_bool(const TypePtr& ty) { return type_equal(ty, marker_bool()); }

namespace {

std::vector<TypePtr> summands_of(const TypePtr& ty) {
    if (const auto* s = std::get_if<TSum>(&ty->node)) return s->summands;
    return {ty};
}

bool subtype_single(const TypePtr& a, const TypePtr& b, const SubtypeEnv& env);

bool subtype_rec(const TypePtr& a, const TypePtr& b, const SubtypeEnv& env) {
    bool a_sum = std::holds_alternative<TSum>(a->node);
    bool b_sum = std::holds_alternative<TSum>(b->node);
    if (a_sum || b_sum) {
        // Each left summand must fit under some right summand; a non-sum
        // counts as a one-summand sum.
        auto as = summands_of(a), bs = summands_of(b);
        for (const auto& x : as) {
            bool found = false;
            for (const auto& y : bs)
                if (subtype_rec(x, y, env)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }
    return subtype_single(a, b, env);
}

bool subtype_single(const TypePtr& a, const TypePtr& b, const SubtypeEnv& env) {
    if (type_equal(a, b)) return true;
    if (const auto* x = std::get_if<TAtom>(&a->node)) {
        const auto* y = std::get_if<TAtom>(&b->node);
        return y && env.atom_leq(x->name, y->name);
    }
    if (const auto* x = std::get_if<TArrow>(&a->node)) {
        const auto* y = std::get_if<TArrow>(&b->node);
        return y && subtype_rec(y->dom, x->dom, env) && subtype_rec(x->cod, y->cod, env);
    }
    if (const auto* x = std::get_if<TTuplePow>(&a->node)) {
        const auto* y = std::get_if<TTuplePow>(&b->node);
        return y && x->n >= y->n && subtype_rec(x->elem, y->elem, env);
    }
    if (const auto* x = std::get_if<TBool>(&a->node)) {
        const auto* y = std::get_if<TBool>(&b->node);
        if (!y) return false;
        // The reserved marker annotation stands for "boolean with an
        // unconstrained annotation" and fits under any Bool type.
        if (is_marker_bool(a)) return true;
        return dist_equal(x->dist, y->dist);
    }
    return false;
}

}  // namespace

bool subtype(const TypePtr& a, const TypePtr& b, const SubtypeEnv& env) {
    return subtype_rec(a, b, env);
}

TypePtr join(const std::vector<TypePtr>& tys) {
    if (tys.empty()) throw std::invalid_argument("join of empty sequence");
    return mk_sum(tys);
}

ProgramEnv make_env(const Program& p) {
    ProgramEnv env;
    env.sub = SubtypeEnv(p.atoms, p.subtype_decls);
    for (const auto& [name, atom] : p.const_decls) env.consts[name] = mk_atom(atom);
    return env;
}

namespace {

[[noreturn]] void type_fail(const TermPtr& t, const std::string& code, const std::string& msg) {
    throw TypeError({code, msg, t->loc.line, t->loc.col});
}

TypePtr expected_tuple_elem(const TypePtr& expected) {
    if (expected)
        if (const auto* p = std::get_if<TTuplePow>(&expected->node)) return p->elem;
    return nullptr;
}

}  // namespace

TypePtr infer(const TermPtr& t, const VarCtx& ctx, const ProgramEnv& env,
              const TypePtr& expected) {
    if (const auto* v = std::get_if<Var>(&t->node)) {
        auto it = ctx.find(v->name);
        if (it == ctx.end()) type_fail(t, "E_UNBOUND", "unbound variable '" + v->name + "'");
        return it->second;
    }
    if (std::holds_alternative<TrueLit>(t->node) || std::holds_alternative<FalseLit>(t->node)) {
        if (expected && std::holds_alternative<TBool>(expected->node)) return expected;
        return marker_bool();
    }
    if (const auto* c = std::get_if<ConstRef>(&t->node)) {
        auto it = env.consts.find(c->name);
        if (it == env.consts.end())
            type_fail(t, "E_UNBOUND", "undeclared constant '" + c->name + "'");
        return it->second;
    }
    if (const auto* a = std::get_if<Abs>(&t->node)) {
        TypePtr body_hint = nullptr;
        if (expected)
            if (const auto* ar = std::get_if<TArrow>(&expected->node)) body_hint = ar->cod;
        VarCtx inner = ctx;
        inner[a->var] = a->ann;
        TypePtr body_ty = infer(a->body, inner, env, body_hint);
        return mk_arrow(a->ann, body_ty);
    }
    if (const auto* ap = std::get_if<App>(&t->node)) {
        TypePtr fn_ty = infer(ap->fn, ctx, env);
        // A bare arrow head is the one-summand case of the sum-of-arrows rule.
        std::vector<TypePtr> arrows = summands_of(fn_ty);
        std::vector<const TArrow*> heads;
        for (const auto& s : arrows) {
            const auto* ar = std::get_if<TArrow>(&s->node);
            if (!ar)
                type_fail(t, "E_APP_HEAD", "application head has type " + print_type(fn_ty) +
                                               ", which is not an arrow or a sum of arrows");
            heads.push_back(ar);
        }
        TypePtr arg_ty = infer(ap->arg, ctx, env, heads.front()->dom);
        for (const auto* ar : heads) {
            if (!subtype(arg_ty, ar->dom, env.sub))
                type_fail(t, "E_APP_ARG", "argument type " + print_type(arg_ty) +
                                              " is not a subtype of domain " +
                                              print_type(ar->dom));
        }
        std::vector<TypePtr> cods;
        cods.reserve(heads.size());
        for (const auto* ar : heads) cods.push_back(ar->cod);
        return mk_sum(std::move(cods));
    }
    if (const auto* c = std::get_if<Choice>(&t->node)) {
        std::vector<TypePtr> branch_tys;
        branch_tys.reserve(c->branches.size());
        for (const auto& [p, b] : c->branches) branch_tys.push_back(infer(b, ctx, env, expected));
        return mk_sum(std::move(branch_tys));
    }
    if (const auto* e = std::get_if<Exp>(&t->node)) {
        TypePtr body_ty = infer(e->body, ctx, env, expected_tuple_elem(expected));
        return mk_tuple_pow(body_ty, e->n);
    }
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
        TypePtr elem_hint = expected_tuple_elem(expected);
        std::vector<TypePtr> elem_tys;
        elem_tys.reserve(tp->elems.size());
        for (const auto& el : tp->elems) elem_tys.push_back(infer(el, ctx, env, elem_hint));
        return mk_tuple_pow(join(elem_tys), static_cast<int>(tp->elems.size()));
    }
    if (const auto* pr = std::get_if<Proj>(&t->node)) {
        TypePtr subj_hint = expected ? mk_tuple_pow(expected, pr->index) : nullptr;
        TypePtr subj = infer(pr->tuple, ctx, env, subj_hint);
        const auto* pw = std::get_if<TTuplePow>(&subj->node);
        if (!pw)
            type_fail(t, "E_PROJ_SUBJECT",
                      "projection subject has type " + print_type(subj) +
                          ", which is not a tuple power");
        if (pr->index > pw->n)
            type_fail(t, "E_PROJ_RANGE", "projection index " + std::to_string(pr->index) +
                                             " out of range for " + print_type(subj));
        return pw->elem;
    }
    const auto& tr = std::get<TrustTerm>(t->node);
    TypePtr subj = infer(tr.arg, ctx, env);
    if (!std::holds_alternative<TTuplePow>(subj->node))
        type_fail(t, "E_TRUST_SUBJECT", "trust subject has type " + print_type(subj) +
                                            ", which is not a tuple power");
    return mk_bool(tr.ann);
}

TypedTerm check_program(const Program& p) {
    ProgramEnv env = make_env(p);
    TypePtr ty = infer(p.main, {}, env);
    return {p.main, ty};
}

}  // namespace trustlam
