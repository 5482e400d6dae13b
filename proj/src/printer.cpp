#include "trustlam/printer.hpp"

#include <sstream>

namespace trustlam {

namespace {

// Type precedence: 0 = type (arrow), 1 = btype (sum), 2 = ptype (power),
// 3 = atype.
void prt_type(std::ostream& os, const TypePtr& ty, int level) {
    if (const auto* a = std::get_if<TAtom>(&ty->node)) {
        os << a->name;
        return;
    }
    if (const auto* ar = std::get_if<TArrow>(&ty->node)) {
        bool paren = level > 0;
        if (paren) os << '(';
        prt_type(os, ar->dom, 1);
        os << " -> ";
        prt_type(os, ar->cod, 0);
        if (paren) os << ')';
        return;
    }
    if (const auto* s = std::get_if<TSum>(&ty->node)) {
        bool paren = level > 1;
        if (paren) os << '(';
        for (std::size_t i = 0; i < s->summands.size(); ++i) {
            if (i) os << " + ";
            prt_type(os, s->summands[i], 2);
        }
        if (paren) os << ')';
        return;
    }
    if (const auto* p = std::get_if<TTuplePow>(&ty->node)) {
        bool paren = level > 2;
        if (paren) os << '(';
        prt_type(os, p->elem, 3);
        os << '^' << p->n;
        if (paren) os << ')';
        return;
    }
    const auto& b = std::get<TBool>(ty->node);
    os << "Bool(";
    for (std::size_t i = 0; i < b.dist.entries.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(b.dist.entries[i].first) << ' ';
        prt_type(os, b.dist.entries[i].second, 0);
    }
    os << ") @ " << rat_to_string(b.dist.epsilon);
}

// Term precedence: 0 = term (lambda), 1 = appterm, 2 = aterm.
void prt_term(std::ostream& os, const TermPtr& t, int level) {
    if (const auto* v = std::get_if<Var>(&t->node)) {
        os << v->name;
        return;
    }
    if (std::holds_alternative<TrueLit>(t->node)) {
        os << "true";
        return;
    }
    if (std::holds_alternative<FalseLit>(t->node)) {
        os << "false";
        return;
    }
    if (const auto* c = std::get_if<ConstRef>(&t->node)) {
        os << c->name;
        return;
    }
    if (const auto* a = std::get_if<Abs>(&t->node)) {
        bool paren = level > 0;
        if (paren) os << '(';
        os << '\\' << a->var << ':';
        prt_type(os, a->ann, 0);
        os << ". ";
        prt_term(os, a->body, 0);
        if (paren) os << ')';
        return;
    }
    if (const auto* ap = std::get_if<App>(&t->node)) {
        bool paren = level > 1;
        if (paren) os << '(';
        prt_term(os, ap->fn, 1);
        os << ' ';
        prt_term(os, ap->arg, 2);
        if (paren) os << ')';
        return;
    }
    if (const auto* c = std::get_if<Choice>(&t->node)) {
        os << '{';
        for (std::size_t i = 0; i < c->branches.size(); ++i) {
            if (i) os << ", ";
            os << rat_to_string(c->branches[i].first) << ' ';
            prt_term(os, c->branches[i].second, 0);
        }
        os << '}';
        return;
    }
    if (const auto* e = std::get_if<Exp>(&t->node)) {
        // exp binds its whole aterm argument; parenthesize except at term
        // level so it cannot swallow a following application argument.
        bool paren = level > 0;
        if (paren) os << '(';
        os << "exp[" << e->n << "] ";
        prt_term(os, e->body, 2);
        if (paren) os << ')';
        return;
    }
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
        os << '<';
        for (std::size_t i = 0; i < tp->elems.size(); ++i) {
            if (i) os << ", ";
            prt_term(os, tp->elems[i], 0);
        }
        os << '>';
        return;
    }
    if (const auto* pr = std::get_if<Proj>(&t->node)) {
        prt_term(os, pr->tuple, 2);
        os << '#' << pr->index;
        return;
    }
    const auto& tr = std::get<TrustTerm>(t->node);
    bool paren = level > 0;
    if (paren) os << '(';
    os << "trust ";
    prt_term(os, tr.arg, 2);
    os << " with (";
    for (std::size_t i = 0; i < tr.ann.entries.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(tr.ann.entries[i].first) << ' ';
        prt_type(os, tr.ann.entries[i].second, 0);
    }
    os << ") @ " << rat_to_string(tr.ann.epsilon);
    if (paren) os << ')';
}

}  // namespace

std::string print_term(const TermPtr& t) {
    std::ostringstream os;
    prt_term(os, t, 0);
    return os.str();
}

std::string print_type(const TypePtr& ty) {
    std::ostringstream os;
    prt_type(os, ty, 0);
    return os.str();
}

std::string print_dist_entries(const Dist& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(d.entries[i].first) << ' ';
        prt_type(os, d.entries[i].second, 0);
    }
    return os.str();
}

std::string print_dist(const Dist& d) {
    return "(" + print_dist_entries(d) + ") @ " + rat_to_string(d.epsilon);
}

std::string print_program(const Program& p) {
    std::ostringstream os;
    for (const auto& a : p.atoms) os << "type " << a << ";\n";
    for (const auto& [sub, super] : p.subtype_decls)
        os << "subtype " << sub << " <: " << super << ";\n";
    for (const auto& [name, atom] : p.const_decls) os << "const " << name << " : " << atom << ";\n";
    os << "main = " << print_term(p.main) << '\n';
    return os.str();
}

}  // namespace trustlam
