#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trustlam/machine.hpp"
#include "trustlam/parser.hpp"
#include "trustlam/printer.hpp"
#include "trustlam/syntax.hpp"

#include "gen.hpp"

#include <map>

using namespace trustlam;

namespace {

const ProgramEnv& env() {
    static ProgramEnv e = testgen::make_test_env();
    return e;
}

// die universe with even/odd refinements, as in the worked examples
Program die_program(const std::string& main_src) {
    return parse_program(
        "type One; type Two; type Three; type Four; type Five; type Six;\n"
        "type Even; type Odd;\n"
        "subtype One <: Odd; subtype Two <: Even; subtype Three <: Odd;\n"
        "subtype Four <: Even; subtype Five <: Odd; subtype Six <: Even;\n"
        "const one:One; const two:Two; const three:Three;\n"
        "const four:Four; const five:Five; const six:Six;\n"
        "main = " + main_src);
}

Dist uniform_sixths() {
    Dist d;
    for (const char* n : {"One", "Two", "Three", "Four", "Five", "Six"})
        d.entries.emplace_back(Rat(1, 6), mk_atom(n));
    d.epsilon = 0;
    return d;
}

TypePtr H() { return mk_atom("A"); }
TypePtr T() { return mk_atom("B"); }

}  // namespace

TEST_CASE("rng: determinism and uniform_below bounds") {
    RngState r1(42), r2(42);
    for (int i = 0; i < 100; ++i) CHECK(r1.next_u64() == r2.next_u64());
    RngState r3(7);
    for (int i = 0; i < 500; ++i) {
        BigInt v = r3.uniform_below(6);
        CHECK(v >= 0);
        CHECK(v < 6);
    }
    BigInt huge = BigInt(1) << 200;
    RngState r4(9);
    for (int i = 0; i < 20; ++i) CHECK(r4.uniform_below(huge) < huge);
    CHECK(RngState(0).uniform_below(1) == 0);
}

TEST_CASE("sample_choice: exact buckets, plausible frequencies") {
    std::vector<Rat> w = {Rat(1, 6), Rat(1, 3), Rat(1, 2)};
    RngState rng(123);
    std::map<std::size_t, int> counts;
    const int trials = 60000;
    for (int i = 0; i < trials; ++i) ++counts[sample_choice(w, rng)];
    CHECK(counts[0] > trials / 6 - 1500);
    CHECK(counts[0] < trials / 6 + 1500);
    CHECK(counts[2] > trials / 2 - 1500);
    CHECK(counts[2] < trials / 2 + 1500);
    // same seed, same picks
    RngState a(5), b(5);
    for (int i = 0; i < 200; ++i) CHECK(sample_choice(w, a) == sample_choice(w, b));
}

TEST_CASE("tv_distance: identical, partial, disjoint, duplicate-mass") {
    Dist half{{{Rat(1, 2), H()}, {Rat(1, 2), T()}}, Rat(0)};
    Dist just_h{{{Rat(1), H()}}, Rat(0)};
    Dist just_x{{{Rat(1), mk_atom("D")}}, Rat(0)};
    CHECK(tv_distance(half, half, env().sub) == Rat(0));
    CHECK(tv_distance(half, just_h, env().sub) == Rat(1, 2));
    CHECK(tv_distance(just_h, just_x, env().sub) == Rat(1));
    Dist dup{{{Rat(1, 4), H()}, {Rat(1, 4), H()}, {Rat(1, 2), T()}}, Rat(0)};
    CHECK(tv_distance(dup, half, env().sub) == Rat(0));
}

TEST_CASE("empirical_dist: first-match counting in declaration order") {
    Program p = die_program("one");
    ProgramEnv e = make_env(p);

    auto c = [&](const char* n) { return mk_const(n); };
    std::vector<TermPtr> rolls = {c("two"), c("one"),  c("five"), c("four"), c("six"),
                                  c("three"), c("four"), c("four"), c("one"), c("five")};
    Dist even_odd{{{Rat(1, 2), mk_atom("Even")}, {Rat(1, 2), mk_atom("Odd")}}, Rat(0)};
    auto emp = empirical_dist(rolls, even_odd, e);
    REQUIRE(emp.has_value());
    CHECK(emp->entries[0].first == Rat(1, 2));
    CHECK(emp->entries[1].first == Rat(1, 2));

    std::vector<TermPtr> hs = {c("one"), c("one"), c("one")};
    Dist just_one{{{Rat(1), mk_atom("One")}}, Rat(0)};
    auto emp2 = empirical_dist(hs, just_one, e);
    REQUIRE(emp2.has_value());
    CHECK(emp2->entries[0].first == Rat(1));

    std::vector<TermPtr> four_rolls = {c("two"), c("five"), c("six"), c("three")};
    auto emp3 = empirical_dist(four_rolls, uniform_sixths(), e);
    REQUIRE(emp3.has_value());
    CHECK(emp3->entries[0].first == Rat(0));      // One
    CHECK(emp3->entries[1].first == Rat(1, 4));   // Two
    CHECK(emp3->entries[2].first == Rat(1, 4));   // Three
    CHECK(emp3->entries[3].first == Rat(0));      // Four

    // a value matching no entry yields the no-match marker
    Dist only_even{{{Rat(1), mk_atom("Even")}}, Rat(0)};
    CHECK_FALSE(empirical_dist(four_rolls, only_even, e).has_value());
}

TEST_CASE("trust_check: worked verdicts") {
    Program p = die_program("one");
    ProgramEnv e = make_env(p);
    auto c = [&](const char* n) { return mk_const(n); };

    TermPtr v1 = trust_check({c("two"), c("five"), c("six"), c("three")}, uniform_sixths(), e);
    CHECK(std::holds_alternative<FalseLit>(v1->node));

    Dist even_odd{{{Rat(1, 2), mk_atom("Even")}, {Rat(1, 2), mk_atom("Odd")}}, Rat(0)};
    TermPtr v2 = trust_check({c("two"), c("one"), c("five"), c("four"), c("six"), c("three"),
                              c("four"), c("four"), c("one"), c("five")},
                             even_odd, e);
    CHECK(std::holds_alternative<TrueLit>(v2->node));

    Dist half{{{Rat(1, 2), mk_atom("One")}, {Rat(1, 2), mk_atom("Two")}}, Rat(1, 2)};
    TermPtr v3 = trust_check({c("one"), c("one")}, half, e);
    CHECK(std::holds_alternative<TrueLit>(v3->node));  // TV = 1/2 <= 1/2
}

TEST_CASE("step: beta is call-by-name") {
    // (\x:A. <x, x>) {1/2 a, 1/2 b} substitutes the unevaluated choice
    TermPtr choice = mk_choice({{Rat(1, 2), mk_const("a")}, {Rat(1, 2), mk_const("b")}});
    TermPtr t = mk_app(mk_abs("x", mk_sum({mk_atom("A"), mk_atom("B")}),
                              mk_tuple({mk_var("x"), mk_var("x")})),
                       choice);
    auto alts = step_alternatives(t, env());
    REQUIRE(alts.size() == 1);
    CHECK(alts[0].tag == RuleTag::Beta);
    CHECK(alts[0].probability == Rat(1));
    CHECK(alpha_eq(alts[0].reduct, mk_tuple({choice, choice})));
}

TEST_CASE("step: experiment copies the body verbatim") {
    TermPtr coin = mk_choice({{Rat(1, 2), mk_const("a")}, {Rat(1, 2), mk_const("b")}});
    auto alts = step_alternatives(mk_exp(3, coin), env());
    REQUIRE(alts.size() == 1);
    CHECK(alts[0].tag == RuleTag::Exp);
    CHECK(alpha_eq(alts[0].reduct, mk_tuple({coin, coin, coin})));
    // so the copies can land on different faces
    bool saw_mixed = false;
    for (std::uint64_t s = 0; s < 50 && !saw_mixed; ++s) {
        Trace tr = eval(mk_exp(2, coin), s, env());
        const auto* tp = std::get_if<TupleTerm>(&tr.final->node);
        REQUIRE(tp);
        saw_mixed = !alpha_eq(tp->elems[0], tp->elems[1]);
    }
    CHECK(saw_mixed);
}

TEST_CASE("step: projection fires on literal tuples immediately") {
    TermPtr coin = mk_choice({{Rat(1, 2), mk_const("a")}, {Rat(1, 2), mk_const("b")}});
    TermPtr t = mk_proj(mk_tuple({mk_const("a"), coin}), 1);
    auto alts = step_alternatives(t, env());
    REQUIRE(alts.size() == 1);
    CHECK(alts[0].tag == RuleTag::Proj);
    CHECK(alpha_eq(alts[0].reduct, mk_const("a")));
}

TEST_CASE("step: choice exposes all alternatives with exact weights") {
    TermPtr t = mk_choice({{Rat(1, 6), mk_const("a")}, {Rat(5, 6), mk_const("b")}});
    auto alts = step_alternatives(t, env());
    REQUIRE(alts.size() == 2);
    CHECK(alts[0].probability == Rat(1, 6));
    CHECK(alts[1].probability == Rat(5, 6));
    Rat total = 0;
    for (const auto& a : alts) total += a.probability;
    CHECK(total == Rat(1));
}

TEST_CASE("step: trust evaluates its subject then checks") {
    Dist ann{{{Rat(1), mk_atom("A")}}, Rat(0)};
    TermPtr t = mk_trust(mk_exp(2, mk_const("a")), ann);
    Trace tr = eval(t, 0, env());
    CHECK(std::holds_alternative<TrueLit>(tr.final->node));
    CHECK(tr.steps.back().second.tag == RuleTag::TrustTrue);
}

TEST_CASE("eval: determinism bit for bit") {
    Program p = die_program("exp[5] {1/6 one, 1/6 two, 1/6 three, 1/6 four, 1/6 five, 1/6 six}");
    ProgramEnv e = make_env(p);
    Trace t1 = eval(p.main, 99, e);
    Trace t2 = eval(p.main, 99, e);
    REQUIRE(t1.steps.size() == t2.steps.size());
    CHECK(print_term(t1.final) == print_term(t2.final));
    for (std::size_t i = 0; i < t1.steps.size(); ++i)
        CHECK(print_term(t1.steps[i].second.reduct) == print_term(t2.steps[i].second.reduct));
}

TEST_CASE("eval: stuck ill-typed terms raise EvalError") {
    CHECK_THROWS_AS(eval(mk_app(mk_true(), mk_false()), 0, env()), EvalError);
    CHECK_THROWS_AS(eval(mk_var("x"), 0, env()), EvalError);
    CHECK_THROWS_AS(eval(mk_proj(mk_const("a"), 1), 0, env()), EvalError);
}

TEST_CASE("eval: fuel exhaustion is an error, not a silent stop") {
    TermPtr coin = mk_choice({{Rat(1, 2), mk_const("a")}, {Rat(1, 2), mk_const("b")}});
    CHECK_THROWS_AS(eval(mk_exp(3, coin), 0, env(), 1), EvalError);
}

TEST_CASE("eval: generated well-typed terms always reach a value (property)") {
    ProgramEnv e = env();
    testgen::TermGen g(41, e);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = g.closed(4);
        Trace tr = eval(t, static_cast<std::uint64_t>(i), e);
        CHECK(is_value(tr.final));
    }
}
