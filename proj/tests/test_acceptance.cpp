// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.
// Invoked as: test_acceptance <path-to-programs-dir>
#include "trustlam/analysis.hpp"
#include "trustlam/machine.hpp"
#include "trustlam/parser.hpp"
#include "trustlam/printer.hpp"
#include "trustlam/syntax.hpp"
#include "trustlam/types.hpp"

#include "gen.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace trustlam;

namespace {

std::string g_programs = "../programs";
int g_failures = 0;

void run_criterion(int idx, const std::string& name, const std::function<std::string()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    if (detail.rfind("FAIL", 0) == 0) ok = false;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %2d: %s%s%s  [%.2fs]\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str(), secs);
    if (!ok) ++g_failures;
}

Program load_program(const std::string& name) {
    std::ifstream in(g_programs + "/" + name);
    if (!in) throw std::runtime_error("cannot read " + g_programs + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

std::string check_eq(const Rat& got, const Rat& want, const std::string& what) {
    if (got == want) return "";
    return "FAIL: " + what + ": got " + rat_to_string(got) + ", want " + rat_to_string(want);
}

Program die_universe(const std::string& main_src) {
    return parse_program(
        "type One; type Two; type Three; type Four; type Five; type Six;\n"
        "type Even; type Odd;\n"
        "subtype One <: Odd; subtype Two <: Even; subtype Three <: Odd;\n"
        "subtype Four <: Even; subtype Five <: Odd; subtype Six <: Even;\n"
        "const one:One; const two:Two; const three:Three;\n"
        "const four:Four; const five:Five; const six:Six;\n"
        "main = " + main_src);
}

// ---- criterion bodies -------------------------------------------------------

std::string c1_confidence_values() {
    Program p = parse_program("type H; type T; const h:H; const t:T; main = {1/2 h, 1/2 t}");
    ProgramEnv e = make_env(p);
    Dist target{{{Rat(1, 2), mk_atom("H")}, {Rat(1, 2), mk_atom("T")}}, Rat(1, 4)};
    if (auto s = check_eq(confidence(p.main, target, 4, e), Rat(14, 16), "f(4)"); !s.empty())
        return s;
    if (auto s = check_eq(confidence(p.main, target, 8, e), Rat(238, 256), "f(8)"); !s.empty())
        return s;
    if (auto s = check_eq(confidence(p.main, target, 12, e), Rat(3938, 4096), "f(12)");
        !s.empty())
        return s;
    return "f(4)=14/16, f(8)=238/256, f(12)=3938/4096 exactly";
}

std::string c2_composite_distribution() {
    Program p = load_program("composite.lam");
    ProgramEnv e = make_env(p);
    OutputDist d = output_distribution(p.main, e);
    if (auto s = check_eq(output_prob(d, mk_const("h")), Rat(1, 2), "Pr(h)"); !s.empty())
        return s;
    if (auto s = check_eq(output_prob(d, mk_const("t")), Rat(1, 2), "Pr(t)"); !s.empty())
        return s;
    return "Pr(h)=Pr(t)=1/2 exactly";
}

std::string c3_trust_verdicts() {
    Program p = die_universe("one");
    ProgramEnv e = make_env(p);
    auto c = [](const char* n) { return mk_const(n); };
    Dist sixths;
    for (const char* n : {"One", "Two", "Three", "Four", "Five", "Six"})
        sixths.entries.emplace_back(Rat(1, 6), mk_atom(n));
    sixths.epsilon = 0;
    TermPtr v1 = trust_check({c("two"), c("five"), c("six"), c("three")}, sixths, e);
    if (!std::holds_alternative<FalseLit>(v1->node))
        return "FAIL: <2,5,6,3> vs uniform sixths @ 0 should be false";
    Dist even_odd{{{Rat(1, 2), mk_atom("Even")}, {Rat(1, 2), mk_atom("Odd")}}, Rat(0)};
    TermPtr v2 = trust_check({c("two"), c("one"), c("five"), c("four"), c("six"), c("three"),
                              c("four"), c("four"), c("one"), c("five")},
                             even_odd, e);
    if (!std::holds_alternative<TrueLit>(v2->node))
        return "FAIL: ten-roll even/odd sample @ 0 should be true";
    return "false and true verdicts as worked out";
}

std::string c4_oracle_equivalence() {
    ProgramEnv e = testgen::make_test_env();
    testgen::TermGen g(401, e);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = g.simple_choice_term(2);
        Dist target = g.random_target();
        int n = g.pick(1, 4);
        Rat fast = confidence(t, target, n, e);
        Rat slow = confidence_via_tree(t, target, n, e);
        if (fast != slow)
            return "FAIL: case " + std::to_string(i) + " (n=" + std::to_string(n) +
                   "): shortcut " + rat_to_string(fast) + " vs tree " + rat_to_string(slow) +
                   " for " + print_term(t);
    }
    return "200/200 generated cases agree exactly";
}

// Criteria 5 and 6 share one corpus walk.
struct CorpusResult {
    std::string failure;
    std::uint64_t max_steps = 0;
};

CorpusResult walk_corpus() {
    CorpusResult res;
    ProgramEnv e = testgen::make_test_env();
    testgen::TermGen g(501, e);
    std::mt19937_64 path_rng(502);
    const std::uint64_t fuel = 1000000;
    for (int i = 0; i < 1000; ++i) {
        TermPtr t = g.closed(g.pick(1, 8));
        TypePtr ty = infer(t, {}, e);
        TermPtr cur = t;
        TypePtr cur_ty = ty;
        std::uint64_t steps = 0;
        while (!is_value(cur)) {
            if (++steps > fuel) {
                res.failure = "FAIL: term " + std::to_string(i) + " exceeded fuel";
                return res;
            }
            std::vector<StepOutcome> alts;
            try {
                alts = step_alternatives(cur, e);
            } catch (const EvalError& err) {
                res.failure = "FAIL: progress violation on term " + std::to_string(i) + ": " +
                              err.what();
                return res;
            }
            if (alts.empty()) {
                res.failure = "FAIL: non-value with no step on term " + std::to_string(i);
                return res;
            }
            // subject reduction across every alternative of this step
            std::vector<TypePtr> alt_tys;
            for (const auto& alt : alts) {
                TypePtr rty = infer(alt.reduct, {}, e);
                if (!subtype(rty, cur_ty, e.sub)) {
                    res.failure = "FAIL: subject reduction broken on term " + std::to_string(i) +
                                  ": " + print_type(rty) + " not <: " + print_type(cur_ty) +
                                  " after " + rule_tag_name(alt.tag) + " from " + print_term(cur);
                    return res;
                }
                alt_tys.push_back(rty);
            }
            std::size_t pick =
                std::uniform_int_distribution<std::size_t>(0, alts.size() - 1)(path_rng);
            cur = alts[pick].reduct;
            cur_ty = alt_tys[pick];
        }
        if (steps > res.max_steps) res.max_steps = steps;
    }
    return res;
}

CorpusResult g_corpus;

std::string c5_subject_reduction() {
    g_corpus = walk_corpus();
    if (!g_corpus.failure.empty()) return g_corpus.failure;
    return "1000 terms: every alternative preserves the type up to <:, every non-value steps";
}

std::string c6_termination() {
    if (!g_corpus.failure.empty()) return "FAIL: corpus walk failed upstream";
    if (g_corpus.max_steps > 1000000) return "FAIL: fuel exceeded";
    return "max observed steps on the corpus: " + std::to_string(g_corpus.max_steps);
}

std::string c7_monte_carlo() {
    const char* files[] = {"coin.lam", "biased_coin.lam", "die.lam", "composite.lam",
                           "conditional.lam"};
    const int runs = 100000;
    for (const char* f : files) {
        Program p = load_program(f);
        ProgramEnv e = make_env(p);
        OutputDist exact = output_distribution(p.main, e);
        std::vector<long> counts(exact.entries.size(), 0);
        for (int s = 0; s < runs; ++s) {
            Trace tr = eval(p.main, static_cast<std::uint64_t>(s), e);
            bool matched = false;
            for (std::size_t j = 0; j < exact.entries.size(); ++j)
                if (alpha_eq(tr.final, exact.entries[j].first)) {
                    ++counts[j];
                    matched = true;
                    break;
                }
            if (!matched)
                return std::string("FAIL: ") + f + ": sampled value outside exact support: " +
                       print_term(tr.final);
        }
        Rat tv = 0;
        for (std::size_t j = 0; j < exact.entries.size(); ++j) {
            Rat diff = rat_abs(Rat(counts[j], runs) - exact.entries[j].second);
            if (diff > tv) tv = diff;
        }
        if (tv > Rat(1, 100))
            return std::string("FAIL: ") + f + ": empirical TV " + rat_to_string(tv) + " > 1/100";
    }
    return "5 programs x 100000 seeded runs, all within TV 1/100 of the exact distribution";
}

// Independent oracle for criterion 8: a plain binomial tail sum, sharing no
// code with confidence() beyond the rational type.
Rat binomial_acceptance(const Rat& p_heads, int n, const Rat& eps) {
    std::vector<BigInt> fact(static_cast<std::size_t>(n) + 1);
    fact[0] = 1;
    for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[i - 1] * i;
    Rat total = 0;
    const Rat p_tails = Rat(1) - p_heads;
    for (int k = 0; k <= n; ++k) {
        if (rat_abs(Rat(k, n) - Rat(1, 2)) > eps) continue;
        Rat weight = 1;
        for (int i = 0; i < k; ++i) weight *= p_heads;
        for (int i = 0; i < n - k; ++i) weight *= p_tails;
        total += Rat(fact[static_cast<std::size_t>(n)] /
                     (fact[static_cast<std::size_t>(k)] * fact[static_cast<std::size_t>(n - k)])) *
                 weight;
    }
    return total;
}

std::string c8_desk_scale_trust() {
    Program fair = parse_program("type H; type T; const h:H; const t:T; main = {1/2 h, 1/2 t}");
    Program biased = parse_program("type H; type T; const h:H; const t:T; main = {2/3 h, 1/3 t}");
    ProgramEnv e = make_env(fair);
    Dist target{{{Rat(1, 2), mk_atom("H")}, {Rat(1, 2), mk_atom("T")}}, Rat(1, 20)};
    Rat f_fair = confidence(fair.main, target, 1000, e);
    Rat f_biased = confidence(biased.main, target, 1000, e);
    if (auto s = check_eq(f_fair, binomial_acceptance(Rat(1, 2), 1000, Rat(1, 20)),
                          "fair f(1000) vs binomial oracle");
        !s.empty())
        return s;
    if (auto s = check_eq(f_biased, binomial_acceptance(Rat(2, 3), 1000, Rat(1, 20)),
                          "biased f(1000) vs binomial oracle");
        !s.empty())
        return s;
    if (f_fair < Rat(99, 100))
        return "FAIL: fair coin f(1000) = " + rat_to_decimal(f_fair) + " < 0.99";
    if (f_biased > Rat(1, 100))
        return "FAIL: biased coin f(1000) = " + rat_to_decimal(f_biased) + " > 0.01";
    return "fair f(1000) ~ " + rat_to_decimal(f_fair) + " >= 0.99, biased f(1000) ~ " +
           rat_to_decimal(f_biased) + " <= 0.01, both equal the binomial oracle";
}

std::string c9_conditional_proposition() {
    ProgramEnv e = testgen::make_test_env();
    testgen::TermGen g(901, e);
    const char* pool[] = {"a", "b", "c", "d"};
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const int k = g.pick(2, 3);
        // distinct chooser outcomes so Pr(first = t_i) is exactly the weight
        std::vector<int> idx = {0, 1, 2, 3};
        for (int j = 3; j > 0; --j) std::swap(idx[static_cast<std::size_t>(j)],
                                              idx[static_cast<std::size_t>(g.pick(0, j))]);
        auto ws = g.weights(k);
        std::vector<std::pair<Rat, TermPtr>> chooser_branches;
        std::vector<TermPtr> branches;
        for (int j = 0; j < k; ++j) {
            chooser_branches.emplace_back(ws[static_cast<std::size_t>(j)],
                                          mk_const(pool[idx[static_cast<std::size_t>(j)]]));
            branches.push_back(g.simple_choice_term(2));
        }
        TermPtr chooser = mk_choice(chooser_branches);
        TermPtr cond = make_conditional(branches, chooser, e);
        OutputDist cond_dist = output_distribution(cond, e);
        for (int j = 0; j < k; ++j) {
            OutputDist branch_dist = output_distribution(branches[static_cast<std::size_t>(j)], e);
            for (const auto& [u, pu] : branch_dist.entries) {
                Rat lhs = conditional_prob(u, static_cast<std::size_t>(j), branches, chooser, e) *
                          ws[static_cast<std::size_t>(j)];
                Rat rhs = output_prob(
                    cond_dist,
                    mk_tuple({chooser_branches[static_cast<std::size_t>(j)].second, u}));
                if (lhs != rhs)
                    return "FAIL: construct " + std::to_string(i) + ", branch " +
                           std::to_string(j) + ", output " + print_term(u) + ": " +
                           rat_to_string(lhs) + " != " + rat_to_string(rhs);
                ++checked;
            }
        }
    }
    return "100 constructs, " + std::to_string(checked) + " identities, all exact";
}

std::string c10_conjunction_disjunction() {
    ProgramEnv e = testgen::make_test_env();
    testgen::TermGen g(1001, e);
    for (int i = 0; i < 50; ++i) {
        TermPtr t = g.simple_choice_term(2);
        TermPtr s = g.simple_choice_term(2);
        OutputDist dt = output_distribution(t, e);
        OutputDist ds = output_distribution(s, e);
        for (const auto& [u, pu] : dt.entries)
            for (const auto& [v, pv] : ds.entries)
                if (joint_prob(t, s, u, v, e) != pu * pv)
                    return "FAIL: joint factorization broken on pair " + std::to_string(i);
    }
    Program die = die_universe("{1/6 one, 1/6 two, 1/6 three, 1/6 four, 1/6 five, 1/6 six}");
    ProgramEnv de = make_env(die);
    Rat disj = disjunction_prob(die.main, {mk_atom("One"), mk_atom("Two")}, de);
    if (auto s = check_eq(disj, Rat(1, 3), "Pr(die in {1,2})"); !s.empty()) return s;
    return "50 joint factorizations exact; Pr(die in {1,2}) = 1/3 exactly";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_programs = argv[1];
    run_criterion(1, "worked confidence values", c1_confidence_values);
    run_criterion(2, "composite-term output distribution", c2_composite_distribution);
    run_criterion(3, "worked trust verdicts", c3_trust_verdicts);
    run_criterion(4, "shortcut vs reduction-tree confidence oracle", c4_oracle_equivalence);
    run_criterion(5, "subject reduction and progress on generated corpus", c5_subject_reduction);
    run_criterion(6, "termination within fuel on the same corpus", c6_termination);
    run_criterion(7, "Monte-Carlo frequencies vs exact distributions", c7_monte_carlo);
    run_criterion(8, "desk-scale increasing trust at n=1000", c8_desk_scale_trust);
    run_criterion(9, "conditional-probability identities", c9_conditional_proposition);
    run_criterion(10, "conjunction/disjunction probability laws", c10_conjunction_disjunction);
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
