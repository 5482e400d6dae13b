// trustlam: check, run and analyze probabilistic lambda terms with trust
// annotations. All probabilities are exact fractions end to end.

#include "trustlam/analysis.hpp"
#include "trustlam/machine.hpp"
#include "trustlam/parser.hpp"
#include "trustlam/printer.hpp"
#include "trustlam/serialize.hpp"
#include "trustlam/types.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitType = 4;

struct Options {
    std::string file;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
    int n_max = 12;
    std::string eps;
    std::string format = "text";
    std::uint64_t node_limit = trustlam::kDefaultNodeLimit;
    bool trace = false;
    bool decimal = false;
    std::string dist;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        std::exit(kExitIo);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

trustlam::Program load(const Options& opt) {
    const std::string text = slurp(opt.file);
    try {
        return trustlam::parse_program(text);
    } catch (const trustlam::ParseError& e) {
        std::cerr << trustlam::diagnostic_to_json(e.diag).dump() << "\n";
        std::exit(kExitParse);
    }
}

trustlam::TypePtr typecheck(const trustlam::Program& prog, const trustlam::ProgramEnv& env) {
    try {
        return trustlam::infer(prog.main, {}, env);
    } catch (const trustlam::TypeError& e) {
        std::cerr << trustlam::diagnostic_to_json(e.diag).dump() << "\n";
        std::exit(kExitType);
    }
}

std::string show_prob(const trustlam::Rat& r, bool decimal) {
    return decimal ? trustlam::rat_to_decimal(r) : trustlam::rat_to_string(r);
}

trustlam::Rat parse_eps(const std::string& s) {
    auto r = trustlam::rat_from_string(s);
    if (!r || *r < 0 || *r > 1) {
        std::cerr << "error: --eps expects a fraction in [0,1], got '" << s << "'\n";
        std::exit(kExitParse);
    }
    return *r;
}

// The target distribution for confidence/trust: --dist if given (with --eps,
// default 0), otherwise peeled off a main of the shape trust (exp[n] t) with P.
struct TrustView {
    trustlam::TermPtr body;
    trustlam::Dist target;
    int n = 0;  // 0 when main was not a trust-of-experiment
};

TrustView trust_view(const trustlam::Program& prog, const Options& opt) {
    TrustView view;
    if (!opt.dist.empty()) {
        try {
            view.target = trustlam::parse_dist_entries(opt.dist, prog.atoms);
        } catch (const trustlam::ParseError& e) {
            std::cerr << trustlam::diagnostic_to_json(e.diag).dump() << "\n";
            std::exit(kExitParse);
        }
        view.target.epsilon = opt.eps.empty() ? trustlam::Rat(0) : parse_eps(opt.eps);
        view.body = prog.main;
        return view;
    }
    if (const auto* tr = std::get_if<trustlam::TrustTerm>(&prog.main->node)) {
        view.target = tr->ann;
        if (!opt.eps.empty()) view.target.epsilon = parse_eps(opt.eps);
        if (const auto* e = std::get_if<trustlam::Exp>(&tr->arg->node)) {
            view.body = e->body;
            view.n = e->n;
        } else {
            view.body = tr->arg;
        }
        return view;
    }
    std::cerr << "error: no target distribution: pass --dist or make main a trust term\n";
    std::exit(kExitParse);
}

int cmd_check(const Options& opt) {
    trustlam::Program prog = load(opt);
    trustlam::ProgramEnv env = trustlam::make_env(prog);
    trustlam::TypePtr ty = typecheck(prog, env);
    if (opt.format == "json")
        std::cout << nlohmann::json{{"type", trustlam::print_type(ty)}}.dump() << "\n";
    else
        std::cout << trustlam::print_type(ty) << "\n";
    return 0;
}

int cmd_run(const Options& opt) {
    trustlam::Program prog = load(opt);
    trustlam::ProgramEnv env = trustlam::make_env(prog);
    typecheck(prog, env);
    for (std::uint64_t i = 0; i < opt.trials; ++i) {
        trustlam::Trace tr = trustlam::eval(prog.main, opt.seed + i, env);
        if (opt.trace)
            std::cout << trustlam::trace_to_json(tr).dump() << "\n";
        else if (opt.format == "json")
            std::cout << nlohmann::json{{"seed", tr.seed},
                                        {"value", trustlam::print_term(tr.final)}}
                             .dump()
                      << "\n";
        else
            std::cout << trustlam::print_term(tr.final) << "\n";
    }
    return 0;
}

int cmd_dist(const Options& opt) {
    trustlam::Program prog = load(opt);
    trustlam::ProgramEnv env = trustlam::make_env(prog);
    typecheck(prog, env);
    trustlam::OutputDist d = trustlam::output_distribution(prog.main, env, opt.node_limit);
    if (opt.format == "json") {
        std::cout << trustlam::output_dist_to_json(d).dump() << "\n";
    } else {
        for (const auto& [v, p] : d.entries)
            std::cout << trustlam::print_term(v) << ": " << show_prob(p, opt.decimal) << "\n";
    }
    return 0;
}

int cmd_confidence(const Options& opt) {
    trustlam::Program prog = load(opt);
    trustlam::ProgramEnv env = trustlam::make_env(prog);
    typecheck(prog, env);
    TrustView view = trust_view(prog, opt);
    trustlam::ConfidenceCurve curve =
        trustlam::confidence_curve(view.body, view.target, opt.n_max, env);
    if (opt.format == "json") {
        std::cout << trustlam::curve_to_json(curve).dump() << "\n";
    } else {
        for (const auto& [n, f] : curve.points)
            std::cout << "f(" << n << ") = " << show_prob(f, opt.decimal) << "\n";
    }
    return 0;
}

int cmd_trust(const Options& opt) {
    trustlam::Program prog = load(opt);
    trustlam::ProgramEnv env = trustlam::make_env(prog);
    typecheck(prog, env);
    TrustView view = trust_view(prog, opt);
    const int n = view.n > 0 ? view.n : opt.n_max;
    trustlam::TermPtr probe =
        trustlam::mk_trust(trustlam::mk_exp(n, view.body), view.target);
    trustlam::infer(probe, {}, env);  // the synthesized probe must type-check too
    trustlam::Trace tr = trustlam::eval(probe, opt.seed, env);
    trustlam::Rat exact = trustlam::confidence(view.body, view.target, n, env);
    if (opt.format == "json") {
        std::cout << nlohmann::json{{"seed", tr.seed},
                                    {"n", n},
                                    {"verdict", trustlam::print_term(tr.final)},
                                    {"pr_true", trustlam::rat_to_string(exact)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "verdict (seed " << tr.seed << "): " << trustlam::print_term(tr.final)
                  << "\n";
        std::cout << "Pr(true) at n=" << n << ": " << show_prob(exact, opt.decimal) << "\n";
    }
    return 0;
}

int cmd_tree(const Options& opt) {
    trustlam::Program prog = load(opt);
    trustlam::ProgramEnv env = trustlam::make_env(prog);
    typecheck(prog, env);
    trustlam::RTree tree = trustlam::build_tree(prog.main, env, opt.node_limit);
    if (opt.format == "json") {
        std::cout << trustlam::tree_to_json(tree).dump() << "\n";
    } else if (opt.format == "dot") {
        std::cout << trustlam::tree_to_dot(tree);
    } else {
        std::function<void(const trustlam::RTree&, int)> show = [&](const trustlam::RTree& node,
                                                                    int depth) {
            std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ')
                      << trustlam::print_term(node.term) << "\n";
            for (const auto& [p, child] : node.children) {
                std::cout << std::string(static_cast<std::size_t>(depth) * 2 + 2, ' ') << "["
                          << trustlam::rat_to_string(p) << "]\n";
                show(*child, depth + 2);
            }
        };
        show(tree, 0);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trust-annotated probabilistic lambda calculus toolkit"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env_limit = std::getenv("TRUSTLAM_NODE_LIMIT")) {
        try {
            opt.node_limit = std::stoull(env_limit);
        } catch (...) {
            std::cerr << "error: TRUSTLAM_NODE_LIMIT is not a number\n";
            return kExitIo;
        }
    }

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "program file")->required();
        sub->add_option("--format", opt.format, "text|json|dot")
            ->check(CLI::IsMember({"text", "json", "dot"}));
        sub->add_flag("--decimal", opt.decimal, "display probabilities as decimals");
        return sub;
    };

    CLI::App* check = add_common(app.add_subcommand("check", "type-check and print main's type"));

    CLI::App* run = add_common(app.add_subcommand("run", "evaluate main with a seeded RNG"));
    run->add_option("--seed", opt.seed, "RNG seed (default 0)");
    run->add_option("--trials", opt.trials, "independent runs with seeds seed, seed+1, ...")
        ->check(CLI::PositiveNumber);
    run->add_flag("--trace", opt.trace, "emit the full reduction trace as JSON");

    CLI::App* dist =
        add_common(app.add_subcommand("dist", "exact output distribution of main"));
    dist->add_option("--node-limit", opt.node_limit, "reduction-tree node cap");

    CLI::App* conf = add_common(
        app.add_subcommand("confidence", "exact confidence curve f(1..n-max)"));
    conf->add_option("--n-max", opt.n_max, "largest experiment size")->check(CLI::PositiveNumber);
    conf->add_option("--eps", opt.eps, "tolerance threshold (fraction)");
    conf->add_option("--dist", opt.dist, "target distribution 'p1 T1, p2 T2, ...'");

    CLI::App* trust = add_common(app.add_subcommand(
        "trust", "one sampled trust verdict plus the exact Pr(true) at the same n"));
    trust->add_option("--seed", opt.seed, "RNG seed (default 0)");
    trust->add_option("--n-max", opt.n_max, "experiment size when main is not an experiment")
        ->check(CLI::PositiveNumber);
    trust->add_option("--eps", opt.eps, "tolerance threshold (fraction)");
    trust->add_option("--dist", opt.dist, "target distribution 'p1 T1, p2 T2, ...'");

    CLI::App* tree = add_common(app.add_subcommand("tree", "full reduction tree"));
    tree->add_option("--node-limit", opt.node_limit, "reduction-tree node cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(opt);
        if (run->parsed()) return cmd_run(opt);
        if (dist->parsed()) return cmd_dist(opt);
        if (conf->parsed()) return cmd_confidence(opt);
        if (trust->parsed()) return cmd_trust(opt);
        if (tree->parsed()) return cmd_tree(opt);
    } catch (const trustlam::TypeError& e) {
        std::cerr << trustlam::diagnostic_to_json(e.diag).dump() << "\n";
        return kExitType;
    } catch (const trustlam::EvalError& e) {
        std::cerr << trustlam::diagnostic_to_json(e.diag).dump() << "\n";
        return 1;
    }
    return 0;
}
