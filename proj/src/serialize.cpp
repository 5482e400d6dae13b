#include "trustlam/serialize.hpp"

#include "trustlam/printer.hpp"

#include <sstream>

namespace trustlam {

using nlohmann::json;

json diagnostic_to_json(const Diagnostic& d) {
    return json{{"code", d.code}, {"message", d.message}, {"line", d.line}, {"col", d.col}};
}

json trace_to_json(const Trace& tr) {
    json steps = json::array();
    for (const auto& [from, out] : tr.steps) {
        steps.push_back(json{{"rule", rule_tag_name(out.tag)},
                             {"prob", rat_to_string(out.probability)},
                             {"term", print_term(out.reduct)}});
    }
    return json{{"seed", tr.seed}, {"steps", std::move(steps)}, {"final", print_term(tr.final)}};
}

json output_dist_to_json(const OutputDist& d) {
    json entries = json::array();
    for (const auto& [v, p] : d.entries)
        entries.push_back(json{{"value", print_term(v)}, {"prob", rat_to_string(p)}});
    return json{{"entries", std::move(entries)}};
}

json curve_to_json(const ConfidenceCurve& c) {
    json points = json::array();
    for (const auto& [n, f] : c.points)
        points.push_back(json{{"n", n}, {"confidence", rat_to_string(f)}});
    return json{{"term", print_term(c.term)},
                {"target", print_dist(c.target)},
                {"points", std::move(points)}};
}

namespace {

json tree_node_to_json(const RTree& node) {
    json children = json::array();
    for (const auto& [p, child] : node.children)
        children.push_back(
            json{{"prob", rat_to_string(p)}, {"node", tree_node_to_json(*child)}});
    return json{{"term", print_term(node.term)}, {"children", std::move(children)}};
}

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void dot_rec(std::ostream& os, const RTree& node, int& next_id, int my_id) {
    os << "  n" << my_id << " [label=\"" << dot_escape(print_term(node.term)) << "\"];\n";
    for (const auto& [p, child] : node.children) {
        int child_id = next_id++;
        dot_rec(os, *child, next_id, child_id);
        os << "  n" << my_id << " -> n" << child_id << " [label=\"" << rat_to_string(p)
           << "\"];\n";
    }
}

}  // namespace

json tree_to_json(const RTree& tree) { return tree_node_to_json(tree); }

std::string tree_to_dot(const RTree& tree) {
    std::ostringstream os;
    os << "digraph reduction {\n";
    int next_id = 1;
    dot_rec(os, tree, next_id, 0);
    os << "}\n";
    return os.str();
}

}  // namespace trustlam
