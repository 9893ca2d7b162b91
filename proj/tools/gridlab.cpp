// Command line front end. Exit code 3 means bad input everywhere; the other
// codes are listed per subcommand in the README.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "gridlab/canonical.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/io.hpp"
#include "gridlab/random.hpp"
#include "gridlab/recognize.hpp"
#include "gridlab/reduction.hpp"
#include "gridlab/synth.hpp"
#include "gridlab/treebound.hpp"

using namespace gridlab;

namespace {

constexpr int kBadInput = 3;

void put(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

std::vector<bool> parse_assignment(const std::string& text, int n) {
    std::vector<bool> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "0" && item != "1") throw Error("assignment entries must be 0 or 1, got '" + item + "'");
        out.push_back(item == "1");
    }
    if (static_cast<int>(out.size()) != n) {
        throw Error("assignment has " + std::to_string(out.size()) + " values, instance has " + std::to_string(n) +
                    " variables");
    }
    return out;
}

SearchOptions budget(std::uint64_t nodes) {
    SearchOptions opts;
    if (nodes > 0) opts.node_budget = nodes;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit grid intersection graph toolkit"};
    app.require_subcommand(1);
    int code = 0;

    std::string rep_path, graph_path, out_path, roles_path, cls = "ugig", variant = "ugig5", assign, cap = "10";
    std::uint64_t budget_nodes = 0;
    bool check = false;
    int girth = 6, n = 0, triple = 0;
    std::uint64_t seed = 1;
    std::string scale = "64";
    std::string emit_path;

    auto* extract = app.add_subcommand("extract", "intersection graph of a representation");
    extract->add_option("rep", rep_path)->required();
    extract->add_option("--out", out_path);
    extract->callback([&] { put(out_path, emit_graph(extract_graph(parse_rep(read_file(rep_path))))); });

    auto* ver = app.add_subcommand("verify", "compare a representation with a graph; exit 1 on mismatch");
    ver->add_option("rep", rep_path)->required();
    ver->add_option("graph", graph_path)->required();
    ver->callback([&] {
        auto rep = parse_rep(read_file(rep_path));
        auto problems = validate(rep);
        for (const auto& p : problems) std::cout << p << '\n';
        if (!problems.empty()) {
            code = 1;
            return;
        }
        auto report = verify(rep, parse_graph(read_file(graph_path)));
        for (const auto& m : report.mismatches) std::cout << describe(m) << '\n';
        std::cout << (report.ok() ? "ok" : "mismatch") << '\n';
        code = report.ok() ? 0 : 1;
    });

    auto* canon = app.add_subcommand("canon", "canonical representation, or check one with --check");
    canon->add_option("rep", rep_path)->required();
    canon->add_flag("--check", check);
    canon->add_option("--out", out_path);
    canon->callback([&] {
        auto rep = parse_rep(read_file(rep_path));
        if (check) {
            auto c = check_canonical(rep);
            for (const auto& v : c.violations) std::cout << v << '\n';
            std::cout << (c.ok() ? "canonical" : "not canonical") << '\n';
            code = c.ok() ? 0 : 1;
        } else {
            put(out_path, emit_rep(canonicalize(rep)));
        }
    });

    auto* rec = app.add_subcommand("recognize", "decide membership; exit 0 accept, 1 reject, 2 budget exceeded");
    rec->add_option("--class", cls)->check(CLI::IsMember({"ugig", "gig"}));
    rec->add_option("graph", graph_path)->required();
    rec->add_option("--budget-nodes", budget_nodes);
    rec->add_option("--emit", emit_path);
    rec->callback([&] {
        auto g = parse_graph(read_file(graph_path));
        auto opts = budget(budget_nodes);
        auto r = cls == "ugig" ? recognize_ugig(g, opts) : recognize_gig(g, opts);
        std::cout << outcome_name(r.outcome) << " (" << r.nodes << " nodes)";
        if (!r.reason.empty()) std::cout << ": " << r.reason;
        std::cout << '\n';
        if (r.rep && !emit_path.empty()) write_file(emit_path, emit_rep(*r.rep));
        code = r.outcome == Outcome::Accept ? 0 : r.outcome == Outcome::Reject ? 1 : 2;
    });

    auto* bound = app.add_subcommand("bound", "least boundary size up to a cap; exit 1 if none, 2 budget exceeded");
    bound->add_option("graph", graph_path)->required();
    bound->add_option("--cap", cap);
    bound->add_option("--budget-nodes", budget_nodes);
    bound->add_option("--emit", emit_path);
    bound->callback([&] {
        auto g = parse_graph(read_file(graph_path));
        auto s = bound_search(g, Rational::parse(cap), budget(budget_nodes));
        if (!s.complete) {
            std::cout << "budget exceeded";
            if (s.best) std::cout << "; best so far " << s.best->size;
            std::cout << '\n';
            code = 2;
            return;
        }
        if (!s.best) {
            std::cout << "no representation with boundary size at most " << cap << '\n';
            code = 1;
            return;
        }
        std::cout << s.best->size << '\n';
        if (!emit_path.empty()) write_file(emit_path, emit_rep(s.best->rep));
    });

    auto* est = app.add_subcommand("estimate", "boundary size bounds for the level-n tree");
    est->add_option("n", n)->required();
    est->add_option("--budget-nodes", budget_nodes);
    est->add_option("--emit", emit_path);
    est->callback([&] {
        auto b = empirical_bound(n, budget(budget_nodes));
        std::cout << "lower " << b.lower << ", upper ";
        if (b.upper) {
            std::cout << *b.upper;
        } else {
            std::cout << "none";
        }
        std::cout << (b.exact ? " (exact)" : "") << ", " << b.nodes << " nodes\n";
        if (b.witness && !emit_path.empty()) write_file(emit_path, emit_rep(*b.witness));
        code = b.exact ? 0 : 2;
    });

    auto* reduce = app.add_subcommand("reduce", "build G(F); writes PREFIX.graph, PREFIX.roles and PREFIX.json");
    reduce->add_option("cnf", rep_path)->required();
    reduce->add_option("--variant", variant)->check(CLI::IsMember({"ugig5", "gig4", "string8"}));
    reduce->add_option("--girth", girth);
    reduce->add_option("--out", out_path)->required();
    reduce->callback([&] {
        auto inst = parse_instance(read_file(rep_path));
        auto gf = build_gf(inst, girth, parse_variant(variant));
        write_file(out_path + ".graph", emit_graph(gf.graph));
        write_file(out_path + ".roles", emit_roles(gf.roles));
        nlohmann::json bundle{{"variant", variant},
                              {"girth", girth},
                              {"instance", emit_instance(inst)},
                              {"graph", std::filesystem::path(out_path + ".graph").filename().string()},
                              {"roles", std::filesystem::path(out_path + ".roles").filename().string()}};
        write_file(out_path + ".json", bundle.dump(2) + "\n");
        std::cout << gf.graph.size() << " vertices, " << gf.graph.edge_count() << " edges, max degree "
                  << max_degree(gf.graph) << '\n';
    });

    auto* synth = app.add_subcommand(
        "synth", "representation of G(F) for an assignment; exit 1 if unsatisfying, 2 if it cannot be drawn");
    synth->add_option("bundle", rep_path)->required();
    synth->add_option("--assign", assign)->required();
    synth->add_option("--out", out_path);
    synth->callback([&] {
        auto bundle = nlohmann::json::parse(read_file(rep_path));
        auto inst = parse_instance(bundle.at("instance").get<std::string>());
        auto gf = build_gf(inst, bundle.at("girth").get<int>(), parse_variant(bundle.at("variant").get<std::string>()));
        auto dir = std::filesystem::path(rep_path).parent_path();
        if (bundle.contains("graph") && parse_graph(read_file((dir / bundle["graph"].get<std::string>()).string())) != gf.graph) {
            throw Error("graph file does not match the bundle's instance");
        }
        auto as = parse_assignment(assign, inst.var_count);
        try {
            put(out_path, emit_rep(synth_representation(gf, as)));
        } catch (const UnsatisfiableAssignment& e) {
            std::cerr << e.what() << '\n';
            code = 1;
        } catch (const RoutingFailure& e) {
            std::cerr << "routing failed: " << e.what() << '\n';
            code = 2;
        } catch (const UnsupportedVariant& e) {
            std::cerr << e.what() << '\n';
            code = 2;
        }
    });

    auto* treegen = app.add_subcommand("treegen", "the level-n tree");
    treegen->add_option("n", n)->required();
    treegen->add_option("--out", out_path);
    treegen->callback([&] { put(out_path, emit_graph(gen_tree(n).graph)); });

    auto* svg = app.add_subcommand("svg", "render a representation");
    svg->add_option("rep", rep_path)->required();
    svg->add_option("--roles", roles_path);
    svg->add_option("--scale", scale);
    svg->add_option("--out", out_path);
    svg->callback([&] {
        auto rep = parse_rep(read_file(rep_path));
        std::vector<Role> roles;
        if (!roles_path.empty()) roles = parse_roles(read_file(roles_path), rep.size());
        put(out_path, render_svg(rep, roles, {Rational::parse(scale)}));
    });

    auto* tmpl = app.add_subcommand("template", "clause template for an order triple; writes PREFIX.rep/.graph/.roles");
    tmpl->add_option("--triple", triple)->required()->check(CLI::Range(0, 7));
    tmpl->add_option("--girth", girth);
    tmpl->add_option("--out", out_path)->required();
    tmpl->callback([&] {
        auto t = clause_template(OrderingTriple::from_index(triple), girth);
        write_file(out_path + ".rep", emit_rep(t.rep));
        write_file(out_path + ".graph", emit_graph(t.graph));
        write_file(out_path + ".roles", emit_roles(t.roles));
    });

    auto* sample = app.add_subcommand("sample", "random valid unit arrangement");
    sample->add_option("n", n)->required();
    sample->add_option("--seed", seed);
    sample->add_option("--out", out_path);
    sample->callback([&] {
        std::mt19937_64 rng(seed);
        put(out_path, emit_rep(random_unit_arrangement(n, rng)));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return code;
}
