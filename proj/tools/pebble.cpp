// Command-line surface for the pebbling-bound toolkit: catalog access,
// brute-force oracle runs, MILP model generation with optional external
// solver invocation, certificate verification and conversion, DOT export.
//
// Exit codes: 0 success/valid, 1 invalid certificate, 2 usage error,
// 3 external solver failure, 4 budget or cap exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/catalog.hpp"
#include "pebbling/certificate_io.hpp"
#include "pebbling/dot.hpp"
#include "pebbling/heuristic.hpp"
#include "pebbling/lp_format.hpp"
#include "pebbling/milp.hpp"
#include "pebbling/oracle.hpp"
#include "pebbling/pipeline.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/solution.hpp"

namespace fs = std::filesystem;
using namespace pebbling;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitBudget = 4;

GraphRef load_graph(const std::string& spec) {
    return std::make_shared<const Graph>(resolve_graph_spec(spec));
}

/// Experiment defaults: 6 strategies on the Bruhat graph, 10 for the
/// symmetric variant at a diagonal Lemke-square root, 8 otherwise.
int default_strategy_count(const std::string& spec, Variant variant, const std::string& root) {
    if (spec == "bruhat4")
        return 6;
    if (variant == Variant::STS && spec.find("lemke") == 0 &&
        spec.find("-square") != std::string::npos) {
        try {
            ProductVertex pv = parse_product_vertex(root);
            if (pv.left == pv.right)
                return 10;
        } catch (const Error&) {
        }
    }
    return 8;
}

std::string config_summary(const Configuration& c) {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < c.graph()->order(); ++i)
        if (c.count(i) > 0) {
            os << (any ? " " : "") << c.graph()->label(i) << ":" << c.count(i);
            any = true;
        }
    if (!any)
        os << "(empty)";
    return os.str();
}

struct CommonModelArgs {
    std::string graph_spec;
    std::string root;
    std::vector<std::string> roots;
    std::string roots_spec;
    int strategies = 0; // 0: resolve default
    int ell = 16;
    std::string variant_name = "ts";

    Variant variant() const { return variant_name == "sts" ? Variant::STS : Variant::TS; }
    ModelParams params(const std::string& chosen_root) const {
        ModelParams p;
        p.variant = variant();
        p.ell = ell;
        p.strategies = strategies > 0 ? strategies
                                      : default_strategy_count(graph_spec, p.variant, chosen_root);
        return p;
    }
};

int cmd_catalog(const std::string& key) {
    Graph g = catalog(key);
    write_graph_text(g, std::cout);
    return kExitValid;
}

int cmd_oracle(const std::string& spec, const std::string& root, std::int64_t budget,
               std::int64_t cap) {
    GraphRef g = load_graph(spec);
    OracleOptions opts;
    opts.state_budget = budget;
    std::vector<std::string> roots =
        root.empty() ? g->labels() : std::vector<std::string>{root};
    std::int64_t best = 0;
    for (const auto& r : roots) {
        std::int64_t use_cap = cap > 0 ? cap : default_size_cap(*g, r);
        OracleReport rep = max_unsolvable(g, r, use_cap, opts);
        best = std::max(best, rep.rooted_pebbling_number);
        std::cout << "pi(" << g->name() << ", " << r << ") = " << rep.rooted_pebbling_number
                  << "  max-unsolvable " << rep.max_unsolvable_size << "  witness "
                  << config_summary(rep.witness) << "\n";
    }
    if (roots.size() > 1)
        std::cout << "pi(" << g->name() << ") = " << best << "\n";
    return kExitValid;
}

int cmd_verify(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("verify: cannot open '" + path + "'");
    CertificateFile cf = read_certificate_text(in);
    Graph g = resolve_certificate_graph(cf.graph_spec, fs::path(path).parent_path());
    auto gref = std::make_shared<const Graph>(std::move(g));
    CertificateBundle bundle = bundle_from_certificate(cf, gref);
    std::cout << "certificate: " << path << "\n";
    VerifyReport rep = verify_bundle(bundle);
    print_verify_report(rep, bundle, std::cout);
    return rep.valid ? kExitValid : kExitInvalid;
}

int cmd_convert(const std::string& in_path, const std::string& out_path, int max_exponent) {
    std::ifstream in(in_path);
    if (!in)
        throw Error("convert: cannot open '" + in_path + "'");
    CertificateFile cf = read_certificate_text(in);
    Graph g = resolve_certificate_graph(cf.graph_spec, fs::path(in_path).parent_path());
    auto gref = std::make_shared<const Graph>(std::move(g));
    CertificateBundle bundle = bundle_from_certificate_rationalized(cf, gref, max_exponent);
    auto issues = conversion_issues(bundle);
    if (!issues.empty()) {
        std::cerr << "convert: rationalized weights do not form valid strategies:\n";
        for (const auto& i : issues)
            std::cerr << "  " << i << "\n";
        return kExitInvalid;
    }
    std::ofstream out(out_path);
    if (!out)
        throw Error("convert: cannot write '" + out_path + "'");
    write_certificate_text(bundle, cf.graph_spec, out);
    std::cout << "wrote " << out_path << " (" << bundle.strategies.size() << " trees, exact)\n";
    return kExitValid;
}

int cmd_dot(const std::string& cert_path, const std::string& out_dir) {
    std::ifstream in(cert_path);
    if (!in)
        throw Error("dot: cannot open '" + cert_path + "'");
    CertificateFile cf = read_certificate_text(in);
    Graph g = resolve_certificate_graph(cf.graph_spec, fs::path(cert_path).parent_path());
    auto gref = std::make_shared<const Graph>(std::move(g));
    CertificateBundle bundle = bundle_from_certificate(cf, gref);
    VerifyReport rep = verify_bundle(bundle);
    if (!rep.valid) {
        std::cerr << "dot: certificate does not verify:\n";
        for (const auto& p : rep.problems)
            std::cerr << "  " << p << "\n";
        return kExitInvalid;
    }
    fs::path dir(out_dir);
    fs::create_directories(dir);
    std::string stem = fs::path(cert_path).stem().string();
    for (std::size_t t = 0; t < bundle.strategies.size(); ++t) {
        fs::path file = dir / (stem + "_t" + std::to_string(t + 1) + ".dot");
        std::ofstream out(file);
        out << strategy_to_dot(bundle.strategies[t], (int)(t + 1));
        std::cout << "wrote " << file.string() << "\n";
    }
    return kExitValid;
}

int cmd_stats(const CommonModelArgs& args) {
    GraphRef g = load_graph(args.graph_spec);
    std::string root = args.root.empty() ? g->label(0) : args.root;
    ModelParams p = args.params(root);
    MilpModel m = p.variant == Variant::STS ? build_sts_model(g, root, p)
                                            : build_ts_model(g, root, p);
    ModelStats st = model_stats(m);
    std::cout << "graph: " << g->name() << "  n=" << st.n << "  edges=" << g->edge_count()
              << "  arcs=" << st.arc_count << "\n";
    std::cout << "variant: " << (p.variant == Variant::STS ? "STS" : "TS")
              << "  T=" << st.strategies << "  blocks=" << st.blocks << "  ell=" << p.ell
              << "  root=" << root << "\n";
    std::cout << "variables: " << st.variable_count << " (binary " << st.binary_count
              << ", continuous " << st.continuous_count << ")\n";
    std::cout << "variables by formula T(2n+m): " << st.formula_variables << " (binary T(n+m): "
              << st.formula_binary << ", continuous Tn: " << st.formula_continuous << ")\n";
    std::cout << "constraints as built: " << st.constraint_count << "\n";
    std::cout << "constraints by formula T(2m+2n+1)+n: " << st.formula_constraints << "\n";
    std::map<std::string, int> families;
    for (const auto& c : m.constraints)
        families[c.name.substr(0, c.name.find('_'))]++;
    for (const auto& [fam, count] : families)
        std::cout << "  " << fam << ": " << count << "\n";
    int root_arcs = 0;
    for (auto [i, j] : m.arcs.arcs)
        root_arcs += (i == m.root || j == m.root);
    std::cout << "note: formula counts domain rows; as built, doubling rows skip the " << root_arcs
              << " arcs touching the root and each block adds one root exclusion row\n";
    return kExitValid;
}

int cmd_bound(const CommonModelArgs& args, std::uint64_t seed, int max_exponent,
              const std::string& out_dir, std::optional<std::string> solver_cmd,
              bool no_heuristic, int threads) {
    GraphRef g = load_graph(args.graph_spec);
    std::vector<std::string> roots;
    if (args.roots_spec == "all")
        roots = g->labels();
    else if (!args.roots_spec.empty()) {
        std::istringstream split(args.roots_spec);
        for (std::string r; std::getline(split, r, ',');)
            if (!r.empty())
                roots.push_back(r);
    } else if (!args.root.empty())
        roots.push_back(args.root);
    else
        throw Error("bound: give --root LABEL or --roots all");

    auto run_one = [&](const std::string& r) {
        BoundRun run;
        run.graph_spec = args.graph_spec;
        run.root = r;
        run.params = args.params(r);
        run.seed = seed;
        run.solver_cmd = solver_cmd;
        run.allow_heuristic = !no_heuristic;
        run.max_exponent = max_exponent;
        run.out_dir = out_dir;
        return run_bound(run);
    };

    std::vector<BoundOutcome> outcomes(roots.size());
    if (threads > 1 && roots.size() > 1) {
        std::vector<std::future<BoundOutcome>> futs;
        futs.reserve(roots.size());
        for (const auto& r : roots)
            futs.push_back(std::async(std::launch::async, run_one, r));
        for (std::size_t i = 0; i < futs.size(); ++i)
            outcomes[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < roots.size(); ++i)
            outcomes[i] = run_one(roots[i]);
    }
    for (const auto& out : outcomes) {
        std::cout << "root " << out.root << ": certified bound " << out.report.certified_bound
                  << " (covering " << out.report.covering.bound << ", lp " << out.report.lp_bound
                  << ", " << out.bundle.strategies.size() << " trees) -> "
                  << out.certificate_path.string() << "\n";
    }
    return kExitValid;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree-strategy certificates for graph pebbling bounds"};
    app.require_subcommand(1);

    // catalog
    std::string catalog_key;
    auto* sc_catalog = app.add_subcommand("catalog", "print a named graph in graph text format");
    sc_catalog->add_option("key", catalog_key, "catalog key, e.g. lemke, bruhat4, path_4")
        ->required();

    // oracle
    std::string o_graph, o_root;
    std::int64_t o_budget = 10'000'000, o_cap = 0;
    auto* sc_oracle =
        app.add_subcommand("oracle", "brute-force rooted pebbling numbers with witnesses");
    sc_oracle->add_option("--graph", o_graph, "catalog key, <key>-square, or graph file")
        ->required();
    sc_oracle->add_option("--root", o_root, "single root label (default: all roots)");
    sc_oracle->add_option("--budget", o_budget, "visited-state budget per query");
    sc_oracle->add_option("--cap", o_cap, "size cap override (default 2^ecc + n)");

    // bound
    CommonModelArgs b_args;
    std::uint64_t b_seed = 0;
    int b_max_exp = 6;
    std::string b_out = "runs";
    std::string b_solver_cmd, b_config;
    bool b_no_heuristic = false;
    int b_threads = 0;
    auto* sc_bound = app.add_subcommand(
        "bound", "build the strategy model, solve or fall back to the heuristic, verify, report");
    sc_bound->add_option("--graph", b_args.graph_spec, "catalog key, <key>-square, or graph file")
        ->required();
    sc_bound->add_option("--root", b_args.root, "root label");
    sc_bound->add_option("--roots", b_args.roots_spec, "'all' or a comma-separated root list");
    sc_bound->add_option("--T", b_args.strategies, "strategy count (default per experiments)");
    sc_bound->add_option("--ell", b_args.ell, "tree depth bound (default 16)");
    sc_bound->add_option("--variant", b_args.variant_name, "ts or sts")
        ->check(CLI::IsMember({"ts", "sts"}));
    sc_bound->add_option("--seed", b_seed, "heuristic seed");
    sc_bound->add_option("--max-exponent", b_max_exp, "dyadic exponent cap for extraction");
    sc_bound->add_option("--out", b_out, "output directory (default runs/)");
    sc_bound->add_option("--solver-cmd", b_solver_cmd,
                         "external solver template with {model} and {solution}");
    sc_bound->add_option("--config", b_config, "key = value config file");
    bool b_force_heuristic = false;
    sc_bound->add_flag("--heuristic", b_force_heuristic,
                       "skip any configured solver and use the heuristic generator");
    sc_bound->add_flag("--no-heuristic", b_no_heuristic, "fail instead of heuristic fallback");
    sc_bound->add_option("--threads", b_threads, "parallel root pipelines");

    // verify
    std::string v_path;
    auto* sc_verify = app.add_subcommand("verify", "exactly re-verify a certificate file");
    sc_verify->add_option("certificate", v_path, "certificate file")->required();

    // convert
    std::string c_in, c_out;
    int c_max_exp = 6;
    auto* sc_convert = app.add_subcommand(
        "convert", "rationalize a decimal certificate into exact dyadic form");
    sc_convert->add_option("input", c_in, "decimal certificate file")->required();
    sc_convert->add_option("output", c_out, "exact certificate file to write")->required();
    sc_convert->add_option("--max-exponent", c_max_exp, "dyadic exponent cap (default 6)");

    // dot
    std::string d_path, d_out = ".";
    auto* sc_dot = app.add_subcommand("dot", "emit one DOT digraph per strategy");
    sc_dot->add_option("certificate", d_path, "certificate file")->required();
    sc_dot->add_option("--out", d_out, "output directory (default .)");

    // stats
    CommonModelArgs s_args;
    auto* sc_stats = app.add_subcommand("stats", "model sizes next to the closed-form counts");
    sc_stats->add_option("--graph", s_args.graph_spec, "catalog key, <key>-square, or graph file")
        ->required();
    sc_stats->add_option("--root", s_args.root, "root label (default: first vertex)");
    sc_stats->add_option("--T", s_args.strategies, "strategy count");
    sc_stats->add_option("--ell", s_args.ell, "tree depth bound");
    sc_stats->add_option("--variant", s_args.variant_name, "ts or sts")
        ->check(CLI::IsMember({"ts", "sts"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (sc_catalog->parsed())
            return cmd_catalog(catalog_key);
        if (sc_oracle->parsed())
            return cmd_oracle(o_graph, o_root, o_budget, o_cap);
        if (sc_verify->parsed())
            return cmd_verify(v_path);
        if (sc_convert->parsed())
            return cmd_convert(c_in, c_out, c_max_exp);
        if (sc_dot->parsed())
            return cmd_dot(d_path, d_out);
        if (sc_stats->parsed())
            return cmd_stats(s_args);
        if (sc_bound->parsed()) {
            ToolConfig cfg;
            if (!b_config.empty()) {
                std::ifstream in(b_config);
                if (!in)
                    throw Error("bound: cannot open config '" + b_config + "'");
                cfg = read_tool_config(in);
            }
            std::optional<std::string> solver;
            if (!b_solver_cmd.empty())
                solver = b_solver_cmd;
            else if (auto env = solver_cmd_from_env())
                solver = env;
            else
                solver = cfg.solver_cmd;
            if (b_force_heuristic)
                solver.reset();
            int threads = b_threads > 0 ? b_threads : cfg.threads;
            return cmd_bound(b_args, b_seed, b_max_exp, b_out, solver, b_no_heuristic, threads);
        }
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const ExtractionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
