#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/catalog.hpp"
#include "pebbling/certificate_io.hpp"
#include "pebbling/heuristic.hpp"
#include "pebbling/lp_format.hpp"
#include "pebbling/milp.hpp"
#include "pebbling/simplex.hpp"
#include "pebbling/solution.hpp"

namespace pebbling {

// ---------------------------------------------------------------------------
// Full verification: strategy-by-strategy validation, exact covering report,
// exact linear relaxation. The certified bound is the better of the two; the
// relaxation can only tighten the covering value.

struct VerifyReport {
    bool valid = false;
    std::vector<std::string> problems;
    CertificateReport covering;
    mpq_class lp_optimum;
    std::int64_t lp_bound = 0;
    std::int64_t certified_bound = 0;
};

inline VerifyReport verify_bundle(const CertificateBundle& bundle) {
    VerifyReport rep;
    for (std::size_t t = 0; t < bundle.strategies.size(); ++t) {
        Validation v = validate_strategy(bundle.strategies[t]);
        if (!v.ok())
            rep.problems.push_back("tree " + std::to_string(t + 1) + ": " + v.summary());
    }
    if (!rep.problems.empty())
        return rep;
    try {
        rep.covering = covering_bound(bundle);
        rep.lp_optimum = lp_relaxation_optimum(bundle);
        rep.lp_bound = lp_relaxation_bound(bundle);
    } catch (const Error& e) {
        rep.problems.push_back(e.what());
        return rep;
    }
    rep.certified_bound = std::min(rep.covering.bound, rep.lp_bound);
    rep.valid = true;
    return rep;
}

inline void print_verify_report(const VerifyReport& rep, const CertificateBundle& bundle,
                                std::ostream& out) {
    const Graph& g = *bundle.graph;
    out << "graph: " << g.name() << " (n=" << g.order() << ", edges=" << g.edge_count() << ")\n";
    out << "root: " << g.label(bundle.root) << "\n";
    out << "trees: " << bundle.strategies.size() << "\n";
    if (!rep.valid) {
        out << "valid: no\n";
        for (const auto& p : rep.problems)
            out << "problem: " << p << "\n";
        return;
    }
    out << "valid: yes\n";
    out << "K = " << rep.covering.K.str() << " attained at:";
    for (int v : rep.covering.min_vertices)
        out << " " << g.label(v);
    out << "\n";
    out << "total weight = " << rep.covering.total_weight.str() << "\n";
    out << "covering bound: " << rep.covering.bound << "\n";
    out << "lp optimum: " << mpq_str(rep.lp_optimum) << "\n";
    out << "lp bound: " << rep.lp_bound << "\n";
    out << "certified bound: " << rep.certified_bound << "\n";
}

// ---------------------------------------------------------------------------
// Graph resolution for certificate files: a spec string first, then a path
// relative to the certificate's own directory.

inline Graph resolve_certificate_graph(const std::string& spec,
                                       const std::filesystem::path& cert_dir) {
    try {
        return resolve_graph_spec(spec);
    } catch (const Error&) {
        std::filesystem::path rel = cert_dir / spec;
        std::ifstream in(rel);
        if (!in)
            throw Error("certificate graph '" + spec + "': not a spec and not a file next to "
                        "the certificate");
        return read_graph_text(in);
    }
}

// ---------------------------------------------------------------------------
// External solver invocation: a command template with {model} and {solution}
// placeholders. The toolkit never links a solver; whatever comes back is
// re-verified exactly.

inline std::string substitute_placeholders(std::string tmpl, const std::string& model_path,
                                           const std::string& solution_path) {
    auto replace_all = [](std::string& s, const std::string& key, const std::string& val) {
        for (std::size_t at = s.find(key); at != std::string::npos; at = s.find(key, at))
            s.replace(at, key.size(), val), at += val.size();
    };
    replace_all(tmpl, "{model}", model_path);
    replace_all(tmpl, "{solution}", solution_path);
    return tmpl;
}

inline void run_solver_command(const std::string& tmpl, const std::string& model_path,
                               const std::string& solution_path) {
    std::string cmd = substitute_placeholders(tmpl, model_path, solution_path);
    int rc = std::system(cmd.c_str());
    if (rc != 0)
        throw SolverError("solver command failed (exit " + std::to_string(rc) + "): " + cmd);
    if (!std::filesystem::exists(solution_path))
        throw SolverError("solver command produced no solution file at " + solution_path);
}

// ---------------------------------------------------------------------------
// Key = value configuration files plus the environment override.

struct ToolConfig {
    std::optional<std::string> solver_cmd;
    int threads = 1;
    std::int64_t budget = 10'000'000;
};

inline ToolConfig read_tool_config(std::istream& in) {
    ToolConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "solver_cmd" && !val.empty())
            cfg.solver_cmd = val;
        else if (key == "threads")
            cfg.threads = std::max(1, std::atoi(val.c_str()));
        else if (key == "budget")
            cfg.budget = std::strtoll(val.c_str(), nullptr, 10);
    }
    return cfg;
}

inline std::optional<std::string> solver_cmd_from_env() {
    if (const char* env = std::getenv("PEBBLE_SOLVER_CMD"); env && *env)
        return std::string(env);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Per-root bound pipeline: model -> LP file -> solver or heuristic ->
// exact re-verification -> certificate + report on disk.

struct BoundRun {
    std::string graph_spec;
    std::string root;
    ModelParams params;
    std::uint64_t seed = 0;
    std::optional<std::string> solver_cmd;
    bool allow_heuristic = true;
    int max_exponent = 6;
    std::filesystem::path out_dir = "runs";
};

struct BoundOutcome {
    std::string root;
    CertificateBundle bundle;
    VerifyReport report;
    std::filesystem::path model_path, certificate_path, report_path;
};

inline BoundOutcome run_bound(const BoundRun& run) {
    GraphRef g = std::make_shared<const Graph>(resolve_graph_spec(run.graph_spec));
    std::filesystem::path dir =
        run.out_dir / sanitize_label(run.graph_spec) / sanitize_label(run.root);
    std::filesystem::create_directories(dir);

    MilpModel model = run.params.variant == Variant::STS
                          ? build_sts_model(g, run.root, run.params)
                          : build_ts_model(g, run.root, run.params);
    BoundOutcome out;
    out.root = run.root;
    out.model_path = dir / "model.lp";
    {
        std::ofstream lp(out.model_path);
        write_lp(model, lp);
    }

    if (run.solver_cmd) {
        std::filesystem::path sol_path = dir / "solution.sol";
        run_solver_command(*run.solver_cmd, out.model_path.string(), sol_path.string());
        std::ifstream in(sol_path);
        std::stringstream buf;
        buf << in.rdbuf();
        SolutionAssignment sol = parse_solution(model, buf.str());
        out.bundle = extract_strategies(model, sol, run.max_exponent);
    } else if (run.allow_heuristic) {
        out.bundle = heuristic_generate(g, run.root, run.params, run.seed);
    } else {
        throw Error("bound: no generation method (no solver configured and the heuristic is "
                    "disabled)");
    }

    out.report = verify_bundle(out.bundle);
    if (!out.report.valid)
        throw ExtractionError("bound: produced bundle failed verification: " +
                              (out.report.problems.empty() ? std::string("unknown")
                                                           : out.report.problems.front()));
    out.certificate_path = dir / "bundle.cert";
    {
        std::ofstream cert(out.certificate_path);
        write_certificate_text(out.bundle, run.graph_spec, cert);
    }
    out.report_path = dir / "report.txt";
    {
        std::ofstream rep(out.report_path);
        print_verify_report(out.report, out.bundle, rep);
    }
    return out;
}

} // namespace pebbling
