#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(PEBBLE_BIN) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe))
        r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(PEBBLING_FIXTURE_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("catalog prints the graph text format") {
    CliResult r = run_cli("catalog lemke");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "graph lemke\n"));
    CHECK(contains(r.output, "e v5 v8\n")); // canonical endpoint order
    CHECK(contains(r.output, "end\n"));

    CliResult b = run_cli("catalog bruhat4");
    CHECK(b.exit_code == 0);
    CHECK(contains(b.output, "v v24\n"));

    CliResult bad = run_cli("catalog nosuch");
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.output, "unknown key"));
}

TEST_CASE("oracle command reports per-root numbers and witnesses") {
    CliResult r = run_cli("oracle --graph cycle_6");
    CHECK(r.exit_code == 0);
    for (int i = 1; i <= 6; ++i)
        CHECK(contains(r.output, "pi(cycle_6, v" + std::to_string(i) + ") = 8"));
    CHECK(contains(r.output, "pi(cycle_6) = 8"));

    CliResult capped = run_cli("oracle --graph bruhat4 --root v1 --budget 20000");
    CHECK(capped.exit_code == 4);
    CHECK(contains(capped.output, "budget"));
}

TEST_CASE("oracle accepts a graph file path") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "pebbling_cli_graph.txt";
    {
        std::ofstream out(tmp);
        out << "graph two\nv a\nv b\ne a b\nend\n";
    }
    CliResult r = run_cli("oracle --graph " + tmp.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "pi(two, a) = 2"));
    fs::remove(tmp);
}

TEST_CASE("verify rejects tampered certificates with exit 1") {
    namespace fs = std::filesystem;
    std::ifstream in(fixture("bruhat4_66.cert"));
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto at = text.find("edge v14 v16 1/1");
    REQUIRE(at != std::string::npos);
    text.replace(at, 16, "edge v14 v16 3/1"); // breaks doubling under v14
    fs::path tmp = fs::temp_directory_path() / "pebbling_cli_tampered.cert";
    {
        std::ofstream out(tmp);
        out << text;
    }
    CliResult r = run_cli("verify " + tmp.string());
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "valid: no"));
    CHECK(contains(r.output, "doubling"));
    fs::remove(tmp);
}

TEST_CASE("convert is idempotent on exact input") {
    namespace fs = std::filesystem;
    fs::path once = fs::temp_directory_path() / "pebbling_cli_once.cert";
    fs::path twice = fs::temp_directory_path() / "pebbling_cli_twice.cert";
    CliResult c1 = run_cli("convert " + fixture("bruhat4_66.cert") + " " + once.string());
    CHECK(c1.exit_code == 0);
    CliResult c2 = run_cli("convert " + once.string() + " " + twice.string());
    CHECK(c2.exit_code == 0);
    std::ifstream a(once), b(twice);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    fs::remove(once);
    fs::remove(twice);
}

TEST_CASE("convert refuses a negative weight") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "pebbling_cli_neg.cert";
    {
        std::ofstream out(tmp);
        out << "certificate v1\ngraph path_3\nroot v1\ntrees 1\n"
               "tree 1\nedge v1 v2 2\nedge v2 v3 -1\nendtree\nend\n";
    }
    CliResult r = run_cli("convert " + tmp.string() + " " + tmp.string() + ".out");
    CHECK(r.exit_code != 0);
    fs::remove(tmp);
}

TEST_CASE("stats prints both the as-built and closed-form counts") {
    CliResult r = run_cli("stats --graph lemke-square --root \"(v1,v1)\" --T 10 --ell 16");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "variables: 5440 (binary 4800, continuous 640)"));
    CHECK(contains(r.output, "formula T(2m+2n+1)+n: 9674"));
    CliResult s = run_cli("stats --graph lemke-square --root \"(v1,v1)\" --T 10 --variant sts");
    CHECK(contains(s.output, "variables: 2720"));
}

TEST_CASE("strategy count defaults follow the experiment regime") {
    CliResult b4 = run_cli("stats --graph bruhat4");
    CHECK(contains(b4.output, "T=6"));
    CliResult diag = run_cli("stats --graph lemke-square --root \"(v1,v1)\" --variant sts");
    CHECK(contains(diag.output, "T=10"));
    CliResult off = run_cli("stats --graph lemke-square --root \"(v1,v2)\" --variant sts");
    CHECK(contains(off.output, "T=8"));
}

TEST_CASE("certificates may reference a graph file next to them") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pebbling_cli_certdir";
    fs::create_directories(dir);
    {
        std::ofstream g(dir / "two.graph");
        g << "graph two\nv a\nv b\ne a b\nend\n";
    }
    {
        std::ofstream c(dir / "two.cert");
        c << "certificate v1\ngraph two.graph\nroot a\ntrees 1\n"
             "tree 1\nedge a b 1\nendtree\nend\n";
    }
    CliResult r = run_cli("verify " + (dir / "two.cert").string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "certified bound: 2"));
    fs::remove_all(dir);
}

TEST_CASE("bound without any generation method fails cleanly") {
    CliResult r = run_cli("bound --graph lemke --root v1 --T 2 --no-heuristic");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "no generation method"));
}

TEST_CASE("bound fans out over all roots deterministically") {
    namespace fs = std::filesystem;
    fs::path d1 = fs::temp_directory_path() / "pebbling_cli_runs1";
    fs::path d2 = fs::temp_directory_path() / "pebbling_cli_runs2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    CliResult r1 = run_cli("bound --graph path_3 --roots all --T 2 --ell 4 --heuristic --out " +
                           d1.string() + " --threads 2");
    CliResult r2 = run_cli("bound --graph path_3 --roots all --T 2 --ell 4 --heuristic --out " +
                           d2.string());
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    // summaries match up to the output directory in the trailing path
    auto summaries = [](const std::string& text) {
        std::string out;
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);)
            out += line.substr(0, line.find(" -> ")) + "\n";
        return out;
    };
    CHECK(summaries(r1.output) == summaries(r2.output));
    for (const char* root : {"v1", "v2", "v3"}) {
        std::ifstream a(d1 / "path_3" / root / "bundle.cert"), b(d2 / "path_3" / root /
                                                                 "bundle.cert");
        REQUIRE(a.good());
        REQUIRE(b.good());
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("bound reads the solver command from a config file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pebbling_cli_config";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path cfg = dir / "pebble.conf";
    {
        std::ofstream out(cfg);
        out << "# test settings\n"
            << "solver_cmd = cp " << fixture("complete2_ts.sol") << " {solution}\n";
    }
    CliResult r = run_cli("bound --graph complete_2 --root v1 --T 1 --ell 1 --no-heuristic "
                          "--config " + cfg.string() + " --out " + (dir / "runs").string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "certified bound 2"));
    fs::remove_all(dir);
}

TEST_CASE("dot refuses an invalid certificate") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "pebbling_cli_baddot.cert";
    {
        std::ofstream out(tmp);
        out << "certificate v1\ngraph path_3\nroot v1\ntrees 1\n"
               "tree 1\nedge v1 v3 1\nendtree\nend\n"; // non-edge
    }
    CliResult r = run_cli("dot " + tmp.string() + " --out " +
                          (fs::temp_directory_path() / "pebbling_cli_dots").string());
    CHECK(r.exit_code == 1);
    fs::remove(tmp);
}
