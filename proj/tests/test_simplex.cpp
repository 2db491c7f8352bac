#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <memory>
#include <random>

#include "pebbling/catalog.hpp"
#include "pebbling/certificate_io.hpp"
#include "pebbling/simplex.hpp"

using namespace pebbling;

TEST_CASE("simplex solves tiny programs exactly") {
    // max x + y  s.t. x <= 2, y <= 3
    auto r = simplex_maximize({{1, 0}, {0, 1}}, {2, 3}, {1, 1});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == 5);

    // max x + y  s.t. 2x + y <= 4, x + 3y <= 6 -> x = 6/5, y = 8/5
    r = simplex_maximize({{2, 1}, {1, 3}}, {4, 6}, {1, 1});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == mpq_class(14, 5));
    CHECK(r.solution[0] == mpq_class(6, 5));
    CHECK(r.solution[1] == mpq_class(8, 5));

    // unbounded: y unconstrained from above
    r = simplex_maximize({{1, 0}}, {2}, {1, 1});
    CHECK(r.status == LpResult::Status::Unbounded);

    // degenerate rhs = 0 still terminates (Bland)
    r = simplex_maximize({{1, 1}, {1, -1}}, {0, 0}, {1, 0});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.objective == 0);

    CHECK_THROWS(simplex_maximize({{1}}, {-1}, {1}));
}

TEST_CASE("lp relaxation of the path bundle") {
    auto p3 = std::make_shared<const Graph>(catalog("path_3"));
    CertificateBundle b;
    b.graph = p3;
    b.root = p3->index_of("v1");
    TreeStrategy s;
    s.graph = p3;
    s.root = b.root;
    s.parent[p3->index_of("v2")] = b.root;
    s.weight[p3->index_of("v2")] = parse_dyadic("2");
    s.parent[p3->index_of("v3")] = p3->index_of("v2");
    s.weight[p3->index_of("v3")] = parse_dyadic("1");
    b.strategies = {s};
    CHECK(lp_relaxation_optimum(b) == 3);
    CHECK(lp_relaxation_bound(b) == 4);
    CHECK(lp_relaxation_bound(b) <= covering_bound(b).bound);
}

TEST_CASE("lp relaxation reports uncovered bundles as unbounded") {
    auto p4 = std::make_shared<const Graph>(catalog("path_4"));
    CertificateBundle b;
    b.graph = p4;
    b.root = p4->index_of("v1");
    TreeStrategy s;
    s.graph = p4;
    s.root = b.root;
    s.parent[p4->index_of("v2")] = b.root;
    s.weight[p4->index_of("v2")] = parse_dyadic("1");
    b.strategies = {s};
    CHECK_THROWS_WITH(lp_relaxation_optimum(b), Catch::Matchers::ContainsSubstring("unbounded"));
}

namespace {

// Independent route for two-variable programs: the optimum of a feasible
// bounded LP sits on a constraint intersection or an axis, so enumerating
// those candidate points exactly is a complete check.
mpq_class two_var_optimum_by_enumeration(const std::vector<std::vector<mpq_class>>& A,
                                         const std::vector<mpq_class>& b) {
    auto feasible = [&](const mpq_class& x, const mpq_class& y) {
        if (x < 0 || y < 0)
            return false;
        for (std::size_t i = 0; i < A.size(); ++i)
            if (A[i][0] * x + A[i][1] * y > b[i])
                return false;
        return true;
    };
    std::vector<std::pair<mpq_class, mpq_class>> candidates = {{0, 0}};
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i][0] > 0)
            candidates.push_back({b[i] / A[i][0], 0});
        if (A[i][1] > 0)
            candidates.push_back({0, b[i] / A[i][1]});
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            mpq_class det = A[i][0] * A[j][1] - A[i][1] * A[j][0];
            if (det == 0)
                continue;
            mpq_class x = (b[i] * A[j][1] - b[j] * A[i][1]) / det;
            mpq_class y = (A[i][0] * b[j] - A[j][0] * b[i]) / det;
            candidates.push_back({x, y});
        }
    }
    mpq_class best = 0;
    for (const auto& [x, y] : candidates)
        if (feasible(x, y) && x + y > best)
            best = x + y;
    return best;
}

} // namespace

TEST_CASE("simplex agrees with exhaustive vertex enumeration on random LPs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 1 + (int)(rng() % 3);
        std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(2));
        std::vector<mpq_class> b(m);
        bool x_capped = false, y_capped = false;
        for (int i = 0; i < m; ++i) {
            A[i][0] = (long)(rng() % 6);
            A[i][1] = (long)(rng() % 6);
            b[i] = (long)(rng() % 20);
            x_capped = x_capped || A[i][0] > 0;
            y_capped = y_capped || A[i][1] > 0;
        }
        LpResult r = simplex_maximize(A, b, {1, 1});
        if (!x_capped || !y_capped) {
            CHECK(r.status == LpResult::Status::Unbounded);
            continue;
        }
        REQUIRE(r.status == LpResult::Status::Optimal);
        CHECK(r.objective == two_var_optimum_by_enumeration(A, b));
    }
}

TEST_CASE("published six-tree bundle: covering and lp bounds") {
    std::ifstream in(std::string(PEBBLING_FIXTURE_DIR) + "/bruhat4_66.cert");
    REQUIRE(in.good());
    CertificateFile cf = read_certificate_text(in);
    CHECK(cf.graph_spec == "bruhat4");
    CHECK(cf.declared_trees == 6);
    auto b4 = std::make_shared<const Graph>(catalog(cf.graph_spec));
    CertificateBundle bundle = bundle_from_certificate(cf, b4);

    CertificateReport rep = covering_bound(bundle);
    CHECK(rep.K == Dyadic(6, 0));
    CHECK(rep.total_weight == Dyadic(396, 0));
    CHECK(rep.bound == 67);

    // frozen from an independent exact solver: optimum 1579/24, floor 65
    mpq_class z = lp_relaxation_optimum(bundle);
    CHECK(z == mpq_class(1579, 24));
    CHECK(lp_relaxation_bound(bundle) == 66);
}
