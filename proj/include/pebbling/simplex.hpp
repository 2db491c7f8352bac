#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "pebbling/dyadic.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

struct LpResult {
    enum class Status { Optimal, Unbounded };
    Status status = Status::Optimal;
    mpq_class objective;
    std::vector<mpq_class> solution;
};

/// Dense exact simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
/// so the slack basis is feasible from the start. Bland's rule prevents
/// cycling; sizes here are tiny (tens of rows and columns).
inline LpResult simplex_maximize(const std::vector<std::vector<mpq_class>>& A,
                                 const std::vector<mpq_class>& b,
                                 const std::vector<mpq_class>& c) {
    const int m = (int)A.size();
    const int n = (int)c.size();
    for (const auto& rhs : b)
        if (rhs < 0)
            throw Error("simplex: negative right-hand side");
    // tableau rows 0..m-1: constraints over [vars | slacks | rhs]; row m: costs
    std::vector<std::vector<mpq_class>> T(m + 1, std::vector<mpq_class>(n + m + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][n + m] = b[i];
    }
    for (int j = 0; j < n; ++j)
        T[m][j] = -c[j];
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i)
        basis[i] = n + i;
    while (true) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (T[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0)
            break;
        int leave = -1;
        mpq_class best;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] > 0) {
                mpq_class ratio = T[i][n + m] / T[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0)
            return {LpResult::Status::Unbounded, 0, {}};
        mpq_class piv = T[leave][enter];
        for (auto& x : T[leave])
            x /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter] == 0)
                continue;
            mpq_class f = T[i][enter];
            for (int j = 0; j <= n + m; ++j)
                T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    LpResult out;
    out.objective = T[m][n + m];
    out.solution.assign(n, 0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n)
            out.solution[basis[i]] = T[i][n + m];
    return out;
}

inline mpq_class to_mpq(const Dyadic& d) {
    return mpq_class(d.numerator(), d.denominator());
}

/// Optimum of  max sum C(v)  s.t.  w_t . C <= w_t . 1 per strategy, C >= 0
/// continuous. Unbounded exactly when some vertex carries no weight at all.
inline mpq_class lp_relaxation_optimum(const CertificateBundle& bundle) {
    const Graph& g = *bundle.graph;
    std::vector<int> vars; // non-root vertices, vertex order
    for (int v = 0; v < g.order(); ++v)
        if (v != bundle.root)
            vars.push_back(v);
    std::vector<int> col(g.order(), -1);
    for (int j = 0; j < (int)vars.size(); ++j)
        col[vars[j]] = j;
    std::vector<std::vector<mpq_class>> A;
    std::vector<mpq_class> b;
    for (const TreeStrategy& s : bundle.strategies) {
        std::vector<mpq_class> row(vars.size(), 0);
        mpq_class rhs = 0;
        for (const auto& [v, w] : s.weight) {
            if (v == bundle.root)
                throw Error("lp_relaxation: weight on the root");
            row[col[v]] = to_mpq(w);
            rhs += to_mpq(w);
        }
        A.push_back(std::move(row));
        b.push_back(rhs);
    }
    std::vector<mpq_class> c(vars.size(), 1);
    LpResult res = simplex_maximize(A, b, c);
    if (res.status == LpResult::Status::Unbounded)
        throw Error("lp_relaxation: unbounded (some vertex carries no weight)");
    return res.objective;
}

/// floor(optimum) + 1; never exceeds the covering bound.
inline std::int64_t lp_relaxation_bound(const CertificateBundle& bundle) {
    mpq_class z = lp_relaxation_optimum(bundle);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), z.get_num_mpz_t(), z.get_den_mpz_t());
    if (!fl.fits_slong_p())
        throw Error("lp_relaxation: bound overflow");
    return (std::int64_t)fl.get_si() + 1;
}

inline std::string mpq_str(const mpq_class& q) { return q.get_str(); }

} // namespace pebbling
