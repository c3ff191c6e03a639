// Test-only oracles, kept independent of the implementation paths they
// check: the transport oracle is a successive-shortest-path min-cost flow
// (augmenting paths, not basis pivoting) on the full marginals, and the
// algebra oracles are plain loops.
#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "wcmc/core.hpp"

namespace oracle {

// Exact transportation optimum by successive shortest augmenting paths on
// the residual graph (Bellman-Ford, handles the negative residual arcs).
inline double wasserstein_mincostflow(const std::vector<double>& mu, const std::vector<double>& nu,
                                      const wcmc::Matrix& cost) {
    const std::size_t n = mu.size();
    // nodes: 0 = source, 1..n = supply states, n+1..2n = demand states, 2n+1 = sink
    const std::size_t nodes = 2 * n + 2;
    const std::size_t src = 0, snk = 2 * n + 1;

    struct Arc {
        std::size_t to;
        double cap;
        double cost;
        std::size_t rev;
    };
    std::vector<std::vector<Arc>> g(nodes);
    auto add_arc = [&](std::size_t a, std::size_t b, double cap, double c) {
        g[a].push_back({b, cap, c, g[b].size()});
        g[b].push_back({a, 0.0, -c, g[a].size() - 1});
    };

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mu[i] > 0.0) {
            add_arc(src, 1 + i, mu[i], 0.0);
            total += mu[i];
        }
        if (nu[i] > 0.0) add_arc(n + 1 + i, snk, nu[i], 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (mu[i] <= 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (nu[j] <= 0.0) continue;
            add_arc(1 + i, n + 1 + j, 2.0, cost(i, j));
        }
    }

    double value = 0.0, shipped = 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    while (shipped < total - 1e-13) {
        std::vector<double> dist(nodes, inf);
        std::vector<std::size_t> from_node(nodes, nodes), from_arc(nodes, 0);
        dist[src] = 0.0;
        for (std::size_t pass = 0; pass + 1 < nodes + 2; ++pass) {
            bool changed = false;
            for (std::size_t v = 0; v < nodes; ++v) {
                if (dist[v] == inf) continue;
                for (std::size_t a = 0; a < g[v].size(); ++a) {
                    const Arc& arc = g[v][a];
                    if (arc.cap <= 1e-15) continue;
                    if (dist[v] + arc.cost < dist[arc.to] - 1e-15) {
                        dist[arc.to] = dist[v] + arc.cost;
                        from_node[arc.to] = v;
                        from_arc[arc.to] = a;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (dist[snk] == inf) break;

        double push = total - shipped;
        for (std::size_t v = snk; v != src; v = from_node[v])
            push = std::min(push, g[from_node[v]][from_arc[v]].cap);
        for (std::size_t v = snk; v != src; v = from_node[v]) {
            Arc& arc = g[from_node[v]][from_arc[v]];
            arc.cap -= push;
            g[arc.to][arc.rev].cap += push;
            value += push * arc.cost;
        }
        shipped += push;
    }
    return value;
}

inline double wasserstein_mincostflow(const wcmc::Distribution& mu, const wcmc::Distribution& nu,
                                      const wcmc::MetricSpec& d) {
    return wasserstein_mincostflow(mu.weights, nu.weights, d.cost);
}

// Two-point transport brute-forced over the one-parameter coupling family:
// eta(0,0) = t ranges over [max(0, mu0+nu0-1), min(mu0, nu0)].
inline double wasserstein_two_state(double mu0, double nu0, double d01) {
    const double lo = std::max(0.0, mu0 + nu0 - 1.0);
    const double hi = std::min(mu0, nu0);
    double best = std::numeric_limits<double>::infinity();
    const int grid = 4000;
    for (int k = 0; k <= grid; ++k) {
        const double t = lo + (hi - lo) * k / grid;
        // eta = [[t, mu0-t], [nu0-t, 1-mu0-nu0+t]]
        const double off = (mu0 - t) + (nu0 - t);
        best = std::min(best, off * d01);
    }
    return best;
}

inline wcmc::Matrix matmul_bruteforce(const wcmc::Matrix& a, const wcmc::Matrix& b) {
    wcmc::Matrix c(a.rows, b.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

// --- deterministic random instances ------------------------------------

inline wcmc::Distribution random_distribution(std::mt19937_64& gen, const wcmc::FiniteStateSpace& s,
                                              bool allow_zeros = false) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(s.n);
    double total = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        // keep the first coordinate positive so the vector never vanishes
        w[i] = allow_zeros && i > 0 && u(gen) < 0.2 ? 0.0 : 0.05 + u(gen);
        total += w[i];
    }
    for (double& v : w) v /= total;
    return wcmc::Distribution(s, std::move(w));
}

inline wcmc::FiniteKernel random_kernel(std::mt19937_64& gen, const wcmc::FiniteStateSpace& s) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    wcmc::Matrix rows(s.n, s.n, 0.0);
    for (std::size_t i = 0; i < s.n; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < s.n; ++j) {
            rows(i, j) = 0.02 + u(gen);
            total += rows(i, j);
        }
        for (std::size_t j = 0; j < s.n; ++j) rows(i, j) /= total;
    }
    return wcmc::FiniteKernel(s, std::move(rows));
}

// Euclidean distances of random plane points: a metric by construction.
inline wcmc::MetricSpec random_metric(std::mt19937_64& gen, const wcmc::FiniteStateSpace& s) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> px(s.n), py(s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        px[i] = u(gen);
        py[i] = u(gen);
    }
    wcmc::Matrix cost(s.n, s.n, 0.0);
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = 0; j < s.n; ++j)
            cost(i, j) = std::hypot(px[i] - px[j], py[i] - py[j]);
    // keep off-diagonal distances bounded away from zero; a constant shift
    // of every off-diagonal entry preserves the metric axioms
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = 0; j < s.n; ++j)
            if (i != j) cost(i, j) += 1e-6;
    return wcmc::MetricSpec(s, std::move(cost), wcmc::MetricKind::general);
}

inline wcmc::StateFunction random_function(std::mt19937_64& gen, const wcmc::FiniteStateSpace& s,
                                           double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<double> v(s.n);
    for (double& x : v) x = g(gen);
    return wcmc::StateFunction(s, std::move(v));
}

} // namespace oracle
