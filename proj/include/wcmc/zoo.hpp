#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcmc/core.hpp"
#include "wcmc/simulate.hpp"
#include "wcmc/transport.hpp"

namespace wcmc::zoo {

// Construction record: parameters, plus any quantities known in advance
// (with a provenance note per entry) so tests can compare against the
// computed values.
struct ModelSpec {
    std::string name;
    std::map<std::string, double> params;
    std::map<std::string, double> expected;
    std::map<std::string, std::string> provenance;
};

struct ZooInstance {
    FiniteKernel kernel;
    MetricSpec metric;
    ModelSpec spec;
    std::optional<Distribution> pi;
};

// Two-state chain P = [[1-a, a], [b, 1-b]] on the unit segment metric.
// Everything about it is closed-form, which makes it the canonical
// fixture: tau = |1-a-b|, pi = (b,a)/(a+b), kappa = tau, Lambda = 1/(1-tau).
inline ZooInstance two_state(double a, double b) {
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
        throw InvalidParameter("two_state: a and b must lie in (0,1)");
    FiniteStateSpace space(2);
    Matrix rows(2, 2);
    rows(0, 0) = 1.0 - a;
    rows(0, 1) = a;
    rows(1, 0) = b;
    rows(1, 1) = 1.0 - b;

    ZooInstance inst;
    inst.kernel = FiniteKernel(space, std::move(rows));
    inst.metric = line_metric(space, {0.0, 1.0});
    inst.pi = Distribution(space, {b / (a + b), a / (a + b)});
    inst.spec.name = "two-state";
    inst.spec.params = {{"a", a}, {"b", b}};
    const double tau = std::fabs(1.0 - a - b);
    inst.spec.expected = {{"tau", tau}, {"kappa", tau}, {"lambda", 1.0 / (1.0 - tau)}};
    inst.spec.provenance = {{"tau", "closed-form"},
                            {"kappa", "closed-form"},
                            {"lambda", "geometric series"}};
    return inst;
}

// Doubling-map chain on the 2^k-point dyadic grid of [0,1): from state m
// move to floor(m/2) + Z 2^{k-1} with a fair coin Z. Adjacent odd/even
// pairs transport at ratio 1 for lags below k, and P^k has identical rows,
// so m = k and Lambda = k. (The untruncated chain on [0,1] contracts at
// every lag; the ratio-1 pairs are an artifact of the k-bit truncation.)
inline ZooInstance dyadic_shift(std::size_t k) {
    if (k < 2 || k > 12) throw InvalidParameter("dyadic_shift: k must lie in [2, 12]");
    const std::size_t n = std::size_t{1} << k;
    FiniteStateSpace space(n);
    Matrix rows(n, n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        rows(m, m / 2) += 0.5;
        rows(m, m / 2 + n / 2) += 0.5;
    }
    std::vector<double> pos(n);
    for (std::size_t m = 0; m < n; ++m)
        pos[m] = static_cast<double>(m) / static_cast<double>(n);

    ZooInstance inst;
    inst.kernel = FiniteKernel(space, std::move(rows));
    inst.metric = line_metric(space, pos);
    inst.pi = Distribution(space, std::vector<double>(n, 1.0 / static_cast<double>(n)));
    inst.spec.name = "dyadic-shift";
    inst.spec.params = {{"k", static_cast<double>(k)}};
    inst.spec.expected = {{"m", static_cast<double>(k)},
                          {"lambda", static_cast<double>(k)},
                          {"tau_final", 0.0}};
    inst.spec.provenance = {{"m", "construction"},
                            {"lambda", "construction"},
                            {"tau_final", "identical rows of the k-th power"}};
    return inst;
}

inline std::vector<std::pair<std::size_t, std::size_t>> path_graph(std::size_t sites) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i + 1 < sites; ++i) e.push_back({i, i + 1});
    return e;
}

inline std::vector<std::pair<std::size_t, std::size_t>> cycle_graph(std::size_t sites) {
    auto e = path_graph(sites);
    if (sites > 2) e.push_back({sites - 1, 0});
    return e;
}

inline std::vector<std::pair<std::size_t, std::size_t>> complete_graph(std::size_t sites) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < sites; ++i)
        for (std::size_t j = i + 1; j < sites; ++j) e.push_back({i, j});
    return e;
}

// Single-site heat-bath sampler for spin configurations on a graph with
// energy U(x) = beta sum_{g1~g2} x(g1) x(g2) + h sum_g x(g). States are the
// |G|-bit integers with bit g = (spin_g + 1)/2; the metric counts differing
// sites; pi comes from exact enumeration. Reversible by construction.
inline ZooInstance ising_heat_bath(const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   std::size_t sites, double beta, double h) {
    if (sites < 1 || sites > 12)
        throw InvalidParameter("ising_heat_bath: sites must lie in [1, 12]");
    if (!(beta >= 0.0)) throw InvalidParameter("ising_heat_bath: beta must be >= 0");
    for (const auto& [g1, g2] : edges)
        if (g1 >= sites || g2 >= sites || g1 == g2)
            throw InvalidParameter("ising_heat_bath: bad edge");
    const std::size_t n = std::size_t{1} << sites;
    FiniteStateSpace space(n);

    auto spin = [](std::size_t state, std::size_t g) {
        return (state >> g) & 1U ? 1.0 : -1.0;
    };
    auto energy = [&](std::size_t state) {
        double u = 0.0;
        for (const auto& [g1, g2] : edges) u += beta * spin(state, g1) * spin(state, g2);
        for (std::size_t g = 0; g < sites; ++g) u += h * spin(state, g);
        return u;
    };

    std::vector<double> weight(n);
    double z = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        weight[x] = std::exp(-energy(x));
        z += weight[x];
    }
    std::vector<double> pi(n);
    for (std::size_t x = 0; x < n; ++x) pi[x] = weight[x] / z;

    Matrix rows(n, n, 0.0);
    const double site_prob = 1.0 / static_cast<double>(sites);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t g = 0; g < sites; ++g) {
            const std::size_t up = x | (std::size_t{1} << g);
            const std::size_t down = x & ~(std::size_t{1} << g);
            const double wu = weight[up], wd = weight[down];
            rows(x, up) += site_prob * wu / (wu + wd);
            rows(x, down) += site_prob * wd / (wu + wd);
        }
    }

    Matrix cost(n, n, 0.0);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            cost(x, y) = static_cast<double>(__builtin_popcountll(x ^ y));

    ZooInstance inst;
    inst.kernel = FiniteKernel(space, std::move(rows));
    inst.metric = MetricSpec(space, std::move(cost), MetricKind::general);
    inst.pi = Distribution(space, std::move(pi));
    inst.spec.name = "ising-heat-bath";
    inst.spec.params = {{"sites", static_cast<double>(sites)},
                        {"beta", beta},
                        {"h", h},
                        {"edges", static_cast<double>(edges.size())}};
    if (beta == 0.0 && h == 0.0) {
        const double tau =
            sites == 1 ? 0.0 : 1.0 - 1.0 / static_cast<double>(sites);
        inst.spec.expected = {{"tau", tau}};
        inst.spec.provenance = {{"tau", "independent sites: uniform single-site refresh"}};
    }
    return inst;
}

// Accept-reject kernel with a state-independent proposal:
// P(x,y) = proposal(y) min(1, w(y)/w(x)) off the diagonal, w = target /
// proposal, remainder on the diagonal. Reversible w.r.t. the target; with
// the trivial metric tau(P) <= 1 - 1/max w.
inline FiniteKernel independent_mh(const Distribution& target, const Distribution& proposal) {
    if (!same_space(target.space, proposal.space))
        throw ShapeMismatch("independent_mh: space mismatch");
    const std::size_t n = target.n();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (target.weights[i] > 0.0 && !(proposal.weights[i] > 0.0))
            throw SupportViolation("independent_mh: proposal vanishes on the target support");
        if (proposal.weights[i] > 0.0) w[i] = target.weights[i] / proposal.weights[i];
    }
    Matrix rows(n, n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        double off = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            double accept = 1.0;
            if (w[x] > 0.0) accept = std::min(1.0, w[y] / w[x]);
            rows(x, y) = proposal.weights[y] * accept;
            off += rows(x, y);
        }
        rows(x, x) = 1.0 - off;
    }
    return FiniteKernel(target.space, std::move(rows));
}

// (1-theta) Q + theta Pi with Pi jumping straight to pi_target. Contractive
// by construction: tau <= (1-theta) tau(Q).
inline FiniteKernel dobrushin_mixture(const FiniteKernel& q, double theta,
                                      const Distribution& pi_target) {
    if (!same_space(q.space, pi_target.space))
        throw ShapeMismatch("dobrushin_mixture: space mismatch");
    if (!(theta > 0.0 && theta <= 1.0))
        throw InvalidParameter("dobrushin_mixture: theta must lie in (0,1]");
    const std::vector<double> piq = vecmat(pi_target.weights, q.rows);
    double err = 0.0;
    for (std::size_t i = 0; i < q.n(); ++i) err += std::fabs(piq[i] - pi_target.weights[i]);
    if (err > 1e-10)
        throw InvalidParameter("dobrushin_mixture: pi_target is not invariant for Q");
    Matrix rows(q.n(), q.n());
    for (std::size_t x = 0; x < q.n(); ++x)
        for (std::size_t y = 0; y < q.n(); ++y)
            rows(x, y) = (1.0 - theta) * q(x, y) + theta * pi_target.weights[y];
    return FiniteKernel(q.space, std::move(rows));
}

// Optional Lyapunov weighting for random_reversible: the returned metric is
// d(x,y) = 1{x != y} (V(x)^alpha + V(y)^alpha) with alpha in (0, 1/2).
struct DriftSpec {
    std::vector<double> V;
    double alpha = 0.4;
};

struct RandomReversible {
    FiniteKernel kernel;
    Distribution target;
    MetricSpec metric;
    std::uint64_t seed = 0;
    ModelSpec spec;
};

// Accept-reject kernel over a seeded random positive target with a uniform
// proposal; reversible by construction and contracting on its metric at
// lag 1 (rows share at least 1/(n max w) of mass).
inline RandomReversible random_reversible(std::size_t n, std::uint64_t seed,
                                          std::optional<DriftSpec> drift = std::nullopt) {
    if (n < 2) throw InvalidParameter("random_reversible: n must be >= 2");
    FiniteStateSpace space(n);
    std::vector<double> target(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng::uniform(seed, 0x7a6fUL, i);
        target[i] = std::exp(1.5 * (2.0 * u - 1.0));
        total += target[i];
    }
    for (double& v : target) v /= total;

    Matrix rows(n, n, 0.0);
    const double prop = 1.0 / static_cast<double>(n);
    for (std::size_t x = 0; x < n; ++x) {
        double off = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            rows(x, y) = prop * std::min(1.0, target[y] / target[x]);
            off += rows(x, y);
        }
        rows(x, x) = 1.0 - off;
    }

    RandomReversible out;
    out.kernel = FiniteKernel(space, std::move(rows));
    out.target = Distribution(space, std::move(target));
    out.seed = seed;
    out.spec.name = "random-reversible";
    out.spec.params = {{"n", static_cast<double>(n)},
                       {"seed", static_cast<double>(seed)}};
    if (drift) {
        if (!(drift->alpha > 0.0 && drift->alpha < 0.5))
            throw InvalidParameter("random_reversible: alpha must lie in (0, 1/2)");
        if (drift->V.size() != n) throw ShapeMismatch("random_reversible: V size mismatch");
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(drift->V[i] >= 1.0))
                throw InvalidParameter("random_reversible: V must be >= 1");
            w[i] = std::pow(drift->V[i], drift->alpha);
        }
        out.metric = v_weighted_metric(space, std::move(w));
        out.spec.params["alpha"] = drift->alpha;
    } else {
        out.metric = trivial_metric(space);
    }
    return out;
}

// Catalog for the CLI. Continuous-state samplers are listed for reference
// only; this toolkit works on finite state spaces.
struct CatalogEntry {
    std::string name;
    std::string params;
    std::string summary;
    bool instantiable = true;
};

inline std::vector<CatalogEntry> catalog() {
    return {
        {"two-state", "a, b", "two-state chain with closed-form tau, pi, kappa, Lambda", true},
        {"dyadic-shift", "k", "doubling-map chain on the 2^k-point dyadic grid", true},
        {"ising-heat-bath", "sites, beta, h, graph=path|cycle|complete",
         "single-site heat bath for spin configurations", true},
        {"independent-mh", "n, seed", "independent-proposal accept-reject chain", true},
        {"dobrushin-mixture", "n, seed, theta",
         "(1-theta) Q + theta Pi mixture over a random reversible Q", true},
        {"random-reversible", "n, seed [, alpha, growth]",
         "seeded random accept-reject chain; optional Lyapunov-weighted metric", true},
        {"simple-slice-sampling", "-", "continuous-state sampler; outside finite-state scope",
         false},
        {"geodesic-slice-sampling", "-", "continuous-state sampler; outside finite-state scope",
         false},
        {"stereographic-mcmc", "-", "continuous-state sampler; outside finite-state scope",
         false},
        {"mala", "-", "continuous-state sampler; outside finite-state scope", false},
        {"nuts", "-", "continuous-state sampler; outside finite-state scope", false},
    };
}

} // namespace wcmc::zoo
