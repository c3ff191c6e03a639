#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "wcmc/core.hpp"
#include "wcmc/parallel.hpp"

namespace wcmc {

// Optimal coupling between two distributions together with its cost.
struct TransportPlan {
    Matrix plan;
    double value = 0.0;
};

// tau(P^j) ladder with the minimal contracting lag m, the series constant
// Lambda = sum_j tau(P^j) certified up to `certified_tail`, and witness
// pairs attaining each recorded tau.
struct ContractionProfile {
    std::vector<double> taus;                                     // lags 1..m
    std::vector<std::pair<std::size_t, std::size_t>> witnesses;   // per lag
    std::size_t m = 0;
    double lambda = 0.0;
    double certified_tail = 0.0;

    // recorded block lags the tail certificates are built from; the first
    // entry is the lag-m block and each doubling appends one. `sum_below`
    // bounds sum_{j < lag} tau(P^j) using recorded values only.
    struct Block {
        std::uint64_t lag = 0;
        double tau = 1.0;
        double sum_below = 0.0;
    };
    std::vector<Block> blocks;

    // two a-priori upper bounds on Lambda, recorded for reference:
    // geometric   sum_{j<m} tau(P^j) / (1 - tau(P^m))
    // product     m * tau(P)^m / (1 - tau(P^m))
    double bound_geometric = 0.0;
    double bound_product = 0.0;

    // pair coverage of the tau sweeps (1 when exhaustive; below 1 the
    // recorded taus are subsample lower estimates)
    double coverage = 1.0;

    double tau_final() const { return taus.empty() ? 1.0 : taus.back(); }
};

struct EccentricityReport {
    double p = 1.0;
    std::vector<double> values;  // E_p(x) per state
    double eps_p = 0.0;          // || E_1 ||_{L^p(pi)}
};

struct TauResult {
    double tau = 0.0;
    std::pair<std::size_t, std::size_t> witness{0, 0};
    double coverage = 1.0;  // fraction of unordered pairs examined
};

// Unordered state pairs; the exhaustive tau sweep is O(n^2) transport LPs,
// so callers above kPairExhaustiveLimit must supply a subsample and the
// result reports its coverage honestly.
using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

inline constexpr std::size_t kPairExhaustiveLimit = 256;

inline PairList all_state_pairs(std::size_t n) {
    PairList pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) pairs.push_back({x, y});
    return pairs;
}

// Deterministic lexicographic-stride subsample of roughly `count` pairs.
inline PairList strided_pair_sample(std::size_t n, std::size_t count) {
    if (count == 0) throw InvalidParameter("strided_pair_sample: count must be positive");
    const std::size_t total = n * (n - 1) / 2;
    const std::size_t stride = std::max<std::size_t>(1, total / count);
    PairList pairs;
    std::size_t index = 0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y, ++index)
            if (index % stride == 0) pairs.push_back({x, y});
    return pairs;
}

namespace detail {

// Primal network simplex for the balanced transportation problem on the
// complete bipartite graph. Dantzig pricing normally; a degenerate stall
// switches to Bland's rule until progress resumes. A cycle is a purely
// degenerate run, so it always trips the stall counter and Bland then
// escapes it; every non-degenerate pivot strictly lowers the objective, so
// no basis can recur.
class TransportSimplex {
public:
    TransportSimplex(std::vector<double> supply, std::vector<double> demand,
                     std::vector<double> cost, std::size_t iter_cap)
        : m_(supply.size()), n_(demand.size()), supply_(std::move(supply)),
          demand_(std::move(demand)), cost_(std::move(cost)), iter_cap_(iter_cap) {}

    // flows per arc (i*n + j) at optimality
    const std::vector<double>& solve() {
        flow_.assign(m_ * n_, 0.0);
        in_basis_.assign(m_ * n_, 0);
        adj_.assign(m_ + n_, {});
        northwest_corner();

        double cmax = 0.0;
        for (double c : cost_) cmax = std::max(cmax, std::fabs(c));
        const double eps = 1e-12 * (1.0 + cmax);

        const std::size_t stall_limit = m_ + n_ + 16;
        std::size_t stalled = 0;
        bool bland = false;

        for (std::size_t iter = 0; iter < iter_cap_; ++iter) {
            compute_potentials();
            const std::size_t entering = find_entering(eps, bland);
            if (entering == npos) return flow_;
            const double delta = pivot(entering);
            if (delta <= 1e-15) {
                if (++stalled > stall_limit) bland = true;
            } else {
                stalled = 0;
                bland = false;
            }
        }
        throw SolverFailure("transport simplex exceeded its iteration cap");
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t m_, n_;
    std::vector<double> supply_, demand_, cost_;
    std::size_t iter_cap_;

    std::vector<double> flow_;
    std::vector<char> in_basis_;
    std::vector<std::vector<std::size_t>> adj_;  // node -> incident basic arcs
    std::vector<double> pot_;
    std::vector<std::size_t> parent_, parent_arc_, depth_;

    std::size_t arc_src(std::size_t a) const { return a / n_; }
    std::size_t arc_snk(std::size_t a) const { return m_ + a % n_; }

    void add_basic(std::size_t a) {
        in_basis_[a] = 1;
        adj_[arc_src(a)].push_back(a);
        adj_[arc_snk(a)].push_back(a);
    }

    void remove_basic(std::size_t a) {
        in_basis_[a] = 0;
        auto drop = [a](std::vector<std::size_t>& v) {
            v.erase(std::find(v.begin(), v.end(), a));
        };
        drop(adj_[arc_src(a)]);
        drop(adj_[arc_snk(a)]);
    }

    void northwest_corner() {
        std::size_t i = 0, j = 0;
        double a = supply_[0], b = demand_[0];
        while (true) {
            const double alloc = std::min(a, b);
            flow_[i * n_ + j] = alloc;
            add_basic(i * n_ + j);
            a -= alloc;
            b -= alloc;
            if (i == m_ - 1 && j == n_ - 1) break;
            if (i < m_ - 1 && (a < b || j == n_ - 1)) {
                ++i;
                a = supply_[i];
            } else {
                ++j;
                b = demand_[j];
            }
        }
    }

    // potentials + rooted-tree arrays from node 0 over the basis tree
    void compute_potentials() {
        const std::size_t nodes = m_ + n_;
        pot_.assign(nodes, 0.0);
        parent_.assign(nodes, npos);
        parent_arc_.assign(nodes, npos);
        depth_.assign(nodes, 0);
        std::vector<char> seen(nodes, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t a : adj_[v]) {
                const std::size_t s = arc_src(a), t = arc_snk(a);
                const std::size_t w = (s == v) ? t : s;
                if (seen[w]) continue;
                seen[w] = 1;
                pot_[w] = cost_[a] - pot_[v];
                parent_[w] = v;
                parent_arc_[w] = a;
                depth_[w] = depth_[v] + 1;
                stack.push_back(w);
            }
        }
    }

    std::size_t find_entering(double eps, bool bland) const {
        std::size_t best = npos;
        double best_rc = -eps;
        for (std::size_t a = 0; a < m_ * n_; ++a) {
            if (in_basis_[a]) continue;
            const double rc = cost_[a] - pot_[arc_src(a)] - pot_[arc_snk(a)];
            if (rc < best_rc) {
                best = a;
                best_rc = rc;
                if (bland) return best;  // first eligible arc
            }
        }
        return best;
    }

    // Applies the pivot for `entering`; returns the flow change.
    double pivot(std::size_t entering) {
        // cycle = entering arc plus the tree path, traversed snk -> ... -> src;
        // arcs traversed sink-to-source lose flow, source-to-sink gain it
        std::vector<std::pair<std::size_t, int>> cycle;  // (arc, sign)
        std::size_t x = arc_src(entering), y = arc_snk(entering);
        std::vector<std::pair<std::size_t, int>> from_src;  // reversed later
        while (depth_[x] > depth_[y]) {
            from_src.push_back({parent_arc_[x], parent_[x] < m_ ? +1 : -1});
            x = parent_[x];
        }
        while (depth_[y] > depth_[x]) {
            cycle.push_back({parent_arc_[y], y < m_ ? +1 : -1});
            y = parent_[y];
        }
        while (x != y) {
            from_src.push_back({parent_arc_[x], parent_[x] < m_ ? +1 : -1});
            x = parent_[x];
            cycle.push_back({parent_arc_[y], y < m_ ? +1 : -1});
            y = parent_[y];
        }
        for (auto it = from_src.rbegin(); it != from_src.rend(); ++it) cycle.push_back(*it);

        double delta = std::numeric_limits<double>::infinity();
        std::size_t leaving = npos;
        for (const auto& [a, sign] : cycle) {
            if (sign < 0 && (flow_[a] < delta || (flow_[a] == delta && a < leaving))) {
                delta = flow_[a];
                leaving = a;
            }
        }
        if (leaving == npos) throw SolverFailure("transport simplex: cycle without a leaving arc");

        flow_[entering] += delta;
        for (const auto& [a, sign] : cycle) {
            flow_[a] += sign * delta;
            if (flow_[a] < 0.0) flow_[a] = 0.0;
        }
        remove_basic(leaving);
        add_basic(entering);
        return delta;
    }
};

} // namespace detail

// Exact 1-Wasserstein coupling via the transportation LP. Mass common to mu
// and nu stays in place (valid since d satisfies the triangle inequality);
// only the difference mass enters the simplex.
inline TransportPlan wasserstein(const Distribution& mu, const Distribution& nu,
                                 const MetricSpec& d) {
    if (!same_space(mu.space, d.space) || !same_space(nu.space, d.space))
        throw ShapeMismatch("wasserstein: space mismatch");
    const std::size_t n = d.n();

    TransportPlan out;
    out.plan = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        out.plan(i, i) = std::min(mu.weights[i], nu.weights[i]);

    std::vector<std::size_t> srcs, snks;
    std::vector<double> supply, demand;
    double total_src = 0.0, total_snk = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double excess = mu.weights[i] - nu.weights[i];
        if (excess > 0.0) {
            srcs.push_back(i);
            supply.push_back(excess);
            total_src += excess;
        } else if (excess < 0.0) {
            snks.push_back(i);
            demand.push_back(-excess);
            total_snk += excess < 0.0 ? -excess : 0.0;
        }
    }
    if (srcs.empty() || snks.empty() || total_src <= 1e-15 || total_snk <= 1e-15) {
        out.value = 0.0;
        return out;
    }
    // rounding can leave the two totals apart by a few ulps; rebalance
    const double ratio = total_src / total_snk;
    for (double& v : demand) v *= ratio;

    std::vector<double> cost(srcs.size() * snks.size());
    for (std::size_t i = 0; i < srcs.size(); ++i)
        for (std::size_t j = 0; j < snks.size(); ++j)
            cost[i * snks.size() + j] = d(srcs[i], snks[j]);

    detail::TransportSimplex simplex(std::move(supply), std::move(demand), std::move(cost),
                                     50 * n * n + 1000);
    const std::vector<double>& flow = simplex.solve();

    double value = 0.0;
    for (std::size_t i = 0; i < srcs.size(); ++i) {
        for (std::size_t j = 0; j < snks.size(); ++j) {
            const double f = flow[i * snks.size() + j];
            if (f <= 0.0) continue;
            out.plan(srcs[i], snks[j]) += f;
            value += f * d(srcs[i], snks[j]);
        }
    }
    out.value = value;
    return out;
}

// Optimal dual potential: a function with ||f||_d <= 1 whose pairing with
// mu - nu attains the transport cost. Recovered from the optimal plan by
// solving the difference-constraint system
//   f(x) - f(y) <= d(x,y)          for all pairs (the full Lipschitz cone)
//   f(x) - f(y) >= d(x,y) - slack  on arcs carrying flow
// with Bellman-Ford; feasibility is exactly complementary slackness.
// Normalized to f(0) = 0.
inline StateFunction kantorovich_potential(const Distribution& mu, const Distribution& nu,
                                           const MetricSpec& d) {
    const TransportPlan plan = wasserstein(mu, nu, d);
    const std::size_t n = d.n();

    struct Edge { std::size_t from, to; double w; };
    std::vector<Edge> edges;
    edges.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y) edges.push_back({y, x, d(x, y)});
    double dmax = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) dmax = std::max(dmax, d(x, y));
    const double slack = 1e-12 * (1.0 + dmax);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y && plan.plan(x, y) > 1e-13)
                edges.push_back({x, y, -d(x, y) + slack});

    std::vector<double> f(n, 0.0);  // virtual source at distance 0 everywhere
    bool changed = true;
    for (std::size_t pass = 0; pass <= n + 1 && changed; ++pass) {
        if (pass == n + 1)
            throw SolverFailure("kantorovich_potential: negative cycle in the dual system");
        changed = false;
        for (const Edge& e : edges) {
            const double cand = f[e.from] + e.w;
            if (cand < f[e.to] - 1e-15) {
                f[e.to] = cand;
                changed = true;
            }
        }
    }
    const double f0 = f[0];
    for (double& v : f) v -= f0;
    StateFunction potential(d.space, std::move(f));

    // the fixpoint ripple of the relaxation is absolute; on metrics with
    // very short edges it can leak above ratio 1, so scale back into the
    // unit ball (the pairing shrinks by the same near-1 factor)
    const double lip = lipschitz_seminorm(potential, d);
    if (lip > 1.0)
        for (double& v : potential.values) v /= lip;
    return potential;
}

// Closed forms available for the weighted-indicator metrics:
// trivial d = 2*1{x!=y} and v-weighted d = 1{x!=y} (V(x)+V(y)), where the
// optimal cost is sum_x w(x) |mu(x)-nu(x)| with w the per-state weight.
inline double wasserstein_closed_form(const Distribution& mu, const Distribution& nu,
                                      const MetricSpec& d) {
    if (!same_space(mu.space, d.space) || !same_space(nu.space, d.space))
        throw ShapeMismatch("wasserstein_closed_form: space mismatch");
    if (d.kind != MetricKind::trivial && d.kind != MetricKind::v_weighted)
        throw WrongKind("wasserstein_closed_form: metric kind has no closed form");
    if (d.weights.size() != d.n())
        throw WrongKind("wasserstein_closed_form: metric carries no weight vector");
    double s = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i)
        s += d.weights[i] * std::fabs(mu.weights[i] - nu.weights[i]);
    return s;
}

inline double diameter(const MetricSpec& d) {
    double m = 0.0;
    for (double v : d.cost.data) m = std::max(m, v);
    return m;
}

// tau(P) = max over pairs x != y of W(P(x,.), P(y,.)) / d(x,y).
// Enumerates unordered pairs (W and d are symmetric); ties resolved by
// lexicographic pair order. The per-pair LPs are an order-independent
// parallel map. Above kPairExhaustiveLimit states a caller-supplied
// subsample is required; the result then reports a lower estimate with its
// coverage.
inline TauResult kantorovich_norm(const FiniteKernel& p, const MetricSpec& d,
                                  unsigned threads = 1, const PairList* subsample = nullptr) {
    if (!same_space(p.space, d.space)) throw ShapeMismatch("kantorovich_norm: space mismatch");
    const std::size_t n = p.n();
    PairList pairs;
    if (subsample) {
        if (subsample->empty())
            throw InvalidParameter("kantorovich_norm: empty pair subsample");
        for (const auto& [x, y] : *subsample)
            if (x >= y || y >= n)
                throw InvalidParameter("kantorovich_norm: subsample pair out of range");
        pairs = *subsample;
    } else {
        if (n > kPairExhaustiveLimit)
            throw InvalidParameter(
                "kantorovich_norm: supply a pair subsample above 256 states");
        pairs = all_state_pairs(n);
    }

    std::vector<double> ratio(pairs.size(), 0.0);
    std::vector<std::exception_ptr> errors(threads > 1 ? pairs.size() : 0);
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        const auto [x, y] = pairs[k];
        Distribution row_x(p.space, std::vector<double>(p.rows.data.begin() + x * n,
                                                        p.rows.data.begin() + (x + 1) * n));
        Distribution row_y(p.space, std::vector<double>(p.rows.data.begin() + y * n,
                                                        p.rows.data.begin() + (y + 1) * n));
        if (errors.empty()) {
            ratio[k] = wasserstein(row_x, row_y, d).value / d(x, y);
        } else {
            try {
                ratio[k] = wasserstein(row_x, row_y, d).value / d(x, y);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    TauResult res;
    res.tau = 0.0;
    res.witness = pairs.empty() ? std::pair<std::size_t, std::size_t>{0, 1} : pairs[0];
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (ratio[k] > res.tau) {
            res.tau = ratio[k];
            res.witness = pairs[k];
        }
    }
    res.coverage =
        static_cast<double>(pairs.size()) / (static_cast<double>(n) * (n - 1) / 2.0);
    return res;
}

// tau(P^j) for consecutive lags until tau < 1, then Lambda = sum_j tau(P^j)
// with a certified geometric tail. The tail uses recorded values only:
// with S = sum of per-lag bounds below the block lag L and T = tau(P^L),
// submultiplicativity gives  sum_{j >= 0} tau(P^j) <= S / (1 - T)  and the
// block lag doubles (squaring the kernel) until S*T/(1-T) < lambda_tol.
inline ContractionProfile contraction_profile(const FiniteKernel& p, const MetricSpec& d,
                                              std::size_t m_max, double lambda_tol = 1e-8,
                                              unsigned threads = 1,
                                              const PairList* subsample = nullptr) {
    if (m_max < 1) throw InvalidParameter("contraction_profile: m_max must be >= 1");
    ContractionProfile prof;

    FiniteKernel power = p;
    for (std::size_t j = 1; j <= m_max; ++j) {
        if (j > 1) power = FiniteKernel(p.space, matmul(power.rows, p.rows));
        const TauResult t = kantorovich_norm(power, d, threads, subsample);
        prof.coverage = std::min(prof.coverage, t.coverage);
        prof.taus.push_back(t.tau);
        prof.witnesses.push_back(t.witness);
        if (t.tau < 1.0) {
            prof.m = j;
            break;
        }
    }
    if (prof.m == 0)
        throw NotContractive("contraction_profile: no lag up to m_max contracts");

    double sum_below_m = 1.0;  // tau(P^0) = 1
    for (std::size_t j = 0; j + 1 < prof.m; ++j) sum_below_m += prof.taus[j];
    const double tau_m = prof.taus.back();
    prof.bound_geometric = sum_below_m / (1.0 - tau_m);
    prof.bound_product =
        static_cast<double>(prof.m) * std::pow(prof.taus.front(), static_cast<double>(prof.m)) /
        (1.0 - tau_m);

    ContractionProfile::Block block{prof.m, tau_m, sum_below_m};
    prof.blocks.push_back(block);
    FiniteKernel block_kernel = std::move(power);

    const int max_doublings = 60;
    for (int k = 0; k < max_doublings; ++k) {
        const double tail = block.sum_below * block.tau / (1.0 - block.tau);
        if (tail < lambda_tol || block.tau == 0.0) break;
        block.sum_below *= 1.0 + block.tau;
        block_kernel = FiniteKernel(p.space, matmul(block_kernel.rows, block_kernel.rows));
        block.lag *= 2;
        const TauResult t = kantorovich_norm(block_kernel, d, threads, subsample);
        prof.coverage = std::min(prof.coverage, t.coverage);
        block.tau = t.tau;
        prof.blocks.push_back(block);
        if (block.tau >= 1.0)
            throw ConvergenceFailure("contraction_profile: tau failed to decay under powering");
    }
    prof.certified_tail =
        block.tau == 0.0 ? 0.0 : block.sum_below * block.tau / (1.0 - block.tau);
    if (prof.certified_tail >= lambda_tol && block.tau > 0.0)
        throw ConvergenceFailure("contraction_profile: tail certificate did not reach lambda_tol");
    prof.lambda = block.sum_below + prof.certified_tail;
    return prof;
}

// E_p(x) = sum_y d(x,y)^p pi(y)
inline double eccentricity(const Distribution& pi, const MetricSpec& d, double p, std::size_t x) {
    if (!same_space(pi.space, d.space)) throw ShapeMismatch("eccentricity: space mismatch");
    if (!(p >= 1.0)) throw InvalidParameter("eccentricity: p must be >= 1");
    if (x >= d.n()) throw InvalidParameter("eccentricity: state index out of range");
    double s = 0.0;
    for (std::size_t y = 0; y < d.n(); ++y) s += std::pow(d(x, y), p) * pi.weights[y];
    return s;
}

inline EccentricityReport eccentricity_norm(const Distribution& pi, const MetricSpec& d, double p) {
    EccentricityReport rep;
    rep.p = p;
    rep.values.resize(d.n());
    std::vector<double> e1(d.n());
    for (std::size_t x = 0; x < d.n(); ++x) {
        rep.values[x] = eccentricity(pi, d, p, x);
        e1[x] = eccentricity(pi, d, 1.0, x);
    }
    rep.eps_p = lp_norm(StateFunction(d.space, std::move(e1)), pi, p);
    return rep;
}

// sigma(x)^2 = 1/2 sum_{y,y'} d(y,y')^2 P(x,y) P(x,y'); sigma is its L^2(pi)
// aggregate.
inline std::pair<StateFunction, double> coarse_diffusion(const FiniteKernel& p, const MetricSpec& d,
                                                         const Distribution& pi) {
    if (!same_space(p.space, d.space) || !same_space(p.space, pi.space))
        throw ShapeMismatch("coarse_diffusion: space mismatch");
    const std::size_t n = p.n();
    std::vector<double> sigma_x(n, 0.0);
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        double s = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            const double pxy = p(x, y);
            if (pxy == 0.0) continue;
            for (std::size_t yp = y + 1; yp < n; ++yp) {
                const double c = d(y, yp);
                s += c * c * pxy * p(x, yp);
            }
        }
        // the double sum over ordered (y,y') is twice the upper triangle
        sigma_x[x] = std::sqrt(s);
        total += pi.weights[x] * s;
    }
    return {StateFunction(p.space, std::move(sigma_x)), std::sqrt(total)};
}

// Convenience constructors for the weighted-indicator metrics.
inline MetricSpec trivial_metric(const FiniteStateSpace& space) {
    const std::size_t n = space.n;
    Matrix c(n, n, 2.0);
    for (std::size_t i = 0; i < n; ++i) c(i, i) = 0.0;
    return MetricSpec(space, std::move(c), MetricKind::trivial, std::vector<double>(n, 1.0));
}

inline MetricSpec v_weighted_metric(const FiniteStateSpace& space, std::vector<double> w) {
    if (w.size() != space.n) throw ShapeMismatch("v_weighted_metric: weight count mismatch");
    for (double v : w)
        if (!(v > 0.0)) throw InvalidParameter("v_weighted_metric: weights must be positive");
    const std::size_t n = space.n;
    Matrix c(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) c(i, j) = w[i] + w[j];
    return MetricSpec(space, std::move(c), MetricKind::v_weighted, std::move(w));
}

inline MetricSpec line_metric(const FiniteStateSpace& space, const std::vector<double>& positions) {
    if (positions.size() != space.n) throw ShapeMismatch("line_metric: position count mismatch");
    const std::size_t n = space.n;
    Matrix c(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = std::fabs(positions[i] - positions[j]);
    return MetricSpec(space, std::move(c), MetricKind::line);
}

} // namespace wcmc
