#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "wcmc/errors.hpp"
#include "wcmc/linalg.hpp"

namespace wcmc {

inline constexpr double kDefaultTol = 1e-10;

// Indexed finite state space. Labels are display-only.
struct FiniteStateSpace {
    std::size_t n = 0;
    std::vector<std::string> labels;

    FiniteStateSpace() = default;
    explicit FiniteStateSpace(std::size_t n_, std::vector<std::string> labels_ = {})
        : n(n_), labels(std::move(labels_)) {
        if (n < 2) throw InvalidParameter("state space must have at least two states");
        if (!labels.empty() && labels.size() != n)
            throw InvalidParameter("label count does not match state count");
    }
};

inline bool same_space(const FiniteStateSpace& a, const FiniteStateSpace& b) { return a.n == b.n; }

// Row-stochastic transition matrix; row i is the distribution of the next
// state given the current state i.
struct FiniteKernel {
    FiniteStateSpace space;
    Matrix rows;

    FiniteKernel() = default;
    FiniteKernel(FiniteStateSpace s, Matrix r) : space(std::move(s)), rows(std::move(r)) {
        if (rows.rows != space.n || rows.cols != space.n)
            throw ShapeMismatch("kernel matrix does not match state count");
    }
    double operator()(std::size_t i, std::size_t j) const { return rows(i, j); }
    std::size_t n() const { return space.n; }
};

struct Distribution {
    FiniteStateSpace space;
    std::vector<double> weights;

    Distribution() = default;
    Distribution(FiniteStateSpace s, std::vector<double> w)
        : space(std::move(s)), weights(std::move(w)) {
        if (weights.size() != space.n) throw ShapeMismatch("weight vector does not match state count");
    }
    std::size_t n() const { return space.n; }
};

struct StateFunction {
    FiniteStateSpace space;
    std::vector<double> values;

    StateFunction() = default;
    StateFunction(FiniteStateSpace s, std::vector<double> v)
        : space(std::move(s)), values(std::move(v)) {
        if (values.size() != space.n) throw ShapeMismatch("value vector does not match state count");
    }
    std::size_t n() const { return space.n; }
};

enum class MetricKind { general, trivial, line, v_weighted };

inline std::string metric_kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::general: return "general";
        case MetricKind::trivial: return "trivial";
        case MetricKind::line: return "line";
        case MetricKind::v_weighted: return "v-weighted";
    }
    return "general";
}

// Symmetric cost matrix with metric axioms. `weights` is populated for the
// trivial and v-weighted kinds, where d(x,y) = 1{x!=y} (w(x)+w(y)).
struct MetricSpec {
    FiniteStateSpace space;
    Matrix cost;
    MetricKind kind = MetricKind::general;
    std::vector<double> weights;

    MetricSpec() = default;
    MetricSpec(FiniteStateSpace s, Matrix c, MetricKind k = MetricKind::general,
               std::vector<double> w = {})
        : space(std::move(s)), cost(std::move(c)), kind(k), weights(std::move(w)) {
        if (cost.rows != space.n || cost.cols != space.n)
            throw ShapeMismatch("cost matrix does not match state count");
    }
    double operator()(std::size_t i, std::size_t j) const { return cost(i, j); }
    std::size_t n() const { return space.n; }
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string msg) { violations.push_back(std::move(msg)); }
    std::string summary() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i) os << "; ";
            os << violations[i];
        }
        return os.str();
    }
};

inline ValidationReport validate_kernel(const FiniteKernel& p, double tol = 1e-12) {
    if (!(tol > 0.0)) throw InvalidParameter("validate_kernel: tol must be positive");
    ValidationReport rep;
    const std::size_t n = p.n();
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = p(i, j);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") is not finite";
                rep.add(os.str());
                return rep;
            }
            if (v < -tol || v > 1.0 + tol) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") out of range: " << v;
                rep.add(os.str());
            }
            sum += v;
        }
        if (std::fabs(sum - 1.0) > tol) {
            std::ostringstream os;
            os << "row " << i << " sums to " << sum;
            rep.add(os.str());
        }
    }
    return rep;
}

inline ValidationReport validate_distribution(const Distribution& mu, double tol = 1e-12) {
    ValidationReport rep;
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.n(); ++i) {
        const double v = mu.weights[i];
        if (!std::isfinite(v) || v < -tol) {
            std::ostringstream os;
            os << "weight " << i << " invalid: " << v;
            rep.add(os.str());
        }
        sum += v;
    }
    if (std::fabs(sum - 1.0) > tol) {
        std::ostringstream os;
        os << "weights sum to " << sum;
        rep.add(os.str());
    }
    return rep;
}

// Metric axioms; the O(n^3) triangle check is skipped above `triangle_limit`.
inline ValidationReport validate_metric(const MetricSpec& d, double tol = 1e-12,
                                        std::size_t triangle_limit = 512) {
    ValidationReport rep;
    const std::size_t n = d.n();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(d(i, i)) > tol) {
            std::ostringstream os;
            os << "cost(" << i << "," << i << ") nonzero";
            rep.add(os.str());
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!std::isfinite(d(i, j))) {
                std::ostringstream os;
                os << "cost(" << i << "," << j << ") not finite";
                rep.add(os.str());
                continue;
            }
            if (std::fabs(d(i, j) - d(j, i)) > tol) {
                std::ostringstream os;
                os << "cost asymmetric at (" << i << "," << j << ")";
                rep.add(os.str());
            }
            if (d(i, j) <= tol) {
                std::ostringstream os;
                os << "cost(" << i << "," << j << ") not positive";
                rep.add(os.str());
            }
        }
    }
    if (n <= triangle_limit && rep.ok()) {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    if (d(x, z) > d(x, y) + d(y, z) + tol) {
                        std::ostringstream os;
                        os << "triangle inequality fails at (" << x << "," << y << "," << z << ")";
                        rep.add(os.str());
                        return rep;
                    }
    }
    return rep;
}

// P^m by repeated squaring. Stochastic products stay row-normalized to
// rounding level; rows are renormalized only when the drift exceeds 1e-9,
// and the observed drift is reported through `drift_out` when asked for.
inline FiniteKernel kernel_power(const FiniteKernel& p, std::uint64_t m, double* drift_out = nullptr) {
    if (m < 1) throw InvalidParameter("kernel_power: exponent must be >= 1");
    if (drift_out) *drift_out = 0.0;
    if (m == 1) return p;

    Matrix result = Matrix::identity(p.n());
    Matrix base = p.rows;
    std::uint64_t e = m;
    while (e > 0) {
        if (e & 1ULL) result = matmul(result, base);
        e >>= 1;
        if (e > 0) base = matmul(base, base);
    }

    double drift = 0.0;
    for (std::size_t i = 0; i < result.rows; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < result.cols; ++j) sum += result(i, j);
        drift = std::max(drift, std::fabs(sum - 1.0));
    }
    if (drift_out) *drift_out = drift;
    if (drift > 1e-9) {
        for (std::size_t i = 0; i < result.rows; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < result.cols; ++j) sum += result(i, j);
            if (sum <= 0.0) throw NumericalFailure("kernel_power: row collapsed to zero mass");
            for (std::size_t j = 0; j < result.cols; ++j) result(i, j) /= sum;
        }
    }
    return FiniteKernel(p.space, std::move(result));
}

// (Pf)(x) = sum_y P(x,y) f(y)
inline StateFunction apply_to_function(const FiniteKernel& p, const StateFunction& f) {
    if (!same_space(p.space, f.space)) throw ShapeMismatch("apply_to_function: space mismatch");
    return StateFunction(f.space, matvec(p.rows, f.values));
}

// (mu P)(y) = sum_x mu(x) P(x,y)
inline Distribution apply_to_distribution(const Distribution& mu, const FiniteKernel& p) {
    if (!same_space(p.space, mu.space)) throw ShapeMismatch("apply_to_distribution: space mismatch");
    return Distribution(mu.space, vecmat(mu.weights, p.rows));
}

inline double expectation(const Distribution& pi, const StateFunction& f) {
    if (!same_space(pi.space, f.space)) throw ShapeMismatch("expectation: space mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < pi.n(); ++i) s += pi.weights[i] * f.values[i];
    return s;
}

inline StateFunction centered(const StateFunction& f, const Distribution& pi) {
    const double mean = expectation(pi, f);
    StateFunction g = f;
    for (double& v : g.values) v -= mean;
    return g;
}

namespace detail {

// Strong connectivity of the positive-support digraph (iterative Tarjan).
inline bool strongly_connected(const FiniteKernel& p, double support_tol = 0.0) {
    const std::size_t n = p.n();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (p(i, j) > support_tol) adj[i].push_back(j);

    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    int next_index = 0;
    std::size_t scc_count = 0;

    struct Frame { std::size_t v; std::size_t child; };
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] != -1) continue;
        std::vector<Frame> call;
        call.push_back({s, 0});
        index[s] = low[s] = next_index++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!call.empty()) {
            Frame& fr = call.back();
            if (fr.child < adj[fr.v].size()) {
                const std::size_t w = adj[fr.v][fr.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
            } else {
                if (low[fr.v] == index[fr.v]) {
                    ++scc_count;
                    if (scc_count > 1) return false;
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                    } while (w != fr.v);
                }
                const std::size_t v = fr.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return scc_count == 1;
}

inline Distribution stationary_by_power_iteration(const FiniteKernel& p, double tol) {
    const std::size_t n = p.n();
    std::vector<double> mu(n, 1.0 / static_cast<double>(n));
    const std::size_t cap = 200000;
    for (std::size_t it = 0; it < cap; ++it) {
        std::vector<double> next = vecmat(mu, p.rows);
        double sum = 0.0;
        for (double v : next) sum += v;
        for (double& v : next) v /= sum;
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::fabs(next[i] - mu[i]);
        mu = std::move(next);
        if (delta <= tol * 0.1) return Distribution(p.space, std::move(mu));
    }
    throw ConvergenceFailure("stationary_distribution: power iteration did not converge");
}

} // namespace detail

// Unique invariant distribution of an irreducible kernel. Solved directly
// from (P^T - I) pi = 0 with the last equation replaced by normalization
// (the dropped balance equation is implied by the others); power iteration
// above n = 5000 where an O(n^3) solve stops being reasonable.
inline Distribution stationary_distribution(const FiniteKernel& p, double tol = kDefaultTol) {
    const std::size_t n = p.n();
    if (!detail::strongly_connected(p))
        throw Reducible("stationary_distribution: support graph is not strongly connected");

    Distribution pi(p.space, std::vector<double>(n, 0.0));
    if (n > 5000) {
        pi = detail::stationary_by_power_iteration(p, tol);
    } else {
        Matrix a(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
        for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
        std::vector<double> b(n, 0.0);
        b[n - 1] = 1.0;
        LuFactors f = lu_factor(std::move(a));
        if (f.singular) throw ConvergenceFailure("stationary_distribution: singular linear system");
        pi.weights = lu_solve(f, b);
    }

    double sum = 0.0;
    for (double v : pi.weights) sum += v;
    for (double& v : pi.weights) v /= sum;

    double l1 = 0.0;
    const std::vector<double> pip = vecmat(pi.weights, p.rows);
    for (std::size_t i = 0; i < n; ++i) l1 += std::fabs(pip[i] - pi.weights[i]);
    double min_w = std::numeric_limits<double>::infinity();
    for (double v : pi.weights) min_w = std::min(min_w, v);
    if (l1 > tol || !(min_w > 0.0))
        throw ConvergenceFailure("stationary_distribution: solution failed the invariance check");
    return pi;
}

// Detailed balance: max |pi(x)P(x,y) - pi(y)P(y,x)| <= tol.
inline bool check_reversibility(const FiniteKernel& p, const Distribution& pi, double tol) {
    if (!same_space(p.space, pi.space)) throw ShapeMismatch("check_reversibility: space mismatch");
    const std::size_t n = p.n();
    for (std::size_t i = 0; i < n; ++i)
        if (!(pi.weights[i] > 0.0))
            throw InvalidParameter("check_reversibility: pi must be strictly positive");
    double worst = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            worst = std::max(worst, std::fabs(pi.weights[x] * p(x, y) - pi.weights[y] * p(y, x)));
    return worst <= tol;
}

// ||f||_d = max_{x != y} |f(x)-f(y)| / d(x,y)
inline double lipschitz_seminorm(const StateFunction& f, const MetricSpec& d) {
    if (!same_space(f.space, d.space)) throw ShapeMismatch("lipschitz_seminorm: space mismatch");
    const std::size_t n = f.n();
    double best = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            best = std::max(best, std::fabs(f.values[x] - f.values[y]) / d(x, y));
    return best;
}

inline StateFunction radon_nikodym(const Distribution& nu, const Distribution& pi) {
    if (!same_space(nu.space, pi.space)) throw ShapeMismatch("radon_nikodym: space mismatch");
    std::vector<double> vals(nu.n(), 0.0);
    for (std::size_t i = 0; i < nu.n(); ++i) {
        if (pi.weights[i] > 0.0) {
            vals[i] = nu.weights[i] / pi.weights[i];
        } else if (nu.weights[i] > 0.0) {
            throw ZeroDenominator("radon_nikodym: nu is not absolutely continuous w.r.t. pi");
        }
    }
    return StateFunction(nu.space, std::move(vals));
}

// L^p(pi) norm; p = infinity means the essential sup over the support of pi.
inline double lp_norm(const StateFunction& f, const Distribution& pi, double p) {
    if (!same_space(f.space, pi.space)) throw ShapeMismatch("lp_norm: space mismatch");
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < f.n(); ++i)
            if (pi.weights[i] > 0.0) m = std::max(m, std::fabs(f.values[i]));
        return m;
    }
    if (!(p >= 1.0)) throw InvalidParameter("lp_norm: p must be >= 1 or infinity");
    double s = 0.0;
    for (std::size_t i = 0; i < f.n(); ++i)
        s += pi.weights[i] * std::pow(std::fabs(f.values[i]), p);
    return std::pow(s, 1.0 / p);
}

} // namespace wcmc
