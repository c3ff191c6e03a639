#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wcmc/core.hpp"
#include "wcmc/parallel.hpp"
#include "wcmc/poisson.hpp"
#include "wcmc/transport.hpp"

namespace wcmc {

namespace rng {

// splitmix64 finalizer
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator keyed by (seed, stream, counter). Streams are the
// replica ids, so replicas are independent and any parallel schedule
// reproduces the same draws.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ (stream + 0xd6e8feb86659fd93ULL));
    h = mix(h ^ (counter + 0xa5a5a5a5a5a5a5a5ULL));
    return h;
}

inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(counter_hash(seed, stream, counter) >> 11) * 0x1.0p-53;
}

} // namespace rng

namespace detail {

// Row-wise inverse-CDF sampler for a kernel.
struct KernelSampler {
    std::size_t n = 0;
    std::vector<double> row_cdf;  // n rows of n entries
    std::vector<double> init_cdf;

    KernelSampler(const FiniteKernel& p, const Distribution& nu) : n(p.n()) {
        row_cdf.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += p(i, j);
                row_cdf[i * n + j] = acc;
            }
            row_cdf[i * n + n - 1] = 1.0;
        }
        init_cdf.resize(n);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += nu.weights[j];
            init_cdf[j] = acc;
        }
        init_cdf[n - 1] = 1.0;
    }

    std::uint32_t draw_init(double u) const { return lookup(init_cdf.data(), u); }
    std::uint32_t draw_step(std::uint32_t from, double u) const {
        return lookup(row_cdf.data() + static_cast<std::size_t>(from) * n, u);
    }

private:
    std::uint32_t lookup(const double* cdf, double u) const {
        const double* it = std::upper_bound(cdf, cdf + n, u);
        std::size_t idx = static_cast<std::size_t>(it - cdf);
        if (idx >= n) idx = n - 1;
        return static_cast<std::uint32_t>(idx);
    }
};

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// regularized incomplete beta, continued-fraction form
inline double betacf(double a, double b, double x) {
    const int max_it = 300;
    const double eps = 1e-14, fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_it; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw NumericalFailure("betacf: continued fraction did not converge");
}

inline double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(ln_front) * betacf(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * betacf(b, a, 1.0 - x) / b;
}

inline double beta_quantile(double prob, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (reg_inc_beta(a, b, mid) < prob) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Clopper-Pearson 95% interval for k successes out of n.
inline std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n,
                                                 double alpha = 0.05) {
    if (n == 0) return {0.0, 1.0};
    const double kk = static_cast<double>(k), nn = static_cast<double>(n);
    const double lo = (k == 0) ? 0.0 : beta_quantile(alpha / 2.0, kk, nn - kk + 1.0);
    const double hi = (k == n) ? 1.0 : beta_quantile(1.0 - alpha / 2.0, kk + 1.0, nn - kk);
    return {clamp01(lo), clamp01(hi)};
}

} // namespace detail

// One realized path X_1..X_{n+1} (one extra state so both the martingale
// and the remainder at lag n are computable).
struct Trajectory {
    std::vector<std::uint32_t> states;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    Distribution nu;
};

inline Trajectory sample_trajectory(const FiniteKernel& p, const Distribution& nu,
                                    std::uint64_t n, std::uint64_t seed,
                                    std::uint64_t stream = 0) {
    if (!same_space(p.space, nu.space)) throw ShapeMismatch("sample_trajectory: space mismatch");
    if (n < 1) throw InvalidParameter("sample_trajectory: n must be >= 1");
    detail::KernelSampler sampler(p, nu);
    Trajectory traj;
    traj.seed = seed;
    traj.stream = stream;
    traj.nu = nu;
    traj.states.resize(n + 1);
    traj.states[0] = sampler.draw_init(rng::uniform(seed, stream, 0));
    for (std::uint64_t k = 1; k <= n; ++k)
        traj.states[k] = sampler.draw_step(traj.states[k - 1], rng::uniform(seed, stream, k));
    return traj;
}

// Exact per-path splitting of the centered partial sums:
//   Delta_j = u(X_{j+1}) - (Pu)(X_j),  M_k = sum Delta_j,
//   R_k = u(X_1) - u(X_{k+1}),         S_k = M_k + R_k.
// S_k is stored as that sum, which makes the identity bit-exact; it equals
// sum_j (f(X_j) - pi(f)) up to the Poisson residual of u.
struct DecompositionSeries {
    std::vector<double> S, M, R;
};

inline DecompositionSeries decompose(const Trajectory& traj, const StateFunction& f,
                                     const PoissonSolution& sol, const FiniteKernel& p) {
    if (!same_space(f.space, p.space) || !same_space(sol.u.space, p.space))
        throw ShapeMismatch("decompose: space mismatch");
    if (traj.states.size() < 2) throw InvalidParameter("decompose: trajectory too short");
    for (std::uint32_t s : traj.states)
        if (s >= p.n()) throw ShapeMismatch("decompose: trajectory state out of range");

    const StateFunction pu = apply_to_function(p, sol.u);
    // u must solve the equation for f: u - Pu - f is a constant (namely
    // -pi(f)) up to the solver residual
    double res_lo = std::numeric_limits<double>::infinity(), res_hi = -res_lo;
    for (std::size_t x = 0; x < p.n(); ++x) {
        const double r = sol.u.values[x] - pu.values[x] - f.values[x];
        res_lo = std::min(res_lo, r);
        res_hi = std::max(res_hi, r);
    }
    if (res_hi - res_lo > 1e-6)
        throw InvalidParameter("decompose: u does not solve Poisson's equation for f");
    const std::size_t n = traj.states.size() - 1;
    DecompositionSeries out;
    out.S.resize(n);
    out.M.resize(n);
    out.R.resize(n);
    const double u1 = sol.u.values[traj.states[0]];
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        m += sol.u.values[traj.states[k + 1]] - pu.values[traj.states[k]];
        out.M[k] = m;
        out.R[k] = u1 - sol.u.values[traj.states[k + 1]];
        out.S[k] = out.M[k] + out.R[k];
    }
    return out;
}

struct MaximalStats {
    double s_star = 0.0;
    double m_star = 0.0;
    double r_star = 0.0;
};

inline MaximalStats maximal_stats(const DecompositionSeries& series) {
    MaximalStats st;
    for (double v : series.S) st.s_star = std::max(st.s_star, std::fabs(v));
    for (double v : series.M) st.m_star = std::max(st.m_star, std::fabs(v));
    for (double v : series.R) st.r_star = std::max(st.r_star, std::fabs(v));
    return st;
}

enum class BoundVariant { as_stated, proof_consistent };

inline std::string bound_variant_name(BoundVariant v) {
    return v == BoundVariant::as_stated ? "as-stated" : "proof-consistent";
}

namespace detail {

inline void require_bound_inputs(double delta, double t_or_one, double q) {
    if (!(delta < std::numeric_limits<double>::infinity()))
        throw InfiniteDiameter("maximal bound: diameter must be finite");
    if (!(t_or_one > 0.0)) throw InvalidParameter("maximal bound: t must be positive");
    if (!(q > 1.0) || std::isinf(q))
        throw InvalidParameter("maximal bound: q must lie in (1, infinity)");
}

// E[M_n^2] for unit-Lipschitz f. The published chain carries C^{2r} where
// ||u||^2 <= C^2 would close it, and constant 2 where the difference lemma
// gives 4; both readings are kept selectable.
inline double martingale_second_moment_bound(double c, double n, double q, double rn_norm,
                                             BoundVariant variant) {
    const double s = q / (q - 1.0);
    const double r = 2.0 * s;
    if (variant == BoundVariant::as_stated) return 2.0 * n * rn_norm * std::pow(c, 2.0 * r);
    return 4.0 * n * rn_norm * c * c;
}

} // namespace detail

// Markov/Doob tail bound  (2/t)^p (E|M_n|^p + C^p ||f||_d^p)  with C = delta
// Lambda. When the M-moment is not supplied it is synthesized from the
// martingale-difference bound (p = 2 only).
inline double bound_doob_tail(double delta, double lambda, std::uint64_t n, double t, double p,
                              double q, double rn_norm, std::optional<double> moment_Mn,
                              BoundVariant variant = BoundVariant::as_stated,
                              double f_norm_d = 1.0) {
    detail::require_bound_inputs(delta, t, q);
    if (!(p >= 1.0)) throw InvalidParameter("bound_doob_tail: p must be >= 1");
    const double c = delta * lambda;
    double m_moment;
    if (moment_Mn) {
        m_moment = *moment_Mn;
    } else {
        if (p != 2.0)
            throw InvalidParameter("bound_doob_tail: the synthesized moment needs p = 2");
        m_moment = detail::martingale_second_moment_bound(c, static_cast<double>(n), q, rn_norm,
                                                          variant);
    }
    return std::pow(2.0 / t, p) * (m_moment + std::pow(c * f_norm_d, p));
}

// Doob-type tail bound over the unit Lipschitz ball:
//   as-stated          (4/t^2) (2 n ||dnu/dpi||_q C^{2r} + C^2),  r = 2s
//   proof-consistent   (4/t^2) (4 n ||dnu/dpi||_q C^2    + C^2)
inline double bound_doob_lipschitz(double delta, double lambda, std::uint64_t n, double t,
                                   double q, double rn_norm,
                                   BoundVariant variant = BoundVariant::as_stated) {
    detail::require_bound_inputs(delta, t, q);
    const double c = delta * lambda;
    const double m2 =
        detail::martingale_second_moment_bound(c, static_cast<double>(n), q, rn_norm, variant);
    return 4.0 / (t * t) * (m2 + c * c);
}

// Second-moment maximal bound over the unit Lipschitz ball:
//   as-stated          32 C^{2r} n ||dnu/dpi||_q + 2 C^2
//   proof-consistent   64 n C^2 ||dnu/dpi||_q    + 2 C^2
inline double bound_l2_maximal(double delta, double lambda, std::uint64_t n, double q,
                               double rn_norm, BoundVariant variant = BoundVariant::as_stated) {
    detail::require_bound_inputs(delta, 1.0, q);
    const double c = delta * lambda;
    const double nn = static_cast<double>(n);
    if (variant == BoundVariant::as_stated)
        return 32.0 * std::pow(c, 2.0 * 2.0 * (q / (q - 1.0))) * nn * rn_norm + 2.0 * c * c;
    return 64.0 * nn * c * c * rn_norm + 2.0 * c * c;
}

// Finite-moment variants, for spaces certified through eps_r = ||E_1||_{L^r}
// and the remainder constant C_hat of E[(R_n^*)^2] <= C_hat n ||f||_d^2.
inline double bound_finite_moment(double lambda, double eps_r, std::uint64_t n, double t, double q,
                                  double rn_norm, double c_hat,
                                  BoundVariant variant = BoundVariant::as_stated) {
    (void)variant;  // display and proof agree here
    if (!(t > 0.0)) throw InvalidParameter("bound_finite_moment: t must be positive");
    if (!(q > 1.0) || std::isinf(q))
        throw InvalidParameter("bound_finite_moment: q must lie in (1, infinity)");
    const double le = lambda * eps_r;
    return 4.0 * static_cast<double>(n) / (t * t) * (4.0 * rn_norm * le * le + c_hat);
}

inline double bound_finite_moment_l2(double lambda, double eps_r, std::uint64_t n, double q,
                                     double rn_norm, double c_hat,
                                     BoundVariant variant = BoundVariant::as_stated) {
    (void)variant;
    if (!(q > 1.0) || std::isinf(q))
        throw InvalidParameter("bound_finite_moment_l2: q must lie in (1, infinity)");
    const double le = lambda * eps_r;
    return 4.0 * static_cast<double>(n) * (8.0 * rn_norm * le * le + c_hat);
}

struct MaximalConfig {
    std::uint64_t n = 1000;
    std::uint64_t replicas = 10000;
    std::uint64_t seed = 0;
    std::vector<double> t_grid;
    double q = 2.0;
    std::size_t m_max = 64;
    double lambda_tol = 1e-8;
    std::optional<double> c_hat;  // enables the finite-moment bounds
    unsigned threads = 1;
};

// Empirical maxima of the centered, unit-Lipschitz-normalized sums against
// every theorem bound. Deterministic given (config, seed) under any thread
// count: replica results land in per-replica slots and are folded in index
// order.
struct MaximalReport {
    std::uint64_t n = 0, replicas = 0, seed = 0;
    double q = 2.0;
    double f_lipschitz = 0.0;  // norm the forcing function was divided by
    double delta = 0.0, lambda = 0.0, c = 0.0;
    double rn_norm = 1.0;
    double eps_r = 0.0;

    std::vector<double> t_grid;
    std::vector<double> tail, tail_lo, tail_hi, tail_se;
    double second_moment = 0.0, second_moment_se = 0.0;
    bool degenerate_ci = false;

    std::vector<double> doob_as_stated, doob_proof;
    double l2_as_stated = 0.0, l2_proof = 0.0;
    bool has_finite_moment = false;
    std::vector<double> fm_tail;
    double fm_l2 = 0.0;

    std::vector<char> dom_tail_as_stated, dom_tail_proof, dom_tail_fm;
    bool dom_l2_as_stated = true, dom_l2_proof = true, dom_l2_fm = true;
    bool dominance_ok = true;
};

inline MaximalReport mc_maximal_experiment(const FiniteKernel& p, const MetricSpec& d,
                                           const StateFunction& f, const MaximalConfig& cfg,
                                           std::optional<Distribution> nu = std::nullopt) {
    if (cfg.t_grid.empty()) throw InvalidParameter("mc_maximal_experiment: t_grid is empty");
    if (cfg.replicas < 1) throw InvalidParameter("mc_maximal_experiment: need replicas >= 1");

    const Distribution pi = stationary_distribution(p);
    const Distribution nu_eff = nu.value_or(pi);
    const ContractionProfile profile =
        contraction_profile(p, d, cfg.m_max, cfg.lambda_tol, cfg.threads);

    MaximalReport rep;
    rep.n = cfg.n;
    rep.replicas = cfg.replicas;
    rep.seed = cfg.seed;
    rep.q = cfg.q;
    rep.t_grid = cfg.t_grid;
    rep.delta = diameter(d);
    rep.lambda = profile.lambda;
    rep.c = rep.delta * rep.lambda;
    rep.f_lipschitz = lipschitz_seminorm(f, d);
    rep.rn_norm = lp_norm(radon_nikodym(nu_eff, pi), pi, cfg.q);
    const double s_conj = cfg.q / (cfg.q - 1.0);
    rep.eps_r = eccentricity_norm(pi, d, 2.0 * s_conj).eps_p;

    StateFunction f_unit = centered(f, pi);
    if (rep.f_lipschitz > 0.0)
        for (double& v : f_unit.values) v /= rep.f_lipschitz;
    const PoissonSolution sol = solve_direct(p, pi, f_unit);
    const StateFunction pu = apply_to_function(p, sol.u);

    const detail::KernelSampler sampler(p, nu_eff);
    std::vector<double> s_star(cfg.replicas, 0.0);
    parallel_for(cfg.replicas, cfg.threads, [&](std::size_t r) {
        const std::uint64_t stream = r;
        std::uint32_t x = sampler.draw_init(rng::uniform(cfg.seed, stream, 0));
        const double u1 = sol.u.values[x];
        double m = 0.0, best = 0.0;
        for (std::uint64_t k = 1; k <= cfg.n; ++k) {
            const std::uint32_t next = sampler.draw_step(x, rng::uniform(cfg.seed, stream, k));
            m += sol.u.values[next] - pu.values[x];
            const double sk = m + (u1 - sol.u.values[next]);
            best = std::max(best, std::fabs(sk));
            x = next;
        }
        s_star[r] = best;
    });

    const double rr = static_cast<double>(cfg.replicas);
    rep.degenerate_ci = cfg.replicas < 2;

    double sq_sum = 0.0, quad_sum = 0.0;
    for (double v : s_star) {
        sq_sum += v * v;
        quad_sum += v * v * v * v;
    }
    rep.second_moment = sq_sum / rr;
    if (cfg.replicas >= 2) {
        const double var = std::max(0.0, quad_sum / rr - rep.second_moment * rep.second_moment);
        rep.second_moment_se = std::sqrt(var / rr);
    }

    rep.tail.resize(cfg.t_grid.size());
    rep.tail_lo.resize(cfg.t_grid.size());
    rep.tail_hi.resize(cfg.t_grid.size());
    rep.tail_se.resize(cfg.t_grid.size());
    rep.doob_as_stated.resize(cfg.t_grid.size());
    rep.doob_proof.resize(cfg.t_grid.size());
    rep.dom_tail_as_stated.resize(cfg.t_grid.size());
    rep.dom_tail_proof.resize(cfg.t_grid.size());
    rep.has_finite_moment = cfg.c_hat.has_value();
    if (rep.has_finite_moment) {
        rep.fm_tail.resize(cfg.t_grid.size());
        rep.dom_tail_fm.resize(cfg.t_grid.size());
    }

    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        const double t = cfg.t_grid[i];
        std::uint64_t count = 0;
        for (double v : s_star)
            if (v > t) ++count;
        const double phat = static_cast<double>(count) / rr;
        rep.tail[i] = phat;
        const auto [lo, hi] = detail::clopper_pearson(count, cfg.replicas);
        rep.tail_lo[i] = lo;
        rep.tail_hi[i] = hi;
        rep.tail_se[i] = std::sqrt(phat * (1.0 - phat) / rr);

        rep.doob_as_stated[i] = bound_doob_lipschitz(rep.delta, rep.lambda, cfg.n, t, cfg.q,
                                                     rep.rn_norm, BoundVariant::as_stated);
        rep.doob_proof[i] = bound_doob_lipschitz(rep.delta, rep.lambda, cfg.n, t, cfg.q,
                                                 rep.rn_norm, BoundVariant::proof_consistent);
        rep.dom_tail_as_stated[i] = phat <= rep.doob_as_stated[i] + 3.0 * rep.tail_se[i];
        rep.dom_tail_proof[i] = phat <= rep.doob_proof[i] + 3.0 * rep.tail_se[i];
        if (rep.has_finite_moment) {
            rep.fm_tail[i] = bound_finite_moment(rep.lambda, rep.eps_r, cfg.n, t, cfg.q,
                                                 rep.rn_norm, *cfg.c_hat);
            rep.dom_tail_fm[i] = phat <= rep.fm_tail[i] + 3.0 * rep.tail_se[i];
        }
    }

    rep.l2_as_stated =
        bound_l2_maximal(rep.delta, rep.lambda, cfg.n, cfg.q, rep.rn_norm, BoundVariant::as_stated);
    rep.l2_proof = bound_l2_maximal(rep.delta, rep.lambda, cfg.n, cfg.q, rep.rn_norm,
                                    BoundVariant::proof_consistent);
    rep.dom_l2_as_stated = rep.second_moment <= rep.l2_as_stated + 3.0 * rep.second_moment_se;
    rep.dom_l2_proof = rep.second_moment <= rep.l2_proof + 3.0 * rep.second_moment_se;
    if (rep.has_finite_moment) {
        rep.fm_l2 =
            bound_finite_moment_l2(rep.lambda, rep.eps_r, cfg.n, cfg.q, rep.rn_norm, *cfg.c_hat);
        rep.dom_l2_fm = rep.second_moment <= rep.fm_l2 + 3.0 * rep.second_moment_se;
    }

    rep.dominance_ok = rep.dom_l2_as_stated && rep.dom_l2_proof && rep.dom_l2_fm;
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        rep.dominance_ok = rep.dominance_ok && rep.dom_tail_as_stated[i] && rep.dom_tail_proof[i];
        if (rep.has_finite_moment) rep.dominance_ok = rep.dominance_ok && rep.dom_tail_fm[i];
    }
    return rep;
}

// Monte Carlo estimates of E[(R_n^*)^2] / (n ||f||_d^2) over a grid of path
// lengths; C_hat is the largest ratio seen. On a finite space R_n^* is
// bounded by 2 max|u|, which gives the deterministic fallback.
struct RnDiagnostic {
    struct Row {
        std::uint64_t n = 0;
        double estimate = 0.0;
        double se = 0.0;
    };
    double c_hat = 0.0;
    double c_hat_se = 0.0;
    double c_hat_deterministic = 0.0;
    std::vector<Row> per_n;
};

inline RnDiagnostic assumption_Rn_diagnostic(const FiniteKernel& p, const MetricSpec& d,
                                             const Distribution& nu, const StateFunction& f,
                                             const PoissonSolution& sol,
                                             const std::vector<std::uint64_t>& n_grid,
                                             std::uint64_t replicas, std::uint64_t seed,
                                             unsigned threads = 1) {
    const double fd = lipschitz_seminorm(f, d);
    if (!(fd > 0.0)) {
        // constant forcing: every remainder is zero
        RnDiagnostic out;
        for (std::uint64_t n : n_grid) out.per_n.push_back({n, 0.0, 0.0});
        return out;
    }
    if (n_grid.empty()) throw InvalidParameter("assumption_Rn_diagnostic: empty n grid");

    const detail::KernelSampler sampler(p, nu);
    RnDiagnostic out;
    std::uint64_t n_min = n_grid.front();
    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const std::uint64_t n = n_grid[gi];
        n_min = std::min(n_min, n);
        std::vector<double> rsq(replicas, 0.0);
        parallel_for(replicas, threads, [&](std::size_t r) {
            const std::uint64_t stream = gi * replicas + r;
            std::uint32_t x = sampler.draw_init(rng::uniform(seed, stream, 0));
            const double u1 = sol.u.values[x];
            double best = 0.0;
            for (std::uint64_t k = 1; k <= n; ++k) {
                x = sampler.draw_step(x, rng::uniform(seed, stream, k));
                best = std::max(best, std::fabs(u1 - sol.u.values[x]));
            }
            rsq[r] = best * best;
        });
        double mean = 0.0, meansq = 0.0;
        for (double v : rsq) {
            mean += v;
            meansq += v * v;
        }
        const double rr = static_cast<double>(replicas);
        mean /= rr;
        meansq /= rr;
        const double scale = static_cast<double>(n) * fd * fd;
        RnDiagnostic::Row row;
        row.n = n;
        row.estimate = mean / scale;
        row.se = replicas >= 2
                     ? std::sqrt(std::max(0.0, meansq - mean * mean) / rr) / scale
                     : 0.0;
        out.per_n.push_back(row);
    }
    for (const auto& row : out.per_n) {
        if (row.estimate >= out.c_hat) {
            out.c_hat = row.estimate;
            out.c_hat_se = row.se;
        }
    }
    double umax = 0.0;
    for (double v : sol.u.values) umax = std::max(umax, std::fabs(v));
    out.c_hat_deterministic =
        (2.0 * umax) * (2.0 * umax) / (static_cast<double>(n_min) * fd * fd);
    return out;
}

// sup over 8 <= k <= n of |S_k f / k - pi(f)| sqrt(k) / log(k), plus the
// full series. A finite, seed-stable sup is the diagnostic outcome.
struct PathwiseDiagnostic {
    double sup_stat = 0.0;
    std::vector<double> series;  // k = 8..n
};

inline PathwiseDiagnostic pathwise_rate_diagnostic(const Trajectory& traj, const StateFunction& f,
                                                   const Distribution& pi) {
    const std::size_t n = traj.states.size() >= 1 ? traj.states.size() - 1 : 0;
    if (n < 8) throw InvalidParameter("pathwise_rate_diagnostic: need n >= 8");
    const double pf = expectation(pi, f);
    PathwiseDiagnostic out;
    out.series.reserve(n - 7);
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        s += f.values[traj.states[k - 1]];
        if (k >= 8) {
            const double kk = static_cast<double>(k);
            const double stat = std::fabs(s / kk - pf) * std::sqrt(kk) / std::log(kk);
            out.series.push_back(stat);
            out.sup_stat = std::max(out.sup_stat, stat);
        }
    }
    return out;
}

} // namespace wcmc
