#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "wcmc/core.hpp"
#include "wcmc/poisson.hpp"
#include "wcmc/transport.hpp"

namespace wcmc {

enum class GapMethod { symmetric_eigen, singular_values };

inline std::string gap_method_name(GapMethod m) {
    return m == GapMethod::symmetric_eigen ? "symmetric-eigen" : "singular-values";
}

// kappa = || P ||_{L^2_0(pi) -> L^2_0(pi)}
struct GapReport {
    double kappa = 0.0;
    bool reversible = false;
    GapMethod method = GapMethod::singular_values;
};

namespace detail {

// Similarity transform S = D^{1/2} P D^{-1/2}, D = diag(pi), with the
// sqrt(pi) direction deflated explicitly. S fixes v = sqrt(pi) on both
// sides, so A = S - v v^T acts as P restricted to centered L^2(pi).
inline Matrix deflated_similarity(const FiniteKernel& p, const Distribution& pi) {
    const std::size_t n = p.n();
    for (std::size_t i = 0; i < n; ++i)
        if (!(pi.weights[i] > 0.0))
            throw InvalidParameter("l2_gap: pi must be strictly positive");
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(pi.weights[i]);
    Matrix a(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = sq[i] * p(i, j) / sq[j] - sq[i] * sq[j];
    return a;
}

} // namespace detail

inline GapReport l2_gap(const FiniteKernel& p, const Distribution& pi,
                        std::optional<GapMethod> force_method = std::nullopt,
                        double reversibility_tol = 1e-10) {
    if (!same_space(p.space, pi.space)) throw ShapeMismatch("l2_gap: space mismatch");
    GapReport rep;
    rep.reversible = check_reversibility(p, pi, reversibility_tol);
    rep.method = force_method.value_or(rep.reversible ? GapMethod::symmetric_eigen
                                                      : GapMethod::singular_values);
    Matrix a = detail::deflated_similarity(p, pi);
    if (rep.method == GapMethod::symmetric_eigen) {
        // symmetrize away rounding before the eigensolve
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = i + 1; j < a.cols; ++j) {
                const double v = 0.5 * (a(i, j) + a(j, i));
                a(i, j) = v;
                a(j, i) = v;
            }
        double kappa = 0.0;
        for (double ev : symmetric_eigenvalues(std::move(a)))
            kappa = std::max(kappa, std::fabs(ev));
        rep.kappa = kappa;
    } else {
        rep.kappa = spectral_norm(a);
    }
    return rep;
}

// Operator-norm decay of K^l on centered L^p(pi) implied by the L^2 gap:
//   p in (1,2):   2^{2/p}       kappa^{2 l (p-1)/p}
//   p = 2:                      kappa^l
//   p in (2,oo):  2^{2(p-1)/p}  kappa^{2 l / p}
inline double lp_power_bound(double kappa, double p, std::uint64_t ell) {
    if (!(kappa >= 0.0 && kappa < 1.0))
        throw InvalidParameter("lp_power_bound: kappa must lie in [0,1)");
    if (!(p > 1.0) || std::isinf(p))
        throw InvalidParameter("lp_power_bound: p must lie in (1, infinity)");
    if (ell < 1) throw InvalidParameter("lp_power_bound: ell must be >= 1");
    const double l = static_cast<double>(ell);
    if (p == 2.0) return std::pow(kappa, l);
    if (p < 2.0) return std::pow(2.0, 2.0 / p) * std::pow(kappa, 2.0 * l * (p - 1.0) / p);
    return std::pow(2.0, 2.0 * (p - 1.0) / p) * std::pow(kappa, 2.0 * l / p);
}

// Poisson solve together with the spectral-gap L^p certificate
//   ||u||_p <= c(p, kappa) ||f - pi(f)||_p
// where c is the geometric-series constant matching lp_power_bound.
inline std::pair<PoissonSolution, BoundCertificate> solve_with_lp_bound(
    const FiniteKernel& p_kernel, const Distribution& pi, const StateFunction& f, double p) {
    if (!(p > 1.0) || std::isinf(p))
        throw InvalidParameter("solve_with_lp_bound: p must lie in (1, infinity)");
    const GapReport gap = l2_gap(p_kernel, pi);
    if (!(gap.kappa < 1.0 - 1e-12)) throw NoGap("solve_with_lp_bound: kernel has no L^2 gap");
    const double kappa = gap.kappa;

    PoissonSolution sol = solve_direct(p_kernel, pi, f);
    const StateFunction fbar = centered(f, pi);
    const double f_lp = lp_norm(fbar, pi, p);
    const double u_lp = lp_norm(sol.u, pi, p);

    double factor;
    if (p == 2.0) {
        factor = 1.0 / (1.0 - kappa);
    } else if (p < 2.0) {
        factor = std::pow(2.0, 2.0 / p) / (1.0 - std::pow(kappa, 2.0 * (p - 1.0) / p));
    } else {
        factor = std::pow(2.0, 2.0 * (p - 1.0) / p) / (1.0 - std::pow(kappa, 2.0 / p));
    }
    return {std::move(sol), BoundCertificate::make("lp_spectral", u_lp, factor * f_lp)};
}

// For reversible contractive kernels, kappa <= tau(P^m)^{1/m}. Refuses on
// non-reversible input; the inequality needs self-adjointness.
inline BoundCertificate check_gap_vs_tau(const FiniteKernel& p, const Distribution& pi,
                                         const MetricSpec& d, const ContractionProfile& profile) {
    (void)d;
    if (!check_reversibility(p, pi, 1e-10))
        throw NotReversible("check_gap_vs_tau: kernel is not reversible w.r.t. pi");
    const GapReport gap = l2_gap(p, pi);
    const double rhs = std::pow(profile.tau_final(), 1.0 / static_cast<double>(profile.m));
    return BoundCertificate::make("gap_vs_tau", gap.kappa, rhs);
}

} // namespace wcmc
