#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wcmc/core.hpp"
#include "wcmc/transport.hpp"

namespace wcmc {

enum class PoissonMethod { direct, neumann };

// Solution of u - Pu = f - pi(f), centered so pi(u) = 0.
struct PoissonSolution {
    StateFunction u;
    double residual_inf = 0.0;
    PoissonMethod method = PoissonMethod::direct;
    std::optional<std::uint64_t> neumann_terms;  // index of the last series term
};

struct BoundCertificate {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double slack = 0.0;  // rhs - lhs

    static BoundCertificate make(std::string name, double lhs, double rhs) {
        BoundCertificate c;
        c.name = std::move(name);
        c.lhs = lhs;
        c.rhs = rhs;
        c.slack = rhs - lhs;
        c.holds = lhs <= rhs + 1e-9;
        return c;
    }
};

inline double poisson_residual_inf(const FiniteKernel& p, const Distribution& pi,
                                   const StateFunction& f, const StateFunction& u) {
    const StateFunction pu = apply_to_function(p, u);
    const double mean = expectation(pi, f);
    double worst = 0.0;
    for (std::size_t x = 0; x < p.n(); ++x)
        worst = std::max(worst,
                         std::fabs(u.values[x] - pu.values[x] - (f.values[x] - mean)));
    return worst;
}

// Direct solve of (I - P) u = f - pi(f). The system is singular on
// constants, so the balance equation at the heaviest state is replaced by
// the normalization pi(u) = 0 (that row is implied by the others under the
// pi-weighting). Two rounds of iterative refinement push the residual to
// rounding level, then the solution is re-centered by projection.
inline PoissonSolution solve_direct(const FiniteKernel& p, const Distribution& pi,
                                    const StateFunction& f) {
    if (!same_space(p.space, f.space) || !same_space(p.space, pi.space))
        throw ShapeMismatch("solve_direct: space mismatch");
    const std::size_t n = p.n();
    const double mean = expectation(pi, f);
    std::vector<double> fbar(n);
    for (std::size_t i = 0; i < n; ++i) fbar[i] = f.values[i] - mean;

    std::size_t drop = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (pi.weights[i] > pi.weights[drop]) drop = i;

    Matrix a(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - p(i, j);
    for (std::size_t j = 0; j < n; ++j) a(drop, j) = pi.weights[j];

    LuFactors lu = lu_factor(a);
    if (lu.singular)
        throw SingularSystem("solve_direct: singular system (kernel reducible or degenerate)");

    std::vector<double> rhs = fbar;
    rhs[drop] = 0.0;
    std::vector<double> u = lu_solve(lu, rhs);

    for (int refine = 0; refine < 2; ++refine) {
        std::vector<double> res(n);
        double piu = 0.0;
        for (std::size_t i = 0; i < n; ++i) piu += pi.weights[i] * u[i];
        for (std::size_t i = 0; i < n; ++i) {
            double s = fbar[i] - u[i];
            for (std::size_t j = 0; j < n; ++j) s += p(i, j) * u[j];
            res[i] = s;
        }
        res[drop] = -piu;
        const std::vector<double> delta = lu_solve(lu, res);
        for (std::size_t i = 0; i < n; ++i) u[i] += delta[i];
    }

    double piu = 0.0;
    for (std::size_t i = 0; i < n; ++i) piu += pi.weights[i] * u[i];
    for (std::size_t i = 0; i < n; ++i) u[i] -= piu;

    PoissonSolution sol;
    sol.u = StateFunction(p.space, std::move(u));
    sol.method = PoissonMethod::direct;
    sol.residual_inf = poisson_residual_inf(p, pi, f, sol.u);
    if (!(sol.residual_inf <= 1e-10))
        throw SingularSystem("solve_direct: residual failed to reach tolerance");
    return sol;
}

// Series solve u = sum_{l=0}^{N} P^l (f - pi(f)). The truncation N is
// certified from the contraction profile: a recorded block (lag L,
// tau(P^L) = T, per-block bound sum S) gives
//   || sum_{l >= A L} P^l fbar ||_d <= ||f||_d * S * T^A / (1 - T),
// and the cheapest block/count combination reaching tol sets N = A L - 1.
inline PoissonSolution solve_neumann(const FiniteKernel& p, const Distribution& pi,
                                     const StateFunction& f, const ContractionProfile& profile,
                                     const MetricSpec& d, double tol = 1e-10) {
    if (!same_space(p.space, f.space) || !same_space(p.space, pi.space))
        throw ShapeMismatch("solve_neumann: space mismatch");
    if (profile.tau_final() >= 1.0 || profile.blocks.empty())
        throw NotContractive("solve_neumann: profile does not certify contraction");
    const std::size_t n = p.n();
    const double mean = expectation(pi, f);
    std::vector<double> term(n);
    for (std::size_t i = 0; i < n; ++i) term[i] = f.values[i] - mean;

    const double fnorm = lipschitz_seminorm(f, d);
    std::uint64_t terms = std::numeric_limits<std::uint64_t>::max();
    for (const auto& block : profile.blocks) {
        std::uint64_t count = 1;
        if (block.tau > 0.0 && fnorm > 0.0) {
            bool feasible = true;
            while (fnorm * block.sum_below * std::pow(block.tau, static_cast<double>(count)) /
                       (1.0 - block.tau) > tol) {
                ++count;
                if (count * block.lag >= terms || count > 1000000) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
        }
        terms = std::min(terms, count * block.lag);
    }
    if (terms == std::numeric_limits<std::uint64_t>::max())
        throw ConvergenceFailure("solve_neumann: certified truncation too long");

    std::vector<double> u(n, 0.0);
    std::uint64_t last = 0;
    for (std::uint64_t l = 0; l < terms; ++l) {
        double tmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += term[i];
            tmax = std::max(tmax, std::fabs(term[i]));
        }
        last = l;
        if (tmax == 0.0) break;
        if (l + 1 < terms) term = matvec(p.rows, term);
    }

    double piu = 0.0;
    for (std::size_t i = 0; i < n; ++i) piu += pi.weights[i] * u[i];
    for (std::size_t i = 0; i < n; ++i) u[i] -= piu;

    PoissonSolution sol;
    sol.u = StateFunction(p.space, std::move(u));
    sol.method = PoissonMethod::neumann;
    sol.neumann_terms = last;
    sol.residual_inf = poisson_residual_inf(p, pi, f, sol.u);
    return sol;
}

// Regularity certificates for a Poisson solution:
//   lipschitz   ||u||_d <= Lambda ||f||_d
//   lp_offset   sum pi |u|^p <= 2^p min_y (|u(y)|^p + ||u||_d^p E_p(y))
//   lp_moment   sum pi |u|^p <= (Lambda ||f||_d)^p sum pi E_1^p
//   sup         max |u| <= (max_x E_1(x)) Lambda ||f||_d
inline std::vector<BoundCertificate> certify_lipschitz_bounds(
    const PoissonSolution& sol, const StateFunction& f, const MetricSpec& d,
    const Distribution& pi, const ContractionProfile& profile, double p = 2.0) {
    if (!(p >= 1.0)) throw InvalidParameter("certify_lipschitz_bounds: p must be >= 1");
    const std::size_t n = f.n();
    const double fd = lipschitz_seminorm(f, d);
    const double ud = lipschitz_seminorm(sol.u, d);
    const double lambda = profile.lambda;

    std::vector<double> e1(n), ep(n);
    for (std::size_t x = 0; x < n; ++x) {
        e1[x] = eccentricity(pi, d, 1.0, x);
        ep[x] = eccentricity(pi, d, p, x);
    }

    double u_lp_p = 0.0, u_sup = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        u_lp_p += pi.weights[x] * std::pow(std::fabs(sol.u.values[x]), p);
        u_sup = std::max(u_sup, std::fabs(sol.u.values[x]));
    }

    double offset_best = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < n; ++y)
        offset_best = std::min(offset_best,
                               std::pow(std::fabs(sol.u.values[y]), p) + std::pow(ud, p) * ep[y]);

    double e1_moment = 0.0, e1_max = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        e1_moment += pi.weights[x] * std::pow(e1[x], p);
        e1_max = std::max(e1_max, e1[x]);
    }

    std::vector<BoundCertificate> certs;
    certs.push_back(BoundCertificate::make("lipschitz", ud, lambda * fd));
    certs.push_back(BoundCertificate::make("lp_offset", u_lp_p, std::pow(2.0, p) * offset_best));
    certs.push_back(
        BoundCertificate::make("lp_moment", u_lp_p, std::pow(lambda * fd, p) * e1_moment));
    certs.push_back(BoundCertificate::make("sup", u_sup, e1_max * lambda * fd));
    return certs;
}

} // namespace wcmc
