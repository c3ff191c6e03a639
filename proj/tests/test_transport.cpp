#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wcmc/transport.hpp"
#include "wcmc/zoo.hpp"

using namespace wcmc;

namespace {

Distribution kernel_row(const FiniteKernel& p, std::size_t x) {
    std::vector<double> w(p.rows.data.begin() + x * p.n(), p.rows.data.begin() + (x + 1) * p.n());
    return Distribution(p.space, std::move(w));
}

void expect_plan_feasible(const TransportPlan& plan, const Distribution& mu,
                          const Distribution& nu, const MetricSpec& d) {
    const std::size_t n = mu.n();
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_GE(plan.plan(i, j), -1e-12);
            row += plan.plan(i, j);
            col += plan.plan(j, i);
            cost += plan.plan(i, j) * d(i, j);
        }
        EXPECT_NEAR(row, mu.weights[i], 1e-9);
        EXPECT_NEAR(col, nu.weights[i], 1e-9);
    }
    EXPECT_NEAR(cost, plan.value, 1e-9);
}

FiniteKernel constant_kernel(const Distribution& pi) {
    Matrix rows(pi.n(), pi.n());
    for (std::size_t x = 0; x < pi.n(); ++x)
        for (std::size_t y = 0; y < pi.n(); ++y) rows(x, y) = pi.weights[y];
    return FiniteKernel(pi.space, std::move(rows));
}

} // namespace

TEST(Wasserstein, IdenticalMarginalsCostZero) {
    std::mt19937_64 gen(3);
    const FiniteStateSpace s(6);
    const MetricSpec d = oracle::random_metric(gen, s);
    const Distribution mu = oracle::random_distribution(gen, s);
    const TransportPlan plan = wasserstein(mu, mu, d);
    EXPECT_EQ(plan.value, 0.0);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j) EXPECT_EQ(plan.plan(i, j), 0.0);
    expect_plan_feasible(plan, mu, mu, d);
}

TEST(Wasserstein, PointMassesPayTheDistance) {
    const FiniteStateSpace s(2);
    const MetricSpec d = trivial_metric(s);  // d(0,1) = 2
    const Distribution d0(s, {1.0, 0.0}), d1(s, {0.0, 1.0});
    const TransportPlan plan = wasserstein(d0, d1, d);
    EXPECT_NEAR(plan.value, 2.0, 1e-12);
    EXPECT_NEAR(plan.plan(0, 1), 1.0, 1e-12);
}

TEST(Wasserstein, TwoStateRowsBruteForcedCoupling) {
    const FiniteStateSpace s(2);
    const MetricSpec d = line_metric(s, {0.0, 1.0});
    const Distribution mu(s, {0.7, 0.3}), nu(s, {0.8, 0.2});
    // brute force over the one-parameter coupling family gives 0.1
    const double expected = oracle::wasserstein_two_state(0.7, 0.8, 1.0);
    EXPECT_NEAR(expected, 0.1, 1e-9);
    const TransportPlan plan = wasserstein(mu, nu, d);
    EXPECT_NEAR(plan.value, 0.1, 1e-9);
    expect_plan_feasible(plan, mu, nu, d);
}

TEST(Wasserstein, AgreesWithMinCostFlowOracle) {
    std::mt19937_64 gen(101);
    for (int rep = 0; rep < 40; ++rep) {
        const FiniteStateSpace s(2 + rep % 9);
        const MetricSpec d = oracle::random_metric(gen, s);
        const Distribution mu = oracle::random_distribution(gen, s, true);
        const Distribution nu = oracle::random_distribution(gen, s, true);
        const TransportPlan plan = wasserstein(mu, nu, d);
        const double expected = oracle::wasserstein_mincostflow(mu, nu, d);
        EXPECT_NEAR(plan.value, expected, 1e-9);
        expect_plan_feasible(plan, mu, nu, d);
    }
}

TEST(Wasserstein, DegenerateUniformBlockTransport) {
    // uniform mass on the left half moved to the right half of a line:
    // the monotone matching shifts everything by 1/2
    const std::size_t m = 20, n = 2 * m;
    const FiniteStateSpace s(n);
    std::vector<double> pos(n), muw(n, 0.0), nuw(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) pos[i] = static_cast<double>(i) / n;
    for (std::size_t i = 0; i < m; ++i) {
        muw[i] = 1.0 / m;
        nuw[i + m] = 1.0 / m;
    }
    const MetricSpec d = line_metric(s, pos);
    const Distribution mu(s, muw), nu(s, nuw);
    const TransportPlan plan = wasserstein(mu, nu, d);
    EXPECT_NEAR(plan.value, 0.5, 1e-10);
    expect_plan_feasible(plan, mu, nu, d);
    EXPECT_NEAR(wasserstein(mu, nu, trivial_metric(s)).value, 2.0, 1e-10);
}

TEST(Wasserstein, LargerInstancesAgainstOracle) {
    std::mt19937_64 gen(4242);
    for (const std::size_t n : {20, 40}) {
        const FiniteStateSpace s(n);
        const MetricSpec d = oracle::random_metric(gen, s);
        const Distribution mu = oracle::random_distribution(gen, s, true);
        const Distribution nu = oracle::random_distribution(gen, s, true);
        const TransportPlan plan = wasserstein(mu, nu, d);
        EXPECT_NEAR(plan.value, oracle::wasserstein_mincostflow(mu, nu, d), 1e-9);
        expect_plan_feasible(plan, mu, nu, d);
    }
}

TEST(ContractionProfile, NonReversibleCycleCertifies) {
    const FiniteStateSpace s(3);
    Matrix rows(3, 3, 0.0);
    rows(0, 0) = 0.1, rows(0, 1) = 0.9;
    rows(1, 1) = 0.1, rows(1, 2) = 0.9;
    rows(2, 2) = 0.1, rows(2, 0) = 0.9;
    const FiniteKernel rot(s, std::move(rows));
    const ContractionProfile prof = contraction_profile(rot, trivial_metric(s), 8);
    EXPECT_EQ(prof.m, 1u);
    EXPECT_NEAR(prof.taus[0], 0.9, 1e-10);
    EXPECT_LT(prof.certified_tail, 1e-8);
    EXPECT_LE(prof.lambda, prof.bound_geometric + 1e-9);
}

TEST(Wasserstein, MetricAxiomsOnRandomTriples) {
    std::mt19937_64 gen(211);
    const FiniteStateSpace s(7);
    const MetricSpec d = oracle::random_metric(gen, s);
    for (int rep = 0; rep < 15; ++rep) {
        const Distribution a = oracle::random_distribution(gen, s);
        const Distribution b = oracle::random_distribution(gen, s);
        const Distribution c = oracle::random_distribution(gen, s);
        const double ab = wasserstein(a, b, d).value;
        const double ba = wasserstein(b, a, d).value;
        const double ac = wasserstein(a, c, d).value;
        const double cb = wasserstein(c, b, d).value;
        EXPECT_NEAR(ab, ba, 1e-8);
        EXPECT_LE(ab, ac + cb + 1e-8);
    }
}

TEST(KantorovichPotential, TwoPointDual) {
    const FiniteStateSpace s(2);
    const MetricSpec d = line_metric(s, {0.0, 1.0});
    const Distribution d0(s, {1.0, 0.0}), d1(s, {0.0, 1.0});
    const StateFunction f = kantorovich_potential(d0, d1, d);
    EXPECT_EQ(f.values[0], 0.0);  // normalized
    EXPECT_NEAR(f.values[0] - f.values[1], 1.0, 1e-9);
    EXPECT_LE(lipschitz_seminorm(f, d), 1.0 + 1e-9);
}

TEST(KantorovichPotential, EqualMarginalsAdmitAnyConstant) {
    std::mt19937_64 gen(5);
    const FiniteStateSpace s(5);
    const MetricSpec d = oracle::random_metric(gen, s);
    const Distribution mu = oracle::random_distribution(gen, s);
    const StateFunction f = kantorovich_potential(mu, mu, d);
    EXPECT_LE(lipschitz_seminorm(f, d), 1.0 + 1e-9);
    double pairing = 0.0;
    for (std::size_t i = 0; i < 5; ++i) pairing += f.values[i] * 0.0;
    EXPECT_NEAR(pairing, 0.0, 1e-12);
}

TEST(KantorovichPotential, PrimalDualEqualityOnRandomInstances) {
    std::mt19937_64 gen(307);
    for (int rep = 0; rep < 40; ++rep) {
        const FiniteStateSpace s(2 + rep % 10);
        const MetricSpec d = oracle::random_metric(gen, s);
        const Distribution mu = oracle::random_distribution(gen, s, true);
        const Distribution nu = oracle::random_distribution(gen, s, true);
        const double primal = wasserstein(mu, nu, d).value;
        const StateFunction f = kantorovich_potential(mu, nu, d);
        double dual = 0.0;
        for (std::size_t i = 0; i < s.n; ++i)
            dual += f.values[i] * (mu.weights[i] - nu.weights[i]);
        EXPECT_NEAR(primal, dual, 1e-7);
        EXPECT_LE(lipschitz_seminorm(f, d), 1.0 + 1e-9);
    }
}

TEST(KantorovichPotential, TieHeavyMassesAndShortEdges) {
    // quantized masses produce maximal pivot degeneracy; near-duplicate
    // positions make the Lipschitz ratio sensitive to fixpoint ripple
    std::mt19937_64 gen(20240807);
    std::uniform_int_distribution<int> grid(0, 4);
    for (int rep = 0; rep < 150; ++rep) {
        const FiniteStateSpace s(2 + rep % 9);
        std::vector<double> pos(s.n);
        for (std::size_t i = 0; i < s.n; ++i)
            pos[i] = static_cast<double>(i / 2) * 0.25 + 1e-7 * static_cast<double>(i);
        const MetricSpec d = line_metric(s, pos);
        auto quantized = [&] {
            std::vector<double> w(s.n, 0.0);
            double total = 0.0;
            for (double& v : w) {
                v = grid(gen);
                total += v;
            }
            if (total == 0.0) {
                w[0] = 1.0;
                total = 1.0;
            }
            for (double& v : w) v /= total;
            return Distribution(s, std::move(w));
        };
        const Distribution mu = quantized(), nu = quantized();
        const double primal = wasserstein(mu, nu, d).value;
        EXPECT_NEAR(primal, oracle::wasserstein_mincostflow(mu, nu, d), 1e-9);
        const StateFunction f = kantorovich_potential(mu, nu, d);
        EXPECT_LE(lipschitz_seminorm(f, d), 1.0 + 1e-9);
        double dual = 0.0;
        for (std::size_t i = 0; i < s.n; ++i)
            dual += f.values[i] * (mu.weights[i] - nu.weights[i]);
        EXPECT_NEAR(primal, dual, 1e-7);
    }
}

TEST(ClosedForm, ZeroForEqualMarginals) {
    const FiniteStateSpace s(4);
    const MetricSpec d = trivial_metric(s);
    const Distribution mu(s, {0.1, 0.2, 0.3, 0.4});
    EXPECT_EQ(wasserstein_closed_form(mu, mu, d), 0.0);
}

TEST(ClosedForm, TrivialMetricPointMasses) {
    const FiniteStateSpace s(2);
    const MetricSpec d = trivial_metric(s);
    const Distribution d0(s, {1.0, 0.0}), d1(s, {0.0, 1.0});
    EXPECT_NEAR(wasserstein_closed_form(d0, d1, d), 2.0, 1e-15);
}

TEST(ClosedForm, VWeightedPointMassesAndLpAgreement) {
    const FiniteStateSpace s(2);
    const MetricSpec d = v_weighted_metric(s, {1.0, 2.0});
    const Distribution d0(s, {1.0, 0.0}), d1(s, {0.0, 1.0});
    EXPECT_NEAR(wasserstein_closed_form(d0, d1, d), 3.0, 1e-15);
    EXPECT_NEAR(wasserstein(d0, d1, d).value, 3.0, 1e-12);
}

TEST(ClosedForm, MatchesLpOnRandomInstances) {
    std::mt19937_64 gen(401);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int rep = 0; rep < 25; ++rep) {
        const FiniteStateSpace s(2 + rep % 7);
        std::vector<double> w(s.n);
        for (double& v : w) v = u(gen);
        const MetricSpec dv = v_weighted_metric(s, w);
        const MetricSpec dt = trivial_metric(s);
        const Distribution mu = oracle::random_distribution(gen, s, true);
        const Distribution nu = oracle::random_distribution(gen, s, true);
        EXPECT_NEAR(wasserstein_closed_form(mu, nu, dv), wasserstein(mu, nu, dv).value, 1e-9);
        EXPECT_NEAR(wasserstein_closed_form(mu, nu, dt), wasserstein(mu, nu, dt).value, 1e-9);
    }
}

TEST(ClosedForm, RejectsWrongKind) {
    const FiniteStateSpace s(3);
    const MetricSpec d = line_metric(s, {0.0, 0.5, 1.0});
    const Distribution mu(s, {0.5, 0.3, 0.2});
    EXPECT_THROW(wasserstein_closed_form(mu, mu, d), WrongKind);
}

TEST(KantorovichNorm, ConstantKernelIsZero) {
    const FiniteStateSpace s(4);
    const Distribution pi(s, {0.1, 0.2, 0.3, 0.4});
    const FiniteKernel big_pi = constant_kernel(pi);
    const MetricSpec d = trivial_metric(s);
    EXPECT_NEAR(kantorovich_norm(big_pi, d).tau, 0.0, 1e-12);
}

TEST(KantorovichNorm, TwoStateSinglePairOracle) {
    const auto inst = zoo::two_state(0.3, 0.2);
    const double expected = oracle::wasserstein_mincostflow(
        kernel_row(inst.kernel, 0), kernel_row(inst.kernel, 1), inst.metric);
    EXPECT_NEAR(expected, 0.5, 1e-12);  // |1 - a - b|
    const TauResult t = kantorovich_norm(inst.kernel, inst.metric);
    EXPECT_NEAR(t.tau, 0.5, 1e-12);
    EXPECT_EQ(t.witness, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(KantorovichNorm, DyadicShiftAllPairsOracle) {
    const auto inst = zoo::dyadic_shift(4);
    double oracle_tau = 0.0;
    std::pair<std::size_t, std::size_t> oracle_wit{0, 1};
    for (std::size_t x = 0; x < 16; ++x) {
        for (std::size_t y = x + 1; y < 16; ++y) {
            const double w = oracle::wasserstein_mincostflow(
                kernel_row(inst.kernel, x), kernel_row(inst.kernel, y), inst.metric);
            const double r = w / inst.metric(x, y);
            if (r > oracle_tau + 1e-12) {
                oracle_tau = r;
                oracle_wit = {x, y};
            }
        }
    }
    EXPECT_NEAR(oracle_tau, 1.0, 1e-10);
    EXPECT_EQ(oracle_wit, (std::pair<std::size_t, std::size_t>{1, 2}));

    const TauResult t = kantorovich_norm(inst.kernel, inst.metric);
    EXPECT_NEAR(t.tau, 1.0, 1e-10);
    EXPECT_EQ(t.witness, oracle_wit);  // adjacent odd/even pair at lag 1
}

TEST(KantorovichNorm, SubsampleReportsCoverage) {
    const auto inst = zoo::dyadic_shift(3);  // exhaustive tau = 1 with witness (1,2)
    const PairList sample{{0, 1}, {0, 2}, {0, 4}};
    const TauResult t = kantorovich_norm(inst.kernel, inst.metric, 1, &sample);
    EXPECT_NEAR(t.coverage, 3.0 / 28.0, 1e-15);
    // a subsample can only under-estimate
    const TauResult full = kantorovich_norm(inst.kernel, inst.metric);
    EXPECT_LE(t.tau, full.tau + 1e-12);
    EXPECT_EQ(full.coverage, 1.0);

    const PairList bad{{2, 1}};
    EXPECT_THROW(kantorovich_norm(inst.kernel, inst.metric, 1, &bad), InvalidParameter);
}

TEST(KantorovichNorm, LargeSpacesRequireASubsample) {
    const std::size_t n = 300;
    const FiniteStateSpace s(n);
    Matrix rows(n, n, 1.0 / static_cast<double>(n));
    const FiniteKernel p(s, std::move(rows));
    const MetricSpec d = trivial_metric(s);
    EXPECT_THROW(kantorovich_norm(p, d), InvalidParameter);
    const PairList sample = strided_pair_sample(n, 50);
    const TauResult t = kantorovich_norm(p, d, 1, &sample);
    EXPECT_NEAR(t.tau, 0.0, 1e-12);  // identical rows
    EXPECT_LT(t.coverage, 0.01);
    EXPECT_GT(t.coverage, 0.0);
}

TEST(KantorovichNorm, ThreadedSweepIsDeterministic) {
    const auto inst = zoo::dyadic_shift(3);
    const TauResult serial = kantorovich_norm(inst.kernel, inst.metric, 1);
    const TauResult threaded = kantorovich_norm(inst.kernel, inst.metric, 8);
    EXPECT_EQ(serial.tau, threaded.tau);
    EXPECT_EQ(serial.witness, threaded.witness);
}

TEST(ContractionProfile, ConstantKernel) {
    const FiniteStateSpace s(3);
    const Distribution pi(s, {0.5, 0.25, 0.25});
    const ContractionProfile prof =
        contraction_profile(constant_kernel(pi), trivial_metric(s), 8);
    EXPECT_EQ(prof.m, 1u);
    EXPECT_NEAR(prof.taus[0], 0.0, 1e-12);
    EXPECT_NEAR(prof.lambda, 1.0, 1e-12);
    EXPECT_EQ(prof.certified_tail, 0.0);
}

TEST(ContractionProfile, TwoStateGeometricSeries) {
    const auto inst = zoo::two_state(0.3, 0.2);
    const ContractionProfile prof = contraction_profile(inst.kernel, inst.metric, 8, 1e-8);
    EXPECT_EQ(prof.m, 1u);
    EXPECT_NEAR(prof.taus[0], 0.5, 1e-12);
    EXPECT_NEAR(prof.lambda, 2.0, 1e-6);  // sum of 0.5^j
    EXPECT_LT(prof.certified_tail, 1e-8);
    EXPECT_NEAR(prof.bound_geometric, 2.0, 1e-9);
}

TEST(ContractionProfile, DyadicShiftTerminatesExactly) {
    const auto inst = zoo::dyadic_shift(4);
    const ContractionProfile prof = contraction_profile(inst.kernel, inst.metric, 8);
    EXPECT_EQ(prof.m, 4u);
    ASSERT_EQ(prof.taus.size(), 4u);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(prof.taus[j], 1.0, 1e-10);
    EXPECT_NEAR(prof.taus[3], 0.0, 1e-12);
    EXPECT_NEAR(prof.lambda, 4.0, 1e-6);
    EXPECT_EQ(prof.certified_tail, 0.0);
}

TEST(ContractionProfile, IdentityIsNotContractive) {
    const FiniteKernel id(FiniteStateSpace(3), Matrix::identity(3));
    EXPECT_THROW(contraction_profile(id, trivial_metric(FiniteStateSpace(3)), 6), NotContractive);
}

TEST(ContractionProfile, RecordedInvariants) {
    const auto inst = zoo::dyadic_shift(3);
    const ContractionProfile prof = contraction_profile(inst.kernel, inst.metric, 8);
    // submultiplicativity across the recorded ladder
    for (std::size_t j = 1; j <= prof.m; ++j)
        for (std::size_t k = 1; k <= prof.m; ++k)
            if (j + k <= prof.m)
                EXPECT_LE(prof.taus[j + k - 1], prof.taus[j - 1] * prof.taus[k - 1] + 1e-8);
    double recorded = 0.0;
    for (double t : prof.taus) recorded += t;
    EXPECT_GE(prof.lambda + 1e-12, recorded);
    EXPECT_LE(prof.lambda, prof.bound_geometric + 1e-9);
}

TEST(TransportProperties, Submultiplicativity) {
    std::mt19937_64 gen(501);
    for (int rep = 0; rep < 20; ++rep) {
        const FiniteStateSpace s(6);
        const MetricSpec d = oracle::random_metric(gen, s);
        const FiniteKernel p = oracle::random_kernel(gen, s);
        const FiniteKernel q = oracle::random_kernel(gen, s);
        const FiniteKernel pq(s, matmul(p.rows, q.rows));
        const double tp = kantorovich_norm(p, d).tau;
        const double tq = kantorovich_norm(q, d).tau;
        const double tpq = kantorovich_norm(pq, d).tau;
        EXPECT_LE(tpq, tp * tq + 1e-8);
    }
}

TEST(TransportProperties, MeasureContraction) {
    std::mt19937_64 gen(601);
    for (int rep = 0; rep < 20; ++rep) {
        const FiniteStateSpace s(6);
        const MetricSpec d = oracle::random_metric(gen, s);
        const FiniteKernel p = oracle::random_kernel(gen, s);
        const Distribution mu = oracle::random_distribution(gen, s);
        const Distribution nu = oracle::random_distribution(gen, s);
        const double tau = kantorovich_norm(p, d).tau;
        const double before = wasserstein(mu, nu, d).value;
        const double after =
            wasserstein(apply_to_distribution(mu, p), apply_to_distribution(nu, p), d).value;
        EXPECT_LE(after, tau * before + 1e-8);
    }
}

TEST(TransportProperties, MixtureConvexity) {
    for (const double theta : {0.25, 0.5, 0.9, 1.0}) {
        const auto base = zoo::random_reversible(6, 4242);
        const FiniteKernel mixed = zoo::dobrushin_mixture(base.kernel, theta, base.target);
        const double tq = kantorovich_norm(base.kernel, base.metric).tau;
        const double tm = kantorovich_norm(mixed, base.metric).tau;
        EXPECT_LE(tm, (1.0 - theta) * tq + 1e-8);
    }
}

TEST(TransportProperties, OperatorNormIdentity) {
    std::mt19937_64 gen(701);
    for (int rep = 0; rep < 10; ++rep) {
        const FiniteStateSpace s(6);
        const MetricSpec d = oracle::random_metric(gen, s);
        const FiniteKernel p = oracle::random_kernel(gen, s);
        const TauResult t = kantorovich_norm(p, d);

        // (a) no 1-Lipschitz function is expanded beyond tau
        for (int k = 0; k < 10; ++k) {
            StateFunction f = oracle::random_function(gen, s);
            const double norm = lipschitz_seminorm(f, d);
            for (double& v : f.values) v /= norm;
            EXPECT_LE(lipschitz_seminorm(apply_to_function(p, f), d),
                      t.tau * (1.0 + 1e-9) + 1e-12);
        }

        // (b) the witness pair's dual potential attains tau
        const StateFunction dual = kantorovich_potential(
            kernel_row(p, t.witness.first), kernel_row(p, t.witness.second), d);
        EXPECT_GE(lipschitz_seminorm(apply_to_function(p, dual), d), t.tau - 1e-7);
    }
}

TEST(Eccentricity, PointMassAtItself) {
    const FiniteStateSpace s(3);
    const MetricSpec d = trivial_metric(s);
    const Distribution delta(s, {0.0, 1.0, 0.0});
    EXPECT_EQ(eccentricity(delta, d, 2.0, 1), 0.0);
}

TEST(Eccentricity, TwoStateDirectSum) {
    const auto inst = zoo::two_state(0.3, 0.2);
    const Distribution pi = *inst.pi;
    EXPECT_NEAR(eccentricity(pi, inst.metric, 1.0, 0), 0.6, 1e-14);
    EXPECT_NEAR(eccentricity(pi, inst.metric, 1.0, 1), 0.4, 1e-14);
}

TEST(Eccentricity, BoundedByDiameterPower) {
    std::mt19937_64 gen(801);
    const FiniteStateSpace s(8);
    const MetricSpec d = oracle::random_metric(gen, s);
    const Distribution pi = oracle::random_distribution(gen, s);
    const double delta = diameter(d);
    for (const double p : {1.0, 2.0, 4.0}) {
        const EccentricityReport rep = eccentricity_norm(pi, d, p);
        for (double v : rep.values) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, std::pow(delta, p) + 1e-12);
        }
    }
}

TEST(Eccentricity, EpsPMatchesDirectSum) {
    const auto inst = zoo::two_state(0.3, 0.2);
    const EccentricityReport rep = eccentricity_norm(*inst.pi, inst.metric, 4.0);
    // direct sum oracle: (0.4 * 0.6^4 + 0.6 * 0.4^4)^(1/4)
    const double expected = std::pow(0.4 * std::pow(0.6, 4) + 0.6 * std::pow(0.4, 4), 0.25);
    EXPECT_NEAR(expected, 0.50914597900436606, 1e-15);
    EXPECT_NEAR(rep.eps_p, expected, 1e-14);
}

TEST(CoarseDiffusion, DeterministicKernelIsZero) {
    const FiniteStateSpace s(3);
    Matrix rows(3, 3, 0.0);
    rows(0, 1) = rows(1, 2) = rows(2, 0) = 1.0;  // a permutation
    const FiniteKernel p(s, std::move(rows));
    const Distribution pi(s, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto [sigma_x, sigma] = coarse_diffusion(p, trivial_metric(s), pi);
    for (double v : sigma_x.values) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(sigma, 0.0);
}

TEST(CoarseDiffusion, TwoStateDirectDoubleSum) {
    const auto inst = zoo::two_state(0.3, 0.2);
    const auto [sigma_x, sigma] = coarse_diffusion(inst.kernel, inst.metric, *inst.pi);
    EXPECT_NEAR(sigma_x.values[0], std::sqrt(0.21), 1e-14);
    EXPECT_NEAR(sigma_x.values[1], std::sqrt(0.16), 1e-14);
    EXPECT_NEAR(sigma, std::sqrt(0.18), 1e-14);
}

TEST(CoarseDiffusion, BoundedByDiameter) {
    std::mt19937_64 gen(901);
    const FiniteStateSpace s(7);
    const MetricSpec d = oracle::random_metric(gen, s);
    const FiniteKernel p = oracle::random_kernel(gen, s);
    const Distribution pi = stationary_distribution(p);
    const auto [sigma_x, sigma] = coarse_diffusion(p, d, pi);
    EXPECT_LE(sigma, diameter(d) + 1e-12);
}

TEST(Diameter, KnownValues) {
    const FiniteStateSpace s2(2), s5(5);
    EXPECT_EQ(diameter(trivial_metric(s5)), 2.0);
    EXPECT_EQ(diameter(line_metric(s5, {0.0, 0.25, 0.5, 0.75, 1.0})), 1.0);
    EXPECT_EQ(diameter(v_weighted_metric(s2, {1.0, 2.0})), 3.0);
}
