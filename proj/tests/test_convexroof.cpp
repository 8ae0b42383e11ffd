#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "mixtop/convexroof.hpp"

using namespace mixtop;

namespace {

Partition ghz_partition() {
    Partition p;
    p.scheme = "explicit";
    p.A = {0};
    p.B = {1};
    p.C = {2};
    return p;
}

std::vector<double> random_params(size_t m, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    std::vector<double> p(isometry_parameter_count(m));
    for (double &x : p)
        x = u(rng);
    return p;
}

}  // namespace

TEST(Givens, UnitaryForRandomParameters) {
    std::mt19937_64 rng(51);
    for (size_t m : {1, 2, 3, 5, 8}) {
        auto u = givens_unitary(m, random_params(m, rng));
        EXPECT_TRUE((u * u.adjoint() - CMatrix::Identity(m, m)).norm() < 1e-12);
    }
    EXPECT_THROW(givens_unitary(3, {0.1}), std::invalid_argument);
}

TEST(Decomposition, RecombinesToTheState) {
    std::mt19937_64 rng(52);
    auto rho = ghz_mixture(0.3);
    for (size_t groups : {0, 1, 2, 3})
        for (size_t m : {2, 4, 6}) {
            auto d = sample_decomposition(rho, m, random_params(m, rng), groups);
            double total = 0;
            for (double w : d.weights)
                total += w;
            EXPECT_NEAR(total, 1.0, 1e-12);
            EXPECT_TRUE((d.recombine().rho - rho.rho).norm() < 1e-10);
            EXPECT_EQ(d.pure_only, groups == 0);
            for (auto &mem : d.members)
                EXPECT_NO_THROW(mem.validate(1e-9));
        }
    EXPECT_THROW(sample_decomposition(rho, 1, {}), std::invalid_argument);
}

TEST(GhzMixture, ClosedFormAndCmi) {
    for (double p : {0.1, 0.25, 0.4}) {
        auto rho = ghz_mixture(p);
        EXPECT_NO_THROW(rho.validate());
        EXPECT_NEAR(cmi_dense(rho, ghz_partition()), 1 - binary_entropy(p), 1e-10);
        // the optimal pair sits at theta* and pi - theta*, with a relative
        // minus sign matching the negative coherence of the mixture
        double theta = std::asin(1 - 2 * p);
        CVector a = ghz_angle_state(theta), b = ghz_angle_state(std::numbers::pi - theta);
        a(7) = -a(7);
        b(7) = -b(7);
        Decomposition d;
        d.pure_only = true;
        d.weights = {0.5, 0.5};
        d.members = {DenseState::pure(3, a), DenseState::pure(3, b)};
        EXPECT_TRUE((d.recombine().rho - rho.rho).norm() < 1e-10) << p;
        EXPECT_NEAR(decomposition_cmi(d, ghz_partition()), ghz_roof_closed_form(p), 1e-10);
        EXPECT_NEAR(ghz_member_angle(d.members[0]), theta, 1e-10);
    }
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_DOUBLE_EQ(binary_entropy(0), 0.0);
}

TEST(Roof, PureStateReturnsItsCmi) {
    CVector psi = ghz_angle_state(0.7);
    auto rho = DenseState::pure(3, psi);
    RoofBudget b;
    b.restarts = 2;
    auto r = convex_roof_minimize(rho, ghz_partition(), RoofMode::pure, b);
    EXPECT_NEAR(r.value, cmi_dense(rho, ghz_partition()), 1e-12);
}

TEST(Roof, MixedModeNeverExceedsCmi) {
    auto rho = ghz_mixture(0.2);
    RoofBudget b;
    b.restarts = 2;
    b.max_iterations = 300;
    auto r = convex_roof_minimize(rho, ghz_partition(), RoofMode::mixed, b);
    EXPECT_LE(r.value, cmi_dense(rho, ghz_partition()) + 1e-9);
    EXPECT_EQ(r.best_by_restart.size(), 2u);
    EXPECT_LE(r.best_by_restart[1], r.best_by_restart[0]);
}

TEST(Roof, DeterministicForFixedSeed) {
    auto rho = ghz_mixture(0.25);
    RoofBudget b;
    b.restarts = 2;
    b.max_iterations = 200;
    b.trace = true;
    auto a = convex_roof_minimize(rho, ghz_partition(), RoofMode::pure, b);
    auto c = convex_roof_minimize(rho, ghz_partition(), RoofMode::pure, b);
    EXPECT_EQ(a.value, c.value);
    EXPECT_EQ(a.trace.size(), c.trace.size());
    EXPECT_FALSE(a.trace.empty());
}

TEST(Roof, RejectsBadBudgets) {
    auto rho = ghz_mixture(0.25);
    RoofBudget b;
    b.restarts = 0;
    EXPECT_THROW(convex_roof_minimize(rho, ghz_partition(), RoofMode::pure, b), std::invalid_argument);
    b.restarts = 1;
    b.members = 1;
    EXPECT_THROW(convex_roof_minimize(rho, ghz_partition(), RoofMode::pure, b), std::invalid_argument);
}
