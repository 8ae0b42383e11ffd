#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mixtop/cssnoise.hpp"
#include "mixtop/dense.hpp"
#include "support.hpp"

using namespace mixtop;

namespace {

// Enumerates every joint error configuration and accumulates the sign flips
// of the region subgroup generators directly.
std::map<uint64_t, double> brute_force_syndromes(const StabilizerMixedState &s, const NoiseSpec &noise,
                                                 const QubitSet &region) {
    auto gens = subgroup_on(s, region);
    std::vector<std::vector<std::pair<PauliOp, double>>> opts;
    for (auto &site : noise.sites) {
        std::vector<std::pair<PauliOp, double>> o = site.errors;
        double rest = 1;
        for (auto &[op, p] : site.errors)
            rest -= p;
        o.push_back({PauliOp(noise.n), rest});
        opts.push_back(o);
    }
    std::map<uint64_t, double> out;
    std::vector<size_t> idx(opts.size(), 0);
    while (true) {
        PauliOp e(noise.n);
        double p = 1;
        for (size_t i = 0; i < opts.size(); i++) {
            e = e * opts[i][idx[i]].first;
            p *= opts[i][idx[i]].second;
        }
        PauliOp r = restrict(e, region);
        uint64_t syn = 0;
        for (size_t i = 0; i < gens.size(); i++)
            if (commutes(gens[i], r) < 0)
                syn |= uint64_t{1} << i;
        out[syn] += p;
        size_t i = 0;
        for (; i < opts.size(); i++) {
            if (++idx[i] < opts[i].size())
                break;
            idx[i] = 0;
        }
        if (i == opts.size())
            return out;
    }
}

double shannon(const std::map<uint64_t, double> &d) {
    double h = 0;
    for (auto &[k, p] : d)
        if (p > 0)
            h -= p * std::log2(p);
    return h;
}

}  // namespace

TEST(Syndromes, MatchBruteForceEnumeration) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.02, 0.45);
    for (int t = 0; t < 60; t++) {
        size_t n = 2 + rng() % 6;
        auto s = oracle::random_state(n, rng);
        auto noise = NoiseSpec::pauli_dephasing(n, u(rng), u(rng));
        auto region = oracle::random_region(n, rng);
        auto d = syndrome_distribution(s, noise, region);
        auto ref = brute_force_syndromes(s, noise, region);
        for (uint64_t k = 0; k < d.prob.size(); k++)
            EXPECT_NEAR(d.prob[k], ref.count(k) ? ref[k] : 0.0, 1e-12);
        EXPECT_NEAR(d.total(), 1.0, 1e-12);
        EXPECT_NEAR(noisy_entropy_region(s, noise, region), shannon(ref) + entropy_region(s, region), 1e-10);
    }
}

TEST(Syndromes, ConvolutionPathsAgree) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 20; t++) {
        size_t k = 1 + rng() % 12;
        std::vector<SiteSyndromes> sites(1 + rng() % 6);
        for (auto &s : sites) {
            double p = 0.05 + 0.4 * double(rng() % 100) / 100;
            s.outcomes = {{0, 1 - p}, {rng() & ((uint64_t{1} << k) - 1), p}};
        }
        auto a = convolve_sites(k, sites, false), b = convolve_sites(k, sites, true);
        for (size_t i = 0; i < a.size(); i++)
            EXPECT_NEAR(a[i], b[i], 1e-12);
    }
}

TEST(Syndromes, DenseChannelAgreement) {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.05, 0.45);
    for (int t = 0; t < 40; t++) {
        size_t n = 2 + rng() % 5;
        auto s = oracle::random_state(n, rng);
        auto noise = NoiseSpec::pauli_dephasing(n, u(rng), u(rng));
        // a correlated two-qubit error too
        noise.append(NoiseSpec::independent({PauliOp::parse(std::string("ZX") + std::string(n - 2, 'I'))}, u(rng)));
        auto rho = apply_noise(densify(s), noise);
        auto region = oracle::random_region(n, rng);
        EXPECT_NEAR(noisy_entropy_region(s, noise, region), oracle::entropy_dense_oracle(rho.rho, n, region), 1e-9);
    }
}

TEST(Syndromes, BudgetIsEnforced) {
    auto lat = Lattice::build(LatticeKind::square_edges, 6, 6, Boundary::torus);
    auto s = model_state("toric-code", lat);
    auto noise = NoiseSpec::pauli_dephasing(lat.n(), 0.1, 0.1);
    QubitSet all = complement({}, lat.n());
    try {
        noisy_entropy_region(s, noise, all, 8);
        FAIL() << "expected a budget error";
    } catch (const std::length_error &e) {
        EXPECT_NE(std::string(e.what()).find("budget"), std::string::npos);
    }
}

TEST(Decoupling, IndependentXAndZNoise) {
    for (int L : {2, 3}) {
        auto lat = Lattice::build(LatticeKind::square_edges, L, L, Boundary::torus);
        auto s = model_state("toric-code", lat);
        QubitSet all = complement({}, lat.n());
        auto S = [&](double px, double pz) {
            return noisy_entropy_region(s, NoiseSpec::pauli_dephasing(lat.n(), px, pz), all);
        };
        for (double px : {0.1, 0.3})
            for (double pz : {0.15, 0.4})
                EXPECT_NEAR(S(px, pz) + S(0, 0), S(0, pz) + S(px, 0), 1e-9);
    }
}

TEST(Sampling, ConvergesToExact) {
    auto lat = Lattice::build(LatticeKind::square_edges, 3, 3, Boundary::torus);
    auto s = model_state("toric-code", lat);
    auto noise = NoiseSpec::pauli_dephasing(lat.n(), 0.1, 0.0);
    QubitSet all = complement({}, lat.n());
    double exact = noisy_entropy_region(s, noise, all);
    double est = sampled_entropy_region(s, noise, all, 200000, 5);
    EXPECT_NEAR(est, exact, 0.05);
    EXPECT_EQ(est, sampled_entropy_region(s, noise, all, 200000, 5));
}

TEST(NoiseSpec, Validation) {
    EXPECT_THROW(NoiseSpec::pauli_dephasing(3, -0.1, 0).validate(), std::invalid_argument);
    NoiseSpec bad;
    bad.n = 2;
    bad.sites.push_back({{{PauliOp::parse("XI"), 0.7}, {PauliOp::parse("ZI"), 0.6}}});
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    auto lat = Lattice::build(LatticeKind::square_edges, 3, 3, Boundary::torus);
    EXPECT_EQ(NoiseSpec::zx_dephasing(lat, 0.2).sites.size(), lat.n());
}

TEST(NoiseEndpoints, HalfEqualsMaximalDephasing) {
    auto lat = Lattice::build(LatticeKind::square_edges, 3, 3, Boundary::torus);
    auto s = model_state("toric-code", lat);
    auto maxd = apply_max_dephasing(s, dephasing_ops(lat, "ZX"));
    auto lw = QubitSet{0, 1, 2, 3, 4, 5, 6, 7};
    EXPECT_NEAR(noisy_entropy_region(s, NoiseSpec::zx_dephasing(lat, 0.5), lw), entropy_region(maxd, lw), 1e-10);
}
