#pragma once

#include <cstdint>
#include <vector>

#include "mixtop/lattice.hpp"
#include "mixtop/stabmix.hpp"

namespace mixtop {

// One independent error site: the listed Pauli errors are mutually exclusive
// and the identity takes the remaining probability.
struct NoiseSite {
    std::vector<std::pair<PauliOp, double>> errors;
};

struct NoiseSpec {
    size_t n = 0;
    std::vector<NoiseSite> sites;

    // each operator applied independently with probability p
    static NoiseSpec independent(const std::vector<PauliOp> &ops, double p);
    // X flips with probability px and Z flips with pz, independently per qubit
    static NoiseSpec pauli_dephasing(size_t n, double px, double pz);
    // Z_e X_{e+delta} with probability p on every edge
    static NoiseSpec zx_dephasing(const Lattice &lat, double p);
    NoiseSpec &append(const NoiseSpec &o);
    // throws on bad probabilities or operator sizes
    void validate() const;
};

struct SyndromeDistribution {
    size_t k = 0;
    std::vector<double> prob;  // indexed by the sign-flip pattern, bit i = generator i

    double total() const;
    double shannon_entropy() const;  // bits
};

constexpr size_t default_syndrome_budget = 24;

// Pushforward of the error distribution onto sign flips of the generators of
// the subgroup supported in `region` (as returned by subgroup_on). Errors are
// restricted to the region first; their parts outside it drop out of the
// reduced state.
SyndromeDistribution syndrome_distribution(const StabilizerMixedState &s, const NoiseSpec &noise,
                                           const QubitSet &region, size_t budget = default_syndrome_budget);

// per-site syndrome table as used by the convolution, exposed for oracles
struct SiteSyndromes {
    std::vector<std::pair<uint64_t, double>> outcomes;  // includes the identity
};
std::vector<SiteSyndromes> site_syndromes(const std::vector<PauliOp> &gens, const NoiseSpec &noise,
                                          const QubitSet &region);
// XOR-convolution of the site tables; `wht` selects the transform path
std::vector<double> convolve_sites(size_t k, const std::vector<SiteSyndromes> &sites, bool wht);

double noisy_entropy_region(const StabilizerMixedState &s, const NoiseSpec &noise, const QubitSet &region,
                            size_t budget = default_syndrome_budget);
double noisy_cmi(const StabilizerMixedState &s, const NoiseSpec &noise, const Partition &p,
                 size_t budget = default_syndrome_budget);

// Plug-in Monte Carlo estimate of the same entropy, for regions beyond the
// exact budget. Biased low for small sample counts.
double sampled_entropy_region(const StabilizerMixedState &s, const NoiseSpec &noise, const QubitSet &region,
                              uint64_t samples, uint64_t seed);
double sampled_cmi(const StabilizerMixedState &s, const NoiseSpec &noise, const Partition &p, uint64_t samples,
                   uint64_t seed);

}  // namespace mixtop
