#pragma once

#include <optional>
#include <vector>

#include "mixtop/gf2.hpp"
#include "mixtop/lattice.hpp"
#include "mixtop/stabmix.hpp"

namespace mixtop {

struct CommutationMatrix {
    BitMatrix M;
    std::vector<size_t> generators;  // index into s.generators() for each row
};

// M_ij = 1 iff the region parts of S_i and S_j anticommute. With prune set,
// only generators with support on both sides of the cut get a row.
CommutationMatrix commutation_matrix(const StabilizerMixedState &s, const QubitSet &region, bool prune = true);

struct NegativityReport {
    size_t N = 0;     // boundary generators
    size_t rank = 0;  // GF(2) rank of M
    double EN = 0;    // bits
    std::optional<int> cut_length;
    // filled in by split_area_law: EN = alpha * L - gamma
    std::optional<double> alpha, gamma;
};

NegativityReport stabilizer_negativity(const StabilizerMixedState &s, const QubitSet &region,
                                       std::optional<int> cut_length = std::nullopt);

// slope and (negated) intercept from two reports with cut lengths
void split_area_law(NegativityReport &small, NegativityReport &large);

struct LinearFit {
    double slope = 0, intercept = 0;
};
// least squares y = slope * x + intercept
LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y);

struct SpectrumSummary {
    size_t N = 0;
    double trace_norm = 0;
    double EN = 0;  // log2 of the trace norm
    size_t support = 0;  // number of nonzero spectrum entries
};

// Sums |<+| prod_i Z_i^{t_i} |psi_M>| over all 2^N sign assignments t, where
// |psi_M> = prod_{i<j} CZ_ij^{M_ij} |+>^N is the graph state of M.
SpectrumSummary negativity_spectrum_oracle(const StabilizerMixedState &s, const QubitSet &region,
                                           size_t max_N = 20);

// Negativity (||rho^T_A||_1 - 1)/2 of the maximally mixed state of the CZ
// model with only the global X symmetry: rho ∝ (1 + prod X) P, P the
// projector on bitstrings with an even number of adjacent (1,1) pairs
// around every hexagon. Computed by enumerating bitstrings.
double mms_cz_negativity(const Lattice &lat, const QubitSet &region, size_t max_n = 24);

// hexagon constraint check used by the enumeration, exposed for tests
bool satisfies_hexagons(const Lattice &lat, uint64_t bits);

}  // namespace mixtop
