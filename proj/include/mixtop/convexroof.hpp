#pragma once

#include <cstdint>
#include <vector>

#include "mixtop/dense.hpp"

namespace mixtop {

struct Decomposition {
    std::vector<double> weights;
    std::vector<DenseState> members;
    bool pure_only = false;

    DenseState recombine() const;
};

enum class RoofMode { pure, mixed };

struct EigenSystem {
    std::vector<double> values;  // nonzero eigenvalues, descending
    std::vector<CVector> vectors;
};
EigenSystem eigensystem(const DenseState &rho, double cutoff = 1e-12);

// Number of real parameters of an m x m unitary built from Givens rotations
// (an angle and a phase per pair).
size_t isometry_parameter_count(size_t m);
// Unitary U = prod over pairs (i<j) of G_ij(theta, phi), in row-major pair order
CMatrix givens_unitary(size_t m, const std::vector<double> &params);

// Members |psi_i> = sum_k V_ik sqrt(lambda_k) |k> with V the first rank
// columns of givens_unitary(m, params). With groups > 0 the pure members
// are summed into that many mixed members, member i joining group i % groups.
Decomposition sample_decomposition(const DenseState &rho, size_t m, const std::vector<double> &params,
                                   size_t groups = 0);
Decomposition sample_decomposition(const EigenSystem &es, size_t n, size_t m, const std::vector<double> &params,
                                   size_t groups = 0);

// sum_i p_i cmi(rho_i)
double decomposition_cmi(const Decomposition &d, const Partition &p);

struct RoofBudget {
    size_t members = 0;  // 0: rank^2 in pure mode, 2 rank^2 in mixed mode
    size_t groups = 0;   // mixed mode only; 0: members / 2
    size_t restarts = 16;
    size_t max_iterations = 4000;
    double tolerance = 1e-6;  // bits
    uint64_t seed = 1;
    bool trace = false;  // keep per-iteration values
};

struct RoofTraceEntry {
    size_t restart, iteration;
    double value;
};

struct RoofResult {
    double value = 0;
    Decomposition best;
    std::vector<double> best_by_restart;  // running minimum after each restart
    std::vector<RoofTraceEntry> trace;
};

// Upper bound on the convex roof of the CMI by direct search over the
// decompositions above. Mixed mode always includes the trivial
// decomposition and any caller-supplied candidates.
RoofResult convex_roof_minimize(const DenseState &rho, const Partition &p, RoofMode mode, const RoofBudget &budget,
                                const std::vector<Decomposition> &candidates = {});

// binary entropy in bits
double binary_entropy(double p);
// co(QCMI) of the GHZ mixture from the optimal pair at theta* = arcsin(1 - 2p)
double ghz_roof_closed_form(double p);
// cos(theta/2)|000> + sin(theta/2)|111>
CVector ghz_angle_state(double theta);
// theta = 2 atan2(|c_111|, |c_000|) of a pure member
double ghz_member_angle(const DenseState &member);

}  // namespace mixtop
