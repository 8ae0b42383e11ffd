#pragma once

#include <Eigen/Dense>

#include "mixtop/cssnoise.hpp"
#include "mixtop/lattice.hpp"
#include "mixtop/stabmix.hpp"

namespace mixtop {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Qubit q is bit q of the basis index.
struct DenseState {
    size_t n = 0;
    CMatrix rho;

    DenseState() = default;
    DenseState(size_t n, CMatrix rho);
    static DenseState pure(size_t n, const CVector &psi);
    // throws unless Hermitian, unit trace and PSD within tol
    void validate(double tol = 1e-10) const;
};

constexpr size_t dense_budget = 12;

CMatrix pauli_matrix(const PauliOp &p);
// applies P to a state vector
CVector apply_pauli(const PauliOp &p, const CVector &psi);
// P rho P^dagger
CMatrix conjugate_dense(const CMatrix &rho, const PauliOp &p);

DenseState densify(const StabilizerMixedState &s, size_t max_n = dense_budget);
// applies the noise sites as Kraus mixtures
DenseState apply_noise(const DenseState &rho, const NoiseSpec &noise);

// reduced state on `keep`, whose i-th qubit becomes bit i
DenseState partial_trace(const DenseState &rho, const QubitSet &keep);
CMatrix partial_transpose(const CMatrix &rho, const QubitSet &region);

// Eigenvalues of a Hermitian matrix, computed blockwise over the connected
// components of its nonzero pattern.
std::vector<double> hermitian_eigenvalues(const CMatrix &m, double zero = 1e-14);
double von_neumann_entropy(const CMatrix &rho);  // bits
double trace_norm(const CMatrix &m);

double entropy_dense(const DenseState &rho, const QubitSet &region);
double cmi_dense(const DenseState &rho, const Partition &p);
double negativity_dense(const DenseState &rho, const QubitSet &region);  // log2 ||rho^T_A||_1

// p |GHZ+><GHZ+| + (1-p) |GHZ-><GHZ-| on three qubits
DenseState ghz_mixture(double p);

}  // namespace mixtop
