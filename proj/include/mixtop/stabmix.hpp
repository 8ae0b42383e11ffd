#pragma once

#include <string>
#include <vector>

#include "mixtop/lattice.hpp"
#include "mixtop/pauli.hpp"

namespace mixtop {

// rho = prod_i (1 + S_i)/2 / 2^(n-m) for commuting, independent, Hermitian S_i
class StabilizerMixedState {
public:
    StabilizerMixedState() = default;
    explicit StabilizerMixedState(size_t n) : n_(n) {}

    size_t n() const { return n_; }
    size_t m() const { return gens_.size(); }
    const std::vector<PauliOp> &generators() const { return gens_; }
    // global entropy in bits
    double entropy() const { return double(n_) - double(gens_.size()); }

    // product of generators selected by coeffs (length m)
    PauliOp element(const BitVec &coeffs) const;

    friend StabilizerMixedState canonicalize(size_t n, const std::vector<PauliOp> &gens);

private:
    size_t n_ = 0;
    std::vector<PauliOp> gens_;
};

// Drops dependent generators (keeping the first of each dependent set).
// Throws on anticommuting pairs, non-Hermitian generators, or a sign clash
// such as {Z, -Z} that would make the state vanish.
StabilizerMixedState canonicalize(size_t n, const std::vector<PauliOp> &gens);
StabilizerMixedState canonicalize(const std::vector<std::string> &gens);

double entropy_region(const StabilizerMixedState &s, const QubitSet &region);
double cmi(const StabilizerMixedState &s, const Partition &p);

struct SymmetryStatus {
    enum Kind { strong, weak, none } kind = none;
    int charge = 0;  // exponent of i; meaningful for strong only

    static SymmetryStatus make_strong(int c) { return {strong, ((c % 4) + 4) % 4}; }
    bool is_strong() const { return kind == strong; }
    bool at_least_weak() const { return kind != none; }
    std::string str() const;
    bool operator==(const SymmetryStatus &o) const {
        return kind == o.kind && (kind != strong || charge == o.charge);
    }
};

SymmetryStatus symmetry_status(const StabilizerMixedState &s, const PauliOp &g);

// centralizer of the noise operators inside the stabilizer group
StabilizerMixedState apply_max_dephasing(const StabilizerMixedState &s, const std::vector<PauliOp> &noise);

// generators of the subgroup supported inside region
std::vector<PauliOp> subgroup_on(const StabilizerMixedState &s, const QubitSet &region);
// E rho E^dagger for a Pauli E: flips the generators E anticommutes with
StabilizerMixedState conjugate_state(const StabilizerMixedState &s, const PauliOp &e);
// s on qubits [0, n) and t on [n, n + t.n)
StabilizerMixedState tensor(const StabilizerMixedState &s, const StabilizerMixedState &t);
// the n-qubit state with generator `letter` on every qubit
StabilizerMixedState product_state(size_t n, char letter);

// kinds: toric-code, loop-soup, zx-dephased-max, honeycomb-flux, product-z,
// product-x, maximally-mixed
StabilizerMixedState model_state(const std::string &kind, const Lattice &lat);

// Noise operators of the maximal dephasing channels on the square lattice:
// "X", "Z", "XZ" (both, independently) and "ZX" (Z_e X_{e+delta}). On open
// directions a missing delta partner is dropped from its operator.
std::vector<PauliOp> dephasing_ops(const Lattice &lat, const std::string &type);

// elementary square-lattice operators
PauliOp star_op(const Lattice &lat, int x, int y);
PauliOp plaquette_op(const Lattice &lat, int x, int y);

}  // namespace mixtop
