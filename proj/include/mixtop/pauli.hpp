#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixtop/gf2.hpp"

namespace mixtop {

using QubitSet = std::vector<size_t>;

// i^phase * prod_q X_q^{x_q} Z_q^{z_q}, with X written to the left of Z on
// each qubit. So a bare x=z=1 with phase 0 is XZ = -iY, and the Hermitian Y
// carries phase 1.
class PauliOp {
public:
    PauliOp() = default;
    explicit PauliOp(size_t n) : x_(n), z_(n) {}
    PauliOp(BitVec x, BitVec z, int phase);

    // "+XIZ", "-iYZI", "XX"; the sign prefix is optional
    static PauliOp parse(const std::string &s);
    static PauliOp single(size_t n, size_t q, char letter);
    // product of `letter` on each listed qubit
    static PauliOp on(size_t n, const QubitSet &qubits, char letter);

    size_t n() const { return x_.size(); }
    const BitVec &x() const { return x_; }
    const BitVec &z() const { return z_; }
    int phase() const { return phase_; }
    void set_phase(int p) { phase_ = ((p % 4) + 4) % 4; }

    char letter(size_t q) const;
    void set_letter(size_t q, char letter);

    // the phase written in front of the letters, e.g. 0 for "+XY", 3 for "-iZ"
    int letter_phase() const;
    bool is_hermitian() const;
    bool is_identity_up_to_phase() const;
    size_t weight() const;
    QubitSet support() const;
    BitVec support_mask() const;

    // x bits followed by z bits
    BitVec symplectic() const { return x_.concat(z_); }
    static PauliOp from_symplectic(const BitVec &v, int phase = 0);

    std::string str() const;
    bool operator==(const PauliOp &o) const = default;

    PauliOp &operator*=(const PauliOp &o);
    friend PauliOp operator*(PauliOp a, const PauliOp &b) { return a *= b; }

private:
    BitVec x_, z_;
    int phase_ = 0;
};

PauliOp multiply(const PauliOp &a, const PauliOp &b);
// +1 if a and b commute, -1 if they anticommute
int commutes(const PauliOp &a, const PauliOp &b);
// letters on the region kept, everything else identity, sign reset to +
PauliOp restrict(const PauliOp &a, const QubitSet &region);
PauliOp restrict(const PauliOp &a, const BitVec &region_mask);
// a on n qubits embedded into a larger register by qubit map
PauliOp embed(const PauliOp &a, size_t n_total, const std::vector<size_t> &where);
PauliOp extend(const PauliOp &a, size_t n_total);

enum class Gate { H, S, CX, CZ, X, Z };

struct GateOp {
    Gate kind;
    size_t a;
    size_t b = 0;  // second qubit of CX (target) and CZ
};

struct CliffordCircuit {
    size_t n = 0;
    std::vector<GateOp> gates;

    CliffordCircuit() = default;
    explicit CliffordCircuit(size_t n) : n(n) {}
    void add(Gate g, size_t a);
    void add(Gate g, size_t a, size_t b);
};

enum class Direction { forward, inverse };

// forward: C a C^dagger with C = g_last ... g_1, i.e. gates applied in list
// order. inverse: C^dagger a C.
PauliOp conjugate_by_circuit(const PauliOp &a, const CliffordCircuit &c, Direction d);

}  // namespace mixtop
