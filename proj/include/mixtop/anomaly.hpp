#pragma once

#include <array>
#include <string>
#include <vector>

#include "mixtop/lattice.hpp"
#include "mixtop/stabmix.hpp"

namespace mixtop {

enum class Anyon { e, m, f };
std::string to_string(Anyon a);
Anyon parse_anyon(const std::string &s);
constexpr std::array<Anyon, 3> all_anyons = {Anyon::e, Anyon::m, Anyon::f};

struct StringOperator {
    Anyon anyon = Anyon::e;
    Path path;
    PauliOp op;
};

// e: X on the links of a direct path; m: Z on the edges crossed by a dual
// path; f: prod over links X_e Z_{e+delta} of a direct path.
StringOperator string_operator(Anyon a, const Path &path, const Lattice &lat);
// loops and strings of the right path type for the anyon
StringOperator horizontal_string_loop(Anyon a, const Lattice &lat, int y = 0);
StringOperator vertical_string_loop(Anyon a, const Lattice &lat, int x = 0);

// Sign of the reordering of a and b inside `region`; the supports may only
// meet inside it.
int braiding_phase(const PauliOp &a, const PauliOp &b, const QubitSet &region);
// Requires exactly one contact between the two paths and uses the disc of
// `radius` around it.
int braiding_phase(const StringOperator &a, const StringOperator &b, const Lattice &lat, double radius = 2);

// theta from t_pr t_sp t_pq = theta t_pq t_sp t_pr, as an exponent of i
int hopping_phase(const PauliOp &t_pq, const PauliOp &t_pr, const PauliOp &t_sp);
struct HoppingOperators {
    PauliOp pq, pr, sp;
};
HoppingOperators hopping_operators(Anyon a, const Lattice &lat, int k = 0);
// exponent of i
int self_statistics(Anyon a, const Lattice &lat, int k = 0);
std::string phase_str(int exponent);

struct BraidingTable {
    std::array<std::array<int, 3>, 3> S{};  // +1 / -1
    std::array<int, 3> theta{};             // exponent of i
};
BraidingTable braiding_table(const Lattice &lat);

// Clifford dilation of a maximal dephasing channel. Ancilla i sits at qubit
// n_system + i, starts in |+> and controls noise operator i.
struct Dilation {
    std::string type;
    size_t n_system = 0;
    std::vector<PauliOp> noise;
    CliffordCircuit circuit;

    size_t n_total() const { return circuit.n; }
    size_t ancilla(size_t i) const { return n_system + i; }
    // region plus the ancillas whose noise operator touches it
    QubitSet light_cone(const QubitSet &region) const;
};

// type X, Z or ZX; only p = 1/2 has a Clifford dilation
Dilation dephasing_dilation(const Lattice &lat, const std::string &type, double p = 0.5);
// U^dagger (g x 1) U
PauliOp pullback(const PauliOp &g, const Dilation &d);
// input state tensor the ancilla |+> product state
StabilizerMixedState dilation_input(const StabilizerMixedState &s, const Dilation &d);
// trace over the ancillas after the circuit
StabilizerMixedState dilation_output(const StabilizerMixedState &s, const Dilation &d);

struct LoopStatus {
    Anyon anyon;
    char direction;  // 'h' or 'v'
    SymmetryStatus status;
    bool effective_strong;  // strong, or weak while the contractible loops are strong
};

struct MemoryClass {
    enum Kind { quantum, classical, trivial } kind = trivial;
    size_t k = 0;
    std::string str() const;
    bool operator==(const MemoryClass &o) const { return kind == o.kind && k == o.k; }
};

struct MemoryReport {
    MemoryClass memory;
    std::vector<LoopStatus> loops;
    std::array<SymmetryStatus, 3> contractible;  // elementary loop of e, m, f
};

MemoryReport classify_memory(const StabilizerMixedState &s, const Lattice &lat);

struct WitnessReport {
    bool orthogonal = false;        // charge of the disturbed state equals the braiding phase
    bool indistinguishable = false;  // A, B, C, AB, BC reduced states unchanged
    bool homentropic = false;       // S_ABC unchanged
    int charge = 0;                 // measured charge ratio, exponent of i
    int braiding = 0;               // +1 / -1 from the operators
    SymmetryStatus loop_status;
    bool all() const { return orthogonal && indistinguishable && homentropic; }
};

WitnessReport tee_witness_check(const StabilizerMixedState &s, const StringOperator &strong_loop,
                                const StringOperator &weak_string, const Partition &p, const Lattice &lat);

// The standard witness layout for a Levin-Wen partition with the given
// parameters: a box loop of `loop` inside the annulus around the hole and an
// e string from the centre leftward out of the annulus.
struct WitnessPair {
    StringOperator loop, string;
};
WitnessPair witness_pair(Anyon loop, const Lattice &lat, const Parameters &levin_wen = {});

}  // namespace mixtop
