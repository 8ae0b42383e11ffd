#include "mixtop/anomaly.hpp"

#include <cmath>
#include <stdexcept>

namespace mixtop {

std::string to_string(Anyon a) {
    switch (a) {
    case Anyon::e: return "e";
    case Anyon::m: return "m";
    case Anyon::f: return "f";
    }
    return "?";
}

Anyon parse_anyon(const std::string &s) {
    if (s == "e")
        return Anyon::e;
    if (s == "m")
        return Anyon::m;
    if (s == "f")
        return Anyon::f;
    throw std::invalid_argument("unknown anyon '" + s + "' (expected e, m or f)");
}

std::string phase_str(int exponent) {
    static const char *names[] = {"+1", "+i", "-1", "-i"};
    return names[((exponent % 4) + 4) % 4];
}

StringOperator string_operator(Anyon a, const Path &path, const Lattice &lat) {
    validate_path(lat, path);
    bool want_dual = a == Anyon::m;
    if (path.dual != want_dual)
        throw std::invalid_argument(to_string(a) + " strings live on the " + (want_dual ? "dual" : "direct") +
                                    " lattice");
    size_t n = lat.n();
    PauliOp op(n);
    for (size_t e : path.links) {
        if (a == Anyon::m) {
            op *= PauliOp::single(n, e, 'Z');
            continue;
        }
        op *= PauliOp::single(n, e, 'X');
        if (a == Anyon::f) {
            auto d = lat.delta_partner(e);
            if (!d)
                throw std::out_of_range("f string link has no delta partner on this lattice");
            op *= PauliOp::single(n, *d, 'Z');
        }
    }
    // fix the overall phase so the letters carry a + sign
    op.set_phase(op.phase() - op.letter_phase());
    return {a, path, op};
}

StringOperator horizontal_string_loop(Anyon a, const Lattice &lat, int y) {
    return string_operator(a, horizontal_loop(lat, y, a == Anyon::m), lat);
}

StringOperator vertical_string_loop(Anyon a, const Lattice &lat, int x) {
    return string_operator(a, vertical_loop(lat, x, a == Anyon::m), lat);
}

int braiding_phase(const PauliOp &a, const PauliOp &b, const QubitSet &region) {
    if (a.n() != b.n())
        throw std::invalid_argument("braiding_phase: operators act on different qubit counts");
    BitVec r = mask_of(region, a.n());
    BitVec meet = a.support_mask() & b.support_mask();
    for (size_t q : meet.ones())
        if (!r.get(q))
            throw std::invalid_argument("string supports meet at qubit " + std::to_string(q) +
                                        " outside the crossing region");
    return commutes(restrict(a, r), restrict(b, r));
}

int braiding_phase(const StringOperator &a, const StringOperator &b, const Lattice &lat, double radius) {
    std::vector<Point> where;
    int contacts = count_contacts(lat, a.path, b.path, &where);
    if (contacts != 1)
        throw std::invalid_argument("braiding needs exactly one crossing, found " + std::to_string(contacts));
    return braiding_phase(a.op, b.op, lat.disc(where[0], radius));
}

int hopping_phase(const PauliOp &t_pq, const PauliOp &t_pr, const PauliOp &t_sp) {
    PauliOp lhs = t_pr * t_sp * t_pq;
    PauliOp rhs = t_pq * t_sp * t_pr;
    if (lhs.x() != rhs.x() || lhs.z() != rhs.z())
        throw std::logic_error("hopping products differ as Pauli strings");
    return ((lhs.phase() - rhs.phase()) % 4 + 4) % 4;
}

HoppingOperators hopping_operators(Anyon a, const Lattice &lat, int k) {
    auto t = statistics_triple(lat, a == Anyon::m, k);
    return {string_operator(a, t.pq, lat).op, string_operator(a, t.pr, lat).op, string_operator(a, t.sp, lat).op};
}

int self_statistics(Anyon a, const Lattice &lat, int k) {
    auto h = hopping_operators(a, lat, k);
    return hopping_phase(h.pq, h.pr, h.sp);
}

BraidingTable braiding_table(const Lattice &lat) {
    BraidingTable t;
    for (size_t i = 0; i < 3; i++) {
        Anyon a = all_anyons[i];
        for (size_t j = 0; j < 3; j++) {
            Anyon b = all_anyons[j];
            auto cp = crossing_pair(lat, a == Anyon::m, b == Anyon::m);
            t.S[i][j] = braiding_phase(string_operator(a, cp.a, lat), string_operator(b, cp.b, lat), lat);
        }
        t.theta[i] = self_statistics(a, lat);
    }
    return t;
}

QubitSet Dilation::light_cone(const QubitSet &region) const {
    BitVec r = mask_of(region, n_system);
    QubitSet out = region;
    for (size_t i = 0; i < noise.size(); i++)
        if ((noise[i].support_mask() & r).any())
            out.push_back(ancilla(i));
    return set_union(out, {});
}

Dilation dephasing_dilation(const Lattice &lat, const std::string &type, double p) {
    if (std::abs(p - 0.5) > 1e-12)
        throw std::invalid_argument("only maximal dephasing (p = 1/2) has a Clifford dilation; got p = " +
                                    std::to_string(p));
    Dilation d;
    d.type = type;
    d.n_system = lat.n();
    d.noise = dephasing_ops(lat, type);
    d.circuit = CliffordCircuit(d.n_system + d.noise.size());
    // ancilla in |+> controlling the noise operator: tracing it out gives
    // rho -> (rho + E rho E) / 2
    for (size_t i = 0; i < d.noise.size(); i++)
        for (size_t q : d.noise[i].support()) {
            char l = d.noise[i].letter(q);
            if (l == 'X')
                d.circuit.add(Gate::CX, d.ancilla(i), q);
            else if (l == 'Z')
                d.circuit.add(Gate::CZ, d.ancilla(i), q);
            else
                throw std::invalid_argument("dilation supports X and Z noise letters only");
        }
    return d;
}

PauliOp pullback(const PauliOp &g, const Dilation &d) {
    PauliOp full = g;
    if (g.n() == d.n_system)
        full = extend(g, d.n_total());
    else if (g.n() != d.n_total())
        throw std::invalid_argument("pullback: operator size matches neither system nor dilation");
    for (size_t q = d.n_system; q < d.n_total(); q++)
        if (full.letter(q) != 'I')
            throw std::invalid_argument("pullback: operator acts on ancilla qubit " + std::to_string(q));
    return conjugate_by_circuit(full, d.circuit, Direction::inverse);
}

StabilizerMixedState dilation_input(const StabilizerMixedState &s, const Dilation &d) {
    if (s.n() != d.n_system)
        throw std::invalid_argument("dilation_input: state size does not match the dilation");
    return tensor(s, product_state(d.noise.size(), 'X'));
}

StabilizerMixedState dilation_output(const StabilizerMixedState &s, const Dilation &d) {
    auto in = dilation_input(s, d);
    std::vector<PauliOp> gens;
    for (auto &g : in.generators())
        gens.push_back(conjugate_by_circuit(g, d.circuit, Direction::forward));
    auto evolved = canonicalize(d.n_total(), gens);
    QubitSet system(d.n_system);
    for (size_t q = 0; q < d.n_system; q++)
        system[q] = q;
    std::vector<PauliOp> reduced;
    for (auto &g : subgroup_on(evolved, system))
        reduced.push_back(PauliOp(g.x().slice(0, d.n_system), g.z().slice(0, d.n_system), g.phase()));
    return canonicalize(d.n_system, reduced);
}

std::string MemoryClass::str() const {
    switch (kind) {
    case quantum: return "quantum(" + std::to_string(k) + ")";
    case classical: return "classical(" + std::to_string(k) + ")";
    case trivial: return "trivial";
    }
    return "?";
}

namespace {

size_t commutation_rank(const std::vector<PauliOp> &rows, const std::vector<PauliOp> &cols) {
    BitMatrix m(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); i++)
        for (size_t j = 0; j < cols.size(); j++)
            m.set(i, j, commutes(rows[i], cols[j]) < 0);
    return rank(m);
}

}  // namespace

MemoryReport classify_memory(const StabilizerMixedState &s, const Lattice &lat) {
    if (lat.kind() != LatticeKind::square_edges || lat.boundary() != Boundary::torus)
        throw std::invalid_argument("memory classification needs a square-lattice torus");
    if (s.n() != lat.n())
        throw std::invalid_argument("state size does not match the lattice");
    MemoryReport rep;
    std::array<StringOperator, 3> small = {
        string_operator(Anyon::e, box_loop(lat, 0, 0, 1, 1), lat),
        string_operator(Anyon::m, dual_box_loop(lat, 1, 1, 1, 1), lat),
        string_operator(Anyon::f, box_loop(lat, 0, 0, 1, 1), lat),
    };
    for (size_t i = 0; i < 3; i++)
        rep.contractible[i] = symmetry_status(s, small[i].op);
    std::vector<PauliOp> strong, weak;
    for (size_t i = 0; i < 3; i++) {
        Anyon a = all_anyons[i];
        for (char dir : {'h', 'v'}) {
            auto w = dir == 'h' ? horizontal_string_loop(a, lat) : vertical_string_loop(a, lat);
            auto st = symmetry_status(s, w.op);
            bool eff = st.is_strong() || (st.kind == SymmetryStatus::weak && rep.contractible[i].is_strong());
            rep.loops.push_back({a, dir, st, eff});
            if (eff)
                strong.push_back(w.op);
            else if (st.kind == SymmetryStatus::weak)
                weak.push_back(w.op);
        }
    }
    size_t kq = commutation_rank(strong, strong) / 2;
    size_t kc = commutation_rank(strong, weak);
    if (kq > 0)
        rep.memory = {MemoryClass::quantum, kq};
    else if (kc > 0)
        rep.memory = {MemoryClass::classical, kc};
    return rep;
}

WitnessReport tee_witness_check(const StabilizerMixedState &s, const StringOperator &strong_loop,
                                const StringOperator &weak_string, const Partition &p, const Lattice &lat) {
    if (s.n() != lat.n())
        throw std::invalid_argument("state size does not match the lattice");
    if (!strong_loop.path.closed)
        throw std::invalid_argument("witness: the strong operator must be a closed loop");
    if (weak_string.path.closed)
        throw std::invalid_argument("witness: the weak operator must be an open string");
    BitVec abc = mask_of(p.ABC(), s.n()), hole = mask_of(p.hole, s.n());
    BitVec loop_supp = strong_loop.op.support_mask();
    if ((loop_supp & abc) != loop_supp)
        throw std::invalid_argument("witness: the loop leaves the annulus");
    if (!(weak_string.op.support_mask() & hole).any())
        throw std::invalid_argument("witness: the string does not end inside the hole");
    if (count_contacts(lat, strong_loop.path, weak_string.path) != 1)
        throw std::invalid_argument("witness: the string must cross the loop exactly once");

    WitnessReport r;
    r.braiding = commutes(strong_loop.op, weak_string.op);
    r.loop_status = symmetry_status(s, strong_loop.op);
    auto disturbed = conjugate_state(s, weak_string.op);
    auto after = symmetry_status(disturbed, strong_loop.op);
    if (r.loop_status.is_strong() && after.is_strong()) {
        r.charge = ((after.charge - r.loop_status.charge) % 4 + 4) % 4;
        // orthogonal sectors need the charge to change
        r.orthogonal = r.charge == (r.braiding < 0 ? 2 : 0) && r.braiding < 0;
    }
    r.indistinguishable = true;
    for (auto *region : {&p.A, &p.B, &p.C})
        for (auto &g : subgroup_on(s, *region))
            r.indistinguishable = r.indistinguishable && commutes(g, weak_string.op) > 0;
    for (auto region : {p.AB(), p.BC()})
        for (auto &g : subgroup_on(s, region))
            r.indistinguishable = r.indistinguishable && commutes(g, weak_string.op) > 0;
    r.homentropic = entropy_region(s, p.ABC()) == entropy_region(disturbed, p.ABC());
    return r;
}

WitnessPair witness_pair(Anyon loop, const Lattice &lat, const Parameters &lw) {
    auto get = [&](const char *k, double d) {
        auto it = lw.find(k);
        return it == lw.end() ? d : it->second;
    };
    int cx = static_cast<int>(get("cx", std::floor(lat.Lx() / 2.0)));
    int cy = static_cast<int>(get("cy", std::floor(lat.Ly() / 2.0)));
    double inner = get("inner", 1), outer = get("outer", 3);
    WitnessPair w;
    if (loop == Anyon::m) {
        // crosses edges at distance a + 1/2 from the centre
        int a = static_cast<int>(std::floor(inner));
        if (a + 0.5 <= inner + 1e-9)
            a++;
        w.loop = string_operator(loop, dual_box_loop(lat, cx - a, cy - a, cx + a, cy + a), lat);
    } else {
        // box edges at distance b or b + 1; the delta partners of f land at
        // b + 1/2 because the box is shifted against delta
        int b = static_cast<int>(std::floor(inner)) + 1;
        w.loop = string_operator(loop, box_loop(lat, cx - b, cy - b - 1, cx + b + 1, cy + b), lat);
    }
    int len = static_cast<int>(std::floor(outer)) + 1;
    w.string = string_operator(Anyon::e, straight_path(lat, cx, cy, Step::mx, len, false), lat);
    return w;
}

}  // namespace mixtop
