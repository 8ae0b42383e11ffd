#include "mixtop/stabmix.hpp"

#include <stdexcept>

namespace mixtop {

PauliOp StabilizerMixedState::element(const BitVec &coeffs) const {
    if (coeffs.size() != gens_.size())
        throw std::invalid_argument("coefficient vector length does not match generator count");
    PauliOp p(n_);
    for (size_t i : coeffs.ones())
        p *= gens_[i];
    return p;
}

StabilizerMixedState canonicalize(size_t n, const std::vector<PauliOp> &gens) {
    for (auto &g : gens) {
        if (g.n() != n)
            throw std::invalid_argument("generator " + g.str() + " does not act on " + std::to_string(n) +
                                        " qubits");
        if (!g.is_hermitian())
            throw std::invalid_argument("generator " + g.str() + " has an imaginary sign");
    }
    for (size_t i = 0; i < gens.size(); i++)
        for (size_t j = i + 1; j < gens.size(); j++)
            if (commutes(gens[i], gens[j]) < 0)
                throw std::invalid_argument("generators " + gens[i].str() + " and " + gens[j].str() +
                                            " anticommute");
    StabilizerMixedState s(n);
    SpanBasis basis(2 * n, gens.size());
    for (size_t i = 0; i < gens.size(); i++) {
        BitVec v = gens[i].symplectic();
        if (basis.insert(v)) {
            s.gens_.push_back(gens[i]);
            continue;
        }
        auto c = basis.coefficients(v);
        PauliOp prod(n);
        for (size_t k : c->ones())
            prod *= gens[k];
        if (prod.phase() != gens[i].phase())
            throw std::invalid_argument("generator " + gens[i].str() +
                                        " contradicts the product of earlier generators; the state would vanish");
    }
    return s;
}

StabilizerMixedState canonicalize(const std::vector<std::string> &gens) {
    std::vector<PauliOp> ops;
    for (auto &g : gens)
        ops.push_back(PauliOp::parse(g));
    size_t n = ops.empty() ? 0 : ops[0].n();
    return canonicalize(n, ops);
}

double entropy_region(const StabilizerMixedState &s, const QubitSet &region) {
    BitVec in = mask_of(region, s.n());
    BitVec out(s.n());
    for (size_t q = 0; q < s.n(); q++)
        out.set(q, !in.get(q));
    BitMatrix restricted(s.m(), 2 * s.n());
    for (size_t i = 0; i < s.m(); i++) {
        auto &g = s.generators()[i];
        restricted.row(i) = (g.x() & out).concat(g.z() & out);
    }
    size_t inside = s.m() - rank(restricted);
    return double(in.popcount()) - double(inside);
}

double cmi(const StabilizerMixedState &s, const Partition &p) {
    return entropy_region(s, p.AB()) + entropy_region(s, p.BC()) - entropy_region(s, p.B) -
           entropy_region(s, p.ABC());
}

std::string SymmetryStatus::str() const {
    static const char *ch[] = {"+1", "+i", "-1", "-i"};
    switch (kind) {
    case strong: return std::string("strong(") + ch[charge] + ")";
    case weak: return "weak";
    case none: return "none";
    }
    return "?";
}

SymmetryStatus symmetry_status(const StabilizerMixedState &s, const PauliOp &g) {
    if (g.n() != s.n())
        throw std::invalid_argument("symmetry_status: operator size does not match state");
    SpanBasis basis(2 * s.n(), s.m());
    for (auto &gen : s.generators())
        basis.insert(gen.symplectic());
    if (auto c = basis.coefficients(g.symplectic())) {
        PauliOp h = s.element(*c);
        return SymmetryStatus::make_strong(g.phase() - h.phase());
    }
    for (auto &gen : s.generators())
        if (commutes(gen, g) < 0)
            return {SymmetryStatus::none, 0};
    return {SymmetryStatus::weak, 0};
}

StabilizerMixedState apply_max_dephasing(const StabilizerMixedState &s, const std::vector<PauliOp> &noise) {
    std::vector<PauliOp> gens = s.generators();
    for (auto &e : noise) {
        if (e.n() != s.n())
            throw std::invalid_argument("noise operator " + e.str() + " has the wrong size");
        long pivot = -1;
        for (size_t i = 0; i < gens.size(); i++) {
            if (commutes(gens[i], e) > 0)
                continue;
            if (pivot < 0)
                pivot = static_cast<long>(i);
            else
                gens[i] *= gens[pivot];
        }
        if (pivot >= 0)
            gens.erase(gens.begin() + pivot);
    }
    return canonicalize(s.n(), gens);
}

std::vector<PauliOp> subgroup_on(const StabilizerMixedState &s, const QubitSet &region) {
    BitVec in = mask_of(region, s.n());
    BitVec out(s.n());
    for (size_t q = 0; q < s.n(); q++)
        out.set(q, !in.get(q));
    // coefficient vectors c with sum c_i S_i vanishing outside the region
    BitMatrix cols(2 * s.n(), s.m());
    for (size_t i = 0; i < s.m(); i++) {
        auto &g = s.generators()[i];
        for (size_t q : (g.x() & out).ones())
            cols.set(q, i, true);
        for (size_t q : (g.z() & out).ones())
            cols.set(s.n() + q, i, true);
    }
    std::vector<PauliOp> out_ops;
    for (auto &c : nullspace(cols))
        out_ops.push_back(s.element(c));
    return out_ops;
}

StabilizerMixedState conjugate_state(const StabilizerMixedState &s, const PauliOp &e) {
    std::vector<PauliOp> gens = s.generators();
    for (auto &g : gens)
        if (commutes(g, e) < 0)
            g.set_phase(g.phase() + 2);
    return canonicalize(s.n(), gens);
}

StabilizerMixedState tensor(const StabilizerMixedState &s, const StabilizerMixedState &t) {
    size_t n = s.n() + t.n();
    std::vector<PauliOp> gens;
    for (auto &g : s.generators())
        gens.push_back(extend(g, n));
    std::vector<size_t> where(t.n());
    for (size_t q = 0; q < t.n(); q++)
        where[q] = s.n() + q;
    for (auto &g : t.generators())
        gens.push_back(embed(g, n, where));
    return canonicalize(n, gens);
}

StabilizerMixedState product_state(size_t n, char letter) {
    std::vector<PauliOp> gens;
    for (size_t q = 0; q < n; q++)
        gens.push_back(PauliOp::single(n, q, letter));
    return canonicalize(n, gens);
}

PauliOp star_op(const Lattice &lat, int x, int y) {
    auto s = lat.star(x, y);
    if (!s)
        throw std::out_of_range("no star at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return PauliOp::on(lat.n(), *s, 'Z');
}

PauliOp plaquette_op(const Lattice &lat, int x, int y) {
    auto p = lat.plaquette(x, y);
    if (!p)
        throw std::out_of_range("no plaquette at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return PauliOp::on(lat.n(), *p, 'X');
}

namespace {

void require(const Lattice &lat, LatticeKind k, const std::string &kind) {
    if (lat.kind() != k)
        throw std::invalid_argument("model " + kind + " needs a " + to_string(k) + " lattice, got " +
                                    to_string(lat.kind()));
}

}  // namespace

StabilizerMixedState model_state(const std::string &kind, const Lattice &lat) {
    size_t n = lat.n();
    std::vector<PauliOp> gens;
    if (kind == "toric-code" || kind == "loop-soup") {
        require(lat, LatticeKind::square_edges, kind);
        for (auto &s : lat.stars())
            gens.push_back(PauliOp::on(n, s, 'Z'));
        if (kind == "toric-code")
            for (auto &p : lat.plaquettes())
                gens.push_back(PauliOp::on(n, p, 'X'));
    } else if (kind == "zx-dephased-max") {
        // C_v = A_v B_{v - delta}; the plaquette at v - delta has corner (x, y-1)
        require(lat, LatticeKind::square_edges, kind);
        for (auto [x, y] : lat.vertices()) {
            auto s = lat.star(x, y);
            auto p = lat.plaquette(x, y - 1);
            if (s && p)
                gens.push_back(PauliOp::on(n, *s, 'Z') * PauliOp::on(n, *p, 'X'));
        }
    } else if (kind == "honeycomb-flux") {
        require(lat, LatticeKind::honeycomb_vertices, kind);
        for (auto &hx : lat.hexagons()) {
            PauliOp b(n);
            for (size_t k = 0; k < hx.sites.size(); k++)
                b *= PauliOp::single(n, hx.sites[k], hx.letters[k]);
            gens.push_back(b);
        }
    } else if (kind == "product-z") {
        return product_state(n, 'Z');
    } else if (kind == "product-x") {
        return product_state(n, 'X');
    } else if (kind == "maximally-mixed") {
        return StabilizerMixedState(n);
    } else {
        throw std::invalid_argument("unknown model kind '" + kind + "'");
    }
    return canonicalize(n, gens);
}

std::vector<PauliOp> dephasing_ops(const Lattice &lat, const std::string &type) {
    if (lat.kind() != LatticeKind::square_edges)
        throw std::invalid_argument("dephasing channels are defined on square-edges lattices");
    size_t n = lat.n();
    std::vector<PauliOp> ops;
    for (size_t e = 0; e < n; e++) {
        if (type == "X" || type == "XZ")
            ops.push_back(PauliOp::single(n, e, 'X'));
        if (type == "Z" || type == "XZ")
            ops.push_back(PauliOp::single(n, e, 'Z'));
        if (type == "ZX") {
            PauliOp o = PauliOp::single(n, e, 'Z');
            if (auto d = lat.delta_partner(e))
                o *= PauliOp::single(n, *d, 'X');
            ops.push_back(o);
        }
    }
    if (ops.empty())
        throw std::invalid_argument("unknown dephasing type '" + type + "'");
    return ops;
}

}  // namespace mixtop
