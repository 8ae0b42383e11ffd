#include "mixtop/pauli.hpp"

#include <stdexcept>

namespace mixtop {

namespace {

int mod4(int p) { return ((p % 4) + 4) % 4; }

void check_same_size(const PauliOp &a, const PauliOp &b, const char *what) {
    if (a.n() != b.n())
        throw std::invalid_argument(std::string(what) + ": operators act on " + std::to_string(a.n()) +
                                    " and " + std::to_string(b.n()) + " qubits");
}

}  // namespace

PauliOp::PauliOp(BitVec x, BitVec z, int phase) : x_(std::move(x)), z_(std::move(z)), phase_(mod4(phase)) {
    if (x_.size() != z_.size())
        throw std::invalid_argument("PauliOp: x and z lengths differ");
}

PauliOp PauliOp::parse(const std::string &s) {
    size_t pos = 0;
    int sign = 0;
    if (s.compare(0, 1, "+") == 0) {
        pos = 1;
    } else if (s.compare(0, 1, "-") == 0) {
        sign = 2;
        pos = 1;
    } else if (s.compare(0, 3, "\xE2\x88\x92") == 0) {  // U+2212
        sign = 2;
        pos = 3;
    }
    if (pos < s.size() && s[pos] == 'i') {
        sign += 1;
        pos++;
    }
    size_t n = s.size() - pos;
    PauliOp p(n);
    int ys = 0;
    for (size_t q = 0; q < n; q++) {
        char c = s[pos + q];
        switch (c) {
        case 'I': break;
        case 'X': p.x_.set(q, true); break;
        case 'Z': p.z_.set(q, true); break;
        case 'Y':
            p.x_.set(q, true);
            p.z_.set(q, true);
            ys++;
            break;
        default: throw std::invalid_argument("cannot parse Pauli string '" + s + "'");
        }
    }
    p.phase_ = mod4(sign + ys);
    return p;
}

PauliOp PauliOp::single(size_t n, size_t q, char letter) {
    PauliOp p(n);
    p.set_letter(q, letter);
    return p;
}

PauliOp PauliOp::on(size_t n, const QubitSet &qubits, char letter) {
    PauliOp p(n);
    for (size_t q : qubits)
        p *= single(n, q, letter);
    return p;
}

char PauliOp::letter(size_t q) const {
    bool x = x_.get(q), z = z_.get(q);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliOp::set_letter(size_t q, char letter) {
    if (q >= n())
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range");
    int before = x_.get(q) && z_.get(q);
    bool x = letter == 'X' || letter == 'Y';
    bool z = letter == 'Z' || letter == 'Y';
    if (!x && !z && letter != 'I')
        throw std::invalid_argument(std::string("bad Pauli letter ") + letter);
    x_.set(q, x);
    z_.set(q, z);
    phase_ = mod4(phase_ - before + (x && z));
}

int PauliOp::letter_phase() const { return mod4(phase_ - static_cast<int>((x_ & z_).popcount())); }

bool PauliOp::is_hermitian() const { return (letter_phase() & 1) == 0; }

bool PauliOp::is_identity_up_to_phase() const { return !x_.any() && !z_.any(); }

size_t PauliOp::weight() const { return (x_ | z_).popcount(); }

QubitSet PauliOp::support() const { return (x_ | z_).ones(); }

BitVec PauliOp::support_mask() const { return x_ | z_; }

PauliOp PauliOp::from_symplectic(const BitVec &v, int phase) {
    if (v.size() % 2)
        throw std::invalid_argument("symplectic vector must have even length");
    size_t n = v.size() / 2;
    return PauliOp(v.slice(0, n), v.slice(n, n), phase);
}

std::string PauliOp::str() const {
    static const char *prefix[] = {"+", "+i", "-", "-i"};
    std::string s = prefix[letter_phase()];
    for (size_t q = 0; q < n(); q++)
        s += letter(q);
    return s;
}

PauliOp &PauliOp::operator*=(const PauliOp &o) {
    check_same_size(*this, o, "multiply");
    // Z^{z_a} X^{x_b} = (-1)^{z_a x_b} X^{x_b} Z^{z_a}
    int swaps = static_cast<int>((z_ & o.x_).popcount());
    phase_ = mod4(phase_ + o.phase_ + 2 * swaps);
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
}

PauliOp multiply(const PauliOp &a, const PauliOp &b) { return a * b; }

int commutes(const PauliOp &a, const PauliOp &b) {
    check_same_size(a, b, "commutes");
    bool odd = a.x().dot(b.z()) ^ a.z().dot(b.x());
    return odd ? -1 : 1;
}

PauliOp restrict(const PauliOp &a, const BitVec &mask) {
    if (mask.size() != a.n())
        throw std::invalid_argument("restrict: region mask size mismatch");
    PauliOp r(a.x() & mask, a.z() & mask, 0);
    r.set_phase(static_cast<int>((r.x() & r.z()).popcount()));
    return r;
}

PauliOp restrict(const PauliOp &a, const QubitSet &region) {
    BitVec mask(a.n());
    for (size_t q : region) {
        if (q >= a.n())
            throw std::out_of_range("restrict: qubit " + std::to_string(q) + " out of range");
        mask.set(q, true);
    }
    return restrict(a, mask);
}

PauliOp embed(const PauliOp &a, size_t n_total, const std::vector<size_t> &where) {
    if (where.size() != a.n())
        throw std::invalid_argument("embed: qubit map size mismatch");
    BitVec x(n_total), z(n_total);
    for (size_t q = 0; q < a.n(); q++) {
        if (where[q] >= n_total)
            throw std::out_of_range("embed: target qubit out of range");
        x.set(where[q], a.x().get(q));
        z.set(where[q], a.z().get(q));
    }
    return PauliOp(std::move(x), std::move(z), a.phase());
}

PauliOp extend(const PauliOp &a, size_t n_total) {
    std::vector<size_t> where(a.n());
    for (size_t q = 0; q < a.n(); q++)
        where[q] = q;
    return embed(a, n_total, where);
}

void CliffordCircuit::add(Gate g, size_t a) {
    if (g == Gate::CX || g == Gate::CZ)
        throw std::invalid_argument("two-qubit gate needs two qubits");
    if (a >= n)
        throw std::out_of_range("gate qubit out of range");
    gates.push_back({g, a, 0});
}

void CliffordCircuit::add(Gate g, size_t a, size_t b) {
    if (g != Gate::CX && g != Gate::CZ)
        throw std::invalid_argument("single-qubit gate given two qubits");
    if (a >= n || b >= n)
        throw std::out_of_range("gate qubit out of range");
    if (a == b)
        throw std::invalid_argument("two-qubit gate needs distinct qubits");
    gates.push_back({g, a, b});
}

namespace {

// g P g^dagger (or g^dagger P g when dagger is set) for a single gate
void conjugate_gate(BitVec &x, BitVec &z, int &phase, const GateOp &g, bool dagger) {
    size_t a = g.a, b = g.b;
    switch (g.kind) {
    case Gate::H: {
        bool xa = x.get(a), za = z.get(a);
        x.set(a, za);
        z.set(a, xa);
        phase += 2 * (xa && za);
        break;
    }
    case Gate::S: {
        bool xa = x.get(a);
        if (xa) {
            z.flip(a);
            phase += dagger ? 3 : 1;
        }
        break;
    }
    case Gate::CX:
        if (x.get(a))
            x.flip(b);
        if (z.get(b))
            z.flip(a);
        break;
    case Gate::CZ: {
        bool xa = x.get(a), xb = x.get(b);
        if (xb)
            z.flip(a);
        if (xa)
            z.flip(b);
        phase += 2 * (xa && xb);
        break;
    }
    case Gate::X: phase += 2 * z.get(a); break;
    case Gate::Z: phase += 2 * x.get(a); break;
    }
}

}  // namespace

PauliOp conjugate_by_circuit(const PauliOp &a, const CliffordCircuit &c, Direction d) {
    if (a.n() != c.n)
        throw std::invalid_argument("conjugate_by_circuit: operator has " + std::to_string(a.n()) +
                                    " qubits, circuit has " + std::to_string(c.n));
    BitVec x = a.x(), z = a.z();
    int phase = a.phase();
    if (d == Direction::forward) {
        for (auto &g : c.gates)
            conjugate_gate(x, z, phase, g, false);
    } else {
        for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
            conjugate_gate(x, z, phase, *it, true);
    }
    return PauliOp(std::move(x), std::move(z), phase);
}

}  // namespace mixtop
