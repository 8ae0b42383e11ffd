#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mixtop/dense.hpp"
#include "mixtop/pauli.hpp"
#include "mixtop/stabmix.hpp"

namespace oracle {

using mixtop::PauliOp;
using mixtop::QubitSet;
using Mat = Eigen::MatrixXcd;

// Kronecker product of single-qubit matrices; qubit q is bit q of the index
inline Mat pauli_dense(const PauliOp &p) {
    using C = std::complex<double>;
    Mat out = Mat::Identity(1, 1);
    for (size_t q = 0; q < p.n(); q++) {
        Mat m(2, 2);
        switch (p.letter(q)) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1;
        }
        Mat next(out.rows() * 2, out.cols() * 2);
        // new qubit is the most significant bit so far
        for (long a = 0; a < 2; a++)
            for (long b = 0; b < 2; b++)
                next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = m(a, b) * out;
        out = next;
    }
    static const C unit[4] = {1, C(0, 1), -1, C(0, -1)};
    return unit[p.letter_phase()] * out;
}

// rho = 2^-n sum over all 2^m group elements
inline Mat stabilizer_dense(const mixtop::StabilizerMixedState &s) {
    size_t n = s.n(), m = s.m();
    Mat rho = Mat::Zero(size_t{1} << n, size_t{1} << n);
    for (uint64_t c = 0; c < (uint64_t{1} << m); c++) {
        PauliOp g(n);
        for (size_t i = 0; i < m; i++)
            if (c >> i & 1)
                g = g * s.generators()[i];
        rho += pauli_dense(g);
    }
    return rho / double(size_t{1} << n);
}

// S_A = |A| - log2 #{group elements supported in A}
inline double entropy_by_enumeration(const mixtop::StabilizerMixedState &s, const QubitSet &region) {
    size_t n = s.n(), m = s.m();
    std::vector<bool> in(n, false);
    for (size_t q : region)
        in[q] = true;
    uint64_t count = 0;
    for (uint64_t c = 0; c < (uint64_t{1} << m); c++) {
        PauliOp g(n);
        for (size_t i = 0; i < m; i++)
            if (c >> i & 1)
                g = g * s.generators()[i];
        bool inside = true;
        for (size_t q : g.support())
            inside = inside && in[q];
        count += inside;
    }
    return double(region.size()) - std::log2(double(count));
}

inline mixtop::CliffordCircuit random_circuit(size_t n, size_t depth, std::mt19937_64 &rng) {
    mixtop::CliffordCircuit c(n);
    std::uniform_int_distribution<size_t> q(0, n - 1), kind(0, 5);
    for (size_t d = 0; d < depth; d++) {
        size_t a = q(rng), b = q(rng);
        switch (kind(rng)) {
        case 0: c.add(mixtop::Gate::H, a); break;
        case 1: c.add(mixtop::Gate::S, a); break;
        case 2: c.add(mixtop::Gate::X, a); break;
        case 3: c.add(mixtop::Gate::Z, a); break;
        case 4:
            if (a != b)
                c.add(mixtop::Gate::CX, a, b);
            break;
        default:
            if (a != b)
                c.add(mixtop::Gate::CZ, a, b);
        }
    }
    return c;
}

// Clifford image of a Z product state with a random number of generators
// dropped, so the result is a generic stabilizer mixed state
inline mixtop::StabilizerMixedState random_state(size_t n, std::mt19937_64 &rng) {
    auto c = random_circuit(n, 6 * n, rng);
    std::uniform_int_distribution<size_t> mdist(0, n);
    size_t m = mdist(rng);
    std::vector<PauliOp> gens;
    for (size_t q = 0; q < m; q++)
        gens.push_back(mixtop::conjugate_by_circuit(PauliOp::single(n, q, 'Z'), c, mixtop::Direction::forward));
    return mixtop::canonicalize(n, gens);
}

inline mixtop::Partition random_partition(size_t n, std::mt19937_64 &rng) {
    mixtop::Partition p;
    p.scheme = "explicit";
    std::uniform_int_distribution<int> d(0, 3);
    for (size_t q = 0; q < n; q++) {
        int r = d(rng);
        (r == 0 ? p.A : r == 1 ? p.B : r == 2 ? p.C : p.hole).push_back(q);
    }
    return p;
}

inline QubitSet random_region(size_t n, std::mt19937_64 &rng) {
    QubitSet r;
    std::bernoulli_distribution b(0.5);
    for (size_t q = 0; q < n; q++)
        if (b(rng))
            r.push_back(q);
    return r;
}

// Partial trace by explicit index bookkeeping, kept qubits in ascending order
inline Mat reduce(const Mat &rho, size_t n, const QubitSet &keep) {
    size_t k = keep.size();
    Mat out = Mat::Zero(size_t{1} << k, size_t{1} << k);
    std::vector<size_t> rest;
    for (size_t q = 0; q < n; q++)
        if (std::find(keep.begin(), keep.end(), q) == keep.end())
            rest.push_back(q);
    auto compose = [&](uint64_t a, uint64_t r) {
        uint64_t i = 0;
        for (size_t j = 0; j < k; j++)
            i |= (a >> j & 1) << keep[j];
        for (size_t j = 0; j < rest.size(); j++)
            i |= (r >> j & 1) << rest[j];
        return i;
    };
    for (uint64_t a = 0; a < (uint64_t{1} << k); a++)
        for (uint64_t b = 0; b < (uint64_t{1} << k); b++)
            for (uint64_t r = 0; r < (uint64_t{1} << rest.size()); r++)
                out(a, b) += rho(compose(a, r), compose(b, r));
    return out;
}

inline double entropy_of(const Mat &rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    double s = 0;
    for (long i = 0; i < es.eigenvalues().size(); i++) {
        double l = es.eigenvalues()(i);
        if (l > 1e-13)
            s -= l * std::log2(l);
    }
    return s;
}

inline double entropy_dense_oracle(const Mat &rho, size_t n, QubitSet region) {
    std::sort(region.begin(), region.end());
    return entropy_of(reduce(rho, n, region));
}

// log2 of the trace norm of the partial transpose over `region`
inline double negativity_dense_oracle(const Mat &rho, const QubitSet &region) {
    uint64_t mask = 0;
    for (size_t q : region)
        mask |= uint64_t{1} << q;
    Mat pt(rho.rows(), rho.cols());
    for (long i = 0; i < rho.rows(); i++)
        for (long j = 0; j < rho.cols(); j++) {
            uint64_t a = uint64_t(i), b = uint64_t(j);
            uint64_t swap = (a ^ b) & mask;
            pt(long(a ^ swap), long(b ^ swap)) = rho(i, j);
        }
    Eigen::SelfAdjointEigenSolver<Mat> es(pt);
    return std::log2(es.eigenvalues().cwiseAbs().sum());
}

}  // namespace oracle
