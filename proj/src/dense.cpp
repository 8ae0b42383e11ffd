#include "mixtop/dense.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mixtop {

namespace {

using cd = std::complex<double>;

uint64_t mask64(const BitVec &v) {
    if (v.size() > 63)
        throw std::length_error("dense operations are limited to 63 qubits");
    return v.words().empty() ? 0 : v.words()[0];
}

uint64_t mask64(const QubitSet &q, size_t n) {
    uint64_t m = 0;
    for (size_t i : q) {
        if (i >= n)
            throw std::out_of_range("qubit " + std::to_string(i) + " outside a " + std::to_string(n) +
                                    "-qubit state");
        m |= uint64_t{1} << i;
    }
    return m;
}

int parity(uint64_t v) { return std::popcount(v) & 1; }

const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_size(size_t n, size_t max_n, const char *what) {
    if (n > max_n)
        throw std::length_error(std::string(what) + ": " + std::to_string(n) + " qubits exceed the dense budget of " +
                                std::to_string(max_n));
}

}  // namespace

DenseState::DenseState(size_t n, CMatrix rho) : n(n), rho(std::move(rho)) {
    size_t dim = size_t{1} << n;
    if (static_cast<size_t>(this->rho.rows()) != dim || static_cast<size_t>(this->rho.cols()) != dim)
        throw std::invalid_argument("density matrix shape does not match " + std::to_string(n) + " qubits");
}

DenseState DenseState::pure(size_t n, const CVector &psi) {
    if (static_cast<size_t>(psi.size()) != size_t{1} << n)
        throw std::invalid_argument("state vector length does not match qubit count");
    CVector v = psi / psi.norm();
    return DenseState(n, v * v.adjoint());
}

void DenseState::validate(double tol) const {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - cd(1, 0)) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
    for (double l : hermitian_eigenvalues(rho))
        if (l < -tol)
            throw std::invalid_argument("density matrix has a negative eigenvalue " + std::to_string(l));
}

CMatrix pauli_matrix(const PauliOp &p) {
    check_size(p.n(), dense_budget, "pauli_matrix");
    size_t dim = size_t{1} << p.n();
    uint64_t x = mask64(p.x()), z = mask64(p.z());
    CMatrix m = CMatrix::Zero(dim, dim);
    for (uint64_t b = 0; b < dim; b++)
        m(b ^ x, b) = ipow[p.phase()] * double(parity(z & b) ? -1 : 1);
    return m;
}

CVector apply_pauli(const PauliOp &p, const CVector &psi) {
    size_t dim = size_t{1} << p.n();
    if (static_cast<size_t>(psi.size()) != dim)
        throw std::invalid_argument("apply_pauli: vector length does not match operator");
    uint64_t x = mask64(p.x()), z = mask64(p.z());
    CVector out(dim);
    for (uint64_t b = 0; b < dim; b++)
        out(b ^ x) = ipow[p.phase()] * double(parity(z & b) ? -1 : 1) * psi(b);
    return out;
}

CMatrix conjugate_dense(const CMatrix &rho, const PauliOp &p) {
    size_t dim = size_t{1} << p.n();
    if (static_cast<size_t>(rho.rows()) != dim)
        throw std::invalid_argument("conjugate_dense: matrix size does not match operator");
    uint64_t x = mask64(p.x()), z = mask64(p.z());
    CMatrix out(dim, dim);
    for (uint64_t a = 0; a < dim; a++)
        for (uint64_t b = 0; b < dim; b++) {
            int s = parity(z & a) ^ parity(z & b);
            out(a ^ x, b ^ x) = s ? -rho(a, b) : rho(a, b);
        }
    return out;
}

DenseState densify(const StabilizerMixedState &s, size_t max_n) {
    check_size(s.n(), std::min(max_n, dense_budget), "densify");
    size_t dim = size_t{1} << s.n();
    CMatrix m = CMatrix::Identity(dim, dim);
    for (auto &g : s.generators()) {
        uint64_t x = mask64(g.x()), z = mask64(g.z());
        CMatrix next = m;
        for (uint64_t a = 0; a < dim; a++) {
            cd f = ipow[g.phase()] * double(parity(z & a) ? -1 : 1);
            next.row(a ^ x) += f * m.row(a);
        }
        m = next * 0.5;
    }
    m /= std::ldexp(1.0, static_cast<int>(s.n() - s.m()));
    return DenseState(s.n(), std::move(m));
}

DenseState apply_noise(const DenseState &rho, const NoiseSpec &noise) {
    if (noise.n != rho.n && !noise.sites.empty())
        throw std::invalid_argument("noise and state act on different qubit counts");
    noise.validate();
    CMatrix cur = rho.rho;
    for (auto &site : noise.sites) {
        double rest = 1;
        CMatrix next = CMatrix::Zero(cur.rows(), cur.cols());
        for (auto &[op, pr] : site.errors) {
            next += pr * conjugate_dense(cur, op);
            rest -= pr;
        }
        next += rest * cur;
        cur = std::move(next);
    }
    return DenseState(rho.n, std::move(cur));
}

DenseState partial_trace(const DenseState &rho, const QubitSet &keep) {
    size_t k = keep.size();
    uint64_t kmask = mask64(keep, rho.n);
    if (static_cast<size_t>(std::popcount(kmask)) != k)
        throw std::invalid_argument("partial_trace: repeated qubit");
    QubitSet env;
    for (size_t q = 0; q < rho.n; q++)
        if (!((kmask >> q) & 1))
            env.push_back(q);
    auto spread = [](uint64_t bits, const QubitSet &where) {
        uint64_t out = 0;
        for (size_t i = 0; i < where.size(); i++)
            if ((bits >> i) & 1)
                out |= uint64_t{1} << where[i];
        return out;
    };
    size_t dk = size_t{1} << k, de = size_t{1} << env.size();
    std::vector<uint64_t> kfull(dk), efull(de);
    for (size_t i = 0; i < dk; i++)
        kfull[i] = spread(i, keep);
    for (size_t e = 0; e < de; e++)
        efull[e] = spread(e, env);
    CMatrix out = CMatrix::Zero(dk, dk);
    for (size_t e = 0; e < de; e++)
        for (size_t a = 0; a < dk; a++)
            for (size_t b = 0; b < dk; b++)
                out(a, b) += rho.rho(kfull[a] | efull[e], kfull[b] | efull[e]);
    return DenseState(k, std::move(out));
}

CMatrix partial_transpose(const CMatrix &rho, const QubitSet &region) {
    size_t dim = rho.rows();
    size_t n = std::countr_zero(dim);
    uint64_t r = mask64(region, n);
    CMatrix out(dim, dim);
    for (uint64_t a = 0; a < dim; a++)
        for (uint64_t b = 0; b < dim; b++)
            out((a & ~r) | (b & r), (b & ~r) | (a & r)) = rho(a, b);
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix &m, double zero) {
    size_t dim = m.rows();
    std::vector<size_t> parent(dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (size_t i = 0; i < dim; i++)
        for (size_t j = i + 1; j < dim; j++)
            if (std::abs(m(i, j)) > zero)
                parent[find(i)] = find(j);
    std::vector<std::vector<size_t>> blocks(dim);
    for (size_t i = 0; i < dim; i++)
        blocks[find(i)].push_back(i);
    std::vector<double> out;
    out.reserve(dim);
    for (auto &bl : blocks) {
        if (bl.empty())
            continue;
        if (bl.size() == 1) {
            out.push_back(m(bl[0], bl[0]).real());
            continue;
        }
        CMatrix sub(bl.size(), bl.size());
        for (size_t i = 0; i < bl.size(); i++)
            for (size_t j = 0; j < bl.size(); j++)
                sub(i, j) = m(bl[i], bl[j]);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sub, Eigen::EigenvaluesOnly);
        for (auto l : es.eigenvalues())
            out.push_back(l);
    }
    return out;
}

double von_neumann_entropy(const CMatrix &rho) {
    double h = 0;
    for (double l : hermitian_eigenvalues(rho))
        if (l > 1e-14)
            h -= l * std::log2(l);
    return h;
}

double trace_norm(const CMatrix &m) {
    double t = 0;
    for (double l : hermitian_eigenvalues(m))
        t += std::abs(l);
    return t;
}

double entropy_dense(const DenseState &rho, const QubitSet &region) {
    if (region.empty())
        return 0;
    return von_neumann_entropy(partial_trace(rho, region).rho);
}

double cmi_dense(const DenseState &rho, const Partition &p) {
    return entropy_dense(rho, p.AB()) + entropy_dense(rho, p.BC()) - entropy_dense(rho, p.B) -
           entropy_dense(rho, p.ABC());
}

double negativity_dense(const DenseState &rho, const QubitSet &region) {
    return std::log2(trace_norm(partial_transpose(rho.rho, region)));
}

DenseState ghz_mixture(double p) {
    if (!(p >= 0 && p <= 1))
        throw std::invalid_argument("ghz_mixture: p must lie in [0, 1]");
    CMatrix m = CMatrix::Zero(8, 8);
    m(0, 0) = m(7, 7) = 0.5;
    m(0, 7) = m(7, 0) = p - 0.5;
    return DenseState(3, std::move(m));
}

}  // namespace mixtop
