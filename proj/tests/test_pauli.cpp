#include <gtest/gtest.h>

#include <random>

#include "mixtop/dense.hpp"
#include "mixtop/pauli.hpp"
#include "support.hpp"

using namespace mixtop;

namespace {

PauliOp random_pauli(size_t n, std::mt19937_64 &rng) {
    std::string s;
    const char *letters = "IXYZ";
    for (size_t q = 0; q < n; q++)
        s += letters[rng() % 4];
    PauliOp p = PauliOp::parse(s);
    p.set_phase(p.phase() + int(rng() % 4));
    return p;
}

// dense matrix of the circuit, gates applied in list order
oracle::Mat circuit_dense(const CliffordCircuit &c) {
    using C = std::complex<double>;
    size_t n = c.n, dim = size_t{1} << n;
    oracle::Mat u = oracle::Mat::Identity(dim, dim);
    for (auto &g : c.gates) {
        oracle::Mat m = oracle::Mat::Zero(dim, dim);
        for (size_t i = 0; i < dim; i++) {
            bool a = i >> g.a & 1, b = i >> g.b & 1;
            switch (g.kind) {
            case Gate::H: {
                size_t j = i ^ (size_t{1} << g.a);
                m(i, i) += (a ? -1.0 : 1.0) / std::sqrt(2.0);
                m(j, i) += 1 / std::sqrt(2.0);
                break;
            }
            case Gate::S: m(i, i) = a ? C(0, 1) : C(1); break;
            case Gate::X: m(i ^ (size_t{1} << g.a), i) = 1; break;
            case Gate::Z: m(i, i) = a ? -1 : 1; break;
            case Gate::CX: m(a ? i ^ (size_t{1} << g.b) : i, i) = 1; break;
            case Gate::CZ: m(i, i) = (a && b) ? -1 : 1; break;
            }
        }
        u = m * u;
    }
    return u;
}

}  // namespace

TEST(PauliOp, ParseAndPrint) {
    for (std::string s : {"+XIZ", "-iYZI", "+iIII", "-XYZ"})
        EXPECT_EQ(PauliOp::parse(s).str(), s);
    EXPECT_EQ(PauliOp::parse("XX").str(), "+XX");
    EXPECT_TRUE(PauliOp::parse("+Y").is_hermitian());
    EXPECT_FALSE(PauliOp::parse("+iY").is_hermitian());
    EXPECT_THROW(PauliOp::parse("+XQ"), std::invalid_argument);
    EXPECT_EQ(PauliOp::parse("IXYZ").weight(), 3u);
    EXPECT_EQ(PauliOp::parse("IXYZ").support(), (QubitSet{1, 2, 3}));
}

TEST(PauliOp, MultiplicationMatchesDenseMatrices) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 300; t++) {
        size_t n = 1 + rng() % 4;
        PauliOp a = random_pauli(n, rng), b = random_pauli(n, rng);
        EXPECT_TRUE((oracle::pauli_dense(a * b) - oracle::pauli_dense(a) * oracle::pauli_dense(b)).norm() < 1e-12)
            << a.str() << " " << b.str();
        // library matrices agree with the Kronecker oracle
        EXPECT_TRUE((pauli_matrix(a) - oracle::pauli_dense(a)).norm() < 1e-12);
    }
}

TEST(PauliOp, CommutationMatchesDense) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; t++) {
        size_t n = 1 + rng() % 4;
        PauliOp a = random_pauli(n, rng), b = random_pauli(n, rng);
        auto ma = oracle::pauli_dense(a), mb = oracle::pauli_dense(b);
        bool comm = (ma * mb - mb * ma).norm() < 1e-12;
        EXPECT_EQ(commutes(a, b), comm ? 1 : -1);
    }
}

TEST(PauliOp, KnownProducts) {
    EXPECT_EQ((PauliOp::parse("X") * PauliOp::parse("Z")).str(), "-iY");
    EXPECT_EQ((PauliOp::parse("Z") * PauliOp::parse("X")).str(), "+iY");
    EXPECT_EQ((PauliOp::parse("Y") * PauliOp::parse("Y")).str(), "+I");
}

TEST(PauliOp, RestrictEmbedExtend) {
    PauliOp p = PauliOp::parse("-XYZ");
    EXPECT_EQ(restrict(p, QubitSet{0, 2}).str(), "+XIZ");
    EXPECT_EQ(embed(PauliOp::parse("XZ"), 4, {3, 1}).str(), "+IZIX");
    EXPECT_EQ(extend(PauliOp::parse("-Y"), 3).str(), "-YII");
}

TEST(Clifford, ConjugationMatchesDense) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; t++) {
        size_t n = 1 + rng() % 4;
        auto c = oracle::random_circuit(n, 12, rng);
        auto u = circuit_dense(c);
        PauliOp a = random_pauli(n, rng);
        PauliOp fwd = conjugate_by_circuit(a, c, Direction::forward);
        PauliOp inv = conjugate_by_circuit(a, c, Direction::inverse);
        auto ma = oracle::pauli_dense(a);
        EXPECT_TRUE((oracle::pauli_dense(fwd) - u * ma * u.adjoint()).norm() < 1e-10);
        EXPECT_TRUE((oracle::pauli_dense(inv) - u.adjoint() * ma * u).norm() < 1e-10);
        EXPECT_EQ(conjugate_by_circuit(fwd, c, Direction::inverse), a);
    }
}

TEST(Clifford, ConjugationPreservesCommutation) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; t++) {
        size_t n = 2 + rng() % 6;
        auto c = oracle::random_circuit(n, 30, rng);
        PauliOp a = random_pauli(n, rng), b = random_pauli(n, rng);
        EXPECT_EQ(commutes(a, b), commutes(conjugate_by_circuit(a, c, Direction::forward),
                                           conjugate_by_circuit(b, c, Direction::forward)));
    }
}
