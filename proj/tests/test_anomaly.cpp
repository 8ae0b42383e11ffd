#include <gtest/gtest.h>

#include "mixtop/anomaly.hpp"
#include "support.hpp"

using namespace mixtop;

namespace {

Lattice torus(int L) { return Lattice::build(LatticeKind::square_edges, L, L, Boundary::torus); }

}  // namespace

TEST(Strings, OpenStringsCreateExcitationsAtEndpoints) {
    auto lat = torus(6);
    auto s = model_state("toric-code", lat);
    auto e = string_operator(Anyon::e, straight_path(lat, 1, 1, Step::px, 3, false), lat);
    auto flipped = conjugate_state(s, e.op);
    // exactly the two checks at the endpoints flip
    size_t violated = 0;
    for (auto &g : s.generators())
        violated += symmetry_status(flipped, g) == SymmetryStatus::make_strong(2);
    EXPECT_EQ(violated, 2u);
    EXPECT_THROW(string_operator(Anyon::m, straight_path(lat, 1, 1, Step::px, 3, false), lat), std::invalid_argument);
}

TEST(Strings, ClosedContractibleLoopsAreStabilizers) {
    auto lat = torus(6);
    auto s = model_state("toric-code", lat);
    for (Anyon a : all_anyons) {
        auto path = a == Anyon::m ? dual_box_loop(lat, 1, 1, 2, 2) : box_loop(lat, 1, 1, 3, 3);
        auto w = string_operator(a, path, lat);
        EXPECT_TRUE(symmetry_status(s, w.op).is_strong()) << to_string(a);
    }
}

TEST(Braiding, TableAndStatistics) {
    for (int L : {4, 6}) {
        auto t = braiding_table(torus(L));
        int expected[3][3] = {{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++)
                EXPECT_EQ(t.S[i][j], expected[i][j]);
        EXPECT_EQ(t.theta[0], 0);
        EXPECT_EQ(t.theta[1], 0);
        EXPECT_EQ(t.theta[2], 2);
    }
    EXPECT_EQ(phase_str(2), "-1");
    EXPECT_EQ(phase_str(1), "+i");
}

TEST(Braiding, StatisticsIndependentOfLegLength) {
    auto lat = torus(8);
    for (Anyon a : all_anyons)
        for (int k : {1, 2})
            EXPECT_EQ(self_statistics(a, lat, k), self_statistics(a, lat, 0)) << to_string(a) << k;
}

TEST(Braiding, RejectsSupportsMeetingOutsideRegion) {
    EXPECT_THROW(braiding_phase(PauliOp::parse("XX"), PauliOp::parse("ZZ"), QubitSet{0}), std::invalid_argument);
    EXPECT_EQ(braiding_phase(PauliOp::parse("XI"), PauliOp::parse("ZI"), QubitSet{0}), -1);
}

TEST(Dilation, OutputEqualsMaximalDephasing) {
    auto lat = torus(4);
    auto s = model_state("toric-code", lat);
    for (std::string type : {"X", "Z", "ZX"}) {
        auto d = dephasing_dilation(lat, type);
        auto out = dilation_output(s, d);
        auto ref = apply_max_dephasing(s, dephasing_ops(lat, type));
        EXPECT_EQ(out.m(), ref.m()) << type;
        for (auto &g : ref.generators())
            EXPECT_TRUE(symmetry_status(out, g).is_strong()) << type;
    }
    EXPECT_THROW(dephasing_dilation(lat, "X", 0.3), std::invalid_argument);
}

TEST(Dilation, DenseChannelAgreement) {
    // 2x2 torus: the traced circuit against the dense channel
    auto lat = Lattice::build(LatticeKind::square_edges, 2, 2, Boundary::torus);
    auto s = model_state("toric-code", lat);
    auto d = dephasing_dilation(lat, "Z");
    auto rho = oracle::stabilizer_dense(dilation_output(s, d));
    oracle::Mat ref = oracle::stabilizer_dense(s);
    for (auto &op : d.noise) {
        auto m = oracle::pauli_dense(op);
        ref = 0.5 * ref + 0.5 * m * ref * m.adjoint();
    }
    EXPECT_TRUE((rho - ref).norm() < 1e-10);
}

TEST(Dilation, PullbackPreservesStatusAndPhases) {
    auto lat = torus(4);
    auto s = model_state("toric-code", lat);
    for (std::string type : {"X", "Z", "ZX"}) {
        auto d = dephasing_dilation(lat, type);
        auto out = dilation_output(s, d);
        auto in = dilation_input(s, d);
        for (Anyon a : all_anyons) {
            auto w = horizontal_string_loop(a, lat);
            // strong on the output iff the pullback is strong on the input
            EXPECT_EQ(symmetry_status(out, w.op).is_strong(), symmetry_status(in, pullback(w.op, d)).is_strong());
        }
    }
}

TEST(Memory, Classes) {
    auto lat = torus(4);
    auto tc = model_state("toric-code", lat);
    EXPECT_EQ(classify_memory(tc, lat).memory.str(), "quantum(2)");
    EXPECT_EQ(classify_memory(apply_max_dephasing(tc, dephasing_ops(lat, "Z")), lat).memory.str(), "classical(2)");
    EXPECT_EQ(classify_memory(apply_max_dephasing(tc, dephasing_ops(lat, "X")), lat).memory.str(), "classical(2)");
    EXPECT_EQ(classify_memory(apply_max_dephasing(tc, dephasing_ops(lat, "XZ")), lat).memory.str(), "trivial");
    auto zx = classify_memory(model_state("zx-dephased-max", lat), lat);
    EXPECT_EQ(zx.contractible[2], SymmetryStatus::make_strong(2));
    EXPECT_EQ(zx.contractible[0].kind, SymmetryStatus::weak);
    EXPECT_EQ(zx.contractible[1].kind, SymmetryStatus::weak);
    for (auto &l : zx.loops) {
        EXPECT_EQ(l.status.kind, SymmetryStatus::weak);
        EXPECT_EQ(l.effective_strong, l.anyon == Anyon::f);
    }
}

TEST(Witness, LoopSoupAndZXMax) {
    for (int L : {6, 8}) {
        auto lat = torus(L);
        Parameters lw;
        if (L == 6)
            lw = {{"inner", 0.5}, {"outer", 2}, {"gap", 0.5}};
        auto part = partition(lat, "levin-wen", lw);
        for (auto [model, loop] : {std::pair{"loop-soup", Anyon::m}, {"zx-dephased-max", Anyon::f}}) {
            auto s = model_state(model, lat);
            auto w = witness_pair(loop, lat, lw);
            auto r = tee_witness_check(s, w.loop, w.string, part, lat);
            EXPECT_TRUE(r.all()) << model << " L=" << L;
            EXPECT_EQ(r.braiding, -1);
            EXPECT_GE(cmi(s, part), 1.0);
        }
    }
}

TEST(Witness, ProductStateFails) {
    auto lat = torus(8);
    auto part = partition(lat, "levin-wen");
    auto w = witness_pair(Anyon::m, lat);
    auto r = tee_witness_check(model_state("product-x", lat), w.loop, w.string, part, lat);
    EXPECT_FALSE(r.all());
}
