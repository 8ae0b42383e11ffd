#include <gtest/gtest.h>

#include "mixtop/config.hpp"

using namespace mixtop;

namespace {

json parse(const char *s) { return json::parse(s); }

std::string field_of(const json &cfg) {
    try {
        run_experiment(cfg, {});
    } catch (const ConfigError &e) {
        return e.field;
    }
    return "<none>";
}

}  // namespace

TEST(Sweep, ExpandsCrossProductRowMajor) {
    auto pts = expand_sweep(parse(R"({"quantity":"cmi","sweep":{"px":[0.1,0.2],"pz":{"from":0,"to":0.2,"step":0.1}}})"));
    ASSERT_EQ(pts.size(), 6u);
    EXPECT_EQ(pts[0]["noise"]["px"], 0.1);
    EXPECT_EQ(pts[2]["noise"]["pz"], 0.2);
    EXPECT_EQ(pts[3]["noise"]["px"], 0.2);
    EXPECT_FALSE(pts[0].contains("sweep"));
    auto ints = expand_sweep(parse(R"({"sweep":{"L":{"from":3,"to":8}}})"));
    EXPECT_EQ(ints.size(), 6u);
    EXPECT_EQ(ints[5]["lattice"]["Lx"], 8);
}

TEST(Sweep, Errors) {
    EXPECT_THROW(expand_sweep(parse(R"({"sweep":{"px":[]}})")), ConfigError);
    EXPECT_THROW(expand_sweep(parse(R"({"sweep":{"px":{"from":0.5,"to":0.1}}})")), ConfigError);
    EXPECT_THROW(expand_sweep(parse(R"({"sweep":{"px":[0.1],"pz":[0.1],"L":[3]}})")), ConfigError);
    EXPECT_THROW(expand_sweep(parse(R"({"sweep":{"colour":[1]}})")), ConfigError);
    EXPECT_THROW(expand_sweep(parse(R"({"sweep":{"px":{"from":0,"to":1,"step":0}}})")), ConfigError);
}

TEST(Run, ErrorsNameTheField) {
    EXPECT_EQ(field_of(parse(R"({"quantity":"entropy","lattice":{"kind":"hexagonal"}})")), "lattice.kind");
    EXPECT_EQ(field_of(parse(R"({"quantity":"entropy","noise":{"px":1.5}})")), "noise.px");
    EXPECT_EQ(field_of(parse(R"({"quantity":"volume"})")), "quantity");
    EXPECT_EQ(field_of(parse(R"({"quantity":"entropy","colour":1})")), "colour");
    EXPECT_EQ(field_of(parse(R"({"quantity":"cmi","partition":{"scheme":"levin-wen","parameters":{"outer":9}}})")),
              "partition");
    EXPECT_EQ(field_of(parse(R"({"quantity":"convex-roof","roof":{"mode":"fancy"}})")), "roof.mode");
}

TEST(Run, BudgetErrorsAreNotConfigErrors) {
    auto cfg = parse(R"({"quantity":"entropy","lattice":{"Lx":8},"noise":{"px":0.1}})");
    EXPECT_THROW(run_experiment(cfg, {}), std::length_error);
    RunOptions opt;
    opt.mc_samples = 500;
    EXPECT_NO_THROW(run_experiment(cfg, opt));
}

TEST(Run, DeterministicOutput) {
    auto cfg = parse(R"({"quantity":"cmi","lattice":{"Lx":3},
        "partition":{"scheme":"levin-wen","parameters":{"strict":0,"inner":0.3,"outer":1.5,"gap":0.25}},
        "sweep":{"px":[0.1,0.25],"pz":[0.1,0.4]}})");
    auto a = run_experiment(cfg, {}), b = run_experiment(cfg, {});
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(to_csv(a), to_csv(b));
    ASSERT_EQ(a["rows"].size(), 4u);
    for (auto &r : a["rows"])
        EXPECT_NEAR(r["decoupling_residual"].get<double>(), 0.0, 1e-9);
    EXPECT_EQ(a["version"], MIXTOP_VERSION);
    EXPECT_EQ(a["config"], cfg);
}

TEST(Run, NegativitySweepFits) {
    auto cfg = parse(R"({"quantity":"negativity","model":"zx-dephased-max",
        "lattice":{"Ly":10,"boundary":"cylinder"},"cuts":[1,2],"sweep":{"Lx":{"from":2,"to":8}}})");
    auto doc = run_experiment(cfg, {});
    ASSERT_EQ(doc["rows"].size(), 14u);
    for (auto &r : doc["rows"])
        EXPECT_EQ(r["EN"], r["expected_EN"]);
    ASSERT_EQ(doc["fits"].size(), 2u);
    for (auto &f : doc["fits"])
        if (f["group"] == "zx-dephased-max/1")
            EXPECT_NEAR(f["slope"].get<double>(), 1.0, 1e-12);
    auto csv = to_csv(doc);
    EXPECT_NE(csv.find("fit_slope"), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 15);
}

TEST(Run, BraidingAndMemory) {
    auto doc = run_experiment(parse(R"({"quantity":"braiding-table","lattice":{"Lx":4}})"), {});
    ASSERT_EQ(doc["rows"].size(), 3u);
    EXPECT_EQ(doc["rows"][0]["S_m"], -1);
    EXPECT_EQ(doc["rows"][2]["theta"], "-1");
    auto mem = run_experiment(
        parse(R"({"quantity":"memory-class","lattice":{"Lx":4},"sweep":{"pz":{"from":0,"to":0.5,"step":0.1}}})"), {});
    ASSERT_EQ(mem["rows"].size(), 6u);
    EXPECT_EQ(mem["rows"][0]["memory"], "quantum(2)");
    EXPECT_EQ(mem["rows"][5]["memory"], "classical(2)");
}

TEST(Csv, QuotesAndBlankCells) {
    json doc = {{"rows", json::array({json{{"a", "x,y"}, {"b", 1}}, json{{"c", true}}})}};
    EXPECT_EQ(to_csv(doc), "a,b,c\n\"x,y\",1,\n,,true\n");
}
