#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qnetcap/bounds.hpp"
#include "qnetcap/cli.hpp"
#include "qnetcap/io.hpp"

using namespace qnetcap;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "qnetcap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qnetcap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& content = "") {
        const auto p = (dir_ / name).string();
        if (!content.empty()) std::ofstream(p) << content;
        return p;
    }

    static std::string slurp(const std::string& path) {
        std::ifstream in(path);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

const char* kTwoNodes = R"({"nodes":[{"id":"a","role":"user"},{"id":"b","role":"user"}],
  "edges":[{"a":"a","b":"b","channel":{"kind":"pl","eta":0.5}}],"users":["a","b"]})";

}  // namespace

TEST(Io, ChannelRoundTrip) {
    for (const auto& ch : {ChannelSpec::amplitude_damping(0.3), ChannelSpec::thermal_loss(0.4, 0.01),
                           ChannelSpec::pure_loss(0.7), ChannelSpec::identity()}) {
        EXPECT_EQ(io::channel_from_json(io::to_json(ch)), ch);
    }
    EXPECT_THROW(io::channel_from_json(io::Json{{"kind", "zz"}}), io::InputError);
    EXPECT_THROW(io::channel_from_json(io::Json{{"kind", "ad"}}), io::InputError);
    EXPECT_THROW(io::channel_from_json(io::Json{{"kind", "ad"}, {"p", 2.0}}), io::InputError);
}

TEST(Io, NetworkRoundTrip) {
    wrn::WrnSpec s;
    s.node_recv = ChannelSpec::thermal_loss(0.9, 0.01);
    const auto g = wrn::generate(s);
    const auto j = io::to_json(g);
    EXPECT_EQ(io::to_json(io::network_from_json(j)), j);
}

TEST(Io, EdgeBoundsShape) {
    EdgeBounds b;
    b.lower = 0.1;
    b.upper = 0.2;
    b.lower_orientation = b.upper_orientation = {"x", "y"};
    const auto j = io::to_json(b);
    EXPECT_EQ(j["orientation"], "x->y");
    EXPECT_EQ(j["lower"], 0.1);
    EXPECT_EQ(j["upper"], 0.2);
}

TEST(Io, ThresholdResultShape) {
    wrn::ThresholdResult r;
    r.target = 0.01;
    r.bracket = {91.0, 126.0};
    const auto j = io::to_json(r);
    EXPECT_EQ(j["param"], "edgeLength");
    EXPECT_EQ(j["x"], "delta");
    EXPECT_EQ(j["direction"], "maxTolerable");
    EXPECT_EQ(j["bracket"][1], 126.0);
    EXPECT_EQ(j["target"], 0.01);
}

TEST(Io, SweepPoints) {
    io::SweepSpec s;
    s.start = 1e-3;
    s.stop = 1.0;
    s.steps = 4;
    s.log_scale = true;
    const auto p = s.points();
    ASSERT_EQ(p.size(), 4u);
    EXPECT_NEAR(p[1], 1e-2, 1e-15);
    EXPECT_EQ(p[3], 1.0);
    EXPECT_THROW(io::sweep_from_json(io::parse_json(
                     R"({"variable":"edgeLength","range":{"start":5,"stop":1,"steps":3},"wrn":{}})")),
                 io::InputError);
    EXPECT_THROW(io::sweep_from_json(io::parse_json(
                     R"({"variable":"edgeLength","range":{"start":0,"stop":1,"steps":3,"scale":"log"},"wrn":{}})")),
                 io::InputError);
    EXPECT_THROW(io::sweep_from_json(io::parse_json(
                     R"({"variable":"edgeLength","range":{"start":0,"stop":1,"steps":1},"wrn":{}})")),
                 io::InputError);
}

TEST_F(Cli, AnalyzeTwoNodes) {
    const auto in = file("net.json", kTwoNodes);
    const auto out = file("report.json");
    const auto r = run({"analyze", "--in", in, "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::parse_json(slurp(out));
    for (const char* key : {"single_path", "flooding", "min_neighbourhood"}) {
        EXPECT_EQ(j[key]["lower"], 1.0);
        EXPECT_EQ(j[key]["upper"], 1.0);
    }
    EXPECT_EQ(j["max_flow"]["lower"]["mincut"]["A"], io::Json::array({"a"}));
}

TEST_F(Cli, AnalyzeIsDeterministic) {
    const auto net = file("net.json");
    ASSERT_EQ(run({"generate", "--cell", "manhattan8", "--radius", "3", "--d", "40", "--out", net}).code, 0);
    const auto a = file("a.json"), b = file("b.json");
    ASSERT_EQ(run({"analyze", "--in", net, "--out", a}).code, 0);
    ASSERT_EQ(run({"analyze", "--in", net, "--out", b}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(Cli, AnalyzeAmplitudeDampingLattice) {
    const auto net = file("net.json");
    ASSERT_EQ(run({"generate", "--cell", "triangular6", "--radius", "2", "--d", "20", "--family", "qubit",
                   "--out", net})
                  .code,
              0);
    const auto r = run({"analyze", "--in", net});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::parse_json(r.out);
    EXPECT_NEAR(j["flooding"]["lower"].get<double>(), 6.0 * ad_rci(1.0 - std::pow(10.0, -0.4)), 1e-9);
}

TEST_F(Cli, ErrorsMapToExitCodes) {
    const auto missing_users = file("nu.json", R"({"nodes":[{"id":"a"},{"id":"b"}],
        "edges":[{"a":"a","b":"b","channel":{"kind":"pl","eta":0.5}}]})");
    auto r = run({"analyze", "--in", missing_users});
    EXPECT_EQ(r.code, 3);
    const auto err = io::parse_json(r.err);
    EXPECT_EQ(err["violations"][0]["path"], "users");
    EXPECT_EQ(err["violations"][0]["message"], "required");

    r = run({"analyze", "--in", file("bad.json", "{nope")});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(io::parse_json(r.err)["error"], "input");

    EXPECT_EQ(run({"analyze", "--in", (dir_ / "absent.json").string()}).code, 2);
    EXPECT_EQ(run({"generate", "--radius", "1"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"validate", "--in", missing_users}).code, 3);
    EXPECT_EQ(run({"validate", "--in", file("ok.json", kTwoNodes)}).code, 0);
}

TEST_F(Cli, ThresholdPureLoss) {
    const auto spec = file("wrn.json", R"({"cell":"manhattan8","nbar_B":0})");
    const auto r = run({"threshold", "--spec", spec, "--target", "1e-2", "--param", "edge-length"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::parse_json(r.out);
    EXPECT_NEAR(j["bulk"]["bracket"][0].get<double>(), 183.2, 0.05);
    EXPECT_NEAR(j["bulk"]["bracket"][1].get<double>(), 183.2, 0.05);
    EXPECT_NEAR(j["rhoMin"]["value"].get<double>(), 5.96e-5, 1e-7);
    EXPECT_EQ(j["delta"], 32);
}

TEST_F(Cli, ThresholdThermal) {
    const auto spec = file("wrn.json", R"({"cell":"manhattan8","nbar_B":0.002})");
    const auto r = run({"threshold", "--spec", spec, "--target", "0.01"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = io::parse_json(r.out);
    EXPECT_NEAR(j["bulk"]["bracket"][0].get<double>(), 91.0, 2.0);
    EXPECT_NEAR(j["bulk"]["bracket"][1].get<double>(), 126.0, 2.0);
}

TEST_F(Cli, ThresholdUnattainable) {
    const auto spec = file("wrn.json", R"({"cell":"triangular6","family":"qubit"})");
    const auto r = run({"threshold", "--spec", spec, "--target", "10"});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(io::parse_json(r.err)["error"], "not_attainable");
}

TEST_F(Cli, ThresholdQkdPreset) {
    const auto llo = file("llo.json", R"({"cell":"manhattan8","qkd_setup":"table1-heterodyne-llo"})");
    const auto tlo = file("tlo.json", R"({"cell":"manhattan8","qkd_setup":"table1-heterodyne-tlo"})");
    const auto a = run({"threshold", "--spec", llo});
    const auto b = run({"threshold", "--spec", tlo});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    const double gap = io::parse_json(a.out)["bulk"]["fromLowerBound"].get<double>() -
                       io::parse_json(b.out)["bulk"]["fromLowerBound"].get<double>();
    EXPECT_GE(gap, 29.0);
}

TEST_F(Cli, GenerateRoundTrips) {
    for (const char* cell : {"triangular6", "manhattan8"}) {
        for (const char* radius : {"2", "3", "4"}) {
            const auto net = file(std::string(cell) + radius + ".json");
            ASSERT_EQ(run({"generate", "--cell", cell, "--radius", radius, "--out", net}).code, 0);
            EXPECT_EQ(run({"validate", "--in", net}).code, 0);
            EXPECT_EQ(run({"analyze", "--in", net}).code, 0);
        }
    }
}

TEST_F(Cli, GeneratedManhattanInterior) {
    const auto net = file("m.json");
    ASSERT_EQ(run({"generate", "--cell", "manhattan8", "--radius", "3", "--out", net}).code, 0);
    const auto g = io::network_from_json(io::parse_json(slurp(net)));
    EXPECT_EQ(wrn::adjacent_commonality(g, "n0_0"), (wrn::Commonality{2, 2, 2, 2, 4, 4, 4, 4}));
}

namespace {

std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        out.push_back(cells);
    }
    return out;
}

}  // namespace

TEST_F(Cli, SweepTwoSteps) {
    const auto spec = file("s.json", R"({"variable":"edgeLength","range":{"start":10,"stop":100,"steps":2},
        "wrn":{"cell":"manhattan8"}})");
    const auto r = run({"sweep", "--spec", spec});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind(cli::kSweepSchema, 0), 0u);
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].size(), 7u);
    EXPECT_EQ(t[1].size(), 7u);
    EXPECT_EQ(t[2][0], "100");
}

TEST_F(Cli, SweepTargetCapacityMonotone) {
    const auto spec = file("s.json", R"({"variable":"targetCapacity",
        "range":{"start":1e-3,"stop":1,"steps":13,"scale":"log"},"wrn":{"cell":"manhattan8"}})");
    const auto r = run({"sweep", "--spec", spec});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    double prev_lo = 1e9, prev_hi = 1e9;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double lo = std::stod(t[i][1]);
        const double hi = std::stod(t[i][2]);
        EXPECT_LT(lo, prev_lo);
        EXPECT_LT(hi, prev_hi);
        prev_lo = lo;
        prev_hi = hi;
    }
}

TEST_F(Cli, SweepQkdCrossing) {
    auto crossing = [&](const char* preset) {
        const auto spec = file(std::string(preset) + ".json",
                               std::string(R"({"variable":"edgeLength","range":{"start":1,"stop":120,"steps":120},
            "wrn":{"cell":"manhattan8"},"qkd_setup":")") + preset + "\"}");
        const auto r = run({"sweep", "--spec", spec});
        EXPECT_EQ(r.code, 0) << r.err;
        for (const auto& row : rows(r.out)) {
            if (row[0] == "value") continue;
            const double noise = std::stod(row[4]);
            const double tolerable = row[5] == "nan" ? -1.0 : std::stod(row[5]);
            if (noise > tolerable) return std::stod(row[0]);
        }
        return 1e9;
    };
    const double tlo = crossing("table1-heterodyne-tlo");
    const double llo = crossing("table1-heterodyne-llo");
    EXPECT_LT(tlo, llo);
}

TEST_F(Cli, SweepBadRange) {
    const auto spec = file("s.json", R"({"variable":"edgeLength","range":{"start":10,"stop":1,"steps":2},
        "wrn":{}})");
    EXPECT_EQ(run({"sweep", "--spec", spec}).code, 2);
}

TEST_F(Cli, Selftest) {
    const auto r = run({"selftest", "--seed", "5", "--cases", "50"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(io::parse_json(r.out)["failures"], 0);
}
