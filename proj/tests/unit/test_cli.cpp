#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ndflow/json_io.hpp"
#include "support.hpp"

using namespace ndflow;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

const std::string kCli = NDFLOW_CLI_PATH;
const std::string kSamples = NDFLOW_SAMPLES_DIR;

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("ndflow_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string sample(const std::string& name) { return kSamples + "/" + name; }

    int run(const std::string& args) const {
        std::string cmd = kCli + " " + args + " > " + path("stdout.txt") + " 2> " + path("stderr.txt");
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string slurp(const std::string& file) const {
        std::ifstream in(file);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    io::json stdout_json() const { return io::json::parse(slurp(path("stdout.txt"))); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, AnalyzeReportsAutonomyAndOrder) {
    ASSERT_EQ(run("analyze " + sample("scalar_3d.json")), 0);
    auto j = stdout_json();
    EXPECT_TRUE(j["autonomous"].get<bool>());
    EXPECT_EQ(j["d"], 1);
    EXPECT_TRUE(j["strongly_relevant_without_transform"].get<bool>());

    ASSERT_EQ(run("analyze " + sample("scalar_2d.json")), 0);
    j = stdout_json();
    EXPECT_EQ(j["d"], 1);
    EXPECT_FALSE(j["strongly_relevant_without_transform"].get<bool>());

    write("free.json", R"({"n": 2, "q": 1, "R": []})");
    ASSERT_EQ(run("analyze " + path("free.json")), 0);
    EXPECT_FALSE(stdout_json()["autonomous"].get<bool>());
}

TEST_F(Cli, NormalizeProducesShear) {
    ASSERT_EQ(run("normalize " + sample("scalar_2d.json") + " --out " + path("n.json")), 0);
    auto j = io::read_json_file(path("n.json"));
    EXPECT_EQ(j["T"], io::json::parse("[[1,0],[2,1]]"));
    EXPECT_EQ(j["d"], 1);
    EXPECT_EQ(P(j["transformed_R"][0][0].get<std::string>(), 2), P("s1*s2^3 - s1*s2^2 - s2 + 1", 2));
}

TEST_F(Cli, RegularizeMatchesPrintedMatrices) {
    ASSERT_EQ(run("regularize " + sample("scalar_3d.json") + " --out " + path("r.json")), 0);
    auto loaded = io::realization_from_json(io::read_json_file(path("r.json")));
    const auto& real = loaded.realization;
    EXPECT_EQ(real.gamma(), 4u);
    EXPECT_EQ(real.A()[0], mat({{"0", "1", "0", "0"}, {"-1", "2", "0", "0"}, {"0", "0", "0", "1"}, {"0", "0", "-1", "2"}}, 1));
    EXPECT_EQ(real.A()[1], mat({{"0", "0", "1", "0"}, {"0", "0", "0", "1"}, {"-1", "0", "2", "0"}, {"0", "-1", "0", "2"}}, 1));
    EXPECT_EQ(real.C(), mat({{"1", "0", "0", "0"}}, 1));

    // the two-stage route through a normalization file gives the same artifact
    ASSERT_EQ(run("normalize " + sample("scalar_3d.json") + " --out " + path("n.json")), 0);
    ASSERT_EQ(run("regularize " + path("n.json") + " --out " + path("r2.json")), 0);
    EXPECT_EQ(slurp(path("r.json")), slurp(path("r2.json")));
}

TEST_F(Cli, StagesAreIdempotent) {
    for (const char* s : {"scalar_2d.json", "module_2d.json"}) {
        ASSERT_EQ(run("regularize " + sample(s) + " --out " + path("a.json")), 0);
        ASSERT_EQ(run("regularize " + sample(s) + " --out " + path("b.json")), 0);
        EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
        ASSERT_EQ(run("solve " + path("a.json") + " --box -2:2,-2:2 --seed 3 --out " + path("w1.json")), 0);
        ASSERT_EQ(run("solve " + path("a.json") + " --box -2:2,-2:2 --seed 3 --out " + path("w2.json")), 0);
        EXPECT_EQ(slurp(path("w1.json")), slurp(path("w2.json")));
    }
}

TEST_F(Cli, SolveAndVerifyClosedForm) {
    ASSERT_EQ(run("regularize " + sample("geometric_2d.json") + " --out " + path("r.json")), 0);
    ASSERT_EQ(run("solve " + path("r.json") + " --box -4:4,-4:4 --out " + path("w.json") + " --float-csv " +
                  path("w.csv")),
              0);
    auto w = io::trajectory_from_json(io::read_json_file(path("w.json")));
    Rational base = w.at({0, 0}, 0);
    ASSERT_NE(base, 0);
    EXPECT_EQ(w.at({2, 1}, 0), 12 * base);
    EXPECT_EQ(w.at({-1, 0}, 0), base / 2);
    ASSERT_EQ(run("verify " + sample("geometric_2d.json") + " " + path("w.json")), 0);
    EXPECT_EQ(stdout_json()["max_abs_residual"], "0");
    EXPECT_NE(slurp(path("w.csv")).find("nu1,nu2,w1"), std::string::npos);

    auto j = io::read_json_file(path("w.json"));
    j["values"][40] = "12345";
    io::write_json_file(path("bad.json"), j);
    EXPECT_EQ(run("verify " + sample("geometric_2d.json") + " " + path("bad.json")), 4);
}

TEST_F(Cli, SolveWithGivenInitialCondition) {
    ASSERT_EQ(run("regularize " + sample("scalar_3d.json") + " --out " + path("r.json")), 0);
    auto real = io::realization_from_json(io::read_json_file(path("r.json"))).realization;
    auto x = random_compatible_x(real, required_input_box(real, Box::cube(3, -1, 1)), 5);
    io::write_json_file(path("x.json"), io::trajectory_to_json(x));
    ASSERT_EQ(run("solve " + path("r.json") + " --box -1:1,-1:1,-1:1 --x " + path("x.json") + " --out " + path("w.json")), 0);
    auto w = io::trajectory_from_json(io::read_json_file(path("w.json")));
    EXPECT_EQ(w, solve_strongly_relevant(real, x, Box::cube(3, -1, 1)));

    x.values()[0] += 1;
    io::write_json_file(path("x_bad.json"), io::trajectory_to_json(x));
    EXPECT_EQ(run("solve " + path("r.json") + " --box -1:1,-1:1,-1:1 --x " + path("x_bad.json")), 3);
}

TEST_F(Cli, CheckFreeAndMembership) {
    ASSERT_EQ(run("regularize " + sample("scalar_3d.json") + " --out " + path("r.json")), 0);
    ASSERT_EQ(run("check-free " + path("r.json")), 0);
    auto j = stdout_json();
    EXPECT_EQ(j["gamma"], 4);
    EXPECT_EQ(j["rank"], 2);
    EXPECT_TRUE(j["is_free"].get<bool>());
    EXPECT_TRUE(j["is_nonautonomous"].get<bool>());

    ASSERT_EQ(run("membership " + sample("module_2d.json") + " \"s1*s2 - s1 - s2 - 1;0\""), 0);
    EXPECT_TRUE(stdout_json()["member"].get<bool>());
    ASSERT_EQ(run("membership " + sample("module_2d.json") + " \"1;0\""), 0);
    EXPECT_FALSE(stdout_json()["member"].get<bool>());
}

TEST_F(Cli, ExitCodes) {
    write("bad.json", R"({"n": 2, "q": 1, "R": [["s1 +* 2"]]})");
    EXPECT_EQ(run("analyze " + path("bad.json")), 2);
    EXPECT_NE(slurp(path("stderr.txt")).find("column"), std::string::npos);
    write("trunc.json", R"({"n": 2, "q": )");
    EXPECT_EQ(run("normalize " + path("trunc.json")), 2);
    EXPECT_EQ(run("normalize " + path("missing.json")), 3);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("regularize " + sample("free_2d.json")), 3);
    ASSERT_EQ(run("regularize " + sample("geometric_2d.json") + " --out " + path("r.json")), 0);
    EXPECT_EQ(run("solve " + path("r.json") + " --box 4:-4,0:1"), 2);
    EXPECT_EQ(run("solve " + path("r.json") + " --box 0:1"), 3);
}

TEST_F(Cli, EmittedPolynomialsReparse) {
    ASSERT_EQ(run("regularize " + sample("module_2d.json") + " --out " + path("r.json")), 0);
    auto j = io::read_json_file(path("r.json"));
    const int d = j["d"];
    std::size_t checked = 0;
    for (const auto& r : j["X"])
        for (const auto& e : r) {
            auto text = e.get<std::string>();
            EXPECT_EQ(to_string(P(text, d)), text);
            ++checked;
        }
    for (const auto& c : j["certificates"]) {
        auto text = c["poly"].get<std::string>();
        EXPECT_EQ(to_string(P(text, 2)), text);
        ++checked;
    }
    EXPECT_GT(checked, 0u);
}
