#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pwfd_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path spec(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int run(const std::string& cmd, const fs::path& spec_path, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"pwfd", cmd, "--spec", spec_path.string(), "--out",
                                  dir_.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    out_.str("");
    err_.str("");
    return pwfd::cli::run_cli(args, out_, err_);
  }

  nlohmann::json read_json(const std::string& name) {
    std::ifstream in(dir_ / name);
    return nlohmann::json::parse(in);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kSmallSolve = R"({
  "scheme": "pw17",
  "grid": {"nx": 31, "nz": 31, "h": 20},
  "frequency": 10,
  "medium": {"velocity": 2000},
  "pml": {"thickness": 100, "a0": 1.79, "peak_frequency": 10},
  "source": {"x": 300, "z": 300}
})";

TEST_F(Cli, MalformedJsonIsSpecError) {
  EXPECT_EQ(run("fit", spec("bad.json", "{\"scheme\": ")), pwfd::cli::kSpecError);
  EXPECT_NE(err_.str().find("malformed"), std::string::npos);
}

TEST_F(Cli, UnknownKeyIsSpecError) {
  EXPECT_EQ(run("fit", spec("u.json", R"({"scheme":"pw17","IG":[4,10],"gama":1})")),
            pwfd::cli::kSpecError);
  EXPECT_NE(err_.str().find("gama"), std::string::npos);
  EXPECT_EQ(run("solve", spec("n.json", R"({"scheme":"pw17","grid":{"nx":9,"nz":9,"h":1,"dx":2}})")),
            pwfd::cli::kSpecError);
}

TEST_F(Cli, BadValuesAreSpecErrors) {
  EXPECT_EQ(run("fit", spec("s.json", R"({"scheme":"pw99","IG":[4,10]})")), pwfd::cli::kSpecError);
  EXPECT_EQ(run("fit", spec("g.json", R"({"scheme":"pw17","IG":[4,10],"gamma":"one"})")),
            pwfd::cli::kSpecError);
  EXPECT_EQ(run("fit", spec("i.json", R"({"scheme":"pw17","IG":[10,4]})")), pwfd::cli::kSpecError);
}

TEST_F(Cli, MissingFilesAreIoErrors) {
  EXPECT_EQ(run("fit", dir_ / "absent.json"), pwfd::cli::kIoError);
  const auto s = spec("v.json", R"({
    "scheme": "pw17", "grid": {"nx": 21, "nz": 21, "h": 20}, "frequency": 10,
    "medium": {"velocity_csv": "no_such_velocity.csv"}, "source": {"x": 200, "z": 200}})");
  EXPECT_EQ(run("solve", s), pwfd::cli::kIoError);
  EXPECT_NE(err_.str().find("no_such_velocity.csv"), std::string::npos);
}

TEST_F(Cli, UnreachableToleranceIsNumericalError) {
  EXPECT_EQ(run("solve", spec("s.json", kSmallSolve), {"--solver-tol", "1e-30"}),
            pwfd::cli::kNumericalError);
}

TEST_F(Cli, SolveLogsToleranceAndParameters) {
  ASSERT_EQ(run("solve", spec("s.json", kSmallSolve), {"--solver-tol", "1e-9"}), pwfd::cli::kOk)
      << err_.str();
  EXPECT_NE(out_.str().find("solver_tol=1e-09"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("b1="), std::string::npos);
  const auto rep = read_json("solve_report.json");
  EXPECT_DOUBLE_EQ(rep["solver_tol"].get<double>(), 1e-9);
  EXPECT_LT(rep["residual"].get<double>(), 1e-9);
  EXPECT_TRUE(fs::exists(dir_ / "field_re.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "field_im.csv"));
}

TEST_F(Cli, VelocityCsvMatchesConstantVelocity) {
  {
    std::ofstream v(dir_ / "v.csv");
    for (int n = 0; n < 31; ++n) {
      for (int m = 0; m < 31; ++m) v << (m ? "," : "") << 2000;
      v << '\n';
    }
  }
  std::string text = kSmallSolve;
  text.replace(text.find(R"("velocity": 2000)"), 16,
               R"("velocity_csv": ")" + (dir_ / "v.csv").string() + "\"");
  ASSERT_EQ(run("solve", spec("a.json", text)), pwfd::cli::kOk) << err_.str();
  const double ra = read_json("solve_report.json")["params"]["b1"].get<double>();
  ASSERT_EQ(run("solve", spec("b.json", kSmallSolve)), pwfd::cli::kOk);
  EXPECT_DOUBLE_EQ(read_json("solve_report.json")["params"]["b1"].get<double>(), ra);
}

TEST_F(Cli, FitBeatsBaseline) {
  ASSERT_EQ(run("fit", spec("f.json", R"({"scheme":"pw17","gamma":1,"IG":[4,10]})")),
            pwfd::cli::kOk)
      << err_.str();
  const auto rep = read_json("fit_report.json");
  EXPECT_LT(rep["maxJ"].get<double>(), rep["baseline_maxJ"].get<double>());
  EXPECT_EQ(rep["params"]["scheme"], "pw17");
  EXPECT_NE(out_.str().find("d3="), std::string::npos);
}

TEST_F(Cli, FitFromPhysicalRange) {
  ASSERT_EQ(run("fit", spec("f.json", R"({"scheme":"pw25",
      "IG":{"vmin":1500,"vmax":3000,"fmin":5,"fmax":20,"h":20}})")),
            pwfd::cli::kOk)
      << err_.str();
  const auto rep = read_json("fit_report.json");
  EXPECT_DOUBLE_EQ(rep["IG"]["min"].get<double>(), 1500.0 / (20 * 20));
  EXPECT_DOUBLE_EQ(rep["IG"]["max"].get<double>(), 3000.0 / (5 * 20));
}

TEST_F(Cli, DispersionCurvesTendToOne) {
  ASSERT_EQ(run("dispersion", spec("d.json", R"({
      "schemes": [{"scheme": "pw17", "label": "opt", "fit": {"IG": [4, 10], "l": 16, "r": 16}}],
      "samples": 20})")),
            pwfd::cli::kOk)
      << err_.str();
  for (const char* g : {"0.25", "0.5", "0.75", "1"}) {
    const fs::path p = dir_ / (std::string("dispersion_opt_gamma") + g + ".csv");
    ASSERT_TRUE(fs::exists(p)) << p;
    std::ifstream in(p);
    std::string line, last;
    std::getline(in, line);
    EXPECT_EQ(line, "theta,G,vph_ratio,vgr_ratio");
    int rows = 0;
    while (std::getline(in, line)) {
      if (!line.empty()) last = line, ++rows;
    }
    EXPECT_EQ(rows, 3 * 20);
    std::istringstream s(last);
    double theta, G, vph, vgr;
    char c;
    s >> theta >> c >> G >> c >> vph >> c >> vgr;
    EXPECT_NEAR(G, 400.0, 1e-9);
    EXPECT_NEAR(vph, 1.0, 1e-4);
    EXPECT_NEAR(vgr, 1.0, 1e-4);
  }
}

TEST_F(Cli, ConvergenceWritesRatios) {
  ASSERT_EQ(run("convergence", spec("c.json", R"({"scheme":"pw17","sizes":[41,81],"k0":20})")),
            pwfd::cli::kOk)
      << err_.str();
  const auto rep = read_json("convergence.json");
  ASSERT_EQ(rep["rows"].size(), 2u);
  EXPECT_GT(rep["rows"][1]["ratio"].get<double>(), 1.0);
  EXPECT_TRUE(fs::exists(dir_ / "convergence.csv"));
  EXPECT_NE(out_.str().find("ratio"), std::string::npos);
}

TEST_F(Cli, ManufacturedSolveWithExplicitParameters) {
  ASSERT_EQ(run("solve", spec("m.json", R"({"scheme":"pw25","params":{"a1":1},
      "manufactured":{"k0":20,"N":41},"output":{"stem":"mf","format":"binary"}})")),
            pwfd::cli::kOk)
      << err_.str();
  const auto rep = read_json("solve_report.json");
  EXPECT_DOUBLE_EQ(rep["params"]["a1"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(rep["params"]["c4"].get<double>(), 0.0);
  EXPECT_GT(rep["error"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(dir_ / "mf.bin"));
}

TEST_F(Cli, SeismogramSmallRun) {
  ASSERT_EQ(run("seismogram", spec("s.json", R"({
      "grid": {"nx": 41, "nz": 41, "h": 20, "x0": -100, "z0": -100},
      "pml": {"thickness": 100},
      "source": {"x": 300, "z": 300},
      "receivers": [[500, 300], {"x": 300, "z": 500}],
      "ricker": {"peak_frequency": 8, "dt": 0.01, "samples": 32}})"),
                {"--threads", "2"}),
            pwfd::cli::kOk)
      << err_.str();
  const auto rep = read_json("seismogram.json");
  ASSERT_EQ(rep["receivers"].size(), 2u);
  EXPECT_FALSE(rep["solves"].empty());
  for (const auto& s : rep["solves"]) EXPECT_LT(s["residual"].get<double>(), 1e-10);
  EXPECT_TRUE(fs::exists(dir_ / "trace_r2.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "exact_r2.csv"));
}

TEST_F(Cli, NoSubcommandIsUsageError) {
  std::ostringstream out, err;
  EXPECT_EQ(pwfd::cli::run_cli({"pwfd"}, out, err), pwfd::cli::kSpecError);
  EXPECT_EQ(pwfd::cli::run_cli({"pwfd", "--help"}, out, err), pwfd::cli::kOk);
}

}  // namespace
