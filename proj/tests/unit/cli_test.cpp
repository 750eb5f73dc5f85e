#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "matrix_file.hpp"

namespace qfid::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> records(const std::string& text) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rows.push_back(nlohmann::json::parse(line));
  return rows;
}

std::string fixture(const char* name) { return (fixture_dir() / name).string(); }

TEST(Cli, ComputeAltOnOrthogonalFixtures) {
  const Outcome o = invoke({"compute", "--measure", "alt", "--a", fixture("orthogonal_rho0.json"), "--b",
                            fixture("orthogonal_rho1.json"), "--format", "records"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const auto rows = records(o.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0]["value"].get<double>(), 0.0);
  EXPECT_EQ(rows[0]["measure"], "alt");
  EXPECT_TRUE(o.err.empty());
}

TEST(Cli, ComputeUhlmannSelf) {
  const Outcome o = invoke({"compute", "--measure", "uhlmann", "--a", fixture("orthogonal_rho0.json"), "--b",
                            fixture("orthogonal_rho0.json"), "--format", "records"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  EXPECT_NEAR(records(o.out)[0]["value"].get<double>(), 1.0, 1e-8);
}

TEST(Cli, ComputeThermal) {
  const Outcome o = invoke({"compute", "--measure", "thermal", "--a", fixture("thermal_h0.json"), "--b",
                            fixture("thermal_h1.json"), "--beta", "1", "--format", "records"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  EXPECT_NEAR(records(o.out)[0]["value"].get<double>(), 0.976333, 1e-6);
}

TEST(Cli, ComputeErrorsExitTwo) {
  EXPECT_EQ(invoke({"compute", "--measure", "thermal", "--a", fixture("thermal_h0.json"), "--b",
                    fixture("thermal_h1.json")})
                .code,
            kUsageError);
  const Outcome missing = invoke({"compute", "--measure", "alt", "--a", "/nonexistent.json", "--b",
                                  fixture("orthogonal_rho1.json")});
  EXPECT_EQ(missing.code, kUsageError);
  EXPECT_NE(missing.err.find("/nonexistent.json"), std::string::npos);
  const Outcome mismatch = invoke({"compute", "--measure", "alt", "--a", fixture("orthogonal_rho0.json"), "--b",
                                   fixture("concavity_rho1.json")});
  EXPECT_EQ(mismatch.code, kUsageError);
  EXPECT_EQ(invoke({"compute", "--measure", "bures", "--a", fixture("orthogonal_rho0.json"), "--b",
                    fixture("orthogonal_rho1.json")})
                .code,
            kUsageError);
  const Outcome wrong_kind = invoke({"compute", "--measure", "alt", "--a", fixture("thermal_h0.json"), "--b",
                                     fixture("thermal_h1.json")});
  EXPECT_EQ(wrong_kind.code, kUsageError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsageError);
  EXPECT_EQ(invoke({"demo", "tables"}).code, kUsageError);
  EXPECT_EQ(invoke({"check", "nothing"}).code, kUsageError);
  EXPECT_EQ(invoke({"check", "axioms", "--measure", "bures"}).code, kUsageError);
  EXPECT_EQ(invoke({"sweep", "--samples", "0"}).code, kUsageError);
  EXPECT_EQ(invoke({"sweep", "--family", "other"}).code, kUsageError);
  EXPECT_EQ(invoke({"bench", "--reps", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"bench", "--dims", "1"}).code, kUsageError);
  EXPECT_EQ(invoke({"check", "axioms", "--format", "xml"}).code, kUsageError);
}

TEST(Cli, HelpExitsZero) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.code, kSuccess);
  EXPECT_NE(o.out.find("compute"), std::string::npos);
}

TEST(Cli, DemoOrthogonal) {
  const Outcome o = invoke({"demo", "orthogonal", "--format", "records"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const auto rows = records(o.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1]["measure"], "super");
  EXPECT_NEAR(rows[1]["value"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(rows[2]["value"].get<double>(), 2.0 / 3.0, 1e-12);
  const Outcome human = invoke({"demo", "orthogonal"});
  EXPECT_NE(human.out.find("0.666667"), std::string::npos);
}

TEST(Cli, DemoConcavity) {
  const Outcome o = invoke({"demo", "concavity", "--p", "0.5", "--format", "records"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const auto row = records(o.out).at(0);
  EXPECT_NEAR(row["lhs"].get<double>(), 0.316228, 1e-6);
  EXPECT_NEAR(row["rhs"].get<double>(), 0.353553, 1e-6);
  const Outcome ends = invoke({"demo", "concavity", "--p", "0,1", "--format", "records"});
  ASSERT_EQ(ends.code, kSuccess);
  for (const auto& r : records(ends.out)) EXPECT_NEAR(r["gap"].get<double>(), 0.0, 1e-12);
  const Outcome grid = invoke({"demo", "concavity", "--format", "records"});
  EXPECT_EQ(grid.code, kSuccess);
  EXPECT_EQ(records(grid.out).size(), 101u);
}

TEST(Cli, DemoReadsFixturesFromEnvironmentDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "quditfid_bad_fixtures";
  std::filesystem::create_directories(dir);
  for (const char* name : {"orthogonal_rho0.json", "orthogonal_rho1.json"}) {
    std::filesystem::copy_file(fixture_dir() / name, dir / name, std::filesystem::copy_options::overwrite_existing);
  }
  // A different second state makes the table disagree with the expected values.
  std::ofstream(dir / "orthogonal_rho1.json", std::ios::binary)
      << write_matrix_file({ComplexMatrix::diagonal({0.25, 0.25, 0.25, 0.25}), MatrixKind::density});
  const std::string saved = fixture_dir().string();
  ::setenv("QUDITFID_FIXTURES", dir.c_str(), 1);
  const Outcome o = invoke({"demo", "orthogonal"});
  ::setenv("QUDITFID_FIXTURES", saved.c_str(), 1);
  EXPECT_EQ(o.code, kPropertyFailure);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(invoke({"check", "axioms", "--measure", "alt", "--d", "2", "--samples", "1", "--seed", "1", "--tol", "0"})
                .code,
            kPropertyFailure);
  const Outcome wick = invoke({"check", "wick", "--d", "4", "--samples", "20", "--seed", "3", "--format", "records"});
  ASSERT_EQ(wick.code, kSuccess) << wick.out;
  const auto rows = records(wick.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0]["property"], "wick_identity");
  EXPECT_LE(rows[0]["max_violation"].get<double>(), 1e-10);
}

TEST(Cli, CheckAllAlt) {
  const Outcome o = invoke({"check", "all", "--measure", "alt", "--d", "4", "--samples", "500", "--seed", "7",
                            "--format", "records"});
  EXPECT_EQ(o.code, kSuccess) << o.out;
  for (const auto& r : records(o.out)) {
    EXPECT_TRUE(r["passed"].get<bool>()) << r.dump();
    EXPECT_EQ(r["seed"].get<std::uint64_t>(), 7u);
    EXPECT_EQ(r["rng"], "mt19937_64+box-muller");
  }
}

TEST(Cli, SweepRecordsAndDeterminism) {
  const std::vector<std::string> args{"sweep", "--d", "2", "--samples", "2000", "--seed", "42", "--format", "records"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  ASSERT_EQ(a.code, kSuccess);
  EXPECT_EQ(a.out, b.out);
  const auto row = records(a.out).at(0);
  EXPECT_TRUE(row.contains("satisfied_fraction"));
  EXPECT_TRUE(row.contains("witness"));

  const Outcome fixed = invoke({"sweep", "--family", "paper", "--samples", "200", "--format", "records"});
  ASSERT_EQ(fixed.code, kSuccess);
  EXPECT_EQ(records(fixed.out).at(0)["satisfied_fraction"].get<double>(), 0.0);
}

TEST(Cli, BenchSmoke) {
  const Outcome o = invoke({"bench", "--dims", "2,8", "--reps", "3", "--format", "records"});
  ASSERT_EQ(o.code, kSuccess) << o.err;
  const auto rows = records(o.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0]["measure"], "alt");
  EXPECT_EQ(rows[1]["measure"], "uhlmann");
  EXPECT_EQ(rows[2]["type"], "speedup");
  EXPECT_GT(rows[0]["median_seconds"].get<double>(), 0.0);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "quditfid_cli_out.jsonl";
  std::filesystem::remove(path);
  const Outcome o = invoke({"demo", "orthogonal", "--format", "records", "--out", path.string()});
  ASSERT_EQ(o.code, kSuccess);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(records(text.str()).size(), 4u);
}

}  // namespace
}  // namespace qfid::cli
