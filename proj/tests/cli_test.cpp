#include "qcatalog/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qcatalog/errors.hpp"

namespace qcat::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qcat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, sep)) fields.push_back(f);
  return fields;
}

// Data rows of a CSV report, keyed by header names. Comment lines are skipped.
std::vector<std::map<std::string, std::string>> rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = split(line);
      continue;
    }
    const auto f = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < f.size(); ++i) row[header[i]] = f[i];
    out.push_back(row);
  }
  return out;
}

double d(const std::string& s) { return std::stod(s); }

TEST(DiceCommandTest, ThirteenRowsMatchingQuotedValues) {
  RunConfig cfg;
  cfg.seed = 4;
  const std::string csv = cmd_dice(cfg);
  EXPECT_EQ(csv.rfind("# qcat ", 0), 0u);
  EXPECT_NE(csv.find("seed=4 prng=mt19937_64-u53/1"), std::string::npos);
  const auto r = rows(csv);
  ASSERT_EQ(r.size(), 13u);
  EXPECT_NEAR(d(r[2].at("exact")), 0.296, 5e-4);
  EXPECT_NEAR(d(r[1].at("exact")), 0.269, 5e-4);
  EXPECT_NEAR(d(r[3].at("exact")), 0.197, 5e-4);
  EXPECT_NEAR(d(r[0].at("exact")), 0.112, 5e-4);
  EXPECT_NEAR(d(r[12].at("exact")), 5e-10, 5e-11);
  double sum = 0.0;
  std::uint64_t count = 0;
  for (const auto& row : r) {
    sum += d(row.at("exact"));
    count += std::stoull(row.at("count"));
    const double sigma = d(row.at("sigma"));
    EXPECT_LE(std::abs(d(row.at("sampled")) - d(row.at("exact"))), std::max(3 * sigma, 1e-12))
        << "n = " << row.at("n");
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
  EXPECT_EQ(count, cfg.trials);
  EXPECT_NE(csv.find("# exact_sum=1.000000"), std::string::npos);
}

TEST(DiceCommandTest, JsonCarriesProvenance) {
  RunConfig cfg;
  cfg.trials = 100;
  cfg.format = Format::kJson;
  const auto j = nlohmann::json::parse(cmd_dice(cfg));
  EXPECT_EQ(j.at("command"), "dice");
  EXPECT_EQ(j.at("prng"), "mt19937_64-u53/1");
  EXPECT_EQ(j.at("seed"), 1);
  EXPECT_TRUE(j.contains("version"));
  EXPECT_EQ(j.at("rows").size(), 13u);
}

TEST(EprCommandTest, DefaultGrid) {
  RunConfig cfg;
  cfg.trials = 20000;
  cfg.seed = 8;
  const auto r = rows(cmd_epr(cfg, default_epr_options()));
  ASSERT_EQ(r.size(), 10u);
  for (const auto& row : r) {
    const double angle = d(row.at("bob_angle")) - d(row.at("alice_angle"));
    if (std::abs(angle) < 1e-12) {
      EXPECT_EQ(row.at("n_pp"), "0");
      EXPECT_EQ(row.at("n_mm"), "0");
    }
    const double corr = d(row.at("correlation"));
    EXPECT_NEAR(d(row.at("correlation_exact")), -std::cos(angle), 1e-10);  // 12 printed digits
    EXPECT_LE(std::abs(corr + std::cos(angle)), std::max(3 * d(row.at("correlation_sigma")), 1e-12));
    const double sigma = d(row.at("nosignal_sigma"));
    EXPECT_LE(std::abs(d(row.at("nosignal_delta"))), 3 * sigma + (sigma == 0 ? 1e-15 : 0));
    EXPECT_DOUBLE_EQ(d(row.at("bob_exact_p_plus")), 0.5);
  }
}

TEST(EprCommandTest, InvalidAnglesRejected) {
  RunConfig cfg;
  cfg.trials = 10;
  EXPECT_THROW(cmd_epr(cfg, {{}, {0.0}}), DomainError);
  EXPECT_EQ(invoke({"epr", "--alice", "0,nan"}).code, 1);
}

TEST(BellCommandTest, OptimalAnglesViolate) {
  RunConfig cfg;
  cfg.trials = 100000;
  const auto r = rows(cmd_bell(cfg, BellOptions{}));
  std::map<std::string, std::string> q;
  for (const auto& row : r) q[row.at("quantity")] = row.at("value");
  EXPECT_NEAR(std::abs(d(q.at("exact_s"))), 2.828427, 1e-6);
  EXPECT_EQ(q.at("lhv_bound"), "2");
  EXPECT_NEAR(d(q.at("tsirelson_bound")), 2 * std::numbers::sqrt2, 1e-11);
  EXPECT_EQ(q.at("verdict"), "violated");
}

TEST(BellCommandTest, DegenerateAndOrthogonalLayouts) {
  RunConfig cfg;
  cfg.trials = 1000;
  cfg.format = Format::kJson;
  const auto equal = nlohmann::json::parse(cmd_bell(cfg, BellOptions{0.7, 0.7, 0.7, 0.7}));
  EXPECT_NEAR(std::abs(equal.at("exact_s").get<double>()), 2.0, 1e-12);
  EXPECT_EQ(equal.at("verdict"), "not-violated");
  // a = b, a' = b' with a perpendicular to a': the four terms cancel.
  const auto orth = nlohmann::json::parse(cmd_bell(cfg, BellOptions{0.0, kPi / 2, kPi / 2, 0.0}));
  EXPECT_NEAR(orth.at("exact_s").get<double>(), 0.0, 1e-12);
}

TEST(MeasureCommandTest, EigenstateGivesPointMass) {
  RunConfig cfg;
  cfg.trials = 500;
  const auto r = rows(cmd_measure(cfg, {"[1, 0]", "[[1, 0], [0, -1]]"}));
  std::map<std::string, double> prob;
  for (const auto& row : r) {
    if (row.at("section") == "probability") prob[row.at("key")] = d(row.at("value"));
  }
  EXPECT_NEAR(prob.at("1"), 1.0, 1e-12);
  EXPECT_NEAR(prob.at("-1"), 0.0, 1e-12);
}

TEST(MeasureCommandTest, EqualSuperpositionResidualAndInterference) {
  RunConfig cfg;
  cfg.format = Format::kJson;
  const auto j = nlohmann::json::parse(cmd_measure(cfg, {"[1, [0, 1]]", "[[1, 0], [0, -1]]"}));
  EXPECT_LT(j.at("premeasurement_residual").get<double>(), 1e-9);
  EXPECT_EQ(j.at("interference_after").get<double>(), 0.0);
  EXPECT_NEAR(j.at("interference_before").get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j.at("mixture")[0][0][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j.at("mixture")[0][1][0].get<double>(), 0.0, 1e-15);
}

TEST(MeasureCommandTest, MalformedSpecs) {
  RunConfig cfg;
  EXPECT_THROW(cmd_measure(cfg, {"[1, \"x\"]", "[[1, 0], [0, -1]]"}), Error);
  EXPECT_THROW(cmd_measure(cfg, {"[1, 0]", "[[1, 1], [0, -1]]"}), Error);
  EXPECT_THROW(cmd_measure(cfg, {"[1, 0, 0]", "[[1, 0], [0, -1]]"}), Error);
  EXPECT_THROW(cmd_measure(cfg, {"[0, 0]", "[[1, 0], [0, -1]]"}), Error);
  EXPECT_THROW(cmd_measure(cfg, {"/nonexistent/state.json", "[[1]]"}), Error);
  const Result res = invoke({"measure", "--state", "[1,", "--observable", "[[1,0],[0,1]]"});
  EXPECT_EQ(res.code, 1);
  EXPECT_FALSE(res.err.empty());
}

TEST(MeasureCommandTest, SpecFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "qcat_cli_test_obs.json";
  {
    std::ofstream(path) << "[[0, 1], [1, 0]]\n";
  }
  RunConfig cfg;
  cfg.format = Format::kJson;
  const auto j = nlohmann::json::parse(cmd_measure(cfg, {"[1, 0]", path.string()}));
  EXPECT_NEAR(j.at("distribution")[0].at("probability").get<double>(), 0.5, 1e-12);
  std::filesystem::remove(path);
}

TEST(LatticeCommandTest, AllChecksPassAndWitness) {
  RunConfig cfg;
  const std::string csv = cmd_lattice(cfg, {2, 500});
  for (const auto& row : rows(csv)) EXPECT_EQ(row.at("failed"), "0") << row.at("check");
  EXPECT_NE(csv.find("equals A: yes"), std::string::npos);
  EXPECT_NE(csv.find("is zero: yes"), std::string::npos);
  EXPECT_THROW(cmd_lattice(cfg, {1, 10}), DomainError);
}

TEST(RunTest, IdenticalConfigsAreByteIdentical) {
  for (const char* cmd : {"dice", "epr", "bell", "lattice"}) {
    const Result a = invoke({"--seed", "42", "--trials", "2000", cmd});
    const Result b = invoke({"--seed", "42", "--trials", "2000", cmd});
    ASSERT_EQ(a.code, 0) << cmd << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_NE(a.out.find("seed=42"), std::string::npos);
  }
  EXPECT_NE(invoke({"--seed", "1", "--trials", "2000", "dice"}).out,
            invoke({"--seed", "2", "--trials", "2000", "dice"}).out);
}

TEST(RunTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"nonsense"}).code, 1);
  EXPECT_EQ(invoke({"--trials", "0", "dice"}).code, 1);
  EXPECT_EQ(invoke({"--format", "xml", "dice"}).code, 1);
  EXPECT_EQ(invoke({"measure", "--state", "[1,0]"}).code, 1);
  EXPECT_EQ(invoke({"lattice", "--dim", "1"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(RunTest, JsonFormatAndOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "qcat_cli_test_out.json";
  const Result r = invoke({"--format", "json", "--trials", "50", "--out", path.string(), "bell"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("command"), "bell");
  std::filesystem::remove(path);
}

#ifdef QCAT_BINARY
TEST(BinaryTest, ExitCodesFromTheExecutable) {
  const auto path = std::filesystem::temp_directory_path() / "qcat_cli_test_bin.csv";
  const std::string bin = QCAT_BINARY;
  auto status = [](const std::string& cmd) {
    const int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status(bin + " --trials 100 --out " + path.string() + " dice"), 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("# qcat ", 0), 0u);
  EXPECT_EQ(status(bin + " bogus > /dev/null 2>&1"), 1);
  std::filesystem::remove(path);
}
#endif

}  // namespace
}  // namespace qcat::cli
