#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chainlattice/commands.hpp"

using namespace chainlattice;
namespace cli = chainlattice::cli;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::string& command, const cli::Options& opt) {
  std::ostringstream out, err;
  const int status = cli::run(command, opt, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trailer(const std::string& text, const std::string& key) {
  for (const auto& l : lines(text)) {
    const std::string prefix = "# " + key + ": ";
    if (l.rfind(prefix, 0) == 0) return l.substr(prefix.size());
  }
  return {};
}

}  // namespace

TEST(Grid, Parsing) {
  const auto g = cli::parse_grid("0.9:2.0:111");
  EXPECT_EQ(g.count, 111);
  EXPECT_FALSE(g.log);
  EXPECT_TRUE(cli::parse_grid("1e-3:1:10:log").log);
  for (const char* bad : {"1:2", "2:1:5", "1:2:1", "1:2:3.5", "0:1:5:log", "1:2:5:cubic", "a:2:5", "1:2:5:log:x"}) {
    EXPECT_THROW(cli::parse_grid(bad), cli::UsageError) << bad;
  }
  EXPECT_THROW(cli::parse_window("1e-4:1e-8"), cli::UsageError);
  EXPECT_THROW(cli::parse_window("0:1"), cli::UsageError);
}

TEST(EnergyCurveCommand, HeaderAndPhaseFlip) {
  cli::Options opt;
  opt.a = "0.9:2.0:111";
  const auto r = run("energy-curve", opt);
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  ASSERT_EQ(r.out.rfind("A,E_ground,E_equidistant_continuation,phase,Delta\n", 0), 0u);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 112u);
  const double A_c = critical_A(MieParams(12, 6));
  bool seen_bip = false;
  double min_energy = 1e300;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    ASSERT_EQ(f.size(), 5u);
    const double A = std::stod(f[0]);
    min_energy = std::min(min_energy, std::stod(f[1]));
    if (A > A_c && !seen_bip) {
      EXPECT_EQ(f[3], "bip") << ls[i];
      EXPECT_EQ(fields(ls[i - 1])[3], "eq");
      seen_bip = true;
    }
  }
  EXPECT_TRUE(seen_bip);
  // Grid point nearest to A_min is A = 1.
  EXPECT_NEAR(min_energy, equidistant_energy(mie_potential(MieParams(12, 6)), 1.0).value, 1e-13);
  EXPECT_GT(min_energy, -715.0 / 691.0);
}

TEST(EnergyCurveCommand, Deterministic) {
  cli::Options opt;
  opt.a = "0.95:1.6:37";
  opt.potential = "mie:n=7,m=6";
  EXPECT_EQ(run("energy-curve", opt).out, run("energy-curve", opt).out);
  opt.digits = 6;
  const auto r = run("energy-curve", opt);
  EXPECT_NE(r.out.find("\n0.95,"), std::string::npos);
}

TEST(PhaseDiagramCommand, Values) {
  cli::Options opt;
  opt.n = "6.5:30:236";
  const auto r = run("phase-diagram", opt);
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "n,A_c");
  EXPECT_NE(r.err.find("strictly decreasing"), std::string::npos);
  EXPECT_LT(std::abs(std::stod(fields(ls.back())[1]) - 1.0), 0.1);
  bool found7 = false, found12 = false;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    const double n = std::stod(f[0]);
    if (std::abs(n - 7.0) < 1e-12) {
      EXPECT_NEAR(std::stod(f[1]), 1.1427384940, 1e-10);
      found7 = true;
    }
    if (std::abs(n - 12.0) < 1e-12) {
      EXPECT_EQ(std::stod(f[1]), std::stod(cli::detail::CsvWriter(std::cout, 15).format(critical_A(MieParams(12, 6)))));
      found12 = true;
    }
  }
  EXPECT_TRUE(found7);
  EXPECT_TRUE(found12);
}

TEST(AminLimitCommand, Rows) {
  cli::Options opt;
  opt.m_grid = "2:12:11";
  const auto r = run("amin-limit", opt);
  ASSERT_EQ(r.status, cli::kExitOk);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 12u);
  EXPECT_EQ(ls[0], "m,A_min_limit");
  EXPECT_NEAR(std::stod(fields(ls[1])[1]), 0.56554749852710375051, 1e-13);
}

TEST(DeltaSweepCommand, TrailerAndRows) {
  cli::Options opt;
  opt.a = "0.9:3:43";
  const auto r = run("delta-sweep", opt);
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  EXPECT_EQ(lines(r.out)[0], "A,Delta,Delta_minus_1,branch,gap_to_asymptote,error");
  EXPECT_EQ(trailer(r.out, "monotone"), "yes");
  EXPECT_EQ(trailer(r.out, "below_asymptote_2A-1"), "yes");
  EXPECT_EQ(trailer(r.out, "failures"), "0");
}

TEST(BetaFitCommand, Trailer) {
  cli::Options opt;
  const auto r = run("beta-fit", opt);
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  EXPECT_NEAR(std::stod(trailer(r.out, "exponent")), 0.5, 1e-3);
  EXPECT_LT(std::stod(trailer(r.out, "prefactor_rel_diff")), 1e-2);
  EXPECT_EQ(lines(r.out).size(), 1u + 20u + 7u);
}

TEST(HardcoreSweepCommand, Kink) {
  cli::Options opt;
  opt.potential = "mie:n=12,m=6,sigma=1.1";
  const auto r = run("hardcore-sweep", opt);
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  EXPECT_EQ(trailer(r.out, "regime"), "junction");
  EXPECT_LT(std::stod(trailer(r.out, "max_adjacent_Delta_jump")), 0.05);
  EXPECT_NEAR(std::stod(trailer(r.out, "A_star")), 1.108930351998, 1e-11);
  EXPECT_NE(r.out.find(",boundary,"), std::string::npos);

  opt.a = "1.0:1.5:11";  // first rows lie inside the core
  const auto bad = run("hardcore-sweep", opt);
  EXPECT_EQ(bad.status, cli::kExitFailure);
  EXPECT_NE(bad.out.find("infeasible"), std::string::npos);
}

TEST(TauFitCommand, Trailer) {
  cli::Options opt;
  opt.potential = "mie:n=6,m=2";
  const auto r = run("tau-fit", opt);
  ASSERT_EQ(r.status, cli::kExitOk) << r.err;
  EXPECT_NEAR(std::stod(trailer(r.out, "exponent")), -0.25, 5e-3);
  EXPECT_EQ(lines(r.out)[0], "sigma_minus_one,A_star,Delta_star,delta_star,error");
}

TEST(Commands, UsageErrors) {
  cli::Options opt;
  EXPECT_EQ(run("no-such-command", opt).status, cli::kExitUsage);
  opt.potential = "lj:12";
  EXPECT_EQ(run("energy-curve", opt).status, cli::kExitUsage);
  opt.potential = "riesz:c=1,s=3";
  EXPECT_EQ(run("delta-sweep", opt).status, cli::kExitUsage);
  opt = {};
  opt.points = 3;
  EXPECT_EQ(run("beta-fit", opt).status, cli::kExitUsage);
  opt = {};
  opt.digits = 0;
  EXPECT_EQ(run("energy-curve", opt).status, cli::kExitUsage);
  opt = {};
  opt.m = 6;
  opt.n = "5:10:6";
  EXPECT_EQ(run("phase-diagram", opt).status, cli::kExitUsage);
}

TEST(Commands, ComputationFailureStatus) {
  cli::Options opt;
  opt.window = "1e-30:1e-28";  // below the regime tolerance: no junction exists
  const auto r = run("tau-fit", opt);
  EXPECT_EQ(r.status, cli::kExitFailure);
  EXPECT_NE(r.out.find("no junction"), std::string::npos);
}

TEST(ValidateCommand, QuickPasses) {
  cli::Options opt;
  opt.quick = true;
  const auto r = run("validate", opt);
  EXPECT_EQ(r.status, cli::kExitOk) << r.out;
  EXPECT_NE(r.out.find("A_c(12,6)"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Csv, QuotesFieldsWithCommas) {
  std::ostringstream os;
  cli::detail::CsvWriter csv(os, 15);
  csv.num(1.5).text("a, \"b\"").end();
  EXPECT_EQ(os.str(), "1.5,\"a, \"\"b\"\"\"\n");
}
