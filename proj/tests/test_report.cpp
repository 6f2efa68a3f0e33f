#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include <sys/wait.h>

#include "bellrand/error.hpp"
#include "bellrand/report.hpp"
#include "bellrand/synth.hpp"

using namespace bellrand;
namespace fs = std::filesystem;

namespace {

// Two synthetic runs on disk, shared by every test in this file.
class ReportTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "bellrand_report";
    fs::remove_all(dir_);
    SynthConfig cfg;
    cfg.duration = 3.0;
    cfg.jitter_sigma = 1e-10;
    cfg.seed = 21;
    cfg.name = "bell";
    write_run(gen_bell_run(cfg), dir_);
    cfg.name = "local";
    cfg.visibility = 0.0;
    cfg.seed = 22;
    write_run(gen_bell_run(cfg), dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static AnalyzeConfig config() {
    AnalyzeConfig c;
    c.t_w = 1e-9;
    c.encoding = Encoding::Codes;
    c.condition = Condition::Synthetic;
    return c;
  }

  static inline fs::path dir_;
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BELLRAND_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_F(ReportTest, SyntheticBellRunIsRandomAndViolatesBound) {
  const std::vector<fs::path> prefixes{dir_ / "bell"};
  const auto reports = analyze(prefixes, config());
  ASSERT_EQ(reports.size(), 1u);
  const auto& r = reports[0];
  EXPECT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.kind, "coincidences");
  EXPECT_EQ(r.bits, 2 * r.n);
  EXPECT_NEAR(r.k, 1.0, 0.1);
  EXPECT_TRUE(r.nist_overall);
  EXPECT_TRUE(r.random);
  ASSERT_TRUE(r.s_chsh.has_value());
  EXPECT_GT(*r.s_chsh, 2.0);
}

TEST_F(ReportTest, MissingRunFailsWithoutStoppingBatch) {
  const std::vector<fs::path> prefixes{dir_ / "nope", dir_ / "local"};
  const auto reports = analyze(prefixes, config());
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_FALSE(reports[0].ok);
  EXPECT_FALSE(reports[0].error.empty());
  EXPECT_TRUE(reports[1].ok);
  ASSERT_TRUE(reports[1].s_chsh.has_value());
  EXPECT_LT(*reports[1].s_chsh, 2.0);
}

TEST_F(ReportTest, SubsetAndSinglesRows) {
  auto cfg = config();
  cfg.subset = std::pair<std::uint8_t, std::uint8_t>{0, 1};
  cfg.singles = true;
  cfg.encoding.reset();
  const std::vector<fs::path> prefixes{dir_ / "bell"};
  const auto reports = analyze(prefixes, cfg);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].kind, "subset 0,1");
  EXPECT_FALSE(reports[0].s_chsh.has_value());
  EXPECT_EQ(reports[1].kind, "singles");
  EXPECT_FALSE(reports[1].s_chsh.has_value());
  EXPECT_GT(reports[1].n, reports[0].n);
}

TEST_F(ReportTest, CsvRoundTripAndDeterminism) {
  auto cfg = config();
  cfg.singles = true;
  const std::vector<fs::path> prefixes{dir_ / "bell", dir_ / "missing", dir_ / "local"};
  const auto reports = analyze(prefixes, cfg);
  const auto csv = format_csv(reports);
  EXPECT_EQ(format_csv(parse_csv(csv)), csv);
  EXPECT_EQ(format_csv(analyze(prefixes, cfg)), csv);
  EXPECT_EQ(format_text(analyze(prefixes, cfg)), format_text(reports));
}

TEST_F(ReportTest, TextAndCsvCarrySameNumbers) {
  const std::vector<fs::path> prefixes{dir_ / "bell"};
  const auto reports = analyze(prefixes, config());
  const auto text = format_text(reports);
  const auto csv = format_csv(reports);
  for (const auto& field : {format_k(reports[0].k), format_s(reports[0].s_chsh),
                            format_p(reports[0].p_values[0]), format_seconds(reports[0].t_w)}) {
    EXPECT_NE(text.find(field), std::string::npos) << field;
    EXPECT_NE(csv.find(field), std::string::npos) << field;
  }
}

TEST(ReportFormat, NumberFormatting) {
  EXPECT_EQ(format_k(0.98765), "0.9877");
  EXPECT_EQ(format_p(0.5270892568), "0.527089");
  EXPECT_EQ(format_p(std::numeric_limits<double>::quiet_NaN()), "n/a");
  EXPECT_EQ(format_s(std::nullopt), "n/a");
  EXPECT_EQ(format_s(2.5), "2.5000");
}

TEST(ReportFormat, CsvQuotesAwkwardNames) {
  RunReport r;
  r.name = "run,with \"quotes\"";
  r.kind = "coincidences";
  r.encoding = "codes:2bit-msb";
  r.ok = false;
  r.error = "line 3: bad, really";
  r.p_values.fill(std::numeric_limits<double>::quiet_NaN());
  const std::vector<RunReport> rows{r};
  const auto csv = format_csv(rows);
  const auto back = parse_csv(csv);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].name, r.name);
  EXPECT_EQ(back[0].error, r.error);
  EXPECT_EQ(format_csv(back), csv);
}

TEST(ReportFormat, ParseCsvRejectsGarbage) {
  EXPECT_THROW(parse_csv("a,b,c\n1,2,3\n"), Error);
}

TEST(Scatter, NeedsApplicableRows) {
  RunReport singles;
  singles.name = "s";
  singles.kind = "singles";
  const std::vector<RunReport> none{singles};
  try {
    scatter(none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoApplicableRuns);
  }
  RunReport row;
  row.name = "r";
  row.k = 0.97;
  row.s_chsh = 2.4;
  row.nist_overall = true;
  const std::vector<RunReport> rows{singles, row};
  const auto pts = scatter(rows);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].name, "r");
  const auto csv = format_scatter_csv(pts);
  EXPECT_NE(csv.find("# bell_limit=2.0000"), std::string::npos);
  EXPECT_NE(csv.find("r,0.9700,2.4000,yes"), std::string::npos);
}

TEST_F(ReportTest, CliExitCodes) {
  const auto bell = (dir_ / "bell").string();
  const auto missing = (dir_ / "missing").string();
  EXPECT_EQ(run_cli("analyze \"" + bell + "\" --tw 1e-9"), 0);
  EXPECT_EQ(run_cli("analyze \"" + bell + "\" \"" + missing + "\" --tw 1e-9"), 0);
  EXPECT_EQ(run_cli("analyze \"" + missing + "\" --tw 1e-9"), 1);
  EXPECT_EQ(run_cli("analyze \"" + bell + "\""), 2);
  EXPECT_EQ(run_cli("analyze \"" + bell + "\" --tw -1"), 2);
  EXPECT_EQ(run_cli("analyze \"" + bell + "\" --tw 1e-9 --block-size 5"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("complexity --bits 0101010101"), 0);
  EXPECT_EQ(run_cli("nist --bits 1011010101"), 0);
  EXPECT_EQ(run_cli("scatter /nonexistent/report.csv"), 1);
}

TEST_F(ReportTest, CliCsvMatchesLibrary) {
  const auto out = dir_ / "report.csv";
  ASSERT_EQ(run_cli("analyze \"" + (dir_ / "bell").string() + "\" --tw 1e-9 --encoding codes --condition synthetic --format csv --out \"" +
                    out.string() + "\""),
            0);
  const std::vector<fs::path> prefixes{dir_ / "bell"};
  EXPECT_EQ(read_text_file(out), format_csv(analyze(prefixes, config())));
}
