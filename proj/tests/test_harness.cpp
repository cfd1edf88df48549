#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fracwave_harness/commands.hpp"
#include "fracwave_harness/config.hpp"
#include "fracwave_harness/report.hpp"

using namespace fracwave;
using namespace fracwave::harness;

namespace {

const std::string kBase = R"(
[domain]
dims = 1
lengths = 1
modes_per_axis = 16

[damping]
gamma = 1
alpha = 0.25

[nonlinearity]
kind = odd_power
q = 2

[forcing]
modes = 1:1

[initial]
generator = random_seeded
amplitude = 2

[time]
T = 1
dt = 0.01
stride = 10
)";

std::string with_line(const std::string& section, const std::string& line) {
  std::string text = kBase;
  const auto at = text.find("[" + section + "]");
  if (at == std::string::npos) return text + "[" + section + "]\n" + line + "\n";
  const auto key = line.substr(0, line.find(' '));
  const auto end = text.find("\n[", at + 1);
  const auto k = text.find("\n" + key + " ", at);
  if (k != std::string::npos && k < end) {
    text.replace(k + 1, text.find('\n', k + 1) - k - 1, line);
  } else {
    text.insert(text.find('\n', at) + 1, line + "\n");
  }
  return text;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Config, ParsesBase) {
  const auto c = parse_config(kBase);
  EXPECT_EQ(c.modes_per_axis, 16);
  EXPECT_DOUBLE_EQ(c.damping.alpha, 0.25);
  EXPECT_DOUBLE_EQ(c.horizon, 1.0);
  ASSERT_EQ(c.forcing.size(), 1u);
  const auto sc = c.scenario();
  EXPECT_EQ(sc.spectrum->size(), 16u);
  EXPECT_DOUBLE_EQ(sc.forcing[0], 1.0);
}

TEST(Config, AlphaOutsideRangeNamesConstraint) {
  const auto msg = config_error(with_line("damping", "alpha = 0.7"));
  EXPECT_NE(msg.find("damping.alpha"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(0, 0.5)"), std::string::npos) << msg;
  EXPECT_FALSE(config_error(with_line("damping", "alpha = 0.5")).empty());
  EXPECT_FALSE(config_error(with_line("damping", "gamma = 0")).empty());
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_FALSE(config_error(with_line("damping", "beta = 1")).empty());
  EXPECT_FALSE(config_error(with_line("bogus", "x = 1")).empty());
  EXPECT_FALSE(config_error(with_line("time", "dt = fast")).empty());
  EXPECT_FALSE(config_error(with_line("nonlinearity", "q = 4")).empty());
  EXPECT_FALSE(config_error(with_line("domain", "dims = 4")).empty());
}

TEST(Config, ModeOutsideBasis) {
  const auto c = parse_config(with_line("forcing", "modes = 40:1"));
  EXPECT_THROW(c.scenario(), ConfigError);
}

TEST(Config, ModeList) {
  const auto m = parse_mode_list("1x2:0.5, 3x1:-0.25", 2);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].first, (ModeIndex{{1, 2}}));
  EXPECT_DOUBLE_EQ(m[1].second, -0.25);
  EXPECT_TRUE(parse_mode_list("zero", 1).empty());
  EXPECT_TRUE(parse_mode_list("", 1).empty());
  EXPECT_THROW(parse_mode_list("1x2:0.5", 1), ConfigError);
  EXPECT_THROW(parse_mode_list("0:1", 1), ConfigError);
}

TEST(Config, PulseEnvelope) {
  const auto env = pulse_envelope(5, 0.5, 1.5, 4);
  EXPECT_NEAR(env(0.0), 0.0, 1e-15);
  EXPECT_NEAR(env(2.0), 0.0, 1e-12);
  const double peak = env(1.5);
  EXPECT_GE(peak, 0.5);
  EXPECT_LT(peak, 1.5);
  EXPECT_NEAR(env(1.25), peak * 0.5, 1e-12);
  EXPECT_EQ(pulse_envelope(5, 0.5, 1.5, 4)(2.5), env(2.5));
}

TEST(Report, FormatAndChecksum) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  // Published FNV-1a test vectors.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(with_checksum("x\n"), "x\n# checksum fnv1a64=08f0de07b58d2b17\n");
}

TEST(Report, CsvRenderAndBundle) {
  CsvTable t({"t [time]", "E_norm", "label"});
  t.add_row({0.5, 3LL, std::string("a")});
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
  const auto text = t.render();
  EXPECT_EQ(text.rfind("t [time],E_norm,label\n0.5,3,a\n", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto body = text.substr(0, text.find("# checksum"));
  EXPECT_EQ(with_checksum(body), text);

  ReportBundle b;
  b.add_csv("one", t);
  b.add_csv("two", t);
  b.set("k", 1.5);
  b.set("flag", true);
  EXPECT_NE(b.summary_text().find("k=1.5\n"), std::string::npos);
  EXPECT_NE(b.summary_text().find("flag=true\n"), std::string::npos);
  const auto before = b.serialize();
  b.keep_files({});
  EXPECT_EQ(b.serialize(), before);
  b.keep_files({"two"});
  ASSERT_EQ(b.files().size(), 1u);
  EXPECT_TRUE(b.files().count("two.csv") || b.files().count("two"));
}

TEST(Commands, UnknownSubcommand) {
  EXPECT_THROW(run_command("nope", parse_config(kBase)), ConfigError);
}

TEST(Commands, SimulateWritesTrajectory) {
  const auto r = run_command("simulate", parse_config(kBase));
  EXPECT_FALSE(r.acceptance_failed);
  bool found = false;
  for (const auto& [name, text] : r.bundle.files()) {
    if (name.find("trajectory") == std::string::npos) continue;
    found = true;
    EXPECT_EQ(text.rfind("t [time],", 0), 0u);
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(r.bundle.serialize(), run_command("simulate", parse_config(kBase)).bundle.serialize());
}
