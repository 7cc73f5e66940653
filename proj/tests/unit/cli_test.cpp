/*
 * Copyright 2026 The pmetric Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmetric/cli.hpp"
#include "pmetric/pms.hpp"
#include "pmetric/report.hpp"

namespace pmetric {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  [[nodiscard]] Report report() const { return Report::parse(out); }
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kOne = PMETRIC_DATA_DIR "/one_point.pms";
const std::string kTwo = PMETRIC_DATA_DIR "/two_point.pms";
const std::string kBroken = "pms 1\npoints 2\nlabels a b\nmatrix\n1 0\n0 1\n";

TEST(Cli, CheckValidAndViolating) {
  auto ok = run({"check", kTwo});
  EXPECT_EQ(ok.code, cli::kTrue);
  EXPECT_EQ(ok.report().get("verdict"), "true");
  EXPECT_EQ(ok.report().get("exit"), "0");

  auto bad = run({"check", "-"}, kBroken);
  EXPECT_EQ(bad.code, cli::kViolation);
  EXPECT_EQ(bad.report().get("verdict"), "false");
  EXPECT_FALSE(bad.report().get_all("violation").empty());
}

TEST(Cli, ReportsEchoTheCommand) {
  auto r = run({"ball", kTwo, "--center", "b", "--epsilon", "1/2"});
  EXPECT_EQ(r.code, cli::kTrue);
  EXPECT_EQ(r.report().get("command"), "pmetric ball " + kTwo + " --center b --epsilon 1/2");
  // B_{1/2}(b) = {y : p(b,y) < 3/2} = {a, b}.
  EXPECT_EQ(r.report().get("members"), "2");
  auto small = run({"ball", kTwo, "--center", "a", "--epsilon", "1"});
  EXPECT_EQ(small.report().get("members"), "1");
}

TEST(Cli, SymmetricDensenessOfTheBasePointFails) {
  auto r = run({"symdense", kTwo, "--subset", "a"});
  EXPECT_EQ(r.code, cli::kFalse);
  EXPECT_EQ(r.report().get("counterwitness"), "b");
  auto d = run({"dense", kTwo, "--subset", "a"});
  EXPECT_EQ(d.code, cli::kTrue);
}

TEST(Cli, ExtendEmitsTheTwoPointSpace) {
  auto r = run({"extend", kOne, "--base", "a", "--pms"});
  ASSERT_EQ(r.code, cli::kTrue) << r.err;
  const auto t = parse_pms(r.out);
  ASSERT_EQ(t.size(), 2U);
  EXPECT_EQ(t(0, 0), Rational(0));
  EXPECT_EQ(t(0, 1), Rational(1));
  EXPECT_EQ(t(1, 1), Rational(1));

  auto rep = run({"extend", kOne, "--base", "a"});
  EXPECT_EQ(rep.code, cli::kTrue);
  EXPECT_EQ(rep.report().get("complete"), "true");
  EXPECT_EQ(rep.report().get("symmetrically-dense"), "false");
}

TEST(Cli, ExtendWritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "pmetric_cli_extend.pms";
  auto r = run({"extend", kOne, "--base", "a", "--offset", "1/2", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kTrue) << r.err;
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(parse_pms(ss.str())(1, 1), Rational(1, 2));
  std::filesystem::remove(path);
}

TEST(Cli, SequenceVerdicts) {
  auto r = run({"seq", kTwo, "--seq", "a"});
  EXPECT_EQ(r.code, cli::kTrue);
  EXPECT_EQ(r.report().get("p-limits"), "{a}");
  auto alt = run({"seq", kTwo, "--seq", ";a,b"});
  EXPECT_EQ(alt.report().get("p-cauchy"), "false");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"gen"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"nonsense"}).code, cli::kUsage);
  auto parse = run({"check", "-"}, "pms 1\npoints 2\n");
  EXPECT_EQ(parse.code, cli::kUsage);
  EXPECT_NE(parse.err.find("line"), std::string::npos);
  EXPECT_EQ(run({"ball", kTwo, "--center", "zz", "--epsilon", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"ball", kTwo, "--center", "a", "--epsilon", "0"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "/nonexistent.pms"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kTrue);
}

TEST(Cli, GenIsDeterministicAndValid) {
  auto a = run({"gen", "--seed", "5", "--n", "4", "--count", "3"});
  auto b = run({"gen", "--seed", "5", "--n", "4", "--count", "3"});
  ASSERT_EQ(a.code, cli::kTrue) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto blocks = parse_pms_stream(a.out);
  ASSERT_EQ(blocks.size(), 3U);
  for (const auto& t : blocks) EXPECT_TRUE(check_axioms(t).passed());
  auto rej = run({"gen", "--seed", "1", "--n", "3", "--method", "rejection", "--grid", "0,1/2,1"});
  EXPECT_EQ(rej.code, cli::kTrue) << rej.err;
}

TEST(Cli, SearchAndClassify) {
  auto s = run({"search", "--property", "properSymmetricallyDenseSubset", "--max-n", "2", "--grid", "0,1"});
  // No witness means the claim holds over the bounds.
  EXPECT_EQ(s.code, cli::kTrue);
  EXPECT_EQ(s.report().get("status"), "exhaustedNoWitness");
  auto c = run({"search", "--classify", kOne, "--grid", "0,1"});
  ASSERT_EQ(c.code, cli::kTrue) << c.err;
  EXPECT_EQ(parse_pms_stream(c.out).size(), 2U);
  auto e = run({"search", "--enumerate", "1", "--grid", "0,1"});
  EXPECT_EQ(parse_pms_stream(e.out).size(), 2U);
}

TEST(Cli, CompletionCommands) {
  auto c = run({"complete", kTwo});
  EXPECT_EQ(c.code, cli::kTrue) << c.err;
  EXPECT_EQ(c.report().get("isometric-to-base"), "true");
  auto z = run({"zero-complete", kTwo});
  EXPECT_EQ(z.code, cli::kTrue) << z.err;
  auto k = run({"complete", "--alphabet", "01", "--point", "repeat:01", "--point", "0"});
  EXPECT_EQ(k.code, cli::kTrue) << k.err;
}

TEST(Cli, KahnCommands) {
  auto d = run({"kahn", "dist", "0101", "0110"});
  EXPECT_EQ(d.code, cli::kTrue) << d.err;
  EXPECT_EQ(d.report().get("lower"), "1/4");
  EXPECT_EQ(d.report().get("upper"), "1/4");
  auto t = run({"kahn", "truncate", "--alphabet", "01", "--depth", "2"});
  ASSERT_EQ(t.code, cli::kTrue) << t.err;
  EXPECT_EQ(parse_pms(t.out).size(), 7U);
  auto w = run({"kahn", "witness", "--alphabet", "01", "--point", "eps", "--epsilon", "1/4",
                "--subset", "nonempty"});
  EXPECT_EQ(w.report().get("symmetric"), "false");
  auto i = run({"kahn", "incomplete", "--alphabet", "01"});
  EXPECT_EQ(i.code, cli::kTrue) << i.err;
}

TEST(Cli, Repro) {
  auto r = run({"repro"});
  EXPECT_EQ(r.code, cli::kTrue) << r.out;
  EXPECT_EQ(r.report().get_all("fixture").size(), 11U);
  auto one = run({"repro", "--fixture", "asymmetric-ball"});
  EXPECT_EQ(one.code, cli::kTrue);
  EXPECT_EQ(one.report().get_all("fixture").size(), 1U);
  EXPECT_EQ(run({"repro", "--fixture", "nope"}).code, cli::kUsage);
}

}  // namespace
}  // namespace pmetric
