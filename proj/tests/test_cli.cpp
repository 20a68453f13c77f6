#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " RANKPROF_CLI " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST(Cli, SynthExamples) {
  Result d = run("synth dist --d 0");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, "(eq v0 v1)\n; rank=0 size=1\n");
  EXPECT_EQ(run("synth length --m 0").out, "(not (exists v0 (eq v0 v0)))\n; rank=1 size=3\n");
  Result w = run("synth exact-word --word ab");
  ASSERT_EQ(w.code, 0);
  auto pos = w.out.find("; rank=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stoul(w.out.substr(pos + 7)), 5u);
  EXPECT_EQ(run("synth exact-word --word abc --alphabet ab").code, 1);
  EXPECT_EQ(run("synth classifier --lang regex:@empty --n 3").out, "(false)\n; rank=0 size=1\n");
}

TEST(Cli, ProfileExamples) {
  Result even = run("profile --lang \"regex:(aa)*\" --max-n 16 --format csv");
  ASSERT_EQ(even.code, 0);
  EXPECT_EQ(count_lines(even.out), 16u);  // header plus 15 rows
  Result json = run("profile --lang \"regex:(aa)*\" --max-n 16");
  EXPECT_EQ(nlohmann::json::parse(json.out)["classification"], "logarithmic-nonaperiodic");
  Result t3 = run("profile --lang builtin:threshold:3 --max-n 8");
  ASSERT_EQ(t3.code, 0);
  EXPECT_EQ(nlohmann::json::parse(t3.out)["classification"], "bounded-starfree");
  Result empty = run("profile --lang regex:@empty --max-n 4 --format plot");
  ASSERT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "n,exact,lower,upper\n2,0,nan,5\n3,0,nan,6\n4,0,nan,6\n");
}

TEST(Cli, OutputIsDeterministic) {
  std::string args = "profile --lang \"regex:(b*ab*a)*b*\" --max-n 7";
  Result a = run(args), b = run(args), c = run(args + " --serial");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, ExtractExitCodes) {
  Result even = run("extract --lang \"regex:(aa)*\"");
  ASSERT_EQ(even.code, 0);
  auto j = nlohmann::json::parse(even.out);
  EXPECT_EQ(j["p"], 2);
  EXPECT_EQ(j["x"], "a");
  EXPECT_EQ(run("extract --lang \"regex:a*b*\"").code, 3);
}

TEST(Cli, SeparatorMatchesParityProfile) {
  Result sep = run("separator --k \"regex:(aa)*\" --h \"regex:a(aa)*\" --max-n 16 --format plot");
  Result rho = run("profile --lang builtin:even --max-n 16 --format plot");
  ASSERT_EQ(sep.code, 0);
  ASSERT_EQ(rho.code, 0);
  // Compare the sigma column with the exact column.
  std::istringstream s(sep.out), r(rho.out);
  std::string ls, lr;
  std::getline(s, ls);
  std::getline(r, lr);
  std::size_t rows = 0;
  while (std::getline(s, ls) && std::getline(r, lr)) {
    auto field = [](const std::string& line, int k) {
      std::istringstream in(line);
      std::string f;
      for (int i = 0; i <= k; ++i) std::getline(in, f, ',');
      return f;
    };
    EXPECT_EQ(field(ls, 0), field(lr, 0));
    EXPECT_EQ(field(ls, 1), field(lr, 1));
    ++rows;
  }
  EXPECT_EQ(rows, 15u);
  EXPECT_EQ(run("separator --k regex:a* --h regex:aa* --max-n 3").code, 1);
}

TEST(Cli, VerifyAndDefect) {
  EXPECT_EQ(run("verify --lang builtin:even --max-n 16").code, 0);
  Result d = run("defect --lang builtin:even --q 1 --n 2");
  ASSERT_EQ(d.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(d.out)["pairs"].empty());
}

TEST(Cli, CapsAndErrors) {
  EXPECT_EQ(run("profile --lang \"regex:(ab)*\" --max-n 8 --ball-cap 200").code, 2);
  EXPECT_EQ(run("profile --lang \"regex:(b*ab*a)*b*\" --max-n 6", "RANKPROF_BUDGET=5").code, 2);
  EXPECT_EQ(run("profile --lang \"regex:(b*ab*a)*b*\" --max-n 6 --budget 100000000", "RANKPROF_BUDGET=5").code, 0);
  EXPECT_EQ(run("profile --lang \"regex:(ab\"").code, 1);
  EXPECT_EQ(run("profile --lang builtin:nope").code, 1);
}

TEST(Cli, DfaFileAndOutputPath) {
  auto dir = std::filesystem::temp_directory_path();
  auto dfa = dir / "rankprof_cli_even.json";
  auto out = dir / "rankprof_cli_out.csv";
  std::ofstream(dfa) << R"({"alphabet":["a"],"states":2,"start":0,"accept":[0],"delta":[[1],[0]]})";
  Result r = run("profile --lang file:" + dfa.string() + " --max-n 5 --format csv -o " + out.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text.substr(0, text.find('\n')), "n,exact,upper,lower,member,nonmember");
  EXPECT_EQ(count_lines(text), 5u);
  std::filesystem::remove(dfa);
  std::filesystem::remove(out);
}
