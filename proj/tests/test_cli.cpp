#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DIVEXP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST(Cli, PriceLehmanSecondOrder) {
  const auto r = run(R"(price --strike 100 --dividends '[{"t":0.1,"cash":7}]' --method ll --order 2)");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("price 8.4246478"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("correction_2"), std::string::npos);
}

TEST(Cli, PriceOtherMethods) {
  const auto hhl = run(R"(price --strike 50 --dividends '[{"t":0.9,"cash":7}]' --method hhl)");
  EXPECT_EQ(hhl.status, 0);
  EXPECT_NE(hhl.out.find("price 43.248455"), std::string::npos) << hhl.out;
  const auto black = run("price --strike 100 --method black");
  EXPECT_NE(black.out.find("price 11.923538"), std::string::npos) << black.out;
  EXPECT_EQ(run("price --method fdm --fdm-space 200 --fdm-time 50").status, 0);
}

TEST(Cli, DomainErrorsExitTwo) {
  EXPECT_EQ(run(R"(price --dividends '[{"t":0.3,"cash":60},{"t":0.6,"cash":60}]' --method black)").status, 2);
  EXPECT_EQ(run(R"(price --dividends '[{"t":0.3,"cash":60},{"t":0.6,"cash":60}]' --method lf)").status, 2);
  EXPECT_EQ(run("price --vol 0").status, 2);
  EXPECT_EQ(run("price --strike -5").status, 2);
  EXPECT_EQ(run("implied-vol --price 500 --forward 100 --strike 100").status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run("").status, 0);
  EXPECT_EQ(run("price --dividends '{bad'").status, 1);
  EXPECT_EQ(run("price --method nope").status, 1);
  EXPECT_EQ(run("bench --scenario /nonexistent.json").status, 1);
}

TEST(Cli, ImpliedVol) {
  const auto r = run("implied-vol --price 11.923538474048499 --forward 100 --strike 100");
  EXPECT_EQ(r.status, 0);
  EXPECT_NEAR(std::stod(r.out), 0.3, 1e-9);
}

TEST(Cli, BenchCsv) {
  const auto a = run("bench --scenario table1 --no-timing");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out.rfind("method,strike,price,vol_error,ms,error\n", 0), 0u);
  EXPECT_NE(a.out.find("HHL,50,43.15079716,0.00e+00,,"), std::string::npos) << a.out;
  EXPECT_EQ(a.out, run("bench --scenario table1 --no-timing").out);
  const auto list = run("bench --list");
  EXPECT_NE(list.out.find("gocsei10y"), std::string::npos);
}

TEST(Cli, Continuity) {
  const auto r = run("continuity --methods Black LL-2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("Black,8.446161,8.363366"), std::string::npos) << r.out;
}
