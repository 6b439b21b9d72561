#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#ifdef HV_CLI_PATH

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(HV_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST(Cli, CheckFamilies) {
  auto s = run("check s ch");
  EXPECT_EQ(s.code, 0) << s.out;
  auto f = run("check fq-factor 7 1,2,4 v --trivial-valuation");
  EXPECT_EQ(f.code, 1) << f.out;
  EXPECT_TRUE(has(f, "V4: fail (26 trials)  [1]+[1] ⊇ {[1],[3]}")) << f.out;
  auto l = run("check limit upto-0n rv");
  EXPECT_EQ(l.code, 0) << l.out;
  auto ih = run("check limit rank1-f3 ih --budget 3 --samples 40");
  EXPECT_EQ(ih.code, 0) << ih.out;
  auto q = run("check quotient f3 2 v --samples 300");
  EXPECT_EQ(q.code, 0) << q.out;
  EXPECT_EQ(run("check bogus ch").code, 2);
  EXPECT_EQ(run("check s ih").code, 2);
}

TEST(Cli, Reconstruct) {
  auto a = run("reconstruct upto-0n --delta 1 --budget 3");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_TRUE(has(a, "sum-membership K_new => stage: pass")) << a.out;
  auto b = run("reconstruct upto-1m");
  EXPECT_EQ(b.code, 1) << b.out;
  EXPECT_TRUE(has(b, "emptiness witness (empty, m <= 3)")) << b.out;
  auto c = run("reconstruct upto-n0 --delta 2 --budget 2");
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_TRUE(has(c, "field mode")) << c.out;
}

TEST(Cli, JsonIsReproducible) {
  auto a = run("reconstruct upto-0n --budget 3 --samples 30 --seed 9 --json");
  auto b = run("reconstruct upto-0n --budget 3 --samples 30 --seed 9 --json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has(a, "\"seed\": 9")) << a.out;
}

TEST(Cli, Eval) {
  auto g = run("eval --ground q2 '1/(1-x)' --prec '(0,4)'");
  EXPECT_EQ(g.out, "1 + x + x^2 + x^3 + O(t^(0,4))\n");
  EXPECT_EQ(run("eval --rv q,z 'inv(1 - t; 3)'").out, "1 + t + t^2 + t^3 + O(t^4)\n");
  EXPECT_EQ(run("eval --hyper 'h_rho(q2,(0,1))' 'member (1)+(-1) ∋ (x^2)'").out, "true\n");
  EXPECT_EQ(run("eval --hyper 'h_rho(q2,(0,1))' 'member (1)+(-1) ∋ (x)'").out, "false\n");
  EXPECT_EQ(run("eval --rv q,z 'hensel(-1 - t, 0, 1; 1; 3)'").out, "1 + 1/2*t - 1/8*t^2 + 1/16*t^3 + O(t^4)\n");
  EXPECT_EQ(run("eval --rv q,z 'oplus((1;0); (-1;0))'").out, "0\n");
  auto p = run("eval --rv q,z 'inv((1;0) + O(t^2); 3)'");
  EXPECT_EQ(p.code, 3) << p.out;
  EXPECT_EQ(run("eval --rv q,z 'inv(1 - ; 3)'").code, 2);
}

#endif
