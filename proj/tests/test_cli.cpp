#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = alwb::cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, DecideExamples) {
  auto abe = run({"decide", "--logic", "ab", "|- ((p->q)->q)->p"});
  EXPECT_EQ(abe.code, 0);
  EXPECT_EQ(abe.out, "VALID\n");

  auto lem = run({"decide", "--logic", "luk", "|- p \\/ ~p"});
  EXPECT_EQ(lem.code, 1);
  EXPECT_EQ(lem.out, "INVALID\nwitness: p0=1/2\nmodel: MV\n");

  auto lu = run({"decide", "--logic", "lu", "f \\/ p |- p"});
  EXPECT_EQ(lu.code, 0);
  EXPECT_EQ(lu.out, "VALID\n");

  auto pab = run({"decide", "--logic", "pab", "f \\/ p |- p"});
  EXPECT_EQ(pab.code, 1);
  EXPECT_EQ(pab.out, "INVALID\nwitness: p0=-1, f=0\nmodel: Q@0\n");
}

TEST(Cli, DecideInModels) {
  auto z1 = run({"decide", "--model", "Z@1", "--bound", "50", "|- (f -> 1.p) \\/ -p"});
  EXPECT_EQ(z1.code, 2);
  EXPECT_EQ(z1.out, "UNKNOWN_UP_TO_BOUND=50\n");
  auto q1 = run({"decide", "--model", "Q@1", "|- (f -> 1.p) \\/ -p"});
  EXPECT_EQ(q1.code, 1);
  EXPECT_EQ(q1.out, "INVALID\nwitness: p0=1/2, f=1\nmodel: Q@1\n");
  auto lex = run({"decide", "--model", "ZxZ@(0,0)", "--bound", "2", "q -> t, q -> p, q -> 2.p, q -> 3.p |- p"});
  EXPECT_EQ(lex.code, 1);
  EXPECT_NE(lex.out.find("model: ZxZ@(0,0)"), std::string::npos);
}

TEST(Cli, Eval) {
  auto a = run({"eval", "--model", "Q@-1", "--assign", "p=3", "--formula", "p -> t"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "-3, not designated\n");
  auto b = run({"eval", "--model", "ZxZ@(0,0)", "--assign", "p=\"(0,1)\",q=\"(1,-5)\"", "--formula", "p \\/ q"});
  EXPECT_EQ(b.out, "(1,-5), designated\n");
  auto c = run({"eval", "--model", "MV", "--assign", "p=1/2", "--formula", "p \\/ ~p"});
  EXPECT_EQ(c.out, "1/2, not designated\n");
  auto m = run({"--machine", "eval", "--model", "MV", "--assign", "p=1", "--formula", "p"});
  EXPECT_EQ(m.out, "value=1\ndesignated=true\n");
  EXPECT_EQ(run({"eval", "--model", "Q@0", "--assign", "p=1,f=2", "--formula", "p"}).code, 3);
}

TEST(Cli, Translate) {
  auto flip = run({"translate", "--map", "flip", "--formula", "f \\/ p"});
  EXPECT_EQ(flip.code, 0);
  EXPECT_EQ(flip.out, "(f -> t) \\/ p0\n");
  auto tau = run({"translate", "--map", "luk2lu", "--formula", "p"});
  EXPECT_EQ(tau.out, "(p0 \\/ f) /\\ t\n");
  auto cons = run({"--machine", "translate", "--map", "flip", "--consecution", "f \\/ p |- p"});
  EXPECT_EQ(cons.out, "result=(f -> t) \\/ p0 |- p0\n");
  EXPECT_EQ(run({"translate", "--map", "other", "--formula", "p"}).code, 3);
}

TEST(Cli, Approx) {
  auto arch = run({"approx", "--rule", "arch", "--n", "3", "--logic", "ab"});
  EXPECT_EQ(arch.code, 1);
  EXPECT_EQ(arch.out, "INVALID\nwitness: phi=-1, psi=-3\nmodel: Q\n");
  auto idc = run({"--machine", "approx", "--rule", "idc", "--n", "3", "--logic", "ab"});
  EXPECT_EQ(idc.out, "verdict=invalid\nmodel=Q\nphi0=1\nphi1=1/2\nphi2=1/4\nphi3=1/8\n");
  auto hay = run({"approx", "--rule", "hay", "--n", "4", "--logic", "luk"});
  EXPECT_EQ(hay.out, "INVALID\nwitness: phi=4/5\nmodel: MV\n");
  auto lu = run({"approx", "--rule", "lu", "--n", "0", "--logic", "lu"});
  EXPECT_EQ(lu.code, 0);
}

TEST(Cli, CheckProof) {
  auto ok = run({"check-proof", ALWB_DATA_DIR "/proofs/mp.proof"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "ACCEPTED\n");
  auto bad = run({"check-proof", "--file", "-"}, "claim: p, p -> q |- q\n0: p ; hyp 0\n1: p -> q ; hyp 1\n2: q ; mp 1 1\n");
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("REJECTED at step 2: ", 0), 0u);
  auto machine = run({"--machine", "check-proof", "--file", "-"}, "claim: p |- q\n0: p ; hyp 0\n");
  EXPECT_EQ(machine.out, "result=rejected\nstep=0\nreason=last step is not the claimed conclusion\n");
  EXPECT_EQ(run({"check-proof", "/nonexistent.proof"}).code, 3);
  EXPECT_EQ(run({"check-proof", "--file", "-"}, "garbage\n").code, 3);
}

TEST(Cli, SdsCheck) {
  auto ok = run({"sds-check", "--model", "Q", "--seq", "1,1/2,1/4,1/8"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "STRONGLY_DECREASING (n_cap=4): 1, 1/2, 1/4, 1/8\n");
  auto no = run({"sds-check", "--model", "Z", "--seq", "9,2"});
  EXPECT_EQ(no.code, 1);
  auto built = run({"--machine", "sds-check", "--model", "Q", "--build", "3", "--length", "3"});
  EXPECT_EQ(built.out, "sequence=3, 3/2, 3/4\nstrongly_decreasing=true\nn_cap=4\n");
  EXPECT_EQ(run({"sds-check", "--model", "Q", "--seq", "1", "--ncap", "3"}).code, 3);
}

TEST(Cli, WitnessVerify) {
  auto yes = run({"witness-verify", "--model", "Q@0", "--assign", "p=-1", "f \\/ p |- p"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "REFUTES\n");
  auto no = run({"--machine", "witness-verify", "--model", "Q@-1", "--assign", "p=-1", "f \\/ p |- p"});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "refutes=false\npremise0=-1\nconclusion=-1\n");
}

TEST(Cli, InputFromStdin) {
  auto r = run({"decide", "--logic", "ab", "--file", "-"}, "|- p -> p\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"decide", "--logic", "ab"}).code, 3);
  EXPECT_EQ(run({"decide", "--logic", "ab", "--file", "-", "|- p"}, "|- p").code, 3);
}

TEST(Cli, MachineOutput) {
  auto r = run({"--machine", "decide", "--logic", "pab", "f \\/ p |- p"});
  EXPECT_EQ(r.out, "verdict=invalid\nmodel=Q@0\np0=-1\nf=0\n");
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) EXPECT_NE(line.find('='), std::string::npos) << line;
  auto u = run({"--machine", "decide", "--model", "Z@1", "--bound", "3", "|- (f -> 1.p) \\/ -p"});
  EXPECT_EQ(u.out, "verdict=unknown\nbound=3\n");
  EXPECT_EQ(u.code, 2);
}

TEST(Cli, ErrorsExitThree) {
  EXPECT_EQ(run({"decide", "--logic", "ab", "|- f"}).code, 3);
  EXPECT_EQ(run({"decide", "--logic", "nope", "|- p"}).code, 3);
  EXPECT_EQ(run({"decide", "--logic", "ab", "|- p ->"}).code, 3);
  EXPECT_EQ(run({"decide", "--logic", "ab", "--model", "Q", "|- p"}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
  auto e = run({"decide", "--logic", "ab", "|- f"});
  EXPECT_EQ(e.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, AliasNotice) {
  auto r = run({"decide", "--logic", "rab", "|- p -> p"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("note: "), std::string::npos);
}

TEST(Cli, Budget) {
  const std::string hard = "|- (p \\/ q) /\\ (q \\/ r) /\\ (r \\/ p) /\\ (p \\/ -q)";
  EXPECT_EQ(run({"--budget", "1", "decide", "--logic", "ab", hard}).code, 3);
  EXPECT_NE(run({"--budget", "1", "decide", "--logic", "ab", hard}).err.find("scenario budget exceeded"), std::string::npos);
  setenv("ALWB_SCENARIO_BUDGET", "1", 1);
  EXPECT_EQ(run({"decide", "--logic", "ab", hard}).code, 3);
  EXPECT_NE(run({"--budget", "100000", "decide", "--logic", "ab", hard}).code, 3);
  setenv("ALWB_SCENARIO_BUDGET", "zero", 1);
  EXPECT_EQ(run({"decide", "--logic", "ab", "|- p -> p"}).code, 3);
  unsetenv("ALWB_SCENARIO_BUDGET");
  EXPECT_EQ(run({"decide", "--logic", "ab", hard}).code, 1);
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds = {
      {"decide", "--logic", "pab", "p -> q, q \\/ f |- (p * q) \\/ -f"},
      {"--machine", "decide", "--logic", "luk", "p * q, ~r |- p /\\ (q -> r)"},
      {"approx", "--rule", "idcv", "--n", "2", "--logic", "pab"},
      {"decide", "--model", "Q@-1 x Q@0", "--bound", "3", "f \\/ p |- p"},
  };
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}
