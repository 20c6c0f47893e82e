#include <gtest/gtest.h>

#include <sstream>

#include "collapse/cli.hpp"
#include "collapse/gamma.hpp"

using namespace collapse;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Text, GammaTerms) {
  TermContext ctx{finite_order(2), nullptr};
  auto x = ctx.points;
  Elem t = parse_term(Grammar::Gamma, "pv(0,0)", ctx);
  EXPECT_EQ(t, gamma::pv(*x, gamma::zero(), gamma::zero()));
  EXPECT_EQ(print_term(Grammar::Gamma, gamma::nat(3), ctx), "n:3");
  EXPECT_EQ(parse_term(Grammar::Gamma, "n:3", ctx), gamma::nat(3));
  EXPECT_THROW(parse_term(Grammar::Gamma, "pv(G(x0),0)", ctx), ValidationError);
  EXPECT_THROW(parse_term(Grammar::Gamma, "pv(0,", ctx), ParseError);
  EXPECT_THROW(parse_term(Grammar::Gamma, "G(x2)", ctx), std::invalid_argument);
}

TEST(Text, PsiTermsNeedTheirLevel) {
  auto spec = parse_system_spec("nu=w+1,dil=omega");
  TermContext ctx{finite_order(2), spec.build()};
  Elem t = parse_term(Grammar::Psi, "p[w]({}; w[])", ctx);
  EXPECT_EQ(print_term(Grammar::Psi, t, ctx), "p[w]({};w[])");
  TermContext omega_only{finite_order(2), parse_system_spec("nu=w,dil=omega").build()};
  EXPECT_THROW(parse_term(Grammar::Psi, "p[w]({}; w[])", omega_only), ValidationError);
}

TEST(Text, SystemSpecs) {
  auto spec = parse_system_spec("nu=3,dil=compose(omega,affine:2),max-l=5,count=7", Budgets{});
  EXPECT_EQ(spec.budgets.max_l, 5u);
  EXPECT_EQ(spec.budgets.count, 7u);
  EXPECT_TRUE(spec.nu->contains(Elem::nat(2)));
  EXPECT_FALSE(spec.nu->contains(Elem::nat(3)));
  EXPECT_NE(parse_dilator("gamma:2"), nullptr);
  EXPECT_THROW(parse_dilator("sigma"), std::invalid_argument);
  EXPECT_THROW(parse_system_spec("dil=omega,bogus=1"), std::invalid_argument);
  EXPECT_EQ(parse_grammar("word"), Grammar::Word);
}

TEST(Cli, Compare) {
  auto r = run({"compare", "--grammar", "gamma", "--x-size", "2", "pv(0,0)", "G(x1)"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.out, "LT\n");
  r = run({"compare", "--system", "nu=2,dil=omega", "p[1]({};w[])", "p[0]({p[1]({};w[])};w[0])"});
  EXPECT_EQ(r.out, "GT\n");
}

TEST(Cli, Member) {
  auto r = run({"member", "--system", "nu=2,dil=omega", "p[0]({p[0]({p[1]({};w[])};w[0])};w[0])"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.out, "not member\n");
  r = run({"member", "--system", "nu=2,dil=omega", "p[0]({p[1]({};w[])};w[0])"});
  EXPECT_EQ(r.out, "member\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"compare", "--grammar", "gamma", "pv(0,"}).code, kUsage);
  EXPECT_EQ(run({"embed", "--from", "nu=2,dil=omega", "--to", "nu=1,dil=omega"}).code, kUsage);
  EXPECT_EQ(run({"enumerate", "--system", "nu=1,dil=omega,max-l=1,count=50"}).code, kBudget);
  EXPECT_EQ(run({"laws", "--dilator", "affine:2", "--max-order", "3", "--budget", "4"}).code, kPass);
  EXPECT_EQ(run({"embed", "--from", "nu=2,dil=omega", "--to", "nu=w,dil=omega", "--count", "30"}).code,
            kPass);
  EXPECT_EQ(run({"range-check", "--system", "nu=2,dil=omega,count=40", "--width", "4"}).code, kPass);
}

TEST(Cli, EnumerateSorted) {
  auto r = run({"enumerate", "--sorted", "--system", "nu=2,dil=omega,count=3"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.out, "p[0]({};w[])\np[0]({p[0]({};w[])};w[0])\np[1]({};w[])\n");
}

TEST(Cli, ExportLeastMember) {
  auto spec = parse_system_spec("nu=2,dil=omega,count=1", Budgets{});
  auto line = export_fragment(spec);
  const std::string expected =
      R"j({"idx":0,"term":"p[0]({};w[])","alpha":"0","children":[],"member":true})j" "\n";
  EXPECT_EQ(line, expected);
  EXPECT_EQ(export_fragment(spec), line);
  auto r = run({"export", "--system", "nu=2,dil=omega,count=1"});
  EXPECT_EQ(r.out, line);
}
