// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "collapse/cli.hpp"
#include "collapse/gamma.hpp"
#include "collapse/gamma_checks.hpp"
#include "collapse/morphisms.hpp"
#include "collapse/psi.hpp"
#include "collapse/text.hpp"
#include "support/mutants.hpp"

using namespace collapse;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (pass && !ok) {
      pass = false;
      detail = what;
    }
  }
  void require(const CheckReport& r) { require(r.ok(), r.summary()); }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) o.require(false, "exceeded " + std::to_string(limit_s) + " s");
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.precision(2);
  line << std::fixed << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " ["
       << secs << " s] " << o.detail;
  std::cout << line.str() << std::endl;
}

Outcome laws() {
  Outcome o;
  struct Case {
    DilatorPtr d;
    std::size_t budget;
  };
  std::vector<Case> cases = {
      {omega_dilator(), 6},
      {affine_dilator(finite_order(1)), 6},
      {affine_dilator(finite_order(2)), 6},
      {affine_dilator(finite_order(3)), 6},
      {compose(omega_dilator(), affine_dilator(finite_order(2))), 6},
      {gamma::dilator(2), 3},
  };
  for (const auto& c : cases) {
    auto r = check_predilator_laws(*c.d, 4, c.budget);
    o.require(r.ok(), r.summary());
    o.note(c.d->name() + " " + std::to_string(r.checks));
  }
  return o;
}

Outcome gamma_order() {
  Outcome o;
  auto x = finite_order(2);
  auto pts = finite_points(2);
  auto ms = gamma::enumerate_members(*x, pts, 5, 2);
  gamma::Fragment f(x, ms);
  auto audit = f.audit();
  o.require(audit.ok(), "linearity: " + audit.counterexample.value_or(""));
  o.note(std::to_string(f.size()) + " terms linearly ordered");
  auto r = gamma::check_veblen(*x, ms, {5, 10000, 7});
  o.require(r);
  o.note(r.summary());
  return o;
}

Outcome gamma_arith() {
  Outcome o;
  auto x = finite_order(2);
  auto pts = finite_points(2);
  auto ms = gamma::enumerate_members(*x, pts, 4, 2);
  auto r = gamma::check_arithmetic(*x, ms, {4, 10000, 11});
  o.require(r);
  o.note(r.summary());
  return o;
}

struct PsiCase {
  std::string label;
  OrderPtr nu;
  DilatorPtr d;
  PsiCaps caps;
};

std::vector<PsiCase> psi_cases() {
  return {
      {"(1,affine(2))", finite_order(1), affine_dilator(finite_order(2)), {}},
      {"(2,omega)", finite_order(2), omega_dilator(), {}},
      {"(w+1,omega)", ordinal_order(1, 1), omega_dilator(), {}},
      {"(2,Gamma)", finite_order(2), gamma::dilator(2), {9, 1, 1}},
  };
}

Outcome psi_conformance() {
  Outcome o;
  for (const auto& c : psi_cases()) {
    auto p = make_psi_system(c.nu, c.d, c.caps);
    auto ms = p->enumerate_members(300);
    o.require(ms.size() == 300, c.label + ": fewer than 300 members");
    auto plus = p->enumerate_plus(false);
    auto audit = audit_linear_order(plus, [&](const Elem& a, const Elem& b) { return p->compare(a, b); });
    o.require(audit.ok(), c.label + " order: " + audit.counterexample.value_or(""));
    o.require(check_pi_embedding(*p, ms));
    auto levels = p->levels();
    auto grid = range_grid(*p, ms, levels, 12, 3, 200);
    for (const auto& m : ms) grid.push_back(p->pi(m));
    auto ext = extension_grid(*p, ms, levels, 1, 2);
    grid.insert(grid.end(), ext.begin(), ext.end());
    auto rc = check_range_condition(*p, grid);
    o.require(rc);
    std::vector<DilElem> taus;
    for (const auto& g : grid) taus.push_back(g.second);
    auto eb = check_e_basic(*p, ms, levels, taus);
    o.require(eb);
    o.note(c.label + ": " + std::to_string(plus.size()) + " terms l<=9, " +
           std::to_string(rc.checks) + " range, " + std::to_string(eb.checks) + " E");
  }
  return o;
}

Outcome cross_oracle() {
  Outcome o;
  auto y = finite_order(3);
  auto p = make_psi_system(finite_order(1), affine_dilator(y));
  auto w = omega_one_collapse(y);
  LevelMap id = [](const Elem& a) { return a; };
  InitialEmbedding f(id, p, w), g(id, w, p);
  auto ms = p->enumerate_members(200);
  o.require(ms.size() == 200, "fewer than 200 members");
  std::unordered_set<Elem, ElemHash> hit;
  for (const auto& t : ms) {
    Elem u = f(t);
    hit.insert(u);
    o.require(g(u) == t, "g(f(t)) != t at " + p->to_string(t));
    o.require(f.square_commutes(t) && g.square_commutes(u), "square fails at " + p->to_string(t));
  }
  // the first 200 words in the order of omega(Y), mapped back
  auto words = w->order().enumerate(16);
  sort_unique(w->order(), words);
  if (words.size() > 200) words.resize(200);
  for (const auto& u : words) o.require(f(g(u)) == u, "f(g(w)) != w at " + debug_string(u));
  std::size_t short_words = 0;
  for (const auto& u : w->order().enumerate(16)) {
    if (u.arity() > 3) continue;
    ++short_words;
    o.require(hit.count(u) > 0, "word of length <= 3 missed: " + debug_string(u));
  }
  o.require(short_words == 20, "expected 20 words of length <= 3");
  o.note("200 members and " + std::to_string(words.size()) + " words round-trip; " +
         std::to_string(short_words) + " short words hit");
  return o;
}

Outcome monotone_embedding() {
  Outcome o;
  auto src = make_psi_system(finite_order(2), omega_dilator());
  auto dst = make_psi_system(ordinal_order(1, 0), omega_dilator());
  LevelMap id = [](const Elem& a) { return a; };
  InitialEmbedding f(id, src, dst);
  auto ms = src->sorted_members(200);
  o.require(ms.size() == 200, "fewer than 200 terms");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    o.require(f.square_commutes(ms[i]), "square fails at " + src->to_string(ms[i]));
    if (i > 0)
      o.require(dst->less(f(ms[i - 1]), f(ms[i])), "not increasing at " + src->to_string(ms[i]));
  }
  o.note("200 terms, " + std::to_string(f.computed()) + " images");
  return o;
}

std::vector<DilElem> bh_sample(const PsiSystem& h, const Predilator& d) {
  auto pts = h.enumerate_members(50);
  std::vector<DilElem> out;
  for (const auto& raw : d.enumerate(h.order(), pts, 4)) {
    if (out.size() == 100) break;
    out.push_back(normal_form(d, h.order(), raw));
  }
  return out;
}

Outcome bh_bridge() {
  Outcome o;
  auto d = affine_dilator(finite_order(2));
  auto h = make_psi_system(finite_order(1), compose(omega_dilator(), d));
  auto bh = bh_theta(h, d);
  auto sample = bh_sample(*h, *d);
  o.require(sample.size() == 100, "fewer than 100 elements of D");
  auto r = check_bh_collapse(*bh, sample);
  o.require(r);
  for (const auto& s : sample) {
    auto back = bh->theta_inverse(bh->theta(s));
    o.require(back && *back == s, "theta not invertible");
  }
  auto oc = bh_to_one_collapse(bh, 4, 60);
  o.require(!oc->defect(), oc->defect().value_or(""));
  auto pts = oc->points();
  auto rc = check_range_condition(*oc, range_grid(*oc, pts, {Elem::nat(0)}, pts.size(), 4, 400));
  o.require(rc);
  o.note(r.summary() + "; fragment " + std::to_string(pts.size()) + " points, " + rc.summary());
  return o;
}

Outcome mutants() {
  Outcome o;
  testing::ReversedOmega rev;
  auto lr = check_predilator_laws(rev, 4, 6);
  o.require(!lr.ok() && lr.violation, "reversed omega not caught");
  o.note("reversed omega: " + lr.violation.value_or(""));

  auto d = affine_dilator(finite_order(2));
  auto h = make_psi_system(finite_order(1), compose(omega_dilator(), d));
  auto sample = bh_sample(*h, *d);
  auto bad = constant_theta(bh_theta(h, d), h->sorted_members(1).front());
  auto br = check_bh_collapse(*bad, sample);
  o.require(!br.ok(), "constant theta not caught");
  o.note("constant theta: " + br.violation.value_or(""));

  auto p = make_psi_system(finite_order(2), omega_dilator(), {}, true);
  auto ms = p->enumerate_members(300);
  auto rc = check_range_condition(*p, extension_grid(*p, ms, p->levels(), 1, 2));
  o.require(!rc.ok(), "dropped union not caught");
  o.note("dropped union: " + rc.violation.value_or(""));
  return o;
}

Outcome cli() {
  Outcome o;
  std::size_t n = 0;
  auto round = [&](Grammar g, const TermContext& ctx, const std::vector<Elem>& ts, std::size_t limit) {
    for (std::size_t i = 0; i < ts.size() && i < limit; ++i) {
      ++n;
      auto text = print_term(g, ts[i], ctx);
      Elem back = parse_term(g, text, ctx);
      o.require(back == ts[i] && print_term(g, back, ctx) == text, "roundtrip fails on " + text);
    }
  };
  auto x = finite_order(3);
  auto psi_w = make_psi_system(ordinal_order(1, 1), omega_dilator());
  round(Grammar::Psi, {x, psi_w}, psi_w->enumerate_plus(false), 500);
  auto psi_g = make_psi_system(finite_order(2), gamma::dilator(2), {9, 1, 1});
  round(Grammar::Psi, {x, psi_g}, psi_g->enumerate_plus(false), 150);
  auto psi_a = make_psi_system(finite_order(1), affine_dilator(finite_order(2)));
  round(Grammar::Psi, {x, psi_a}, psi_a->enumerate_members(50), 50);
  auto pts = finite_points(3);
  round(Grammar::Gamma, {x, nullptr}, gamma::enumerate_members(*x, pts, 3, 2), 250);
  round(Grammar::Word, {x, nullptr}, word_order(x)->enumerate(12), 100);
  o.require(n >= 1000, "only " + std::to_string(n) + " terms round-tripped");
  o.note(std::to_string(n) + " terms round-trip");

  auto dir = std::filesystem::temp_directory_path() / "collapse-acceptance";
  std::filesystem::create_directories(dir);
  std::string a = (dir / "a.jsonl").string(), b = (dir / "b.jsonl").string();
  std::ostringstream sink;
  for (const auto& path : {a, b}) {
    int rc = run_command({"export", "--system", "nu=w+1,dil=omega,count=300", "--out", path}, sink, sink);
    o.require(rc == 0, "export exit code " + std::to_string(rc));
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::string ea = slurp(a), eb = slurp(b);
  o.require(!ea.empty() && ea == eb, "exports differ");
  o.require(ea.find('\r') == std::string::npos && ea.find(" \n") == std::string::npos,
            "export has CR or trailing whitespace");
  std::size_t lines = static_cast<std::size_t>(std::count(ea.begin(), ea.end(), '\n'));
  o.require(lines == 300, "expected 300 export lines");
  auto one = export_fragment(parse_system_spec("nu=w+1,dil=omega,count=1"));
  o.require(one.find(psi_w->to_string(psi_w->sorted_members(1).front())) != std::string::npos &&
                std::count(one.begin(), one.end(), '\n') == 1,
            "count=1 export is not the least member");
  o.note("export of " + std::to_string(lines) + " records identical across runs");
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  criterion(1, "predilator laws", 60, laws);
  criterion(2, "Gamma order axioms and Veblen battery", 60, gamma_order);
  criterion(3, "Gamma arithmetic", 0, gamma_arith);
  criterion(4, "psi-system conformance", 120, psi_conformance);
  criterion(5, "psi_1(affine(3)) against omega(3)", 0, cross_oracle);
  criterion(6, "monotone embedding psi_2(omega) -> psi_w(omega)", 0, monotone_embedding);
  criterion(7, "Bachmann-Howard bridge", 0, bh_bridge);
  criterion(8, "fault detection", 0, mutants);
  criterion(9, "CLI roundtrip and export determinism", 0, cli);
  return failures == 0 ? 0 : 1;
}
