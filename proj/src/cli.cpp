#include "collapse/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "collapse/cursor.hpp"
#include "collapse/gamma.hpp"
#include "collapse/morphisms.hpp"

namespace collapse {

namespace {

const char* ordering_word(std::strong_ordering c) {
  return c < 0 ? "LT" : c > 0 ? "GT" : "EQ";
}

// Without `capped` the count alone bounds the search.
std::vector<Elem> members_or_throw(const PsiSystem& p, std::size_t count, bool capped = true) {
  auto ms = capped ? p.enumerate_members(count, p.caps().max_l) : p.enumerate_members(count);
  if (ms.size() < count)
    throw BudgetExhausted("only " + std::to_string(ms.size()) + " members with l <= " +
                          std::to_string(p.caps().max_l));
  return ms;
}

int report(std::ostream& out, const CheckReport& r) {
  out << r.summary() << '\n';
  return r.ok() ? kPass : kViolation;
}

}  // namespace

std::string export_fragment(const SystemSpec& spec, bool plus) {
  auto p = spec.build();
  std::vector<Elem> terms;
  if (plus) {
    terms = p->enumerate_plus(false);
    if (terms.size() > spec.budgets.count) terms.resize(spec.budgets.count);
  } else {
    terms = members_or_throw(*p, spec.budgets.count);
  }
  std::unordered_map<Elem, std::size_t, ElemHash> index;
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Elem& t = terms[i];
    nlohmann::ordered_json rec;
    rec["idx"] = i;
    rec["term"] = p->to_string(t);
    std::string alpha;
    write_ordinal(alpha, PsiSystem::alpha(t));
    rec["alpha"] = alpha;
    auto kids = nlohmann::ordered_json::array();
    for (const auto& c : PsiSystem::children(t)) {
      auto it = index.find(c);
      if (it == index.end()) throw InvariantViolation("child exported after its parent");
      kids.push_back(it->second);
    }
    rec["children"] = kids;
    rec["member"] = p->member(t);
    out += rec.dump();
    out += '\n';
    index.emplace(t, i);
  }
  return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"collapse: coded dilators, Gamma(X), psi term systems and their collapses"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized suites");

  std::string system = "nu=w+1,dil=omega";
  std::string grammar = "psi";
  std::size_t x_size = 2;
  std::vector<std::string> terms;
  auto context = [&] {
    TermContext c{finite_order(static_cast<std::int64_t>(x_size)), nullptr};
    if (parse_grammar(grammar) == Grammar::Psi) c.psi = parse_system_spec(system).build();
    return c;
  };

  auto* cmp = app.add_subcommand("compare", "Compare two terms: LT, EQ or GT");
  cmp->add_option("--system", system, "Psi system, e.g. nu=w+1,dil=omega");
  cmp->add_option("--grammar", grammar, "psi | gamma | word")->check(CLI::IsMember({"psi", "gamma", "word"}));
  cmp->add_option("--x-size", x_size, "Size of the finite order for gamma variables and word letters");
  cmp->add_option("terms", terms, "Two terms")->expected(2)->required();

  auto* mem = app.add_subcommand("member", "Decide membership of a term");
  mem->add_option("--system", system, "Psi system");
  mem->add_option("--grammar", grammar, "psi | gamma")->check(CLI::IsMember({"psi", "gamma"}));
  mem->add_option("--x-size", x_size, "Size of the finite order for gamma variables");
  mem->add_option("term", terms, "Term")->expected(1)->required();

  bool plus = false;
  bool sorted = false;
  auto* en = app.add_subcommand("enumerate", "List members in generation order");
  en->add_option("--system", system, "Psi system with budgets");
  en->add_flag("--plus", plus, "List all of psi+ within max-l, marking members");
  en->add_flag("--sorted", sorted, "Sort members by the psi order");

  std::string dil = "omega";
  std::size_t max_order = 4, budget = 6;
  auto* laws = app.add_subcommand("laws", "Exhaustive predilator law suite");
  laws->add_option("--dilator", dil, "omega | affine:<n> | gamma:<n> | compose(<d>,<d>)");
  laws->add_option("--max-order", max_order, "Largest finite order checked");
  laws->add_option("--budget", budget, "Payload budget");

  std::size_t width = 12, samples = 0;
  auto* rc = app.add_subcommand("range-check", "Range condition, pi embedding and E facts on a fragment");
  rc->add_option("--system", system, "Psi system with budgets");
  rc->add_option("--width", width, "Points used as supports in the grid");
  rc->add_option("--random", samples, "Extra seeded random (level, element) pairs");

  std::size_t y_size = 3;
  std::size_t count = 200;
  auto* xo = app.add_subcommand("crosscheck-omega", "psi_1(affine) against omega(Y) as a 1-collapse");
  xo->add_option("--y-size", y_size, "Size of Y");
  xo->add_option("--count", count, "Number of psi members");

  std::size_t sigmas = 100, points = 50, max_points = 60, bh_budget = 4;
  auto* bb = app.add_subcommand("bridge-bh", "Bachmann-Howard collapse from psi_1(omega o affine) and back");
  bb->add_option("--y-size", y_size, "Size of Y");
  bb->add_option("--sigmas", sigmas, "Elements of D checked");
  bb->add_option("--points", points, "Members used as supports");
  bb->add_option("--budget", bh_budget, "Payload budget for saturation");
  bb->add_option("--max-points", max_points, "Saturation stops after this many points");

  std::string from = "nu=2,dil=omega", to = "nu=w,dil=omega";
  auto* em = app.add_subcommand("embed", "Initial embedding between two psi systems with nu contained in nu'");
  em->add_option("--from", from, "Source system");
  em->add_option("--to", to, "Target system");
  em->add_option("--count", count, "Number of source members");

  std::string path;
  auto* ex = app.add_subcommand("export", "Write a fragment as JSON lines");
  ex->add_option("--system", system, "Psi system with budgets (count=...)");
  ex->add_option("--out", path, "Output file; stdout if omitted");
  ex->add_flag("--plus", plus, "Include non-members of psi+");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*cmp) {
      auto c = context();
      auto g = parse_grammar(grammar);
      Elem a = parse_term(g, terms[0], c), b = parse_term(g, terms[1], c);
      std::strong_ordering r = std::strong_ordering::equal;
      if (g == Grammar::Psi) r = c.psi->compare(a, b);
      else if (g == Grammar::Gamma) r = gamma::compare(*c.points, a, b);
      else r = word_order(c.points)->compare(a, b);
      out << ordering_word(r) << '\n';
      return kPass;
    }
    if (*mem) {
      auto c = context();
      if (parse_grammar(grammar) == Grammar::Gamma) {
        Elem t = parse_term(Grammar::Gamma, terms[0], c);
        out << (gamma::is_member(*c.points, t) ? "member" : "not member") << '\n';
        return kPass;
      }
      Elem t = parse_term(Grammar::Psi, terms[0], c);
      out << (c.psi->member(t) ? "member" : "not member") << '\n';
      return kPass;
    }
    if (*en) {
      auto spec = parse_system_spec(system);
      auto p = spec.build();
      std::vector<Elem> ts;
      if (plus) {
        ts = p->enumerate_plus(false);
        if (ts.size() > spec.budgets.count) ts.resize(spec.budgets.count);
      } else {
        ts = members_or_throw(*p, spec.budgets.count);
        if (sorted)
          std::sort(ts.begin(), ts.end(), [&](const Elem& a, const Elem& b) { return p->less(a, b); });
      }
      for (const auto& t : ts) {
        out << p->to_string(t);
        if (plus) out << (p->member(t) ? " member" : " not-member");
        out << '\n';
      }
      return kPass;
    }
    if (*laws) {
      auto d = parse_dilator(dil);
      auto r = check_predilator_laws(*d, max_order, budget, true);
      out << r.summary() << '\n';
      return r.ok() ? kPass : kViolation;
    }
    if (*rc) {
      auto spec = parse_system_spec(system);
      auto p = spec.build();
      auto ms = members_or_throw(*p, spec.budgets.count);
      auto levels = p->levels();
      auto grid = range_grid(*p, ms, levels, width, 3, 200);
      if (samples > 0) {
        std::mt19937_64 rng(seed);
        std::vector<Elem> pts = ms;
        sort_unique(p->order(), pts);
        for (std::size_t i = 0; i < samples; ++i) {
          std::vector<Elem> pick;
          for (std::size_t j = 0; j < 3; ++j) pick.push_back(pts[rng() % pts.size()]);
          sort_unique(p->order(), pick);
          auto raws = p->dilator().enumerate(p->order(), pick, 2);
          if (raws.empty()) continue;
          grid.emplace_back(levels[rng() % levels.size()],
                            normal_form(p->dilator(), p->order(), raws[rng() % raws.size()]));
        }
      }
      std::vector<DilElem> taus;
      for (const auto& g : grid) taus.push_back(g.second);
      int code = kPass;
      code |= report(out, check_range_condition(*p, grid));
      code |= report(out, check_pi_embedding(*p, ms));
      code |= report(out, check_e_basic(*p, ms, levels, taus));
      return code ? kViolation : kPass;
    }
    if (*xo) {
      auto y = finite_order(static_cast<std::int64_t>(y_size));
      auto p = make_psi_system(finite_order(1), affine_dilator(y));
      auto w = omega_one_collapse(y);
      LevelMap id = [](const Elem& a) { return a; };
      InitialEmbedding f(id, p, w), g(id, w, p);
      auto ms = members_or_throw(*p, count, false);
      for (const auto& t : ms) {
        Elem u = f(t);
        if (g(u) != t || !f.square_commutes(t) || !g.square_commutes(u)) {
          out << "isomorphism fails at " << p->to_string(t) << '\n';
          return kViolation;
        }
      }
      out << "isomorphism confirmed on " << ms.size() << " members\n";
      return kPass;
    }
    if (*bb) {
      auto d = affine_dilator(finite_order(static_cast<std::int64_t>(y_size)));
      auto h = make_psi_system(finite_order(1), compose(omega_dilator(), d));
      auto bh = bh_theta(h, d);
      auto pts = members_or_throw(*h, points, false);
      std::vector<DilElem> sample;
      for (const auto& raw : d->enumerate(h->order(), pts, bh_budget)) {
        if (sample.size() == sigmas) break;
        sample.push_back(normal_form(*d, h->order(), raw));
      }
      int code = report(out, check_bh_collapse(*bh, sample));
      auto oc = bh_to_one_collapse(bh, bh_budget, max_points);
      out << "fragment: " << oc->points().size() << " points, "
          << (oc->closed() ? "closed" : "open") << '\n';
      if (oc->defect()) {
        out << "defect: " << *oc->defect() << '\n';
        code = kViolation;
      }
      code |= report(out, check_range_condition(*oc, range_grid(*oc, oc->points(), {Elem::nat(0)},
                                                                 oc->points().size(), bh_budget, 400)));
      return code ? kViolation : kPass;
    }
    if (*em) {
      auto src = parse_system_spec(from).build();
      auto dst = parse_system_spec(to).build();
      for (const auto& a : src->levels())
        if (!dst->nu().contains(a)) throw ValidationError("source levels must lie in the target nu");
      LevelMap id = [](const Elem& a) { return a; };
      InitialEmbedding f(id, src, dst);
      auto ms = members_or_throw(*src, count);
      std::sort(ms.begin(), ms.end(), [&](const Elem& a, const Elem& b) { return src->less(a, b); });
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!f.square_commutes(ms[i]) || (i > 0 && !dst->less(f(ms[i - 1]), f(ms[i])))) {
          out << "embedding fails at " << src->to_string(ms[i]) << '\n';
          return kViolation;
        }
      }
      out << "embedding confirmed on " << ms.size() << " members\n";
      return kPass;
    }
    if (*ex) {
      auto text = export_fragment(parse_system_spec(system), plus);
      if (path.empty()) {
        out << text;
      } else {
        std::ofstream f(path, std::ios::binary);
        if (!(f << text)) throw std::runtime_error("cannot write " + path);
      }
      return kPass;
    }
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const LawViolation& e) {
    out << "violation: " << e.what() << '\n';
    return kViolation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace collapse
