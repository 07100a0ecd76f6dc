#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>

#include "hochlab/audit.hpp"
#include "hochlab/cosimplicial.hpp"
#include "hochlab/errors.hpp"
#include "hochlab/gerstenhaber.hpp"
#include "hochlab/hopf.hpp"
#include "hochlab/instances.hpp"
#include "hochlab/obstruction.hpp"

using namespace hochlab;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kWindow = 3 };

struct Options {
  std::string instance;
  int d = 5;
  int p_min = 0;  // 0 means "command default"
  int q_max = -1;
  int r_max = 3;
  std::size_t columns = 3;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string window;
  std::string x, y;
  bool fixing = false;
  bool poisson = false;
  bool json = false;
  std::string out;
};

class Reporter {
 public:
  explicit Reporter(const Options& o) : opt_(o) {}

  void text(const std::string& s) {
    if (!opt_.json) std::cout << s;
  }
  // Prints JSON with --json and writes <name>.json under --out.
  void emit(const std::string& name, const Json& j) {
    if (opt_.json) std::cout << j.dump(2) << "\n";
    if (!opt_.out.empty()) {
      std::filesystem::create_directories(opt_.out);
      std::ofstream f(std::filesystem::path(opt_.out) / (name + ".json"));
      if (!f) throw Error("cannot write to " + opt_.out);
      f << j.dump(2) << "\n";
    }
  }

 private:
  const Options& opt_;
};

void apply_window(Options& o) {
  if (o.window.empty()) return;
  std::regex p_re(R"(p\s*(?:>=|≥)\s*(-?\d+))"), q_re(R"(q\s*(?:<=|≤)\s*(-?\d+))");
  std::smatch m;
  bool any = false;
  if (std::regex_search(o.window, m, p_re)) o.p_min = std::stoi(m[1]), any = true;
  if (std::regex_search(o.window, m, q_re)) o.q_max = std::stoi(m[1]), any = true;
  if (!any) throw ParseError("window must look like 'p>=-4,q<=12'");
}

int p_min_or(const Options& o, int fallback) { return o.p_min != 0 ? o.p_min : fallback; }
int q_max_or(const Options& o, int fallback) { return o.q_max >= 0 ? o.q_max : fallback; }

Element find_any_arity(const GradedOperad& o, const std::string& label) {
  for (std::size_t n = 0; n <= o.max_arity(); ++n)
    if (auto e = o.find(n, label)) return *e;
  throw ParseError("no basis element labelled '" + label + "' in " + o.name());
}

std::string heading(const std::string& s) { return "== " + s + " ==\n"; }

// ---------------------------------------------------------------- commands

int run_cobar(const Options& o, Reporter& out) {
  auto h = build_so_hopf(o.d, o.fixing ? SoVariant::FixingSubgroup : SoVariant::Full);
  int p_min = p_min_or(o, -6), q_max = q_max_or(o, 12);
  CobarHomology ch = cobar_homology(h, p_min, q_max);
  DimTable dims;
  for (const auto& [b, c] : ch.cells)
    if (c.dimension) dims[b] = c.dimension;
  bool ok = true;
  Json euler = Json::array();
  for (const auto& [q, cx] : ch.complexes) {
    cx.validate();
    bool match = ch.chain_euler(q) == ch.homology_euler(q);
    ok = ok && match;
    euler.push_back({{"q", q}, {"chain", ch.chain_euler(q)}, {"homology", ch.homology_euler(q)}});
  }
  Json gens = Json::array();
  std::string gtext;
  for (const auto& g : cobar_generators(h, ch)) {
    gens.push_back({{"name", g.name}, {"hopf_generator", g.hopf_generator}, {"p", g.p}, {"q", g.q}});
    gtext += "  " + g.name + " = [" + g.hopf_generator + "] at (" + std::to_string(g.p) + "," +
             std::to_string(g.q) + ")\n";
  }
  out.text(heading("cobar homology of H_*(SO_" + std::to_string(o.fixing ? o.d - 1 : o.d) + ")"));
  out.text(render_grid(dims, p_min, 0, 0, q_max));
  out.text("generators:\n" + gtext);
  out.text(std::string("Euler characteristics per q: ") + (ok ? "match" : "MISMATCH") + "\n");
  out.emit("cobar", {{"d", o.d}, {"fixing_subgroup", o.fixing}, {"cells", to_json(dims)},
                     {"generators", gens}, {"euler", euler}, {"passed", ok}});
  return ok ? kOk : kCheckFailed;
}

int run_hochschild(const Options& o, Reporter& out) {
  std::string spec = o.instance.empty() ? "sphere:d=" + std::to_string(o.d) + ":A=6" : o.instance;
  MultiplicativeStructure m = instance_by_name(spec);
  std::size_t top = m.host->max_arity();
  int p_min = p_min_or(o, -static_cast<int>(top > 0 ? top - 1 : 0));
  int q_max = q_max_or(o, 16);
  auto hh = hochschild_homology(m, static_cast<std::size_t>(-p_min), q_max);
  DimTable dims;
  Json cells = Json::array();
  std::string ctext;
  for (const auto& [b, c] : hh.cells) {
    if (c.dimension == 0) continue;
    if (c.reliable) dims[b] = c.dimension;
    Json reps = Json::array();
    for (const auto& r : c.representatives) reps.push_back(m.host->format(r));
    cells.push_back({{"p", b.first}, {"q", b.second}, {"dim", c.dimension}, {"reliable", c.reliable},
                     {"representatives", reps}});
    ctext += "  (" + std::to_string(b.first) + "," + std::to_string(b.second) + ") dim " +
             std::to_string(c.dimension) + (c.reliable ? "" : " [edge]") + ": " +
             (c.representatives.empty() ? "" : m.host->format(c.representatives.front())) + "\n";
  }
  Json totals = Json::object();
  for (const auto& [t, n] : hh.dims_by_total_degree()) totals[std::to_string(t)] = n;
  out.text(heading("Hochschild homology of " + m.host->name()));
  out.text(render_grid(dims, p_min, 0, 0, q_max));
  out.text("classes:\n" + ctext);
  out.emit("hochschild", {{"instance", spec}, {"cells", cells}, {"totals", totals}, {"normalized", hh.normalized}});
  return kOk;
}

int run_bracket(const Options& o, Reporter& out) {
  if (o.poisson) {
    auto r = poisson_image_check(o.d);
    auto poisson = poisson_operad_small(o.d);
    const GradedOperad& p = *poisson;
    auto sphere = std::make_shared<SphereOperad>(o.d, 3);
    out.text(heading("Poisson image of {λ,λ}, d = " + std::to_string(o.d)));
    out.text("  {λ,λ} = " + p.format(r.source) + "\n  image = " + sphere->format(r.image) + "\n");
    out.text(std::string("  nonzero: ") + (r.nonzero ? "yes" : "no") +
             ", equals {α,α}: " + (r.matches_sphere_bracket ? "yes" : "no") +
             ", not a boundary: " + (r.not_a_boundary ? "yes" : "no") + "\n");
    out.emit("bracket", {{"d", o.d}, {"source", p.format(r.source)}, {"image", sphere->format(r.image)},
                         {"nonzero", r.nonzero}, {"matches_sphere_bracket", r.matches_sphere_bracket},
                         {"not_a_boundary", r.not_a_boundary}, {"passed", r.passed()}});
    return r.passed() ? kOk : kCheckFailed;
  }
  if (o.x.empty() || o.y.empty()) throw ParseError("bracket needs --x and --y (or --poisson)");
  std::string spec = o.instance.empty() ? "sphere:d=" + std::to_string(o.d) + ":A=4" : o.instance;
  MultiplicativeStructure m = instance_by_name(spec);
  const GradedOperad& op = *m.host;
  Element x = find_any_arity(op, o.x), y = find_any_arity(op, o.y);
  Element b = bracket(op, x, y);
  Json j{{"instance", spec}, {"x", o.x}, {"y", o.y}, {"bracket", op.format(b)}};
  out.text("{" + o.x + ", " + o.y + "} = " + op.format(b) + "\n");
  bool closed = b.arity() + 1 > op.max_arity() ? false : hochschild_differential(m, b).is_zero();
  j["delta_closed"] = closed;
  if (closed && !op.has_differential() && !b.is_zero() && b.arity() + 1 <= op.max_arity()) {
    auto hh = hochschild_homology(m, b.arity(), b.degree());
    bool boundary = hh.is_boundary(m, b);
    j["boundary"] = boundary;
    out.text(std::string("  δ-closed, ") + (boundary ? "a δ-boundary" : "not a δ-boundary") + "\n");
  } else {
    out.text(std::string("  δ-closed: ") + (closed ? "yes" : "no") + "\n");
  }
  out.emit("bracket", j);
  return kOk;
}

int run_e2(const Options& o, Reporter& out) {
  int p_min = p_min_or(o, -4), q_max = q_max_or(o, 12);
  FramedE2Check c = framed_e2_check(o.d, p_min, q_max);
  out.text(heading("framed sphere E², d = " + std::to_string(o.d)));
  out.text(render_grid(c.framed, p_min, 0, 0, q_max));
  out.text("convolution of sphere HH and cobar homology:\n");
  out.text(render_grid(c.expected, p_min, 0, 0, q_max));
  for (const auto& mm : c.mismatches) out.text("  mismatch " + mm + "\n");
  for (const auto& b : c.below_line)
    out.text("  below vanishing line: (" + std::to_string(b.first) + "," + std::to_string(b.second) + ")\n");
  out.text(std::string("tensor splitting: ") + (c.mismatches.empty() ? "pass" : "FAIL") +
           ", vanishing line: " + (c.below_line.empty() ? "pass" : "FAIL") + "\n");
  out.emit("e2", to_json(c));
  return c.passed() ? kOk : kCheckFailed;
}

int run_ss(const Options& o, Reporter& out) {
  std::string spec = o.instance.empty() ? "witness:m=2" : o.instance;
  MultiplicativeStructure m = instance_by_name(spec);
  int q_max = q_max_or(o, std::min(m.host->max_degree(o.columns), 24));
  auto sc = mcclure_smith(m, o.columns, q_max);
  DoubleComplex dc = hochschild_double_complex(sc, sc.has_codegeneracies);
  SpectralSequence ss(dc, o.r_max);
  Json pages = Json::array();
  int p_min = -static_cast<int>(o.columns);
  for (int r = 1; r <= o.r_max; ++r) {
    const BigradedPage& pg = ss.page(r);
    DimTable dims;
    Json cells = Json::array(), ranks = Json::array();
    for (const auto& [b, c] : pg.cells)
      if (c.dimension) {
        dims[b] = c.dimension;
        cells.push_back({{"p", b.first}, {"q", b.second}, {"dim", c.dimension}, {"reliable", c.reliable}});
      }
    std::string rtext;
    for (const auto& [b, rk] : pg.differential_rank)
      if (rk) {
        ranks.push_back({{"p", b.first}, {"q", b.second}, {"rank", rk}});
        rtext += "  d" + std::to_string(r) + " from (" + std::to_string(b.first) + "," + std::to_string(b.second) +
                 ") has rank " + std::to_string(rk) + "\n";
      }
    out.text(heading("E" + std::to_string(r) + " of " + m.host->name()));
    out.text(render_grid(dims, p_min, 0, 0, q_max));
    out.text(rtext);
    pages.push_back({{"r", r}, {"cells", cells}, {"differential_ranks", ranks}});
  }
  Json totals = Json::object();
  for (const auto& [t, n] : ss.total_homology_dims()) totals[std::to_string(t)] = n;
  out.emit("ss", {{"instance", spec}, {"columns", o.columns}, {"q_max", q_max}, {"pages", pages},
                  {"total_homology", totals}});
  return kOk;
}

int run_obstruction(const Options& o, Reporter& out) {
  std::string spec = o.instance.empty() ? "witness:m=2" : o.instance;
  ObstructionInput in = obstruction_input_by_name(spec);
  ObstructionResult r = obstruction(in);
  Json j = to_json(in, r);
  bool ok = r.cycle;
  out.text(heading("obstruction for " + in.name));
  const GradedOperad& op = *in.host;
  out.text("  h = " + op.format(r.h) + "\n  ξ = " + op.format(r.xi) + "\n  ω = " + op.format(r.omega) + "\n");
  out.text("  ω has " + std::to_string(r.omega.terms().size()) + " terms and is " + (r.cycle ? "" : "NOT ") +
           "a cycle\n");
  out.text(std::string("  verdict: class ") + (r.nonzero ? "nonzero" : "zero") + " in a quotient of dimension " +
           std::to_string(r.quotient_dim) + "\n");
  if (r.xi.is_zero()) {
    D2Comparison cmp = compare_with_d2(in);
    j["d2"] = to_json(cmp);
    ok = ok && cmp.equal;
    out.text(std::string("  d₂[g] = [ω]: ") + (cmp.equal ? "yes" : "NO") + "\n");
  }
  ChoiceReport choice = choice_independence(in, o.trials, o.seed);
  j["choices"] = to_json(choice);
  ok = ok && choice.passed();
  out.text("  choice independence over " + std::to_string(o.trials) + " trials: " +
           (choice.passed() ? "holds" : "FAILS") + "\n");
  for (const auto& n : choice.notes) out.text("    note: " + n + "\n");
  out.emit("obstruction", j);
  return ok ? kOk : kCheckFailed;
}

int run_audit(const Options& o, Reporter& out) {
  int p_min = p_min_or(o, -4), q_max = q_max_or(o, std::max(12, 2 * o.d - 2));
  AuditInput in = framed_audit_input(o.d, p_min, q_max);
  AuditReport rep = convergence_audit(in);
  out.text(heading("convergence audit, d = " + std::to_string(o.d)));
  out.text(render_grid(in.e2, p_min, 0, 0, q_max));
  for (const auto& f : rep.forced)
    out.text("  forced: d" + std::to_string(f.r) + " (" + std::to_string(f.source.first) + "," +
             std::to_string(f.source.second) + ") -> (" + std::to_string(f.target.first) + "," +
             std::to_string(f.target.second) + ")\n    " + f.reason + "\n");
  for (const auto& t : rep.inconclusive)
    out.text("  inconclusive: " + t.generator + " with " + std::to_string(t.candidates.size()) + " candidates\n");
  for (const auto& n : rep.notes) out.text("  note: " + n + "\n");
  Json j = to_json(rep);
  j["d"] = o.d;
  j["e2"] = to_json(in.e2);
  out.emit("audit", j);
  return rep.inconclusive.empty() ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- selftest

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success, otherwise the failure
};

std::vector<Check> selftest_checks() {
  std::vector<Check> checks;
  checks.push_back({"cobar d² = 0 and Euler characteristics", [] {
    for (int d : {5, 7})
      for (auto v : {SoVariant::Full, SoVariant::FixingSubgroup}) {
        auto ch = cobar_homology(build_so_hopf(d, v), -6, 14);
        for (const auto& [q, c] : ch.complexes) {
          c.validate();
          if (ch.chain_euler(q) != ch.homology_euler(q)) return "Euler mismatch at d=" + std::to_string(d);
        }
      }
    return std::string();
  }});
  checks.push_back({"operad axioms on all instances", [] {
    for (const char* spec : {"sphere:d=5:A=4", "poisson:d=5", "framed:d=5:A=3:Q=12", "witness:m=2",
                             "witness:m=2:padded", "witness:m=2:nonassoc"}) {
      auto m = instance_by_name(spec);
      auto r = check_operad_axioms(*m.host, 0);
      if (!r.passed) return std::string(spec) + ": " + r.failures.front();
    }
    return std::string();
  }});
  checks.push_back({"cosimplicial identities and double complexes", [] {
    for (const char* spec : {"sphere:d=5:A=4", "poisson:d=5", "framed:d=5:A=3:Q=10", "witness:m=2"}) {
      auto m = instance_by_name(spec);
      auto c = mcclure_smith(m, 3, std::min(m.host->max_degree(3), 18));
      auto v = c.check_identities();
      if (!v.empty()) return std::string(spec) + ": " + v.front();
      hochschild_double_complex(c, c.has_codegeneracies).validate();
    }
    return std::string();
  }});
  checks.push_back({"sphere Hochschild homology d = 5", [] {
    auto hh = hochschild_homology(sphere_structure(5, 6), 5, 16);
    std::map<std::pair<int, int>, std::size_t> expect{{{0, 0}, 1}, {{-2, 4}, 1}, {{-3, 8}, 1}, {{-4, 8}, 1}, {{-5, 12}, 1}};
    return hh.dims() == expect ? std::string() : std::string("unexpected bigraded dimensions");
  }});
  checks.push_back({"Gerstenhaber identities", [] {
    for (int d : {5, 7}) {
      auto r = check_gerstenhaber(sphere_structure(d, 4), 4);
      if (!r.passed) return r.failures.front();
    }
    for (int d : {5, 7})
      if (!poisson_image_check(d).passed()) return "Poisson image check failed at d=" + std::to_string(d);
    return std::string();
  }});
  checks.push_back({"framed E² splitting", [] {
    auto c = framed_e2_check(5, -4, 12);
    return c.passed() ? std::string() : (c.mismatches.empty() ? "vanishing line" : c.mismatches.front());
  }});
  checks.push_back({"convergence audit", [] {
    for (int d : {5, 7}) {
      int m = (d - 1) / 2;
      auto rep = convergence_audit(framed_audit_input(d, -4, std::max(12, 2 * d - 2)));
      if (rep.forced.size() != 1 || rep.forced[0].r != 2 || rep.forced[0].source != Bidegree{-1, 4 * m - 1})
        return "unexpected audit result at d=" + std::to_string(d);
    }
    return std::string();
  }});
  checks.push_back({"obstruction on witness operads", [] {
    for (int m : {2, 3}) {
      auto in = witness_input(m);
      auto r = obstruction(in);
      if (!r.cycle || !r.nonzero) return "ω wrong at m=" + std::to_string(m);
      if (!compare_with_d2(in).equal) return "d₂ comparison failed at m=" + std::to_string(m);
    }
    if (!choice_independence(witness_input(2, WitnessVariant::Padded), 10).passed()) return std::string("choices");
    return std::string();
  }});
  checks.push_back({"formality baseline", [] {
    for (const char* spec : {"sphere:d=5", "poisson:d=5", "framed:d=5", "framed:d=7"}) {
      auto r = obstruction(obstruction_input_by_name(spec));
      if (r.nonzero || !r.omega.is_zero()) return std::string(spec) + " gave ω ≠ 0";
    }
    return std::string();
  }});
  return checks;
}

int run_selftest(const Options&, Reporter& out) {
  Json results = Json::array();
  std::string first_failure;
  for (const auto& c : selftest_checks()) {
    std::string err;
    try {
      err = c.run();
    } catch (const std::exception& e) {
      err = e.what();
    }
    out.text((err.empty() ? "PASS " : "FAIL ") + c.name + (err.empty() ? "" : ": " + err) + "\n");
    results.push_back({{"check", c.name}, {"passed", err.empty()}, {"detail", err}});
    if (!err.empty() && first_failure.empty()) first_failure = c.name;
  }
  out.emit("selftest", {{"checks", results}, {"first_failure", first_failure}});
  if (!first_failure.empty()) {
    std::cerr << "selftest failed: " << first_failure << "\n";
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hochschild homology, brackets and formality obstructions of small operads"};
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--instance", o.instance, "Instance such as sphere:d=5:A=6 or witness:m=2:padded");
  app.add_option("--d", o.d, "Odd dimension d")->check(CLI::Range(3, 15));
  app.add_option("--p-min", o.p_min, "Leftmost column p of the window");
  app.add_option("--q-max", o.q_max, "Top internal degree of the window");
  app.add_option("--window", o.window, "Window as 'p>=-4,q<=12'");
  app.add_option("--r-max", o.r_max, "Last spectral-sequence page")->check(CLI::Range(1, 20));
  app.add_option("--columns", o.columns, "Number of cosimplicial columns")->check(CLI::Range(1, 8));
  app.add_option("--trials", o.trials, "Random choices for independence checks");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Directory for JSON reports");
  app.add_flag("--json", o.json, "Print JSON instead of text");

  auto* cobar = app.add_subcommand("cobar", "Cobar homology tables of H_*(SO_d)");
  cobar->add_flag("--fixing", o.fixing, "Use SO_{d-1}");
  app.add_subcommand("hochschild", "Hochschild homology tables and generators");
  auto* br = app.add_subcommand("bracket", "Gerstenhaber bracket of named basis elements");
  br->add_option("--x", o.x, "First element label");
  br->add_option("--y", o.y, "Second element label");
  br->add_flag("--poisson", o.poisson, "Check the image of {λ,λ} under the Poisson inclusion");
  app.add_subcommand("e2", "Framed E² against the tensor product of sphere HH and cobar homology");
  app.add_subcommand("ss", "Spectral-sequence pages and differentials");
  app.add_subcommand("obstruction", "Obstruction class [ω] with d₂ and choice checks");
  app.add_subcommand("audit", "Convergence audit of the framed spectral sequence");
  app.add_subcommand("selftest", "Run every module's invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::map<std::string, std::function<int(const Options&, Reporter&)>> commands{
      {"cobar", run_cobar},   {"hochschild", run_hochschild},   {"bracket", run_bracket}, {"e2", run_e2},
      {"ss", run_ss},         {"obstruction", run_obstruction}, {"audit", run_audit},     {"selftest", run_selftest}};
  std::string name = app.get_subcommands().front()->get_name();
  try {
    apply_window(o);
    Reporter out(o);
    return commands.at(name)(o, out);
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const WindowBoundary& e) {
    std::cerr << "window too small: " << e.what() << "\n";
    return kWindow;
  } catch (const LiftFailure& e) {
    std::cerr << "lift failure: " << e.what() << "\n";
    return kWindow;
  } catch (const ArityOverflow& e) {
    std::cerr << "truncation exceeded: " << e.what() << "\n";
    return kWindow;
  } catch (const std::exception& e) {
    std::cerr << name << " failed: " << e.what() << "\n";
    return kCheckFailed;
  }
}
