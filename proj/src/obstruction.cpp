#include "hochlab/obstruction.hpp"

#include <random>
#include <sstream>

#include "hochlab/errors.hpp"
#include "hochlab/instances.hpp"

namespace hochlab {

MultiplicativeStructure ObstructionInput::structure() const { return {host, nu, point}; }

void ObstructionInput::validate() const {
  if (!host) throw InvalidArgument("obstruction input has no operad");
  if (m < 1) throw InvalidArgument("obstruction input needs m ≥ 1");
  if (host->max_arity() < 3) throw InvalidArgument("obstruction needs arity 3");
  if (nu.arity() != 2 || nu.is_zero() || nu.degree() != 0) throw InvalidArgument("ν must be a nonzero element of O(2)_0");
  if (g.arity() != 1) throw InvalidArgument("g must lie in O(1)");
  if (!g.is_zero() && g.degree() != g_degree()) throw InvalidArgument("g must have degree 4m-1");
  if (host->has_differential() && host->max_degree(3) < omega_degree() + 1)
    throw InvalidArgument("operad truncated below degree 4m+1");
  if (!host->differential(nu).is_zero()) throw InvalidArgument("ν is not a cycle");
  if (!host->differential(g).is_zero()) throw InvalidArgument("g is not a cycle");
}

ObstructionInput witness_input(int m, WitnessVariant variant) {
  auto op = std::make_shared<FreeChainOperad>(witness_operad(m, variant));
  return {op->name(), op, op->generator("nu"), op->generator("g"), m, std::nullopt};
}

ObstructionInput framed_input(int d, int m, int max_degree) {
  if (max_degree < 0) max_degree = 4 * m + 1;
  MultiplicativeStructure s = framed_structure(d, 3, max_degree);
  const auto& f = dynamic_cast<const FramedOperad&>(*s.host);
  const auto& gens = f.hopf().generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].degree == 4 * m - 1)
      return {"framed:d=" + std::to_string(d) + ":" + gens[i].name, s.host, s.nu,
              f.hopf_element(f.hopf().generator(i)), m, s.point};
  throw InvalidArgument("no Hopf generator of degree 4m-1 for this d");
}

ObstructionInput zero_g_input(const MultiplicativeStructure& s, int m) {
  return {s.host->name(), s.host, s.nu, Element(1), m, s.point};
}

ObstructionInput obstruction_input_by_name(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.empty()) throw ParseError("empty instance name");
  auto value = [&](const std::string& key, int fallback) {
    for (std::size_t k = 1; k < parts.size(); ++k)
      if (parts[k].rfind(key + "=", 0) == 0) {
        try {
          return std::stoi(parts[k].substr(key.size() + 1));
        } catch (const std::exception&) {
          throw ParseError("bad value for " + key + " in '" + spec + "'");
        }
      }
    return fallback;
  };
  const std::string& kind = parts[0];
  if (kind == "witness") {
    MultiplicativeStructure s = instance_by_name(spec);
    const auto& w = dynamic_cast<const FreeChainOperad&>(*s.host);
    return {w.name(), s.host, s.nu, w.generator("g"), value("m", 2), std::nullopt};
  }
  if (kind == "framed") {
    int d = value("d", 5);
    int m = value("m", (d - 1) / 2);
    return framed_input(d, m, value("Q", 4 * m + 1));
  }
  if (kind == "sphere" || kind == "poisson") {
    std::string base = spec;
    if (kind == "sphere" && spec.find("A=") == std::string::npos) base += ":A=3";
    return zero_g_input(instance_by_name(base), value("m", 2));
  }
  throw ParseError("unknown instance '" + kind + "'");
}

Element h_equation(const ObstructionInput& in) {
  const GradedOperad& o = *in.host;
  return o.compose(in.nu, 2, in.g) + o.compose(in.nu, 1, in.g) - o.compose(in.g, 1, in.nu);
}

Element xi_equation(const ObstructionInput& in) {
  const GradedOperad& o = *in.host;
  return o.compose(in.nu, 2, in.nu) - o.compose(in.nu, 1, in.nu);
}

namespace {

// Solves dx = target for x ∈ O(n)_q.
std::optional<Element> solve_boundary(const GradedOperad& o, std::size_t n, int q, const Element& target) {
  if (target.is_zero()) return Element(n);
  if (target.degree() != q - 1) return std::nullopt;
  RationalMatrix dm = o.differential_matrix(n, q);
  auto x = try_solve(dm, target.vector(q - 1, o.dim(n, q - 1)));
  if (!x) return std::nullopt;
  return Element::from_vector(n, q, *x);
}

std::vector<Element> cycles(const GradedOperad& o, std::size_t n, int q) {
  std::vector<Element> out;
  for (const auto& v : kernel_basis(o.differential_matrix(n, q))) out.push_back(Element::from_vector(n, q, v));
  return out;
}

std::vector<SparseVector> boundaries(const GradedOperad& o, std::size_t n, int q) {
  if (o.dim(n, q + 1) == 0) return {};
  std::vector<SparseVector> out;
  for (auto& c : o.differential_matrix(n, q + 1).columns())
    if (!c.is_zero()) out.push_back(std::move(c));
  return out;
}

Element random_combination(const std::vector<Element>& basis, std::size_t arity, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Element out(arity);
  for (const auto& b : basis) out.add_scaled(b, coef(rng));
  return out;
}

}  // namespace

Element find_h(const ObstructionInput& in) {
  Element target = h_equation(in);
  auto h = solve_boundary(*in.host, 2, in.omega_degree(), target);
  if (!h) throw NoSolution("ν∘₂g + ν∘₁g - g∘₁ν is not a boundary in O(2)");
  return *h;
}

Element find_xi(const ObstructionInput& in) {
  Element target = xi_equation(in);
  auto xi = solve_boundary(*in.host, 3, 1, target);
  if (!xi) throw NoSolution("ν is not associative up to homotopy");
  return *xi;
}

ObstructionQuotient obstruction_quotient(const ObstructionInput& in) {
  const GradedOperad& o = *in.host;
  int q = in.omega_degree();
  std::size_t dim3 = o.dim(3, q);
  std::vector<SparseVector> num = kernel_basis(o.differential_matrix(3, q));
  std::vector<SparseVector> den = boundaries(o, 3, q);
  ObstructionQuotient out;
  out.cycles = num.size();
  EchelonBasis b(dim3, false);
  for (const auto& v : den) b.insert(v);
  out.boundaries = b.rank();
  MultiplicativeStructure s = in.structure();
  for (const auto& z : cycles(o, 2, q)) {
    Element dz = hochschild_differential(s, z);
    if (!dz.is_zero()) den.push_back(dz.vector(q, dim3));
  }
  for (const auto& v : den) b.insert(v);
  out.denominator = b.rank();
  out.quotient = std::make_shared<Subquotient>(dim3, num, den);
  return out;
}

ObstructionResult omega(const ObstructionInput& in, const Element& h, const Element& xi) {
  return omega(in, h, xi, obstruction_quotient(in));
}

ObstructionResult omega(const ObstructionInput& in, const Element& h, const Element& xi, const ObstructionQuotient& q) {
  const GradedOperad& o = *in.host;
  const Element& nu = in.nu;
  const Element& g = in.g;
  ObstructionResult r;
  r.h = h;
  r.xi = xi;
  r.omega1 = o.compose(nu, 2, h) - o.compose(h, 1, nu) + o.compose(h, 2, nu) - o.compose(nu, 1, h);
  r.omega2 = Element(3);
  if (!xi.is_zero() && !g.is_zero()) {
    r.omega2 = o.compose(g, 1, xi);
    for (std::size_t i = 1; i <= 3; ++i) r.omega2 += o.compose(xi, i, g);
  }
  r.omega = r.omega1 - r.omega2;
  r.quotient_dim = q.dim();
  r.cycle = o.differential(r.omega).is_zero();
  if (r.cycle) {
    SparseVector v = r.omega.is_zero() ? SparseVector(o.dim(3, in.omega_degree()))
                                       : r.omega.vector(in.omega_degree(), o.dim(3, in.omega_degree()));
    r.coordinates = q.quotient->coordinates(v);
    r.nonzero = !r.coordinates.is_zero();
  }
  return r;
}

ObstructionResult obstruction(const ObstructionInput& in) {
  in.validate();
  return omega(in, find_h(in), find_xi(in));
}

ChoiceReport choice_independence(const ObstructionInput& in, std::size_t trials, std::uint64_t seed) {
  in.validate();
  const GradedOperad& o = *in.host;
  ChoiceReport rep;
  rep.trials = trials;
  auto quotient = obstruction_quotient(in);
  Element h = find_h(in), xi = find_xi(in);
  ObstructionResult base = omega(in, h, xi, quotient);
  if (!base.cycle) throw Error("ω is not a cycle for the reference choice");
  rep.reference = base.coordinates;

  auto h_cycles = cycles(o, 2, in.omega_degree());
  auto xi_cycles = cycles(o, 3, 1);
  rep.h_choices = h_cycles.size();
  rep.xi_choices = xi_cycles.size();
  EchelonBasis b1(o.dim(3, 1), false);
  for (const auto& v : boundaries(o, 3, 1)) b1.insert(v);
  rep.h1_vanishes = b1.rank() == xi_cycles.size();
  if (!rep.h1_vanishes)
    rep.notes.push_back("H_1(O(3)) ≠ 0: the hypothesis for ξ-independence fails, so it is not asserted");
  if (rep.h_choices == 0 && rep.xi_choices == 0) rep.notes.push_back("h and ξ are unique; one choice only");

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Element h2 = h + random_combination(h_cycles, 2, rng);
    ObstructionResult rh = omega(in, h2, xi, quotient);
    if (!rh.cycle || !(rh.coordinates == rep.reference)) rep.h_independent = false;
    Element xi2 = xi + random_combination(xi_cycles, 3, rng);
    ObstructionResult rx = omega(in, h2, xi2, quotient);
    if (!rx.cycle || !(rx.coordinates == rep.reference)) rep.xi_independent = false;
  }
  if (!rep.xi_independent && !rep.h1_vanishes) rep.notes.push_back("changing ξ by a non-bounding cycle moved the class");
  return rep;
}

CycleDependenceReport vary_g_by_boundary(const ObstructionInput& in, std::size_t trials, std::uint64_t seed) {
  in.validate();
  const GradedOperad& o = *in.host;
  CycleDependenceReport rep;
  rep.trials = trials;
  ObstructionResult base = obstruction(in);
  std::vector<Element> bnd;
  int q = in.g_degree();
  for (const auto& v : boundaries(o, 1, q)) bnd.push_back(Element::from_vector(1, q, v));
  rep.boundary_choices = bnd.size();
  if (bnd.empty()) {
    rep.notes.push_back("no boundaries in O(1)_{4m-1}; g cannot be varied");
    return rep;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ObstructionInput varied = in;
    varied.g = in.g + random_combination(bnd, 1, rng);
    ObstructionResult r = obstruction(varied);
    if (!r.cycle || !(r.coordinates == base.coordinates)) ++rep.moved;
  }
  return rep;
}

D2Comparison compare_with_d2(const ObstructionInput& in) {
  in.validate();
  const GradedOperad& o = *in.host;
  if (!find_xi(in).is_zero()) throw InvalidArgument("compare_with_d2 needs ξ = 0");
  ObstructionQuotient quotient = obstruction_quotient(in);
  ObstructionResult r = omega(in, find_h(in), Element(3), quotient);

  MultiplicativeStructure s = in.structure();
  int gq = in.g_degree(), wq = in.omega_degree();
  DoubleComplex dc = hochschild_double_complex(mcclure_smith(s, 3, wq + 1), false);
  SpectralSequence ss(dc, 2);
  D2Comparison out;
  out.quotient_dim = quotient.dim();
  out.e2_dim = ss.page(2).dim(-3, wq);
  int t_g = gq - 1, t_w = wq - 3;

  SparseVector g = in.g.is_zero() ? SparseVector(o.dim(1, gq)) : in.g.vector(gq, o.dim(1, gq));
  ZigZag zz = d2_zigzag(dc, 1, gq, g);
  // g + w lies in Z_2 of column 1.
  SparseVector g_total = dc.embed(1, gq, g) + dc.embed(2, wq, zz.lift);
  SparseVector g_class = ss.class_of(2, 1, t_g, g_total);
  out.d2 = SparseVector(out.e2_dim);
  for (const auto& [k, c] : g_class.entries()) out.d2.add_scaled(ss.differential(2, 1, t_g, k), c);

  SparseVector w = r.omega.is_zero() ? SparseVector(o.dim(3, wq)) : r.omega.vector(wq, o.dim(3, wq));
  out.omega_class = ss.class_of(2, 3, t_w, dc.embed(3, wq, w));
  out.zigzag_class = ss.class_of(2, 3, t_w, dc.embed(3, wq, zz.target));
  out.equal = out.d2 == out.omega_class && out.zigzag_class == out.omega_class && out.e2_dim == out.quotient_dim;
  return out;
}

Json to_json(const ObstructionInput& in, const ObstructionResult& r) {
  const GradedOperad& o = *in.host;
  Json j;
  j["operad"] = in.name;
  j["m"] = in.m;
  j["h"] = o.format(r.h);
  j["xi"] = o.format(r.xi);
  j["omega1"] = o.format(r.omega1);
  j["omega2"] = o.format(r.omega2);
  j["omega"] = o.format(r.omega);
  j["cycle"] = r.cycle;
  j["quotient_dim"] = r.quotient_dim;
  j["class"] = to_json(r.coordinates);
  j["verdict"] = !r.cycle ? "not a cycle" : (r.nonzero ? "nonzero" : "zero");
  return j;
}

Json to_json(const ChoiceReport& r) {
  return Json{{"trials", r.trials},          {"h_choices", r.h_choices},
              {"xi_choices", r.xi_choices},  {"h1_vanishes", r.h1_vanishes},
              {"h_independent", r.h_independent}, {"xi_independent", r.xi_independent},
              {"reference", to_json(r.reference)}, {"notes", r.notes},
              {"passed", r.passed()}};
}

Json to_json(const D2Comparison& r) {
  return Json{{"d2", to_json(r.d2)},
              {"omega_class", to_json(r.omega_class)},
              {"zigzag_class", to_json(r.zigzag_class)},
              {"e2_dim", r.e2_dim},
              {"quotient_dim", r.quotient_dim},
              {"equal", r.equal}};
}

}  // namespace hochlab
