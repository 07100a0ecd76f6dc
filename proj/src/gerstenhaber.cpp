#include "hochlab/gerstenhaber.hpp"

#include "hochlab/errors.hpp"

namespace hochlab {

int shifted_degree(std::size_t arity, int q) { return q - static_cast<int>(arity) + 1; }

int shifted_degree(const Element& x) { return shifted_degree(x.arity(), x.degree()); }

int circle_sign(std::size_t i, std::size_t m, std::size_t n, int q_y, SignConvention conv) {
  long e = (static_cast<long>(n) - 1) * static_cast<long>(i - 1);
  if (conv == SignConvention::Shifted) e += static_cast<long>(m - 1) * q_y;
  return sign_of(e);
}

Element circle(const GradedOperad& o, const Element& x, const Element& y, SignConvention conv) {
  std::size_t m = x.arity(), n = y.arity();
  Element out(m + n - 1);
  if (m == 0) return out;
  for (const auto& [cy, b] : y.terms()) {
    Element yt(n, cy, b);
    for (std::size_t i = 1; i <= m; ++i) out.add_scaled(o.compose(x, i, yt), circle_sign(i, m, n, cy.degree, conv));
  }
  return out;
}

Element bracket(const GradedOperad& o, const Element& x, const Element& y, SignConvention conv) {
  std::size_t r = x.arity() + y.arity() - 1;
  Element out(r);
  for (const auto& [cx, a] : x.terms())
    for (const auto& [cy, b] : y.terms()) {
      Element xt(x.arity(), cx, a), yt(y.arity(), cy, b);
      int lx = shifted_degree(x.arity(), cx.degree), ly = shifted_degree(y.arity(), cy.degree);
      out += circle(o, xt, yt, conv);
      out.add_scaled(circle(o, yt, xt, conv), -sign_of(static_cast<long>(lx) * ly));
    }
  return out;
}

void GerstenhaberReport::fail(std::string msg) {
  passed = false;
  if (failures.size() < 8) failures.push_back(std::move(msg));
}

namespace {

struct Basis {
  std::size_t n;
  Cell c;
};

}  // namespace

GerstenhaberReport check_gerstenhaber(const MultiplicativeStructure& m, std::size_t max_arity, int max_degree,
                                      SignConvention conv) {
  const GradedOperad& o = *m.host;
  auto br = [&](const Element& a, const Element& b) { return bracket(o, a, b, conv); };
  auto ci = [&](const Element& a, const Element& b) { return circle(o, a, b, conv); };
  GerstenhaberReport rep;
  max_arity = std::min(max_arity, o.max_arity());
  std::vector<Basis> basis;
  for (std::size_t n = 0; n <= max_arity; ++n)
    for (int q : o.degrees(n)) {
      if (max_degree >= 0 && q > max_degree) continue;
      for (std::size_t k = 0; k < o.dim(n, q); ++k) basis.push_back({n, Cell{q, k}});
    }
  auto fits = [&](std::size_t arity, int q) { return arity <= max_arity && q <= o.max_degree(arity); };
  auto name = [&](const Basis& b) { return o.label(b.n, b.c).str(); };

  for (const auto& bx : basis) {
    Element x(bx.n, bx.c);
    int lx = shifted_degree(bx.n, bx.c.degree);
    if (bx.n + 1 <= o.max_arity() && bx.c.degree <= o.max_degree(bx.n + 1)) {
      ++rep.checked;
      if (!(hochschild_differential(m, x) == -br(x, m.nu))) rep.fail("δ_ν != -{-, ν} on " + name(bx));
    }
    for (const auto& by : basis) {
      if (bx.n + by.n == 0 || !fits(bx.n + by.n - 1, bx.c.degree + by.c.degree)) continue;
      Element y(by.n, by.c);
      int ly = shifted_degree(by.n, by.c.degree);
      ++rep.checked;
      if (!(br(x, y) == Rational(-sign_of(static_cast<long>(lx) * ly)) * br(y, x)))
        rep.fail("antisymmetry: " + name(bx) + ", " + name(by));
      for (const auto& bz : basis) {
        if (bx.n + by.n + bz.n < 2) continue;
        std::size_t ar = bx.n + by.n + bz.n - 2;
        int q = bx.c.degree + by.c.degree + bz.c.degree;
        if (by.n + bz.n == 0 || bx.n + bz.n == 0) continue;
        if (!fits(ar, q) || !fits(by.n + bz.n - 1, by.c.degree + bz.c.degree) ||
            !fits(bx.n + bz.n - 1, bx.c.degree + bz.c.degree))
          continue;
        Element z(bz.n, bz.c);
        int lz = shifted_degree(bz.n, bz.c.degree);
        ++rep.checked;
        Element pre_lhs = ci(ci(x, y), z) - ci(x, ci(y, z));
        Element pre_rhs = ci(ci(x, z), y) - ci(x, ci(z, y));
        if (!(pre_lhs == Rational(sign_of(static_cast<long>(ly) * lz)) * pre_rhs))
          rep.fail("pre-Lie: " + name(bx) + ", " + name(by) + ", " + name(bz));
        Element jac = Rational(sign_of(static_cast<long>(lx) * lz)) * br(x, br(y, z)) +
                      Rational(sign_of(static_cast<long>(ly) * lx)) * br(y, br(z, x)) +
                      Rational(sign_of(static_cast<long>(lz) * ly)) * br(z, br(x, y));
        if (!jac.is_zero()) rep.fail("Jacobi: " + name(bx) + ", " + name(by) + ", " + name(bz));
      }
    }
  }
  return rep;
}

DerivationReport check_bracket_derivation(const GradedOperad& o, std::size_t max_arity, SignConvention conv) {
  auto br = [&](const Element& a, const Element& b) { return bracket(o, a, b, conv); };
  DerivationReport rep;
  max_arity = std::min(max_arity, o.max_arity());
  std::vector<Basis> basis;
  for (std::size_t n = 0; n <= max_arity; ++n)
    for (int q : o.degrees(n))
      for (std::size_t k = 0; k < o.dim(n, q); ++k) basis.push_back({n, Cell{q, k}});
  for (const auto& bx : basis)
    for (const auto& by : basis) {
      if (bx.n + by.n == 0 || bx.n + by.n - 1 > max_arity) continue;
      if (bx.c.degree + by.c.degree > o.max_degree(bx.n + by.n - 1)) continue;
      Element x(bx.n, bx.c), y(by.n, by.c);
      Element lhs = o.differential(br(x, y));
      Element first = br(o.differential(x), y), second = br(x, o.differential(y));
      ++rep.pairs;
      bool koszul = lhs == first + Rational(sign_of(bx.c.degree)) * second;
      bool shifted = lhs == first + Rational(sign_of(shifted_degree(bx.n, bx.c.degree))) * second;
      if (!koszul) ++rep.koszul_failures;
      if (!shifted) ++rep.shifted_failures;
      if (!koszul && !shifted && rep.example.empty())
        rep.example = o.label(bx.n, bx.c).str() + ", " + o.label(by.n, by.c).str();
    }
  return rep;
}

HochschildClass bracket_on_classes(const MultiplicativeStructure& m, const HochschildClass& c1,
                                   const HochschildClass& c2) {
  Element r = bracket(*m.host, c1.representative, c2.representative);
  if (!hochschild_differential(m, r).is_zero()) throw NotACycle("bracket of classes is not δ-closed");
  HochschildClass out;
  out.arity = r.arity();
  out.q = r.is_zero() ? c1.q + c2.q : r.degree();
  out.representative = r;
  out.normalized = c1.normalized && c2.normalized;
  return out;
}

PoissonImageReport poisson_image_check(int d) { return poisson_image_check(poisson_inclusion(d), d); }

PoissonImageReport poisson_image_check(const OperadMap& f, int d) {
  PoissonImageReport rep;
  rep.d = d;
  const GradedOperad& p = *f.source;
  auto lam = p.find(2, "λ");
  if (!lam) throw InvalidArgument("source operad has no bracket λ");
  rep.source = bracket(p, *lam, *lam);
  rep.image = f.apply(rep.source);
  rep.nonzero = !rep.image.is_zero();

  auto sphere = std::make_shared<SphereOperad>(d, 4);
  MultiplicativeStructure s{sphere, sphere->mu(), sphere->point()};
  Element aa = bracket(*sphere, sphere->alpha(), sphere->alpha());
  rep.matches_sphere_bracket = rep.image == aa;
  if (rep.nonzero) {
    auto hh = hochschild_homology(s, 3, 2 * (d - 1));
    try {
      rep.not_a_boundary = !hh.is_boundary(s, rep.image);
    } catch (const NotACycle&) {
      rep.not_a_boundary = false;
    }
  }
  return rep;
}

}  // namespace hochlab
