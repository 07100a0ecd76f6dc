#include <doctest.h>

#include <chrono>
#include <random>

#include "hochlab/cosimplicial.hpp"
#include "hochlab/errors.hpp"
#include "hochlab/free_operad.hpp"

using namespace hochlab;

namespace {

MultiplicativeStructure witness(int m, WitnessVariant v = WitnessVariant::Plain) {
  auto op = std::make_shared<FreeChainOperad>(witness_operad(m, v));
  return {op, op->generator("nu"), std::nullopt};
}

RationalMatrix inverse(const RationalMatrix& p) { return row_reduce(p).transform; }

RationalMatrix random_invertible(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-2, 2), diag(1, 3);
  RationalMatrix lower = RationalMatrix::identity(n), upper(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j < i) lower.set(i, j, coef(rng));
      if (j > i) upper.set(i, j, coef(rng));
      if (i == j) upper.set(i, j, Rational(diag(rng) * (coef(rng) < 0 ? -1 : 1)));
    }
  return lower * upper;
}

// A finite double complex is a sum of squares and staircases; only staircases of odd length carry
// total homology, in the total degree of their majority kind. Built in that normal form, then
// scrambled by random basis changes at every spot.
struct RandomDouble {
  DoubleComplex complex;
  std::map<int, std::size_t> expected_homology;
};

RandomDouble random_double_complex(std::mt19937& rng) {
  const std::size_t N = 3;
  const int Q = 4;
  std::map<std::pair<std::size_t, int>, std::size_t> dims;
  struct Arrow {
    bool vertical;  // d if true, δ if false
    std::pair<std::size_t, int> from, to;
    std::size_t i, j;
  };
  std::vector<Arrow> arrows;
  RandomDouble out;
  auto add = [&](std::size_t n, int q) { return dims[{n, q}]++; };
  auto inside = [&](long n, int q) { return n >= 0 && n <= static_cast<long>(N) && q >= 0 && q <= Q; };

  std::uniform_int_distribution<int> pieces(2, 7), coin(0, 9), len(1, 5), spot_n(0, N), spot_q(0, Q);
  int count = pieces(rng);
  for (int k = 0; k < count; ++k) {
    long n0 = spot_n(rng);
    int q0 = spot_q(rng);
    if (coin(rng) < 3) {
      if (!inside(n0 + 1, q0 - 1)) continue;
      std::size_t n = n0;
      auto x = add(n, q0), a = add(n, q0 - 1), b = add(n + 1, q0), c = add(n + 1, q0 - 1);
      arrows.push_back({true, {n, q0}, {n, q0 - 1}, x, a});
      arrows.push_back({false, {n, q0}, {n + 1, q0}, x, b});
      arrows.push_back({false, {n, q0 - 1}, {n + 1, q0 - 1}, a, c});
      arrows.push_back({true, {n + 1, q0}, {n + 1, q0 - 1}, b, c});
      continue;
    }
    // staircase s_j at (n0+j, q0+j), k_j at (n0+j+1, q0+j); s_j →δ k_j and s_j →d k_{j-1}
    int start = coin(rng) % 2, length = len(rng);
    std::vector<std::pair<long, int>> pos;
    for (int e = start; e < start + length; ++e) {
      int j = e / 2;
      pos.push_back(e % 2 == 0 ? std::pair<long, int>{n0 + j, q0 + j} : std::pair<long, int>{n0 + j + 1, q0 + j});
    }
    if (!std::all_of(pos.begin(), pos.end(), [&](auto p) { return inside(p.first, p.second); })) continue;
    std::vector<std::size_t> idx;
    for (auto [n, q] : pos) idx.push_back(add(static_cast<std::size_t>(n), q));
    for (int e = 0; e + 1 < length; ++e) {
      bool source_first = (start + e) % 2 == 0;
      auto a = pos[e], b = pos[e + 1];
      std::size_t ia = idx[e], ib = idx[e + 1];
      std::pair<std::size_t, int> pa{a.first, a.second}, pb{b.first, b.second};
      if (source_first)
        arrows.push_back({false, pa, pb, ia, ib});  // s_j →δ k_j
      else
        arrows.push_back({true, pb, pa, ib, ia});  // s_{j+1} →d k_j
    }
    int sources = 0;
    for (int e = start; e < start + length; ++e) sources += (e % 2 == 0);
    int sinks = length - sources;
    if (sources != sinks) out.expected_homology[q0 - static_cast<int>(n0) - (sources > sinks ? 0 : 1)] += 1;
  }

  DoubleComplex& c = out.complex;
  c.n_min = 0;
  c.n_max = N;
  c.q_min = 0;
  c.q_max = Q;
  c.dims = dims;
  for (const auto& a : arrows) {
    auto& target = a.vertical ? c.d : c.delta;
    auto it = target.find(a.from);
    if (it == target.end()) it = target.emplace(a.from, RationalMatrix(dims[a.to], dims[a.from])).first;
    it->second.set(a.j, a.i, 1);
  }
  std::map<std::pair<std::size_t, int>, RationalMatrix> p, pinv;
  for (const auto& [key, dm] : dims) {
    p[key] = random_invertible(dm, rng);
    pinv[key] = inverse(p[key]);
  }
  for (auto& [key, m] : c.d) m = p.at({key.first, key.second - 1}) * m * pinv.at(key);
  for (auto& [key, m] : c.delta) m = p.at({key.first + 1, key.second}) * m * pinv.at(key);
  return out;
}

}  // namespace

TEST_CASE("McClure–Smith cofaces on the sphere operad") {
  auto m = sphere_structure(5, 4);
  const auto& s = dynamic_cast<const SphereOperad&>(*m.host);
  auto c = mcclure_smith(m, 4, 12);
  auto bad = c.check_identities();
  INFO((bad.empty() ? "" : bad.front()));
  CHECK(bad.empty());

  Element al = s.alpha();
  SparseVector col = al.vector(4, s.dim(2, 4));
  CHECK(c.coface(2, 0, 4).apply(col) == s.e(3, {{2, 3}}).vector(4, s.dim(3, 4)));
  CHECK(hochschild_differential(m, al).is_zero());
  CHECK(hochschild_differential(m, s.mu()).is_zero());
  // the unit is degenerate: δ(1) = μ - μ + μ
  CHECK(hochschild_differential(m, *s.unit()) == s.mu());
  CHECK_THROWS_AS(mcclure_smith(m, 5, 12), ArityOverflow);
}

TEST_CASE("cosimplicial identities hold on every instance") {
  std::vector<std::pair<MultiplicativeStructure, std::size_t>> cases = {
      {sphere_structure(3, 4), 4}, {poisson_structure(5), 3},     {framed_structure(5, 3, 14), 3},
      {witness(2), 3},             {witness(2, WitnessVariant::Padded), 3}, {witness(2, WitnessVariant::NonAssociative), 3},
  };
  for (const auto& [m, n] : cases) {
    auto c = mcclure_smith(m, n, 14);
    auto bad = c.check_identities();
    INFO(m.host->name(), ": ", (bad.empty() ? "" : bad.front()));
    if (m.host->name().find("nonassoc") != std::string::npos)
      CHECK_FALSE(bad.empty());  // ν is only homotopy associative there
    else
      CHECK(bad.empty());
  }
}

TEST_CASE("Hochschild differential on the witness operad") {
  auto m = witness(2);
  const auto& w = dynamic_cast<const FreeChainOperad&>(*m.host);
  Element g = w.generator("g"), h = w.generator("h"), nu = m.nu;
  CHECK(hochschild_differential(m, g) == w.differential(h));
  CHECK(hochschild_differential(m, g) == w.parse_element("nu o2 g - g o1 nu + nu o1 g"));
  auto c = mcclure_smith(m, 3, 18);
  SparseVector gv = g.vector(7, w.dim(1, 7));
  CHECK(c.coface(1, 0, 7).apply(gv) == w.compose(nu, 2, g).vector(7, w.dim(2, 7)));
  CHECK(c.coface(1, 1, 7).apply(gv) == w.compose(g, 1, nu).vector(7, w.dim(2, 7)));
  CHECK(c.coface(1, 2, 7).apply(gv) == w.compose(nu, 1, g).vector(7, w.dim(2, 7)));
}

TEST_CASE("double complexes from instances square to zero") {
  std::vector<MultiplicativeStructure> cases = {sphere_structure(5, 4), poisson_structure(5), framed_structure(5, 3, 12),
                                                witness(2), witness(3), witness(2, WitnessVariant::Padded)};
  for (const auto& m : cases) {
    auto c = mcclure_smith(m, m.host->max_arity(), 14);
    for (bool normalize : {true, false}) {
      DoubleComplex dc = hochschild_double_complex(c, normalize);
      INFO(m.host->name(), " normalized=", normalize);
      CHECK_NOTHROW(dc.validate());
      CHECK_NOTHROW(dc.total().validate());
    }
  }
}

TEST_CASE("sphere Hochschild homology, d = 5") {
  auto start = std::chrono::steady_clock::now();
  auto m = sphere_structure(5, 6);
  auto hh = hochschild_homology(m, 5, 16);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("sphere HH d=5 window in ", secs, " s");
  std::map<std::pair<int, int>, std::size_t> expected = {{{0, 0}, 1}, {{-2, 4}, 1}, {{-3, 8}, 1}, {{-4, 8}, 1}, {{-5, 12}, 1}};
  CHECK(hh.dims() == expected);
  for (const auto& [key, cell] : hh.cells) CHECK(cell.reliable);
  // the class at (-2, 4) is α itself
  const auto& s = dynamic_cast<const SphereOperad&>(*m.host);
  CHECK(hh.class_of(m, s.alpha()).nnz() == 1);
  CHECK_FALSE(hh.is_boundary(m, s.alpha()));
}

TEST_CASE("Hochschild homology window edges and preconditions") {
  auto m = sphere_structure(7, 3);
  auto hh = hochschild_homology(m, 3, 12);
  CHECK(hh.dim(-2, 6) == 1);
  CHECK(hh.dim(-1, 0) == 0);
  bool edge_flagged = false;
  for (const auto& [key, cell] : hh.cells)
    if (key.first == -3) edge_flagged = !cell.reliable;
  CHECK(edge_flagged);
  CHECK_THROWS_AS(hochschild_homology(witness(2), 2, 8), InvalidArgument);

  auto p = poisson_structure(5);
  auto hp = hochschild_homology(p, 2, 8);
  CHECK(hp.dim(-2, 4) == 1);
  CHECK(hp.dim(0, 0) == 1);
}

TEST_CASE("witness spectral sequence: d₂[g] = [δh]") {
  for (int mm : {2, 3}) {
    auto m = witness(mm);
    const auto& w = dynamic_cast<const FreeChainOperad&>(*m.host);
    int gq = 4 * mm - 1;
    auto c = mcclure_smith(m, 3, 8 * mm + 2);
    DoubleComplex dc = hochschild_double_complex(c, false);
    SparseVector g = w.generator("g").vector(gq, w.dim(1, gq));
    ZigZag zz = d2_zigzag(dc, 1, gq, g);
    CHECK(Element::from_vector(2, gq + 1, zz.lift) == w.generator("h"));
    Element expected = hochschild_differential(m, w.generator("h"));
    CHECK(Element::from_vector(3, gq + 1, zz.target) == expected);
    CHECK(expected == w.parse_element("nu o2 h - h o1 nu + h o2 nu - nu o1 h"));

    SpectralSequence ss(dc, 3);
    const auto& e2 = ss.page(2);
    CHECK(e2.dim(-1, gq) == 1);
    CHECK(e2.dim(-3, gq + 1) == 1);
    CHECK(e2.differential_rank.at({-1, gq}) == 1);
    CHECK(ss.page(3).dim(-1, gq) == 0);
    SparseVector target = ss.class_of(2, 3, gq + 1 - 3, dc.embed(3, gq + 1, zz.target));
    CHECK_FALSE(target.is_zero());
    CHECK_THROWS_AS(d2_zigzag(dc, 2, gq + 1, w.generator("h").vector(gq + 1, w.dim(2, gq + 1))), NotACycle);
  }
}

TEST_CASE("zig-zag reports lifts that leave the window") {
  auto m = witness(2);
  auto dc = hochschild_double_complex(mcclure_smith(m, 3, 18), false);
  const auto& w = dynamic_cast<const FreeChainOperad&>(*m.host);
  SparseVector nu = m.nu.vector(0, w.dim(2, 0));
  CHECK_THROWS_AS(d2_zigzag(dc, 2, 0, nu), LiftFailure);

  // δz not an internal boundary
  DoubleComplex c;
  c.n_max = 2;
  c.q_max = 1;
  c.dims = {{{0, 0}, 1}, {{1, 0}, 1}, {{2, 1}, 1}};
  c.delta[{0, 0}] = RationalMatrix::from_dense({{1}});
  CHECK_THROWS_AS(d2_zigzag(c, 0, 0, SparseVector{1}), LiftFailure);
}

TEST_CASE("randomized double complexes: pages and abutment") {
  std::mt19937 rng(12345);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    RandomDouble rd = random_double_complex(rng);
    REQUIRE_NOTHROW(rd.complex.validate());
    SpectralSequence ss(rd.complex, 5);
    auto total = ss.total_homology_dims();
    CHECK(total == rd.expected_homology);
    CHECK(ss.infinity_page().dims_by_total_degree() == total);
    for (int r = 1; r < 5; ++r) {
      const auto& page = ss.page(r);
      const auto& next = ss.page(r + 1);
      for (const auto& [key, cell] : page.cells) {
        auto [p, q] = key;
        std::size_t out = page.differential_rank.count(key) ? page.differential_rank.at(key) : 0;
        auto in_key = std::pair{p + r, q - r + 1};
        std::size_t in = page.differential_rank.count(in_key) ? page.differential_rank.at(in_key) : 0;
        CHECK(next.dim(p, q) == cell.dimension - out - in);
      }
    }
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("two-column complex with a known answer") {
  // x (0,1) →δ y (1,1), z (1,2) →d y: a staircase of length three, homology in total degree 1 (x and z)
  DoubleComplex c;
  c.n_max = 1;
  c.q_max = 2;
  c.dims = {{{0, 1}, 1}, {{1, 1}, 1}, {{1, 2}, 1}};
  c.delta[{0, 1}] = RationalMatrix::from_dense({{1}});
  c.d[{1, 2}] = RationalMatrix::from_dense({{1}});
  SpectralSequence ss(c, 3);
  CHECK(ss.total_homology_dims() == std::map<int, std::size_t>{{1, 1}});
  CHECK(ss.page(1).dim(0, 1) == 1);
  CHECK(ss.page(1).dim(-1, 1) == 0);
  CHECK(ss.page(1).dim(-1, 2) == 0);
  CHECK(ss.page(2).dim(0, 1) == 1);
  CHECK(ss.infinity_page().dims_by_total_degree() == std::map<int, std::size_t>{{1, 1}});
}
