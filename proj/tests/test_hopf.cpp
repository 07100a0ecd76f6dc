#include <doctest.h>

#include "hochlab/errors.hpp"
#include "hochlab/hopf.hpp"

using namespace hochlab;

namespace {

// Number of monomials of total degree n in a polynomial algebra on generators of the given even degrees.
std::size_t monomial_count(const std::vector<int>& degrees, int n) {
  std::vector<std::size_t> ways(n + 1, 0);
  ways[0] = 1;
  for (int g : degrees)
    for (int t = g; t <= n; ++t) ways[t] += ways[t - g];
  return ways[n];
}

}  // namespace

TEST_CASE("SO Hopf algebras") {
  auto h5 = build_so_hopf(5, SoVariant::Full);
  REQUIRE(h5.generators().size() == 2);
  CHECK(h5.generators()[0].degree == 3);
  CHECK(h5.generators()[1].degree == 7);
  CHECK(h5.dim() == 4);
  CHECK(h5.dims_by_degree() == std::map<int, std::size_t>{{0, 1}, {3, 1}, {7, 1}, {10, 1}});

  auto f5 = build_so_hopf(5, SoVariant::FixingSubgroup);
  REQUIRE(f5.generators().size() == 2);
  CHECK(f5.generators()[0].degree == 3);
  CHECK(f5.generators()[1].degree == 3);
  CHECK(f5.generators()[1].name == "e");

  auto h7 = build_so_hopf(7, SoVariant::Full);
  std::vector<int> degs;
  for (const auto& g : h7.generators()) degs.push_back(g.degree);
  CHECK(degs == std::vector<int>{3, 7, 11});

  CHECK_THROWS_AS(build_so_hopf(6, SoVariant::Full), InvalidArgument);
  CHECK_THROWS_AS(build_so_hopf(3, SoVariant::Full), InvalidArgument);
}

TEST_CASE("Hopf structure: primitivity, coassociativity, counit, product") {
  for (int d : {5, 7, 9}) {
    auto h = build_so_hopf(d, SoVariant::Full);
    for (std::size_t i = 0; i < h.generators().size(); ++i) CHECK(h.reduced_coproduct(h.generator(i)).empty());
    for (auto x : h.basis()) {
      // counit: the (1 ⊗ x) and (x ⊗ 1) terms appear with sign +1
      std::map<std::pair<unsigned, unsigned>, int> delta;
      for (const auto& [s, a, b] : h.coproduct(x)) delta[{a, b}] += s;
      CHECK(delta[{0u, x}] == 1);
      CHECK(delta[{x, 0u}] == 1);
      // (Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ, both against the three-slot coproduct
      std::map<std::vector<unsigned>, int> left, right, three;
      for (const auto& [s, a, b] : h.coproduct(x)) {
        for (const auto& [s2, a1, a2] : h.coproduct(a)) left[{a1, a2, b}] += s * s2;
        for (const auto& [s2, b1, b2] : h.coproduct(b)) right[{a, b1, b2}] += s * s2;
      }
      for (const auto& [s, slots] : h.iterated_coproduct(x, 3)) three[{slots[0], slots[1], slots[2]}] += s;
      CHECK(left == right);
      CHECK(left == three);
      if (x != 0) CHECK(h.product(x, x).first == 0);
    }
    auto [s, prod] = h.product(h.generator(1), h.generator(0));
    CHECK(s == -1);
    CHECK(prod == (h.generator(0) | h.generator(1)));
  }
}

TEST_CASE("cobar d∘d = 0") {
  for (int d : {5, 7, 9}) {
    auto h = build_so_hopf(d, SoVariant::Full);
    for (int q = 0; q <= 24; ++q)
      for (std::size_t k = 0; k + 2 <= static_cast<std::size_t>(q / 3) + 1; ++k) {
        auto d1 = cobar_differential(h, k, q);
        auto d2 = cobar_differential(h, k + 1, q);
        CHECK((d2 * d1).is_zero());
      }
  }
}

TEST_CASE("generator words are cobar cycles") {
  auto h = build_so_hopf(7, SoVariant::Full);
  for (std::size_t i = 0; i < h.generators().size(); ++i) {
    int q = h.generators()[i].degree;
    auto words = cobar_words(h, 1, q);
    auto pos = std::find(words.begin(), words.end(), CobarWord{h.generator(i)});
    REQUIRE(pos != words.end());
    auto d = cobar_differential(h, 1, q);
    CHECK(d.apply(SparseVector::unit(words.size(), pos - words.begin())).is_zero());
  }
}

TEST_CASE("cobar homology of SO_5") {
  auto h = build_so_hopf(5, SoVariant::Full);
  auto ch = cobar_homology(h, -6, 18);
  std::map<int, std::size_t> expect{{0, 1}, {1, 0}, {2, 1}, {3, 0}, {4, 1}, {5, 0}, {6, 2},
                                    {7, 0}, {8, 2}, {9, 0}, {10, 2}, {11, 0}, {12, 3}};
  for (const auto& [n, dim] : expect) CHECK(ch.dim_total(n) == dim);
  for (int n = 0; n <= 12; ++n) CHECK(ch.dim_total(n) == monomial_count({2, 6}, n));
  CHECK(ch.dim(0, 0) == 1);
  CHECK_THROWS_AS(ch.dim_total(14), WindowBoundary);

  auto gens = cobar_generators(h, ch);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].name == "γ1");
  CHECK(gens[1].name == "γ2");
  CHECK(gens[1].q == 7);
  CHECK(ch.dim(-1, 7) == 1);
}

TEST_CASE("cobar homology of SO_4 model and SO_7") {
  auto f = build_so_hopf(5, SoVariant::FixingSubgroup);
  auto cf = cobar_homology(f, -6, 18);
  for (int k = 0; k <= 6; ++k) CHECK(cf.dim_total(2 * k) == static_cast<std::size_t>(k + 1));
  auto gens = cobar_generators(f, cf);
  CHECK(gens[1].name == "f");
  CHECK(cf.dim(-1, 3) == 2);

  auto h7 = build_so_hopf(7, SoVariant::Full);
  auto c7 = cobar_homology(h7, -7, 21);
  for (int n = 0; n <= 14; ++n) CHECK(c7.dim_total(n) == monomial_count({2, 6, 10}, n));
}

TEST_CASE("Euler characteristic per internal degree") {
  for (int d : {5, 7}) {
    auto h = build_so_hopf(d, SoVariant::Full);
    auto ch = cobar_homology(h, -8, 24);
    for (int q = 0; q <= 24; ++q) CHECK(ch.chain_euler(q) == ch.homology_euler(q));
  }
  // every empty bidegree (0, q > 0) vanishes
  auto ch = cobar_homology(build_so_hopf(5, SoVariant::Full), -2, 10);
  CHECK(ch.dim(0, 5) == 0);
  CHECK(ch.dim(-1, 2) == 0);
}
