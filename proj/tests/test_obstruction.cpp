#include <doctest.h>

#include "hochlab/errors.hpp"
#include "hochlab/obstruction.hpp"

using namespace hochlab;

namespace {

const FreeChainOperad& free_host(const ObstructionInput& in) { return dynamic_cast<const FreeChainOperad&>(*in.host); }

}  // namespace

TEST_CASE("witness obstruction is ω₁ and nonzero") {
  for (int m : {2, 3}) {
    INFO("m=" << m);
    auto in = witness_input(m);
    const auto& w = free_host(in);
    REQUIRE_NOTHROW(in.validate());
    CHECK(find_h(in) == w.generator("h"));
    CHECK(w.differential(find_h(in)) == h_equation(in));
    CHECK(find_xi(in).is_zero());
    CHECK(xi_equation(in).is_zero());

    // W(3)_{4m+1} = 0 and δ_ν kills no cycle of W(2)_{4m}, so the quotient is all of Z(W(3)_{4m}).
    auto q = obstruction_quotient(in);
    CHECK(q.boundaries == 0);
    CHECK(q.denominator == 0);
    CHECK(w.dim(3, 4 * m + 1) == 0);
    CHECK(q.dim() == q.cycles);

    ObstructionResult r = obstruction(in);
    CHECK(r.cycle);
    CHECK(r.omega2.is_zero());
    CHECK(r.omega == w.parse_element("nu o2 h - h o1 nu + h o2 nu - nu o1 h"));
    CHECK(r.omega.terms().size() == 4);
    CHECK(r.nonzero);
    CHECK(r.quotient_dim >= 1);
  }
}

TEST_CASE("find_h rejects g violating the compatibility condition") {
  auto op = std::make_shared<FreeChainOperad>(
      FreeChainOperad::from_text("corrupted", "nu:2:0:assoc\ng:1:7\nh:2:8\n", 3, 18));
  ObstructionInput in{"corrupted", op, op->generator("nu"), op->generator("g"), 2, std::nullopt};
  REQUIRE_NOTHROW(in.validate());
  CHECK_FALSE(h_equation(in).is_zero());
  CHECK_THROWS_AS(find_h(in), NoSolution);
  CHECK_THROWS_AS(obstruction(in), NoSolution);

  auto bad_degree = witness_input(2);
  bad_degree.m = 3;
  CHECK_THROWS_AS(bad_degree.validate(), InvalidArgument);
  auto not_cycle = witness_input(2);
  not_cycle.nu = free_host(not_cycle).generator("h");
  CHECK_THROWS_AS(not_cycle.validate(), InvalidArgument);
}

TEST_CASE("ξ solves the associativity equation") {
  auto in = witness_input(2, WitnessVariant::NonAssociative);
  const auto& w = free_host(in);
  Element xi = find_xi(in);
  CHECK(xi == w.generator("xi"));
  CHECK(w.differential(xi) == xi_equation(in));

  ObstructionResult r = obstruction(in);
  CHECK(r.h == w.generator("h"));
  CHECK_FALSE(r.omega2.is_zero());
  CHECK(w.differential(r.omega1) == w.differential(r.omega2));
  CHECK(r.cycle);

  auto op = std::make_shared<FreeChainOperad>(FreeChainOperad::from_text("free", "nu:2:0\ng:1:7\n", 3, 18));
  ObstructionInput bare{"free", op, op->generator("nu"), op->generator("g"), 2, std::nullopt};
  CHECK_THROWS_AS(find_xi(bare), NoSolution);
}

TEST_CASE("formality baseline: zero-differential hosts give ω = 0") {
  for (int d : {3, 5}) {
    auto in = zero_g_input(sphere_structure(d, 3), 2);
    ObstructionResult r = obstruction(in);
    CHECK(r.h.is_zero());
    CHECK(r.xi.is_zero());
    CHECK(r.omega.is_zero());
    CHECK(r.cycle);
    CHECK_FALSE(r.nonzero);
  }
  auto p = obstruction(zero_g_input(poisson_structure(5), 2));
  CHECK(p.omega.is_zero());
  CHECK_FALSE(p.nonzero);

  for (auto [d, m] : {std::pair{5, 2}, std::pair{7, 3}}) {
    INFO("framed d=" << d << " m=" << m);
    auto in = framed_input(d, m);
    REQUIRE_NOTHROW(in.validate());
    CHECK(h_equation(in).is_zero());
    ObstructionResult r = obstruction(in);
    CHECK(r.h.is_zero());
    CHECK(r.xi.is_zero());
    CHECK(r.omega.is_zero());
    CHECK_FALSE(r.nonzero);
  }
  CHECK_THROWS_AS(framed_input(5, 3), InvalidArgument);
}

TEST_CASE("class is independent of choices") {
  auto padded = witness_input(2, WitnessVariant::Padded);
  auto rep = choice_independence(padded, 10, 7);
  CHECK(rep.h_choices >= 1);
  CHECK(rep.xi_choices >= 1);
  CHECK(rep.h1_vanishes);
  CHECK(rep.h_independent);
  CHECK(rep.xi_independent);
  CHECK(rep.passed());
  CHECK_FALSE(rep.reference.is_zero());

  auto plain = choice_independence(witness_input(3), 10);
  CHECK(plain.h_choices == 0);
  CHECK(plain.xi_choices == 0);
  CHECK(plain.passed());
  CHECK(plain.notes.size() == 1);

  auto broken = choice_independence(witness_input(2, WitnessVariant::BrokenH1), 10, 3);
  CHECK_FALSE(broken.h1_vanishes);
  CHECK(broken.h_independent);
  CHECK_FALSE(broken.xi_independent);
  CHECK(broken.passed());
  REQUIRE_FALSE(broken.notes.empty());
  CHECK(broken.notes.front().find("H_1(O(3))") != std::string::npos);
}

TEST_CASE("varying g by a boundary is reported, not asserted") {
  auto rep = vary_g_by_boundary(witness_input(2, WitnessVariant::Padded), 5);
  CHECK(rep.boundary_choices >= 1);
  CHECK(rep.moved <= rep.trials);
  auto none = vary_g_by_boundary(witness_input(2), 5);
  CHECK(none.boundary_choices == 0);
  CHECK_FALSE(none.notes.empty());
}

TEST_CASE("[ω] equals d₂ of [g]") {
  for (int m : {2, 3}) {
    INFO("m=" << m);
    auto cmp = compare_with_d2(witness_input(m));
    CHECK(cmp.equal);
    CHECK_FALSE(cmp.d2.is_zero());
    CHECK(cmp.d2 == cmp.omega_class);
    CHECK(cmp.e2_dim == cmp.quotient_dim);
  }
  auto padded = compare_with_d2(witness_input(2, WitnessVariant::Padded));
  CHECK(padded.equal);
  CHECK_FALSE(padded.d2.is_zero());

  auto framed = compare_with_d2(framed_input(5, 2));
  CHECK(framed.equal);
  CHECK(framed.d2.is_zero());
  CHECK(framed.omega_class.is_zero());

  CHECK_THROWS_AS(compare_with_d2(witness_input(2, WitnessVariant::NonAssociative)), InvalidArgument);
}

TEST_CASE("obstruction reports serialize") {
  auto in = witness_input(2);
  Json j = to_json(in, obstruction(in));
  CHECK(j["verdict"] == "nonzero");
  CHECK(j["h"] == "h");
  CHECK(j["xi"] == "0");
  CHECK(j.contains("omega"));
  CHECK(j["class"]["entries"].size() == 1);
  Json c = to_json(choice_independence(in, 2));
  CHECK(c["passed"] == true);
  Json d = to_json(compare_with_d2(in));
  CHECK(d["equal"] == true);
}
