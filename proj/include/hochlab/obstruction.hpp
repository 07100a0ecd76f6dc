#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/cosimplicial.hpp"
#include "hochlab/free_operad.hpp"
#include "hochlab/json_io.hpp"
#include "hochlab/operad.hpp"

namespace hochlab {

// A chain operad with a binary cycle ν of degree 0 and a unary cycle g of degree 4m-1 such that
// [g∘₁ν] = [ν∘₂g + ν∘₁g].
struct ObstructionInput {
  std::string name;
  std::shared_ptr<const GradedOperad> host;
  Element nu;
  Element g;
  int m = 2;
  std::optional<Element> point;

  int g_degree() const { return 4 * m - 1; }
  int omega_degree() const { return 4 * m; }
  MultiplicativeStructure structure() const;
  // Throws InvalidArgument unless dν = 0, dg = 0, degrees and arities match and arity 3 exists.
  void validate() const;
};

ObstructionInput witness_input(int m, WitnessVariant variant = WitnessVariant::Plain);
// Zero-differential host with g = 1⊗β placed in fO(1), β the Hopf generator of degree 4m-1.
ObstructionInput framed_input(int d, int m, int max_degree = -1);
// Zero-differential host with g = 0, e.g. the sphere or Poisson operad.
ObstructionInput zero_g_input(const MultiplicativeStructure& s, int m);

// "witness:m=2[:padded|broken|nonassoc]", "framed:d=5[:m=2][:Q=9]", "sphere:d=5", "poisson:d=5[:m=2]".
ObstructionInput obstruction_input_by_name(const std::string& spec);

// ν∘₂g + ν∘₁g - g∘₁ν, the chain dh must equal.
Element h_equation(const ObstructionInput& in);
// ν∘₂ν - ν∘₁ν, the chain dξ must equal.
Element xi_equation(const ObstructionInput& in);

// Throws NoSolution when the equation has no solution in O(2)_{4m}.
Element find_h(const ObstructionInput& in);
// ξ = 0 when ν is strictly associative; throws NoSolution when ν is not associative in homology.
Element find_xi(const ObstructionInput& in);

// H_{4m}(O(3)) / δ_ν H_{4m}(O(2)) in the coordinates of O(3)_{4m}.
struct ObstructionQuotient {
  std::shared_ptr<const Subquotient> quotient;
  std::size_t cycles = 0;
  std::size_t boundaries = 0;  // rank of d into O(3)_{4m}
  std::size_t denominator = 0; // rank of boundaries + δ_ν(cycles of O(2)_{4m})
  std::size_t dim() const { return quotient->dim(); }
};

ObstructionQuotient obstruction_quotient(const ObstructionInput& in);

struct ObstructionResult {
  Element h;
  Element xi;
  Element omega1;  // ν∘₂h - h∘₁ν + h∘₂ν - ν∘₁h
  Element omega2;  // g∘₁ξ + ξ∘₁g + ξ∘₂g + ξ∘₃g
  Element omega;   // ω₁ - ω₂
  bool cycle = false;
  SparseVector coordinates;  // class of ω in the quotient; empty when ω is not a cycle
  std::size_t quotient_dim = 0;
  bool nonzero = false;
};

ObstructionResult omega(const ObstructionInput& in, const Element& h, const Element& xi);
ObstructionResult omega(const ObstructionInput& in, const Element& h, const Element& xi, const ObstructionQuotient& q);
ObstructionResult obstruction(const ObstructionInput& in);

struct ChoiceReport {
  std::size_t trials = 0;
  std::size_t h_choices = 0;   // dimension of the cycles of O(2)_{4m}
  std::size_t xi_choices = 0;  // dimension of the cycles of O(3)_1
  bool h1_vanishes = true;     // H_1(O(3)) = 0, the hypothesis behind ξ-independence
  bool h_independent = true;   // every h' = h + cycle gave the reference class
  bool xi_independent = true;  // observed for ξ' = ξ + cycle; asserted only when h1_vanishes
  SparseVector reference;
  std::vector<std::string> notes;
  bool passed() const { return h_independent && (xi_independent || !h1_vanishes); }
};

ChoiceReport choice_independence(const ObstructionInput& in, std::size_t trials, std::uint64_t seed = 1);

// Experiment only: replace g by g + db for boundaries db of O(1)_{4m-1}, re-solve for h and compare classes.
struct CycleDependenceReport {
  std::size_t trials = 0;
  std::size_t boundary_choices = 0;
  std::size_t moved = 0;
  std::vector<std::string> notes;
};

CycleDependenceReport vary_g_by_boundary(const ObstructionInput& in, std::size_t trials, std::uint64_t seed = 1);

// d₂ of the E² class of [g] at bidegree (-1, 4m-1) against the E² class of ω at (-3, 4m), both in the
// page-2 basis of the Hochschild double complex truncated to columns ≤ 3.
struct D2Comparison {
  SparseVector d2;           // spectral-sequence differential
  SparseVector omega_class;  // class of ω on page 2
  SparseVector zigzag_class; // class of the zig-zag target δw
  std::size_t e2_dim = 0;    // dimension of E² at (-3, 4m)
  std::size_t quotient_dim = 0;
  bool equal = false;
};

// Throws InvalidArgument unless ξ = 0 is admissible; LiftFailure propagates from the zig-zag.
D2Comparison compare_with_d2(const ObstructionInput& in);

Json to_json(const ObstructionInput& in, const ObstructionResult& r);
Json to_json(const ChoiceReport& r);
Json to_json(const D2Comparison& r);

}  // namespace hochlab
