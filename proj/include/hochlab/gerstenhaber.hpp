#pragma once

#include <string>
#include <vector>

#include "hochlab/cosimplicial.hpp"
#include "hochlab/instances.hpp"
#include "hochlab/operad.hpp"

namespace hochlab {

// Shifted degree ℓ = q - n + 1 of x ∈ O(n)_q, i.e. total degree plus one; the bracket preserves it.
int shifted_degree(std::size_t arity, int q);
int shifted_degree(const Element& x);

// An element with its total degree t = q - n; the bracket has degree +1 in t.
struct ShiftedElement {
  Element x;
  int t = 0;
  explicit ShiftedElement(Element e) : x(std::move(e)), t(x.degree() - static_cast<int>(x.arity())) {}
};

// Sign of x ∘_i y in the circle product, x ∈ O(m), y ∈ O(n)_{q_y}:
//   Shifted:   ε(i, x, y) = (-1)^{(m-1) q_y + (n-1)(i-1)}
//   Classical: ε(i, x, y) = (-1)^{(n-1)(i-1)}, blind to internal degrees.
// Both give a Lie bracket on hosts concentrated in even degrees; only Shifted does in general.
enum class SignConvention { Shifted, Classical };

int circle_sign(std::size_t i, std::size_t m, std::size_t n, int q_y,
                SignConvention conv = SignConvention::Shifted);

// x ∘̄ y = Σ_i ε(i, x, y) x ∘_i y, bilinear over basis terms.
Element circle(const GradedOperad& o, const Element& x, const Element& y,
               SignConvention conv = SignConvention::Shifted);
// {x, y} = x ∘̄ y - (-1)^{ℓ_x ℓ_y} y ∘̄ x.
Element bracket(const GradedOperad& o, const Element& x, const Element& y,
                SignConvention conv = SignConvention::Shifted);

struct GerstenhaberReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  void fail(std::string msg);
};

// Pre-Lie identity, graded antisymmetry and graded Jacobi on every basis pair/triple whose brackets stay
// within arity ≤ max_arity and degree ≤ max_degree; δ_ν(x) = -{x, ν} on every basis element.
GerstenhaberReport check_gerstenhaber(const MultiplicativeStructure& m, std::size_t max_arity, int max_degree = -1,
                                      SignConvention conv = SignConvention::Shifted);

// Whether d{x, y} = {dx, y} + s {x, dy} on basis pairs of a host with internal differential, for the
// Koszul sign s = (-1)^{q_x} and the shifted sign s = (-1)^{ℓ_x}.
struct DerivationReport {
  std::size_t pairs = 0;
  std::size_t koszul_failures = 0;
  std::size_t shifted_failures = 0;
  std::string example;  // first pair violating both
  bool is_derivation() const { return koszul_failures == 0 || shifted_failures == 0; }
};

DerivationReport check_bracket_derivation(const GradedOperad& o, std::size_t max_arity,
                                          SignConvention conv = SignConvention::Shifted);

// {c1, c2} on homology, with its coordinates in hh; throws NotACycle if the bracket is not δ-closed.
HochschildClass bracket_on_classes(const MultiplicativeStructure& m, const HochschildClass& c1,
                                   const HochschildClass& c2);

struct PoissonImageReport {
  int d = 0;
  Element source;  // {λ, λ} ∈ P(3)_{2(d-1)}
  Element image;   // its image in the sphere operad
  bool nonzero = false;
  bool matches_sphere_bracket = false;  // image = {α, α}
  bool not_a_boundary = false;          // image is nonzero in HH_{-3, 2(d-1)}
  bool passed() const { return nonzero && matches_sphere_bracket && not_a_boundary; }
};

PoissonImageReport poisson_image_check(int d);
PoissonImageReport poisson_image_check(const OperadMap& f, int d);

}  // namespace hochlab
