#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hochlab/graded.hpp"
#include "hochlab/instances.hpp"
#include "hochlab/linalg.hpp"
#include "hochlab/operad.hpp"

namespace hochlab {

// The McClure–Smith object of a multiplicative operad, truncated to columns n ≤ n_max and internal
// degrees q ≤ q_max. Cofaces d^i : O(n) → O(n+1) for 0 ≤ i ≤ n+1 are d^0 x = ν∘₂x, d^i x = x∘_iν,
// d^{n+1} x = ν∘₁x; codegeneracies s^j x = x ∘_{j+1} e (0 ≤ j < n) exist when the host has a point e.
struct SemicosimplicialChainComplex {
  std::shared_ptr<const GradedOperad> host;
  std::size_t n_max = 0;
  int q_max = 0;
  std::map<std::size_t, ChainComplexWindow> columns;
  std::map<std::tuple<std::size_t, std::size_t, int>, RationalMatrix> cofaces;         // (n, i, q)
  std::map<std::tuple<std::size_t, std::size_t, int>, RationalMatrix> codegeneracies;  // (n, j, q): n → n-1
  bool has_codegeneracies = false;

  std::size_t dim(std::size_t n, int q) const;
  RationalMatrix coface(std::size_t n, std::size_t i, int q) const;
  RationalMatrix codegeneracy(std::size_t n, std::size_t j, int q) const;
  RationalMatrix internal(std::size_t n, int q) const { return columns.at(n).d(q); }
  // δ = Σ_i (-1)^i d^i from column n to n+1.
  RationalMatrix delta(std::size_t n, int q) const;
  // Cosimplicial identities and the chain-map property on every basis element; returns violations.
  std::vector<std::string> check_identities() const;
};

SemicosimplicialChainComplex mcclure_smith(const MultiplicativeStructure& m, std::size_t n_max, int q_max);

// δ_ν x for x ∈ O(n), as an element of O(n+1).
Element hochschild_differential(const MultiplicativeStructure& m, const Element& x);

// Bounded double complex with commuting d (internal, q → q-1) and δ (column n → n+1). Total degree is
// t = q - n and the total differential on column n is D = δ + (-1)^{n+1} d.
struct DoubleComplex {
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  int q_min = 0;
  int q_max = 0;
  bool truncated_right = false;  // columns past n_max exist in the underlying object
  bool truncated_top = false;    // internal degrees past q_max exist
  std::map<std::pair<std::size_t, int>, std::size_t> dims;
  std::map<std::pair<std::size_t, int>, RationalMatrix> d;      // (n, q) → (n, q-1)
  std::map<std::pair<std::size_t, int>, RationalMatrix> delta;  // (n, q) → (n+1, q)
  // For complexes built from an operad: column basis vectors in the coordinates of O(n)_q.
  std::map<std::pair<std::size_t, int>, std::vector<SparseVector>> embedding;

  std::size_t dim(std::size_t n, int q) const;
  RationalMatrix d_matrix(std::size_t n, int q) const;
  RationalMatrix delta_matrix(std::size_t n, int q) const;
  // Shapes, d∘d = 0, δ∘δ = 0 and dδ = δd; throws InvalidArgument.
  void validate() const;

  int t_min() const { return q_min - static_cast<int>(n_max); }
  int t_max() const { return q_max - static_cast<int>(n_min); }
  std::size_t total_dim(int t) const;
  // Position of block (n, t + n) inside the total space of degree t.
  std::size_t offset(std::size_t n, int t) const;
  SparseVector embed(std::size_t n, int q, const SparseVector& v) const;
  SparseVector component(std::size_t n, int t, const SparseVector& total) const;
  RationalMatrix total_differential(int t) const;  // T_t → T_{t-1}
  ChainComplexWindow total() const;
};

// Columns of the McClure–Smith object, normalized when codegeneracies are present (∩ ker s^j),
// otherwise the full semicosimplicial columns.
DoubleComplex hochschild_double_complex(const SemicosimplicialChainComplex& c, bool normalize = true);

struct PageCell {
  int p = 0;
  int q = 0;
  std::size_t dimension = 0;
  bool reliable = true;
  std::vector<SparseVector> representatives;  // in the total space of degree p + q
};

struct BigradedPage {
  int r = 1;
  std::map<std::pair<int, int>, PageCell> cells;               // keyed by (p, q)
  std::map<std::pair<int, int>, std::size_t> differential_rank;  // rank of d_r leaving (p, q)

  std::size_t dim(int p, int q) const;
  // Totals over p + q = n.
  std::map<int, std::size_t> dims_by_total_degree() const;
};

// Spectral sequence of the column filtration, F_p = ⊕_{n ≥ -p}. Page r at (p, q) is
// Z_r / (Z_{r-1}(p-1) + D Z_{r-1}(p+r-1)) with Z_r(p) = {x ∈ F_p : Dx ∈ F_{p-r}}.
class SpectralSequence {
 public:
  SpectralSequence(DoubleComplex c, int r_max);

  const DoubleComplex& complex() const { return c_; }
  int r_max() const { return r_max_; }
  // Pages degenerate from this r on.
  int r_infinity() const { return static_cast<int>(c_.n_max - c_.n_min) + 2; }
  const BigradedPage& page(int r) const;
  const BigradedPage& infinity_page() const { return page(std::min(r_max_, r_infinity())); }

  // Coordinates on page r of the class of a total-degree vector lying in Z_r at column n.
  SparseVector class_of(int r, std::size_t n, int t, const SparseVector& total) const;
  // d_r of the k-th basis class of page r at column n, total degree t, as coordinates at column n + r.
  SparseVector differential(int r, std::size_t n, int t, std::size_t k) const;
  std::map<int, std::size_t> total_homology_dims() const;

 private:
  struct Spot {
    std::unique_ptr<Subquotient> quotient;
    std::vector<SparseVector> reps;
  };
  const Spot& spot(int r, std::size_t n, int t) const;
  std::vector<SparseVector> z(int r, long a, int t) const;
  bool reliable(int r, std::size_t n, int q) const;

  DoubleComplex c_;
  int r_max_;
  std::map<int, RationalMatrix> total_d_;
  std::map<std::tuple<int, std::size_t, int>, Spot> spots_;  // (r, n, t)
  std::vector<BigradedPage> pages_;
};

std::vector<BigradedPage> ss_pages(const DoubleComplex& c, int r_max);

struct ZigZag {
  std::size_t n = 0;  // column of the starting cycle
  int q = 0;
  SparseVector lift;    // w in column n+1, degree q+1, with d w = (-1)^{n+1} δz
  SparseVector target;  // δw in column n+2, degree q+1
};

// d₂ by one zig-zag step. Throws NotACycle if dz ≠ 0 and LiftFailure if δz is not an internal boundary
// or column n+2 lies outside the window.
ZigZag d2_zigzag(const DoubleComplex& c, std::size_t n, int q, const SparseVector& z);

struct HochschildClass {
  std::size_t arity = 0;  // p = -arity
  int q = 0;
  Element representative;
  bool normalized = true;
};

struct HochschildCell {
  int p = 0;
  int q = 0;
  std::size_t dimension = 0;
  bool reliable = true;
  std::vector<Element> representatives;
  std::shared_ptr<const Subquotient> quotient;  // δ-cycles mod δ-boundaries, in O(n)_q coordinates
};

struct HochschildHomology {
  std::size_t n_max = 0;
  int q_max = 0;
  bool normalized = true;
  std::map<std::pair<int, int>, HochschildCell> cells;  // keyed by (p, q)

  // Throws WindowBoundary for unreliable cells; 0 outside the computed box.
  std::size_t dim(int p, int q) const;
  std::map<std::pair<int, int>, std::size_t> dims() const;
  std::map<int, std::size_t> dims_by_total_degree() const;
  std::vector<HochschildClass> classes() const;
  // Coordinates of a δ-cycle in the class basis at (p, q); throws NotACycle.
  SparseVector class_of(const MultiplicativeStructure& m, const Element& cycle) const;
  bool is_boundary(const MultiplicativeStructure& m, const Element& cycle) const;
};

// Homology of (normalized O(n), δ) for a host with zero internal differential, columns n ≤ n_max.
HochschildHomology hochschild_homology(const MultiplicativeStructure& m, std::size_t n_max, int q_max);

}  // namespace hochlab
