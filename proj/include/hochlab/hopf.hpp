#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/graded.hpp"
#include "hochlab/linalg.hpp"

namespace hochlab {

struct HopfGenerator {
  std::string name;
  int degree;
};

// Exterior algebra on odd primitive generators. Monomials are bitmasks over the
// generator list, read in increasing generator order.
class PrimitiveExteriorHopf {
 public:
  using Monomial = std::uint32_t;

  explicit PrimitiveExteriorHopf(std::vector<HopfGenerator> generators);

  const std::vector<HopfGenerator>& generators() const { return gens_; }
  std::size_t dim() const { return std::size_t{1} << gens_.size(); }
  int degree(Monomial x) const;
  std::string label(Monomial x) const;
  // All monomials, sorted by (degree, mask).
  const std::vector<Monomial>& basis() const { return basis_; }
  std::map<int, std::size_t> dims_by_degree() const;
  int min_generator_degree() const;

  // x·y as sign·mask; sign 0 when x and y share a generator.
  std::pair<int, Monomial> product(Monomial x, Monomial y) const;
  // Full coproduct: terms sign·(a ⊗ b) with a ∪ b = x.
  std::vector<std::tuple<int, Monomial, Monomial>> coproduct(Monomial x) const;
  // Terms with both tensor factors of positive degree.
  std::vector<std::tuple<int, Monomial, Monomial>> reduced_coproduct(Monomial x) const;
  // Δ^{(n)} into n ordered slots (counit when n = 0).
  std::vector<std::pair<int, std::vector<Monomial>>> iterated_coproduct(Monomial x, std::size_t n) const;

  Monomial generator(std::size_t i) const { return Monomial{1} << i; }
  std::size_t generator_index(const std::string& name) const;

 private:
  std::vector<HopfGenerator> gens_;
  std::vector<Monomial> basis_;
};

enum class SoVariant { Full, FixingSubgroup };

// Rational homology of SO_d (full) or SO_{d-1} (fixing-subgroup), d odd ≥ 5.
PrimitiveExteriorHopf build_so_hopf(int d, SoVariant variant);

// Move sign for reordering odd generators: (-1)^{#{(a in first, b in second) : a > b}}.
int shuffle_sign(std::uint32_t first, std::uint32_t second);

using CobarWord = std::vector<PrimitiveExteriorHopf::Monomial>;

struct CobarCell {
  int p = 0;
  int q = 0;
  bool reliable = true;
  std::size_t dimension = 0;
  std::vector<CobarWord> words;                // chain basis at (p, q)
  std::vector<SparseVector> representatives;  // cycles over `words`
};

struct CobarHomology {
  int p_min = 0;
  int q_max = 0;
  int min_degree = 1;  // smallest generator degree of the Hopf algebra
  std::map<std::pair<int, int>, CobarCell> cells;  // keyed by (p, q)
  // cobar chain complexes in each internal degree, graded by total degree p + q
  std::map<int, ChainComplexWindow> complexes;

  std::size_t dim(int p, int q) const;
  // Totals over cells with p + q = n; throws WindowBoundary if n is not fully covered.
  std::size_t dim_total(int n) const;
  std::map<int, std::size_t> dims_by_total_degree() const;
  // Σ_p (-1)^p dim over the chains and over homology, per internal degree q.
  int chain_euler(int q) const;
  int homology_euler(int q) const;
};

// Reduced words of length k and internal degree q, length-lexicographic in basis order.
std::vector<CobarWord> cobar_words(const PrimitiveExteriorHopf& h, std::size_t k, int q);
std::string word_label(const PrimitiveExteriorHopf& h, const CobarWord& w);

// Cobar differential from length k to length k + 1 in internal degree q.
RationalMatrix cobar_differential(const PrimitiveExteriorHopf& h, std::size_t k, int q);

// Bigraded homology on the box p_min ≤ p ≤ 0, 0 ≤ q ≤ q_max.
CobarHomology cobar_homology(const PrimitiveExteriorHopf& h, int p_min, int q_max);

struct CobarGenerator {
  std::string name;  // γ_i for β_i, f for e
  std::string hopf_generator;
  int p = -1;
  int q = 0;
  SparseVector representative;  // over the words of the cell
};

// Names the classes [x] of length-one words by bidegree (-1, |x|).
std::vector<CobarGenerator> cobar_generators(const PrimitiveExteriorHopf& h, const CobarHomology& ch);

}  // namespace hochlab
