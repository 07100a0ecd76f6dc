#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/hopf.hpp"
#include "hochlab/operad.hpp"

namespace hochlab {

// Homology of the choose-two operad: O(n) = H_*(∏_{i<j} S^{d-1}), basis e_S for S a set of pairs of
// [n], in degree (d-1)|S|. d is odd, so every class is even and no signs occur.
class SphereOperad : public GradedOperad {
 public:
  using PairSet = std::uint32_t;  // bitmask over pair_index

  SphereOperad(int d, std::size_t max_arity, std::size_t budget = std::size_t{1} << 15);

  int d() const { return d_; }
  static std::size_t pair_index(std::size_t a, std::size_t b, std::size_t n);  // 1 ≤ a < b ≤ n
  static std::pair<std::size_t, std::size_t> pair_at(std::size_t index, std::size_t n);
  static std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

  PairSet pairs_of(std::size_t n, Cell c) const;
  Cell cell_of(std::size_t n, PairSet s) const;
  // e_S from a list of pairs, e.g. {{1,2},{1,3}}.
  Element e(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) const;
  Element mu() const { return e(2, {}); }
  Element alpha() const { return e(2, {{1, 2}}); }
  Element point() const { return Element(0, Cell{0, 0}); }

  std::string name() const override;
  std::size_t max_arity() const override { return max_arity_; }
  std::vector<int> degrees(std::size_t n) const override;
  std::size_t dim(std::size_t n, int q) const override;
  Label label(std::size_t n, Cell c) const override;
  Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const override;
  std::optional<Element> unit() const override { return Element(1, Cell{0, 0}); }
  int max_degree(std::size_t n) const override { return (d_ - 1) * static_cast<int>(pair_count(n)); }
  std::optional<std::vector<SparseVector>> normalized_hint(std::size_t n, int q) const override;

 private:
  int d_;
  std::size_t max_arity_;
  // per arity, per |S|: ordered pair sets and the inverse index
  std::vector<std::vector<std::vector<PairSet>>> sets_;
  std::vector<std::map<PairSet, std::size_t>> index_;
};

// A host operad with a multiplication ν ∈ O(2)_0 and optionally an arity-0 point e.
struct MultiplicativeStructure {
  std::shared_ptr<const GradedOperad> host;
  Element nu;
  std::optional<Element> point;
};

MultiplicativeStructure sphere_structure(int d, std::size_t max_arity);

// Homology of the little d-disks operad through arity 3: the Poisson operad with product μ and
// bracket λ of degree d-1 (even, so λ is an ordinary Lie bracket).
std::shared_ptr<TableOperad> poisson_operad_small(int d);
MultiplicativeStructure poisson_structure(int d);

// Per arity n ≤ 3, the matrix of the inclusion into the sphere operad in each degree.
struct OperadMap {
  std::shared_ptr<const GradedOperad> source;
  std::shared_ptr<const GradedOperad> target;
  std::map<std::pair<std::size_t, int>, RationalMatrix> blocks;  // (arity, degree) → matrix

  Element apply(const Element& x) const;
  // Checks f(x ∘_i y) = f(x) ∘_i f(y) on all basis pairs; returns the violations.
  std::vector<std::string> check_compositions() const;
  bool injective() const;
};

OperadMap poisson_inclusion(int d);

// O(n) ⊗ H^{⊗n} with the trivial action: (x ⊗ g⃗) ∘_i (y ⊗ h⃗) distributes Δ^{(n)}(g_i) over h⃗.
class FramedOperad : public GradedOperad {
 public:
  using Monomial = PrimitiveExteriorHopf::Monomial;

  FramedOperad(std::shared_ptr<const GradedOperad> base, PrimitiveExteriorHopf hopf, int max_degree);

  const PrimitiveExteriorHopf& hopf() const { return hopf_; }
  const GradedOperad& base() const { return *base_; }
  Element lift(const Element& base_element, const std::vector<Monomial>& decoration) const;
  // A Hopf element placed in fO(1) = H.
  Element hopf_element(Monomial g) const;

  std::string name() const override;
  std::size_t max_arity() const override { return base_->max_arity(); }
  std::vector<int> degrees(std::size_t n) const override;
  std::size_t dim(std::size_t n, int q) const override;
  Label label(std::size_t n, Cell c) const override;
  Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const override;
  std::optional<Element> unit() const override;
  int max_degree(std::size_t) const override { return max_degree_; }
  std::optional<std::vector<SparseVector>> normalized_hint(std::size_t n, int q) const override;

 private:
  struct Entry {
    Cell base;
    std::vector<Monomial> decoration;
  };
  const Entry& entry(std::size_t n, Cell c) const;
  std::optional<Cell> cell_of(std::size_t n, const Entry& e) const;

  std::shared_ptr<const GradedOperad> base_;
  PrimitiveExteriorHopf hopf_;
  int max_degree_;
  std::map<std::pair<std::size_t, int>, std::vector<Entry>> basis_;
  std::map<std::size_t, std::map<std::pair<Cell, std::vector<Monomial>>, Cell>> index_;
};

MultiplicativeStructure framed_structure(int d, std::size_t max_arity, int max_degree);

// H_*(C) of a chain operad, on chosen representative cycles.
class HomologyOperad : public GradedOperad {
 public:
  explicit HomologyOperad(std::shared_ptr<const GradedOperad> chains);

  const GradedOperad& chains() const { return *chains_; }
  // Chain representative of a basis class.
  Element representative(std::size_t n, Cell c) const;
  // Class of a cycle; throws NotACycle otherwise.
  Element class_of(const Element& cycle) const;

  std::string name() const override { return "H(" + chains_->name() + ")"; }
  std::size_t max_arity() const override { return chains_->max_arity(); }
  std::vector<int> degrees(std::size_t n) const override;
  std::size_t dim(std::size_t n, int q) const override;
  Label label(std::size_t n, Cell c) const override;
  Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const override;
  std::optional<Element> unit() const override;
  int max_degree(std::size_t n) const override { return chains_->max_degree(n); }

 private:
  struct Degree {
    std::vector<SparseVector> reps;
    std::unique_ptr<Subquotient> quotient;
    bool reliable = true;
  };
  const Degree* find(std::size_t n, int q) const;

  std::shared_ptr<const GradedOperad> chains_;
  std::map<std::pair<std::size_t, int>, Degree> degrees_;
};

// Named instances: "sphere:d=5:A=4", "poisson:d=5", "framed:d=5:A=4:Q=12", "witness:m=2[:padded|broken|nonassoc]".
MultiplicativeStructure instance_by_name(const std::string& spec);

}  // namespace hochlab
