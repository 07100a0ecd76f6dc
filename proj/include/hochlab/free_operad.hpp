#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/operad.hpp"

namespace hochlab {

struct Generator {
  std::string name;
  std::size_t arity = 0;
  int degree = 0;
  bool associative = false;  // only meaningful for binary degree-0 generators
};

// Planar rooted tree; gen < 0 marks a leaf.
struct TreeTerm {
  int gen = -1;
  std::vector<TreeTerm> children;

  bool is_leaf() const { return gen < 0; }
  std::size_t arity() const;
  // Preorder code: generator ids, -1 for leaves.
  std::vector<int> code() const;
  static TreeTerm from_code(const std::vector<int>& code, const std::vector<Generator>& gens);

  friend bool operator==(const TreeTerm& a, const TreeTerm& b) { return a.code() == b.code(); }
};

// Free operad on graded generators, truncated to arity ≤ max_arity and degree ≤ max_degree. An
// associative binary generator is handled by rewriting to left combs: ν(A, ν(B, C)) → ν(ν(A, B), C).
//
// Signs: a tree is read as the word of its vertices in preorder. Grafting y into leaf i of x
// costs (-1)^{|y|·(total degree of the vertices of x that come after leaf i)}.
class FreeChainOperad : public GradedOperad {
 public:
  FreeChainOperad(std::string name, std::vector<Generator> gens, std::size_t max_arity, int max_degree);

  // "name:arity:degree[:assoc]" per line, then lines "d name = <expression>"; '#' starts a comment.
  static FreeChainOperad from_text(const std::string& name, const std::string& text, std::size_t max_arity,
                                   int max_degree);

  void set_generator_differential(const std::string& gen, const Element& dx);
  // Expression syntax: signed sums of optional rational coefficients times composites such as
  // "nu o2 g" or "(nu o1 nu) o3 g"; "id" is the identity and "0" the empty sum.
  Element parse_element(const std::string& text) const;

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t generator_index(const std::string& name) const;
  Element generator(const std::string& name) const;

  int degree_of(const TreeTerm& t) const;
  TreeTerm normalize(const TreeTerm& t) const;
  bool is_normal(const TreeTerm& t) const;
  std::string tree_string(const TreeTerm& t) const;
  const TreeTerm& tree(std::size_t n, Cell c) const;
  Cell cell_of(const TreeTerm& normal_tree) const;
  // Signed graft of basis trees, normalized.
  std::pair<int, TreeTerm> graft(const TreeTerm& x, std::size_t i, const TreeTerm& y) const;

  std::string name() const override { return name_; }
  std::size_t max_arity() const override { return max_arity_; }
  std::vector<int> degrees(std::size_t n) const override;
  std::size_t dim(std::size_t n, int q) const override;
  Label label(std::size_t n, Cell c) const override;
  Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const override;
  bool has_differential() const override { return !gen_diff_.empty(); }
  Element differential_basis(std::size_t n, Cell x) const override;
  std::optional<Element> unit() const override;
  int max_degree(std::size_t) const override { return max_degree_; }

 private:
  std::vector<TreeTerm> enumerate(std::size_t n, int q);

  std::string name_;
  std::vector<Generator> gens_;
  std::size_t max_arity_;
  int max_degree_;
  std::map<std::pair<std::size_t, int>, std::vector<TreeTerm>> basis_;
  std::map<std::vector<int>, Cell> index_;
  std::map<std::size_t, Element> gen_diff_;
  struct DiffCache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, Cell>, Element> values;
  };
  std::unique_ptr<DiffCache> cache_ = std::make_unique<DiffCache>();
};

enum class WitnessVariant {
  Plain,           // ν, g, h
  Padded,          // adds cycles z ∈ W(2)_{4m}, c ∈ W(3)_1 with c = db, and u, v ∈ W(1) with du = v
  BrokenH1,        // adds a cycle c ∈ W(3)_1 that is not a boundary, so H_1(W(3)) ≠ 0
  NonAssociative,  // ν free, with ξ ∈ W(3)_1 and dξ = ν∘₂ν - ν∘₁ν
};

// Finite chain operad realizing the obstruction data: dh = ν∘₂g + ν∘₁g - g∘₁ν.
FreeChainOperad witness_operad(int m, WitnessVariant variant = WitnessVariant::Plain);

}  // namespace hochlab
