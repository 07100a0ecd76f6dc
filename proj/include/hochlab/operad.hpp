#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/graded.hpp"
#include "hochlab/linalg.hpp"

namespace hochlab {

// A basis element of O(n) is addressed by its degree and its position in the ordered basis of O(n)_q.
struct Cell {
  int degree = 0;
  std::size_t index = 0;
  auto operator<=>(const Cell&) const = default;
};

// Finite linear combination of basis elements of a single arity.
class Element {
 public:
  Element() = default;
  explicit Element(std::size_t arity) : arity_(arity) {}
  Element(std::size_t arity, Cell c, Rational coeff = 1);

  std::size_t arity() const { return arity_; }
  const std::map<Cell, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Throws InvalidArgument on inhomogeneous elements; 0 for the zero element.
  int degree() const;
  bool is_homogeneous() const;
  Rational coeff(Cell c) const;

  void add(Cell c, const Rational& v);
  void add_scaled(const Element& other, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend bool operator==(const Element& a, const Element& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  // Coordinates of the degree-q part in the basis of O(n)_q.
  SparseVector vector(int q, std::size_t dim) const;
  static Element from_vector(std::size_t arity, int q, const SparseVector& v);

 private:
  std::size_t arity_ = 0;
  std::map<Cell, Rational> terms_;
};

// Non-symmetric graded operad truncated at max_arity(). Subclasses provide bases and
// structure constants on basis elements; everything else is derived by linearity.
class GradedOperad {
 public:
  virtual ~GradedOperad() = default;

  virtual std::string name() const = 0;
  virtual std::size_t max_arity() const = 0;
  // Degrees with a nonempty basis in arity n, ascending, within the degree window.
  virtual std::vector<int> degrees(std::size_t n) const = 0;
  virtual std::size_t dim(std::size_t n, int q) const = 0;
  virtual Label label(std::size_t n, Cell c) const = 0;
  // x ∘_i y on basis elements, x of arity m and y of arity n. Throws ArityOverflow past the truncation.
  virtual Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const = 0;

  virtual bool has_differential() const { return false; }
  virtual Element differential_basis(std::size_t n, Cell x) const { (void)x; return Element(n); }
  virtual std::optional<Element> unit() const { return std::nullopt; }
  // Largest degree carried by the truncation in arity n (compositions beyond raise ArityOverflow).
  virtual int max_degree(std::size_t n) const;

  // Optional basis of the normalized Hochschild cochains ∩ ker(x ↦ x ∘_i e); nullopt means "compute
  // it from the compositions".
  virtual std::optional<std::vector<SparseVector>> normalized_hint(std::size_t n, int q) const {
    (void)n, (void)q;
    return std::nullopt;
  }

  Element compose(const Element& x, std::size_t i, const Element& y) const;
  Element differential(const Element& x) const;
  Element basis_element(std::size_t n, int q, std::size_t index) const { return Element(n, Cell{q, index}); }
  std::optional<Element> find(std::size_t n, const std::string& label) const;
  std::string format(const Element& x) const;

  // Matrix of the internal differential O(n)_q → O(n)_{q-1}.
  RationalMatrix differential_matrix(std::size_t n, int q) const;
  // Matrix of x ↦ x ∘_i y (right = false) or x ↦ y ∘_i x (right = true) on O(arity)_q.
  RationalMatrix compose_matrix(std::size_t arity, int q, std::size_t i, const Element& y, bool y_outer) const;
  // O(n) as a chain complex over its degree window [0, max_degree(n)].
  ChainComplexWindow chain_complex(std::size_t n) const;
};

// Structure constants listed explicitly per (m, x, i, n, y); missing entries compose to zero.
class TableOperad : public GradedOperad {
 public:
  TableOperad(std::string name, std::size_t max_arity);

  void set_basis(std::size_t n, int q, std::vector<Label> labels);
  void set_composition(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y, Element result);
  void set_differential(std::size_t n, Cell x, Element dx);
  void set_unit(Element u) { unit_ = std::move(u); }

  std::string name() const override { return name_; }
  std::size_t max_arity() const override { return max_arity_; }
  std::vector<int> degrees(std::size_t n) const override;
  std::size_t dim(std::size_t n, int q) const override;
  Label label(std::size_t n, Cell c) const override;
  Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const override;
  bool has_differential() const override { return !differential_.empty(); }
  Element differential_basis(std::size_t n, Cell x) const override;
  std::optional<Element> unit() const override { return unit_; }

 private:
  using Key = std::tuple<std::size_t, Cell, std::size_t, std::size_t, Cell>;
  std::string name_;
  std::size_t max_arity_;
  std::map<std::size_t, GradedSpace> spaces_;
  std::map<Key, Element> table_;
  std::map<std::pair<std::size_t, Cell>, Element> differential_;
  std::optional<Element> unit_;
};

// Wraps another operad and replaces chosen structure constants; used for negative controls.
class OverrideOperad : public GradedOperad {
 public:
  explicit OverrideOperad(std::shared_ptr<const GradedOperad> base) : base_(std::move(base)) {}
  void override_composition(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y, Element result);

  std::string name() const override { return base_->name() + "+override"; }
  std::size_t max_arity() const override { return base_->max_arity(); }
  std::vector<int> degrees(std::size_t n) const override { return base_->degrees(n); }
  std::size_t dim(std::size_t n, int q) const override { return base_->dim(n, q); }
  Label label(std::size_t n, Cell c) const override { return base_->label(n, c); }
  Element compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const override;
  bool has_differential() const override { return base_->has_differential(); }
  Element differential_basis(std::size_t n, Cell x) const override { return base_->differential_basis(n, x); }
  std::optional<Element> unit() const override { return base_->unit(); }
  int max_degree(std::size_t n) const override { return base_->max_degree(n); }

 private:
  using Key = std::tuple<std::size_t, Cell, std::size_t, std::size_t, Cell>;
  std::shared_ptr<const GradedOperad> base_;
  std::map<Key, Element> overrides_;
};

struct AxiomReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;  // first few violations, with the offending triple

  void fail(std::string msg);
};

// Sequential ("nested") and parallel associativity, unit laws, degree additivity, Leibniz and d∘d = 0,
// on all basis triples with total arity ≤ max_arity (or a deterministic sample of `samples` triples).
AxiomReport check_operad_axioms(const GradedOperad& o, std::size_t samples = 0, int max_degree = -1);

// (-1)^k
inline int sign_of(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace hochlab
