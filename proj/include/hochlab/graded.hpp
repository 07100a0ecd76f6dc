#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/linalg.hpp"

namespace hochlab {

// Structured basis label. Atoms compare by name, composites lexicographically
// by (atom, parts); "⊗" composites are produced by tensor().
struct Label {
  std::string atom;
  std::vector<Label> parts;

  Label() = default;
  Label(std::string a) : atom(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Label(std::string a, std::vector<Label> p) : atom(std::move(a)), parts(std::move(p)) {}

  static Label tensor(const Label& a, const Label& b) { return Label("⊗", {a, b}); }

  std::string str() const;
  // Inverse of str(); "a⊗b" parses back into a tensor composite.
  static Label parse(const std::string& text);

  friend bool operator==(const Label& a, const Label& b) {
    return a.atom == b.atom && a.parts == b.parts;
  }
  friend bool operator<(const Label& a, const Label& b);
};

class GradedSpace {
 public:
  GradedSpace() = default;

  // Labels must be unique within the degree.
  void set_degree(int degree, std::vector<Label> labels);

  std::size_t dim(int degree) const;
  const std::vector<Label>& labels(int degree) const;
  std::optional<std::size_t> index_of(int degree, const Label& label) const;
  std::vector<int> degrees() const;  // degrees with a nonempty basis
  std::size_t total_dim() const;

 private:
  std::map<int, std::vector<Label>> basis_;
};

// A chain complex on the degree window [deg_min, deg_max]; d_q maps degree q to q-1.
// truncated_below / truncated_above record that the underlying complex continues past
// that end, so homology there cannot be trusted.
struct ChainComplexWindow {
  GradedSpace space;
  std::map<int, RationalMatrix> differential;  // rows = dim(q-1), cols = dim(q)
  int deg_min = 0;
  int deg_max = 0;
  bool truncated_below = false;
  bool truncated_above = false;

  // Zero map of the right shape when none is stored.
  RationalMatrix d(int q) const;
  // Throws InvalidArgument on shape errors, labels outside the window or d∘d != 0.
  void validate() const;
  bool reliable(int q) const;
};

struct DegreeHomology {
  int degree = 0;
  bool reliable = true;
  std::size_t dimension = 0;
  std::vector<SparseVector> representatives;
  std::vector<SparseVector> boundaries;  // basis of im d_{q+1}
  std::vector<SparseVector> cycles;      // basis of ker d_q
};

struct HomologyResult {
  std::map<int, DegreeHomology> degrees;

  // Throws WindowBoundary if q is an unreliable edge degree.
  std::size_t dim(int q) const;
  const DegreeHomology& at(int q) const;
};

// Homology of one spot of a complex: ker(outgoing) / im(incoming) in Q^dim.
DegreeHomology homology_at(std::size_t dim, const RationalMatrix& incoming,
                           const RationalMatrix& outgoing);

HomologyResult homology(const ChainComplexWindow& c);

// Returns w with d w = z, nullopt if z is not a boundary; throws NotACycle if dz != 0.
std::optional<SparseVector> is_boundary_with_witness(const ChainComplexWindow& c, int q,
                                                     const SparseVector& z);

// Signed Leibniz tensor product d(a⊗b) = da⊗b + (-1)^|a| a⊗db; window is the degree sum
// unless overridden. Basis in degree n ordered by (degree of a, index of a, index of b).
ChainComplexWindow tensor(const ChainComplexWindow& a, const ChainComplexWindow& b);

}  // namespace hochlab
