#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace hochlab {

// mpq_class keeps numerator/denominator coprime with a positive denominator.
using Rational = mpq_class;

std::string to_string(const Rational& q);
// Accepts "a", "-a", "a/b" with b != 0.
Rational parse_rational(std::string_view text);

class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}
  // Dense literal, zeros dropped.
  SparseVector(std::initializer_list<Rational> dense);

  static SparseVector from_dense(const std::vector<Rational>& dense);
  static SparseVector from_map(std::size_t dim, const std::map<std::size_t, Rational>& entries);
  static SparseVector unit(std::size_t dim, std::size_t index);

  std::vector<Rational> to_dense() const;

  std::size_t dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Rational get(std::size_t i) const;
  void set(std::size_t i, const Rational& value);
  // Appends an entry past every stored index; value must be nonzero.
  void push_back(std::size_t i, Rational value);

  // this += c * other
  void add_scaled(const SparseVector& other, const Rational& c);

  SparseVector& operator+=(const SparseVector& other);
  SparseVector& operator-=(const SparseVector& other);
  SparseVector& operator*=(const Rational& c);

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Rational& c, SparseVector a) { return a *= c; }
  friend SparseVector operator-(SparseVector a) { return a *= Rational(-1); }
  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  // Embeds into a larger ambient space at the given offset.
  SparseVector embedded(std::size_t new_dim, std::size_t offset) const;
  // Restricts to coordinates [offset, offset + len).
  SparseVector slice(std::size_t offset, std::size_t len) const;

  std::string str() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns);
  static RationalMatrix from_rows(std::size_t cols, const std::vector<SparseVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  void add(std::size_t r, std::size_t c, const Rational& value);

  const SparseVector& row(std::size_t r) const { return data_[r]; }
  std::vector<SparseVector> columns() const;
  SparseVector column(std::size_t c) const;

  // (row, col, value) with value != 0, row-major order.
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> triplets() const;
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  SparseVector apply(const SparseVector& v) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix transpose() const;
  std::vector<std::vector<Rational>> to_dense() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

struct RowReduction {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
  RationalMatrix transform;  // transform * input == reduced
};

// Reduced row-echelon form; pivot column chosen leftmost, pivot row smallest index.
// Matrices below 64x64 go through a dense path, larger ones through sparse rows.
RowReduction row_reduce(const RationalMatrix& m);
RowReduction row_reduce_dense(const RationalMatrix& m);
RowReduction row_reduce_sparse(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);
std::vector<SparseVector> kernel_basis(const RationalMatrix& m);
// Throws NoSolution when b is not in the column space.
SparseVector solve_particular(const RationalMatrix& m, const SparseVector& b);
std::optional<SparseVector> try_solve(const RationalMatrix& m, const SparseVector& b);

// Semi-echelon basis of a subspace of Q^dim, grown one vector at a time.
// Optionally remembers how each stored row was built from the inserted vectors.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim = 0, bool track = false) : dim_(dim), track_(track) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  // Returns true when v was independent of the current span.
  bool insert(const SparseVector& v);
  // Canonical remainder: zero on every pivot position.
  SparseVector reduce(const SparseVector& v) const;
  bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }
  // Coefficients over the inserted vectors (tracking only); nullopt if v is outside the span.
  std::optional<SparseVector> coordinates(const SparseVector& v) const;
  // Relations found so far: coefficient vectors c with sum c_j v_j = 0 (tracking only).
  std::vector<SparseVector> relations() const;

  std::vector<std::size_t> pivots() const;
  std::vector<SparseVector> basis() const;

 private:
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  std::pair<SparseVector, SparseVector> reduce_tracked(const SparseVector& v) const;

  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Row> rows_;
  std::vector<SparseVector> relations_;
};

// Ambient space modulo a subspace, with a coordinate map on the quotient.
class QuotientBasis {
 public:
  QuotientBasis(std::size_t ambient_dim, const std::vector<SparseVector>& subspace);

  const std::vector<SparseVector>& representatives() const { return reps_; }
  std::size_t dim() const { return reps_.size(); }
  // Coordinates in the representative basis; zero exactly on the subspace.
  SparseVector reduce(const SparseVector& v) const;

 private:
  EchelonBasis sub_;
  std::vector<std::size_t> free_positions_;
  std::vector<SparseVector> reps_;
};

QuotientBasis quotient_basis(std::size_t ambient_dim, const std::vector<SparseVector>& subspace);

// span(numerator) / span(denominator), requiring denominator to lie in the numerator span.
class Subquotient {
 public:
  Subquotient(std::size_t ambient_dim, const std::vector<SparseVector>& numerator,
              const std::vector<SparseVector>& denominator);

  std::size_t dim() const { return reps_.size(); }
  const std::vector<SparseVector>& representatives() const { return reps_; }
  bool in_numerator(const SparseVector& v) const { return num_.contains(v); }
  bool in_denominator(const SparseVector& v) const { return den_.contains(v); }
  // Coordinates of the class of v; throws InvalidArgument if v is outside the numerator.
  SparseVector coordinates(const SparseVector& v) const;

 private:
  EchelonBasis num_;
  EchelonBasis den_;
  EchelonBasis reduced_reps_;
  std::vector<SparseVector> reps_;
};

}  // namespace hochlab
