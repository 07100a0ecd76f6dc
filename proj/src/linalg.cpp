#include "hochlab/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "hochlab/errors.hpp"

namespace hochlab {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw ParseError("empty rational literal");
  if (s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t start = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (t.size() == start) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(start), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- SparseVector

SparseVector::SparseVector(std::initializer_list<Rational> dense) : dim_(dense.size()) {
  std::size_t i = 0;
  for (const auto& v : dense) {
    if (v != 0) entries_.emplace_back(i, v);
    ++i;
  }
}

SparseVector SparseVector::from_dense(const std::vector<Rational>& dense) {
  SparseVector out(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) out.entries_.emplace_back(i, dense[i]);
  return out;
}

SparseVector SparseVector::from_map(std::size_t dim, const std::map<std::size_t, Rational>& entries) {
  SparseVector out(dim);
  for (const auto& [i, v] : entries) {
    if (i >= dim) throw InvalidArgument("sparse vector index out of range");
    if (v != 0) out.entries_.emplace_back(i, v);
  }
  return out;
}

SparseVector SparseVector::unit(std::size_t dim, std::size_t index) {
  SparseVector out(dim);
  out.push_back(index, Rational(1));
  return out;
}

std::vector<Rational> SparseVector::to_dense() const {
  std::vector<Rational> out(dim_);
  for (const auto& [i, v] : entries_) out[i] = v;
  return out;
}

Rational SparseVector::get(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return Rational(0);
}

void SparseVector::set(std::size_t i, const Rational& value) {
  if (i >= dim_) throw InvalidArgument("sparse vector index out of range");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) {
    if (value == 0)
      entries_.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    entries_.insert(it, Entry(i, value));
  }
}

void SparseVector::push_back(std::size_t i, Rational value) {
  if (i >= dim_ || (!entries_.empty() && entries_.back().first >= i))
    throw InvalidArgument("push_back out of order");
  if (value != 0) entries_.emplace_back(i, std::move(value));
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& c) {
  if (other.dim_ != dim_) throw InvalidArgument("dimension mismatch in add_scaled");
  if (c == 0 || other.entries_.empty()) return;
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->first < a->first) {
      merged.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

SparseVector& SparseVector::operator+=(const SparseVector& other) {
  add_scaled(other, Rational(1));
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other) {
  add_scaled(other, Rational(-1));
  return *this;
}

SparseVector& SparseVector::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
  } else {
    for (auto& e : entries_) e.second *= c;
  }
  return *this;
}

SparseVector SparseVector::embedded(std::size_t new_dim, std::size_t offset) const {
  if (offset + dim_ > new_dim) throw InvalidArgument("embedding does not fit");
  SparseVector out(new_dim);
  for (const auto& [i, v] : entries_) out.entries_.emplace_back(i + offset, v);
  return out;
}

SparseVector SparseVector::slice(std::size_t offset, std::size_t len) const {
  SparseVector out(len);
  for (const auto& [i, v] : entries_)
    if (i >= offset && i < offset + len) out.entries_.emplace_back(i - offset, v);
  return out;
}

std::string SparseVector::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) os << ", ";
    os << entries_[k].first << ":" << entries_[k].second.get_str();
  }
  os << "]/" << dim_;
  return os.str();
}

// -------------------------------------------------------------- RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, SparseVector(cols)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back(i, Rational(1));
  return m;
}

RationalMatrix RationalMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged dense matrix");
    m.data_[r] = SparseVector::from_dense(rows[r]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].dim() != rows) throw InvalidArgument("column length mismatch");
    for (const auto& [r, v] : columns[c].entries()) m.data_[r].push_back(c, v);
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, const std::vector<SparseVector>& rows) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != cols) throw InvalidArgument("row length mismatch");
    m.data_[r] = rows[r];
  }
  return m;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
  return data_[r].get(c);
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
  data_[r].set(c, value);
}

void RationalMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  set(r, c, at(r, c) + value);
}

std::vector<SparseVector> RationalMatrix::columns() const {
  std::vector<SparseVector> out(cols_, SparseVector(rows_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r].entries()) out[c].push_back(r, v);
  return out;
}

SparseVector RationalMatrix::column(std::size_t c) const {
  SparseVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational v = data_[r].get(c);
    if (v != 0) out.push_back(r, v);
  }
  return out;
}

std::vector<std::tuple<std::size_t, std::size_t, Rational>> RationalMatrix::triplets() const {
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> out;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r].entries()) out.emplace_back(r, c, v);
  return out;
}

std::size_t RationalMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.nnz();
  return n;
}

SparseVector RationalMatrix::apply(const SparseVector& v) const {
  if (v.dim() != cols_) throw InvalidArgument("matrix-vector dimension mismatch");
  SparseVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& row = data_[r].entries();
    const auto& ve = v.entries();
    Rational acc(0);
    auto a = row.begin();
    auto b = ve.begin();
    while (a != row.end() && b != ve.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        acc += a->second * b->second;
        ++a;
        ++b;
      }
    }
    if (acc != 0) out.push_back(r, acc);
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw InvalidArgument("matrix product dimension mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    SparseVector acc(other.cols_);
    for (const auto& [k, v] : data_[r].entries()) acc.add_scaled(other.data_[k], v);
    out.data_[r] = std::move(acc);
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  return from_rows(rows_, columns());
}

std::vector<std::vector<Rational>> RationalMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out;
  out.reserve(rows_);
  for (const auto& row : data_) out.push_back(row.to_dense());
  return out;
}

// ---------------------------------------------------------------- row reduction

RowReduction row_reduce_dense(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  auto a = m.to_dense();
  auto t = RationalMatrix::identity(rows).to_dense();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t p = next;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[next]);
    std::swap(t[p], t[next]);
    Rational inv = 1 / a[next][c];
    for (auto& x : a[next]) x *= inv;
    for (auto& x : t[next]) x *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[next][k];
      for (std::size_t k = 0; k < rows; ++k) t[r][k] -= f * t[next][k];
    }
    pivots.push_back(c);
    ++next;
  }
  std::vector<SparseVector> reduced_rows, transform_rows;
  for (std::size_t r = 0; r < rows; ++r) {
    SparseVector row(cols), trow(rows);
    for (std::size_t k = 0; k < cols; ++k)
      if (a[r][k] != 0) row.push_back(k, a[r][k]);
    for (std::size_t k = 0; k < rows; ++k)
      if (t[r][k] != 0) trow.push_back(k, t[r][k]);
    reduced_rows.push_back(std::move(row));
    transform_rows.push_back(std::move(trow));
  }
  return {RationalMatrix::from_rows(cols, reduced_rows), pivots,
          RationalMatrix::from_rows(rows, transform_rows)};
}

RowReduction row_reduce_sparse(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<SparseVector> a, t;
  a.reserve(rows);
  t.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    a.push_back(m.row(r));
    t.push_back(SparseVector::unit(rows, r));
  }
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t p = next;
    while (p < rows && a[p].get(c) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[next]);
    std::swap(t[p], t[next]);
    Rational inv = 1 / a[next].get(c);
    a[next] *= inv;
    t[next] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next) continue;
      Rational f = a[r].get(c);
      if (f == 0) continue;
      a[r].add_scaled(a[next], -f);
      t[r].add_scaled(t[next], -f);
    }
    pivots.push_back(c);
    ++next;
  }
  return {RationalMatrix::from_rows(cols, a), pivots, RationalMatrix::from_rows(rows, t)};
}

RowReduction row_reduce(const RationalMatrix& m) {
  if (m.rows() < 64 && m.cols() < 64) return row_reduce_dense(m);
  return row_reduce_sparse(m);
}

std::size_t rank(const RationalMatrix& m) {
  EchelonBasis e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

std::vector<SparseVector> kernel_basis(const RationalMatrix& m) {
  EchelonBasis e(m.rows(), true);
  for (const auto& col : m.columns()) e.insert(col);
  return e.relations();
}

std::optional<SparseVector> try_solve(const RationalMatrix& m, const SparseVector& b) {
  if (b.dim() != m.rows()) throw InvalidArgument("right-hand side has wrong length");
  EchelonBasis e(m.rows(), true);
  for (const auto& col : m.columns()) e.insert(col);
  auto x = e.coordinates(b);
  if (!x) return std::nullopt;
  return x;
}

SparseVector solve_particular(const RationalMatrix& m, const SparseVector& b) {
  auto x = try_solve(m, b);
  if (!x) throw NoSolution("right-hand side is not in the column space");
  return *x;
}

// ---------------------------------------------------------------- EchelonBasis

std::pair<SparseVector, SparseVector> EchelonBasis::reduce_tracked(const SparseVector& v) const {
  if (v.dim() != dim_) throw InvalidArgument("vector dimension does not match subspace ambient");
  SparseVector rem = v;
  SparseVector combo(track_ ? inserted_ + 1 : 0);
  std::size_t cursor = 0;
  while (true) {
    const auto& es = rem.entries();
    auto it = std::lower_bound(es.begin(), es.end(), cursor,
                               [](const SparseVector::Entry& e, std::size_t k) { return e.first < k; });
    std::optional<std::pair<std::size_t, Rational>> hit;
    for (; it != es.end(); ++it) {
      if (rows_.count(it->first)) {
        hit.emplace(it->first, it->second);
        break;
      }
    }
    if (!hit) break;
    const Row& row = rows_.at(hit->first);
    Rational f = hit->second;  // row leading coefficient is 1
    rem.add_scaled(row.vec, -f);
    if (track_) {
      SparseVector c = row.combo;
      if (c.dim() != combo.dim()) c = c.embedded(combo.dim(), 0);
      combo.add_scaled(c, f);
    }
    cursor = hit->first + 1;
  }
  return {std::move(rem), std::move(combo)};
}

SparseVector EchelonBasis::reduce(const SparseVector& v) const { return reduce_tracked(v).first; }

bool EchelonBasis::insert(const SparseVector& v) {
  auto [rem, combo] = reduce_tracked(v);
  std::size_t index = inserted_++;
  if (rem.is_zero()) {
    if (track_) {
      // v - sum combo_k v_k = 0
      SparseVector rel = -combo;
      rel.set(index, Rational(1));
      relations_.push_back(std::move(rel));
    }
    return false;
  }
  std::size_t pivot = rem.entries().front().first;
  Rational inv = 1 / rem.entries().front().second;
  rem *= inv;
  Row row{std::move(rem), SparseVector()};
  if (track_) {
    // rem = v - sum combo_k v_k, scaled by inv
    SparseVector c = -combo;
    c.set(index, Rational(1));
    c *= inv;
    row.combo = std::move(c);
  }
  rows_.emplace(pivot, std::move(row));
  return true;
}

std::optional<SparseVector> EchelonBasis::coordinates(const SparseVector& v) const {
  if (!track_) throw InvalidArgument("coordinates requested from an untracked echelon basis");
  auto [rem, combo] = reduce_tracked(v);
  if (!rem.is_zero()) return std::nullopt;
  return combo.slice(0, inserted_);
}

std::vector<SparseVector> EchelonBasis::relations() const {
  std::vector<SparseVector> out;
  out.reserve(relations_.size());
  for (const auto& r : relations_) out.push_back(r.embedded(inserted_, 0));
  return out;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<SparseVector> EchelonBasis::basis() const {
  std::vector<SparseVector> out;
  for (const auto& [p, row] : rows_) out.push_back(row.vec);
  return out;
}

// --------------------------------------------------------------- QuotientBasis

QuotientBasis::QuotientBasis(std::size_t ambient_dim, const std::vector<SparseVector>& subspace)
    : sub_(ambient_dim) {
  for (const auto& v : subspace) sub_.insert(v);
  auto piv = sub_.pivots();
  std::size_t k = 0;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    if (k < piv.size() && piv[k] == i) {
      ++k;
      continue;
    }
    free_positions_.push_back(i);
    reps_.push_back(SparseVector::unit(ambient_dim, i));
  }
}

SparseVector QuotientBasis::reduce(const SparseVector& v) const {
  SparseVector rem = sub_.reduce(v);
  SparseVector out(free_positions_.size());
  for (const auto& [i, x] : rem.entries()) {
    auto it = std::lower_bound(free_positions_.begin(), free_positions_.end(), i);
    out.push_back(static_cast<std::size_t>(it - free_positions_.begin()), x);
  }
  return out;
}

QuotientBasis quotient_basis(std::size_t ambient_dim, const std::vector<SparseVector>& subspace) {
  return QuotientBasis(ambient_dim, subspace);
}

// ----------------------------------------------------------------- Subquotient

Subquotient::Subquotient(std::size_t ambient_dim, const std::vector<SparseVector>& numerator,
                         const std::vector<SparseVector>& denominator)
    : num_(ambient_dim), den_(ambient_dim), reduced_reps_(ambient_dim, true) {
  for (const auto& v : numerator) num_.insert(v);
  for (const auto& v : denominator) {
    if (!num_.contains(v)) throw InvalidArgument("subquotient denominator not inside numerator");
    den_.insert(v);
  }
  for (const auto& v : numerator) {
    SparseVector r = den_.reduce(v);
    if (r.is_zero() || reduced_reps_.contains(r)) continue;
    reduced_reps_.insert(r);
    reps_.push_back(v);
  }
}

SparseVector Subquotient::coordinates(const SparseVector& v) const {
  if (!num_.contains(v)) throw InvalidArgument("vector is outside the subquotient numerator");
  auto c = reduced_reps_.coordinates(den_.reduce(v));
  if (!c) throw InvalidArgument("subquotient coordinate solve failed");
  return *c;
}

}  // namespace hochlab
