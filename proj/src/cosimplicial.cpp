#include "hochlab/cosimplicial.hpp"

#include <algorithm>

#include "hochlab/errors.hpp"

namespace hochlab {

namespace {

RationalMatrix zeros(std::size_t rows, std::size_t cols) { return RationalMatrix(rows, cols); }

RationalMatrix sum(const RationalMatrix& a, const RationalMatrix& b, const Rational& c) {
  RationalMatrix out = a;
  for (const auto& [r, col, v] : b.triplets()) out.add(r, col, c * v);
  return out;
}

// Sub-block rows [r0, r1) × columns [c0, c1).
RationalMatrix block(const RationalMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
  std::vector<SparseVector> rows;
  for (std::size_t r = r0; r < r1; ++r) rows.push_back(m.row(r).slice(c0, c1 - c0));
  return RationalMatrix::from_rows(c1 - c0, rows);
}

std::string where(std::size_t n, int q) { return "(n=" + std::to_string(n) + ", q=" + std::to_string(q) + ")"; }

}  // namespace

// ------------------------------------------------------------ McClure–Smith

std::size_t SemicosimplicialChainComplex::dim(std::size_t n, int q) const {
  auto it = columns.find(n);
  if (it == columns.end() || q < 0 || q > q_max) return 0;
  return it->second.space.dim(q);
}

RationalMatrix SemicosimplicialChainComplex::coface(std::size_t n, std::size_t i, int q) const {
  auto it = cofaces.find({n, i, q});
  return it == cofaces.end() ? zeros(dim(n + 1, q), dim(n, q)) : it->second;
}

RationalMatrix SemicosimplicialChainComplex::codegeneracy(std::size_t n, std::size_t j, int q) const {
  auto it = codegeneracies.find({n, j, q});
  return it == codegeneracies.end() ? zeros(n ? dim(n - 1, q) : 0, dim(n, q)) : it->second;
}

RationalMatrix SemicosimplicialChainComplex::delta(std::size_t n, int q) const {
  RationalMatrix out = zeros(dim(n + 1, q), dim(n, q));
  for (std::size_t i = 0; i <= n + 1; ++i) out = sum(out, coface(n, i, q), sign_of(static_cast<long>(i)));
  return out;
}

std::vector<std::string> SemicosimplicialChainComplex::check_identities() const {
  std::vector<std::string> bad;
  auto report = [&](const std::string& what, std::size_t n, int q) {
    if (bad.size() < 16) bad.push_back(what + " at " + where(n, q));
  };
  for (std::size_t n = 0; n <= n_max; ++n)
    for (int q = 0; q <= q_max; ++q) {
      if (dim(n, q) == 0) continue;
      if (n + 2 <= n_max)
        for (std::size_t j = 1; j <= n + 2; ++j)
          for (std::size_t i = 0; i < j; ++i)
            if (!(coface(n + 1, j, q) * coface(n, i, q) == coface(n + 1, i, q) * coface(n, j - 1, q)))
              report("d^" + std::to_string(j) + " d^" + std::to_string(i) + " != d^" + std::to_string(i) + " d^" +
                         std::to_string(j - 1),
                     n, q);
      if (n + 1 <= n_max)
        for (std::size_t i = 0; i <= n + 1; ++i)
          if (!(internal(n + 1, q) * coface(n, i, q) == coface(n, i, q - 1) * internal(n, q)))
            report("d^" + std::to_string(i) + " is not a chain map", n, q);
      if (!has_codegeneracies) continue;
      // s^j d^i on column n, with s^j : C^{n+1} → C^n
      if (n + 1 <= n_max)
        for (std::size_t j = 0; j <= n; ++j)
          for (std::size_t i = 0; i <= n + 1; ++i) {
            RationalMatrix lhs = codegeneracy(n + 1, j, q) * coface(n, i, q);
            RationalMatrix rhs;
            if (i < j)
              rhs = coface(n - 1, i, q) * codegeneracy(n, j - 1, q);
            else if (i == j || i == j + 1)
              rhs = RationalMatrix::identity(dim(n, q));
            else
              rhs = coface(n - 1, i - 1, q) * codegeneracy(n, j, q);
            if (!(lhs == rhs)) report("s^" + std::to_string(j) + " d^" + std::to_string(i), n, q);
          }
      // s^j s^i = s^i s^{j+1} for i ≤ j, from column n+1
      if (n + 1 <= n_max && n >= 1)
        for (std::size_t j = 0; j + 1 <= n; ++j)
          for (std::size_t i = 0; i <= j; ++i)
            if (!(codegeneracy(n, j, q) * codegeneracy(n + 1, i, q) ==
                  codegeneracy(n, i, q) * codegeneracy(n + 1, j + 1, q)))
              report("s^" + std::to_string(j) + " s^" + std::to_string(i), n + 1, q);
      for (std::size_t j = 0; n >= 1 && j < n; ++j)
        if (!(internal(n - 1, q) * codegeneracy(n, j, q) == codegeneracy(n, j, q - 1) * internal(n, q)))
          report("s^" + std::to_string(j) + " is not a chain map", n, q);
    }
  return bad;
}

SemicosimplicialChainComplex mcclure_smith(const MultiplicativeStructure& m, std::size_t n_max, int q_max) {
  const GradedOperad& o = *m.host;
  if (n_max > o.max_arity())
    throw ArityOverflow("cosimplicial window needs arity " + std::to_string(n_max) + " but the host stops at " +
                        std::to_string(o.max_arity()));
  SemicosimplicialChainComplex c;
  c.host = m.host;
  c.n_max = n_max;
  c.q_max = q_max;
  for (std::size_t n = 0; n <= n_max; ++n) {
    ChainComplexWindow col;
    col.deg_min = 0;
    col.deg_max = q_max;
    col.truncated_above = o.max_degree(n) > q_max;
    for (int q : o.degrees(n)) {
      if (q > q_max) continue;
      std::vector<Label> labels;
      for (std::size_t k = 0; k < o.dim(n, q); ++k) labels.push_back(o.label(n, Cell{q, k}));
      col.space.set_degree(q, std::move(labels));
    }
    if (o.has_differential())
      for (int q : o.degrees(n))
        if (q >= 1 && q <= q_max) {
          auto d = o.differential_matrix(n, q);
          if (!d.is_zero()) col.differential[q] = std::move(d);
        }
    c.columns[n] = std::move(col);
  }
  for (std::size_t n = 0; n < n_max; ++n)
    for (int q : o.degrees(n)) {
      if (q > q_max) continue;
      c.cofaces[{n, 0, q}] = o.compose_matrix(n, q, 2, m.nu, true);
      for (std::size_t i = 1; i <= n; ++i) c.cofaces[{n, i, q}] = o.compose_matrix(n, q, i, m.nu, false);
      c.cofaces[{n, n + 1, q}] = o.compose_matrix(n, q, 1, m.nu, true);
    }
  if (m.point) {
    c.has_codegeneracies = true;
    for (std::size_t n = 1; n <= n_max; ++n)
      for (int q : o.degrees(n)) {
        if (q > q_max) continue;
        for (std::size_t j = 0; j < n; ++j) c.codegeneracies[{n, j, q}] = o.compose_matrix(n, q, j + 1, *m.point, false);
      }
  }
  return c;
}

Element hochschild_differential(const MultiplicativeStructure& m, const Element& x) {
  const GradedOperad& o = *m.host;
  std::size_t n = x.arity();
  Element out = o.compose(m.nu, 2, x);
  for (std::size_t i = 1; i <= n; ++i) out.add_scaled(o.compose(x, i, m.nu), sign_of(static_cast<long>(i)));
  out.add_scaled(o.compose(m.nu, 1, x), sign_of(static_cast<long>(n + 1)));
  return out;
}

// ------------------------------------------------------------ DoubleComplex

std::size_t DoubleComplex::dim(std::size_t n, int q) const {
  auto it = dims.find({n, q});
  return it == dims.end() ? 0 : it->second;
}

RationalMatrix DoubleComplex::d_matrix(std::size_t n, int q) const {
  auto it = d.find({n, q});
  return it == d.end() ? zeros(dim(n, q - 1), dim(n, q)) : it->second;
}

RationalMatrix DoubleComplex::delta_matrix(std::size_t n, int q) const {
  auto it = delta.find({n, q});
  return it == delta.end() ? zeros(dim(n + 1, q), dim(n, q)) : it->second;
}

void DoubleComplex::validate() const {
  for (const auto& [key, m] : d)
    if (m.rows() != dim(key.first, key.second - 1) || m.cols() != dim(key.first, key.second))
      throw InvalidArgument("internal differential has the wrong shape at " + where(key.first, key.second));
  for (const auto& [key, m] : delta)
    if (m.rows() != dim(key.first + 1, key.second) || m.cols() != dim(key.first, key.second))
      throw InvalidArgument("horizontal differential has the wrong shape at " + where(key.first, key.second));
  for (std::size_t n = n_min; n <= n_max; ++n)
    for (int q = q_min; q <= q_max; ++q) {
      if (dim(n, q) == 0) continue;
      if (!(d_matrix(n, q - 1) * d_matrix(n, q)).is_zero()) throw InvalidArgument("d∘d != 0 at " + where(n, q));
      if (n + 1 <= n_max) {
        if (n + 2 <= n_max && !(delta_matrix(n + 1, q) * delta_matrix(n, q)).is_zero())
          throw InvalidArgument("δ∘δ != 0 at " + where(n, q));
        if (!(d_matrix(n + 1, q) * delta_matrix(n, q) == delta_matrix(n, q - 1) * d_matrix(n, q)))
          throw InvalidArgument("d and δ do not commute at " + where(n, q));
      }
    }
}

std::size_t DoubleComplex::total_dim(int t) const { return offset(n_max + 1, t); }

std::size_t DoubleComplex::offset(std::size_t n, int t) const {
  std::size_t off = 0;
  for (std::size_t k = n_min; k < n && k <= n_max; ++k) off += dim(k, t + static_cast<int>(k));
  return off;
}

SparseVector DoubleComplex::embed(std::size_t n, int q, const SparseVector& v) const {
  int t = q - static_cast<int>(n);
  return v.embedded(total_dim(t), offset(n, t));
}

SparseVector DoubleComplex::component(std::size_t n, int t, const SparseVector& total) const {
  return total.slice(offset(n, t), dim(n, t + static_cast<int>(n)));
}

RationalMatrix DoubleComplex::total_differential(int t) const {
  RationalMatrix out(total_dim(t - 1), total_dim(t));
  for (std::size_t n = n_min; n <= n_max; ++n) {
    int q = t + static_cast<int>(n);
    if (dim(n, q) == 0) continue;
    std::size_t col0 = offset(n, t);
    if (n + 1 <= n_max)
      for (const auto& [r, c, v] : delta_matrix(n, q).triplets()) out.add(offset(n + 1, t - 1) + r, col0 + c, v);
    Rational s = sign_of(static_cast<long>(n + 1));
    for (const auto& [r, c, v] : d_matrix(n, q).triplets()) out.add(offset(n, t - 1) + r, col0 + c, s * v);
  }
  return out;
}

ChainComplexWindow DoubleComplex::total() const {
  ChainComplexWindow c;
  c.deg_min = t_min();
  c.deg_max = t_max();
  for (int t = t_min(); t <= t_max(); ++t) {
    std::vector<Label> labels;
    for (std::size_t n = n_min; n <= n_max; ++n) {
      int q = t + static_cast<int>(n);
      for (std::size_t k = 0; k < dim(n, q); ++k)
        labels.emplace_back("c" + std::to_string(n) + "," + std::to_string(q) + "," + std::to_string(k));
    }
    if (!labels.empty()) c.space.set_degree(t, std::move(labels));
    auto m = total_differential(t);
    if (!m.is_zero()) c.differential[t] = std::move(m);
  }
  return c;
}

DoubleComplex hochschild_double_complex(const SemicosimplicialChainComplex& c, bool normalize) {
  DoubleComplex out;
  out.n_min = 0;
  out.n_max = c.n_max;
  out.q_min = 0;
  out.q_max = c.q_max;
  out.truncated_right = true;
  for (const auto& [n, col] : c.columns) out.truncated_top = out.truncated_top || col.truncated_above;

  std::map<std::pair<std::size_t, int>, EchelonBasis> coords;
  for (std::size_t n = 0; n <= c.n_max; ++n)
    for (int q = 0; q <= c.q_max; ++q) {
      std::size_t dm = c.dim(n, q);
      if (dm == 0) continue;
      std::vector<SparseVector> basis;
      std::optional<std::vector<SparseVector>> hint;
      if (normalize && c.has_codegeneracies) hint = c.host->normalized_hint(n, q);
      if (hint) {
        basis = *hint;
      } else if (normalize && c.has_codegeneracies && n >= 1) {
        std::vector<SparseVector> rows;
        for (std::size_t j = 0; j < n; ++j) {
          RationalMatrix s = c.codegeneracy(n, j, q);
          for (std::size_t r = 0; r < s.rows(); ++r)
            if (!s.row(r).is_zero()) rows.push_back(s.row(r));
        }
        basis = kernel_basis(RationalMatrix::from_rows(dm, rows));
      } else {
        for (std::size_t k = 0; k < dm; ++k) basis.push_back(SparseVector::unit(dm, k));
      }
      if (basis.empty()) continue;
      EchelonBasis eb(dm, true);
      for (const auto& v : basis) eb.insert(v);
      coords.emplace(std::pair{n, q}, std::move(eb));
      out.dims[{n, q}] = basis.size();
      out.embedding[{n, q}] = std::move(basis);
    }

  auto restrict = [&](const RationalMatrix& m, std::size_t n_src, int q_src, std::size_t n_tgt, int q_tgt) {
    const auto& src = out.embedding.at({n_src, q_src});
    auto it = coords.find({n_tgt, q_tgt});
    std::vector<SparseVector> cols;
    for (const auto& v : src) {
      SparseVector image = m.apply(v);
      if (it == coords.end()) {
        if (!image.is_zero()) throw Error("normalized columns are not preserved at " + where(n_tgt, q_tgt));
        cols.emplace_back(0);
        continue;
      }
      auto x = it->second.coordinates(image);
      if (!x) throw Error("normalized columns are not preserved at " + where(n_tgt, q_tgt));
      cols.push_back(*x);
    }
    return RationalMatrix::from_columns(out.dim(n_tgt, q_tgt), cols);
  };

  for (const auto& [key, basis] : out.embedding) {
    auto [n, q] = key;
    if (q >= 1) {
      auto m = restrict(c.internal(n, q), n, q, n, q - 1);
      if (!m.is_zero()) out.d[key] = std::move(m);
    }
    if (n + 1 <= c.n_max) {
      auto m = restrict(c.delta(n, q), n, q, n + 1, q);
      if (!m.is_zero()) out.delta[key] = std::move(m);
    }
  }
  return out;
}

// ------------------------------------------------------------ spectral sequence

std::size_t BigradedPage::dim(int p, int q) const {
  auto it = cells.find({p, q});
  return it == cells.end() ? 0 : it->second.dimension;
}

std::map<int, std::size_t> BigradedPage::dims_by_total_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [key, cell] : cells)
    if (cell.dimension) out[key.first + key.second] += cell.dimension;
  return out;
}

SpectralSequence::SpectralSequence(DoubleComplex c, int r_max) : c_(std::move(c)), r_max_(r_max) {
  if (r_max < 1) throw InvalidArgument("spectral sequence needs r_max ≥ 1");
  for (int t = c_.t_min(); t <= c_.t_max() + 1; ++t) total_d_[t] = c_.total_differential(t);

  for (int r = 1; r <= r_max_; ++r)
    for (std::size_t n = c_.n_min; n <= c_.n_max; ++n)
      for (int q = c_.q_min; q <= c_.q_max; ++q) {
        if (c_.dim(n, q) == 0) continue;
        int t = q - static_cast<int>(n);
        long col = static_cast<long>(n);
        std::vector<SparseVector> num = z(r, col, t);
        std::vector<SparseVector> den = z(r - 1, col + 1, t);
        for (const auto& y : z(r - 1, col - r + 1, t + 1)) {
          SparseVector dy = total_d_.at(t + 1).apply(y);
          if (!dy.is_zero()) den.push_back(dy);
        }
        Spot s;
        s.quotient = std::make_unique<Subquotient>(c_.total_dim(t), num, den);
        s.reps = s.quotient->representatives();
        spots_[{r, n, t}] = std::move(s);
      }

  for (int r = 1; r <= r_max_; ++r) {
    BigradedPage page;
    page.r = r;
    for (const auto& [key, s] : spots_) {
      auto [rr, n, t] = key;
      if (rr != r) continue;
      int p = -static_cast<int>(n), q = t + static_cast<int>(n);
      PageCell cell{p, q, s.reps.size(), reliable(r, n, q), s.reps};
      page.cells[{p, q}] = cell;
      std::size_t rank_out = 0;
      if (!s.reps.empty() && n + r <= c_.n_max) {
        std::vector<SparseVector> cols;
        for (std::size_t k = 0; k < s.reps.size(); ++k) cols.push_back(differential(r, n, t, k));
        std::size_t rows = cols.empty() ? 0 : cols.front().dim();
        rank_out = rank(RationalMatrix::from_columns(rows, cols));
      }
      page.differential_rank[{p, q}] = rank_out;
    }
    pages_.push_back(std::move(page));
  }
}

// Z_r at filtration start a (possibly left of the first column): x ∈ F_a with Dx ∈ F_{a+r}.
std::vector<SparseVector> SpectralSequence::z(int r, long a, int t) const {
  if (a > static_cast<long>(c_.n_max)) return {};
  std::size_t n = static_cast<std::size_t>(std::max(a, static_cast<long>(c_.n_min)));
  std::size_t dim_t = c_.total_dim(t);
  std::size_t c0 = c_.offset(n, t);
  if (c0 == dim_t) return {};
  std::vector<SparseVector> out;
  long end = a + r;  // first column allowed in Dx
  if (r <= 0 || end <= static_cast<long>(n)) {
    for (std::size_t k = c0; k < dim_t; ++k) out.push_back(SparseVector::unit(dim_t, k));
    return out;
  }
  std::size_t r0 = c_.offset(n, t - 1), r1 = c_.offset(static_cast<std::size_t>(end), t - 1);
  RationalMatrix m = block(total_d_.at(t), r0, r1, c0, dim_t);
  for (const auto& v : kernel_basis(m)) out.push_back(v.embedded(dim_t, c0));
  return out;
}

const SpectralSequence::Spot& SpectralSequence::spot(int r, std::size_t n, int t) const {
  static const Spot empty;
  auto it = spots_.find({r, n, t});
  return it == spots_.end() ? empty : it->second;
}

bool SpectralSequence::reliable(int r, std::size_t n, int q) const {
  bool right = !c_.truncated_right || n + static_cast<std::size_t>(r) - 1 <= c_.n_max;
  bool top = !c_.truncated_top || q + std::max(1, r - 1) <= c_.q_max;
  return right && top;
}

const BigradedPage& SpectralSequence::page(int r) const {
  if (r < 1 || r > r_max_) throw InvalidArgument("page " + std::to_string(r) + " was not computed");
  return pages_[r - 1];
}

SparseVector SpectralSequence::class_of(int r, std::size_t n, int t, const SparseVector& total) const {
  const Spot& s = spot(r, n, t);
  if (!s.quotient) {
    if (!total.is_zero() && !c_.component(n, t, total).is_zero())
      throw InvalidArgument("vector has no class on an empty page entry");
    return SparseVector(0);
  }
  return s.quotient->coordinates(total);
}

SparseVector SpectralSequence::differential(int r, std::size_t n, int t, std::size_t k) const {
  const Spot& s = spot(r, n, t);
  SparseVector dx = total_d_.at(t).apply(s.reps.at(k));
  return class_of(r, n + static_cast<std::size_t>(r), t - 1, dx);
}

std::map<int, std::size_t> SpectralSequence::total_homology_dims() const {
  std::map<int, std::size_t> out;
  for (int t = c_.t_min(); t <= c_.t_max(); ++t) {
    std::size_t dm = c_.total_dim(t);
    if (dm == 0) continue;
    auto h = homology_at(dm, total_d_.at(t + 1), total_d_.at(t));
    if (h.dimension) out[t] = h.dimension;
  }
  return out;
}

std::vector<BigradedPage> ss_pages(const DoubleComplex& c, int r_max) {
  SpectralSequence ss(c, r_max);
  std::vector<BigradedPage> out;
  for (int r = 1; r <= r_max; ++r) out.push_back(ss.page(r));
  return out;
}

ZigZag d2_zigzag(const DoubleComplex& c, std::size_t n, int q, const SparseVector& z) {
  if (!c.d_matrix(n, q).apply(z).is_zero()) throw NotACycle("zig-zag start is not an internal cycle");
  if (n + 2 > c.n_max) throw LiftFailure("d₂ target column " + std::to_string(n + 2) + " lies outside the window");
  if (q + 1 > c.q_max) throw LiftFailure("d₂ lift degree " + std::to_string(q + 1) + " lies outside the window");
  SparseVector rhs = Rational(sign_of(static_cast<long>(n + 1))) * c.delta_matrix(n, q).apply(z);
  auto w = try_solve(c.d_matrix(n + 1, q + 1), rhs);
  if (!w) throw LiftFailure("δz is not an internal boundary at " + where(n + 1, q));
  ZigZag out;
  out.n = n;
  out.q = q;
  out.lift = *w;
  out.target = c.delta_matrix(n + 1, q + 1).apply(*w);
  return out;
}

// ------------------------------------------------------------ Hochschild homology

std::size_t HochschildHomology::dim(int p, int q) const {
  auto it = cells.find({p, q});
  if (it == cells.end()) return 0;
  if (!it->second.reliable) throw WindowBoundary("HH at (" + std::to_string(p) + ", " + std::to_string(q) +
                                                 ") needs a larger arity window");
  return it->second.dimension;
}

std::map<std::pair<int, int>, std::size_t> HochschildHomology::dims() const {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [key, cell] : cells)
    if (cell.reliable && cell.dimension) out[key] = cell.dimension;
  return out;
}

std::map<int, std::size_t> HochschildHomology::dims_by_total_degree() const {
  std::map<int, std::size_t> out;
  for (const auto& [key, dm] : dims()) out[key.first + key.second] += dm;
  return out;
}

std::vector<HochschildClass> HochschildHomology::classes() const {
  std::vector<HochschildClass> out;
  for (const auto& [key, cell] : cells) {
    if (!cell.reliable) continue;
    for (const auto& rep : cell.representatives)
      out.push_back({static_cast<std::size_t>(-key.first), key.second, rep, normalized});
  }
  return out;
}

SparseVector HochschildHomology::class_of(const MultiplicativeStructure& m, const Element& cycle) const {
  if (cycle.is_zero()) return SparseVector(0);
  int p = -static_cast<int>(cycle.arity()), q = cycle.degree();
  auto it = cells.find({p, q});
  SparseVector v = cycle.vector(q, m.host->dim(cycle.arity(), q));
  if (it == cells.end() || !it->second.quotient) {
    if (!hochschild_differential(m, cycle).is_zero()) throw NotACycle("element is not a δ-cycle");
    return SparseVector(0);
  }
  if (!it->second.quotient->in_numerator(v)) throw NotACycle("element is not a normalized δ-cycle");
  return it->second.quotient->coordinates(v);
}

bool HochschildHomology::is_boundary(const MultiplicativeStructure& m, const Element& cycle) const {
  if (cycle.is_zero()) return true;
  int p = -static_cast<int>(cycle.arity()), q = cycle.degree();
  auto it = cells.find({p, q});
  if (it == cells.end() || !it->second.quotient) return true;
  SparseVector v = cycle.vector(q, m.host->dim(cycle.arity(), q));
  if (!it->second.quotient->in_numerator(v)) throw NotACycle("element is not a normalized δ-cycle");
  return it->second.quotient->in_denominator(v);
}

HochschildHomology hochschild_homology(const MultiplicativeStructure& m, std::size_t n_max, int q_max) {
  const GradedOperad& o = *m.host;
  if (o.has_differential()) throw InvalidArgument("Hochschild homology needs a host with zero differential");
  std::size_t top = std::min(n_max + 1, o.max_arity());
  auto sc = mcclure_smith(m, top, q_max);
  DoubleComplex dc = hochschild_double_complex(sc, true);

  HochschildHomology out;
  out.n_max = std::min(n_max, top);
  out.q_max = q_max;
  out.normalized = sc.has_codegeneracies;
  for (std::size_t n = 0; n <= out.n_max; ++n)
    for (int q = 0; q <= q_max; ++q) {
      std::size_t dm = dc.dim(n, q);
      if (dm == 0) continue;
      RationalMatrix incoming = n >= 1 ? dc.delta_matrix(n - 1, q) : RationalMatrix(dm, 0);
      RationalMatrix outgoing = n + 1 <= top ? dc.delta_matrix(n, q) : RationalMatrix(0, dm);
      DegreeHomology h = homology_at(dm, incoming, outgoing);

      const auto& basis = dc.embedding.at({n, q});
      std::size_t host_dim = o.dim(n, q);
      auto to_host = [&](const SparseVector& v) {
        SparseVector w(host_dim);
        for (const auto& [k, c] : v.entries()) w.add_scaled(basis[k], c);
        return w;
      };
      HochschildCell cell;
      cell.p = -static_cast<int>(n);
      cell.q = q;
      cell.reliable = n + 1 <= top;
      std::vector<SparseVector> cycles, boundaries;
      for (const auto& v : h.cycles) cycles.push_back(to_host(v));
      for (const auto& v : h.boundaries) boundaries.push_back(to_host(v));
      auto quotient = std::make_shared<Subquotient>(host_dim, cycles, boundaries);
      for (const auto& rep : quotient->representatives()) cell.representatives.push_back(Element::from_vector(n, q, rep));
      cell.dimension = cell.representatives.size();
      cell.quotient = std::move(quotient);
      out.cells[{cell.p, cell.q}] = std::move(cell);
    }
  return out;
}

}  // namespace hochlab
