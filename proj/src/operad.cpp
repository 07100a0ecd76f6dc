#include "hochlab/operad.hpp"

#include <algorithm>
#include <sstream>

#include "hochlab/errors.hpp"

namespace hochlab {

// ---------------------------------------------------------------- Element

Element::Element(std::size_t arity, Cell c, Rational coeff) : arity_(arity) { add(c, coeff); }

int Element::degree() const {
  if (terms_.empty()) return 0;
  if (!is_homogeneous()) throw InvalidArgument("element is not homogeneous");
  return terms_.begin()->first.degree;
}

bool Element::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree == terms_.rbegin()->first.degree;
}

Rational Element::coeff(Cell c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add(Cell c, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = terms_.emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

void Element::add_scaled(const Element& other, const Rational& c) {
  if (other.is_zero() || c == 0) return;
  if (other.arity_ != arity_) {
    if (is_zero())
      arity_ = other.arity_;
    else
      throw InvalidArgument("adding elements of different arities");
  }
  for (const auto& [cell, v] : other.terms_) add(cell, c * v);
}

Element& Element::operator+=(const Element& o) {
  add_scaled(o, 1);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  add_scaled(o, -1);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [cell, v] : terms_) v *= c;
  return *this;
}

SparseVector Element::vector(int q, std::size_t dim) const {
  SparseVector v(dim);
  for (const auto& [cell, c] : terms_) {
    if (cell.degree != q) continue;
    if (cell.index >= dim) throw InvalidArgument("element index exceeds the basis");
    v.push_back(cell.index, c);
  }
  return v;
}

Element Element::from_vector(std::size_t arity, int q, const SparseVector& v) {
  Element e(arity);
  for (const auto& [i, c] : v.entries()) e.add(Cell{q, i}, c);
  return e;
}

// ----------------------------------------------------------- GradedOperad

int GradedOperad::max_degree(std::size_t n) const {
  auto ds = degrees(n);
  return ds.empty() ? 0 : ds.back();
}

Element GradedOperad::compose(const Element& x, std::size_t i, const Element& y) const {
  std::size_t m = x.arity(), n = y.arity();
  if (i < 1 || i > m) throw InvalidArgument("composition slot " + std::to_string(i) + " out of range");
  if (m + n - 1 > max_arity()) throw ArityOverflow("composition exceeds max arity " + std::to_string(max_arity()));
  Element out(m + n - 1);
  for (const auto& [cx, a] : x.terms())
    for (const auto& [cy, b] : y.terms()) out.add_scaled(compose_basis(m, cx, i, n, cy), a * b);
  return out;
}

Element GradedOperad::differential(const Element& x) const {
  Element out(x.arity());
  if (!has_differential()) return out;
  for (const auto& [c, a] : x.terms()) out.add_scaled(differential_basis(x.arity(), c), a);
  return out;
}

std::optional<Element> GradedOperad::find(std::size_t n, const std::string& text) const {
  for (int q : degrees(n))
    for (std::size_t k = 0; k < dim(n, q); ++k)
      if (label(n, Cell{q, k}).str() == text) return Element(n, Cell{q, k});
  return std::nullopt;
}

std::string GradedOperad::format(const Element& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, v] : x.terms()) {
    std::string lab = label(x.arity(), c).str();
    if (first) {
      if (v == -1)
        os << "-";
      else if (v != 1)
        os << to_string(v) << "*";
    } else {
      if (v < 0)
        os << " - ";
      else
        os << " + ";
      Rational a = abs(v);
      if (a != 1) os << to_string(a) << "*";
    }
    os << lab;
    first = false;
  }
  return os.str();
}

RationalMatrix GradedOperad::differential_matrix(std::size_t n, int q) const {
  std::size_t src = dim(n, q), tgt = dim(n, q - 1);
  std::vector<SparseVector> cols;
  for (std::size_t k = 0; k < src; ++k) cols.push_back(differential_basis(n, Cell{q, k}).vector(q - 1, tgt));
  return RationalMatrix::from_columns(tgt, cols);
}

RationalMatrix GradedOperad::compose_matrix(std::size_t arity, int q, std::size_t i, const Element& y,
                                            bool y_outer) const {
  std::size_t out_arity = arity + y.arity() - 1;
  int out_deg = q + y.degree();
  std::size_t src = dim(arity, q), tgt = dim(out_arity, out_deg);
  std::vector<SparseVector> cols;
  for (std::size_t k = 0; k < src; ++k) {
    Element x(arity, Cell{q, k});
    Element r = y_outer ? compose(y, i, x) : compose(x, i, y);
    cols.push_back(r.vector(out_deg, tgt));
  }
  return RationalMatrix::from_columns(tgt, cols);
}

ChainComplexWindow GradedOperad::chain_complex(std::size_t n) const {
  ChainComplexWindow c;
  c.deg_min = 0;
  c.deg_max = std::max(0, max_degree(n));
  for (int q : degrees(n)) {
    std::vector<Label> labels;
    for (std::size_t k = 0; k < dim(n, q); ++k) labels.push_back(label(n, Cell{q, k}));
    c.space.set_degree(q, std::move(labels));
  }
  if (has_differential())
    for (int q : degrees(n)) {
      auto d = differential_matrix(n, q);
      if (!d.is_zero()) c.differential[q] = std::move(d);
    }
  return c;
}

// ------------------------------------------------------------ TableOperad

TableOperad::TableOperad(std::string name, std::size_t max_arity) : name_(std::move(name)), max_arity_(max_arity) {}

void TableOperad::set_basis(std::size_t n, int q, std::vector<Label> labels) {
  if (n > max_arity_) throw ArityOverflow("basis arity above the truncation");
  spaces_[n].set_degree(q, std::move(labels));
}

void TableOperad::set_composition(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y, Element result) {
  if (i < 1 || i > m) throw InvalidArgument("composition slot out of range");
  if (result.arity() != m + n - 1 && !result.is_zero()) throw InvalidArgument("composition result has the wrong arity");
  table_[Key{m, x, i, n, y}] = std::move(result);
}

void TableOperad::set_differential(std::size_t n, Cell x, Element dx) { differential_[{n, x}] = std::move(dx); }

std::vector<int> TableOperad::degrees(std::size_t n) const {
  auto it = spaces_.find(n);
  return it == spaces_.end() ? std::vector<int>{} : it->second.degrees();
}

std::size_t TableOperad::dim(std::size_t n, int q) const {
  auto it = spaces_.find(n);
  return it == spaces_.end() ? 0 : it->second.dim(q);
}

Label TableOperad::label(std::size_t n, Cell c) const { return spaces_.at(n).labels(c.degree).at(c.index); }

Element TableOperad::compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const {
  if (m + n - 1 > max_arity_) throw ArityOverflow("composition exceeds max arity");
  auto it = table_.find(Key{m, x, i, n, y});
  if (it == table_.end()) return Element(m + n - 1);
  Element r = it->second;
  if (r.is_zero()) return Element(m + n - 1);
  return r;
}

Element TableOperad::differential_basis(std::size_t n, Cell x) const {
  auto it = differential_.find({n, x});
  return it == differential_.end() ? Element(n) : it->second;
}

// --------------------------------------------------------- OverrideOperad

void OverrideOperad::override_composition(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y,
                                          Element result) {
  overrides_[Key{m, x, i, n, y}] = std::move(result);
}

Element OverrideOperad::compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const {
  auto it = overrides_.find(Key{m, x, i, n, y});
  if (it != overrides_.end()) return it->second.is_zero() ? Element(m + n - 1) : it->second;
  return base_->compose_basis(m, x, i, n, y);
}

// ----------------------------------------------------------------- axioms

void AxiomReport::fail(std::string msg) {
  passed = false;
  if (failures.size() < 8) failures.push_back(std::move(msg));
}

namespace {

struct Basis {
  std::size_t arity;
  Cell cell;
};

std::vector<Basis> all_basis(const GradedOperad& o, std::size_t n, int max_degree) {
  std::vector<Basis> out;
  for (int q : o.degrees(n)) {
    if (max_degree >= 0 && q > max_degree) continue;
    for (std::size_t k = 0; k < o.dim(n, q); ++k) out.push_back({n, Cell{q, k}});
  }
  return out;
}

}  // namespace

AxiomReport check_operad_axioms(const GradedOperad& o, std::size_t samples, int max_degree) {
  AxiomReport rep;
  const std::size_t A = o.max_arity();
  std::vector<std::vector<Basis>> basis(A + 1);
  for (std::size_t n = 0; n <= A; ++n) basis[n] = all_basis(o, n, max_degree);

  auto describe = [&](const std::string& what, const std::vector<std::pair<Basis, std::size_t>>& parts) {
    std::string s = what + ":";
    for (const auto& [b, slot] : parts) {
      s += " " + o.label(b.arity, b.cell).str();
      if (slot) s += " (slot " + std::to_string(slot) + ")";
    }
    return s;
  };

  // Sampling keeps every k-th triple, deterministic across runs.
  std::size_t total_triples = 0;
  for (std::size_t m = 1; m <= A; ++m)
    for (std::size_t n = 0; m + n - 1 <= A; ++n)
      for (std::size_t l = 0; m + n + l - 2 <= A; ++l)
        total_triples += basis[m].size() * basis[n].size() * basis[l].size() * m * (m + n - 1);
  std::size_t stride = (samples == 0 || total_triples <= samples) ? 1 : total_triples / samples;
  std::size_t counter = 0;

  auto safe = [&](auto&& f) -> std::optional<Element> {
    try {
      return f();
    } catch (const ArityOverflow&) {
      return std::nullopt;
    }
  };

  // unit laws and degree additivity / Leibniz on pairs
  auto unit = o.unit();
  for (std::size_t m = 0; m <= A; ++m)
    for (const auto& bx : basis[m]) {
      Element x(m, bx.cell);
      if (unit) {
        auto left = safe([&] { return o.compose(*unit, 1, x); });
        if (left && !(*left == x)) rep.fail(describe("left unit", {{bx, 0}}));
        for (std::size_t i = 1; i <= m; ++i) {
          auto right = safe([&] { return o.compose(x, i, *unit); });
          if (right && !(*right == x)) rep.fail(describe("right unit", {{bx, i}}));
        }
        ++rep.checked;
      }
      if (o.has_differential()) {
        Element dx = o.differential(x);
        if (!dx.is_zero() && (!dx.is_homogeneous() || dx.degree() != bx.cell.degree - 1))
          rep.fail(describe("differential degree", {{bx, 0}}));
        if (!o.differential(dx).is_zero()) rep.fail(describe("d∘d != 0", {{bx, 0}}));
        ++rep.checked;
      }
      for (std::size_t n = 0; m >= 1 && m + n - 1 <= A; ++n)
        for (const auto& by : basis[n])
          for (std::size_t i = 1; i <= m; ++i) {
            if (bx.cell.degree + by.cell.degree > o.max_degree(m + n - 1)) continue;
            Element y(n, by.cell);
            auto xy = safe([&] { return o.compose(x, i, y); });
            if (!xy) continue;
            ++rep.checked;
            if (!xy->is_zero() && (!xy->is_homogeneous() || xy->degree() != bx.cell.degree + by.cell.degree))
              rep.fail(describe("degree additivity", {{bx, i}, {by, 0}}));
            if (o.has_differential()) {
              auto a = safe([&] { return o.compose(o.differential(x), i, y); });
              auto b = safe([&] { return o.compose(x, i, o.differential(y)); });
              if (a && b) {
                Element rhs = *a + Rational(sign_of(bx.cell.degree)) * *b;
                if (!(o.differential(*xy) == rhs)) rep.fail(describe("Leibniz", {{bx, i}, {by, 0}}));
              }
            }
          }
    }

  // associativity on triples
  for (std::size_t m = 1; m <= A; ++m)
    for (std::size_t n = 0; m + n - 1 <= A; ++n)
      for (std::size_t l = 0; m + n + l - 2 <= A; ++l) {
        if (m + n - 1 == 0) continue;
        for (const auto& bx : basis[m])
          for (const auto& by : basis[n])
            for (const auto& bz : basis[l]) {
              if (bx.cell.degree + by.cell.degree + bz.cell.degree > o.max_degree(m + n + l - 2)) continue;
              Element x(m, bx.cell), y(n, by.cell), z(l, bz.cell);
              for (std::size_t i = 1; i <= m; ++i)
                for (std::size_t k = 1; k <= m + n - 1; ++k) {
                  if (counter++ % stride != 0) continue;
                  auto lhs = safe([&] {
                    Element xy = o.compose(x, i, y);
                    return o.compose(xy, k, z);
                  });
                  if (!lhs) continue;
                  std::optional<Element> rhs;
                  if (k >= i && k < i + n) {
                    // nested
                    rhs = safe([&] { return o.compose(x, i, o.compose(y, k - i + 1, z)); });
                  } else if (k < i) {
                    rhs = safe([&] {
                      return Rational(sign_of(static_cast<long>(by.cell.degree) * bz.cell.degree)) *
                             o.compose(o.compose(x, k, z), i + l - 1, y);
                    });
                  } else {
                    // k ≥ i + n: z lands in an x-slot to the right of y
                    std::size_t j = k - n + 1;
                    rhs = safe([&] {
                      return Rational(sign_of(static_cast<long>(by.cell.degree) * bz.cell.degree)) *
                             o.compose(o.compose(x, j, z), i, y);
                    });
                  }
                  if (!rhs) continue;
                  ++rep.checked;
                  if (!(*lhs == *rhs))
                    rep.fail(describe(k >= i && k < i + n ? "nested associativity" : "parallel associativity",
                                      {{bx, i}, {by, k}, {bz, 0}}));
                }
            }
      }
  return rep;
}

}  // namespace hochlab
