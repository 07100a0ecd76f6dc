#include "hochlab/instances.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "hochlab/errors.hpp"
#include "hochlab/free_operad.hpp"

namespace hochlab {

// ---------------------------------------------------------------- SphereOperad

SphereOperad::SphereOperad(int d, std::size_t max_arity, std::size_t budget) : d_(d), max_arity_(max_arity) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("sphere operad needs an odd d ≥ 3");
  if (pair_count(max_arity) >= 31 || (std::size_t{1} << pair_count(max_arity)) > budget)
    throw InvalidArgument("arity " + std::to_string(max_arity) + " exceeds the basis budget of " +
                          std::to_string(budget));
  sets_.resize(max_arity + 1);
  index_.resize(max_arity + 1);
  for (std::size_t n = 0; n <= max_arity; ++n) {
    std::size_t pc = pair_count(n);
    sets_[n].resize(pc + 1);
    for (PairSet s = 0; s < (PairSet{1} << pc); ++s) {
      auto& bucket = sets_[n][std::popcount(s)];
      index_[n][s] = bucket.size();
      bucket.push_back(s);
    }
  }
}

// Colexicographic: independent of n, so relabelled pairs keep their meaning across arities.
std::size_t SphereOperad::pair_index(std::size_t a, std::size_t b, std::size_t n) {
  if (a < 1 || a >= b || b > n) throw InvalidArgument("pair out of range");
  return (b - 1) * (b - 2) / 2 + (a - 1);
}

std::pair<std::size_t, std::size_t> SphereOperad::pair_at(std::size_t index, std::size_t n) {
  std::size_t b = 2;
  while (b * (b - 1) / 2 <= index) ++b;
  std::size_t a = index - (b - 1) * (b - 2) / 2 + 1;
  if (b > n) throw InvalidArgument("pair index out of range");
  return {a, b};
}

SphereOperad::PairSet SphereOperad::pairs_of(std::size_t n, Cell c) const {
  int k = c.degree / (d_ - 1);
  return sets_.at(n).at(k).at(c.index);
}

Cell SphereOperad::cell_of(std::size_t n, PairSet s) const {
  return Cell{(d_ - 1) * std::popcount(s), index_.at(n).at(s)};
}

Element SphereOperad::e(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) const {
  if (n > max_arity_) throw ArityOverflow("arity above the truncation");
  PairSet s = 0;
  for (auto [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    s |= PairSet{1} << pair_index(a, b, n);
  }
  return Element(n, cell_of(n, s));
}

std::string SphereOperad::name() const {
  return "sphere:d=" + std::to_string(d_) + ":A=" + std::to_string(max_arity_);
}

std::vector<int> SphereOperad::degrees(std::size_t n) const {
  std::vector<int> out;
  if (n > max_arity_) return out;
  for (std::size_t k = 0; k <= pair_count(n); ++k) out.push_back((d_ - 1) * static_cast<int>(k));
  return out;
}

std::size_t SphereOperad::dim(std::size_t n, int q) const {
  if (n > max_arity_ || q < 0 || q % (d_ - 1) != 0) return 0;
  std::size_t k = q / (d_ - 1);
  return k < sets_[n].size() ? sets_[n][k].size() : 0;
}

Label SphereOperad::label(std::size_t n, Cell c) const {
  if (n == 0) return Label("e");
  PairSet s = pairs_of(n, c);
  std::string out = "e{";
  bool first = true;
  for (std::size_t p = 0; p < pair_count(n); ++p)
    if (s >> p & 1) {
      auto [a, b] = pair_at(p, n);
      if (!first) out += ",";
      out += std::to_string(a) + std::to_string(b);
      first = false;
    }
  return Label(out + "}");
}

Element SphereOperad::compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const {
  if (m + n - 1 > max_arity_) throw ArityOverflow("composition exceeds max arity " + std::to_string(max_arity_));
  const std::size_t r = m + n - 1;
  Element out(r);
  PairSet sx = pairs_of(m, x), sy = pairs_of(n, y);

  if (n == 0) {
    PairSet res = 0;
    for (std::size_t p = 0; p < pair_count(m); ++p) {
      if (!(sx >> p & 1)) continue;
      auto [a, b] = pair_at(p, m);
      if (a == i || b == i) return out;
      auto lower = [&](std::size_t w) { return w > i ? w - 1 : w; };
      res |= PairSet{1} << pair_index(lower(a), lower(b), r);
    }
    out.add(cell_of(r, res), 1);
    return out;
  }

  auto relabel = [&](std::size_t w) { return w < i ? w : w + n - 1; };
  PairSet fixed = 0;
  for (std::size_t p = 0; p < pair_count(n); ++p)
    if (sy >> p & 1) {
      auto [a, b] = pair_at(p, n);
      fixed |= PairSet{1} << pair_index(a + i - 1, b + i - 1, r);
    }
  // pairs of x touching i each choose an endpoint in the block {i, ..., i+n-1}
  std::vector<std::size_t> touching;
  for (std::size_t p = 0; p < pair_count(m); ++p) {
    if (!(sx >> p & 1)) continue;
    auto [a, b] = pair_at(p, m);
    if (a == i || b == i)
      touching.push_back(p);
    else
      fixed |= PairSet{1} << pair_index(relabel(a), relabel(b), r);
  }
  std::vector<std::size_t> choice(touching.size(), 0);
  while (true) {
    PairSet s = fixed;
    for (std::size_t t = 0; t < touching.size(); ++t) {
      auto [a, b] = pair_at(touching[t], m);
      std::size_t w = i + choice[t];
      std::size_t other = (a == i) ? relabel(b) : relabel(a);
      s |= PairSet{1} << pair_index(std::min(w, other), std::max(w, other), r);
    }
    out.add(cell_of(r, s), 1);
    std::size_t t = 0;
    while (t < choice.size() && ++choice[t] == n) choice[t++] = 0;
    if (t == choice.size()) break;
  }
  return out;
}

// e_S ∘_i e is nonzero exactly when no pair of S touches i, and distinct such S have distinct images,
// so the normalized part is spanned by the e_S whose pairs cover all of [n].
std::optional<std::vector<SparseVector>> SphereOperad::normalized_hint(std::size_t n, int q) const {
  std::size_t dm = dim(n, q);
  std::vector<SparseVector> out;
  if (n == 0) {
    for (std::size_t k = 0; k < dm; ++k) out.push_back(SparseVector::unit(dm, k));
    return out;
  }
  for (std::size_t k = 0; k < dm; ++k) {
    PairSet s = pairs_of(n, Cell{q, k});
    std::vector<bool> hit(n + 1, false);
    for (std::size_t p = 0; p < pair_count(n); ++p)
      if (s >> p & 1) {
        auto [a, b] = pair_at(p, n);
        hit[a] = hit[b] = true;
      }
    if (std::all_of(hit.begin() + 1, hit.end(), [](bool h) { return h; })) out.push_back(SparseVector::unit(dm, k));
  }
  return out;
}

MultiplicativeStructure sphere_structure(int d, std::size_t max_arity) {
  auto op = std::make_shared<SphereOperad>(d, max_arity);
  return {op, op->mu(), op->point()};
}

// ---------------------------------------------------------------- Poisson

namespace {

struct PoissonEntry {
  std::size_t m;
  const char* x;
  std::size_t i;
  std::size_t n;
  const char* y;
  std::vector<std::pair<const char*, const char*>> terms;
};

const std::vector<PoissonEntry>& poisson_table() {
  static const std::vector<PoissonEntry> table = {
#include "poisson_tables.inc"
  };
  return table;
}

struct PoissonBasisEntry {
  const char* name;
  std::size_t arity;
  int brackets;
};

constexpr PoissonBasisEntry kPoissonBasis[] = {
    {"e", 0, 0},
    {"id", 1, 0},
    {"μ", 2, 0},
    {"λ", 2, 1},
    {"x1x2x3", 3, 0},
    {"λ12x3", 3, 1},
    {"λ13x2", 3, 1},
    {"λ23x1", 3, 1},
    {"λ(λ(x1,x2),x3)", 3, 2},
    {"λ(λ(x1,x3),x2)", 3, 2},
};

}  // namespace

std::shared_ptr<TableOperad> poisson_operad_small(int d) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("poisson operad needs an odd d ≥ 3");
  auto op = std::make_shared<TableOperad>("poisson:d=" + std::to_string(d), 3);
  std::map<std::string, std::pair<std::size_t, Cell>> where;
  std::map<std::pair<std::size_t, int>, std::vector<Label>> labels;
  for (const auto& b : kPoissonBasis) {
    int q = (d - 1) * b.brackets;
    auto& ls = labels[{b.arity, q}];
    where[b.name] = {b.arity, Cell{q, ls.size()}};
    ls.emplace_back(b.name);
  }
  for (auto& [key, ls] : labels) op->set_basis(key.first, key.second, std::move(ls));
  for (const auto& entry : poisson_table()) {
    Element r(entry.m + entry.n - 1);
    for (const auto& [coef, res] : entry.terms) {
      const auto& [arity, cell] = where.at(res);
      r.add(cell, parse_rational(coef));
    }
    op->set_composition(entry.m, where.at(entry.x).second, entry.i, entry.n, where.at(entry.y).second, r);
  }
  op->set_unit(Element(1, Cell{0, 0}));
  return op;
}

MultiplicativeStructure poisson_structure(int d) {
  auto op = poisson_operad_small(d);
  return {op, *op->find(2, "μ"), *op->find(0, "e")};
}

// ---------------------------------------------------------------- OperadMap

Element OperadMap::apply(const Element& x) const {
  Element out(x.arity());
  for (const auto& [c, v] : x.terms()) {
    auto it = blocks.find({x.arity(), c.degree});
    if (it == blocks.end()) throw InvalidArgument("operad map undefined on " + source->label(x.arity(), c).str());
    SparseVector col = it->second.column(c.index);
    out.add_scaled(Element::from_vector(x.arity(), c.degree, col), v);
  }
  return out;
}

std::vector<std::string> OperadMap::check_compositions() const {
  std::vector<std::string> bad;
  std::size_t A = std::min(source->max_arity(), target->max_arity());
  for (std::size_t m = 1; m <= A; ++m)
    for (std::size_t n = 0; m + n - 1 <= A; ++n)
      for (int qx : source->degrees(m))
        for (int qy : source->degrees(n))
          for (std::size_t a = 0; a < source->dim(m, qx); ++a)
            for (std::size_t b = 0; b < source->dim(n, qy); ++b)
              for (std::size_t i = 1; i <= m; ++i) {
                Element x(m, Cell{qx, a}), y(n, Cell{qy, b});
                Element lhs = apply(source->compose(x, i, y));
                Element rhs = target->compose(apply(x), i, apply(y));
                if (!(lhs == rhs))
                  bad.push_back(source->format(x) + " o" + std::to_string(i) + " " + source->format(y) + ": " +
                                target->format(lhs) + " vs " + target->format(rhs));
              }
  return bad;
}

bool OperadMap::injective() const {
  for (const auto& [key, mat] : blocks)
    if (rank(mat) != mat.cols()) return false;
  return true;
}

OperadMap poisson_inclusion(int d) {
  auto p = poisson_operad_small(d);
  auto s = std::make_shared<SphereOperad>(d, 3);
  OperadMap f{p, s, {}};

  // the images of μ, λ and e determine the rest, since every basis element is a composite of them
  Element mu = s->mu(), al = s->alpha();
  std::map<std::string, Element> image = {
      {"e", s->point()},
      {"id", *s->unit()},
      {"μ", mu},
      {"λ", al},
      {"x1x2x3", s->compose(mu, 1, mu)},
      {"λ12x3", s->compose(mu, 1, al)},
      {"λ23x1", s->compose(mu, 2, al)},
      {"λ13x2", s->compose(al, 1, mu) - s->compose(mu, 2, al)},
      {"λ(λ(x1,x2),x3)", s->compose(al, 1, al)},
      {"λ(λ(x1,x3),x2)", s->compose(al, 1, al) - s->compose(al, 2, al)},
  };
  for (std::size_t n = 0; n <= 3; ++n)
    for (int q : p->degrees(n)) {
      std::vector<SparseVector> cols;
      for (std::size_t k = 0; k < p->dim(n, q); ++k)
        cols.push_back(image.at(p->label(n, Cell{q, k}).str()).vector(q, s->dim(n, q)));
      f.blocks[{n, q}] = RationalMatrix::from_columns(s->dim(n, q), cols);
    }
  return f;
}

// ---------------------------------------------------------------- FramedOperad

FramedOperad::FramedOperad(std::shared_ptr<const GradedOperad> base, PrimitiveExteriorHopf hopf, int max_degree)
    : base_(std::move(base)), hopf_(std::move(hopf)), max_degree_(max_degree) {
  const auto& hb = hopf_.basis();
  for (std::size_t n = 0; n <= base_->max_arity(); ++n) {
    std::vector<std::pair<int, Entry>> all;
    for (int q : base_->degrees(n)) {
      if (q > max_degree_) continue;
      for (std::size_t k = 0; k < base_->dim(n, q); ++k) {
        std::vector<std::size_t> pos(n, 0);
        while (true) {
          Entry e{Cell{q, k}, {}};
          int deg = q;
          for (std::size_t j = 0; j < n; ++j) {
            e.decoration.push_back(hb[pos[j]]);
            deg += hopf_.degree(hb[pos[j]]);
          }
          if (deg <= max_degree_) all.emplace_back(deg, std::move(e));
          std::size_t j = n;
          while (j > 0 && ++pos[j - 1] == hb.size()) pos[--j] = 0;
          if (j == 0) break;
        }
      }
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [deg, e] : all) {
      auto& bucket = basis_[{n, deg}];
      index_[n][{e.base, e.decoration}] = Cell{deg, bucket.size()};
      bucket.push_back(std::move(e));
    }
  }
}

const FramedOperad::Entry& FramedOperad::entry(std::size_t n, Cell c) const { return basis_.at({n, c.degree}).at(c.index); }

std::optional<Cell> FramedOperad::cell_of(std::size_t n, const Entry& e) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  auto jt = it->second.find({e.base, e.decoration});
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

Element FramedOperad::lift(const Element& base_element, const std::vector<Monomial>& decoration) const {
  if (decoration.size() != base_element.arity()) throw InvalidArgument("decoration length must equal the arity");
  Element out(base_element.arity());
  for (const auto& [c, v] : base_element.terms()) {
    auto cell = cell_of(base_element.arity(), Entry{c, decoration});
    if (!cell) throw ArityOverflow("lifted element exceeds the degree truncation");
    out.add(*cell, v);
  }
  return out;
}

Element FramedOperad::hopf_element(Monomial g) const {
  auto u = base_->unit();
  if (!u) throw InvalidArgument("base operad has no unit");
  return lift(*u, {g});
}

std::string FramedOperad::name() const { return "framed(" + base_->name() + "):Q=" + std::to_string(max_degree_); }

std::vector<int> FramedOperad::degrees(std::size_t n) const {
  std::vector<int> out;
  for (auto it = basis_.lower_bound({n, INT32_MIN}); it != basis_.end() && it->first.first == n; ++it)
    if (!it->second.empty()) out.push_back(it->first.second);
  return out;
}

std::size_t FramedOperad::dim(std::size_t n, int q) const {
  auto it = basis_.find({n, q});
  return it == basis_.end() ? 0 : it->second.size();
}

Label FramedOperad::label(std::size_t n, Cell c) const {
  const Entry& e = entry(n, c);
  std::string out = base_->label(n, e.base).str() + "·(";
  for (std::size_t j = 0; j < e.decoration.size(); ++j) {
    if (j) out += ",";
    out += hopf_.label(e.decoration[j]);
  }
  return Label(out + ")");
}

Element FramedOperad::compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const {
  if (m + n - 1 > max_arity()) throw ArityOverflow("composition exceeds max arity");
  if (x.degree + y.degree > max_degree_) throw ArityOverflow("composition exceeds the degree truncation");
  const Entry& ex = entry(m, x);
  const Entry& ey = entry(n, y);
  const std::size_t r = m + n - 1;
  Element out(r);
  Element base = base_->compose(Element(m, ex.base), i, Element(n, ey.base));
  if (base.is_zero()) return out;

  auto deg = [&](Monomial g) { return hopf_.degree(g); };
  int g_total = 0, g_after = 0;
  for (std::size_t j = 0; j < m; ++j) {
    g_total += deg(ex.decoration[j]);
    if (j + 1 > i) g_after += deg(ex.decoration[j]);
  }
  // [x, g⃗, y, h⃗] → [x, y, g⃗, h⃗]
  int sign0 = sign_of(static_cast<long>(ey.base.degree) * g_total);

  for (const auto& [s, pieces] : hopf_.iterated_coproduct(ex.decoration[i - 1], n)) {
    int sign = sign0 * s;
    std::vector<Monomial> dec(ex.decoration.begin(), ex.decoration.begin() + (i - 1));
    for (std::size_t k = 0; k < n; ++k) {
      // h_k moves left past a_{k+1..n} and g_{i+1..m}
      int later = g_after;
      for (std::size_t l = k + 1; l < n; ++l) later += deg(pieces[l]);
      sign *= sign_of(static_cast<long>(deg(ey.decoration[k])) * later);
      auto [ps, prod] = hopf_.product(pieces[k], ey.decoration[k]);
      sign *= ps;
      dec.push_back(prod);
    }
    if (sign == 0) continue;
    dec.insert(dec.end(), ex.decoration.begin() + i, ex.decoration.end());
    for (const auto& [bc, bv] : base.terms()) {
      auto cell = cell_of(r, Entry{bc, dec});
      if (!cell) throw ArityOverflow("composition exceeds the degree truncation");
      out.add(*cell, bv * sign);
    }
  }
  return out;
}

std::optional<Element> FramedOperad::unit() const {
  auto u = base_->unit();
  if (!u) return std::nullopt;
  return lift(*u, {0});
}

// x⊗g⃗ ∘_i e vanishes when g_i ≠ 1 and otherwise is (x ∘_i e)⊗(g⃗ without g_i), so the normalized part splits
// over decorations: for each g⃗, the base elements killed by every codegeneracy at a slot with g_i = 1.
std::optional<std::vector<SparseVector>> FramedOperad::normalized_hint(std::size_t n, int q) const {
  std::size_t dm = dim(n, q);
  std::vector<SparseVector> out;
  if (n == 0) {
    for (std::size_t k = 0; k < dm; ++k) out.push_back(SparseVector::unit(dm, k));
    return out;
  }
  if (dm == 0) return out;
  if (base_->dim(0, 0) == 0) return std::nullopt;
  Element point(0, Cell{0, 0});

  std::map<std::vector<Monomial>, std::vector<std::pair<std::size_t, const Entry*>>> sectors;
  const auto& bucket = basis_.at({n, q});
  for (std::size_t k = 0; k < bucket.size(); ++k) sectors[bucket[k].decoration].emplace_back(k, &bucket[k]);

  for (const auto& [dec, members] : sectors) {
    int bq = members.front().second->base.degree;
    std::vector<SparseVector> basis_kernel;
    auto hint = base_->normalized_hint(n, bq);
    bool all_slots = std::none_of(dec.begin(), dec.end(), [](Monomial g) { return g != 0; });
    if (all_slots && hint) {
      basis_kernel = *hint;
    } else {
      std::size_t bd = base_->dim(n, bq);
      std::vector<SparseVector> rows;
      for (std::size_t j = 1; j <= n; ++j) {
        if (dec[j - 1] != 0) continue;
        RationalMatrix s = base_->compose_matrix(n, bq, j, point, false);
        for (std::size_t r = 0; r < s.rows(); ++r)
          if (!s.row(r).is_zero()) rows.push_back(s.row(r));
      }
      basis_kernel = kernel_basis(RationalMatrix::from_rows(bd, rows));
    }
    for (const auto& v : basis_kernel) {
      std::map<std::size_t, Rational> entries;
      for (const auto& [bi, c] : v.entries()) {
        auto cell = cell_of(n, Entry{Cell{bq, bi}, dec});
        if (!cell) throw InvalidArgument("normalized sector leaves the degree window");
        entries[cell->index] = c;
      }
      out.push_back(SparseVector::from_map(dm, entries));
    }
  }
  return out;
}

MultiplicativeStructure framed_structure(int d, std::size_t max_arity, int max_degree) {
  auto base = std::make_shared<SphereOperad>(d, max_arity);
  auto op = std::make_shared<FramedOperad>(base, build_so_hopf(d, SoVariant::Full), max_degree);
  Element nu = op->lift(base->mu(), {0, 0});
  Element pt = op->lift(base->point(), {});
  return {op, nu, pt};
}

// ---------------------------------------------------------------- HomologyOperad

HomologyOperad::HomologyOperad(std::shared_ptr<const GradedOperad> chains) : chains_(std::move(chains)) {
  for (std::size_t n = 0; n <= chains_->max_arity(); ++n) {
    ChainComplexWindow c = chains_->chain_complex(n);
    HomologyResult h = homology(c);
    for (const auto& [q, dh] : h.degrees) {
      if (dh.dimension == 0) continue;
      Degree deg;
      std::size_t dm = chains_->dim(n, q);
      deg.quotient = std::make_unique<Subquotient>(dm, dh.cycles, dh.boundaries);
      deg.reps = deg.quotient->representatives();
      deg.reliable = dh.reliable;
      degrees_[{n, q}] = std::move(deg);
    }
  }
}

const HomologyOperad::Degree* HomologyOperad::find(std::size_t n, int q) const {
  auto it = degrees_.find({n, q});
  return it == degrees_.end() ? nullptr : &it->second;
}

std::vector<int> HomologyOperad::degrees(std::size_t n) const {
  std::vector<int> out;
  for (auto it = degrees_.lower_bound({n, INT32_MIN}); it != degrees_.end() && it->first.first == n; ++it)
    out.push_back(it->first.second);
  return out;
}

std::size_t HomologyOperad::dim(std::size_t n, int q) const {
  const Degree* d = find(n, q);
  return d ? d->reps.size() : 0;
}

Label HomologyOperad::label(std::size_t n, Cell c) const {
  Element rep = representative(n, c);
  return Label("[" + chains_->format(rep) + "]");
}

Element HomologyOperad::representative(std::size_t n, Cell c) const {
  const Degree* d = find(n, c.degree);
  if (!d || c.index >= d->reps.size()) throw InvalidArgument("no such homology class");
  return Element::from_vector(n, c.degree, d->reps[c.index]);
}

Element HomologyOperad::class_of(const Element& cycle) const {
  std::size_t n = cycle.arity();
  Element out(n);
  if (cycle.is_zero()) return out;
  if (!chains_->differential(cycle).is_zero()) throw NotACycle("element is not a cycle");
  int q = cycle.degree();
  const Degree* d = find(n, q);
  if (!d) return out;  // homology vanishes in this degree
  SparseVector coords = d->quotient->coordinates(cycle.vector(q, chains_->dim(n, q)));
  return Element::from_vector(n, q, coords);
}

Element HomologyOperad::compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const {
  return class_of(chains_->compose(representative(m, x), i, representative(n, y)));
}

std::optional<Element> HomologyOperad::unit() const {
  auto u = chains_->unit();
  if (!u) return std::nullopt;
  return class_of(*u);
}

// ---------------------------------------------------------------- named instances

MultiplicativeStructure instance_by_name(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.empty()) throw ParseError("empty instance name");
  std::map<std::string, std::string> kv;
  std::vector<std::string> flags;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    auto eq = parts[k].find('=');
    if (eq == std::string::npos)
      flags.push_back(parts[k]);
    else
      kv[parts[k].substr(0, eq)] = parts[k].substr(eq + 1);
  }
  auto get = [&](const std::string& key, int fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
      return std::stoi(it->second);
    } catch (const std::exception&) {
      throw ParseError("bad value for " + key + " in '" + spec + "'");
    }
  };
  const std::string& kind = parts[0];
  if (kind == "sphere") return sphere_structure(get("d", 5), get("A", 4));
  if (kind == "poisson") return poisson_structure(get("d", 5));
  if (kind == "framed") return framed_structure(get("d", 5), get("A", 3), get("Q", 12));
  if (kind == "witness") {
    WitnessVariant v = WitnessVariant::Plain;
    if (!flags.empty()) {
      if (flags.size() > 1) throw ParseError("at most one witness variant in '" + spec + "'");
      if (flags[0] == "padded")
        v = WitnessVariant::Padded;
      else if (flags[0] == "broken")
        v = WitnessVariant::BrokenH1;
      else if (flags[0] == "nonassoc")
        v = WitnessVariant::NonAssociative;
      else
        throw ParseError("unknown witness variant '" + flags[0] + "'");
    }
    auto op = std::make_shared<FreeChainOperad>(witness_operad(get("m", 2), v));
    return {op, op->generator("nu"), std::nullopt};
  }
  throw ParseError("unknown instance '" + kind + "'");
}

}  // namespace hochlab
