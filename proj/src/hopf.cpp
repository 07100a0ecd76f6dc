#include "hochlab/hopf.hpp"

#include <algorithm>
#include <functional>

#include "hochlab/errors.hpp"

namespace hochlab {

int shuffle_sign(std::uint32_t first, std::uint32_t second) {
  int inversions = 0;
  for (std::uint32_t a = first; a; a &= a - 1) {
    int ia = __builtin_ctz(a);
    inversions += __builtin_popcount(second & ((std::uint32_t{1} << ia) - 1));
  }
  return inversions % 2 ? -1 : 1;
}

PrimitiveExteriorHopf::PrimitiveExteriorHopf(std::vector<HopfGenerator> generators) : gens_(std::move(generators)) {
  if (gens_.size() > 16) throw InvalidArgument("too many exterior generators");
  for (const auto& g : gens_)
    if (g.degree <= 0 || g.degree % 2 == 0) throw InvalidArgument("generator '" + g.name + "' must have odd positive degree");
  for (Monomial x = 0; x < dim(); ++x) basis_.push_back(x);
  std::stable_sort(basis_.begin(), basis_.end(), [this](Monomial a, Monomial b) { return degree(a) < degree(b); });
}

int PrimitiveExteriorHopf::degree(Monomial x) const {
  int deg = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (x >> i & 1) deg += gens_[i].degree;
  return deg;
}

std::string PrimitiveExteriorHopf::label(Monomial x) const {
  if (x == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (x >> i & 1) out += gens_[i].name;
  return out;
}

std::map<int, std::size_t> PrimitiveExteriorHopf::dims_by_degree() const {
  std::map<int, std::size_t> out;
  for (Monomial x : basis_) ++out[degree(x)];
  return out;
}

int PrimitiveExteriorHopf::min_generator_degree() const {
  int best = 0;
  for (const auto& g : gens_) best = best == 0 ? g.degree : std::min(best, g.degree);
  return best;
}

std::pair<int, PrimitiveExteriorHopf::Monomial> PrimitiveExteriorHopf::product(Monomial x, Monomial y) const {
  if (x & y) return {0, 0};
  return {shuffle_sign(x, y), x | y};
}

std::vector<std::tuple<int, PrimitiveExteriorHopf::Monomial, PrimitiveExteriorHopf::Monomial>>
PrimitiveExteriorHopf::coproduct(Monomial x) const {
  std::vector<std::tuple<int, Monomial, Monomial>> out;
  // enumerate submasks a of x in increasing order
  std::vector<Monomial> subs;
  for (Monomial a = x;; a = (a - 1) & x) {
    subs.push_back(a);
    if (a == 0) break;
  }
  std::sort(subs.begin(), subs.end());
  for (Monomial a : subs) out.emplace_back(shuffle_sign(a, x & ~a), a, x & ~a);
  return out;
}

std::vector<std::tuple<int, PrimitiveExteriorHopf::Monomial, PrimitiveExteriorHopf::Monomial>>
PrimitiveExteriorHopf::reduced_coproduct(Monomial x) const {
  auto all = coproduct(x);
  std::vector<std::tuple<int, Monomial, Monomial>> out;
  for (const auto& t : all)
    if (std::get<1>(t) != 0 && std::get<2>(t) != 0) out.push_back(t);
  return out;
}

std::vector<std::pair<int, std::vector<PrimitiveExteriorHopf::Monomial>>>
PrimitiveExteriorHopf::iterated_coproduct(Monomial x, std::size_t n) const {
  std::vector<std::pair<int, std::vector<Monomial>>> out;
  if (n == 0) {
    if (x == 0) out.push_back({1, {}});
    return out;
  }
  std::vector<Monomial> slots(n, 0);
  std::vector<std::size_t> bits;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (x >> i & 1) bits.push_back(i);
  // each generator goes to one slot; the sign sorts generators into slot order
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == bits.size()) {
      int sign = 1;
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) sign *= shuffle_sign(slots[s], slots[t]);
      out.push_back({sign, slots});
      return;
    }
    for (std::size_t s = 0; s < n; ++s) {
      slots[s] |= generator(bits[k]);
      rec(k + 1);
      slots[s] &= ~generator(bits[k]);
    }
  };
  rec(0);
  return out;
}

std::size_t PrimitiveExteriorHopf::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  throw InvalidArgument("unknown Hopf generator '" + name + "'");
}

PrimitiveExteriorHopf build_so_hopf(int d, SoVariant variant) {
  if (d < 5 || d % 2 == 0) throw InvalidArgument("d must be odd and at least 5");
  int m = (d - 1) / 2;
  std::vector<HopfGenerator> gens;
  int top = variant == SoVariant::Full ? m : m - 1;
  for (int i = 1; i <= top; ++i) gens.push_back({"β" + std::to_string(i), 4 * i - 1});
  if (variant == SoVariant::FixingSubgroup) gens.push_back({"e", 2 * m - 1});
  return PrimitiveExteriorHopf(std::move(gens));
}

// ------------------------------------------------------------------ cobar

std::vector<CobarWord> cobar_words(const PrimitiveExteriorHopf& h, std::size_t k, int q) {
  std::vector<CobarWord> out;
  CobarWord w;
  std::function<void(int)> rec = [&](int remaining) {
    if (w.size() == k) {
      if (remaining == 0) out.push_back(w);
      return;
    }
    for (auto x : h.basis()) {
      if (x == 0) continue;
      int dx = h.degree(x);
      if (dx > remaining) break;
      w.push_back(x);
      rec(remaining - dx);
      w.pop_back();
    }
  };
  rec(q);
  return out;
}

std::string word_label(const PrimitiveExteriorHopf& h, const CobarWord& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "|";
    out += h.label(w[i]);
  }
  return out + "]";
}

namespace {

RationalMatrix differential_between(const PrimitiveExteriorHopf& h, const std::vector<CobarWord>& src,
                                    const std::vector<CobarWord>& tgt) {
  std::map<CobarWord, std::size_t> index;
  for (std::size_t i = 0; i < tgt.size(); ++i) index[tgt[i]] = i;
  RationalMatrix m(tgt.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto& w = src[c];
    int prefix = 0;  // Σ_{i<j} (|a_i| - 1)
    for (std::size_t j = 0; j < w.size(); ++j) {
      for (const auto& [s, a, b] : h.reduced_coproduct(w[j])) {
        CobarWord nw(w.begin(), w.begin() + j);
        nw.push_back(a);
        nw.push_back(b);
        nw.insert(nw.end(), w.begin() + j + 1, w.end());
        int sign = s * (((prefix + h.degree(a)) % 2) ? -1 : 1);
        m.add(index.at(nw), c, sign);
      }
      prefix += h.degree(w[j]) - 1;
    }
  }
  return m;
}

}  // namespace

RationalMatrix cobar_differential(const PrimitiveExteriorHopf& h, std::size_t k, int q) {
  return differential_between(h, cobar_words(h, k, q), cobar_words(h, k + 1, q));
}

CobarHomology cobar_homology(const PrimitiveExteriorHopf& h, int p_min, int q_max) {
  if (p_min > 0 || q_max < 0) throw InvalidArgument("empty cobar window");
  CobarHomology out;
  out.p_min = p_min;
  out.q_max = q_max;
  const int K = -p_min;
  const int mindeg = std::max(1, h.min_generator_degree());
  out.min_degree = mindeg;
  for (int q = 0; q <= q_max; ++q) {
    int k_possible = q / mindeg;
    int k_cap = std::min(k_possible, K + 1);
    std::vector<std::vector<CobarWord>> words;
    for (int k = 0; k <= k_cap; ++k) words.push_back(cobar_words(h, k, q));

    ChainComplexWindow c;
    c.deg_min = q - k_cap;
    c.deg_max = q;
    c.truncated_below = k_cap < k_possible;
    for (int k = 0; k <= k_cap; ++k) {
      std::vector<Label> labels;
      for (const auto& w : words[k]) labels.emplace_back(word_label(h, w));
      c.space.set_degree(q - k, std::move(labels));
    }
    for (int k = 0; k < k_cap; ++k) {
      auto d = differential_between(h, words[k], words[k + 1]);
      if (!d.is_zero()) c.differential[q - k] = std::move(d);
    }
    auto hom = homology(c);
    for (int k = 0; k <= std::min(k_cap, K); ++k) {
      const auto& dh = hom.degrees.at(q - k);
      CobarCell cell;
      cell.p = -k;
      cell.q = q;
      cell.reliable = dh.reliable;
      cell.dimension = dh.dimension;
      cell.words = words[k];
      cell.representatives = dh.representatives;
      out.cells.emplace(std::make_pair(-k, q), std::move(cell));
    }
    out.complexes.emplace(q, std::move(c));
  }
  return out;
}

std::size_t CobarHomology::dim(int p, int q) const {
  if (p > 0 || q < 0) return 0;
  auto it = cells.find({p, q});
  if (it == cells.end()) {
    if (p < p_min || q > q_max) throw WindowBoundary("bidegree outside the cobar window");
    return 0;
  }
  if (!it->second.reliable) throw WindowBoundary("bidegree at a truncated edge");
  return it->second.dimension;
}

std::size_t CobarHomology::dim_total(int n) const {
  if (n < 0) return 0;
  // words of length k have q ≥ k·mindeg, so n = q - k ≥ k·(mindeg - 1)
  int k_max = min_degree > 1 ? n / (min_degree - 1) : n;
  if (k_max > -p_min || n + k_max > q_max) throw WindowBoundary("total degree not covered by the cobar window");
  std::size_t total = 0;
  for (int k = 0; k <= k_max; ++k) total += dim(-k, n + k);
  return total;
}

std::map<int, std::size_t> CobarHomology::dims_by_total_degree() const {
  std::map<int, std::size_t> out;
  for (int n = 0; n <= q_max; ++n) {
    try {
      out[n] = dim_total(n);
    } catch (const WindowBoundary&) {
      break;
    }
  }
  return out;
}

int CobarHomology::chain_euler(int q) const {
  const auto& c = complexes.at(q);
  int chi = 0;
  for (int n = c.deg_min; n <= c.deg_max; ++n) chi += ((q - n) % 2 ? -1 : 1) * static_cast<int>(c.space.dim(n));
  return chi;
}

int CobarHomology::homology_euler(int q) const {
  const auto& c = complexes.at(q);
  auto hom = homology(c);
  int chi = 0;
  for (const auto& [n, dh] : hom.degrees) chi += ((q - n) % 2 ? -1 : 1) * static_cast<int>(dh.dimension);
  return chi;
}

std::vector<CobarGenerator> cobar_generators(const PrimitiveExteriorHopf& h, const CobarHomology& ch) {
  std::vector<CobarGenerator> out;
  for (std::size_t i = 0; i < h.generators().size(); ++i) {
    const auto& g = h.generators()[i];
    auto it = ch.cells.find({-1, g.degree});
    if (it == ch.cells.end()) throw WindowBoundary("generator bidegree outside the cobar window");
    const auto& words = it->second.words;
    auto pos = std::find(words.begin(), words.end(), CobarWord{h.generator(i)});
    CobarGenerator cg;
    cg.hopf_generator = g.name;
    cg.name = g.name.rfind("β", 0) == 0 ? "γ" + g.name.substr(std::string("β").size()) : (g.name == "e" ? "f" : "[" + g.name + "]");
    cg.q = g.degree;
    cg.representative = SparseVector::unit(words.size(), pos - words.begin());
    out.push_back(std::move(cg));
  }
  return out;
}

}  // namespace hochlab
