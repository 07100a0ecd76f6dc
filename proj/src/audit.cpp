#include "hochlab/audit.hpp"

#include <iomanip>
#include <sstream>

#include "hochlab/cosimplicial.hpp"
#include "hochlab/errors.hpp"
#include "hochlab/hopf.hpp"
#include "hochlab/instances.hpp"

namespace hochlab {

namespace {

std::string bidegree_str(Bidegree b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

void enumerate(const std::vector<AuditGenerator>& gens, std::size_t k, int p, int q, bool permanent, int p_min,
               int q_max, std::map<Bidegree, MonomialCount>& out) {
  if (k == gens.size()) {
    auto& c = out[{p, q}];
    ++c.total;
    if (permanent) ++c.permanent;
    return;
  }
  const auto& g = gens[k];
  std::size_t max_exp = g.exterior ? 1 : static_cast<std::size_t>(-1);
  for (std::size_t e = 0; e <= max_exp; ++e) {
    int pe = p + static_cast<int>(e) * g.p, qe = q + static_cast<int>(e) * g.q;
    if (pe < p_min || qe > q_max) break;
    enumerate(gens, k + 1, pe, qe, permanent && (e == 0 || g.permanent), p_min, q_max, out);
  }
}

DimTable nonzero_cells(const std::map<Bidegree, std::size_t>& dims) {
  DimTable out;
  for (const auto& [b, n] : dims)
    if (n) out[b] = n;
  return out;
}

std::size_t lookup(const DimTable& t, Bidegree b) {
  auto it = t.find(b);
  return it == t.end() ? 0 : it->second;
}

}  // namespace

std::map<Bidegree, MonomialCount> monomial_table(const std::vector<AuditGenerator>& gens, int p_min, int q_max) {
  for (const auto& g : gens)
    if (g.p >= 0 || g.q < 0) throw InvalidArgument("generator " + g.name + " must have p < 0 and q ≥ 0");
  std::map<Bidegree, MonomialCount> out;
  enumerate(gens, 0, 0, 0, true, p_min, q_max, out);
  return out;
}

void check_consistency(const AuditInput& in) {
  auto mono = monomial_table(in.generators, in.p_min, in.q_max);
  for (const auto& [b, c] : mono)
    if (lookup(in.e2, b) != c.total)
      throw InvalidArgument("E² at " + bidegree_str(b) + " is " + std::to_string(lookup(in.e2, b)) +
                            " but the generators give " + std::to_string(c.total));
  for (const auto& [b, n] : in.e2)
    if (n && !mono.count(b)) throw InvalidArgument("E² at " + bidegree_str(b) + " is not generated");
}

AuditReport convergence_audit(const AuditInput& in, bool strict) {
  check_consistency(in);
  auto mono = monomial_table(in.generators, in.p_min, in.q_max);
  AuditReport rep;
  for (const auto& g : in.generators) {
    auto ab = in.abutment.find(g.total());
    if (ab == in.abutment.end()) {
      rep.notes.push_back(g.name + ": abutment unknown in total degree " + std::to_string(g.total()));
      continue;
    }
    if (ab->second != 0) continue;
    if (!g.permanent) {
      rep.notes.push_back(g.name + " is absent from the abutment and must support a differential");
      continue;
    }
    Bidegree target{g.p, g.q};
    InconclusiveTarget cand{g.name, target, {}};
    for (int r = 2; g.p + r <= 0; ++r) {
      Bidegree src{g.p + r, g.q - r + 1};
      if (src.second < 0) break;
      auto it = mono.find(src);
      if (it == mono.end() || it->second.total == it->second.permanent) continue;
      cand.candidates.push_back({r, src});
    }
    if (cand.candidates.size() == 1) {
      auto [r, src] = cand.candidates.front();
      std::ostringstream why;
      why << g.name << " is a permanent cycle in total degree " << g.total()
          << ", absent from the abutment, so it must be hit; the only non-permanent class on a source "
          << "bidegree (p+r, q-r+1) sits at " << bidegree_str(src) << " with r = " << r;
      rep.forced.push_back({r, src, target, why.str()});
    } else {
      if (cand.candidates.empty())
        rep.notes.push_back(g.name + " must be hit but no source exists inside the window");
      rep.inconclusive.push_back(std::move(cand));
    }
  }
  if (strict && !rep.inconclusive.empty())
    throw Inconclusive("no unique source for " + rep.inconclusive.front().generator);
  return rep;
}

DimTable convolve(const DimTable& a, const DimTable& b, int p_min, int q_max) {
  DimTable out;
  for (const auto& [ba, na] : a)
    for (const auto& [bb, nb] : b) {
      int p = ba.first + bb.first, q = ba.second + bb.second;
      if (p < p_min || q > q_max || na * nb == 0) continue;
      out[{p, q}] += na * nb;
    }
  return out;
}

namespace {

DimTable sphere_hh(int d, int p_min, int q_max) {
  auto n = static_cast<std::size_t>(-p_min);
  return nonzero_cells(hochschild_homology(sphere_structure(d, n + 1), n, q_max).dims());
}

DimTable cobar_dims(const CobarHomology& ch) {
  DimTable out;
  for (const auto& [b, cell] : ch.cells) {
    if (!cell.reliable) throw WindowBoundary("cobar cell " + bidegree_str(b) + " is at the window edge");
    if (cell.dimension) out[b] = cell.dimension;
  }
  return out;
}

}  // namespace

AuditInput framed_audit_input(int d, int p_min, int q_max) {
  if (d < 5 || d % 2 == 0) throw InvalidArgument("the audit needs odd d ≥ 5");
  if (p_min > -3 || q_max < 2 * d - 2) throw InvalidArgument("window must contain (-3, 2d-2)");
  int m = (d - 1) / 2;
  AuditInput in;
  in.p_min = p_min;
  in.q_max = q_max;

  DimTable hh = sphere_hh(d, p_min, q_max);
  auto so = build_so_hopf(d, SoVariant::Full);
  auto ch = cobar_homology(so, p_min, q_max);
  in.e2 = convolve(hh, cobar_dims(ch), p_min, q_max);

  if (lookup(hh, {-2, d - 1}) != 1 || lookup(hh, {-3, 2 * d - 2}) != 1)
    throw Error("sphere Hochschild homology lacks x or {x,x}");
  in.generators.push_back({"x", -2, d - 1, true, false});
  in.generators.push_back({"{x,x}", -3, 2 * d - 2, true, true});
  for (const auto& g : cobar_generators(so, ch))
    in.generators.push_back({g.name, g.p, g.q, g.q < 4 * m - 1, (g.p + g.q) % 2 != 0});

  auto fix = build_so_hopf(d, SoVariant::FixingSubgroup);
  int t_max = q_max;
  auto ab = cobar_homology(fix, -(t_max / 2 + 1), t_max + t_max / 2 + 2);
  for (int t = 0; t <= t_max; ++t) {
    try {
      in.abutment[t] = ab.dim_total(t);
    } catch (const WindowBoundary&) {
    }
  }
  return in;
}

FramedE2Check framed_e2_check(int d, int p_min, int q_max) {
  FramedE2Check out;
  out.d = d;
  out.p_min = p_min;
  out.q_max = q_max;
  auto n = static_cast<std::size_t>(-p_min);
  auto framed = framed_structure(d, n + 1, q_max);
  out.framed = nonzero_cells(hochschild_homology(framed, n, q_max).dims());
  out.expected = convolve(sphere_hh(d, p_min, q_max),
                          cobar_dims(cobar_homology(build_so_hopf(d, SoVariant::Full), p_min, q_max)), p_min, q_max);
  for (int p = p_min; p <= 0; ++p)
    for (int q = 0; q <= q_max; ++q) {
      std::size_t a = lookup(out.framed, {p, q}), b = lookup(out.expected, {p, q});
      if (a != b)
        out.mismatches.push_back(bidegree_str({p, q}) + ": framed " + std::to_string(a) + ", convolution " +
                                 std::to_string(b));
      // q < -(d-1)/2 · p, doubled to stay in integers
      if (a && 2 * q < -(d - 1) * p) out.below_line.push_back({p, q});
    }
  return out;
}

std::string render_grid(const DimTable& dims, int p_min, int p_max, int q_min, int q_max) {
  std::ostringstream os;
  os << "  q\\p";
  for (int p = p_min; p <= p_max; ++p) os << std::setw(4) << p;
  os << "\n";
  for (int q = q_max; q >= q_min; --q) {
    os << std::setw(5) << q;
    for (int p = p_min; p <= p_max; ++p) {
      std::size_t n = lookup(dims, {p, q});
      os << std::setw(4) << (n ? std::to_string(n) : ".");
    }
    os << "\n";
  }
  return os.str();
}

Json to_json(const DimTable& dims) {
  Json cells = Json::array();
  for (const auto& [b, n] : dims) cells.push_back({{"p", b.first}, {"q", b.second}, {"dim", n}});
  return cells;
}

Json to_json(const AuditReport& r) {
  Json forced = Json::array(), inconclusive = Json::array();
  for (const auto& f : r.forced)
    forced.push_back({{"page", f.r},
                      {"source", {f.source.first, f.source.second}},
                      {"target", {f.target.first, f.target.second}},
                      {"reason", f.reason}});
  for (const auto& t : r.inconclusive) {
    Json cands = Json::array();
    for (const auto& [rr, src] : t.candidates) cands.push_back({{"page", rr}, {"source", {src.first, src.second}}});
    inconclusive.push_back({{"generator", t.generator}, {"target", {t.target.first, t.target.second}},
                            {"candidates", cands}});
  }
  return {{"forced", forced}, {"inconclusive", inconclusive}, {"notes", r.notes}};
}

Json to_json(const FramedE2Check& c) {
  Json below = Json::array();
  for (const auto& b : c.below_line) below.push_back({b.first, b.second});
  return {{"d", c.d},
          {"window", {{"p_min", c.p_min}, {"q_max", c.q_max}}},
          {"framed", to_json(c.framed)},
          {"expected", to_json(c.expected)},
          {"mismatches", c.mismatches},
          {"below_vanishing_line", below},
          {"passed", c.passed()}};
}

}  // namespace hochlab
