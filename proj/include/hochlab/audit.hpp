#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/json_io.hpp"

namespace hochlab {

using Bidegree = std::pair<int, int>;  // (p, q)
using DimTable = std::map<Bidegree, std::size_t>;

struct AuditGenerator {
  std::string name;
  int p = -1;
  int q = 0;
  bool permanent = false;  // a cycle on every page, e.g. coming from a degenerate edge spectral sequence
  bool exterior = false;   // squares to zero; odd total degree
  int total() const { return p + q; }
};

// E² on the window p_min ≤ p ≤ 0, 0 ≤ q ≤ q_max, generated as a free graded-commutative algebra by
// `generators`; `abutment` maps total degree to dimension, missing degrees are unknown.
struct AuditInput {
  int p_min = 0;
  int q_max = 0;
  DimTable e2;
  std::map<int, std::size_t> abutment;
  std::vector<AuditGenerator> generators;
};

struct MonomialCount {
  std::size_t total = 0;
  std::size_t permanent = 0;  // monomials in permanent generators only
};

std::map<Bidegree, MonomialCount> monomial_table(const std::vector<AuditGenerator>& gens, int p_min, int q_max);
// Throws InvalidArgument when E² disagrees with the monomial counts somewhere in the window.
void check_consistency(const AuditInput& in);

struct ForcedDifferential {
  int r = 2;
  Bidegree source;
  Bidegree target;
  std::string reason;
};

struct InconclusiveTarget {
  std::string generator;
  Bidegree target;
  std::vector<std::pair<int, Bidegree>> candidates;  // (r, source)
};

struct AuditReport {
  std::vector<ForcedDifferential> forced;
  std::vector<InconclusiveTarget> inconclusive;
  std::vector<std::string> notes;
};

// Every permanent generator whose total degree is absent from the abutment must be hit. Candidate
// sources sit at (p + r, q - r + 1), r ≥ 2, and must carry a class outside the span of permanent
// monomials. A unique candidate is a forced differential; several are reported as inconclusive, and
// with `strict` they throw Inconclusive.
AuditReport convergence_audit(const AuditInput& in, bool strict = false);

// Framed sphere data for odd d: E² as the convolution of sphere Hochschild homology with the cobar
// homology of H_*(SO_d), abutment from the cobar homology of H_*(SO_{d-1}). Generators x, {x,x} and
// γ_1..γ_{m-1} are marked permanent, m = (d-1)/2.
AuditInput framed_audit_input(int d, int p_min, int q_max);

DimTable convolve(const DimTable& a, const DimTable& b, int p_min, int q_max);

struct FramedE2Check {
  int d = 0;
  int p_min = 0;
  int q_max = 0;
  DimTable framed;    // Hochschild homology of the framed sphere operad
  DimTable expected;  // convolution of sphere Hochschild and cobar homology
  std::vector<std::string> mismatches;
  std::vector<Bidegree> below_line;  // nonzero cells with q < -(d-1)/2 · p
  bool passed() const { return mismatches.empty() && below_line.empty(); }
};

FramedE2Check framed_e2_check(int d, int p_min, int q_max);

// Rows q_max down to q_min, columns p_min..p_max; zeros print as '.'.
std::string render_grid(const DimTable& dims, int p_min, int p_max, int q_min, int q_max);

Json to_json(const DimTable& dims);
Json to_json(const AuditReport& r);
Json to_json(const FramedE2Check& c);

}  // namespace hochlab
