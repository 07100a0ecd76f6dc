#include "hochlab/graded.hpp"

#include <set>

#include "hochlab/errors.hpp"

namespace hochlab {

namespace {
const std::string kTensor = "⊗";

std::string part_str(const Label& l) {
  std::string s = l.str();
  return l.atom == kTensor ? "(" + s + ")" : s;
}
}  // namespace

bool operator<(const Label& a, const Label& b) {
  if (a.atom != b.atom) return a.atom < b.atom;
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end());
}

std::string Label::str() const {
  if (parts.empty()) return atom;
  std::string out;
  if (atom == kTensor) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += kTensor;
      out += part_str(parts[i]);
    }
    return out;
  }
  out = atom + "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i].str();
  }
  return out + ")";
}

Label Label::parse(const std::string& text) {
  // split on top-level tensor symbols
  std::vector<std::string> pieces;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && text.compare(i, kTensor.size(), kTensor) == 0) {
      pieces.push_back(text.substr(start, i - start));
      i += kTensor.size() - 1;
      start = i + 1;
    }
  }
  pieces.push_back(text.substr(start));
  auto strip = [](std::string s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
    return s;
  };
  if (pieces.size() == 1) return Label(text);
  std::vector<Label> parts;
  for (auto& p : pieces) parts.push_back(parse(strip(p)));
  return Label(kTensor, std::move(parts));
}

// ---------------------------------------------------------------- GradedSpace

void GradedSpace::set_degree(int degree, std::vector<Label> labels) {
  std::set<Label> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw InvalidArgument("duplicate basis label '" + l.str() + "'");
  if (labels.empty())
    basis_.erase(degree);
  else
    basis_[degree] = std::move(labels);
}

std::size_t GradedSpace::dim(int degree) const {
  auto it = basis_.find(degree);
  return it == basis_.end() ? 0 : it->second.size();
}

const std::vector<Label>& GradedSpace::labels(int degree) const {
  static const std::vector<Label> empty;
  auto it = basis_.find(degree);
  return it == basis_.end() ? empty : it->second;
}

std::optional<std::size_t> GradedSpace::index_of(int degree, const Label& label) const {
  const auto& ls = labels(degree);
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == label) return i;
  return std::nullopt;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [q, ls] : basis_) out.push_back(q);
  return out;
}

std::size_t GradedSpace::total_dim() const {
  std::size_t n = 0;
  for (const auto& [q, ls] : basis_) n += ls.size();
  return n;
}

// --------------------------------------------------------- ChainComplexWindow

RationalMatrix ChainComplexWindow::d(int q) const {
  auto it = differential.find(q);
  if (it != differential.end()) return it->second;
  return RationalMatrix(space.dim(q - 1), space.dim(q));
}

void ChainComplexWindow::validate() const {
  if (deg_min > deg_max) throw InvalidArgument("empty degree window");
  for (int q : space.degrees())
    if (q < deg_min || q > deg_max) throw InvalidArgument("basis degree outside the window");
  for (const auto& [q, m] : differential) {
    if (m.rows() != space.dim(q - 1) || m.cols() != space.dim(q))
      throw InvalidArgument("differential d_" + std::to_string(q) + " has the wrong shape");
  }
  for (int q = deg_min + 1; q <= deg_max; ++q) {
    auto dd = d(q - 1) * d(q);
    if (!dd.is_zero()) throw InvalidArgument("d∘d != 0 at degree " + std::to_string(q));
  }
}

bool ChainComplexWindow::reliable(int q) const {
  if (truncated_below && q <= deg_min) return false;
  if (truncated_above && q >= deg_max) return false;
  return q >= deg_min && q <= deg_max;
}

// --------------------------------------------------------------- homology

std::size_t HomologyResult::dim(int q) const { return at(q).dimension; }

const DegreeHomology& HomologyResult::at(int q) const {
  auto it = degrees.find(q);
  if (it == degrees.end()) throw WindowBoundary("degree " + std::to_string(q) + " outside window");
  if (!it->second.reliable) throw WindowBoundary("degree " + std::to_string(q) + " is at a truncated edge");
  return it->second;
}

DegreeHomology homology_at(std::size_t dim, const RationalMatrix& incoming, const RationalMatrix& outgoing) {
  if (incoming.rows() != dim || outgoing.cols() != dim) throw InvalidArgument("homology_at shape mismatch");
  DegreeHomology h;
  h.cycles = kernel_basis(outgoing);
  if (outgoing.rows() == 0) {
    h.cycles.clear();
    for (std::size_t i = 0; i < dim; ++i) h.cycles.push_back(SparseVector::unit(dim, i));
  }
  EchelonBasis image(dim);
  for (const auto& col : incoming.columns())
    if (image.insert(col)) h.boundaries.push_back(col);
  Subquotient sq(dim, h.cycles, h.boundaries);
  h.representatives = sq.representatives();
  h.dimension = h.representatives.size();
  return h;
}

HomologyResult homology(const ChainComplexWindow& c) {
  c.validate();
  HomologyResult out;
  for (int q = c.deg_min; q <= c.deg_max; ++q) {
    DegreeHomology h = homology_at(c.space.dim(q), c.d(q + 1), c.d(q));
    h.degree = q;
    h.reliable = c.reliable(q);
    out.degrees.emplace(q, std::move(h));
  }
  return out;
}

std::optional<SparseVector> is_boundary_with_witness(const ChainComplexWindow& c, int q, const SparseVector& z) {
  if (z.dim() != c.space.dim(q)) throw InvalidArgument("vector does not match degree dimension");
  if (!c.d(q).apply(z).is_zero()) throw NotACycle("vector is not a cycle in degree " + std::to_string(q));
  if (z.is_zero()) return SparseVector(c.space.dim(q + 1));
  return try_solve(c.d(q + 1), z);
}

// ----------------------------------------------------------------- tensor

ChainComplexWindow tensor(const ChainComplexWindow& a, const ChainComplexWindow& b) {
  ChainComplexWindow out;
  out.deg_min = a.deg_min + b.deg_min;
  out.deg_max = a.deg_max + b.deg_max;
  out.truncated_below = a.truncated_below || b.truncated_below;
  out.truncated_above = a.truncated_above || b.truncated_above;

  // offset of the (p, n-p) block inside degree n
  std::map<int, std::map<int, std::size_t>> offset;
  for (int n = out.deg_min; n <= out.deg_max; ++n) {
    std::vector<Label> labels;
    for (int p = a.deg_min; p <= a.deg_max; ++p) {
      int q = n - p;
      if (q < b.deg_min || q > b.deg_max) continue;
      offset[n][p] = labels.size();
      for (const auto& la : a.space.labels(p))
        for (const auto& lb : b.space.labels(q)) labels.push_back(Label::tensor(la, lb));
    }
    out.space.set_degree(n, std::move(labels));
  }
  for (int n = out.deg_min + 1; n <= out.deg_max; ++n) {
    RationalMatrix m(out.space.dim(n - 1), out.space.dim(n));
    for (int p = a.deg_min; p <= a.deg_max; ++p) {
      int q = n - p;
      if (q < b.deg_min || q > b.deg_max) continue;
      std::size_t da = a.space.dim(p), db = b.space.dim(q);
      if (da == 0 || db == 0) continue;
      std::size_t src = offset[n][p];
      RationalMatrix dA = a.d(p), dB = b.d(q);
      int sign = (p % 2 == 0) ? 1 : -1;
      for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
          std::size_t col = src + i * db + j;
          // da ⊗ b lands in block (p-1, q)
          if (p - 1 >= a.deg_min && offset[n - 1].count(p - 1)) {
            std::size_t tgt = offset[n - 1][p - 1];
            for (std::size_t r = 0; r < dA.rows(); ++r) {
              Rational v = dA.at(r, i);
              if (v != 0) m.add(tgt + r * db + j, col, v);
            }
          }
          // a ⊗ db lands in block (p, q-1)
          if (q - 1 >= b.deg_min && offset[n - 1].count(p)) {
            std::size_t tgt = offset[n - 1][p];
            std::size_t dbq = b.space.dim(q - 1);
            for (std::size_t r = 0; r < dB.rows(); ++r) {
              Rational v = dB.at(r, j);
              if (v != 0) m.add(tgt + i * dbq + r, col, sign * v);
            }
          }
        }
      }
    }
    if (!m.is_zero()) out.differential[n] = std::move(m);
  }
  return out;
}

}  // namespace hochlab
