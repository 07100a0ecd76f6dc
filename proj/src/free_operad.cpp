#include "hochlab/free_operad.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "hochlab/errors.hpp"

namespace hochlab {

// --------------------------------------------------------------- TreeTerm

std::size_t TreeTerm::arity() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.arity();
  return n;
}

std::vector<int> TreeTerm::code() const {
  std::vector<int> out;
  std::function<void(const TreeTerm&)> walk = [&](const TreeTerm& t) {
    out.push_back(t.gen);
    for (const auto& c : t.children) walk(c);
  };
  walk(*this);
  return out;
}

TreeTerm TreeTerm::from_code(const std::vector<int>& code, const std::vector<Generator>& gens) {
  std::size_t pos = 0;
  std::function<TreeTerm()> read = [&]() {
    if (pos >= code.size()) throw ParseError("truncated tree code");
    TreeTerm t;
    t.gen = code[pos++];
    if (t.gen >= 0) {
      if (static_cast<std::size_t>(t.gen) >= gens.size()) throw ParseError("unknown generator id in tree code");
      for (std::size_t k = 0; k < gens[t.gen].arity; ++k) t.children.push_back(read());
    }
    return t;
  };
  TreeTerm t = read();
  if (pos != code.size()) throw ParseError("trailing symbols in tree code");
  return t;
}

namespace {

TreeTerm leaf() { return TreeTerm{}; }

TreeTerm corolla(int gen, std::size_t arity) {
  TreeTerm t;
  t.gen = gen;
  t.children.assign(arity, leaf());
  return t;
}

// Replaces leaf `i` (1-based, left to right) of x with y. Returns the total degree of x-vertices
// after that leaf in preorder through `after`.
TreeTerm replace_leaf(const TreeTerm& x, std::size_t i, const TreeTerm& y, const std::vector<Generator>& gens,
                      int& after) {
  std::size_t seen = 0;
  bool passed = false;
  after = 0;
  std::function<TreeTerm(const TreeTerm&)> walk = [&](const TreeTerm& t) -> TreeTerm {
    if (t.is_leaf()) {
      ++seen;
      if (seen == i) {
        passed = true;
        return y;
      }
      return t;
    }
    if (passed) after += gens[t.gen].degree;
    TreeTerm out;
    out.gen = t.gen;
    for (const auto& c : t.children) out.children.push_back(walk(c));
    return out;
  };
  return walk(x);
}

}  // namespace

// -------------------------------------------------------- FreeChainOperad

FreeChainOperad::FreeChainOperad(std::string name, std::vector<Generator> gens, std::size_t max_arity, int max_degree)
    : name_(std::move(name)), gens_(std::move(gens)), max_arity_(max_arity), max_degree_(max_degree) {
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    const auto& g = gens_[k];
    if (g.name.empty()) throw InvalidArgument("generator without a name");
    for (std::size_t j = 0; j < k; ++j)
      if (gens_[j].name == g.name) throw InvalidArgument("duplicate generator '" + g.name + "'");
    if (g.degree < 0) throw InvalidArgument("generator '" + g.name + "' has negative degree");
    if (g.arity < 2 && g.degree == 0)
      throw InvalidArgument("generator '" + g.name + "' needs arity ≥ 2 or positive degree");
    if (g.associative && (g.arity != 2 || g.degree != 0))
      throw InvalidArgument("only binary degree-0 generators can be associative");
  }
  for (std::size_t n = 0; n <= max_arity_; ++n)
    for (int q = 0; q <= max_degree_; ++q) {
      auto trees = enumerate(n, q);
      for (std::size_t k = 0; k < trees.size(); ++k) index_[trees[k].code()] = Cell{q, k};
    }
}

std::vector<TreeTerm> FreeChainOperad::enumerate(std::size_t n, int q) {
  auto key = std::make_pair(n, q);
  if (auto it = basis_.find(key); it != basis_.end()) return it->second;
  std::vector<TreeTerm> out;
  if (n == 1 && q == 0) out.push_back(leaf());
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const auto& gen = gens_[g];
    if (gen.degree > q) continue;
    const std::size_t k = gen.arity;
    if (k == 0) {
      if (n == 0 && gen.degree == q) out.push_back(corolla(static_cast<int>(g), 0));
      continue;
    }
    // distribute arity n and degree q - |gen| over k children
    std::vector<TreeTerm> picked(k);
    std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t slot, std::size_t arity_left,
                                                                 int deg_left) {
      if (slot == k - 1) {
        if (arity_left == n && deg_left == q) return;  // siblings would need empty trees
        for (const auto& t : enumerate(arity_left, deg_left)) {
          if (gen.associative && t.gen == static_cast<int>(g)) continue;
          picked[slot] = t;
          TreeTerm root;
          root.gen = static_cast<int>(g);
          root.children = picked;
          out.push_back(std::move(root));
        }
        return;
      }
      for (std::size_t a = 0; a <= arity_left; ++a)
        for (int d = 0; d <= deg_left; ++d) {
          if (a == n && d == q) continue;
          auto sub = enumerate(a, d);
          for (const auto& t : sub) {
            picked[slot] = t;
            rec(slot + 1, arity_left - a, deg_left - d);
          }
        }
    };
    rec(0, n, q - gen.degree);
  }
  std::sort(out.begin(), out.end(), [](const TreeTerm& a, const TreeTerm& b) { return a.code() < b.code(); });
  basis_[key] = out;
  return out;
}

FreeChainOperad FreeChainOperad::from_text(const std::string& name, const std::string& text, std::size_t max_arity,
                                           int max_degree) {
  std::vector<Generator> gens;
  std::vector<std::pair<std::string, std::string>> diffs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (line.rfind("d ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("differential without '='" + where);
      diffs.emplace_back(trim(line.substr(2, eq - 2)), trim(line.substr(eq + 1)));
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ':')) fields.push_back(trim(f));
    if (fields.size() < 3 || fields.size() > 4) throw ParseError("expected name:arity:degree[:assoc]" + where);
    Generator g;
    g.name = fields[0];
    try {
      g.arity = std::stoul(fields[1]);
      g.degree = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw ParseError("arity and degree must be integers" + where);
    }
    if (fields.size() == 4) {
      if (fields[3] != "assoc") throw ParseError("unknown generator flag '" + fields[3] + "'" + where);
      g.associative = true;
    }
    gens.push_back(g);
  }
  FreeChainOperad op(name, gens, max_arity, max_degree);
  for (const auto& [gen, expr] : diffs) op.set_generator_differential(gen, op.parse_element(expr));
  return op;
}

void FreeChainOperad::set_generator_differential(const std::string& gen, const Element& dx) {
  std::size_t k = generator_index(gen);
  const auto& g = gens_[k];
  if (!dx.is_zero()) {
    if (dx.arity() != g.arity) throw InvalidArgument("d " + gen + " has the wrong arity");
    if (dx.degree() != g.degree - 1) throw InvalidArgument("d " + gen + " has the wrong degree");
  }
  gen_diff_[k] = dx.is_zero() ? Element(g.arity) : dx;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->values.clear();
}

std::size_t FreeChainOperad::generator_index(const std::string& name) const {
  for (std::size_t k = 0; k < gens_.size(); ++k)
    if (gens_[k].name == name) return k;
  throw InvalidArgument("unknown generator '" + name + "'");
}

Element FreeChainOperad::generator(const std::string& name) const {
  std::size_t k = generator_index(name);
  const auto& g = gens_[k];
  if (g.arity > max_arity_ || g.degree > max_degree_) throw ArityOverflow("generator outside the truncation");
  return Element(g.arity, cell_of(corolla(static_cast<int>(k), g.arity)));
}

int FreeChainOperad::degree_of(const TreeTerm& t) const {
  if (t.is_leaf()) return 0;
  int d = gens_[t.gen].degree;
  for (const auto& c : t.children) d += degree_of(c);
  return d;
}

TreeTerm FreeChainOperad::normalize(const TreeTerm& t) const {
  if (t.is_leaf()) return t;
  TreeTerm out;
  out.gen = t.gen;
  for (const auto& c : t.children) out.children.push_back(normalize(c));
  if (!gens_[out.gen].associative) return out;
  // rotate ν(A, ν(B, C)) into ν(ν(A, B), C) until the right child is not ν
  while (out.children[1].gen == out.gen) {
    TreeTerm right = out.children[1];
    TreeTerm left;
    left.gen = out.gen;
    left.children = {out.children[0], right.children[0]};
    out.children = {normalize(left), right.children[1]};
  }
  return out;
}

bool FreeChainOperad::is_normal(const TreeTerm& t) const {
  if (t.is_leaf()) return true;
  if (gens_[t.gen].associative && t.children[1].gen == t.gen) return false;
  return std::all_of(t.children.begin(), t.children.end(), [this](const TreeTerm& c) { return is_normal(c); });
}

std::string FreeChainOperad::tree_string(const TreeTerm& t) const {
  if (t.is_leaf()) return "-";
  const auto& g = gens_[t.gen];
  bool bare = std::all_of(t.children.begin(), t.children.end(), [](const TreeTerm& c) { return c.is_leaf(); });
  if (bare) return g.name;
  std::string s = g.name + "(";
  for (std::size_t k = 0; k < t.children.size(); ++k) {
    if (k) s += ",";
    s += tree_string(t.children[k]);
  }
  return s + ")";
}

const TreeTerm& FreeChainOperad::tree(std::size_t n, Cell c) const {
  auto it = basis_.find({n, c.degree});
  if (it == basis_.end() || c.index >= it->second.size()) throw InvalidArgument("no such basis tree");
  return it->second[c.index];
}

Cell FreeChainOperad::cell_of(const TreeTerm& t) const {
  auto it = index_.find(t.code());
  if (it == index_.end()) {
    if (t.arity() > max_arity_ || degree_of(t) > max_degree_) throw ArityOverflow("tree outside the truncation");
    throw InvalidArgument("tree is not in normal form");
  }
  return it->second;
}

std::pair<int, TreeTerm> FreeChainOperad::graft(const TreeTerm& x, std::size_t i, const TreeTerm& y) const {
  int after = 0;
  TreeTerm t = replace_leaf(x, i, y, gens_, after);
  return {sign_of(static_cast<long>(degree_of(y)) * after), normalize(t)};
}

std::vector<int> FreeChainOperad::degrees(std::size_t n) const {
  std::vector<int> out;
  for (int q = 0; q <= max_degree_; ++q)
    if (dim(n, q) > 0) out.push_back(q);
  return out;
}

std::size_t FreeChainOperad::dim(std::size_t n, int q) const {
  auto it = basis_.find({n, q});
  return it == basis_.end() ? 0 : it->second.size();
}

Label FreeChainOperad::label(std::size_t n, Cell c) const { return Label(tree_string(tree(n, c))); }

Element FreeChainOperad::compose_basis(std::size_t m, Cell x, std::size_t i, std::size_t n, Cell y) const {
  if (m + n - 1 > max_arity_) throw ArityOverflow("composition exceeds max arity");
  if (x.degree + y.degree > max_degree_) throw ArityOverflow("composition exceeds max degree");
  auto [sign, t] = graft(tree(m, x), i, tree(n, y));
  return Element(m + n - 1, cell_of(t), sign);
}

Element FreeChainOperad::differential_basis(std::size_t n, Cell x) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (auto it = cache_->values.find({n, x}); it != cache_->values.end()) return it->second;
  }
  const TreeTerm& t = tree(n, x);
  Element result(n);
  if (!t.is_leaf()) {
    // t = (((r ∘_1 A_1) ∘_{1+a_1} A_2) ...), each graft unsigned; apply Leibniz along the chain
    const auto& g = gens_[t.gen];
    Element acc(g.arity, cell_of(corolla(t.gen, g.arity)));
    auto it = gen_diff_.find(static_cast<std::size_t>(t.gen));
    Element dacc = it == gen_diff_.end() ? Element(g.arity) : it->second;
    std::size_t pos = 1;
    for (const auto& child : t.children) {
      if (child.is_leaf()) {
        ++pos;
        continue;
      }
      Element a(child.arity(), cell_of(child));
      Element da = differential_basis(child.arity(), cell_of(child));
      int acc_deg = acc.degree();
      Element next = compose(acc, pos, a);
      Element dnext = compose(dacc, pos, a);
      dnext.add_scaled(compose(acc, pos, da), sign_of(acc_deg));
      acc = std::move(next);
      dacc = std::move(dnext);
      pos += child.arity();
    }
    // acc equals t with coefficient +1 by construction of the left-to-right chain
    result = dacc;
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->values[{n, x}] = result;
  return result;
}

std::optional<Element> FreeChainOperad::unit() const {
  if (max_arity_ < 1) return std::nullopt;
  return Element(1, cell_of(leaf()));
}

// ------------------------------------------------------------------ parser

namespace {

struct Token {
  enum Kind { Name, Number, Compose, Plus, Minus, Star, LParen, RParen, End } kind;
  std::string text;
  std::size_t slot = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string w = s.substr(i, j - i);
      bool is_op = w.size() > 1 && w[0] == 'o' &&
                   std::all_of(w.begin() + 1, w.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
      if (is_op)
        out.push_back({Token::Compose, w, std::stoul(w.substr(1))});
      else
        out.push_back({Token::Name, w});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
      out.push_back({Token::Number, s.substr(i, j - i)});
      i = j;
    } else {
      Token::Kind k;
      switch (c) {
        case '+': k = Token::Plus; break;
        case '-': k = Token::Minus; break;
        case '*': k = Token::Star; break;
        case '(': k = Token::LParen; break;
        case ')': k = Token::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c)});
      ++i;
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

class ExprParser {
 public:
  ExprParser(const FreeChainOperad& op, const std::string& text) : op_(op), toks_(tokenize(text)) {}

  Element parse() {
    auto e = sum();
    if (peek().kind != Token::End) throw ParseError("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  Element sum() {
    Rational sign = 1;
    if (peek().kind == Token::Plus || peek().kind == Token::Minus) sign = take().kind == Token::Minus ? -1 : 1;
    std::optional<Element> acc;
    auto add = [&](const std::optional<Element>& t, const Rational& s) {
      if (!t) return;
      if (!acc)
        acc = s * *t;
      else
        acc->add_scaled(*t, s);
    };
    add(term(), sign);
    while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
      Rational s = take().kind == Token::Minus ? -1 : 1;
      add(term(), s);
    }
    return acc ? *acc : Element(0);
  }

  // nullopt encodes a literal 0 of unknown arity
  std::optional<Element> term() {
    Rational coeff = 1;
    if (peek().kind == Token::Number) {
      coeff = parse_rational(take().text);
      if (peek().kind == Token::Star) take();
      if (peek().kind == Token::Plus || peek().kind == Token::Minus || peek().kind == Token::End ||
          peek().kind == Token::RParen) {
        if (coeff != 0) throw ParseError("bare numbers other than 0 are not operad elements");
        return std::nullopt;
      }
    }
    Element e = composite();
    return coeff * e;
  }

  Element composite() {
    Element e = atom();
    while (peek().kind == Token::Compose) {
      std::size_t slot = take().slot;
      Element rhs = atom();
      e = op_.compose(e, slot, rhs);
    }
    return e;
  }

  Element atom() {
    Token t = take();
    if (t.kind == Token::LParen) {
      Element e = sum();
      if (take().kind != Token::RParen) throw ParseError("missing ')'");
      return e;
    }
    if (t.kind == Token::Name) {
      if (t.text == "id") return *op_.unit();
      return op_.generator(t.text);
    }
    throw ParseError("expected a generator name, 'id' or '(' but found '" + t.text + "'");
  }

  const FreeChainOperad& op_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Element FreeChainOperad::parse_element(const std::string& text) const {
  try {
    return ExprParser(*this, text).parse();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("in '") + text + "': " + e.what());
  }
}

// ----------------------------------------------------------------- witness

FreeChainOperad witness_operad(int m, WitnessVariant variant) {
  if (m < 2) throw InvalidArgument("witness operad needs m ≥ 2");
  const std::string g_deg = std::to_string(4 * m - 1), h_deg = std::to_string(4 * m);
  std::string text;
  if (variant == WitnessVariant::NonAssociative)
    text += "nu:2:0\nxi:3:1\n";
  else
    text += "nu:2:0:assoc\n";
  text += "g:1:" + g_deg + "\nh:2:" + h_deg + "\n";
  if (variant == WitnessVariant::Padded)
    text += "z:2:" + h_deg + "\nb:3:2\nc:3:1\nu:1:" + h_deg + "\nv:1:" + g_deg + "\n";
  if (variant == WitnessVariant::BrokenH1) text += "c:3:1\n";
  text += "d h = nu o2 g + nu o1 g - g o1 nu\n";
  if (variant == WitnessVariant::Padded) text += "d b = c\nd u = v\n";
  if (variant == WitnessVariant::NonAssociative) text += "d xi = nu o2 nu - nu o1 nu\n";
  std::string name = "witness:m=" + std::to_string(m);
  switch (variant) {
    case WitnessVariant::Plain: break;
    case WitnessVariant::Padded: name += ":padded"; break;
    case WitnessVariant::BrokenH1: name += ":broken"; break;
    case WitnessVariant::NonAssociative: name += ":nonassoc"; break;
  }
  return FreeChainOperad::from_text(name, text, 3, 8 * m + 2);
}

}  // namespace hochlab
