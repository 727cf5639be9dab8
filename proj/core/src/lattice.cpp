#include "epw/lattice.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "epw/error.hpp"

namespace epw {

namespace {

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool eat(const std::string& word) {
    if (s_.compare(i_, word.size(), word) != 0) return false;
    i_ += word.size();
    return true;
  }
  bool at_digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  std::int64_t integer() {
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    if (!at_digit()) fail("expected an integer");
    std::int64_t v = 0;
    while (at_digit()) {
      v = v * 10 + (s_[i_] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer too large");
      ++i_;
    }
    return neg ? -v : v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput(what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }

 private:
  std::string s_;
  std::size_t i_ = 0;
};

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

std::string LatticeBlock::label() const {
  switch (kind) {
    case Kind::U: return "U";
    case Kind::U2: return "U(2)";
    case Kind::E8m1: return "E8(-1)";
    case Kind::Rank1: return "<" + std::to_string(value) + ">";
  }
  return "?";
}

IntMatrix e8_minus_one() {
  // Bourbaki labelling: chain 1-3-4-5-6-7-8 with 2 attached to 4.
  IntMatrix g(8, std::vector<std::int64_t>(8, 0));
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (int i = 0; i < 8; ++i) g[i][i] = -2;
  for (auto [a, b] : edges) g[a - 1][b - 1] = g[b - 1][a - 1] = 1;
  return g;
}

std::int64_t int_determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  std::int64_t prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

void IntLattice::add_block(LatticeBlock::Kind kind, std::int64_t value) {
  LatticeBlock b;
  b.kind = kind;
  b.value = value;
  b.offset = gram_.size();
  IntMatrix g;
  switch (kind) {
    case LatticeBlock::Kind::U: g = {{0, 1}, {1, 0}}; break;
    case LatticeBlock::Kind::U2: g = {{0, 2}, {2, 0}}; break;
    case LatticeBlock::Kind::E8m1: g = e8_minus_one(); break;
    case LatticeBlock::Kind::Rank1:
      if (value == 0) throw InvalidInput("rank-one block <0> is degenerate");
      g = {{value}};
      break;
  }
  b.rank = g.size();
  const std::size_t n = gram_.size() + b.rank;
  for (auto& row : gram_) row.resize(n, 0);
  for (std::size_t i = 0; i < b.rank; ++i) {
    std::vector<std::int64_t> row(n, 0);
    for (std::size_t j = 0; j < b.rank; ++j) row[b.offset + j] = g[i][j];
    gram_.push_back(std::move(row));
  }
  blocks_.push_back(b);
}

IntLattice IntLattice::parse(const std::string& spec) {
  const std::string s = strip_spaces(spec);
  if (s.empty()) throw InvalidInput("empty lattice spec");
  Cursor c(s);
  IntLattice L;
  while (!c.done()) {
    LatticeBlock::Kind kind;
    std::int64_t value = 0;
    std::int64_t mult = 1;
    if (c.eat("E8m1") || c.eat("E8(-1)")) {
      kind = LatticeBlock::Kind::E8m1;
    } else if (c.eat("U(2)")) {
      kind = LatticeBlock::Kind::U2;
    } else if (c.eat('U')) {
      kind = LatticeBlock::Kind::U;
      if (c.at_digit()) mult = c.integer();
    } else if (c.eat('(') || c.eat('<')) {
      kind = LatticeBlock::Kind::Rank1;
      value = c.integer();
      if (!c.eat(')') && !c.eat('>')) c.fail("expected ')' or '>'");
    } else {
      c.fail("unknown lattice block");
    }
    if (c.eat('^') || c.eat('x')) mult = c.integer();
    if (mult < 1 || mult > 64) c.fail("bad multiplicity");
    for (std::int64_t i = 0; i < mult; ++i) L.add_block(kind, value);
    if (c.eat('+') && c.done()) c.fail("dangling '+'");
  }
  return L;
}

IntLattice IntLattice::from_gram(IntMatrix gram) {
  const std::size_t n = gram.size();
  for (const auto& row : gram)
    if (row.size() != n) throw InvalidInput("Gram matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gram[i][j] != gram[j][i]) throw InvalidInput("Gram matrix is not symmetric");
  IntLattice L;
  L.gram_ = std::move(gram);
  return L;
}

IntLattice IntLattice::k3n(int n) {
  if (n < 2) throw InvalidInput("K3^[n] lattice needs n >= 2");
  return parse("U^3+E8m1^2+(" + std::to_string(-2 * (n - 1)) + ")");
}

std::string IntLattice::describe() const {
  if (blocks_.empty()) return "Gram(" + std::to_string(rank()) + ")";
  std::string out;
  for (const auto& b : blocks_) out += (out.empty() ? "" : "+") + b.label();
  return out;
}

LatVec IntLattice::pairings(const LatVec& x) const {
  if (x.size() != rank()) throw InvalidInput("vector length does not match the lattice rank");
  LatVec out(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) out[i] += gram_[i][j] * x[j];
  return out;
}

std::int64_t IntLattice::pairing(const LatVec& x, const LatVec& y) const {
  if (y.size() != rank()) throw InvalidInput("vector length does not match the lattice rank");
  const LatVec gx = pairings(x);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < rank(); ++i) s += gx[i] * y[i];
  return s;
}

LatVec IntLattice::generator(const std::string& name) const {
  LatVec x(rank(), 0);
  auto nth = [&](auto pred, std::size_t k) -> const LatticeBlock* {
    std::size_t seen = 0;
    for (const auto& b : blocks_)
      if (pred(b) && ++seen == k) return &b;
    return nullptr;
  };
  auto is_hyp = [](const LatticeBlock& b) {
    return b.kind == LatticeBlock::Kind::U || b.kind == LatticeBlock::Kind::U2;
  };
  auto is_r1 = [](const LatticeBlock& b) { return b.kind == LatticeBlock::Kind::Rank1; };
  auto is_e8 = [](const LatticeBlock& b) { return b.kind == LatticeBlock::Kind::E8m1; };
  auto unknown = [&]() -> LatVec { throw InvalidInput("unknown generator \"" + name + "\" in " + describe()); };
  auto index_after = [&](std::size_t pos) -> std::size_t {
    if (pos >= name.size()) return 0;
    for (std::size_t i = pos; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
    return static_cast<std::size_t>(std::stoul(name.substr(pos)));
  };
  if (name == "H" || name == "d") {
    LatVec a = generator("e1"), b = generator("f1");
    for (std::size_t i = 0; i < rank(); ++i) a[i] += name == "H" ? b[i] : -b[i];
    return a;
  }
  if (name == "E") return generator("e1");
  if (name == "F") return generator("f1");
  if (name == "delta") {
    const LatticeBlock* last = nullptr;
    for (const auto& b : blocks_)
      if (is_r1(b)) last = &b;
    if (!last) return unknown();
    x[last->offset] = 1;
    return x;
  }
  if (name.size() >= 2 && (name[0] == 'e' || name[0] == 'f')) {
    const std::size_t k = index_after(1);
    const LatticeBlock* b = k ? nth(is_hyp, k) : nullptr;
    if (!b) return unknown();
    x[b->offset + (name[0] == 'e' ? 0 : 1)] = 1;
    return x;
  }
  if (name.size() >= 2 && name[0] == 't') {
    const std::size_t k = index_after(1);
    const LatticeBlock* b = k ? nth(is_r1, k) : nullptr;
    if (!b) return unknown();
    x[b->offset] = 1;
    return x;
  }
  if (name.size() >= 4 && name[0] == 'r') {
    const auto us = name.find('_');
    if (us == std::string::npos) return unknown();
    const std::string head = name.substr(1, us - 1);
    std::size_t blk = head.empty() ? 0 : 1;
    for (char ch : head)
      if (!std::isdigit(static_cast<unsigned char>(ch))) blk = 0;
    if (blk) blk = static_cast<std::size_t>(std::stoul(head));
    const std::size_t j = index_after(us + 1);
    const LatticeBlock* b = blk ? nth(is_e8, blk) : nullptr;
    if (!b || j < 1 || j > 8) return unknown();
    x[b->offset + j - 1] = 1;
    return x;
  }
  return unknown();
}

LatVec IntLattice::parse_vector(const std::string& expr) const {
  const std::string s = strip_spaces(expr);
  if (s.empty()) throw InvalidInput("empty vector expression");
  if (s.front() == '[') {
    Cursor c(s);
    c.eat('[');
    LatVec x;
    while (!c.eat(']')) {
      x.push_back(c.integer());
      if (c.peek() != ']' && !c.eat(',')) c.fail("expected ',' or ']'");
    }
    if (!c.done()) c.fail("trailing characters");
    if (x.size() != rank()) throw InvalidInput("vector length does not match the lattice rank");
    return x;
  }
  LatVec x(rank(), 0);
  std::size_t i = 0;
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i != 0) {
      throw InvalidInput("expected '+' or '-' in \"" + s + "\"");
    }
    std::int64_t coef = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      coef = std::stoll(s.substr(i, j - i));
      i = j;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    if (j == i) throw InvalidInput("missing generator name in \"" + s + "\"");
    const LatVec g = generator(s.substr(i, j - i));
    for (std::size_t k = 0; k < rank(); ++k) x[k] += sign * coef * g[k];
    i = j;
  }
  return x;
}

std::int64_t divisibility(const IntLattice& L, const LatVec& x) {
  const LatVec p = L.pairings(x);
  bool zero = true;
  for (auto v : x)
    if (v != 0) zero = false;
  if (zero) throw InvalidInput("divisibility of the zero vector");
  std::int64_t g = 0;
  for (auto v : p) g = gcd_abs(g, v);
  return g;
}

std::int64_t divisibility_in(const IntLattice& L, const LatVec& x, const std::vector<LatVec>& basis) {
  std::int64_t g = 0;
  for (const auto& b : basis) g = gcd_abs(g, L.pairing(x, b));
  return g;
}

std::pair<LatVec, std::int64_t> primitive_part(const LatVec& x) {
  std::int64_t g = 0;
  for (auto v : x) g = gcd_abs(g, v);
  if (g == 0) throw InvalidInput("primitive part of the zero vector");
  LatVec p = x;
  for (auto& v : p) v /= g;
  return {p, g};
}

std::vector<LatVec> integer_kernel(const LatVec& w) {
  // Unimodular column operations bring w to (g, 0, ..., 0); the remaining
  // columns of the accumulated transform span the kernel.
  const std::size_t n = w.size();
  LatVec r = w;
  IntMatrix T(n, LatVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) T[i][i] = 1;
  auto col_op = [&](std::size_t a, std::size_t b, std::int64_t q) {  // col_a -= q col_b
    r[a] -= q * r[b];
    for (std::size_t i = 0; i < n; ++i) T[i][a] -= q * T[i][b];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    std::swap(r[a], r[b]);
    for (std::size_t i = 0; i < n; ++i) std::swap(T[i][a], T[i][b]);
  };
  for (std::size_t j = 1; j < n; ++j) {
    while (r[j] != 0) {
      col_op(0, j, r[0] / r[j]);
      col_swap(0, j);
    }
  }
  std::vector<LatVec> out;
  const std::size_t first = r.empty() || r[0] != 0 ? 1 : 0;
  for (std::size_t j = first; j < n; ++j) {
    LatVec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = T[i][j];
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LatVec> orthogonal_complement(const IntLattice& L, const LatVec& x) {
  return integer_kernel(L.pairings(x));
}

bool MukaiReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

MukaiReport mukai_check() {
  MukaiReport rep;
  const IntLattice UU = IntLattice::parse("U+U");
  const LatVec v = UU.parse_vector("e1+e2+f1+f2");
  const LatVec Hp = UU.parse_vector("e1+f1-e2-f2");
  rep.checks.push_back({"square(v)", UU.square(v), 4});
  rep.checks.push_back({"square(H')", UU.square(Hp), 4});
  rep.checks.push_back({"pairing(v,H')", UU.pairing(v, Hp), 0});
  rep.checks.push_back({"div of H' in v^perp", divisibility_in(UU, Hp, orthogonal_complement(UU, v)), 2});
  const IntLattice K2 = IntLattice::k3n(2);
  rep.checks.push_back({"square(e1+f1)", K2.square(K2.parse_vector("e1+f1")), 2});
  rep.checks.push_back({"square(e1-f1+e2-f2)", K2.square(K2.parse_vector("e1-f1+e2-f2")), -4});
  return rep;
}

MukaiReport k3n3_divisor_check() {
  MukaiReport rep;
  const IntLattice L = IntLattice::k3n(3);
  const LatVec a = L.parse_vector("2H-delta");
  rep.checks.push_back({"square(2H-delta)", L.square(a), 4});
  rep.checks.push_back({"div(2H-delta)", divisibility(L, a), 2});
  const LatVec b = L.parse_vector("H-delta");
  rep.checks.push_back({"square(H-delta)", L.square(b), -2});
  const LatVec c = L.parse_vector("12H-9delta");
  rep.checks.push_back({"square(12H-9delta)", L.square(c), -36});
  rep.checks.push_back({"div(12H-9delta)", divisibility(L, c), 12});
  const auto [prim, content] = primitive_part(c);
  rep.checks.push_back({"content(12H-9delta)", content, 3});
  rep.checks.push_back({"square(4H-3delta)", L.square(prim), -4});
  rep.checks.push_back({"div(4H-3delta)", divisibility(L, prim), 4});
  return rep;
}

LatVec PeriodEmbedding::image(const LatVec& x) const {
  if (x.size() != images.size()) throw InvalidInput("vector length does not match the lattice rank");
  LatVec y(lambda_y.rank(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += x[i] * images[i][j];
  return y;
}

PeriodEmbedding period_embedding() {
  PeriodEmbedding pe;
  pe.lambda = IntLattice::parse("U^2+E8m1^2+(-2)^2");
  pe.lambda_y = IntLattice::k3n(3);
  const IntLattice& Y = pe.lambda_y;
  pe.h = Y.parse_vector("2e3+2f3+delta");
  // U^2 and the E8 blocks map identically; the two <-2> generators go to
  // e3 - f3 and e3 + f3 + delta.
  for (std::size_t i = 0; i < 20; ++i) {
    LatVec y(Y.rank(), 0);
    y[i < 4 ? i : i + 2] = 1;
    pe.images.push_back(std::move(y));
  }
  pe.images.push_back(Y.parse_vector("e3-f3"));
  pe.images.push_back(Y.parse_vector("e3+f3+delta"));
  pe.isometric = true;
  pe.orthogonal_to_h = true;
  for (std::size_t i = 0; i < pe.images.size(); ++i) {
    if (Y.pairing(pe.images[i], pe.h) != 0) pe.orthogonal_to_h = false;
    for (std::size_t j = 0; j < pe.images.size(); ++j)
      if (Y.pairing(pe.images[i], pe.images[j]) != pe.lambda.gram()[i][j]) pe.isometric = false;
  }
  pe.det_lambda = int_determinant(pe.lambda.gram());
  const auto perp = orthogonal_complement(Y, pe.h);
  IntMatrix g(perp.size(), LatVec(perp.size()));
  for (std::size_t i = 0; i < perp.size(); ++i)
    for (std::size_t j = 0; j < perp.size(); ++j) g[i][j] = Y.pairing(perp[i], perp[j]);
  pe.det_h_perp = int_determinant(g);
  return pe;
}

std::vector<PeriodDivisor> period_divisor_table() {
  const PeriodEmbedding pe = period_embedding();
  std::vector<PeriodDivisor> out;
  for (const char* name : {"t1+t2", "d", "t1", "2d+t1+t2"}) {
    const LatVec x = pe.lambda.parse_vector(name);
    out.push_back({name, pe.lambda.square(x), divisibility(pe.lambda, x), divisibility(pe.lambda_y, pe.image(x))});
  }
  return out;
}

std::vector<SectionClaim> section_lattice_claims() {
  // F^2 = 0, E^2 = -12; (E + 4F)^2 = -12 + 8 E.F = 4 forces E.F = 2.
  const IntLattice L = IntLattice::from_gram({{-12, 2}, {2, 0}});
  const LatVec E = {1, 0};
  const LatVec a = {1, 4}, b = {1, -2};
  return {
      {"E^2", -12, L.square(E)},
      {"div(E)", 2, divisibility(L, E)},
      {"(E+4F)^2", 4, L.square(a)},
      {"div(E+4F)", 2, divisibility(L, a)},
      {"(E+4F).(E-2F)", 0, L.pairing(a, b)},
      {"(E-2F)^2", -4, L.square(b)},
      {"div(E-2F)", 2, divisibility(L, b)},
      {"sign of (E+4F).E", -1, L.pairing(a, E) < 0 ? -1 : 1},
  };
}

}  // namespace epw
