#include <cctype>
#include <map>

#include "scl/genus.hpp"

namespace scl {

namespace {

class Reader {
 public:
  explicit Reader(const std::string& t) : t_(t) {}

  size_t pos() const { return i_; }
  bool done() {
    skip();
    return i_ >= t_.size();
  }
  void skip() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n')) ++i_;
  }
  bool peek(const std::string& s) {
    skip();
    return t_.compare(i_, s.size(), s) == 0;
  }
  bool accept(const std::string& s) {
    if (!peek(s)) return false;
    i_ += s.size();
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail("expected '" + s + "'");
  }
  long number() {
    skip();
    size_t start = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    if (i_ - start > 15) fail("number too large");
    return std::stol(t_.substr(start, i_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SymbolError("symbol syntax error at position " + std::to_string(i_) + ": " + msg, i_);
  }

 private:
  const std::string& t_;
  size_t i_ = 0;
};

struct RawConstituent {
  long p;
  int scale;
  Constituent c;
  int printed_oddity;
  size_t pos;
};

std::pair<long, int> prime_power(long base) {
  if (base < 2) return {0, 0};
  long p = 2;
  while (p * p <= base && base % p) ++p;
  if (base % p) p = base;
  int e = 0;
  while (base % p == 0) base /= p, ++e;
  return base == 1 ? std::make_pair(p, e) : std::make_pair(0L, 0);
}

int kflag(const Constituent& c) { return (c.scale % 2 == 1 && c.eps == -1) ? 1 : 0; }

}  // namespace

GenusSymbol parse_symbol(const std::string& text) {
  Reader r(text);
  bool even;
  if (r.accept("II")) even = true;
  else if (r.accept("I")) even = false;
  else r.fail("expected 'I' or 'II'");
  r.expect("_{");
  long n = r.number();
  if (n < 1 || n > 1000) r.fail("dimension out of range");
  r.expect(",");
  long neg = r.number();
  if (neg != 0) r.fail("only positive definite signatures (n,0) are supported");
  r.expect("}");

  std::vector<RawConstituent> raw;
  if (r.accept("(")) {
    long part_prime = 0;
    std::set<long> finished;
    bool first = true;
    while (true) {
      if (!first && r.peek(")")) break;
      size_t at = r.pos();
      long base = r.number();
      auto [p, e] = prime_power(base);
      if (p == 0) r.fail("constituent base must be a prime power greater than 1");
      if (part_prime == 0) {
        if (finished.count(p)) r.fail("prime " + std::to_string(p) + " appears in two parts");
        part_prime = p;
      } else if (p != part_prime) {
        r.fail("constituents of different primes must be separated by ×");
      }
      RawConstituent rc{p, e, {}, -1, at};
      rc.c.scale = e;
      if (r.accept("_")) {
        if (p != 2) r.fail("oddity subscript only allowed at p=2");
        rc.printed_oddity = static_cast<int>(r.number());
        if (rc.printed_oddity > 7) r.fail("oddity must be in 0..7");
        rc.c.odd = true;
      }
      r.expect("^{");
      if (r.accept("+")) rc.c.eps = 1;
      else if (r.accept("-")) rc.c.eps = -1;
      else r.fail("expected sign");
      rc.c.rank = static_cast<int>(r.number());
      if (rc.c.rank < 1) r.fail("rank must be positive");
      r.expect("}");
      if (!raw.empty() && raw.back().p == p && raw.back().scale >= e) r.fail("scales must increase within a part");
      raw.push_back(rc);
      first = false;
      if (r.accept("×") || r.accept("\\times") || r.accept("x")) {
        finished.insert(part_prime);
        part_prime = 0;
        first = true;
        continue;
      }
      if (r.peek(")")) break;
    }
    r.expect(")");
  }
  if (!r.done()) r.fail("trailing characters");

  GenusSymbol s;
  s.n = static_cast<int>(n);
  std::map<long, LocalSymbol> locals;
  locals[2].p = 2;
  for (auto& rc : raw) {
    auto& l = locals[rc.p];
    l.p = rc.p;
    if (rc.c.odd) {
      // printed value is t + 4k
      rc.c.oddity = ((rc.printed_oddity - 4 * kflag(rc.c)) % 8 + 8) % 8;
    }
    l.cs.push_back(rc.c);
  }
  Int det = 1;
  for (auto& [p, l] : locals) det *= ipow(Int(p), l.valuation());
  int excess = 0;
  for (auto& [p, l] : locals) {
    int r0 = s.n - l.rank();
    if (r0 < 1) throw SymbolError("invalid symbol: no room for a scale-0 constituent at p=" + std::to_string(p), text.size());
    Int unit = strip(det, p);
    int eps0 = p == 2 ? jacobi2(unit) : legendre(unit, p);
    for (auto& c : l.cs) eps0 *= c.eps;
    l.cs.insert(l.cs.begin(), Constituent{0, r0, eps0, false, 0});
    if (p != 2) excess += p_excess(l);
  }
  auto& two = locals[2];
  two.cs[0].odd = !even;
  int t0 = ((s.n + excess - two_signature(two)) % 8 + 8) % 8;
  if (even && t0 != 0) throw SymbolError("invalid symbol: oddity relation fails for an even lattice", text.size());
  if (!even) two.cs[0].oddity = t0;
  for (auto& [p, l] : locals) s.locals.push_back(l);
  std::string problem = validity_problem(s);
  if (!problem.empty()) throw SymbolError("invalid symbol: " + problem, text.size());
  return s;
}

std::string print_symbol(const GenusSymbol& s) {
  auto* two = s.local(2);
  if (!two || !two->at(0)) throw std::invalid_argument("print_symbol: symbol has no 2-adic scale-0 constituent");
  std::string out = std::string(two->at(0)->odd ? "I" : "II") + "_{" + std::to_string(s.n) + ",0}";
  std::vector<std::string> parts;
  for (auto& l : s.locals) {
    std::string part;
    for (auto& c : l.cs) {
      if (c.scale == 0) continue;
      part += ipow(Int(l.p), c.scale).get_str();
      if (c.odd) part += "_" + std::to_string((c.oddity + 4 * kflag(c)) % 8);
      part += "^{" + std::string(c.eps == 1 ? "+" : "-") + std::to_string(c.rank) + "}";
    }
    if (l.at(0) == nullptr) throw std::invalid_argument("print_symbol: symbol is not primitive");
    if (!part.empty()) parts.push_back(part);
  }
  if (!parts.empty()) {
    out += "(";
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? "×" : "") + parts[i];
    out += ")";
  }
  return out;
}

}  // namespace scl
