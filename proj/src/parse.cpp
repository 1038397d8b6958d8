#include "germkit/parse.hpp"

#include <cctype>

#include "germkit/ideal.hpp"

namespace germ {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Poly p = sum();
    skip_space();
    if (!at_end()) {
      if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '(' || peek() == '_') {
        fail("implicit multiplication is not allowed; use '*'");
      }
      fail(std::string("unexpected character '") + peek() + "'");
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly sum() {
    skip_space();
    Poly acc(ring_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Poly first = product();
    acc += negate ? -first : first;
    for (;;) {
      if (accept('+')) {
        acc += product();
      } else if (accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Poly product() {
    Poly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (!accept('^')) return base;
    skip_space();
    std::size_t start = pos_;
    if (!at_end() && peek() == '-') fail("negative exponent");
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("exponent must be a non-negative integer");
    }
    unsigned long e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<unsigned>(peek() - '0');
      if (e > kMaxParsedExponent) fail_at(start, "exponent exceeds " + std::to_string(kMaxParsedExponent));
      ++pos_;
    }
    skip_space();
    if (!at_end() && peek() == '^') fail("chained exponents need parentheses");
    return base.pow(static_cast<unsigned>(e));
  }

  Poly atom() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Poly number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (!at_end() && peek() == '/') {
      std::size_t slash = pos_++;
      std::size_t dstart = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (dstart == pos_) fail_at(slash, "expected denominator after '/'");
      std::string den(text_.substr(dstart, pos_ - dstart));
      Rational d(den, 10);
      if (d == 0) fail_at(dstart, "zero denominator");
      digits += "/" + den;
    }
    if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '(')) {
      fail("implicit multiplication is not allowed; use '*'");
    }
    Rational q(digits, 10);
    q.canonicalize();
    return Poly::constant(ring_, q);
  }

  Poly identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto idx = ring_->index_of(name);
    if (!idx) fail_at(start, "unknown identifier '" + name + "'");
    return Poly::variable(ring_, *idx);
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) { return Parser(text, ring).parse(); }

std::string print_monomial(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string print_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  MonomialOrder ord = MonomialOrder::global(p.nvars());
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered_terms(p, ord)) {
    bool negative = c < 0;
    Rational a = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += to_string(a);
    } else if (a == 1) {
      out += print_monomial(m, *p.ring());
    } else {
      out += to_string(a) + "*" + print_monomial(m, *p.ring());
    }
  }
  return out;
}

}  // namespace germ
