#include "stablepoly/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "stablepoly/errors.hpp"

namespace stablepoly {

namespace {

constexpr int kMaxVarIndex = 256;
constexpr int kMaxExponent = 512;

class Parser {
 public:
  Parser(const std::string& s, int nvars) : s_(s), nvars_(nvars) {}

  MultiPoly parse() {
    MultiPoly p = parseExpr();
    skipWs();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  MultiPoly parseExpr() {
    skipWs();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (s_[pos_++] == '-');
    MultiPoly acc = parseTerm();
    if (neg) acc = -acc;
    for (;;) {
      skipWs();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      MultiPoly t = parseTerm();
      acc = (c == '+') ? acc + t : acc - t;
    }
    return acc;
  }

  MultiPoly parseTerm() {
    MultiPoly acc = parseFactor();
    for (;;) {
      skipWs();
      if (peek() != '*') break;
      ++pos_;
      acc = acc * parseFactor();
    }
    return acc;
  }

  MultiPoly parseFactor() {
    MultiPoly base = parseBase();
    skipWs();
    if (peek() == '^') {
      ++pos_;
      int e = parseUInt("exponent");
      if (e > kMaxExponent) fail("exponent too large");
      MultiPoly powed = MultiPoly::constant(nvars_, Complex(1.0));
      MultiPoly b = base;
      while (e > 0) {
        if (e & 1) powed = powed * b;
        b = b * b;
        e >>= 1;
      }
      return powed;
    }
    return base;
  }

  MultiPoly parseBase() {
    skipWs();
    char c = peek();
    if (c == '(') {
      std::size_t save = pos_;
      ++pos_;
      if (auto lit = tryComplexLiteral()) return MultiPoly::constant(nvars_, *lit);
      pos_ = save + 1;
      MultiPoly inner = parseExpr();
      skipWs();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      int idx = parseUInt("variable index");
      if (idx < 1 || idx > kMaxVarIndex) fail("variable index out of range");
      if (idx > nvars_) fail("variable index out of declared range");
      return MultiPoly::variable(nvars_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return MultiPoly::constant(nvars_, Complex(parseDouble()));
    fail("expected coefficient, variable, or '('");
  }

  // "(re (+|-) im i)" -- called with pos_ just past '('. Returns the literal
  // and consumes through ')' on success; leaves pos_ untouched on failure.
  std::optional<Complex> tryComplexLiteral() {
    std::size_t save = pos_;
    auto restore = [&]() -> std::optional<Complex> {
      pos_ = save;
      return std::nullopt;
    };
    skipWs();
    double re;
    if (!tryDouble(re)) return restore();
    skipWs();
    char sgn = peek();
    if (sgn != '+' && sgn != '-') return restore();
    ++pos_;
    skipWs();
    double im;
    if (!tryDouble(im)) return restore();
    skipWs();
    if (peek() != 'i') return restore();
    ++pos_;
    skipWs();
    if (peek() != ')') return restore();
    ++pos_;
    return Complex(re, sgn == '-' ? -im : im);
  }

  int parseUInt(const char* what) {
    skipWs();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(std::string("expected ") + what);
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000) fail(std::string(what) + " too large");
    }
    return static_cast<int>(v);
  }

  double parseDouble() {
    double v;
    if (!tryDouble(v)) fail("expected number");
    return v;
  }

  bool tryDouble(double& out) {
    skipWs();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) return false;
    // Reject strtod consuming a leading inf/nan or hex form we do not emit.
    if (!std::isfinite(v)) return false;
    pos_ += static_cast<std::size_t>(end - begin);
    out = v;
    return true;
  }

  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  const std::string& s_;
  int nvars_;
  std::size_t pos_ = 0;
};

// Largest 1-based variable index mentioned anywhere in the text, counting
// variables whose terms later cancel.
int scanMaxVarIndex(const std::string& s) {
  int maxIdx = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != 'x' || !std::isdigit(static_cast<unsigned char>(s[i + 1]))) continue;
    long v = 0;
    std::size_t j = i + 1;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) && v <= kMaxVarIndex)
      v = v * 10 + (s[j++] - '0');
    maxIdx = std::max(maxIdx, static_cast<int>(std::min<long>(v, kMaxVarIndex + 1)));
  }
  return maxIdx;
}

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

MultiPoly parseText(const std::string& text, int declaredNvars) {
  int seen = scanMaxVarIndex(text);
  int nvars = declaredNvars >= 0 ? declaredNvars : seen;
  MultiPoly p = Parser(text, nvars).parse();
  return p;
}

std::string formatComplex(Complex c) {
  std::string im = formatDouble(std::abs(c.imag()));
  return "(" + formatDouble(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + im + "i)";
}

std::string formatText(const MultiPoly& f) {
  if (f.isZero()) return "(0+0i)";
  std::string out;
  bool first = true;
  for (const auto& [exp, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    out += formatComplex(c);
    for (std::size_t j = 0; j < exp.size(); ++j) {
      if (exp[j] == 0) continue;
      out += "*x" + std::to_string(j + 1);
      if (exp[j] > 1) out += "^" + std::to_string(exp[j]);
    }
  }
  return out;
}

nlohmann::json toJson(const MultiPoly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [exp, c] : f.terms())
    terms.push_back({{"exp", exp}, {"re", c.real()}, {"im", c.imag()}});
  return {{"nvars", f.nvars()}, {"terms", terms}};
}

MultiPoly multiPolyFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms"))
    throw std::invalid_argument("polynomial JSON must have nvars and terms");
  int nvars = j.at("nvars").get<int>();
  if (nvars < 0 || nvars > kMaxVarIndex) throw std::invalid_argument("nvars out of range");
  MultiPoly p(nvars);
  for (const auto& t : j.at("terms")) {
    ExpVec exp = t.at("exp").get<ExpVec>();
    double re = t.at("re").get<double>();
    double im = t.value("im", 0.0);
    if (static_cast<int>(exp.size()) != nvars)
      throw std::invalid_argument("term exponent length mismatch");
    for (int e : exp)
      if (e < 0 || e > kMaxExponent) throw std::invalid_argument("exponent out of range");
    p.addTerm(exp, Complex(re, im));
  }
  return p;
}

MultiPoly parseAny(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return multiPolyFromJson(nlohmann::json::parse(text));
    break;
  }
  return parseText(text);
}

}  // namespace stablepoly
