// Copyright 2026 The selfdeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "selfdeg/dsl.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

namespace selfdeg::dsl {

using namespace manifold;  // NOLINT: the parser builds descriptor types throughout

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct ParseError {
  SourceSpan span;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ManifoldDesc manifold(std::vector<SourceSpan>& spans) {
    ManifoldDesc out;
    skip();
    if (pos_ == text_.size()) fail(pos_, pos_, "empty input; expected a manifold description");
    for (;;) {
      skip();
      const std::size_t begin = pos_;
      out.summands.push_back(piece());
      spans.push_back({begin, pos_});
      skip();
      if (pos_ == text_.size()) break;
      if (!accept("#")) fail_here("expected '#' or end of input");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(std::size_t b, std::size_t e, std::string msg) const {
    throw ParseError{{b, e}, std::move(msg)};
  }

  [[noreturn]] void fail_here(const std::string& msg) const {
    std::size_t end = pos_;
    while (end < text_.size() && end - pos_ < 16 && !std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == pos_ && end < text_.size()) ++end;
    fail(pos_, end, pos_ == text_.size() ? msg + ", found end of input" : msg);
  }

  void skip() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  bool peek(std::string_view lit) {
    skip();
    return text_.substr(pos_, lit.size()) == lit;
  }

  bool accept(std::string_view lit) {
    if (!peek(lit)) return false;
    pos_ += lit.size();
    return true;
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) fail_here("expected '" + std::string(lit) + "'");
  }

  Int integer(bool allow_sign) {
    skip();
    const std::size_t begin = pos_;
    bool negative = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = begin;
      fail_here(allow_sign ? "expected an integer" : "expected a nonnegative integer");
    }
    std::uint64_t mag = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, mag);
    const std::uint64_t limit = negative ? std::uint64_t{1} << 63 : (std::uint64_t{1} << 63) - 1;
    if (ec != std::errc() || ptr != text_.data() + pos_ || mag > limit) {
      fail(begin, pos_, "integer out of the 64-bit range");
    }
    if (negative) return mag == (std::uint64_t{1} << 63) ? std::numeric_limits<Int>::min() : -static_cast<Int>(mag);
    return static_cast<Int>(mag);
  }

  Int nat() { return integer(false); }
  Int int_() { return integer(true); }

  Summand piece() {
    Int mult = 1;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t begin = pos_;
      mult = nat();
      if (!accept("*")) fail(begin, pos_, "a leading number must be a multiplicity, written k*piece");
      if (mult < 1) fail(begin, pos_, "multiplicity must be >= 1");
    }
    return Summand{atom(), mult};
  }

  Prime atom() {
    if (accept("~")) {
      skip();
      if (peek("L(")) return Spherical{lens(), true};
      const auto g = spher(true);
      if (!g) fail_here("'~' applies only to spherical pieces such as L(p,q) or I120");
      return Spherical{*g, true};
    }
    if (accept("S2xS1")) return S2xS1{};
    if (peek("L(")) return Spherical{lens(), false};
    if (accept("TSB[")) {
      const auto [a, b, c, d] = matrix();
      return TorusSemiBundle{a, b, c, d};
    }
    if (accept("TB[")) {
      const auto [a, b, c, d] = matrix();
      return TorusBundle{a, b, c, d};
    }
    if (accept("SF(")) return seifert();
    if (const auto g = spher(true)) return Spherical{*g, false};
    fail_here("unknown piece; expected S2xS1, L(p,q), D*(n), T24, O48, I120, T'(q), D'(n,q), Z(m)x..., "
              "TB[...], TSB[...] or SF(...)");
  }

  SphericalGroup lens() {
    expect("L(");
    const Int p = nat();
    expect(",");
    const Int q = int_();
    expect(")");
    return Lens{p, q};
  }

  std::optional<SphericalGroup> spher(bool allow_product) {
    skip();
    const std::size_t begin = pos_;
    if (accept("D*(")) {
      const Int n = nat();
      expect(")");
      return DStar{n};
    }
    if (accept("D'(")) {
      const Int n = nat();
      expect(",");
      const Int q = nat();
      expect(")");
      return DPrime{n, q};
    }
    if (accept("T'(")) {
      const Int q = nat();
      expect(")");
      return TPrime{q};
    }
    if (accept("T24")) return T24{};
    if (accept("O48")) return O48{};
    if (accept("I120")) return I120{};
    if (accept("Z(")) {
      if (!allow_product) fail(begin, pos_, "nested Z(m)x products are not supported");
      const Int m = nat();
      expect(")");
      // "x" must follow the parenthesis directly.
      if (pos_ >= text_.size() || text_[pos_] != 'x') fail_here("expected 'x' directly after Z(m)");
      ++pos_;
      skip();
      if (peek("L(")) fail_here("Z(m)x expects a non-cyclic group; Z(m)xL(p,q) is itself a lens space");
      const auto inner = spher(false);
      if (!inner) fail_here("expected a spherical group after Z(m)x");
      return ProductZm{m, to_noncyclic(*inner)};
    }
    return std::nullopt;
  }

  static NonCyclicGroup to_noncyclic(const SphericalGroup& g) {
    return std::visit(Overloaded{
                          // spher(false) yields neither of these
                          [](const Lens&) -> NonCyclicGroup { return T24{}; },
                          [](const ProductZm&) -> NonCyclicGroup { return T24{}; },
                          [](const auto& x) -> NonCyclicGroup { return x; },
                      },
                      g);
  }

  std::tuple<Int, Int, Int, Int> matrix() {
    const Int a = int_();
    expect(",");
    const Int b = int_();
    expect(";");
    const Int c = int_();
    expect(",");
    const Int d = int_();
    expect("]");
    return {a, b, c, d};
  }

  Prime seifert() {
    skip();
    bool orientable = true;
    if (accept("o")) {
      orientable = true;
    } else if (accept("n")) {
      orientable = false;
    } else {
      fail_here("expected 'o' (orientable base) or 'n' (nonorientable base)");
    }
    const Int genus = nat();
    std::vector<Slope> slopes;
    if (accept(";")) {
      do {
        const Int beta = int_();
        expect("/");
        const Int alpha = nat();
        slopes.push_back({beta, alpha});
      } while (accept(","));
    }
    expect(")");
    return Seifert{genus, orientable, std::move(slopes)};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_noncyclic(const NonCyclicGroup& g) {
  return std::visit(Overloaded{
                        [](const DStar& d) { return "D*(" + std::to_string(d.n) + ")"; },
                        [](const T24&) { return std::string("T24"); },
                        [](const O48&) { return std::string("O48"); },
                        [](const I120&) { return std::string("I120"); },
                        [](const TPrime& t) { return "T'(" + std::to_string(t.q) + ")"; },
                        [](const DPrime& d) {
                          return "D'(" + std::to_string(d.n_prime) + "," + std::to_string(d.q) + ")";
                        },
                    },
                    g);
}

std::string render_group(const SphericalGroup& g) {
  return std::visit(Overloaded{
                        [](const Lens& l) { return "L(" + std::to_string(l.p) + "," + std::to_string(l.q) + ")"; },
                        [](const ProductZm& z) { return "Z(" + std::to_string(z.m) + ")x" + render_noncyclic(z.inner); },
                        [](const auto& other) { return render_noncyclic(NonCyclicGroup(other)); },
                    },
                    g);
}

std::string render_matrix(const char* head, Int a, Int b, Int c, Int d) {
  std::ostringstream os;
  os << head << '[' << a << ',' << b << ';' << c << ',' << d << ']';
  return os.str();
}

std::string render_prime(const Prime& p) {
  return std::visit(Overloaded{
                        [](const S2xS1&) { return std::string("S2xS1"); },
                        [](const Spherical& s) { return (s.reversed ? "~" : "") + render_group(s.group); },
                        [](const TorusBundle& m) { return render_matrix("TB", m.a, m.b, m.c, m.d); },
                        [](const TorusSemiBundle& m) { return render_matrix("TSB", m.a, m.b, m.c, m.d); },
                        [](const Seifert& s) {
                          std::ostringstream os;
                          os << "SF(" << (s.orientable_base ? 'o' : 'n') << s.genus;
                          for (std::size_t i = 0; i < s.slopes.size(); ++i) {
                            os << (i == 0 ? "; " : ",") << s.slopes[i].beta << '/' << s.slopes[i].alpha;
                          }
                          os << ')';
                          return os.str();
                        },
                    },
                    p);
}

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult out;
  ManifoldDesc desc;
  try {
    Parser parser(text);
    desc = parser.manifold(out.piece_spans);
  } catch (const ParseError& e) {
    out.diagnostics.push_back({e.span, e.message});
    out.piece_spans.clear();
    return out;
  }
  for (const Violation& v : validate(desc)) {
    const SourceSpan span = v.summand < out.piece_spans.size() ? out.piece_spans[v.summand] : SourceSpan{0, text.size()};
    out.diagnostics.push_back({span, v.message});
  }
  if (out.diagnostics.empty()) out.desc = std::move(desc);
  return out;
}

std::string render(const ManifoldDesc& desc) {
  const ManifoldDesc c = canonicalize(desc);
  std::string out;
  for (std::size_t i = 0; i < c.summands.size(); ++i) {
    if (i > 0) out += " # ";
    if (c.summands[i].multiplicity != 1) out += std::to_string(c.summands[i].multiplicity) + "*";
    out += render_prime(c.summands[i].piece);
  }
  return out;
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << "bytes " << d.span.begin << "-" << d.span.end << ": " << d.message;
  return os.str();
}

}  // namespace selfdeg::dsl
