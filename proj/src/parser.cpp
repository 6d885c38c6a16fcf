#include "resmon/parser.hpp"

#include <charconv>
#include <cctype>
#include <cmath>

#include <fmt/core.h>

namespace resmon {

namespace {

enum class Tok {
  ident,
  number,
  lparen,
  rparen,
  lbrack,
  rbrack,
  comma,
  star,
  plus,
  minus,
  ge,
  le,
  gt,
  lt,
  end,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  return t.kind == Tok::end ? std::string("end of input") : fmt::format("'{}'", t.text);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t start = i, l = line, col = column;
    auto emit = [&](Tok kind, std::size_t n) {
      tokens.push_back({kind, text.substr(start, n), l, col});
      advance(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (start + n < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[start + n])) || text[start + n] == '_')) {
        ++n;
      }
      emit(Tok::ident, n);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t n = 0;
      auto digits = [&] {
        while (start + n < text.size() && std::isdigit(static_cast<unsigned char>(text[start + n])))
          ++n;
      };
      digits();
      if (start + n < text.size() && text[start + n] == '.') {
        ++n;
        digits();
      }
      if (start + n < text.size() && (text[start + n] == 'e' || text[start + n] == 'E')) {
        std::size_t m = n + 1;
        if (start + m < text.size() && (text[start + m] == '+' || text[start + m] == '-')) ++m;
        if (start + m < text.size() && std::isdigit(static_cast<unsigned char>(text[start + m]))) {
          n = m;
          digits();
        }
      }
      emit(Tok::number, n);
    } else if (c == '>' || c == '<') {
      const bool eq = i + 1 < text.size() && text[i + 1] == '=';
      emit(c == '>' ? (eq ? Tok::ge : Tok::gt) : (eq ? Tok::le : Tok::lt), eq ? 2 : 1);
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case '[': kind = Tok::lbrack; break;
        case ']': kind = Tok::rbrack; break;
        case ',': kind = Tok::comma; break;
        case '*': kind = Tok::star; break;
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        default:
          throw ParseError(fmt::format("{}:{}: unexpected character '{}'", l, col, c), l, col);
      }
      emit(kind, 1);
    }
  }
  tokens.push_back({Tok::end, {}, line, column});
  return tokens;
}

bool is_keyword(std::string_view s) { return s == "not" || s == "and" || s == "or"; }

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : tokens_(tokenize(text)), options_(options) {}

  template <class F>
  ParseResult<F> run() {
    F f = formula<F>();
    if (peek().kind != Tok::end) fail(peek(), fmt::format("unexpected {}", describe(peek())));
    return {std::move(f), std::move(warnings_)};
  }

 private:
  // -- token helpers --------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_ident(std::string_view word, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::ident && peek(ahead).text == word;
  }
  /// `G[`, `F[`, `U[`, `R[` introduce operators; the same letters are
  /// ordinary channel names elsewhere.
  bool at_operator(std::string_view word) const {
    return at_ident(word) && peek(1).kind == Tok::lbrack;
  }
  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ParseError(fmt::format("{}:{}: {}", at.line, at.column, message), at.line, at.column);
  }
  const Token& expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail(peek(), fmt::format("expected {}, found {}", what, describe(peek())));
    return next();
  }

  double number_value(const Token& t) const {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || end != t.text.data() + t.text.size() || !std::isfinite(v)) {
      fail(t, fmt::format("invalid number '{}'", t.text));
    }
    return v;
  }

  /// A time bound, converted to integer steps.
  Step time_bound(std::string_view what) {
    const Token& t = peek();
    if (t.kind == Tok::ident && (t.text == "inf" || t.text == "infinity")) {
      fail(t, "unbounded interval: only bounded-time operators are supported");
    }
    if (t.kind == Tok::minus) fail(t, fmt::format("{} must be non-negative", what));
    if (t.kind != Tok::number) fail(t, fmt::format("expected {}, found {}", what, describe(t)));
    next();
    double v = number_value(t);
    if (options_.seconds_per_step) {
      const double steps = v / *options_.seconds_per_step;
      const double rounded = std::round(steps);
      if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
        fail(t, fmt::format("{} {}s is not a whole number of {}s steps", what, t.text,
                            *options_.seconds_per_step));
      }
      v = rounded;
    } else if (v != std::floor(v)) {
      fail(t, fmt::format("{} must be an integer number of steps, got {}", what, t.text));
    }
    if (v > 1e15) fail(t, fmt::format("{} {} is too large", what, t.text));
    return static_cast<Step>(v);
  }

  struct Bounds {
    Interval interval;
    bool closed;
  };

  Bounds interval(bool allow_half_open) {
    const Token& open = expect(Tok::lbrack, "'['");
    Bounds b{};
    b.interval.lo = time_bound("interval lower bound");
    expect(Tok::comma, "','");
    b.interval.hi = time_bound("interval upper bound");
    const Token& close = peek();
    if (close.kind == Tok::rbrack) {
      b.closed = true;
    } else if (close.kind == Tok::rparen && allow_half_open) {
      b.closed = false;
    } else {
      fail(close, fmt::format("expected ']'{}, found {}", allow_half_open ? " or ')'" : "",
                              describe(close)));
    }
    next();
    if (b.interval.hi < b.interval.lo) {
      fail(open, fmt::format("interval [{},{}] has upper bound below lower bound", b.interval.lo,
                             b.interval.hi));
    }
    if (!b.closed && b.interval.hi == b.interval.lo) {
      fail(open, fmt::format("half-open interval [{},{}) is empty", b.interval.lo, b.interval.hi));
    }
    return b;
  }

  // -- generic precedence layers -------------------------------------------
  template <class F>
  F formula() {
    F lhs = disjunction<F>();
    if (at_operator("U")) {
      next();
      const auto b = interval(false);
      F rhs = formula<F>();
      return build_until(b.interval, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  template <class F>
  F disjunction() {
    F lhs = conjunction<F>();
    while (at_ident("or")) {
      next();
      lhs = build_or(std::move(lhs), conjunction<F>());
    }
    return lhs;
  }

  template <class F>
  F conjunction() {
    F lhs = unary<F>();
    while (at_ident("and")) {
      next();
      lhs = build_and(std::move(lhs), unary<F>());
    }
    return lhs;
  }

  template <class F>
  F unary() {
    if (at_ident("not")) {
      next();
      return build_not(unary<F>());
    }
    if (at_operator("G")) {
      const Token& g = next();
      const auto b = interval(true);
      return build_always(g, b, unary<F>());
    }
    if (at_operator("F")) {
      next();
      const auto b = interval(false);
      return build_eventually(b.interval, unary<F>());
    }
    return primary(static_cast<F*>(nullptr));
  }

  // -- primaries --------------------------------------------------------------
  StlFormula primary(StlFormula*) {
    if (peek().kind == Tok::lparen) {
      next();
      StlFormula f = formula<StlFormula>();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (at_operator("R")) fail(peek(), "R atoms are only allowed in resiliency specifications");
    return atom();
  }

  SrsFormula primary(SrsFormula*) {
    if (peek().kind == Tok::lparen) {
      next();
      SrsFormula f = formula<SrsFormula>();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (!at_operator("R")) {
      fail(peek(), fmt::format("expected an R[alpha,beta](...) atom, found {}", describe(peek())));
    }
    const Token& r = next();
    expect(Tok::lbrack, "'['");
    const Step alpha = time_bound("alpha");
    expect(Tok::comma, "','");
    const Step beta = time_bound("beta");
    expect(Tok::rbrack, "']'");
    if (beta <= 0) fail(r, fmt::format("beta must be positive in R[{},{}]", alpha, beta));
    expect(Tok::lparen, "'('");
    StlFormula body = formula<StlFormula>();
    expect(Tok::rparen, "')'");
    return srs::resilience(alpha, beta, std::move(body));
  }

  StlFormula atom() {
    const Token& start = peek();
    AffineExpr expr = affine();
    Relation relation;
    const Token& op = peek();
    switch (op.kind) {
      case Tok::ge: relation = Relation::ge; break;
      case Tok::le: relation = Relation::le; break;
      case Tok::gt:
      case Tok::lt:
        relation = op.kind == Tok::gt ? Relation::ge : Relation::le;
        warnings_.push_back(fmt::format("{}:{}: strict '{}' evaluated as '{}='", op.line,
                                        op.column, op.text, op.text));
        break;
      default:
        // Bare channel name: a 0/1-valued proposition.
        if (expr.terms.size() == 1 && expr.terms[0].coef == 1.0 && expr.constant == 0.0 &&
            &start + 1 == &op) {
          return stl::atom(std::move(expr), Relation::ge, 0.5);
        }
        fail(op, fmt::format("expected comparison operator, found {}", describe(op)));
    }
    next();
    return stl::atom(std::move(expr), relation, signed_number("threshold"));
  }

  double signed_number(std::string_view what) {
    double sign = 1.0;
    if (peek().kind == Tok::minus || peek().kind == Tok::plus) {
      if (next().kind == Tok::minus) sign = -1.0;
    }
    const Token& t = peek();
    if (t.kind != Tok::number) fail(t, fmt::format("expected {}, found {}", what, describe(t)));
    next();
    return sign * number_value(t);
  }

  AffineExpr affine() {
    AffineExpr expr;
    double sign = 1.0;
    if (peek().kind == Tok::minus) {
      next();
      sign = -1.0;
    } else if (peek().kind == Tok::plus) {
      next();
    }
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::number) {
        next();
        const double v = number_value(t);
        if (peek().kind == Tok::star) {
          next();
          const Token& name = expect(Tok::ident, "channel name");
          check_channel(name);
          expr.terms.push_back({sign * v, std::string(name.text)});
        } else {
          expr.constant += sign * v;
        }
      } else if (t.kind == Tok::ident) {
        check_channel(t);
        next();
        expr.terms.push_back({sign * 1.0, std::string(t.text)});
      } else {
        fail(t, fmt::format("expected channel or number, found {}", describe(t)));
      }
      if (peek().kind == Tok::plus) {
        sign = 1.0;
      } else if (peek().kind == Tok::minus) {
        sign = -1.0;
      } else {
        break;
      }
      next();
    }
    return expr;
  }

  void check_channel(const Token& t) const {
    if (is_keyword(t.text)) fail(t, fmt::format("unexpected keyword '{}'", t.text));
    if (t.text == "inf" || t.text == "infinity") fail(t, "unexpected 'inf'");
    if (peek(1).kind == Tok::lbrack && &t == &peek()) {
      fail(t, fmt::format("operator '{}[' cannot appear inside an atom", t.text));
    }
  }

  // -- builders ---------------------------------------------------------------
  static StlFormula build_not(StlFormula f) { return stl::negate(std::move(f)); }
  static SrsFormula build_not(SrsFormula f) { return srs::negate(std::move(f)); }
  static StlFormula build_and(StlFormula a, StlFormula b) { return stl::conj(std::move(a), std::move(b)); }
  static SrsFormula build_and(SrsFormula a, SrsFormula b) { return srs::conj(std::move(a), std::move(b)); }
  static StlFormula build_or(StlFormula a, StlFormula b) { return stl::disj(std::move(a), std::move(b)); }
  static SrsFormula build_or(SrsFormula a, SrsFormula b) { return srs::disj(std::move(a), std::move(b)); }
  static StlFormula build_until(Interval i, StlFormula a, StlFormula b) {
    return stl::until(i, std::move(a), std::move(b));
  }
  static SrsFormula build_until(Interval i, SrsFormula a, SrsFormula b) {
    return srs::until(i, std::move(a), std::move(b));
  }
  static StlFormula build_always(const Token&, const Bounds& b, StlFormula f) {
    return stl::always(b.interval, std::move(f), b.closed);
  }
  static SrsFormula build_always(const Token& at, const Bounds& b, SrsFormula f) {
    if (!b.closed) fail(at, "half-open 'G[a,b)' is only available inside STL formulas");
    return srs::always(b.interval, std::move(f));
  }
  static StlFormula build_eventually(Interval i, StlFormula f) { return stl::eventually(i, std::move(f)); }
  static SrsFormula build_eventually(Interval i, SrsFormula f) { return srs::eventually(i, std::move(f)); }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions options_;
  std::vector<std::string> warnings_;
};

void check_options(const ParseOptions& options) {
  if (options.seconds_per_step && !(*options.seconds_per_step > 0.0)) {
    throw ParseError("seconds-per-step must be positive", 0, 0);
  }
}

}  // namespace

ParseResult<StlFormula> parse_stl_with_warnings(std::string_view text, const ParseOptions& options) {
  check_options(options);
  return Parser(text, options).run<StlFormula>();
}

ParseResult<SrsFormula> parse_srs_with_warnings(std::string_view text, const ParseOptions& options) {
  check_options(options);
  return Parser(text, options).run<SrsFormula>();
}

StlFormula parse_stl(std::string_view text, const ParseOptions& options) {
  return parse_stl_with_warnings(text, options).formula;
}

SrsFormula parse_srs(std::string_view text, const ParseOptions& options) {
  return parse_srs_with_warnings(text, options).formula;
}

}  // namespace resmon
