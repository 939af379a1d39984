#include "folmod/parse.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace folmod {

namespace {

enum class Tok {
  kNum,
  kX,
  kY,
  kI,
  kDx,
  kDy,
  kDOpen,  // "d("
  kLParen,
  kRParen,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLBrace,  // '{' starts an inline JSON value (divisor coefficients)
  kEnd
};

struct Token {
  Tok kind;
  Rat num;
  int col = 0;
};

class Lexer {
 public:
  Lexer(const std::string& s, int line) : s_(s), line_(line) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_, tok_.col + 1);
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    tok_.col = static_cast<int>(pos_);
    if (pos_ >= s_.size()) {
      tok_.kind = Tok::kEnd;
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      tok_.kind = Tok::kNum;
      tok_.num = Rat(Int(s_.substr(start, pos_ - start)));
      return;
    }
    switch (c) {
      case '+': tok_.kind = Tok::kPlus; ++pos_; return;
      case '-': tok_.kind = Tok::kMinus; ++pos_; return;
      case '*': tok_.kind = Tok::kStar; ++pos_; return;
      case '/': tok_.kind = Tok::kSlash; ++pos_; return;
      case '^': tok_.kind = Tok::kCaret; ++pos_; return;
      case '(': tok_.kind = Tok::kLParen; ++pos_; return;
      case ')': tok_.kind = Tok::kRParen; ++pos_; return;
      case '{': tok_.kind = Tok::kLBrace; return;
      case 'x': tok_.kind = Tok::kX; ++pos_; return;
      case 'y': tok_.kind = Tok::kY; ++pos_; return;
      case 'i': tok_.kind = Tok::kI; ++pos_; return;
      case 'd':
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == 'x') {
          tok_.kind = Tok::kDx;
          pos_ += 2;
          return;
        }
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == 'y') {
          tok_.kind = Tok::kDy;
          pos_ += 2;
          return;
        }
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '(') {
          tok_.kind = Tok::kDOpen;
          pos_ += 2;
          return;
        }
        throw SyntaxError("stray 'd'", line_, static_cast<int>(pos_) + 1);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          line_, static_cast<int>(pos_) + 1);
    }
  }

  const std::string& s_;
  int line_;
  size_t pos_ = 0;
  Token tok_;
};

// scalar + a dx + b dy + sum of lambda df/f
struct Val {
  BiPoly s, a, b;
  std::vector<std::pair<TowerElem, BiPoly>> logs;

  bool is_scalar() const {
    return a.is_zero() && b.is_zero() && logs.empty();
  }
  bool has_form() const { return !is_scalar() || false; }
};

class Parser {
 public:
  Parser(const std::string& text, int line, Tower tower)
      : lex_(text, line), line_(line), tower_(std::move(tower)) {}

  Val parse() {
    Val v = expr();
    if (lex_.peek().kind != Tok::kEnd) lex_.fail("trailing input");
    return v;
  }

  Tower take_tower() { return std::move(tower_); }
  const Tower& tower() const { return tower_; }

 private:
  [[noreturn]] void fail(const std::string& msg) { lex_.fail(msg); }

  Val expr() {
    Val v = term();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::kPlus) {
        lex_.next();
        v = add(v, term());
      } else if (k == Tok::kMinus) {
        lex_.next();
        v = add(v, neg(term()));
      } else {
        return v;
      }
    }
  }

  Val term() {
    Val v = unary();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::kStar) {
        lex_.next();
        v = mul(v, unary());
      } else if (k == Tok::kSlash) {
        lex_.next();
        v = div(v, unary());
      } else {
        return v;
      }
    }
  }

  Val unary() {
    if (lex_.peek().kind == Tok::kMinus) {
      lex_.next();
      return neg(unary());
    }
    return power();
  }

  Val power() {
    Val v = atom();
    if (lex_.peek().kind == Tok::kCaret) {
      lex_.next();
      if (lex_.peek().kind != Tok::kNum) fail("exponent must be an integer");
      Rat e = lex_.next().num;
      if (rat_den(e) != 1 || e < 0) fail("exponent must be a nonnegative integer");
      if (!v.is_scalar()) fail("cannot exponentiate a 1-form");
      Val r;
      r.s = bp_pow(tower_, v.s, static_cast<unsigned>(Int(rat_num(e))));
      return r;
    }
    return v;
  }

  Val atom() {
    Token t = lex_.next();
    Val v;
    switch (t.kind) {
      case Tok::kNum:
        v.s = bp_const(te_rat(t.num));
        return v;
      case Tok::kX:
        v.s = bp_x();
        return v;
      case Tok::kY:
        v.s = bp_y();
        return v;
      case Tok::kI:
        v.s = bp_const(imaginary_unit());
        return v;
      case Tok::kDx:
        v.a = bp_const(TowerElem(1));
        return v;
      case Tok::kDy:
        v.b = bp_const(TowerElem(1));
        return v;
      case Tok::kLParen: {
        Val inner = expr();
        if (lex_.peek().kind != Tok::kRParen) fail("expected ')'");
        lex_.next();
        return inner;
      }
      case Tok::kDOpen: {
        Val inner = expr();
        if (lex_.peek().kind != Tok::kRParen) fail("expected ')'");
        lex_.next();
        if (!inner.is_scalar()) fail("d( ) needs a polynomial argument");
        Val r;
        r.a = bp_dx(inner.s);
        r.b = bp_dy(inner.s);
        return r;
      }
      default:
        fail("unexpected token");
    }
  }

  TowerElem imaginary_unit() {
    for (int k = 1; k <= tower_.height(); ++k) {
      const auto& L = tower_.levels[k - 1];
      if (L.minpoly.size() == 3 && L.minpoly[0] == TowerElem(1) &&
          L.minpoly[1] == TowerElem() && L.im_lo > 0)
        return te_gen(k);
    }
    tower_.extend({TowerElem(1), TowerElem(), TowerElem(1)}, Rat(-1, 2),
                  Rat(1, 2), Rat(1, 2), Rat(3, 2));
    return te_gen(tower_.height());
  }

  Val add(const Val& u, const Val& v) {
    Val r;
    r.s = bp_add(u.s, v.s);
    r.a = bp_add(u.a, v.a);
    r.b = bp_add(u.b, v.b);
    r.logs = u.logs;
    r.logs.insert(r.logs.end(), v.logs.begin(), v.logs.end());
    return r;
  }

  Val neg(const Val& u) {
    Val r;
    r.s = bp_neg(u.s);
    r.a = bp_neg(u.a);
    r.b = bp_neg(u.b);
    r.logs = u.logs;
    for (auto& [lam, f] : r.logs) lam = te_neg(lam);
    return r;
  }

  Val mul(const Val& u, const Val& v) {
    if (u.is_scalar() && v.is_scalar()) {
      Val r;
      r.s = bp_mul(tower_, u.s, v.s);
      return r;
    }
    const Val* scal = u.is_scalar() ? &u : v.is_scalar() ? &v : nullptr;
    const Val* form = scal == &u ? &v : &u;
    if (!scal) fail("product of two 1-forms");
    Val r;
    r.a = bp_mul(tower_, scal->s, form->a);
    r.b = bp_mul(tower_, scal->s, form->b);
    if (!form->logs.empty()) {
      if (bp_deg_x(scal->s) > 0 || bp_deg_y(scal->s) > 0)
        fail("logarithmic terms take constant multiples only");
      TowerElem c = scal->s.is_zero() ? TowerElem() : scal->s.terms.begin()->second;
      r.logs = form->logs;
      for (auto& [lam, f] : r.logs) lam = te_mul(tower_, lam, c);
    }
    if (!form->s.is_zero()) fail("mixed scalar and 1-form product");
    return r;
  }

  Val div(const Val& u, const Val& v) {
    if (!v.is_scalar()) fail("division by a 1-form");
    if (v.s.is_zero()) fail("division by zero");
    bool v_const = bp_deg_x(v.s) == 0 && bp_deg_y(v.s) == 0;
    if (v_const) {
      TowerElem inv = te_inv(tower_, v.s.terms.begin()->second);
      Val r;
      r.s = bp_scale(tower_, u.s, inv);
      r.a = bp_scale(tower_, u.a, inv);
      r.b = bp_scale(tower_, u.b, inv);
      r.logs = u.logs;
      for (auto& [lam, f] : r.logs) lam = te_mul(tower_, lam, inv);
      return r;
    }
    // dividing by a nonconstant polynomial: only lambda * d(g) / g allowed
    if (!u.s.is_zero() || !u.logs.empty())
      fail("division by a polynomial is only allowed for logarithmic terms");
    const BiPoly& g = v.s;
    BiPoly gx = bp_dx(g), gy = bp_dy(g);
    TowerElem lam;
    if (!gx.is_zero() && !u.a.is_zero()) {
      const auto& [e, c] = *gx.terms.begin();
      auto it = u.a.terms.find(e);
      if (it == u.a.terms.end()) fail("not a logarithmic term");
      lam = te_div(tower_, it->second, c);
    } else if (!gy.is_zero() && !u.b.is_zero()) {
      const auto& [e, c] = *gy.terms.begin();
      auto it = u.b.terms.find(e);
      if (it == u.b.terms.end()) fail("not a logarithmic term");
      lam = te_div(tower_, it->second, c);
    } else {
      fail("not a logarithmic term");
    }
    if (!(bp_scale(tower_, gx, lam) == u.a) ||
        !(bp_scale(tower_, gy, lam) == u.b))
      fail("not a logarithmic term");
    Val r;
    r.logs.emplace_back(lam, g);
    return r;
  }

  Lexer lex_;
  int line_;
  Tower tower_;
};

ParseResult interpret(Val v, Tower tower, int line) {
  ParseResult out;
  out.tower = std::move(tower);
  if (v.is_scalar()) {
    out.kind = ParseResult::kPoly;
    out.poly = std::move(v.s);
    return out;
  }
  if (!v.s.is_zero())
    throw SyntaxError("mixed scalar and 1-form expression", line, 1);
  if (v.logs.empty()) {
    out.kind = ParseResult::kForm;
    out.form = {std::move(v.a), std::move(v.b), false};
    return out;
  }
  out.kind = ParseResult::kLogPresentation;
  for (auto& [lam, f] : v.logs) {
    if (!bp_eval(out.tower, f, TowerElem(), TowerElem()).is_zero())
      throw SyntaxError("logarithmic pole must pass through the origin", line,
                        1);
    out.logp.pairs.emplace_back(std::move(lam), std::move(f));
  }
  if (!v.a.is_zero() || !v.b.is_zero())
    out.logp.remainder = OneForm{std::move(v.a), std::move(v.b), false};
  return out;
}

}  // namespace

ParseResult parse_expression(const std::string& text, Tower tower) {
  Parser p(text, 1, std::move(tower));
  Val v = p.parse();
  return interpret(std::move(v), p.take_tower(), 1);
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

InputFile parse_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  InputFile out;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (!have_header) {
      if (line == "foliation:")
        out.kind = InputFile::kFoliation;
      else if (line == "divisor:")
        out.kind = InputFile::kDivisor;
      else if (line == "list:")
        out.kind = InputFile::kList;
      else
        throw SyntaxError("expected header foliation:, divisor: or list:",
                          lineno, 1);
      have_header = true;
      continue;
    }
    switch (out.kind) {
      case InputFile::kFoliation: {
        if (out.form || out.logp)
          throw SyntaxError("foliation file holds a single expression", lineno,
                            1);
        Parser p(line, lineno, std::move(out.tower));
        Val v = p.parse();
        ParseResult r = interpret(std::move(v), p.take_tower(), lineno);
        out.tower = std::move(r.tower);
        if (r.kind == ParseResult::kForm)
          out.form = std::move(r.form);
        else if (r.kind == ParseResult::kLogPresentation)
          out.logp = std::move(r.logp);
        else
          throw SyntaxError("foliation expression must be a 1-form", lineno, 1);
        break;
      }
      case InputFile::kList: {
        std::istringstream ls(line);
        std::string piece;
        while (std::getline(ls, piece, ',')) {
          Parser p(piece, lineno, std::move(out.tower));
          Val v = p.parse();
          ParseResult r = interpret(std::move(v), p.take_tower(), lineno);
          out.tower = std::move(r.tower);
          if (r.kind != ParseResult::kPoly)
            throw SyntaxError("list entries must be polynomials", lineno, 1);
          out.polys.push_back(std::move(r.poly));
        }
        break;
      }
      case InputFile::kDivisor: {
        auto colon = line.find(':');
        if (colon == std::string::npos)
          throw SyntaxError("expected LABEL : COEFF", lineno, 1);
        std::string label = strip_comment(line.substr(0, colon));
        std::string rhs = strip_comment(line.substr(colon + 1));
        if (label == "equation") {
          if (out.entries.empty())
            throw SyntaxError("equation: before any label", lineno, 1);
          Parser p(rhs, lineno, std::move(out.tower));
          Val v = p.parse();
          ParseResult r = interpret(std::move(v), p.take_tower(), lineno);
          out.tower = std::move(r.tower);
          if (r.kind != ParseResult::kPoly)
            throw SyntaxError("equation must be a polynomial", lineno, 1);
          out.entries.back().equation = std::move(r.poly);
          break;
        }
        DivisorEntry e;
        e.label = label;
        if (!rhs.empty() && rhs[0] == '{') {
          auto [tw, val] = te_from_json(rhs);
          if (out.tower.height() == 0) {
            out.tower = std::move(tw);
          } else {
            // coefficients must share one tower
            TowerElem probe = val;
            if (te_to_json(tw, probe) != te_to_json(out.tower, probe))
              throw SyntaxError("coefficient towers disagree", lineno, 1);
          }
          e.coeff = std::move(val);
        } else {
          try {
            e.coeff = te_rat(parse_rat(rhs));
          } catch (const std::invalid_argument&) {
            throw SyntaxError("malformed coefficient", lineno,
                              static_cast<int>(colon) + 2);
          }
        }
        if (e.coeff.is_zero())
          throw SyntaxError("zero divisor coefficient", lineno, 1);
        out.entries.push_back(std::move(e));
        break;
      }
    }
  }
  if (!have_header)
    throw SyntaxError("empty input", std::max(lineno, 1), 1);
  return out;
}

std::string print_form(const Tower& t, const OneForm& w) {
  std::ostringstream os;
  bool first = true;
  if (!w.a.is_zero()) {
    os << "(" << bp_print(t, w.a) << ")*dx";
    first = false;
  }
  if (!w.b.is_zero()) {
    if (!first) os << " + ";
    os << "(" << bp_print(t, w.b) << ")*dy";
  }
  return os.str();
}

std::string print_log(const Tower& t, const LogPresentation& lp) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [lam, f] : lp.pairs) {
    if (!first) os << " + ";
    first = false;
    os << "(" << te_print(t, lam) << ")*d(" << bp_print(t, f) << ")/("
       << bp_print(t, f) << ")";
  }
  if (lp.remainder) {
    if (!first) os << " + ";
    os << print_form(t, *lp.remainder);
  }
  return os.str();
}

}  // namespace folmod
