#include "tvmc/parser.hpp"

#include <cctype>
#include <vector>

namespace tvmc {

namespace {

enum class Tok {
  End, Ident, VarX, VarY, LParen, RParen, Not, And, Or, Impl, Iff,
  Lt, Le, Eq, Dot, Comma, Assign,
  OpX, OpPrev, OpF, OpPastF, OpG, OpU, OpS, QE, QA, Let, In, Suc, True, False,
};

struct Token {
  Tok t;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) i_++;
    cur_.pos = i_;
    if (i_ >= s_.size()) {
      cur_.t = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = s_[i_];
    auto two = [&](char a, char b) {
      return c == a && i_ + 1 < s_.size() && s_[i_ + 1] == b;
    };
    if (c == '(') { one(Tok::LParen); return; }
    if (c == ')') { one(Tok::RParen); return; }
    if (c == '!') { one(Tok::Not); return; }
    if (c == '&') { one(Tok::And); return; }
    if (c == '|') { one(Tok::Or); return; }
    if (c == '.') { one(Tok::Dot); return; }
    if (c == ',') { one(Tok::Comma); return; }
    if (two('-', '>')) { cur_.t = Tok::Impl; i_ += 2; return; }
    if (c == '<' && i_ + 2 < s_.size() && s_[i_ + 1] == '-' && s_[i_ + 2] == '>') {
      cur_.t = Tok::Iff;
      i_ += 3;
      return;
    }
    if (two('<', '=')) { cur_.t = Tok::Le; i_ += 2; return; }
    if (c == '<') { one(Tok::Lt); return; }
    if (c == '=') { one(Tok::Eq); return; }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) ||
                               s_[j] == '_'))
        j++;
      while (j < s_.size() && s_[j] == '\'') j++;
      cur_.text = s_.substr(i_, j - i_);
      i_ = j;
      cur_.t = keyword(cur_.text);
      // X~ and F~ are single tokens when the tilde is adjacent.
      if ((cur_.t == Tok::OpX || cur_.t == Tok::OpF) && i_ < s_.size() &&
          s_[i_] == '~') {
        cur_.t = (cur_.t == Tok::OpX) ? Tok::OpPrev : Tok::OpPastF;
        i_++;
      }
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

 private:
  void one(Tok t) {
    cur_.t = t;
    i_++;
  }

  static Tok keyword(const std::string& w) {
    if (w == "x") return Tok::VarX;
    if (w == "y") return Tok::VarY;
    if (w == "X") return Tok::OpX;
    if (w == "F") return Tok::OpF;
    if (w == "G") return Tok::OpG;
    if (w == "U") return Tok::OpU;
    if (w == "S") return Tok::OpS;
    if (w == "E") return Tok::QE;
    if (w == "A") return Tok::QA;
    if (w == "let") return Tok::Let;
    if (w == "in") return Tok::In;
    if (w == "suc") return Tok::Suc;
    if (w == "true") return Tok::True;
    if (w == "false") return Tok::False;
    return Tok::Ident;
  }

  const std::string& s_;
  size_t i_ = 0;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lx_(s) {}

  Formula expr() {
    if (lx_.cur().t == Tok::Let) return let_form();
    return iff();
  }

  void expect_end() {
    if (lx_.cur().t != Tok::End)
      throw ParseError("trailing input after formula", lx_.cur().pos);
  }

 private:
  Formula let_form() {
    eat(Tok::Let);
    if (lx_.cur().t != Tok::Ident)
      throw ParseError("expected predicate name after 'let'", lx_.cur().pos);
    std::string name = lx_.cur().text;
    lx_.advance();
    eat(Tok::LParen);
    if (lx_.cur().t != Tok::VarX)
      throw ParseError("let parameter must be x", lx_.cur().pos);
    lx_.advance();
    eat(Tok::RParen);
    eat(Tok::Eq);
    Formula body = expr();
    eat(Tok::In);
    Formula cont = expr();
    return mk_let(intern_symbol(name), body, cont);
  }

  Formula iff() {
    Formula a = impl();
    if (lx_.cur().t == Tok::Iff) {
      lx_.advance();
      return mk_iff(a, iff());
    }
    return a;
  }

  Formula impl() {
    Formula a = disj();
    if (lx_.cur().t == Tok::Impl) {
      lx_.advance();
      return mk_implies(a, impl());
    }
    return a;
  }

  Formula disj() {
    Formula a = conj();
    while (lx_.cur().t == Tok::Or) {
      lx_.advance();
      a = mk_or(a, conj());
    }
    return a;
  }

  Formula conj() {
    Formula a = until_since();
    while (lx_.cur().t == Tok::And) {
      lx_.advance();
      a = mk_and(a, until_since());
    }
    return a;
  }

  Formula until_since() {
    Formula a = unary();
    if (lx_.cur().t == Tok::OpU) {
      lx_.advance();
      return mk_until(a, until_since());
    }
    if (lx_.cur().t == Tok::OpS) {
      lx_.advance();
      return mk_since(a, until_since());
    }
    return a;
  }

  Formula unary() {
    switch (lx_.cur().t) {
      case Tok::Not:
        lx_.advance();
        return mk_not(unary());
      case Tok::OpX:
        lx_.advance();
        return mk_next(unary());
      case Tok::OpPrev:
        lx_.advance();
        return mk_prev(unary());
      case Tok::OpF:
        lx_.advance();
        return mk_ev(unary());
      case Tok::OpPastF:
        lx_.advance();
        return mk_past_ev(unary());
      case Tok::OpG:
        lx_.advance();
        return mk_globally(unary());
      case Tok::QE:
      case Tok::QA: {
        bool forall = lx_.cur().t == Tok::QA;
        size_t qpos = lx_.cur().pos;
        lx_.advance();
        Var v;
        if (lx_.cur().t == Tok::VarX) v = Var::X;
        else if (lx_.cur().t == Tok::VarY) v = Var::Y;
        else
          throw ParseError("quantified variable must be x or y, got '" +
                               lx_.cur().text + "'",
                           lx_.cur().pos);
        (void)qpos;
        lx_.advance();
        eat(Tok::Dot);
        Formula body = unary();
        return forall ? mk_forall(v, body) : mk_exists(v, body);
      }
      default:
        return atom();
    }
  }

  Formula atom() {
    const Token& t = lx_.cur();
    switch (t.t) {
      case Tok::LParen: {
        lx_.advance();
        Formula f = expr();
        eat(Tok::RParen);
        return f;
      }
      case Tok::True:
        lx_.advance();
        return mk_true();
      case Tok::False:
        lx_.advance();
        return mk_false();
      case Tok::VarX:
      case Tok::VarY: {
        Var a = t.t == Tok::VarX ? Var::X : Var::Y;
        lx_.advance();
        return order_atom(a);
      }
      case Tok::Suc: {
        lx_.advance();
        eat(Tok::LParen);
        Var a = var_tok();
        eat(Tok::Comma);
        Var b = var_tok();
        eat(Tok::RParen);
        if (a == b)
          throw ParseError("suc needs two distinct variables", t.pos);
        return mk_suc(a);
      }
      case Tok::Ident: {
        std::string name = t.text;
        lx_.advance();
        if (lx_.cur().t == Tok::LParen) {
          lx_.advance();
          Var v = var_tok();
          eat(Tok::RParen);
          return mk_pred(name, v);
        }
        return mk_prop(name);
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  Formula order_atom(Var a) {
    const Token& t = lx_.cur();
    if (t.t == Tok::Lt) {
      lx_.advance();
      Var b = var_tok();
      if (a == b) throw ParseError("comparison needs distinct variables", t.pos);
      return mk_less(a);
    }
    if (t.t == Tok::Le) {
      lx_.advance();
      Var b = var_tok();
      if (a == b) throw ParseError("comparison needs distinct variables", t.pos);
      return mk_or(mk_less(a), mk_eq());
    }
    if (t.t == Tok::Eq) {
      lx_.advance();
      Var b = var_tok();
      if (a == b) throw ParseError("comparison needs distinct variables", t.pos);
      return mk_eq();
    }
    throw ParseError("expected <, <= or = after variable", t.pos);
  }

  Var var_tok() {
    const Token& t = lx_.cur();
    if (t.t == Tok::VarX) {
      lx_.advance();
      return Var::X;
    }
    if (t.t == Tok::VarY) {
      lx_.advance();
      return Var::Y;
    }
    throw ParseError("variable must be x or y, got '" + t.text + "'", t.pos);
  }

  void eat(Tok t) {
    if (lx_.cur().t != t)
      throw ParseError("unexpected token '" + lx_.cur().text + "'",
                       lx_.cur().pos);
    lx_.advance();
  }

  Lexer lx_;
};

}  // namespace

Formula parse_formula(const std::string& text,
                      std::optional<FragmentInfo> expected) {
  Parser p(text);
  Formula f = p.expr();
  p.expect_end();
  if (auto err = validate(f)) throw ParseError(*err, 0);
  if (expected) {
    FragmentInfo got = classify(f);
    if (!fragment_leq(got, *expected)) {
      throw ParseError(std::string("fragment violation: formula is ") +
                           fragment_name(got.frag) + (got.with_let ? "+let" : "") +
                           ", expected at most " + fragment_name(expected->frag) +
                           (expected->with_let ? "+let" : ""),
                       0);
    }
  }
  return f;
}

}  // namespace tvmc
