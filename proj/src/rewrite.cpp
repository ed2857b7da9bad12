#include "tvmc/rewrite.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "tvmc/fragment.hpp"

namespace tvmc {

namespace {

struct LetEnv {
  // Environments are persistent: each let extends its parent.
  const LetEnv* parent = nullptr;
  int32_t sym = -1;
  Formula body = nullptr;

  Formula lookup(int32_t s) const {
    for (const LetEnv* e = this; e; e = e->parent) {
      if (e->sym == s) return e->body;
    }
    return nullptr;
  }
};

Formula expand_rec(Formula f, const LetEnv* env,
                   std::unordered_map<Formula, Formula>& memo) {
  // Memoization is per-environment frame; frames are few and shallow, so the
  // maps are keyed per call level by the caller.
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Formula r;
  switch (f->kind) {
    case Kind::Prop: {
      Formula b = env ? env->lookup(f->sym) : nullptr;
      r = b ? b : f;
      break;
    }
    case Kind::Pred: {
      Formula b = env ? env->lookup(f->sym) : nullptr;
      if (!b) {
        r = f;
      } else {
        r = (f->var == Var::X) ? b : swap_vars(b);
      }
      break;
    }
    case Kind::Let: {
      std::unordered_map<Formula, Formula> inner_memo;
      Formula body = expand_rec(f->kid(0), env, inner_memo);
      LetEnv ext{env, f->sym, body};
      std::unordered_map<Formula, Formula> scope_memo;
      r = expand_rec(f->kid(1), &ext, scope_memo);
      break;
    }
    default: {
      if (f->kids.empty()) {
        r = f;
      } else {
        std::vector<Formula> ks;
        ks.reserve(f->kids.size());
        for (Formula k : f->kids) ks.push_back(expand_rec(k, env, memo));
        bool changed = false;
        for (size_t i = 0; i < ks.size(); i++) changed |= ks[i] != f->kids[i];
        if (!changed) {
          r = f;
        } else {
          switch (f->kind) {
            case Kind::Not: r = mk_not(ks[0]); break;
            case Kind::And: r = mk_and(ks[0], ks[1]); break;
            case Kind::Or: r = mk_or(ks[0], ks[1]); break;
            case Kind::Next: r = mk_next(ks[0]); break;
            case Kind::Prev: r = mk_prev(ks[0]); break;
            case Kind::Ev: r = mk_ev(ks[0]); break;
            case Kind::PastEv: r = mk_past_ev(ks[0]); break;
            case Kind::Until: r = mk_until(ks[0], ks[1]); break;
            case Kind::Since: r = mk_since(ks[0], ks[1]); break;
            case Kind::Exists: r = mk_exists(f->var, ks[0]); break;
            default: throw std::logic_error("expand_lets: unexpected node");
          }
        }
      }
      break;
    }
  }
  memo.emplace(f, r);
  return r;
}

}  // namespace

Formula expand_lets(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  return expand_rec(f, nullptr, memo);
}

namespace {

void collect_dag(Formula f, std::vector<Formula>& out,
                 std::unordered_set<Formula>& seen) {
  if (!seen.insert(f).second) return;
  for (Formula k : f->kids) collect_dag(k, out, seen);
  out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas_dag(Formula f) {
  Formula g = expand_lets(f);
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  collect_dag(g, out, seen);
  return out;
}

std::vector<Formula> closure_positives(Formula f) {
  std::vector<Formula> subs = subformulas_dag(f);
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  for (Formula s : subs) {
    Formula pos = s->is(Kind::Not) ? s->kid(0) : s;
    if (seen.insert(pos).second) out.push_back(pos);
  }
  return out;
}

std::vector<Formula> closure(Formula f) {
  std::vector<Formula> out;
  for (Formula p : closure_positives(f)) {
    out.push_back(p);
    out.push_back(mk_not(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// FO^2 -> UTL
// ---------------------------------------------------------------------------

namespace {

// Canonical positional form: formulas with free variable y are swapped so
// that tables and recursions key on x-forms only.
Formula canon_x(Formula f) { return (f->free_mask == 2) ? swap_vars(f) : f; }

struct Fo2Utl {
  std::unordered_map<Formula, Formula> memo;

  // Ports of a quantifier body: maximal subformulas with at most one free
  // variable, split by which variable they mention.
  void ports(Formula t, std::vector<Formula>& xs, std::vector<Formula>& ys,
             std::set<Formula>& seen) {
    if (t->free_count() <= 1) {
      if (!seen.insert(t).second) return;
      if (t->free_mask == 2) {
        ys.push_back(t);
      } else {
        xs.push_back(t);
      }
      return;
    }
    switch (t->kind) {
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        for (Formula k : t->kids) ports(k, xs, ys, seen);
        return;
      case Kind::Less:
      case Kind::Eq:
      case Kind::Suc:
        return;  // order atoms, handled per case
      default:
        throw std::logic_error("fo2_to_utl: two free variables under " +
                               to_string(t));
    }
  }

  enum class Rel { FarPast, Prev, Here, Next, FarFuture };

  // Substitutes order atoms by the case constants, x-ports by the Shannon
  // assignment, y-ports by their UTL translations (to be read at y).
  Formula cofactor(Formula t, Rel rel,
                   const std::map<Formula, bool>& assign,
                   const std::unordered_map<Formula, Formula>& yport) {
    if (t->free_count() <= 1) {
      if (t->free_mask == 2) return yport.at(t);
      auto it = assign.find(t);
      if (it != assign.end()) return it->second ? mk_true() : mk_false();
      // x-port not in the Shannon set: constants only
      return translate(t);
    }
    switch (t->kind) {
      case Kind::Not:
        return mk_not(cofactor(t->kid(0), rel, assign, yport));
      case Kind::And:
        return mk_and(cofactor(t->kid(0), rel, assign, yport),
                      cofactor(t->kid(1), rel, assign, yport));
      case Kind::Or:
        return mk_or(cofactor(t->kid(0), rel, assign, yport),
                     cofactor(t->kid(1), rel, assign, yport));
      case Kind::Eq:
        return rel == Rel::Here ? mk_true() : mk_false();
      case Kind::Less: {
        // var < other. Less(X) is x < y: true iff y is in the future.
        bool future = rel == Rel::Next || rel == Rel::FarFuture;
        bool past = rel == Rel::Prev || rel == Rel::FarPast;
        return ((t->var == Var::X) ? future : past) ? mk_true() : mk_false();
      }
      case Kind::Suc: {
        bool v = (t->var == Var::X) ? rel == Rel::Next : rel == Rel::Prev;
        return v ? mk_true() : mk_false();
      }
      default:
        throw std::logic_error("fo2_to_utl: unexpected node in cofactor");
    }
  }

  Formula quantifier(Formula t) {
    // t = E q. theta, already canonicalized so that free(t) <= {x}.
    Formula theta = t->kid(0);
    uint8_t qbit = (t->var == Var::X) ? 1 : 2;
    if (!(theta->free_mask & qbit)) {
      return translate(canon_x(theta));  // vacuous quantifier
    }
    if (theta->free_count() <= 1) {
      // The bound variable is the only one mentioned: position-independent.
      Formula body = translate(canon_x(theta));
      return mk_or(mk_past_ev(body), mk_ev(body));
    }
    if (t->var != Var::Y)
      throw std::logic_error("fo2_to_utl: canonical quantifier should bind y");
    std::vector<Formula> xs, ys;
    std::set<Formula> seen;
    ports(theta, xs, ys, seen);

    std::unordered_map<Formula, Formula> yport;
    for (Formula y : ys) yport.emplace(y, translate(canon_x(y)));

    Formula result = mk_false();
    size_t combos = size_t{1} << xs.size();
    if (xs.size() > 20)
      throw std::runtime_error("fo2_to_utl: too many one-variable subformulas");
    for (size_t m = 0; m < combos; m++) {
      std::map<Formula, bool> assign;
      Formula guard = mk_true();
      for (size_t i = 0; i < xs.size(); i++) {
        bool v = (m >> i) & 1;
        assign.emplace(xs[i], v);
        Formula tx = translate(canon_x(xs[i]));
        guard = mk_and(guard, v ? tx : mk_not(tx));
      }
      if (guard->is(Kind::False)) continue;

      Formula c_eq = cofactor(theta, Rel::Here, assign, yport);
      Formula c_next = cofactor(theta, Rel::Next, assign, yport);
      Formula c_prev = cofactor(theta, Rel::Prev, assign, yport);
      Formula c_ff = cofactor(theta, Rel::FarFuture, assign, yport);
      Formula c_fp = cofactor(theta, Rel::FarPast, assign, yport);

      std::vector<Formula> pieces;
      bool eq_covered = false;
      if (c_next == c_ff) {
        if (c_eq == c_ff) {
          pieces.push_back(mk_ev(c_ff));
          eq_covered = true;
        } else {
          pieces.push_back(mk_next(mk_ev(c_ff)));
        }
      } else {
        pieces.push_back(mk_next(mk_or(c_next, mk_next(mk_ev(c_ff)))));
      }
      if (c_prev == c_fp) {
        if (c_eq == c_fp) {
          pieces.push_back(mk_past_ev(c_fp));
          eq_covered = true;
        } else {
          pieces.push_back(mk_prev(mk_past_ev(c_fp)));
        }
      } else {
        pieces.push_back(mk_prev(mk_or(c_prev, mk_prev(mk_past_ev(c_fp)))));
      }
      if (!eq_covered) pieces.push_back(c_eq);
      result = mk_or(result, mk_and(guard, mk_or(pieces)));
    }
    return result;
  }

  Formula translate(Formula f) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    Formula r;
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Prop:
        r = f;
        break;
      case Kind::Pred:
        r = mk_prop(f->sym);
        break;
      case Kind::Not:
        r = mk_not(translate(canon_x(f->kid(0))));
        break;
      case Kind::And:
        r = mk_and(translate(canon_x(f->kid(0))), translate(canon_x(f->kid(1))));
        break;
      case Kind::Or:
        r = mk_or(translate(canon_x(f->kid(0))), translate(canon_x(f->kid(1))));
        break;
      case Kind::Exists:
        r = quantifier(f);
        break;
      default:
        throw std::logic_error("fo2_to_utl: not a pure FO^2 formula: " +
                               to_string(f));
    }
    memo.emplace(f, r);
    return r;
  }
};

}  // namespace

Formula fo2_to_utl(Formula f) {
  Formula g = expand_lets(f);
  if (g->free_count() > 1)
    throw std::invalid_argument("fo2_to_utl needs at most one free variable");
  Fo2Utl tr;
  return tr.translate(canon_x(g));
}

// ---------------------------------------------------------------------------
// UTL -> FO^2
// ---------------------------------------------------------------------------

Formula utl_to_fo2(Formula f, Var v) {
  Var o = other(v);
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Prop:
      if (f->shift != 0)
        return mk_pred(shifted_prop_symbol(f->sym, f->shift), v);
      return mk_pred(f->sym, v);
    case Kind::Guard:
      return mk_pred(exists_guard_symbol(f->shift), v);
    case Kind::Not:
      return mk_not(utl_to_fo2(f->kid(0), v));
    case Kind::And:
      return mk_and(utl_to_fo2(f->kid(0), v), utl_to_fo2(f->kid(1), v));
    case Kind::Or:
      return mk_or(utl_to_fo2(f->kid(0), v), utl_to_fo2(f->kid(1), v));
    case Kind::Ev:
      return mk_exists(o, mk_and(mk_or(mk_less(v), mk_eq()), utl_to_fo2(f->kid(0), o)));
    case Kind::PastEv:
      return mk_exists(o, mk_and(mk_or(mk_less(o), mk_eq()), utl_to_fo2(f->kid(0), o)));
    case Kind::Next:
      return mk_exists(o, mk_and(mk_suc(v), utl_to_fo2(f->kid(0), o)));
    case Kind::Prev:
      return mk_exists(o, mk_and(mk_suc(o), utl_to_fo2(f->kid(0), o)));
    default:
      throw std::invalid_argument("utl_to_fo2: not a UTL formula: " +
                                  to_string(f));
  }
}

// ---------------------------------------------------------------------------
// X / X~ pushing
// ---------------------------------------------------------------------------

namespace {

struct Pusher {
  std::map<std::pair<Formula, int>, Formula> memo;

  // rec(f, s) holds at i iff position i+s exists and f holds at i+s.
  Formula rec(Formula f, int s) {
    auto key = std::make_pair(f, s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Formula r;
    switch (f->kind) {
      case Kind::True:
        r = mk_guard(s);
        break;
      case Kind::False:
        r = mk_false();
        break;
      case Kind::Prop:
        r = mk_and(mk_guard(s), mk_prop(f->sym, f->shift + s));
        break;
      case Kind::Guard:
        r = mk_guard(std::min(f->shift + s, 0));
        break;
      case Kind::Not:
        r = mk_and(mk_guard(s), mk_not(rec(f->kid(0), s)));
        break;
      case Kind::And:
        r = mk_and(rec(f->kid(0), s), rec(f->kid(1), s));
        break;
      case Kind::Or:
        r = mk_or(rec(f->kid(0), s), rec(f->kid(1), s));
        break;
      case Kind::Next:
        r = mk_and(mk_guard(s), rec(f->kid(0), s + 1));
        break;
      case Kind::Prev:
        r = rec(f->kid(0), s - 1);
        break;
      case Kind::Ev: {
        if (s >= 0) {
          r = mk_ev(rec(f->kid(0), s));
        } else {
          Formula d = mk_ev(rec(f->kid(0), 0));
          for (int t = s; t <= -1; t++) d = mk_or(d, rec(f->kid(0), t));
          r = mk_and(mk_guard(s), d);
        }
        break;
      }
      case Kind::PastEv: {
        if (s <= 0) {
          r = mk_and(mk_guard(s), mk_past_ev(rec(f->kid(0), s)));
        } else {
          Formula d = mk_past_ev(rec(f->kid(0), 0));
          for (int t = 1; t <= s; t++) d = mk_or(d, rec(f->kid(0), t));
          r = d;
        }
        break;
      }
      default:
        throw std::invalid_argument("push_next_prev: not a UTL formula: " +
                                    to_string(f));
    }
    memo.emplace(key, r);
    return r;
  }
};

void max_shift(Formula f, std::set<Formula>& seen, int& n) {
  if (!seen.insert(f).second) return;
  if (f->is(Kind::Prop) || f->is(Kind::Guard)) {
    int a = f->shift < 0 ? -f->shift : f->shift;
    if (a > n) n = a;
  }
  for (Formula k : f->kids) max_shift(k, seen, n);
}

}  // namespace

PushedForm push_next_prev(Formula f) {
  Pusher p;
  PushedForm out;
  out.formula = p.rec(f, 0);
  std::set<Formula> seen;
  max_shift(out.formula, seen, out.depth);
  return out;
}

Formula simplify_at_origin(Formula f) {
  switch (f->kind) {
    case Kind::Prev:
      return mk_false();
    case Kind::PastEv:
      return simplify_at_origin(f->kid(0));
    case Kind::Since:
      return simplify_at_origin(f->kid(1));
    case Kind::Guard:
      return f->shift < 0 ? mk_false() : mk_true();
    case Kind::Prop:
      if (f->shift < 0) return mk_false();
      return f;
    case Kind::Not:
      return mk_not(simplify_at_origin(f->kid(0)));
    case Kind::And:
      return mk_and(simplify_at_origin(f->kid(0)), simplify_at_origin(f->kid(1)));
    case Kind::Or: {
      Formula a = simplify_at_origin(f->kid(0));
      Formula b = simplify_at_origin(f->kid(1));
      // g | F g == F g at the origin and everywhere (F is reflexive)
      if (b->is(Kind::Ev) && b->kid(0) == a) return b;
      if (a->is(Kind::Ev) && a->kid(0) == b) return a;
      return mk_or(a, b);
    }
    default:
      return f;
  }
}

int32_t shifted_prop_symbol(int32_t sym, int shift) {
  if (shift == 0) return intern_symbol(symbol_name(sym) + "@0");
  std::string s = symbol_name(sym) + "@" + (shift > 0 ? "+" : "") +
                  std::to_string(shift);
  return intern_symbol(s);
}

int32_t exists_guard_symbol(int shift) {
  return intern_symbol("#ex@" + std::to_string(shift));
}

Formula shifted_atoms_to_predicates(Formula f, Var v) {
  switch (f->kind) {
    case Kind::Prop:
      return mk_pred(shifted_prop_symbol(f->sym, f->shift), v);
    case Kind::Guard:
      return mk_pred(exists_guard_symbol(f->shift), v);
    case Kind::Not:
      return mk_not(shifted_atoms_to_predicates(f->kid(0), v));
    case Kind::And:
      return mk_and(shifted_atoms_to_predicates(f->kid(0), v),
                    shifted_atoms_to_predicates(f->kid(1), v));
    case Kind::Or:
      return mk_or(shifted_atoms_to_predicates(f->kid(0), v),
                   shifted_atoms_to_predicates(f->kid(1), v));
    default:
      return f;
  }
}

SucElimResult fo2_successor_elimination(Formula f, int max_radius) {
  Formula g = expand_lets(f);
  SucElimResult out;
  if (!(g->features & F_SUC)) {
    // Only the predicate renaming is required.
    struct Renamer {
      Formula run(Formula h) {
        switch (h->kind) {
          case Kind::Pred:
            return mk_pred(shifted_prop_symbol(h->sym, 0), h->var);
          case Kind::Not:
            return mk_not(run(h->kid(0)));
          case Kind::And:
            return mk_and(run(h->kid(0)), run(h->kid(1)));
          case Kind::Or:
            return mk_or(run(h->kid(0)), run(h->kid(1)));
          case Kind::Exists:
            return mk_exists(h->var, run(h->kid(0)));
          default:
            return h;
        }
      }
    } rn;
    out.formula = rn.run(g);
    out.radius = 0;
    return out;
  }
  Formula utl = fo2_to_utl(g);
  PushedForm pushed = push_next_prev(utl);
  if (pushed.depth > max_radius)
    throw std::runtime_error(
        "fo2_successor_elimination: required radius " +
        std::to_string(pushed.depth) + " exceeds the given bound " +
        std::to_string(max_radius));
  Formula tldd = pushed.formula;
  // Re-read the shifted atoms as predicates and embed TL[F,F~] into FO^2[<].
  struct Embed {
    Formula run(Formula h, Var v) {
      Var o = other(v);
      switch (h->kind) {
        case Kind::True:
        case Kind::False:
          return h;
        case Kind::Prop:
          return mk_pred(shifted_prop_symbol(h->sym, h->shift), v);
        case Kind::Guard:
          return mk_pred(exists_guard_symbol(h->shift), v);
        case Kind::Not:
          return mk_not(run(h->kid(0), v));
        case Kind::And:
          return mk_and(run(h->kid(0), v), run(h->kid(1), v));
        case Kind::Or:
          return mk_or(run(h->kid(0), v), run(h->kid(1), v));
        case Kind::Ev:
          return mk_exists(o, mk_and(mk_or(mk_less(v), mk_eq()), run(h->kid(0), o)));
        case Kind::PastEv:
          return mk_exists(o, mk_and(mk_or(mk_less(o), mk_eq()), run(h->kid(0), o)));
        default:
          throw std::logic_error("suc elimination: residual temporal operator");
      }
    }
  } emb;
  out.formula = emb.run(tldd, Var::X);
  out.radius = pushed.depth;
  return out;
}

}  // namespace tvmc
