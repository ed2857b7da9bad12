#include "tvmc/fragment.hpp"

#include <set>
#include <unordered_set>

namespace tvmc {

FragmentInfo classify(Formula f) {
  uint32_t ft = f->features;
  bool fo = ft & (F_FO_ATOM | F_SUC | F_EXISTS);
  bool temporal = ft & (F_UNTIL_SINCE | F_NEXT_PREV | F_DIAMOND);
  FragmentInfo r;
  r.with_let = ft & F_LET;
  if (!fo) {
    r.frag = (ft & F_UNTIL_SINCE)  ? Fragment::LTL
             : (ft & F_NEXT_PREV) ? Fragment::UTL
                                  : Fragment::TLDD;
  } else if (!temporal && !(ft & F_NAKED_PROP)) {
    r.frag = (ft & F_SUC) ? Fragment::FO2 : Fragment::FO2LT;
  } else {
    r.frag = Fragment::FO2LTL;
  }
  return r;
}

bool fragment_leq(FragmentInfo a, FragmentInfo b) {
  if (a.with_let && !b.with_let) return false;
  auto chain_pos = [](Fragment f) -> int {
    switch (f) {
      case Fragment::TLDD: return 0;
      case Fragment::UTL: return 1;
      case Fragment::LTL: return 2;
      default: return -1;
    }
  };
  auto fo_pos = [](Fragment f) -> int {
    switch (f) {
      case Fragment::FO2LT: return 0;
      case Fragment::FO2: return 1;
      default: return -1;
    }
  };
  if (a.frag == b.frag) return true;
  if (b.frag == Fragment::FO2LTL) return true;
  if (a.frag == Fragment::FO2LTL) return false;
  int ca = chain_pos(a.frag), cb = chain_pos(b.frag);
  if (ca >= 0 && cb >= 0) return ca <= cb;
  int fa = fo_pos(a.frag), fb = fo_pos(b.frag);
  if (fa >= 0 && fb >= 0) return fa <= fb;
  return false;
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::TLDD: return "tldd";
    case Fragment::UTL: return "utl";
    case Fragment::LTL: return "ltl";
    case Fragment::FO2LT: return "fo2lt";
    case Fragment::FO2: return "fo2";
    case Fragment::FO2LTL: return "fo2ltl";
  }
  return "?";
}

std::optional<Fragment> fragment_from_name(const std::string& s) {
  if (s == "tldd") return Fragment::TLDD;
  if (s == "utl") return Fragment::UTL;
  if (s == "ltl") return Fragment::LTL;
  if (s == "fo2lt") return Fragment::FO2LT;
  if (s == "fo2") return Fragment::FO2;
  if (s == "fo2ltl") return Fragment::FO2LTL;
  return std::nullopt;
}

namespace {

// Does sym occur as a free predicate or proposition in f? Let rebinding hides
// inner occurrences.
bool occurs_free(Formula f, int32_t sym, std::unordered_set<Formula>& seen) {
  if (!seen.insert(f).second) return false;
  if ((f->is(Kind::Pred) || f->is(Kind::Prop)) && f->sym == sym) return true;
  if (f->is(Kind::Let)) {
    if (occurs_free(f->kid(0), sym, seen)) return true;
    if (f->sym == sym) return false;  // rebound in the scope
    return occurs_free(f->kid(1), sym, seen);
  }
  for (Formula k : f->kids) {
    if (occurs_free(k, sym, seen)) return true;
  }
  return false;
}

std::optional<std::string> validate_rec(Formula f, std::set<Formula>& done) {
  if (!done.insert(f).second) return std::nullopt;
  switch (f->kind) {
    case Kind::Next:
    case Kind::Prev:
    case Kind::Ev:
    case Kind::PastEv:
    case Kind::Until:
    case Kind::Since:
      for (Formula k : f->kids) {
        if (k->free_count() > 1) {
          return "temporal operator applied to a formula with two free "
                 "variables: " +
                 to_string(k);
        }
      }
      break;
    case Kind::Let: {
      Formula body = f->kid(0);
      if (body->free_mask & 2) {
        return "let body of " + symbol_name(f->sym) +
               " has free variable y (only x is allowed)";
      }
      std::unordered_set<Formula> seen;
      if (occurs_free(body, f->sym, seen)) {
        return "let body of " + symbol_name(f->sym) +
               " mentions the predicate being defined";
      }
      break;
    }
    default:
      break;
  }
  for (Formula k : f->kids) {
    if (auto e = validate_rec(k, done)) return e;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate(Formula f) {
  std::set<Formula> done;
  return validate_rec(f, done);
}

}  // namespace tvmc
