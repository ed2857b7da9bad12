#include "tvmc/formula.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tvmc {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, int32_t> ids;
};

SymbolTable& symtab() {
  static SymbolTable t;
  return t;
}

struct NodeKey {
  Kind kind;
  Var var;
  int32_t sym;
  int32_t shift;
  std::vector<uint32_t> kid_ids;
  bool operator==(const NodeKey& o) const {
    return kind == o.kind && var == o.var && sym == o.sym && shift == o.shift &&
           kid_ids == o.kid_ids;
  }
};

struct NodeKeyHash {
  size_t operator()(const NodeKey& k) const {
    size_t h = static_cast<size_t>(k.kind) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<size_t>(k.var) + 0x517cc1b727220a95ull + (h << 6);
    h ^= static_cast<size_t>(static_cast<uint32_t>(k.sym)) * 0xff51afd7ed558ccdull;
    h ^= static_cast<size_t>(static_cast<uint32_t>(k.shift)) * 0xc4ceb9fe1a85ec53ull;
    for (uint32_t id : k.kid_ids) h = h * 1099511628211ull + id;
    return h;
  }
};

// Arena of interned nodes. Nodes are never freed; pointers stay valid for the
// lifetime of the process.
struct Arena {
  std::mutex mu;
  std::deque<FormulaNode> nodes;
  std::unordered_map<NodeKey, Formula, NodeKeyHash> interned;
};

Arena& arena() {
  static Arena a;
  return a;
}

Formula intern(Kind kind, Var var, int32_t sym, int32_t shift,
               std::vector<Formula> kids) {
  NodeKey key;
  key.kind = kind;
  key.var = var;
  key.sym = sym;
  key.shift = shift;
  key.kid_ids.reserve(kids.size());
  for (Formula k : kids) key.kid_ids.push_back(k->id);

  Arena& a = arena();
  std::lock_guard<std::mutex> lock(a.mu);
  auto it = a.interned.find(key);
  if (it != a.interned.end()) return it->second;

  FormulaNode n;
  n.kind = kind;
  n.var = var;
  n.sym = sym;
  n.shift = shift;
  n.kids = std::move(kids);
  n.id = static_cast<uint32_t>(a.nodes.size()) + 1;

  uint8_t fm = 0;
  uint32_t feat = 0;
  for (Formula k : n.kids) {
    fm |= k->free_mask;
    feat |= k->features;
  }
  switch (kind) {
    case Kind::Prop:
      feat |= F_NAKED_PROP;
      break;
    case Kind::Guard:
      break;
    case Kind::Pred:
      fm |= (var == Var::X) ? 1 : 2;
      feat |= F_FO_ATOM;
      break;
    case Kind::Less:
    case Kind::Eq:
      fm = 3;
      feat |= F_FO_ATOM;
      break;
    case Kind::Suc:
      fm = 3;
      feat |= F_FO_ATOM | F_SUC;
      break;
    case Kind::Next:
    case Kind::Prev:
      feat |= F_NEXT_PREV;
      break;
    case Kind::Ev:
    case Kind::PastEv:
      feat |= F_DIAMOND;
      break;
    case Kind::Until:
    case Kind::Since:
      feat |= F_UNTIL_SINCE;
      break;
    case Kind::Exists:
      fm &= static_cast<uint8_t>(~(var == Var::X ? 1 : 2));
      feat |= F_FO_ATOM | F_EXISTS;
      break;
    case Kind::Let:
      // kid0 is the definition body (formal parameter x), kid1 the scope.
      fm = n.kids[1]->free_mask;
      feat |= F_LET;
      break;
    default:
      break;
  }
  n.free_mask = fm;
  n.features = feat;

  a.nodes.push_back(std::move(n));
  Formula p = &a.nodes.back();
  a.interned.emplace(std::move(key), p);
  return p;
}

}  // namespace

int32_t intern_symbol(const std::string& name) {
  SymbolTable& t = symtab();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(name);
  if (it != t.ids.end()) return it->second;
  int32_t id = static_cast<int32_t>(t.names.size());
  t.names.push_back(name);
  t.ids.emplace(name, id);
  return id;
}

const std::string& symbol_name(int32_t sym) {
  SymbolTable& t = symtab();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(static_cast<size_t>(sym));
}

Formula mk_true() { return intern(Kind::True, Var::X, -1, 0, {}); }
Formula mk_false() { return intern(Kind::False, Var::X, -1, 0, {}); }

Formula mk_prop(int32_t sym, int32_t shift) {
  return intern(Kind::Prop, Var::X, sym, shift, {});
}
Formula mk_prop(const std::string& name) { return mk_prop(intern_symbol(name)); }

Formula mk_guard(int32_t shift) {
  if (shift >= 0) return mk_true();
  return intern(Kind::Guard, Var::X, -1, shift, {});
}

Formula mk_pred(int32_t sym, Var v) { return intern(Kind::Pred, v, sym, 0, {}); }
Formula mk_pred(const std::string& name, Var v) {
  return mk_pred(intern_symbol(name), v);
}

Formula mk_less(Var smaller) { return intern(Kind::Less, smaller, -1, 0, {}); }
Formula mk_eq() { return intern(Kind::Eq, Var::X, -1, 0, {}); }
Formula mk_suc(Var first) { return intern(Kind::Suc, first, -1, 0, {}); }

Formula mk_not(Formula f) {
  if (f->is(Kind::Not)) return f->kid(0);  // !!g == g
  if (f->is(Kind::True)) return mk_false();
  if (f->is(Kind::False)) return mk_true();
  return intern(Kind::Not, Var::X, -1, 0, {f});
}

Formula mk_and(Formula a, Formula b) {
  if (a->is(Kind::False) || b->is(Kind::False)) return mk_false();
  if (a->is(Kind::True)) return b;
  if (b->is(Kind::True)) return a;
  if (a == b) return a;
  return intern(Kind::And, Var::X, -1, 0, {a, b});
}

Formula mk_or(Formula a, Formula b) {
  if (a->is(Kind::True) || b->is(Kind::True)) return mk_true();
  if (a->is(Kind::False)) return b;
  if (b->is(Kind::False)) return a;
  if (a == b) return a;
  // F and F~ are reflexive: g | F g == F g.
  if ((b->is(Kind::Ev) || b->is(Kind::PastEv)) && b->kids[0] == a) return b;
  if ((a->is(Kind::Ev) || a->is(Kind::PastEv)) && a->kids[0] == b) return a;
  return intern(Kind::Or, Var::X, -1, 0, {a, b});
}

Formula mk_and(const std::vector<Formula>& fs) {
  Formula acc = mk_true();
  for (Formula f : fs) acc = mk_and(acc, f);
  return acc;
}

Formula mk_or(const std::vector<Formula>& fs) {
  Formula acc = mk_false();
  for (Formula f : fs) acc = mk_or(acc, f);
  return acc;
}

Formula mk_implies(Formula a, Formula b) { return mk_or(mk_not(a), b); }

Formula mk_iff(Formula a, Formula b) {
  if (a == b) return mk_true();
  return mk_and(mk_implies(a, b), mk_implies(b, a));
}

Formula mk_next(Formula f) { return intern(Kind::Next, Var::X, -1, 0, {f}); }
Formula mk_prev(Formula f) { return intern(Kind::Prev, Var::X, -1, 0, {f}); }
Formula mk_ev(Formula f) { return intern(Kind::Ev, Var::X, -1, 0, {f}); }
Formula mk_past_ev(Formula f) { return intern(Kind::PastEv, Var::X, -1, 0, {f}); }
Formula mk_globally(Formula f) { return mk_not(mk_ev(mk_not(f))); }
Formula mk_until(Formula a, Formula b) {
  return intern(Kind::Until, Var::X, -1, 0, {a, b});
}
Formula mk_since(Formula a, Formula b) {
  return intern(Kind::Since, Var::X, -1, 0, {a, b});
}
Formula mk_exists(Var v, Formula body) {
  return intern(Kind::Exists, v, -1, 0, {body});
}
Formula mk_forall(Var v, Formula body) {
  return mk_not(mk_exists(v, mk_not(body)));
}
Formula mk_let(int32_t sym, Formula body, Formula cont) {
  return intern(Kind::Let, Var::X, sym, 0, {body, cont});
}

namespace {

Formula swap_rec(Formula f, std::unordered_map<Formula, Formula>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Formula r = nullptr;
  switch (f->kind) {
    case Kind::Pred:
      r = mk_pred(f->sym, other(f->var));
      break;
    case Kind::Less:
      r = mk_less(other(f->var));
      break;
    case Kind::Suc:
      r = mk_suc(other(f->var));
      break;
    case Kind::Exists: {
      Formula b = swap_rec(f->kid(0), memo);
      r = mk_exists(other(f->var), b);
      break;
    }
    case Kind::Let: {
      // The definition body keeps its formal parameter; only the scope swaps.
      Formula cont = swap_rec(f->kid(1), memo);
      r = mk_let(f->sym, f->kid(0), cont);
      break;
    }
    default: {
      if (f->kids.empty()) {
        r = f;
      } else {
        std::vector<Formula> ks;
        ks.reserve(f->kids.size());
        bool changed = false;
        for (Formula k : f->kids) {
          Formula nk = swap_rec(k, memo);
          changed |= (nk != k);
          ks.push_back(nk);
        }
        r = changed ? intern(f->kind, f->var, f->sym, f->shift, std::move(ks)) : f;
      }
      break;
    }
  }
  memo.emplace(f, r);
  return r;
}

}  // namespace

Formula swap_vars(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  return swap_rec(f, memo);
}

namespace {

uint64_t sat_add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s < a ? UINT64_MAX : s;
}

struct Depths {
  int qdp = 0, odp = 0, xdepth = 0;
};

struct MetricsCache {
  std::unordered_map<Formula, uint64_t> tree;
  std::unordered_map<Formula, Depths> depths;
  uint64_t dag_size = 0;

  uint64_t tree_size(Formula f) {
    auto it = tree.find(f);
    if (it != tree.end()) return it->second;
    uint64_t s = 1;
    for (Formula k : f->kids) s = sat_add(s, tree_size(k));
    tree.emplace(f, s);
    return s;
  }

  Depths depth(Formula f) {
    auto it = depths.find(f);
    if (it != depths.end()) return it->second;
    dag_size++;
    Depths d;
    for (Formula k : f->kids) {
      Depths kd = depth(k);
      d.qdp = std::max(d.qdp, kd.qdp);
      d.odp = std::max(d.odp, kd.odp);
      d.xdepth = std::max(d.xdepth, kd.xdepth);
    }
    switch (f->kind) {
      case Kind::Exists:
        d.qdp++;
        break;
      case Kind::Next:
      case Kind::Prev:
        d.odp++;
        d.xdepth++;
        break;
      case Kind::Ev:
      case Kind::PastEv:
      case Kind::Until:
      case Kind::Since:
        d.odp++;
        break;
      default:
        break;
    }
    depths.emplace(f, d);
    return d;
  }
};

int prec(Kind k) {
  switch (k) {
    case Kind::Until:
    case Kind::Since:
      return 4;
    case Kind::And:
      return 3;
    case Kind::Or:
      return 2;
    default:
      return 5;  // atoms and unary
  }
}

void print(Formula f, std::string& out, int parent_prec) {
  int p = prec(f->kind);
  bool paren = p < parent_prec;
  if (paren) out += '(';
  switch (f->kind) {
    case Kind::True:
      out += "true";
      break;
    case Kind::False:
      out += "false";
      break;
    case Kind::Prop:
      if (f->shift != 0) {
        out += (f->shift > 0 ? "@next" : "@prev");
        out += std::to_string(f->shift > 0 ? f->shift : -f->shift);
        out += ':';
      }
      out += symbol_name(f->sym);
      break;
    case Kind::Guard:
      out += "@exists" + std::to_string(-f->shift);
      break;
    case Kind::Pred:
      out += symbol_name(f->sym);
      out += '(';
      out += var_name(f->var);
      out += ')';
      break;
    case Kind::Less:
      out += var_name(f->var);
      out += " < ";
      out += var_name(other(f->var));
      break;
    case Kind::Eq:
      out += "x = y";
      break;
    case Kind::Suc:
      out += "suc(";
      out += var_name(f->var);
      out += ',';
      out += var_name(other(f->var));
      out += ')';
      break;
    case Kind::Not:
      out += '!';
      print(f->kid(0), out, 5);
      break;
    case Kind::And:
      // the parser is left-associative: parenthesize nested conjunctions on
      // the right so the tree shape survives a round trip
      print(f->kid(0), out, 3);
      out += " & ";
      print(f->kid(1), out, 4);
      break;
    case Kind::Or:
      print(f->kid(0), out, 2);
      out += " | ";
      print(f->kid(1), out, 3);
      break;
    case Kind::Next:
      out += "X ";
      print(f->kid(0), out, 5);
      break;
    case Kind::Prev:
      out += "X~ ";
      print(f->kid(0), out, 5);
      break;
    case Kind::Ev:
      out += "F ";
      print(f->kid(0), out, 5);
      break;
    case Kind::PastEv:
      out += "F~ ";
      print(f->kid(0), out, 5);
      break;
    case Kind::Until:
      print(f->kid(0), out, 5);
      out += " U ";
      print(f->kid(1), out, 5);
      break;
    case Kind::Since:
      print(f->kid(0), out, 5);
      out += " S ";
      print(f->kid(1), out, 5);
      break;
    case Kind::Exists:
      out += "E ";
      out += var_name(f->var);
      out += ". ";
      print(f->kid(0), out, 5);
      break;
    case Kind::Let:
      out += "let ";
      out += symbol_name(f->sym);
      out += "(x) = ";
      print(f->kid(0), out, 0);
      out += " in ";
      print(f->kid(1), out, 0);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

FormulaMetrics measure(Formula f) {
  MetricsCache c;
  Depths d = c.depth(f);
  FormulaMetrics m;
  m.dag_size = c.dag_size;
  m.tree_size = c.tree_size(f);
  m.qdp = d.qdp;
  m.odp = d.odp;
  m.xdepth = d.xdepth;
  return m;
}

std::string to_string(Formula f) {
  std::string out;
  print(f, out, 0);
  return out;
}

}  // namespace tvmc
