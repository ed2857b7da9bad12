#include "tvmc/translate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "tvmc/oracle.hpp"
#include "tvmc/rewrite.hpp"

namespace tvmc {

// ---------------------------------------------------------------------------
// Window alphabet
// ---------------------------------------------------------------------------

int WindowAlphabet::letter_for(const std::vector<int>& cells21) const {
  for (size_t i = 0; i < cells.size(); i++) {
    if (cells[i] == cells21) return static_cast<int>(i);
  }
  throw std::logic_error("window letter not in the window alphabet");
}

WindowAlphabet make_window_alphabet(const Alphabet& base, int n) {
  WindowAlphabet wa;
  wa.base = base;
  wa.depth = n;
  std::vector<int32_t> props;
  for (int sh = -n; sh <= n; sh++) {
    for (int32_t p : base.props()) props.push_back(shifted_prop_symbol(p, sh));
  }
  for (int k = 1; k <= n; k++) props.push_back(exists_guard_symbol(-k));
  if (props.size() > 31)
    throw std::runtime_error("window alphabet would need too many propositions");

  int W = 2 * n + 1;
  std::vector<std::vector<int>> patterns;
  // lb = number of before-start cells on the left (position < depth)
  for (int lb = n; lb >= 0; lb--) {
    std::vector<std::vector<int>> acc = {std::vector<int>(static_cast<size_t>(lb), -1)};
    for (int c = lb; c < W; c++) {
      std::vector<std::vector<int>> next;
      for (const auto& pat : acc) {
        for (int l = 0; l < base.size(); l++) {
          auto p2 = pat;
          p2.push_back(l);
          next.push_back(std::move(p2));
        }
      }
      acc.swap(next);
    }
    for (auto& p : acc) patterns.push_back(std::move(p));
  }

  std::vector<uint32_t> letter_bits;
  for (const auto& pat : patterns) {
    uint32_t bits = 0;
    size_t bit = 0;
    for (int sh = -n; sh <= n; sh++) {
      int cell = pat[static_cast<size_t>(sh + n)];
      for (int32_t p : base.props()) {
        if (cell >= 0 && base.holds(cell, p)) bits |= 1u << bit;
        bit++;
      }
    }
    for (int k = 1; k <= n; k++) {
      if (pat[static_cast<size_t>(n - k)] != -1) bits |= 1u << bit;
      bit++;
    }
    letter_bits.push_back(bits);
  }
  wa.window = Alphabet(props, letter_bits, false);
  wa.cells = std::move(patterns);
  for (const auto& c : wa.cells) wa.center_letter.push_back(c[static_cast<size_t>(n)]);
  return wa;
}

Formula shifted_atoms_to_window_props(Formula f) {
  switch (f->kind) {
    case Kind::Prop:
      return mk_prop(shifted_prop_symbol(f->sym, f->shift));
    case Kind::Guard:
      return mk_prop(exists_guard_symbol(f->shift));
    case Kind::Not:
      return mk_not(shifted_atoms_to_window_props(f->kid(0)));
    case Kind::And:
      return mk_and(shifted_atoms_to_window_props(f->kid(0)),
                    shifted_atoms_to_window_props(f->kid(1)));
    case Kind::Or:
      return mk_or(shifted_atoms_to_window_props(f->kid(0)),
                   shifted_atoms_to_window_props(f->kid(1)));
    case Kind::Ev:
      return mk_ev(shifted_atoms_to_window_props(f->kid(0)));
    case Kind::PastEv:
      return mk_past_ev(shifted_atoms_to_window_props(f->kid(0)));
    case Kind::True:
    case Kind::False:
      return f;
    default:
      throw std::logic_error("unexpected node in pushed normal form: " +
                             to_string(f));
  }
}

LassoWord window_encode(const LassoWord& u, const WindowAlphabet& wa) {
  int n = wa.depth;
  int m = static_cast<int>(u.prefix.size());
  int r = static_cast<int>(u.period.size());
  auto window_at = [&](int i) {
    std::vector<int> cells;
    for (int sh = -n; sh <= n; sh++) {
      long long j = i + sh;
      cells.push_back(j < 0 ? -1 : u.letter_at(static_cast<size_t>(j)));
    }
    return wa.letter_for(cells);
  };
  LassoWord out;
  for (int i = 0; i < m + n; i++) out.prefix.push_back(window_at(i));
  for (int i = m + n; i < m + n + r; i++) out.period.push_back(window_at(i));
  return out;
}


namespace {

// Temporal formulas over one-variable predicate applications read the
// predicates positionally; turn P(x) into the proposition P.
Formula positionalize(Formula f) {
  switch (f->kind) {
    case Kind::Pred:
      return mk_prop(f->sym);
    case Kind::Less:
    case Kind::Eq:
    case Kind::Suc:
    case Kind::Exists:
      throw std::invalid_argument("not a positional temporal formula: " +
                                  to_string(f));
    default: {
      if (f->kids.empty()) return f;
      std::vector<Formula> ks;
      for (Formula k : f->kids) ks.push_back(positionalize(k));
      switch (f->kind) {
        case Kind::Not: return mk_not(ks[0]);
        case Kind::And: return mk_and(ks[0], ks[1]);
        case Kind::Or: return mk_or(ks[0], ks[1]);
        case Kind::Next: return mk_next(ks[0]);
        case Kind::Prev: return mk_prev(ks[0]);
        case Kind::Ev: return mk_ev(ks[0]);
        case Kind::PastEv: return mk_past_ev(ks[0]);
        case Kind::Until: return mk_until(ks[0], ks[1]);
        case Kind::Since: return mk_since(ks[0], ks[1]);
        default:
          throw std::logic_error("positionalize: unexpected node");
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Translation I: closure automaton
// ---------------------------------------------------------------------------

namespace {

struct ClosureSpace {
  std::vector<Formula> pos;                    // positives, children first
  std::unordered_map<Formula, int> index;      // positive -> slot
  std::vector<int> diamonds;                   // slots whose kind is Ev/PastEv
  std::vector<int> ev_slots;                   // Ev slots, acceptance order

  explicit ClosureSpace(Formula f, const Alphabet& alpha) {
    pos = closure_positives(f);
    // alphabet propositions not mentioned by the formula complete the types
    for (int32_t p : alpha.props()) {
      Formula at = mk_prop(p);
      bool present = false;
      for (Formula q : pos) present |= (q == at);
      if (!present) pos.push_back(at);
    }
    for (size_t i = 0; i < pos.size(); i++) {
      index.emplace(pos[i], static_cast<int>(i));
      if (pos[i]->is(Kind::Ev) || pos[i]->is(Kind::PastEv))
        diamonds.push_back(static_cast<int>(i));
      if (pos[i]->is(Kind::Ev)) ev_slots.push_back(static_cast<int>(i));
    }
  }

  bool value(Formula f, const std::vector<char>& bits) const {
    if (f->is(Kind::Not)) return !value(f->kid(0), bits);
    return bits[static_cast<size_t>(index.at(f))] != 0;
  }
};

}  // namespace

ClosureAutomaton utl_closure_automaton_full(Formula tldd, const Alphabet& alpha) {
  Formula f = expand_lets(tldd);
  if (f->features & F_FO_ATOM) f = positionalize(f);
  if (f->features & (F_NEXT_PREV | F_UNTIL_SINCE | F_FO_ATOM))
    throw std::invalid_argument("closure automaton needs a TL[F,F~] formula");
  ClosureSpace cs(f, alpha);

  GeneralizedBuchi a;
  a.nletters = alpha.size();
  a.num_acc = static_cast<int>(cs.ev_slots.size());
  std::vector<std::vector<char>> types;  // per state: value per positive

  size_t d = cs.diamonds.size();
  if (d > 20) throw std::runtime_error("closure type space too large");
  for (int letter = 0; letter < alpha.size(); letter++) {
    for (size_t mask = 0; mask < (size_t{1} << d); mask++) {
      std::vector<char> bits(cs.pos.size(), 0);
      for (size_t i = 0; i < d; i++)
        bits[static_cast<size_t>(cs.diamonds[i])] = (mask >> i) & 1;
      bool ok = true;
      for (size_t i = 0; i < cs.pos.size() && ok; i++) {
        Formula p = cs.pos[i];
        switch (p->kind) {
          case Kind::True:
            bits[i] = 1;
            break;
          case Kind::False:
            bits[i] = 0;
            break;
          case Kind::Prop:
            if (p->shift != 0)
              throw std::logic_error("shifted atom survived window rewriting");
            bits[i] = alpha.holds(letter, p->sym);
            break;
          case Kind::And:
            bits[i] = cs.value(p->kid(0), bits) && cs.value(p->kid(1), bits);
            break;
          case Kind::Or:
            bits[i] = cs.value(p->kid(0), bits) || cs.value(p->kid(1), bits);
            break;
          case Kind::Ev:
          case Kind::PastEv:
            // psi in s implies F psi and F~ psi in s (both are reflexive)
            if (cs.value(p->kid(0), bits) && !bits[i]) ok = false;
            break;
          default:
            throw std::logic_error("closure automaton: unexpected " + to_string(p));
        }
      }
      if (!ok) continue;
      uint32_t acc = 0;
      for (size_t e = 0; e < cs.ev_slots.size(); e++) {
        Formula ev = cs.pos[static_cast<size_t>(cs.ev_slots[e])];
        // F_{F psi} = { s : psi in s or F psi not in s }
        if (cs.value(ev->kid(0), bits) || !bits[static_cast<size_t>(cs.ev_slots[e])])
          acc |= 1u << e;
      }
      int id = a.add_state(letter, acc);
      (void)id;
      types.push_back(bits);
      std::string nm = alpha.letter_name(letter);
      for (size_t i = 0; i < d; i++) {
        if (bits[static_cast<size_t>(cs.diamonds[i])]) {
          nm += " " + to_string(cs.pos[static_cast<size_t>(cs.diamonds[i])]);
        }
      }
      a.names.push_back(nm);
    }
  }

  // initial: phi in s, and F~ psi in s iff psi in s
  for (int s = 0; s < a.num_states(); s++) {
    const auto& bits = types[static_cast<size_t>(s)];
    if (!cs.value(f, bits)) continue;
    bool ok = true;
    for (int slot : cs.diamonds) {
      Formula p = cs.pos[static_cast<size_t>(slot)];
      if (p->is(Kind::PastEv)) {
        if ((bits[static_cast<size_t>(slot)] != 0) != cs.value(p->kid(0), bits))
          ok = false;
      }
    }
    if (ok) a.initial.push_back(s);
  }

  // transitions
  for (int s = 0; s < a.num_states(); s++) {
    const auto& sb = types[static_cast<size_t>(s)];
    for (int t = 0; t < a.num_states(); t++) {
      const auto& tb = types[static_cast<size_t>(t)];
      bool ok = true;
      for (int slot : cs.diamonds) {
        Formula p = cs.pos[static_cast<size_t>(slot)];
        bool vs = sb[static_cast<size_t>(slot)], vt = tb[static_cast<size_t>(slot)];
        if (p->is(Kind::PastEv)) {
          bool want = cs.value(p->kid(0), tb) || vs;
          if (vt != want) {
            ok = false;
            break;
          }
        } else {  // Ev
          if (vs && !cs.value(p->kid(0), sb) && !vt) {
            ok = false;
            break;
          }
          if (!vs && vt) {
            ok = false;
            break;
          }
        }
      }
      if (ok) a.succ[static_cast<size_t>(s)].push_back(t);
    }
  }
  ClosureAutomaton out;
  out.a = std::move(a);
  out.type_bits = std::move(types);
  out.positives = cs.pos;
  out.temporal_slots = cs.diamonds;
  return out;
}

GeneralizedBuchi utl_closure_automaton(Formula tldd, const Alphabet& alpha) {
  return utl_closure_automaton_full(tldd, alpha).a;
}

std::string check_closure_structure(const ClosureAutomaton& ca, int phi_size,
                                    int alphabet_size) {
  const GeneralizedBuchi& a = ca.a;
  SccDag dag = scc_decomposition(a);
  // (i) same component iff the temporal-headed formulas agree
  auto sim = [&](int s, int t) {
    for (int slot : ca.temporal_slots) {
      if (ca.type_bits[static_cast<size_t>(s)][static_cast<size_t>(slot)] !=
          ca.type_bits[static_cast<size_t>(t)][static_cast<size_t>(slot)])
        return false;
    }
    return true;
  };
  for (int s = 0; s < a.num_states(); s++) {
    for (int t = 0; t < a.num_states(); t++) {
      bool same = dag.comp[static_cast<size_t>(s)] == dag.comp[static_cast<size_t>(t)];
      if (same != sim(s, t))
        return "component structure disagrees with the temporal-agreement relation";
    }
  }
  // (ii) component size
  for (const auto& m : dag.members) {
    if (static_cast<int>(m.size()) > alphabet_size)
      return "component larger than the alphabet";
  }
  // (iii) dag depth and outdegree
  std::vector<int> depth(dag.members.size(), 1);
  for (int c = 0; c < dag.num_components(); c++) {
    // reverse topological ids: edges lead to smaller ids
    for (int e : dag.edges[static_cast<size_t>(c)])
      depth[static_cast<size_t>(c)] =
          std::max(depth[static_cast<size_t>(c)], depth[static_cast<size_t>(e)] + 1);
    if (depth[static_cast<size_t>(c)] > phi_size) return "component dag too deep";
    if (phi_size < 31 &&
        dag.edges[static_cast<size_t>(c)].size() > (size_t{1} << phi_size))
      return "component outdegree too large";
  }
  // (iv) determinism inside a component
  for (int s = 0; s < a.num_states(); s++) {
    std::set<int> seen;
    for (int t : a.succ[static_cast<size_t>(s)]) {
      if (dag.comp[static_cast<size_t>(t)] != dag.comp[static_cast<size_t>(s)]) continue;
      if (!seen.insert(a.label[static_cast<size_t>(t)]).second)
        return "nondeterminism inside a component";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// SCC path family
// ---------------------------------------------------------------------------

AutomatonFamily scc_path_family(const GeneralizedBuchi& a, size_t max_members) {
  SccDag dag = scc_decomposition(a);
  std::set<int> roots;
  for (int s : a.initial) roots.insert(dag.comp[static_cast<size_t>(s)]);

  AutomatonFamily fam;
  std::vector<int> path;

  auto emit = [&]() {
    if (fam.members.size() >= max_members)
      throw std::runtime_error("family enumeration exceeded the member budget");
    int last = path.back();
    GeneralizedBuchi m;
    m.nletters = a.nletters;
    m.num_acc = a.num_acc;
    std::map<int, int> remap;
    std::map<int, int> layer;  // state -> index in path
    for (size_t i = 0; i < path.size(); i++) {
      for (int v : dag.members[static_cast<size_t>(path[i])]) {
        uint32_t bits =
            (path[i] == last) ? a.acc_bits[static_cast<size_t>(v)] : 0u;
        remap[v] = m.add_state(a.label[static_cast<size_t>(v)], bits);
        if (!a.names.empty())
          m.names.push_back(a.names[static_cast<size_t>(v)]);
        layer[v] = static_cast<int>(i);
      }
    }
    for (const auto& [v, nv] : remap) {
      for (int w : a.succ[static_cast<size_t>(v)]) {
        auto it = remap.find(w);
        if (it == remap.end()) continue;
        int lv = layer[v], lw = layer[w];
        if (lw != lv && lw != lv + 1) continue;  // consecutive components only
        m.succ[static_cast<size_t>(nv)].push_back(it->second);
      }
    }
    for (int s : a.initial) {
      if (dag.comp[static_cast<size_t>(s)] == path.front())
        m.initial.push_back(remap[s]);
    }
    std::string idx;
    for (size_t i = 0; i < path.size(); i++) {
      if (i) idx += '.';
      idx += std::to_string(path[i]);
    }
    fam.members.push_back(std::move(m));
    fam.indices.push_back(idx);
  };

  std::function<void(int)> dfs = [&](int c) {
    path.push_back(c);
    emit();
    for (int e : dag.edges[static_cast<size_t>(c)]) dfs(e);
    path.pop_back();
  };
  for (int c : roots) dfs(c);
  return fam;
}

// ---------------------------------------------------------------------------
// Delay composition
// ---------------------------------------------------------------------------

GeneralizedBuchi nextprev_compose(const GeneralizedBuchi& a,
                                  const WindowAlphabet& wa) {
  int n = wa.depth;
  GeneralizedBuchi c;
  c.nletters = wa.base.size();
  c.num_acc = a.num_acc;
  if (n == 0) {
    c = a;
    c.nletters = wa.base.size();
    for (auto& l : c.label) l = wa.center_letter[static_cast<size_t>(l)];
    return c;
  }

  // state encoding: warmup (k, buffer) for k in [1, n], then original states
  std::map<std::vector<int>, int> warm_idx;  // buffer -> id
  std::vector<int> orig_idx(static_cast<size_t>(a.num_states()), -1);
  std::deque<std::pair<int, std::vector<int>>> work;  // (-1, buf) or (state, {})

  auto add_warm = [&](const std::vector<int>& buf) {
    auto it = warm_idx.find(buf);
    if (it != warm_idx.end()) return it->second;
    int id = c.add_state(buf.back(), 0u);
    c.names.push_back("warmup" + std::to_string(buf.size()));
    warm_idx.emplace(buf, id);
    work.emplace_back(-1, buf);
    return id;
  };
  auto add_orig = [&](int s) {
    if (orig_idx[static_cast<size_t>(s)] != -1) return orig_idx[static_cast<size_t>(s)];
    const auto& cells = wa.cells[static_cast<size_t>(a.label[static_cast<size_t>(s)])];
    int id = c.add_state(cells[static_cast<size_t>(2 * n)],
                         a.acc_bits[static_cast<size_t>(s)]);
    c.names.push_back(a.names.empty() ? std::to_string(s)
                                      : a.names[static_cast<size_t>(s)]);
    orig_idx[static_cast<size_t>(s)] = id;
    work.emplace_back(s, std::vector<int>{});
    return id;
  };

  for (int l = 0; l < wa.base.size(); l++) {
    int id = add_warm({l});
    c.initial.push_back(id);
  }

  while (!work.empty()) {
    auto [s, buf] = work.front();
    work.pop_front();
    if (s == -1) {
      int id = warm_idx[buf];
      if (static_cast<int>(buf.size()) < n) {
        for (int l = 0; l < wa.base.size(); l++) {
          auto b2 = buf;
          b2.push_back(l);
          int tgt = add_warm(b2);
          c.succ[static_cast<size_t>(id)].push_back(tgt);
        }
      } else {
        // hand over to the automaton at its position-0 window
        for (int a0 : a.initial) {
          const auto& cells =
              wa.cells[static_cast<size_t>(a.label[static_cast<size_t>(a0)])];
          bool ok = true;
          for (int j = 0; j < n && ok; j++)
            ok = cells[static_cast<size_t>(j)] == -1;
          for (int j = 0; j < n && ok; j++)
            ok = cells[static_cast<size_t>(n + j)] == buf[static_cast<size_t>(j)];
          if (!ok) continue;
          int tgt = add_orig(a0);
          c.succ[static_cast<size_t>(id)].push_back(tgt);
        }
      }
    } else {
      int id = orig_idx[static_cast<size_t>(s)];
      const auto& cells = wa.cells[static_cast<size_t>(a.label[static_cast<size_t>(s)])];
      for (int t : a.succ[static_cast<size_t>(s)]) {
        const auto& tc = wa.cells[static_cast<size_t>(a.label[static_cast<size_t>(t)])];
        bool ok = true;
        for (int j = 0; j + 1 <= 2 * n && ok; j++)
          ok = tc[static_cast<size_t>(j)] == cells[static_cast<size_t>(j + 1)];
        if (!ok) continue;
        int tgt = add_orig(t);
        c.succ[static_cast<size_t>(id)].push_back(tgt);
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// UTL / FO2 pipelines
// ---------------------------------------------------------------------------

AutomatonFamily utl_to_family(Formula utl, const Alphabet& alpha) {
  Formula f = expand_lets(utl);
  if (f->features & F_FO_ATOM) f = positionalize(f);
  f = simplify_at_origin(f);
  PushedForm pushed = push_next_prev(f);
  Formula g = simplify_at_origin(pushed.formula);
  {
    std::set<Formula> seen;
    int n2 = 0;
    // depth may shrink under the origin rules; recompute
    std::function<void(Formula)> walk = [&](Formula h) {
      if (!seen.insert(h).second) return;
      if (h->is(Kind::Prop) || h->is(Kind::Guard))
        n2 = std::max(n2, h->shift < 0 ? -h->shift : h->shift);
      for (Formula k : h->kids) walk(k);
    };
    walk(g);
    pushed.depth = n2;
  }

  if (pushed.depth == 0) {
    GeneralizedBuchi a = utl_closure_automaton(g, alpha);
    return scc_path_family(a);
  }
  WindowAlphabet wa = make_window_alphabet(alpha, pushed.depth);
  Formula over_windows = shifted_atoms_to_window_props(g);
  GeneralizedBuchi a = utl_closure_automaton(over_windows, wa.window);
  AutomatonFamily fam = scc_path_family(a);
  AutomatonFamily out;
  for (size_t i = 0; i < fam.members.size(); i++) {
    out.members.push_back(nextprev_compose(fam.members[i], wa));
    out.indices.push_back(fam.indices[i]);
  }
  return out;
}

AutomatonFamily fo2_to_family(Formula fo2, const Alphabet& alpha) {
  Formula utl = fo2_to_utl(fo2);
  return utl_to_family(utl, alpha);
}

// ---------------------------------------------------------------------------
// Translation II: pre-type automaton
// ---------------------------------------------------------------------------

namespace {

Formula canon_x(Formula f) { return (f->free_mask == 2) ? swap_vars(f) : f; }

enum class Rel3 : uint8_t { Past, Here, Future };

struct PretypeSpace {
  const Alphabet& alpha;
  Formula root;
  std::vector<Formula> cl;  // canonical, children-first
  std::unordered_map<Formula, int> idx;
  std::vector<int> exists_slots;
  std::unordered_map<Formula, int> exists_rank;  // Exists node -> bit position

  explicit PretypeSpace(Formula f, const Alphabet& a) : alpha(a), root(f) {
    collect(f);
    for (int32_t p : alpha.props()) add(mk_pred(p, Var::X));
    for (size_t i = 0; i < cl.size(); i++) {
      if (cl[i]->is(Kind::Exists)) {
        exists_rank.emplace(cl[i], static_cast<int>(exists_slots.size()));
        exists_slots.push_back(static_cast<int>(i));
      }
    }
  }

  void add(Formula f) {
    if (idx.count(f)) return;
    idx.emplace(f, static_cast<int>(cl.size()));
    cl.push_back(f);
  }

  void collect(Formula f) {
    // visit children first, then the node if it has at most one free var
    for (Formula k : f->kids) collect(k);
    if (f->free_count() <= 1) {
      Formula c = canon_x(f);
      if (!idx.count(c)) {
        if (c != f) collect_sub_only(c);
        add(c);
      }
    }
  }
  void collect_sub_only(Formula f) {
    for (Formula k : f->kids) collect_sub_only(k);
    if (f->free_count() <= 1 && !idx.count(f)) {
      // canonical subformulas of a swapped node
      Formula c = canon_x(f);
      if (c != f) collect_sub_only(c);
      if (!idx.count(c)) add(c);
    }
  }

  int num_exists() const { return static_cast<int>(exists_slots.size()); }

  // Pre-type id packing: letter * 2^E + bits
  int pt_id(int letter, uint32_t ebits) const {
    return letter * (1 << num_exists()) + static_cast<int>(ebits);
  }
  int pt_letter(int pt) const { return pt >> num_exists(); }
  uint32_t pt_ebits(int pt) const {
    return static_cast<uint32_t>(pt) & ((1u << num_exists()) - 1);
  }
  int num_pretypes() const { return alpha.size() * (1 << num_exists()); }

  // Full valuation over cl from a pre-type id.
  std::vector<char> derive(int pt) const {
    std::vector<char> bits(cl.size(), 0);
    int letter = pt_letter(pt);
    uint32_t eb = pt_ebits(pt);
    for (size_t i = 0; i < cl.size(); i++) {
      Formula f = cl[i];
      switch (f->kind) {
        case Kind::True: bits[i] = 1; break;
        case Kind::False: bits[i] = 0; break;
        case Kind::Pred: bits[i] = alpha.holds(letter, f->sym); break;
        case Kind::Prop: bits[i] = alpha.holds(letter, f->sym); break;
        case Kind::Not: bits[i] = !value(f->kid(0), bits); break;
        case Kind::And:
          bits[i] = value(f->kid(0), bits) && value(f->kid(1), bits);
          break;
        case Kind::Or:
          bits[i] = value(f->kid(0), bits) || value(f->kid(1), bits);
          break;
        case Kind::Exists:
          bits[i] = (eb >> exists_rank.at(f)) & 1;
          break;
        default:
          throw std::logic_error("pretype space: unexpected " + to_string(f));
      }
    }
    return bits;
  }

  bool value(Formula f, const std::vector<char>& bits) const {
    if (f->is(Kind::Not)) return !value(f->kid(0), bits);
    return bits[static_cast<size_t>(idx.at(canon_x(f)))] != 0;
  }

  bool eval2(Formula t, const std::vector<char>& xv, const std::vector<char>& yv,
             Rel3 rel) const {
    if (t->free_count() <= 1) {
      if (t->free_mask == 2) return yv[static_cast<size_t>(idx.at(canon_x(t)))] != 0;
      return xv[static_cast<size_t>(idx.at(t))] != 0;
    }
    switch (t->kind) {
      case Kind::Not: return !eval2(t->kid(0), xv, yv, rel);
      case Kind::And:
        return eval2(t->kid(0), xv, yv, rel) && eval2(t->kid(1), xv, yv, rel);
      case Kind::Or:
        return eval2(t->kid(0), xv, yv, rel) || eval2(t->kid(1), xv, yv, rel);
      case Kind::Eq: return rel == Rel3::Here;
      case Kind::Less:
        return (t->var == Var::X) ? rel == Rel3::Future : rel == Rel3::Past;
      default:
        throw std::logic_error("order-only formula expected, got " + to_string(t));
    }
  }

  // The unique boolean-and-witness-consistent valuation given the claimed
  // past set, future promise set and current letter.
  std::vector<char> compute_tau(uint32_t sset, uint32_t tset, int letter,
                                const std::vector<std::vector<char>>& full) const {
    std::vector<char> bits(cl.size(), 0);
    for (size_t i = 0; i < cl.size(); i++) {
      Formula f = cl[i];
      switch (f->kind) {
        case Kind::True: bits[i] = 1; break;
        case Kind::False: bits[i] = 0; break;
        case Kind::Pred:
        case Kind::Prop:
          bits[i] = alpha.holds(letter, f->sym);
          break;
        case Kind::Not: bits[i] = !value(f->kid(0), bits); break;
        case Kind::And:
          bits[i] = value(f->kid(0), bits) && value(f->kid(1), bits);
          break;
        case Kind::Or:
          bits[i] = value(f->kid(0), bits) || value(f->kid(1), bits);
          break;
        case Kind::Exists: {
          Formula theta = f->kid(0);
          uint8_t qbit = (f->var == Var::X) ? 1 : 2;
          bool v = false;
          if (!(theta->free_mask & qbit)) {
            v = value(theta, bits);
          } else if (theta->free_count() <= 1) {
            // witness anywhere: here, in the past, or promised
            int ti = idx.at(canon_x(theta));
            v = bits[static_cast<size_t>(ti)] != 0;
            for (int pt = 0; pt < num_pretypes() && !v; pt++) {
              if (((sset >> pt) & 1) || ((tset >> pt) & 1))
                v = full[static_cast<size_t>(pt)][static_cast<size_t>(ti)] != 0;
            }
          } else {
            v = eval2(theta, bits, bits, Rel3::Here);
            for (int pt = 0; pt < num_pretypes() && !v; pt++) {
              if ((sset >> pt) & 1)
                v = eval2(theta, bits, full[static_cast<size_t>(pt)], Rel3::Past);
            }
            for (int pt = 0; pt < num_pretypes() && !v; pt++) {
              if ((tset >> pt) & 1)
                v = eval2(theta, bits, full[static_cast<size_t>(pt)], Rel3::Future);
            }
          }
          bits[i] = v;
          break;
        }
        default:
          throw std::logic_error("pretype space: unexpected " + to_string(f));
      }
    }
    return bits;
  }

  int pt_of(const std::vector<char>& bits, int letter) const {
    uint32_t eb = 0;
    for (size_t e = 0; e < exists_slots.size(); e++) {
      if (bits[static_cast<size_t>(exists_slots[e])]) eb |= 1u << e;
    }
    return pt_id(letter, eb);
  }
};

}  // namespace

GeneralizedBuchi fo2lt_pretype_automaton(Formula f, const Alphabet& unary,
                                         size_t max_pretypes) {
  Formula g = canon_x(expand_lets(f));
  if (g->features & F_SUC)
    throw std::invalid_argument("pre-type automaton needs an order-only formula");
  if (g->features & (F_UNTIL_SINCE | F_NEXT_PREV | F_DIAMOND))
    throw std::invalid_argument("pre-type automaton needs a first-order formula");
  if (!unary.is_unary())
    throw std::invalid_argument("pre-type automaton needs a unary alphabet");
  PretypeSpace ps(g, unary);
  int P = ps.num_pretypes();
  if (P > static_cast<int>(max_pretypes))
    throw BudgetExceeded("pre-type universe too large: " + std::to_string(P));

  std::vector<std::vector<char>> full;
  for (int pt = 0; pt < P; pt++) full.push_back(ps.derive(pt));

  GeneralizedBuchi a;
  a.nletters = unary.size();

  struct St {
    uint32_t s, t;
    int pt;
  };
  std::map<std::tuple<uint32_t, int, uint32_t>, int> idx;
  std::vector<St> states;
  std::deque<int> work;
  uint32_t promises = 0;

  auto add = [&](uint32_t sset, int pt, uint32_t tset) {
    auto key = std::make_tuple(sset, pt, tset);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int id = a.add_state(ps.pt_letter(pt), 0u);
    a.names.push_back("s=" + std::to_string(sset) + " pt=" + std::to_string(pt) +
                      " t=" + std::to_string(tset));
    idx.emplace(key, id);
    states.push_back({sset, tset, pt});
    work.push_back(id);
    return id;
  };

  // initial states: empty past, formula in the current pre-type
  int root_slot = ps.idx.at(g);
  for (int letter = 0; letter < unary.size(); letter++) {
    for (uint32_t tset = 0; tset < (1u << P); tset++) {
      std::vector<char> tau = ps.compute_tau(0, tset, letter, full);
      if (!tau[static_cast<size_t>(root_slot)]) continue;
      int pt = ps.pt_of(tau, letter);
      int id = add(0, pt, tset);
      a.initial.push_back(id);
      promises |= tset;
    }
  }
  std::sort(a.initial.begin(), a.initial.end());
  a.initial.erase(std::unique(a.initial.begin(), a.initial.end()), a.initial.end());

  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    St st = states[static_cast<size_t>(id)];
    uint32_t s2 = st.s | (1u << st.pt);
    for (int ptc = 0; ptc < P; ptc++) {
      if (!((st.t >> ptc) & 1)) continue;
      for (int drop = 0; drop < 2; drop++) {
        uint32_t t2 = drop ? (st.t & ~(1u << ptc)) : st.t;
        std::vector<char> tau = ps.compute_tau(s2, t2, ps.pt_letter(ptc), full);
        if (ps.pt_of(tau, ps.pt_letter(ptc)) != ptc) continue;
        int tgt = add(s2, ptc, t2);
        a.succ[static_cast<size_t>(id)].push_back(tgt);
      }
    }
  }

  // acceptance: one set per promised pre-type
  std::vector<int> promise_list;
  for (int pt = 0; pt < P; pt++) {
    if ((promises >> pt) & 1) promise_list.push_back(pt);
  }
  if (promise_list.size() > 31)
    throw BudgetExceeded("too many promise sets");
  a.num_acc = static_cast<int>(promise_list.size());
  for (int id = 0; id < a.num_states(); id++) {
    const St& st = states[static_cast<size_t>(id)];
    uint32_t bits = 0;
    for (size_t i = 0; i < promise_list.size(); i++) {
      int pt = promise_list[i];
      if (st.pt == pt || !((st.t >> pt) & 1)) bits |= 1u << i;
    }
    a.acc_bits[static_cast<size_t>(id)] = bits;
  }
  return a;
}

namespace {

// unary re-encoding of an arbitrary alphabet: one fresh proposition per letter
struct UnaryView {
  Alphabet unary;
  std::vector<int32_t> letter_syms;
};

UnaryView make_unary_view(const Alphabet& alpha) {
  UnaryView v;
  std::vector<std::string> names;
  for (int l = 0; l < alpha.size(); l++)
    names.push_back("#u" + std::to_string(l) + alpha.letter_name(l));
  v.unary = Alphabet::unary(names);
  for (const auto& n : names) v.letter_syms.push_back(intern_symbol(n));
  return v;
}

Formula to_unary_preds(Formula f, const Alphabet& alpha, const UnaryView& v) {
  switch (f->kind) {
    case Kind::Pred: {
      Formula acc = mk_false();
      for (int l = 0; l < alpha.size(); l++) {
        if (alpha.holds(l, f->sym))
          acc = mk_or(acc, mk_pred(v.letter_syms[static_cast<size_t>(l)], f->var));
      }
      return acc;
    }
    case Kind::Prop: {
      Formula acc = mk_false();
      for (int l = 0; l < alpha.size(); l++) {
        if (alpha.holds(l, f->sym))
          acc = mk_or(acc, mk_pred(v.letter_syms[static_cast<size_t>(l)], Var::X));
      }
      return acc;
    }
    case Kind::Not:
      return mk_not(to_unary_preds(f->kid(0), alpha, v));
    case Kind::And:
      return mk_and(to_unary_preds(f->kid(0), alpha, v),
                    to_unary_preds(f->kid(1), alpha, v));
    case Kind::Or:
      return mk_or(to_unary_preds(f->kid(0), alpha, v),
                   to_unary_preds(f->kid(1), alpha, v));
    case Kind::Exists:
      return mk_exists(f->var, to_unary_preds(f->kid(0), alpha, v));
    default:
      return f;  // order atoms, constants
  }
}

}  // namespace

AutomatonFamily fo2lt_family(Formula f, const Alphabet& alpha,
                             size_t max_pretypes) {
  Formula g = expand_lets(f);
  GeneralizedBuchi a;
  if (alpha.is_unary()) {
    a = fo2lt_pretype_automaton(g, alpha, max_pretypes);
  } else {
    UnaryView v = make_unary_view(alpha);
    Formula h = to_unary_preds(g, alpha, v);
    a = fo2lt_pretype_automaton(h, v.unary, max_pretypes);
    a.nletters = alpha.size();  // letter ids align by construction
  }
  return scc_path_family(trim(a));
}

// ---------------------------------------------------------------------------
// LTL tableau
// ---------------------------------------------------------------------------

GeneralizedBuchi ltl_to_unambiguous_gba(Formula f, const Alphabet& alpha) {
  Formula g = expand_lets(f);
  if (g->features & F_FO_ATOM) g = positionalize(g);
  ClosureSpace cs(g, alpha);

  // free slots: temporal-headed positives
  std::vector<int> frees;
  for (size_t i = 0; i < cs.pos.size(); i++) {
    switch (cs.pos[i]->kind) {
      case Kind::Ev:
      case Kind::PastEv:
      case Kind::Until:
      case Kind::Since:
      case Kind::Next:
      case Kind::Prev:
        frees.push_back(static_cast<int>(i));
        break;
      default:
        break;
    }
  }
  if (frees.size() > 20) throw std::runtime_error("tableau type space too large");

  GeneralizedBuchi a;
  a.nletters = alpha.size();
  std::vector<std::vector<char>> types;

  for (int letter = 0; letter < alpha.size(); letter++) {
    for (size_t mask = 0; mask < (size_t{1} << frees.size()); mask++) {
      std::vector<char> bits(cs.pos.size(), 0);
      for (size_t i = 0; i < frees.size(); i++)
        bits[static_cast<size_t>(frees[i])] = (mask >> i) & 1;
      bool ok = true;
      for (size_t i = 0; i < cs.pos.size() && ok; i++) {
        Formula p = cs.pos[i];
        switch (p->kind) {
          case Kind::True: bits[i] = 1; break;
          case Kind::False: bits[i] = 0; break;
          case Kind::Prop: bits[i] = alpha.holds(letter, p->sym); break;
          case Kind::And:
            bits[i] = cs.value(p->kid(0), bits) && cs.value(p->kid(1), bits);
            break;
          case Kind::Or:
            bits[i] = cs.value(p->kid(0), bits) || cs.value(p->kid(1), bits);
            break;
          case Kind::Ev:
          case Kind::PastEv:
            if (cs.value(p->kid(0), bits) && !bits[i]) ok = false;
            break;
          case Kind::Until:
          case Kind::Since: {
            bool va = cs.value(p->kid(0), bits), vb = cs.value(p->kid(1), bits);
            if (vb && !bits[i]) ok = false;
            if (!va && !vb && bits[i]) ok = false;
            break;
          }
          case Kind::Next:
          case Kind::Prev:
            break;
          default:
            throw std::logic_error("tableau: unexpected " + to_string(p));
        }
      }
      if (!ok) continue;
      types.push_back(bits);
      a.add_state(letter, 0u);
    }
  }

  // acceptance: one set per Until and per Ev
  std::vector<int> acc_slots;
  for (size_t i = 0; i < cs.pos.size(); i++) {
    if (cs.pos[i]->is(Kind::Until) || cs.pos[i]->is(Kind::Ev))
      acc_slots.push_back(static_cast<int>(i));
  }
  a.num_acc = static_cast<int>(acc_slots.size());
  for (int s = 0; s < a.num_states(); s++) {
    const auto& bits = types[static_cast<size_t>(s)];
    uint32_t ab = 0;
    for (size_t i = 0; i < acc_slots.size(); i++) {
      Formula p = cs.pos[static_cast<size_t>(acc_slots[i])];
      Formula goal = p->is(Kind::Until) ? p->kid(1) : p->kid(0);
      if (cs.value(goal, bits) || !bits[static_cast<size_t>(acc_slots[i])])
        ab |= 1u << i;
    }
    a.acc_bits[static_cast<size_t>(s)] = ab;
  }

  // initial: phi holds; past operators see an empty history
  for (int s = 0; s < a.num_states(); s++) {
    const auto& bits = types[static_cast<size_t>(s)];
    if (!cs.value(g, bits)) continue;
    bool ok = true;
    for (int slot : frees) {
      Formula p = cs.pos[static_cast<size_t>(slot)];
      bool v = bits[static_cast<size_t>(slot)] != 0;
      if (p->is(Kind::Prev) && v) ok = false;
      if (p->is(Kind::PastEv) && v != cs.value(p->kid(0), bits)) ok = false;
      if (p->is(Kind::Since) && v != cs.value(p->kid(1), bits)) ok = false;
    }
    if (ok) a.initial.push_back(s);
  }

  // transitions: expansion laws as two-state constraints
  for (int s = 0; s < a.num_states(); s++) {
    const auto& sb = types[static_cast<size_t>(s)];
    for (int t = 0; t < a.num_states(); t++) {
      const auto& tb = types[static_cast<size_t>(t)];
      bool ok = true;
      for (int slot : frees) {
        Formula p = cs.pos[static_cast<size_t>(slot)];
        bool vs = sb[static_cast<size_t>(slot)] != 0;
        bool vt = tb[static_cast<size_t>(slot)] != 0;
        switch (p->kind) {
          case Kind::Next:
            ok = (vs == cs.value(p->kid(0), tb));
            break;
          case Kind::Prev:
            ok = (vt == cs.value(p->kid(0), sb));
            break;
          case Kind::Ev:
            ok = (vs == (cs.value(p->kid(0), sb) || vt));
            break;
          case Kind::PastEv:
            ok = (vt == (cs.value(p->kid(0), tb) || vs));
            break;
          case Kind::Until:
            ok = (vs == (cs.value(p->kid(1), sb) ||
                         (cs.value(p->kid(0), sb) && vt)));
            break;
          case Kind::Since:
            ok = (vt == (cs.value(p->kid(1), tb) ||
                         (cs.value(p->kid(0), tb) && vs)));
            break;
          default:
            break;
        }
        if (!ok) break;
      }
      if (ok) a.succ[static_cast<size_t>(s)].push_back(t);
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// FO2[LTL]: decomposition and product family
// ---------------------------------------------------------------------------

namespace {

struct Decomposer {
  std::vector<Formula> defs;                 // post-order
  std::unordered_map<Formula, int> def_of;   // node -> index
  std::vector<int32_t> syms;

  void collect(Formula f, Formula root) {
    for (Formula k : f->kids) collect(k, root);
    if (f == root) return;
    if (f->free_count() > 1) return;
    if (f->is(Kind::True) || f->is(Kind::False)) return;
    if (def_of.count(f)) return;
    def_of.emplace(f, static_cast<int>(defs.size()));
    defs.push_back(f);
  }

  bool fo_class(Formula f) const { return f->is(Kind::Exists); }

  // body of a definition in the temporal reading: defined parts become
  // propositions
  Formula temporal_body(Formula d) {
    switch (d->kind) {
      case Kind::Prop:
        return d;
      case Kind::Pred:
        return mk_prop(d->sym);
      default: {
        std::vector<Formula> ks;
        for (Formula k : d->kids) ks.push_back(temporal_ref(k));
        switch (d->kind) {
          case Kind::Not: return mk_not(ks[0]);
          case Kind::And: return mk_and(ks[0], ks[1]);
          case Kind::Or: return mk_or(ks[0], ks[1]);
          case Kind::Next: return mk_next(ks[0]);
          case Kind::Prev: return mk_prev(ks[0]);
          case Kind::Ev: return mk_ev(ks[0]);
          case Kind::PastEv: return mk_past_ev(ks[0]);
          case Kind::Until: return mk_until(ks[0], ks[1]);
          case Kind::Since: return mk_since(ks[0], ks[1]);
          default:
            throw std::logic_error("decompose: unexpected temporal body " +
                                   to_string(d));
        }
      }
    }
  }

  Formula temporal_ref(Formula k) {
    auto it = def_of.find(k);
    if (it != def_of.end()) return mk_prop(syms[static_cast<size_t>(it->second)]);
    if (k->is(Kind::True) || k->is(Kind::False)) return k;
    throw std::logic_error("decompose: undefined temporal part " + to_string(k));
  }

  // body of an FO definition: defined parts become fresh predicates applied
  // to the variable they mention
  Formula fo_body(Formula d) {
    if (!d->is(Kind::Exists))
      throw std::logic_error("decompose: fo body expected a quantifier");
    return mk_exists(d->var, fo_ref(d->kid(0)));
  }

  Formula fo_ref(Formula k) {
    auto it = def_of.find(k);
    if (it != def_of.end()) {
      Var v = (k->free_mask & 2) ? Var::Y : Var::X;
      return mk_pred(syms[static_cast<size_t>(it->second)], v);
    }
    switch (k->kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Less:
      case Kind::Eq:
      case Kind::Suc:
        return k;
      case Kind::Not:
        return mk_not(fo_ref(k->kid(0)));
      case Kind::And:
        return mk_and(fo_ref(k->kid(0)), fo_ref(k->kid(1)));
      case Kind::Or:
        return mk_or(fo_ref(k->kid(0)), fo_ref(k->kid(1)));
      default:
        throw std::logic_error("decompose: unexpected fo part " + to_string(k));
    }
  }
};

}  // namespace

Fo2LtlParts fo2ltl_decompose(Formula f) {
  Formula g = expand_lets(f);
  Decomposer dec;
  FragmentInfo fi = classify(g);
  bool top_fo = (fi.frag == Fragment::FO2 || fi.frag == Fragment::FO2LT) ||
                g->is(Kind::Exists);
  dec.collect(g, top_fo ? nullptr : g);
  if (top_fo && !dec.def_of.count(g)) {
    dec.def_of.emplace(g, static_cast<int>(dec.defs.size()));
    dec.defs.push_back(g);
  }
  for (size_t i = 0; i < dec.defs.size(); i++)
    dec.syms.push_back(intern_symbol("R" + std::to_string(i)));

  Fo2LtlParts out;
  std::vector<Formula> ltl_conjs, fo_conjs;
  for (size_t i = 0; i < dec.defs.size(); i++) {
    Formula d = dec.defs[i];
    Formula r = mk_prop(dec.syms[i]);
    if (dec.fo_class(d)) {
      Formula body = dec.fo_body(d);
      if (body->free_mask == 2) body = swap_vars(body);
      fo_conjs.push_back(
          mk_forall(Var::X, mk_iff(mk_pred(dec.syms[i], Var::X), body)));
    } else {
      ltl_conjs.push_back(mk_globally(mk_iff(r, dec.temporal_body(d))));
    }
  }
  Formula skeleton = top_fo ? mk_prop(dec.syms[static_cast<size_t>(dec.def_of[g])])
                            : dec.temporal_body(g);
  Formula l = skeleton;
  for (Formula c : ltl_conjs) l = mk_and(l, c);
  out.ltl = l;
  out.fo2 = mk_and(fo_conjs);
  out.fresh = dec.syms;
  return out;
}

namespace {

Alphabet extend_alphabet(const Alphabet& alpha, const std::vector<int32_t>& fresh,
                         std::vector<std::pair<int, uint32_t>>& decode) {
  // letters: (base letter, subset of fresh); decode maps extended letter id
  // back to (base id, fresh bits)
  std::vector<int32_t> props = alpha.props();
  for (int32_t s : fresh) props.push_back(s);
  if (props.size() > 31) throw std::runtime_error("extended alphabet too large");
  std::vector<uint32_t> letters;
  for (int l = 0; l < alpha.size(); l++) {
    for (uint32_t rb = 0; rb < (1u << fresh.size()); rb++) {
      letters.push_back(alpha.bits(l) | (rb << alpha.num_props()));
      decode.emplace_back(l, rb);
    }
  }
  return Alphabet(props, letters, false);
}

}  // namespace

AutomatonFamily fo2ltl_family(Formula f, const Alphabet& alpha) {
  Formula g = expand_lets(f);
  FragmentInfo fi = classify(g);
  if (fi.frag != Fragment::FO2LTL) {
    // degenerate inputs route through the matching translation directly
    return family_for(g, alpha);
  }
  Fo2LtlParts parts = fo2ltl_decompose(g);
  std::vector<std::pair<int, uint32_t>> decode;
  Alphabet ext = extend_alphabet(alpha, parts.fresh, decode);

  GeneralizedBuchi bl = ltl_to_unambiguous_gba(parts.ltl, ext);
  AutomatonFamily ffam;
  if (parts.fo2->is(Kind::True)) {
    ffam = utl_to_family(mk_true(), ext);
  } else {
    FragmentInfo ff = classify(parts.fo2);
    if (ff.frag == Fragment::FO2LT) {
      ffam = fo2lt_family(parts.fo2, ext);
    } else {
      ffam = fo2_to_family(parts.fo2, ext);
    }
  }

  AutomatonFamily out;
  for (size_t i = 0; i < ffam.members.size(); i++) {
    GeneralizedBuchi prod = product_intersection(bl, ffam.members[i]);
    // restrict the labels back to the base alphabet
    for (auto& l : prod.label) l = decode[static_cast<size_t>(l)].first;
    prod.nletters = alpha.size();
    out.members.push_back(trim(prod));
    out.indices.push_back(ffam.indices[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translation III
// ---------------------------------------------------------------------------

DeterministicParity fo2lt_to_dpa(Formula f, const Alphabet& alpha, int k,
                                 uint64_t budget) {
  Formula g = canon_x(expand_lets(f));
  if (g->features & (F_SUC | F_UNTIL_SINCE | F_NEXT_PREV | F_DIAMOND))
    throw std::invalid_argument("parity translation needs an order-only formula");
  if (k < measure(g).qdp)
    throw std::invalid_argument("parity translation needs k >= qdp");
  KTypeTable table(alpha, k, budget);

  DeterministicParity d;
  d.nletters = alpha.size();

  struct St {
    int rep;
    Word lar_word;
    int pos;  // position of the letter in the previous record, 1-based; 0 = new
  };
  std::map<std::tuple<int, Word, int>, int> idx;
  std::vector<St> states;
  std::deque<int> work;
  std::map<std::pair<int, Word>, bool> sat_memo;

  auto satisfies = [&](int rep, const Word& suffix) {
    auto key = std::make_pair(rep, suffix);
    auto it = sat_memo.find(key);
    if (it != sat_memo.end()) return it->second;
    LassoWord u;
    u.prefix = table.reps()[static_cast<size_t>(rep)];
    u.period = suffix;
    bool v = eval_oracle(g, u, alpha, 0);
    sat_memo.emplace(key, v);
    return v;
  };

  auto add = [&](int rep, const Word& lw, int pos) {
    auto key = std::make_tuple(rep, lw, pos);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int pr;
    if (lw.empty()) {
      // The initial state never recurs, so its priority cannot matter for
      // acceptance; make tautologies come out all-even anyway.
      bool all = true;
      for (int a = 0; a < alpha.size() && all; a++) all = satisfies(rep, {a});
      pr = all ? 0 : 1;
    } else {
      Word suffix(lw.begin() + (pos == 0 ? 0 : pos - 1), lw.end());
      pr = 2 * static_cast<int>(suffix.size()) + (satisfies(rep, suffix) ? 0 : 1);
    }
    int id = static_cast<int>(states.size());
    states.push_back({rep, lw, pos});
    d.priority.push_back(pr);
    d.delta.emplace_back(static_cast<size_t>(alpha.size()), -1);
    d.names.push_back("rep" + std::to_string(rep));
    idx.emplace(key, id);
    work.push_back(id);
    return id;
  };

  d.initial = add(table.rep_index_of({}), {}, 0);
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    St st = states[static_cast<size_t>(id)];
    for (int a = 0; a < alpha.size(); a++) {
      Word w = table.reps()[static_cast<size_t>(st.rep)];
      w.push_back(a);
      int rep2 = table.rep_index_of(w);
      int pos2 = 0;
      for (size_t i = 0; i < st.lar_word.size(); i++) {
        if (st.lar_word[i] == a) pos2 = static_cast<int>(i) + 1;
      }
      Word lw2 = st.lar_word;
      lw2.push_back(a);
      lw2 = lar(lw2);
      int tgt = add(rep2, lw2, pos2);
      d.delta[static_cast<size_t>(id)][static_cast<size_t>(a)] = tgt;
    }
  }
  return d;
}

DeterministicParity fo2_to_dpa(Formula f, const Alphabet& alpha, uint64_t budget) {
  Formula g = expand_lets(f);
  if (!(g->features & F_SUC) && !(g->features & (F_UNTIL_SINCE | F_NEXT_PREV | F_DIAMOND))) {
    return fo2lt_to_dpa(g, alpha, measure(g).qdp, budget);
  }
  // successor or temporal content: quantifier elimination into UTL, push the
  // X operators into window atoms, then the order-only construction over the
  // window alphabet with an n-step delay buffer.
  Formula utl;
  FragmentInfo fi = classify(g);
  if (fi.frag == Fragment::FO2 || fi.frag == Fragment::FO2LT) {
    utl = fo2_to_utl(g);
  } else if (fi.frag == Fragment::TLDD || fi.frag == Fragment::UTL) {
    utl = g;
  } else {
    throw std::invalid_argument("parity translation needs FO^2 or UTL input");
  }
  utl = simplify_at_origin(utl);
  PushedForm pushed = push_next_prev(utl);
  Formula tldd = simplify_at_origin(pushed.formula);
  int n = 0;
  {
    std::set<Formula> seen;
    std::function<void(Formula)> walk = [&](Formula h) {
      if (!seen.insert(h).second) return;
      if (h->is(Kind::Prop) || h->is(Kind::Guard))
        n = std::max(n, h->shift < 0 ? -h->shift : h->shift);
      for (Formula k : h->kids) walk(k);
    };
    walk(tldd);
  }
  if (n == 0) {
    Formula fo = utl_to_fo2(shifted_atoms_to_window_props(tldd), Var::X);
    // over a width-0 window the props are the base props renamed with @0
    WindowAlphabet wa = make_window_alphabet(alpha, 0);
    DeterministicParity inner = fo2lt_to_dpa(fo, wa.window, measure(fo).qdp, budget);
    // letters align one-to-one with the base alphabet
    inner.nletters = alpha.size();
    return inner;
  }
  WindowAlphabet wa = make_window_alphabet(alpha, n);
  Formula fo = utl_to_fo2(tldd, Var::X);  // shifted atoms become predicates
  DeterministicParity inner = fo2lt_to_dpa(fo, wa.window, measure(fo).qdp, budget);

  // delay composition: feed window(i - n) when reading letter i
  DeterministicParity out;
  out.nletters = alpha.size();
  struct St {
    int inner;
    std::vector<int> buf;  // last up-to-2n letters, -1 padded on the left
  };
  std::map<std::pair<int, std::vector<int>>, int> idx;
  std::vector<St> states;
  std::deque<int> work;
  auto add = [&](int in, const std::vector<int>& buf) {
    auto key = std::make_pair(in, buf);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int id = static_cast<int>(states.size());
    states.push_back({in, buf});
    out.priority.push_back(inner.priority[static_cast<size_t>(in)]);
    out.delta.emplace_back(static_cast<size_t>(alpha.size()), -1);
    idx.emplace(key, id);
    work.push_back(id);
    return id;
  };
  out.initial = add(inner.initial, std::vector<int>(static_cast<size_t>(2 * n), -1));
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    St st = states[static_cast<size_t>(id)];
    for (int a = 0; a < alpha.size(); a++) {
      std::vector<int> win = st.buf;
      win.push_back(a);  // 2n + 1 cells
      int in2 = st.inner;
      // a window is complete once its center cell is a real letter
      if (win[static_cast<size_t>(n)] != -1) {
        int wl = wa.letter_for(win);
        in2 = inner.delta[static_cast<size_t>(st.inner)][static_cast<size_t>(wl)];
      }
      std::vector<int> buf2(win.begin() + 1, win.end());
      int tgt = add(in2, buf2);
      out.delta[static_cast<size_t>(id)][static_cast<size_t>(a)] = tgt;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

AutomatonFamily family_for(Formula f, const Alphabet& alpha) {
  Formula g = expand_lets(f);
  FragmentInfo fi = classify(g);
  switch (fi.frag) {
    case Fragment::TLDD:
    case Fragment::UTL:
      return utl_to_family(g, alpha);
    case Fragment::LTL: {
      AutomatonFamily fam;
      fam.members.push_back(ltl_to_unambiguous_gba(g, alpha));
      fam.indices.push_back("tableau");
      return fam;
    }
    case Fragment::FO2LT:
      return fo2lt_family(g, alpha);
    case Fragment::FO2:
      return fo2_to_family(g, alpha);
    case Fragment::FO2LTL:
      return fo2ltl_family(g, alpha);
  }
  throw std::logic_error("unreachable");
}

}  // namespace tvmc
