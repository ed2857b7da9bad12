#include "tvmc/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace tvmc {

namespace {

struct TarjanState {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  explicit TarjanState(const std::vector<std::vector<int>>& a)
      : adj(a),
        index(a.size(), -1),
        low(a.size(), 0),
        comp(a.size(), -1),
        on_stack(a.size(), false) {}

  // Iterative Tarjan to keep deep graphs safe.
  void run(int root) {
    struct Frame {
      int v;
      size_t it;
    };
    std::vector<Frame> frames;
    frames.push_back({root, 0});
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      int v = f.v;
      if (f.it < adj[static_cast<size_t>(v)].size()) {
        int w = adj[static_cast<size_t>(v)][f.it++];
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = true;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(v)] =
              std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
        }
      } else {
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = false;
            comp[static_cast<size_t>(w)] = next_comp;
            if (w == v) break;
          }
          next_comp++;
        }
        frames.pop_back();
        if (!frames.empty()) {
          int p = frames.back().v;
          low[static_cast<size_t>(p)] =
              std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
        }
      }
    }
  }
};

}  // namespace

SccDag scc_of_graph(const std::vector<std::vector<int>>& adj) {
  TarjanState t(adj);
  for (int v = 0; v < static_cast<int>(adj.size()); v++) {
    if (t.index[static_cast<size_t>(v)] == -1) t.run(v);
  }
  SccDag d;
  d.comp = t.comp;
  d.members.resize(static_cast<size_t>(t.next_comp));
  for (int v = 0; v < static_cast<int>(adj.size()); v++)
    d.members[static_cast<size_t>(d.comp[static_cast<size_t>(v)])].push_back(v);
  d.edges.assign(static_cast<size_t>(t.next_comp), {});
  d.bottom.assign(static_cast<size_t>(t.next_comp), true);
  d.trivial.assign(static_cast<size_t>(t.next_comp), false);
  std::set<std::pair<int, int>> seen;
  for (int v = 0; v < static_cast<int>(adj.size()); v++) {
    int cv = d.comp[static_cast<size_t>(v)];
    for (int w : adj[static_cast<size_t>(v)]) {
      int cw = d.comp[static_cast<size_t>(w)];
      if (cv == cw) continue;
      if (seen.insert({cv, cw}).second) {
        d.edges[static_cast<size_t>(cv)].push_back(cw);
        d.bottom[static_cast<size_t>(cv)] = false;
      }
    }
  }
  for (auto& e : d.edges) std::sort(e.begin(), e.end());
  for (int c = 0; c < d.num_components(); c++) {
    if (d.members[static_cast<size_t>(c)].size() == 1) {
      int v = d.members[static_cast<size_t>(c)][0];
      bool self = false;
      for (int w : adj[static_cast<size_t>(v)]) self |= (w == v);
      d.trivial[static_cast<size_t>(c)] = !self;
    }
  }
  return d;
}

SccDag scc_decomposition(const GeneralizedBuchi& a) { return scc_of_graph(a.succ); }

GeneralizedBuchi degeneralize(const GeneralizedBuchi& a) {
  GeneralizedBuchi b;
  b.nletters = a.nletters;
  if (a.num_acc == 0) {
    // Every infinite run is accepting: one set holding all states.
    b = a;
    b.num_acc = 1;
    for (auto& bits : b.acc_bits) bits = 1;
    return b;
  }
  int k = a.num_acc;
  auto acct = [&](int j, int t) {
    while (j < k && a.in_set(t, j)) j++;
    return j;
  };
  b.num_acc = 1;
  std::map<std::pair<int, int>, int> idx;
  std::deque<std::pair<int, int>> queue;
  auto add = [&](int s, int i) {
    auto key = std::make_pair(s, i);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int id = b.add_state(a.label[static_cast<size_t>(s)], i == k ? 1u : 0u);
    if (!a.names.empty())
      b.names.push_back(a.names[static_cast<size_t>(s)] + "#" + std::to_string(i));
    idx.emplace(key, id);
    queue.push_back(key);
    return id;
  };
  for (int s : a.initial) b.initial.push_back(add(s, acct(0, s)));
  while (!queue.empty()) {
    auto [s, i] = queue.front();
    queue.pop_front();
    int from = idx[{s, i}];
    int base = (i == k) ? 0 : i;
    for (int t : a.succ[static_cast<size_t>(s)]) {
      int j = acct(base, t);
      int to = add(t, j);  // may grow b.succ; index afterwards
      b.succ[static_cast<size_t>(from)].push_back(to);
    }
  }
  return b;
}

namespace {

// Label-synchronized product of an automaton with a lasso shape. Node ids
// are pos * n + state; pos in [0, m + r) with m+r-1 wrapping to m.
struct LassoProduct {
  int m, r, n;
  std::vector<std::vector<int>> adj;
  std::vector<int> init_nodes;

  LassoProduct(const GeneralizedBuchi& a, const LassoWord& u) {
    m = static_cast<int>(u.prefix.size());
    r = static_cast<int>(u.period.size());
    n = a.num_states();
    int P = m + r;
    adj.assign(static_cast<size_t>(P) * static_cast<size_t>(n), {});
    auto letter = [&](int pos) {
      return pos < m ? u.prefix[static_cast<size_t>(pos)]
                     : u.period[static_cast<size_t>(pos - m)];
    };
    auto nextpos = [&](int pos) { return pos + 1 < P ? pos + 1 : m; };
    for (int pos = 0; pos < P; pos++) {
      for (int s = 0; s < n; s++) {
        if (a.label[static_cast<size_t>(s)] != letter(pos)) continue;
        int np = nextpos(pos);
        for (int t : a.succ[static_cast<size_t>(s)]) {
          if (a.label[static_cast<size_t>(t)] != letter(np)) continue;
          adj[static_cast<size_t>(pos) * static_cast<size_t>(n) +
              static_cast<size_t>(s)]
              .push_back(np * n + t);
        }
      }
    }
    for (int s : a.initial) {
      if (a.label[static_cast<size_t>(s)] == letter(0)) init_nodes.push_back(s);
    }
  }
};

std::vector<bool> reachable_from(const std::vector<std::vector<int>>& adj,
                                 const std::vector<int>& sources) {
  std::vector<bool> seen(adj.size(), false);
  std::deque<int> q;
  for (int s : sources) {
    if (!seen[static_cast<size_t>(s)]) {
      seen[static_cast<size_t>(s)] = true;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : adj[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        q.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

bool accepts_lasso(const GeneralizedBuchi& a, const LassoWord& u) {
  if (u.period.empty()) throw std::invalid_argument("lasso period is empty");
  for (int l : u.prefix)
    if (l < 0 || l >= a.nletters) throw std::invalid_argument("letter outside alphabet");
  for (int l : u.period)
    if (l < 0 || l >= a.nletters) throw std::invalid_argument("letter outside alphabet");
  LassoProduct pr(a, u);
  if (pr.init_nodes.empty()) return false;
  std::vector<bool> reach = reachable_from(pr.adj, pr.init_nodes);
  SccDag dag = scc_of_graph(pr.adj);
  int n = a.num_states();
  std::vector<uint32_t> cover(dag.members.size(), 0);
  std::vector<bool> nontrivial(dag.members.size(), false);
  std::vector<bool> reachable(dag.members.size(), false);
  for (int c = 0; c < dag.num_components(); c++) {
    nontrivial[static_cast<size_t>(c)] = !dag.trivial[static_cast<size_t>(c)];
    for (int v : dag.members[static_cast<size_t>(c)]) {
      cover[static_cast<size_t>(c)] |= a.acc_bits[static_cast<size_t>(v % n)];
      if (reach[static_cast<size_t>(v)]) reachable[static_cast<size_t>(c)] = true;
    }
  }
  uint32_t all = a.num_acc >= 32 ? ~0u : ((1u << a.num_acc) - 1);
  for (int c = 0; c < dag.num_components(); c++) {
    if (reachable[static_cast<size_t>(c)] && nontrivial[static_cast<size_t>(c)] &&
        (cover[static_cast<size_t>(c)] & all) == all)
      return true;
  }
  return false;
}

bool accepts_lasso(const DeterministicParity& a, const LassoWord& u) {
  if (u.period.empty()) throw std::invalid_argument("lasso period is empty");
  // Follow delta; find the state cycle over aligned period boundaries.
  int s = a.initial;
  for (int l : u.prefix) s = a.delta[static_cast<size_t>(s)][static_cast<size_t>(l)];
  std::map<int, int> seen_at;  // state at period boundary -> lap index
  std::vector<int> boundary_states;
  for (;;) {
    auto it = seen_at.find(s);
    if (it != seen_at.end()) {
      // laps [it->second, current) repeat forever; take max priority there.
      int best = -1;
      int cur = s;
      size_t lap_start = static_cast<size_t>(it->second);
      (void)lap_start;
      // one full cycle of laps
      int laps = static_cast<int>(boundary_states.size()) - it->second;
      for (int i = 0; i < laps; i++) {
        for (int l : u.period) {
          cur = a.delta[static_cast<size_t>(cur)][static_cast<size_t>(l)];
          best = std::max(best, a.priority[static_cast<size_t>(cur)]);
        }
      }
      return best % 2 == 0;
    }
    seen_at.emplace(s, static_cast<int>(boundary_states.size()));
    boundary_states.push_back(s);
    for (int l : u.period) s = a.delta[static_cast<size_t>(s)][static_cast<size_t>(l)];
  }
}

long long count_accepting_lasso_runs(const GeneralizedBuchi& a,
                                     const LassoWord& u) {
  // 0: rejected; 1: exactly one accepting run on u; 2: at least two.
  if (!accepts_lasso(a, u)) return 0;
  // Pair construction over the word product with a divergence bit.
  int m = static_cast<int>(u.prefix.size());
  int r = static_cast<int>(u.period.size());
  int P = m + r;
  auto letter = [&](int pos) {
    return pos < m ? u.prefix[static_cast<size_t>(pos)]
                   : u.period[static_cast<size_t>(pos - m)];
  };
  auto nextpos = [&](int pos) { return pos + 1 < P ? pos + 1 : m; };
  std::map<std::tuple<int, int, int, int>, int> idx;
  std::vector<std::tuple<int, int, int, int>> nodes;
  std::vector<std::vector<int>> adj;
  std::deque<int> work;
  auto add = [&](int pos, int s, int t, int d) {
    auto key = std::make_tuple(pos, s, t, d);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    idx.emplace(key, id);
    nodes.push_back(key);
    adj.emplace_back();
    work.push_back(id);
    return id;
  };
  for (int s : a.initial) {
    for (int t : a.initial) {
      if (a.label[static_cast<size_t>(s)] != letter(0)) continue;
      if (a.label[static_cast<size_t>(t)] != letter(0)) continue;
      add(0, s, t, s != t ? 1 : 0);
    }
  }
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    auto [pos, s, t, d] = nodes[static_cast<size_t>(id)];
    int np = nextpos(pos);
    for (int ss : a.succ[static_cast<size_t>(s)]) {
      if (a.label[static_cast<size_t>(ss)] != letter(np)) continue;
      for (int tt : a.succ[static_cast<size_t>(t)]) {
        if (a.label[static_cast<size_t>(tt)] != letter(np)) continue;
        int tgt = add(np, ss, tt, d | (ss != tt ? 1 : 0));
        adj[static_cast<size_t>(id)].push_back(tgt);
      }
    }
  }
  SccDag dag = scc_of_graph(adj);
  uint32_t all = a.num_acc >= 32 ? ~0u : ((1u << a.num_acc) - 1);
  for (int c = 0; c < dag.num_components(); c++) {
    if (dag.trivial[static_cast<size_t>(c)]) continue;
    uint32_t cs = 0, ct = 0;
    bool div = false;
    for (int v : dag.members[static_cast<size_t>(c)]) {
      auto [pos, s, t, d] = nodes[static_cast<size_t>(v)];
      (void)pos;
      cs |= a.acc_bits[static_cast<size_t>(s)];
      ct |= a.acc_bits[static_cast<size_t>(t)];
      div |= (d == 1);
    }
    if (div && (cs & all) == all && (ct & all) == all) return 2;
  }
  return 1;
}

namespace {

// Shortest path inside a node set from src to any target, following adj.
std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj,
                          const std::vector<int>& sources,
                          const std::vector<bool>& allowed,
                          const std::vector<bool>& target) {
  std::vector<int> parent(adj.size(), -2);
  std::deque<int> q;
  for (int s : sources) {
    if (allowed.empty() || allowed[static_cast<size_t>(s)]) {
      if (parent[static_cast<size_t>(s)] == -2) {
        parent[static_cast<size_t>(s)] = -1;
        q.push_back(s);
      }
    }
  }
  int found = -1;
  while (!q.empty() && found == -1) {
    int v = q.front();
    q.pop_front();
    if (target[static_cast<size_t>(v)]) {
      found = v;
      break;
    }
    for (int w : adj[static_cast<size_t>(v)]) {
      if (!allowed.empty() && !allowed[static_cast<size_t>(w)]) continue;
      if (parent[static_cast<size_t>(w)] == -2) {
        parent[static_cast<size_t>(w)] = v;
        q.push_back(w);
      }
    }
  }
  std::vector<int> path;
  if (found == -1) return path;
  for (int v = found; v != -1; v = parent[static_cast<size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

EmptinessResult is_empty(const GeneralizedBuchi& a) {
  EmptinessResult res;
  if (a.num_states() == 0 || a.initial.empty()) return res;
  std::vector<bool> reach = reachable_from(a.succ, a.initial);
  SccDag dag = scc_decomposition(a);
  uint32_t all = a.num_acc >= 32 ? ~0u : ((1u << a.num_acc) - 1);
  int good = -1;
  std::vector<bool> target(a.succ.size(), false);
  for (int c = 0; c < dag.num_components() && good == -1; c++) {
    if (dag.trivial[static_cast<size_t>(c)]) continue;
    uint32_t cover = 0;
    bool r = false;
    for (int v : dag.members[static_cast<size_t>(c)]) {
      cover |= a.acc_bits[static_cast<size_t>(v)];
      r |= reach[static_cast<size_t>(v)];
    }
    if (r && (cover & all) == all) good = c;
  }
  if (good == -1) return res;
  for (int v : dag.members[static_cast<size_t>(good)]) target[static_cast<size_t>(v)] = true;

  // Prefix: shortest path from the initial set into the component.
  std::vector<int> prefix_path = bfs_path(a.succ, a.initial, {}, target);
  int entry = prefix_path.back();

  // Cycle: inside the component, touch one state per acceptance set, then
  // return to the entry state.
  std::vector<bool> inside(a.succ.size(), false);
  for (int v : dag.members[static_cast<size_t>(good)]) inside[static_cast<size_t>(v)] = true;
  std::vector<int> cycle;
  int cur = entry;
  for (int f = 0; f < a.num_acc; f++) {
    std::vector<bool> tgt(a.succ.size(), false);
    for (int v : dag.members[static_cast<size_t>(good)]) {
      if (a.in_set(v, f)) tgt[static_cast<size_t>(v)] = true;
    }
    std::vector<int> leg = bfs_path(a.succ, {cur}, inside, tgt);
    for (size_t i = 1; i < leg.size(); i++) cycle.push_back(leg[i]);
    if (!leg.empty()) cur = leg.back();
  }
  {
    // close the loop back to entry with at least one step
    std::vector<bool> tgt(a.succ.size(), false);
    tgt[static_cast<size_t>(entry)] = true;
    if (cur == entry && cycle.empty()) {
      // need a nontrivial cycle: step to a successor inside first
      int step = -1;
      for (int t : a.succ[static_cast<size_t>(cur)]) {
        if (inside[static_cast<size_t>(t)]) {
          step = t;
          break;
        }
      }
      cycle.push_back(step);
      cur = step;
    }
    if (cur != entry) {
      std::vector<int> leg = bfs_path(a.succ, {cur}, inside, tgt);
      for (size_t i = 1; i < leg.size(); i++) cycle.push_back(leg[i]);
    }
  }
  // Assemble the word: state labels along prefix, then along the cycle
  // starting at entry.
  res.empty = false;
  for (size_t i = 0; i + 1 < prefix_path.size(); i++)
    res.witness.prefix.push_back(a.label[static_cast<size_t>(prefix_path[i])]);
  res.witness.period.push_back(a.label[static_cast<size_t>(entry)]);
  for (size_t i = 0; i + 1 < cycle.size(); i++)
    res.witness.period.push_back(a.label[static_cast<size_t>(cycle[i])]);
  return res;
}

bool check_unambiguous(const GeneralizedBuchi& a) {
  int n = a.num_states();
  // Nodes: (p, q, d); enumerate lazily.
  std::map<std::tuple<int, int, int>, int> idx;
  std::vector<std::tuple<int, int, int>> nodes;
  std::vector<std::vector<int>> adj;
  std::deque<int> work;
  auto add = [&](int p, int q, int d) {
    auto key = std::make_tuple(p, q, d);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    idx.emplace(key, id);
    nodes.push_back(key);
    adj.emplace_back();
    work.push_back(id);
    return id;
  };
  std::vector<int> inits;
  for (int p : a.initial) {
    for (int q : a.initial) {
      if (a.label[static_cast<size_t>(p)] != a.label[static_cast<size_t>(q)]) continue;
      inits.push_back(add(p, q, p != q ? 1 : 0));
    }
  }
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    auto [p, q, d] = nodes[static_cast<size_t>(id)];
    for (int pp : a.succ[static_cast<size_t>(p)]) {
      for (int qq : a.succ[static_cast<size_t>(q)]) {
        if (a.label[static_cast<size_t>(pp)] != a.label[static_cast<size_t>(qq)])
          continue;
        int dd = d | (pp != qq ? 1 : 0);
        int tgt = add(pp, qq, dd);
        adj[static_cast<size_t>(id)].push_back(tgt);
      }
    }
  }
  (void)n;
  SccDag dag = scc_of_graph(adj);
  uint32_t all = a.num_acc >= 32 ? ~0u : ((1u << a.num_acc) - 1);
  for (int c = 0; c < dag.num_components(); c++) {
    if (dag.trivial[static_cast<size_t>(c)]) continue;
    uint32_t cover_p = 0, cover_q = 0;
    bool diverged = false;
    for (int v : dag.members[static_cast<size_t>(c)]) {
      auto [p, q, d] = nodes[static_cast<size_t>(v)];
      cover_p |= a.acc_bits[static_cast<size_t>(p)];
      cover_q |= a.acc_bits[static_cast<size_t>(q)];
      diverged |= (d == 1);
    }
    if (diverged && (cover_p & all) == all && (cover_q & all) == all)
      return false;  // two runs on one word can both accept
  }
  return true;
}

bool check_det_in_limit(const GeneralizedBuchi& a) {
  std::vector<int> acc_states;
  for (int s = 0; s < a.num_states(); s++) {
    if (a.acc_bits[static_cast<size_t>(s)] != 0) acc_states.push_back(s);
  }
  std::vector<bool> reach = reachable_from(a.succ, acc_states);
  for (int s = 0; s < a.num_states(); s++) {
    if (!reach[static_cast<size_t>(s)]) continue;
    std::set<int> labels;
    for (int t : a.succ[static_cast<size_t>(s)]) {
      if (!labels.insert(a.label[static_cast<size_t>(t)]).second) return false;
    }
  }
  return true;
}

GeneralizedBuchi product_intersection(const GeneralizedBuchi& a,
                                      const GeneralizedBuchi& b) {
  if (a.nletters != b.nletters)
    throw std::invalid_argument("product over different letter spaces");
  GeneralizedBuchi p;
  p.nletters = a.nletters;
  p.num_acc = a.num_acc + b.num_acc;
  std::map<std::pair<int, int>, int> idx;
  std::deque<std::pair<int, int>> work;
  auto add = [&](int s, int t) {
    auto key = std::make_pair(s, t);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    uint32_t bits = a.acc_bits[static_cast<size_t>(s)] |
                    (b.acc_bits[static_cast<size_t>(t)] << a.num_acc);
    int id = p.add_state(a.label[static_cast<size_t>(s)], bits);
    idx.emplace(key, id);
    work.push_back(key);
    return id;
  };
  for (int s : a.initial) {
    for (int t : b.initial) {
      if (a.label[static_cast<size_t>(s)] == b.label[static_cast<size_t>(t)])
        p.initial.push_back(add(s, t));
    }
  }
  while (!work.empty()) {
    auto [s, t] = work.front();
    work.pop_front();
    int from = idx[{s, t}];
    for (int ss : a.succ[static_cast<size_t>(s)]) {
      for (int tt : b.succ[static_cast<size_t>(t)]) {
        if (a.label[static_cast<size_t>(ss)] != b.label[static_cast<size_t>(tt)])
          continue;
        int tgt = add(ss, tt);
        p.succ[static_cast<size_t>(from)].push_back(tgt);
      }
    }
  }
  return p;
}

std::vector<bool> coaccessible(const GeneralizedBuchi& a) {
  SccDag dag = scc_decomposition(a);
  uint32_t all = a.num_acc >= 32 ? ~0u : ((1u << a.num_acc) - 1);
  std::vector<bool> good_state(a.succ.size(), false);
  for (int c = 0; c < dag.num_components(); c++) {
    if (dag.trivial[static_cast<size_t>(c)]) continue;
    uint32_t cover = 0;
    for (int v : dag.members[static_cast<size_t>(c)])
      cover |= a.acc_bits[static_cast<size_t>(v)];
    if ((cover & all) == all) {
      for (int v : dag.members[static_cast<size_t>(c)])
        good_state[static_cast<size_t>(v)] = true;
    }
  }
  // backward reachability to a good component
  std::vector<std::vector<int>> radj(a.succ.size());
  for (int v = 0; v < a.num_states(); v++) {
    for (int w : a.succ[static_cast<size_t>(v)]) radj[static_cast<size_t>(w)].push_back(v);
  }
  std::vector<int> sources;
  for (int v = 0; v < a.num_states(); v++) {
    if (good_state[static_cast<size_t>(v)]) sources.push_back(v);
  }
  return reachable_from(radj, sources);
}

GeneralizedBuchi trim(const GeneralizedBuchi& a) {
  std::vector<bool> fwd = reachable_from(a.succ, a.initial);
  std::vector<bool> bwd = coaccessible(a);
  std::vector<int> remap(a.succ.size(), -1);
  GeneralizedBuchi b;
  b.nletters = a.nletters;
  b.num_acc = a.num_acc;
  for (int v = 0; v < a.num_states(); v++) {
    if (fwd[static_cast<size_t>(v)] && bwd[static_cast<size_t>(v)]) {
      remap[static_cast<size_t>(v)] =
          b.add_state(a.label[static_cast<size_t>(v)], a.acc_bits[static_cast<size_t>(v)]);
      if (!a.names.empty()) b.names.push_back(a.names[static_cast<size_t>(v)]);
    }
  }
  for (int v = 0; v < a.num_states(); v++) {
    int nv = remap[static_cast<size_t>(v)];
    if (nv == -1) continue;
    for (int w : a.succ[static_cast<size_t>(v)]) {
      int nw = remap[static_cast<size_t>(w)];
      if (nw != -1) b.succ[static_cast<size_t>(nv)].push_back(nw);
    }
  }
  for (int s : a.initial) {
    if (remap[static_cast<size_t>(s)] != -1)
      b.initial.push_back(remap[static_cast<size_t>(s)]);
  }
  return b;
}

}  // namespace tvmc
