#include "doctest.h"

#include <random>

#include "testutil.hpp"
#include "tvmc/automaton.hpp"

using namespace tvmc;

namespace {

// A^Σ-style toy automata assembled by hand for the generic algorithms.
GeneralizedBuchi single_loop(int nletters, int letter, bool accepting) {
  GeneralizedBuchi a;
  a.nletters = nletters;
  a.num_acc = 1;
  int s = a.add_state(letter, accepting ? 1u : 0u);
  a.succ[static_cast<size_t>(s)].push_back(s);
  a.initial.push_back(s);
  return a;
}

GeneralizedBuchi random_automaton(std::mt19937& rng, int n, int nletters,
                                  int num_acc) {
  GeneralizedBuchi a;
  a.nletters = nletters;
  a.num_acc = num_acc;
  std::uniform_int_distribution<int> letter(0, nletters - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> state(0, n - 1);
  for (int i = 0; i < n; i++) {
    uint32_t bits = 0;
    for (int f = 0; f < num_acc; f++)
      if (coin(rng)) bits |= 1u << f;
    a.add_state(letter(rng), bits);
  }
  for (int i = 0; i < n; i++) {
    int deg = 1 + state(rng) % 3;
    for (int d = 0; d < deg; d++) a.succ[static_cast<size_t>(i)].push_back(state(rng));
  }
  a.initial.push_back(0);
  if (n > 1) a.initial.push_back(1);
  return a;
}

}  // namespace

TEST_CASE("scc decomposition") {
  // one self-loop state
  GeneralizedBuchi a = single_loop(1, 0, true);
  SccDag d = scc_decomposition(a);
  CHECK(d.num_components() == 1);
  CHECK(d.bottom[0]);
  CHECK(!d.trivial[0]);

  // 3-state chain: three components, one bottom
  GeneralizedBuchi b;
  b.nletters = 1;
  b.num_acc = 0;
  for (int i = 0; i < 3; i++) b.add_state(0);
  b.succ[0].push_back(1);
  b.succ[1].push_back(2);
  b.initial.push_back(0);
  SccDag db = scc_decomposition(b);
  CHECK(db.num_components() == 3);
  int bottoms = 0;
  for (int c = 0; c < 3; c++) bottoms += db.bottom[static_cast<size_t>(c)];
  CHECK(bottoms == 1);
  // reverse topological numbering: edges go to lower ids
  for (int c = 0; c < db.num_components(); c++) {
    for (int e : db.edges[static_cast<size_t>(c)]) CHECK(e < c);
  }
}

TEST_CASE("accepts_lasso basics") {
  // universal automaton over two letters accepts everything
  GeneralizedBuchi u;
  u.nletters = 2;
  u.num_acc = 1;
  for (int l = 0; l < 2; l++) u.add_state(l, 1u);
  for (int s = 0; s < 2; s++)
    for (int t = 0; t < 2; t++) u.succ[static_cast<size_t>(s)].push_back(t);
  u.initial = {0, 1};
  std::mt19937 rng(3);
  Alphabet ab = Alphabet::unary({"a", "b"});
  for (int t = 0; t < 50; t++) {
    LassoWord w = testutil::random_lasso(rng, ab, 3, 3);
    CHECK(accepts_lasso(u, w));
  }

  GeneralizedBuchi none = u;
  none.initial.clear();
  LassoWord w;
  w.period = {0};
  CHECK(!accepts_lasso(none, w));
}

TEST_CASE("degeneralize: single set is isomorphic") {
  std::mt19937 rng(5);
  GeneralizedBuchi a = random_automaton(rng, 6, 2, 1);
  GeneralizedBuchi b = degeneralize(a);
  // reachable part of a:
  std::vector<bool> reach(static_cast<size_t>(a.num_states()), false);
  std::vector<int> stack = a.initial;
  for (int s : a.initial) reach[static_cast<size_t>(s)] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : a.succ[static_cast<size_t>(s)]) {
      if (!reach[static_cast<size_t>(t)]) {
        reach[static_cast<size_t>(t)] = true;
        stack.push_back(t);
      }
    }
  }
  int nreach = 0;
  for (bool r : reach) nreach += r;
  CHECK(b.num_states() == nreach);
}

TEST_CASE("degeneralize preserves lasso membership") {
  std::mt19937 rng(7);
  Alphabet ab = Alphabet::unary({"a", "b"});
  for (int round = 0; round < 10; round++) {
    GeneralizedBuchi a = random_automaton(rng, 5, 2, 2 + round % 2);
    GeneralizedBuchi b = degeneralize(a);
    CHECK(b.num_acc == 1);
    CHECK(b.num_states() <= a.num_states() * (a.num_acc + 1));
    for (int t = 0; t < 60; t++) {
      LassoWord w = testutil::random_lasso(rng, ab, 3, 3);
      CAPTURE(round);
      CHECK(accepts_lasso(a, w) == accepts_lasso(b, w));
    }
  }
}

TEST_CASE("is_empty returns verified witnesses") {
  std::mt19937 rng(11);
  Alphabet ab = Alphabet::unary({"a", "b"});
  (void)ab;
  int nonempty = 0;
  for (int round = 0; round < 40; round++) {
    GeneralizedBuchi a = random_automaton(rng, 5, 2, 1 + round % 3);
    EmptinessResult r = is_empty(a);
    if (!r.empty) {
      nonempty++;
      CHECK(accepts_lasso(a, r.witness));
    }
  }
  CHECK(nonempty > 5);

  // no reachable accepting cycle: empty
  GeneralizedBuchi chain;
  chain.nletters = 1;
  chain.num_acc = 1;
  chain.add_state(0, 1u);
  chain.add_state(0, 0u);
  chain.succ[0].push_back(1);
  chain.succ[1].push_back(1);
  chain.initial = {0};
  CHECK(is_empty(chain).empty);

  // single accepting self-loop: witness (label)^ω with empty prefix
  GeneralizedBuchi loop = single_loop(2, 1, true);
  EmptinessResult r = is_empty(loop);
  CHECK(!r.empty);
  CHECK(r.witness.prefix.empty());
  CHECK(r.witness.period == std::vector<int>{1});
}

TEST_CASE("check_unambiguous") {
  GeneralizedBuchi det = single_loop(1, 0, true);
  CHECK(check_unambiguous(det));

  // two identical initial accepting self-loops: ambiguous
  GeneralizedBuchi two;
  two.nletters = 1;
  two.num_acc = 1;
  int s0 = two.add_state(0, 1u);
  int s1 = two.add_state(0, 1u);
  two.succ[static_cast<size_t>(s0)].push_back(s0);
  two.succ[static_cast<size_t>(s1)].push_back(s1);
  two.initial = {s0, s1};
  CHECK(!check_unambiguous(two));

  // branching that rejoins also breaks unambiguity
  GeneralizedBuchi re;
  re.nletters = 2;
  re.num_acc = 1;
  int a0 = re.add_state(0, 0u);
  int b1 = re.add_state(1, 0u);
  int b2 = re.add_state(1, 0u);
  int c = re.add_state(0, 1u);
  re.succ[static_cast<size_t>(a0)] = {b1, b2};
  re.succ[static_cast<size_t>(b1)] = {c};
  re.succ[static_cast<size_t>(b2)] = {c};
  re.succ[static_cast<size_t>(c)] = {c};
  re.initial = {a0};
  CHECK(!check_unambiguous(re));
}

TEST_CASE("count_accepting_lasso_runs flags ambiguity on a word") {
  GeneralizedBuchi two;
  two.nletters = 1;
  two.num_acc = 1;
  int s0 = two.add_state(0, 1u);
  int s1 = two.add_state(0, 1u);
  two.succ[static_cast<size_t>(s0)].push_back(s0);
  two.succ[static_cast<size_t>(s1)].push_back(s1);
  two.initial = {s0, s1};
  LassoWord w;
  w.period = {0};
  CHECK(count_accepting_lasso_runs(two, w) == 2);
  GeneralizedBuchi det = single_loop(1, 0, true);
  CHECK(count_accepting_lasso_runs(det, w) == 1);
}

TEST_CASE("check_det_in_limit") {
  GeneralizedBuchi det = single_loop(1, 0, true);
  CHECK(check_det_in_limit(det));

  // nondeterministic branching before the accepting part is fine
  GeneralizedBuchi re;
  re.nletters = 2;
  re.num_acc = 1;
  int a0 = re.add_state(0, 0u);
  int b1 = re.add_state(1, 0u);
  int b2 = re.add_state(1, 0u);
  int c = re.add_state(0, 1u);
  re.succ[static_cast<size_t>(a0)] = {b1, b2};
  re.succ[static_cast<size_t>(b1)] = {c};
  re.succ[static_cast<size_t>(b2)] = {c};
  re.succ[static_cast<size_t>(c)] = {c};
  re.initial = {a0};
  CHECK(check_det_in_limit(re));

  // branching after an accepting state is not
  GeneralizedBuchi bad = re;
  bad.acc_bits[static_cast<size_t>(a0)] = 1u;
  CHECK(!check_det_in_limit(bad));
}

TEST_CASE("trim keeps the language") {
  std::mt19937 rng(19);
  Alphabet ab = Alphabet::unary({"a", "b"});
  for (int round = 0; round < 20; round++) {
    GeneralizedBuchi a = random_automaton(rng, 6, 2, 2);
    GeneralizedBuchi t = trim(a);
    CHECK(t.num_states() <= a.num_states());
    for (int i = 0; i < 40; i++) {
      LassoWord w = testutil::random_lasso(rng, ab, 3, 3);
      CHECK(accepts_lasso(a, w) == accepts_lasso(t, w));
    }
  }
}
