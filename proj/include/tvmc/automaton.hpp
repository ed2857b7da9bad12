#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvmc/lasso.hpp"

namespace tvmc {

// State-labelled generalized Buchi automaton. Acceptance: for each of the
// num_acc sets, some member state is visited infinitely often. A Buchi
// automaton is the special case num_acc <= 1.
struct GeneralizedBuchi {
  int nletters = 0;
  std::vector<int> label;              // state -> letter id
  std::vector<std::vector<int>> succ;  // adjacency
  std::vector<int> initial;
  int num_acc = 0;
  std::vector<uint32_t> acc_bits;  // per-state membership bitmask
  std::vector<std::string> names;  // optional, debugging and HOA dumps

  int num_states() const { return static_cast<int>(label.size()); }
  int add_state(int letter, uint32_t bits = 0) {
    label.push_back(letter);
    succ.emplace_back();
    acc_bits.push_back(bits);
    return num_states() - 1;
  }
  bool in_set(int s, int f) const {
    return (acc_bits[static_cast<size_t>(s)] >> f) & 1;
  }
};

using BuchiAutomaton = GeneralizedBuchi;

// Complete deterministic parity automaton, transition-consuming: the run on
// u starts at `initial` and moves with delta[state][letter]. Acceptance: the
// highest priority occurring infinitely often is even.
struct DeterministicParity {
  int nletters = 0;
  int initial = 0;
  std::vector<std::vector<int>> delta;  // [state][letter] -> state
  std::vector<int> priority;
  std::vector<std::string> names;

  int num_states() const { return static_cast<int>(priority.size()); }
};

struct SccDag {
  std::vector<int> comp;                  // state -> component id
  std::vector<std::vector<int>> members;  // component -> states
  std::vector<std::vector<int>> edges;    // condensation, deduplicated
  std::vector<bool> bottom;               // no outgoing condensation edge
  std::vector<bool> trivial;              // singleton without a self loop

  int num_components() const { return static_cast<int>(members.size()); }
};

// Tarjan condensation; components are numbered in reverse topological order
// (every edge goes from a higher to a lower component id).
SccDag scc_of_graph(const std::vector<std::vector<int>>& adj);
SccDag scc_decomposition(const GeneralizedBuchi& a);

// Index-counter degeneralization. Language-preserving; reachable part only.
GeneralizedBuchi degeneralize(const GeneralizedBuchi& a);

bool accepts_lasso(const GeneralizedBuchi& a, const LassoWord& u);
bool accepts_lasso(const DeterministicParity& a, const LassoWord& u);

// Number of accepting runs of a on u that are lasso-shaped with period
// |period| * num_states (enough to witness ambiguity on a fixed word).
long long count_accepting_lasso_runs(const GeneralizedBuchi& a, const LassoWord& u);

struct EmptinessResult {
  bool empty = true;
  LassoWord witness;  // meaningful iff !empty
};
EmptinessResult is_empty(const GeneralizedBuchi& a);

// At most one accepting run per word from the initial set. Decided on the
// label-synchronized self-product with a divergence bit.
bool check_unambiguous(const GeneralizedBuchi& a);

// Every state reachable from a state that belongs to some acceptance set has
// at most one successor per label.
bool check_det_in_limit(const GeneralizedBuchi& a);

// Label-synchronized intersection product (both over the same letter space).
GeneralizedBuchi product_intersection(const GeneralizedBuchi& a,
                                      const GeneralizedBuchi& b);

// States from which some accepting run exists.
std::vector<bool> coaccessible(const GeneralizedBuchi& a);
// Restriction to reachable-and-coaccessible states.
GeneralizedBuchi trim(const GeneralizedBuchi& a);

}  // namespace tvmc
