#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvmc/automaton.hpp"
#include "tvmc/formula.hpp"
#include "tvmc/fragment.hpp"
#include "tvmc/ktype.hpp"
#include "tvmc/lasso.hpp"

namespace tvmc {

// Letters describing a radius-n neighborhood of base letters; cell -1 marks
// positions before the start of the word. Shifted propositions and existence
// guards become ordinary propositions of the window alphabet.
struct WindowAlphabet {
  Alphabet base;
  int depth = 0;
  Alphabet window;                      // the derived plain alphabet
  std::vector<std::vector<int>> cells;  // window letter -> 2n+1 base cells
  std::vector<int> center_letter;      // convenience: cells[n]

  int letter_for(const std::vector<int>& cells21) const;
};

WindowAlphabet make_window_alphabet(const Alphabet& base, int n);

// Rewrites shifted Prop / Guard atoms into plain propositions of the window
// alphabet's universe.
Formula shifted_atoms_to_window_props(Formula f);

// Window view of a lasso: position i carries the window around i.
LassoWord window_encode(const LassoWord& u, const WindowAlphabet& wa);

// An indexed disjoint-union family of automata: the member languages are
// pairwise disjoint and their union is the translated language.
struct AutomatonFamily {
  std::vector<GeneralizedBuchi> members;
  std::vector<std::string> indices;  // canonical SCC-path index per member

  size_t size() const { return members.size(); }
};

// ---- Translation I --------------------------------------------------------

// Closure automaton of a TL[F,F~] formula over the given alphabet: states are
// maximal consistent subformula types, the labelling is the letter part,
// acceptance has one set per F-subformula.
GeneralizedBuchi utl_closure_automaton(Formula tldd, const Alphabet& alpha);

// Same, but keeping the per-state type valuations for structural checks.
struct ClosureAutomaton {
  GeneralizedBuchi a;
  std::vector<std::vector<char>> type_bits;  // per state, over `positives`
  std::vector<Formula> positives;
  std::vector<int> temporal_slots;  // F / F~ headed positives
};
ClosureAutomaton utl_closure_automaton_full(Formula tldd, const Alphabet& alpha);

// The four structural facts about the closure automaton graph: components
// coincide with agreement on temporal-headed formulas, components have at
// most |alphabet| states, the component dag has depth at most |formula| and
// outdegree at most 2^|formula|, and each component is deterministic per
// label. Returns an empty string when all hold, else a description.
std::string check_closure_structure(const ClosureAutomaton& ca, int phi_size,
                                    int alphabet_size);

// Splits an automaton with the layered component structure of the closure
// construction into one sub-automaton per path through the component dag.
// Runs of the member for path C0..Ck start in C0, move only along consecutive
// components, and satisfy acceptance inside Ck.
AutomatonFamily scc_path_family(const GeneralizedBuchi& a,
                                size_t max_members = 1u << 20);

// Synchronizes an automaton over the window alphabet with the n-step delay
// buffer, producing an automaton over the base alphabet.
GeneralizedBuchi nextprev_compose(const GeneralizedBuchi& a,
                                  const WindowAlphabet& wa);

AutomatonFamily utl_to_family(Formula utl, const Alphabet& alpha);
AutomatonFamily fo2_to_family(Formula fo2, const Alphabet& alpha);

// ---- Translation II -------------------------------------------------------

// Pre-type automaton for an order-only formula over a unary alphabet. States
// are triples (past pre-type set, current pre-type, promised future set).
GeneralizedBuchi fo2lt_pretype_automaton(Formula f, const Alphabet& unary,
                                         size_t max_pretypes = 16);

AutomatonFamily fo2lt_family(Formula f, const Alphabet& alpha,
                             size_t max_pretypes = 16);

// ---- LTL tableau ----------------------------------------------------------

// Complete-valuation tableau; unambiguous, one acceptance set per U/F
// subformula. Let definitions are expanded (sharing keeps the closure small).
GeneralizedBuchi ltl_to_unambiguous_gba(Formula f, const Alphabet& alpha);

// ---- FO2[LTL] -------------------------------------------------------------

struct Fo2LtlParts {
  Formula ltl;                  // skeleton and G(R <-> ...) conjuncts
  Formula fo2;                  // forall x (R(x) <-> ...) conjuncts
  std::vector<int32_t> fresh;   // the introduced proposition symbols
};

Fo2LtlParts fo2ltl_decompose(Formula f);

AutomatonFamily fo2ltl_family(Formula f, const Alphabet& alpha);

// ---- Translation III ------------------------------------------------------

// Deterministic parity automaton via type representatives and last appearance
// records; priorities are computed with the evaluation oracle.
DeterministicParity fo2lt_to_dpa(Formula f, const Alphabet& alpha, int k,
                                 uint64_t budget = 1000000);

// Full FO^2: successor handling through the UTL route and a delay buffer.
DeterministicParity fo2_to_dpa(Formula f, const Alphabet& alpha,
                               uint64_t budget = 1000000);

// ---- dispatch -------------------------------------------------------------

// Family for any supported fragment, routed per the translation that fits.
AutomatonFamily family_for(Formula f, const Alphabet& alpha);

}  // namespace tvmc
