#pragma once

#include <string>
#include <vector>

#include "tvmc/formula.hpp"

namespace tvmc {

// Let-definition elimination. Substitutes each defined predicate by its
// (recursively expanded) body; P(y) occurrences receive the body with x and y
// interchanged. Sharing is preserved: the result is a DAG.
Formula expand_lets(Formula f);

// All distinct subformulas of expand_lets(f), children before parents.
std::vector<Formula> subformulas_dag(Formula f);

// Closure of a (let-free) temporal formula: subformulas and their negations
// with !!psi identified with psi. Returned as canonical positive
// representatives; the closure itself is {g, !g : g in result}.
std::vector<Formula> closure_positives(Formula f);

// Full closure (positives and negations).
std::vector<Formula> closure(Formula f);

// FO^2 (at most one free variable, let-free) to an equivalent UTL formula.
// Quantifiers are eliminated by case analysis on the order relation between
// the two variables; strictness and successor atoms spend X / X~ operators.
Formula fo2_to_utl(Formula f);

// Linear embedding of a UTL formula into FO^2 (FO^2[<] when no X / X~ occur),
// read at variable v.
Formula utl_to_fo2(Formula f, Var v = Var::X);

// Pushes every X and X~ inward until they are absorbed by atoms. The result
// is a TL[F,F~] formula over shifted propositions (Prop nodes with shift) and
// position-existence guards; depth is the largest |shift| used.
struct PushedForm {
  Formula formula;
  int depth = 0;
};
PushedForm push_next_prev(Formula f);

// Rewrites that are sound only at evaluation position 0 (where the language
// of a formula is taken): X~ g and shifted-into-the-past atoms become false,
// F~ g becomes g, a S b becomes b.
Formula simplify_at_origin(Formula f);

// Symbol for a proposition read at a fixed offset, and for the guard that a
// position at a (negative) offset exists. Used by the window re-encoding.
int32_t shifted_prop_symbol(int32_t sym, int shift);
int32_t exists_guard_symbol(int shift);

// Rewrites all shifted Prop/Guard atoms into plain predicates over the
// shifted-prop symbols (applied at variable v), leaving everything else.
Formula shifted_atoms_to_predicates(Formula f, Var v);

// FO^2 to FO^2[<] over neighborhood predicates: quantifier elimination into
// UTL, X-pushing, then re-reading the result as a first-order formula over
// the window predicates. Suc-free formulas are only renamed (p to p@0).
struct SucElimResult {
  Formula formula;
  int radius = 0;  // largest offset the windows must carry
};
SucElimResult fo2_successor_elimination(Formula f, int max_radius);

}  // namespace tvmc
