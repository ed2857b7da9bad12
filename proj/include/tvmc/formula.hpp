#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tvmc {

// Two-variable discipline: only x and y ever occur.
enum class Var : uint8_t { X = 0, Y = 1 };

inline Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }
inline const char* var_name(Var v) { return v == Var::X ? "x" : "y"; }

enum class Kind : uint8_t {
  True,
  False,
  Prop,    // proposition P (no variable), possibly shifted (internal normal forms)
  Guard,   // internal: "position i+shift exists" (shift <= 0)
  Pred,    // P(v)
  Less,    // var() < other  (Less with var=X is "x < y")
  Eq,      // x = y
  Suc,     // suc(var, other)
  Not,
  And,
  Or,
  Next,    // X
  Prev,    // X~
  Ev,      // F  (reflexive)
  PastEv,  // F~ (reflexive)
  Until,   // U
  Since,   // S
  Exists,  // E v.
  Let,     // let P(x) = kid0 in kid1
};

class FormulaNode;
using Formula = const FormulaNode*;

// Feature bits used by fragment classification.
enum Feature : uint32_t {
  F_UNTIL_SINCE = 1u << 0,
  F_NEXT_PREV = 1u << 1,
  F_DIAMOND = 1u << 2,
  F_NAKED_PROP = 1u << 3,
  F_FO_ATOM = 1u << 4,  // predicate application, order atom or equality
  F_SUC = 1u << 5,
  F_EXISTS = 1u << 6,
  F_LET = 1u << 7,
};

class FormulaNode {
public:
  Kind kind;
  Var var = Var::X;     // Pred/Exists/Less/Suc
  int32_t sym = -1;     // Prop/Pred/Let symbol id
  int32_t shift = 0;    // Prop/Guard: temporal shift in push-inside normal form
  std::vector<Formula> kids;

  uint32_t id = 0;       // interning id, unique per structurally distinct node
  uint8_t free_mask = 0; // bit0: x free, bit1: y free
  uint32_t features = 0;

  bool is(Kind k) const { return kind == k; }
  Formula kid(size_t i) const { return kids[i]; }
  size_t arity() const { return kids.size(); }
  bool x_free() const { return free_mask & 1; }
  bool y_free() const { return free_mask & 2; }
  int free_count() const { return (free_mask & 1) + ((free_mask >> 1) & 1); }
};

// Symbol table for proposition / predicate names (global, insert-only).
int32_t intern_symbol(const std::string& name);
const std::string& symbol_name(int32_t sym);

// Smart constructors. All nodes are hash-consed: structural equality is
// pointer equality. mk_not collapses double negation.
Formula mk_true();
Formula mk_false();
Formula mk_prop(int32_t sym, int32_t shift = 0);
Formula mk_prop(const std::string& name);
Formula mk_guard(int32_t shift);
Formula mk_pred(int32_t sym, Var v);
Formula mk_pred(const std::string& name, Var v);
Formula mk_less(Var smaller);
Formula mk_eq();
Formula mk_suc(Var first);
Formula mk_not(Formula f);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_and(const std::vector<Formula>& fs);
Formula mk_or(const std::vector<Formula>& fs);
Formula mk_implies(Formula a, Formula b);
Formula mk_iff(Formula a, Formula b);
Formula mk_next(Formula f);
Formula mk_prev(Formula f);
Formula mk_ev(Formula f);
Formula mk_past_ev(Formula f);
Formula mk_globally(Formula f);  // !F!f
Formula mk_until(Formula a, Formula b);
Formula mk_since(Formula a, Formula b);
Formula mk_exists(Var v, Formula body);
Formula mk_forall(Var v, Formula body);  // !E v. !body
Formula mk_let(int32_t sym, Formula body, Formula cont);

// Renames x <-> y in all free occurrences (swaps bound ones too, which is
// sound for the two-variable language).
Formula swap_vars(Formula f);

struct FormulaMetrics {
  uint64_t dag_size = 0;   // distinct reachable nodes
  uint64_t tree_size = 0;  // fully expanded tree node count (saturating)
  int qdp = 0;             // quantifier depth
  int odp = 0;             // nesting depth of all temporal operators
  int xdepth = 0;          // total X / X~ operators along a root-leaf path
};
FormulaMetrics measure(Formula f);

std::string to_string(Formula f);

}  // namespace tvmc
