#pragma once

#include "tvmc/formula.hpp"
#include "tvmc/lasso.hpp"

namespace tvmc {

struct OracleOptions {
  int start_copies = 2;
  int max_copies = 64;
  bool double_growth = true;  // growth is doubling; tests may use +1 steps
};

struct OracleStats {
  int copies_used = 0;
};

// Exact truth value of (u, position) |= f, for f in any supported fragment
// (let definitions are expanded first). Evaluation materializes the prefix
// plus a growing number of period copies, computes per-position truth tables
// for every subformula with at most one free variable, and certifies the
// result by checking that the tables and the set of realized per-position
// profiles repeat over the last two copies. Total; throws only on malformed
// input or if the hard copy cap is exceeded (which would be a bug).
bool eval_oracle(Formula f, const LassoWord& u, const Alphabet& alpha,
                 size_t position = 0, OracleStats* stats = nullptr,
                 const OracleOptions& opts = OracleOptions{});

}  // namespace tvmc
