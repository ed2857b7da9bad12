#pragma once

#include <cstdint>
#include <stdexcept>
#include <map>
#include <vector>

#include "tvmc/lasso.hpp"

namespace tvmc {

using Word = std::vector<int>;  // finite sequence of letter ids

// Canonical interning of k-types. A level-0 type is the letter; a level-m
// type is (letter, set of level-(m-1) types strictly left, set strictly
// right). Ids are stable within one registry.
class TypeRegistry {
 public:
  // Per-position type ids of u at level k.
  std::vector<int> label(const Word& u, int k, const Alphabet& alpha);

  // Type id of position 0 at level k; -1 for the empty word.
  int signature(const Word& u, int k, const Alphabet& alpha);

 private:
  int type_id(int letter, int lset, int rset);
  int set_id(const std::vector<int>& sorted_ids);

  std::map<std::tuple<int, int, int>, int> types_;
  std::map<std::vector<int>, int> sets_;
};

// u ~_k v: agreement on all order-only two-variable formulas of quantifier
// depth at most k at position 0. Decided by the 2k-pass type labelling.
bool ktype_equiv(const Word& u, const Word& v, int k, const Alphabet& alpha);

// Shortens u by cutting between equal k-type positions until all positions
// carry distinct k-types; the result is ~_k-equivalent to u.
Word ktype_collapse(const Word& u, int k, const Alphabet& alpha);

// Last appearance record: keeps only the final occurrence of each letter.
Word lar(const Word& u);

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One canonical word per ~_k class, built by closing {empty} under one-letter
// extensions with eager collapsing.
class KTypeTable {
 public:
  KTypeTable(const Alphabet& alpha, int k, uint64_t budget = 1000000);

  const Alphabet& alphabet() const { return alpha_; }
  int k() const { return k_; }
  const std::vector<Word>& reps() const { return reps_; }

  // Index of the representative ~_k-equivalent to u.
  int rep_index_of(const Word& u);

  // Largest admissible representative length.
  uint64_t length_bound() const;

 private:
  Alphabet alpha_;
  int k_;
  TypeRegistry reg_;
  std::vector<Word> reps_;
  std::map<int, int> by_signature_;  // signature -> rep index
};

}  // namespace tvmc
