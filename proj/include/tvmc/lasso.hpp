#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvmc/formula.hpp"

namespace tvmc {

// Finite letter universe: a set of proposition symbols and a set of letters,
// each letter a subset of the propositions.
class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<int32_t> props, std::vector<uint32_t> letters,
           bool unary = false);

  // Convenience: full powerset alphabet over the given proposition names.
  static Alphabet powerset(const std::vector<std::string>& prop_names);
  // Unary-restricted alphabet: one letter per proposition.
  static Alphabet unary(const std::vector<std::string>& prop_names);

  int size() const { return static_cast<int>(letters_.size()); }
  int num_props() const { return static_cast<int>(props_.size()); }
  const std::vector<int32_t>& props() const { return props_; }
  bool is_unary() const { return unary_; }

  bool holds(int letter, int32_t prop_sym) const;
  uint32_t bits(int letter) const { return letters_[static_cast<size_t>(letter)]; }

  // Letter id for a given proposition set; -1 if absent.
  int letter_of(const std::vector<int32_t>& prop_syms) const;
  int letter_of_bits(uint32_t bits) const;

  std::string letter_name(int letter) const;

  bool operator==(const Alphabet& o) const {
    return props_ == o.props_ && letters_ == o.letters_ && unary_ == o.unary_;
  }

 private:
  std::vector<int32_t> props_;     // proposition symbols
  std::vector<uint32_t> letters_;  // bit i set <=> props_[i] in the letter
  bool unary_ = false;
};

// Ultimately periodic word v . w^omega over an Alphabet.
struct LassoWord {
  std::vector<int> prefix;  // letter ids, possibly empty
  std::vector<int> period;  // letter ids, non-empty

  int letter_at(size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return period[(i - prefix.size()) % period.size()];
  }
  size_t total() const { return prefix.size() + period.size(); }
};

// Lasso literal syntax: "ab(ba)" for single-character letters, or
// "{p q} ({p})" with brace-sets / space-separated identifiers. An identifier
// denotes the singleton letter {p}; "{}" is the empty letter.
LassoWord parse_lasso(const std::string& text, const Alphabet& alpha);
std::string lasso_to_string(const LassoWord& u, const Alphabet& alpha);

}  // namespace tvmc
