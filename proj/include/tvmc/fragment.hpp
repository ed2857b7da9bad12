#pragma once

#include <optional>
#include <string>

#include "tvmc/formula.hpp"

namespace tvmc {

// Syntactic fragments, ordered by syntax inclusion along two chains:
//   TLDD <= UTL <= LTL <= FO2LTL   and   FO2LT <= FO2 <= FO2LTL.
enum class Fragment : uint8_t { TLDD, UTL, LTL, FO2LT, FO2, FO2LTL };

struct FragmentInfo {
  Fragment frag = Fragment::TLDD;
  bool with_let = false;

  bool operator==(const FragmentInfo& o) const {
    return frag == o.frag && with_let == o.with_let;
  }
};

// Least fragment whose grammar contains f.
FragmentInfo classify(Formula f);

// Syntax inclusion; Let-free formulas fit Let-flagged expectations.
bool fragment_leq(FragmentInfo a, FragmentInfo b);

const char* fragment_name(Fragment f);
std::optional<Fragment> fragment_from_name(const std::string& s);

// Checks the well-formedness rules that the node constructors cannot enforce:
// temporal operators applied only to formulas with at most one free variable,
// let bodies with free variables among {x} and no free occurrence of the
// predicate being defined. Returns an error message, or nullopt if fine.
std::optional<std::string> validate(Formula f);

}  // namespace tvmc
