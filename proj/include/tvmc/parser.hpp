#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tvmc/formula.hpp"
#include "tvmc/fragment.hpp"

namespace tvmc {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p)
      : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"),
        pos(p) {}
};

// Parses the concrete syntax. Grammar tokens: identifiers; X X~ F F~ G; U S;
// ! & | -> <->; E x. / A y. ...; x < y, x = y, x <= y, suc(x,y), p(x);
// let R(x) = ... in ...; true/false; parentheses.
// Precedence: unary > U/S > & > | > -> > <->.
//
// If `expected` is given, rejects formulas whose least containing fragment is
// not included in it.
Formula parse_formula(const std::string& text,
                      std::optional<FragmentInfo> expected = std::nullopt);

}  // namespace tvmc
