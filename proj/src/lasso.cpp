#include "tvmc/lasso.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tvmc {

Alphabet::Alphabet(std::vector<int32_t> props, std::vector<uint32_t> letters,
                   bool unary)
    : props_(std::move(props)), letters_(std::move(letters)), unary_(unary) {
  if (letters_.empty()) throw std::invalid_argument("alphabet must be non-empty");
  if (unary_) {
    for (uint32_t b : letters_) {
      if (__builtin_popcount(b) != 1)
        throw std::invalid_argument(
            "unary alphabet letters must hold exactly one proposition");
    }
  }
}

Alphabet Alphabet::powerset(const std::vector<std::string>& prop_names) {
  std::vector<int32_t> ps;
  for (const auto& n : prop_names) ps.push_back(intern_symbol(n));
  std::vector<uint32_t> ls;
  for (uint32_t b = 0; b < (1u << prop_names.size()); b++) ls.push_back(b);
  return Alphabet(std::move(ps), std::move(ls), false);
}

Alphabet Alphabet::unary(const std::vector<std::string>& prop_names) {
  std::vector<int32_t> ps;
  for (const auto& n : prop_names) ps.push_back(intern_symbol(n));
  std::vector<uint32_t> ls;
  for (size_t i = 0; i < prop_names.size(); i++) ls.push_back(1u << i);
  return Alphabet(std::move(ps), std::move(ls), true);
}

bool Alphabet::holds(int letter, int32_t prop_sym) const {
  for (size_t i = 0; i < props_.size(); i++) {
    if (props_[i] == prop_sym)
      return (letters_[static_cast<size_t>(letter)] >> i) & 1;
  }
  return false;  // unknown propositions are false everywhere
}

int Alphabet::letter_of(const std::vector<int32_t>& prop_syms) const {
  uint32_t b = 0;
  for (int32_t s : prop_syms) {
    bool found = false;
    for (size_t i = 0; i < props_.size(); i++) {
      if (props_[i] == s) {
        b |= 1u << i;
        found = true;
        break;
      }
    }
    if (!found) return -1;
  }
  return letter_of_bits(b);
}

int Alphabet::letter_of_bits(uint32_t bits) const {
  for (size_t i = 0; i < letters_.size(); i++) {
    if (letters_[i] == bits) return static_cast<int>(i);
  }
  return -1;
}

std::string Alphabet::letter_name(int letter) const {
  uint32_t b = bits(letter);
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < props_.size(); i++) {
    if ((b >> i) & 1) {
      if (!first) out += ' ';
      out += symbol_name(props_[i]);
      first = false;
    }
  }
  out += '}';
  return out;
}

namespace {

std::vector<std::string> letter_tokens(const std::string& s, size_t& i) {
  // one brace-set or one identifier starting at i (whitespace already skipped)
  std::vector<std::string> props;
  if (s[i] == '{') {
    i++;
    std::string cur;
    while (i < s.size() && s[i] != '}') {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        if (!cur.empty()) props.push_back(cur), cur.clear();
      } else {
        cur += s[i];
      }
      i++;
    }
    if (i >= s.size()) throw std::invalid_argument("unterminated '{' in lasso");
    if (!cur.empty()) props.push_back(cur);
    i++;  // '}'
    return props;
  }
  std::string cur;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                          s[i] == '_' || s[i] == '\'')) {
    cur += s[i];
    i++;
  }
  if (cur.empty()) throw std::invalid_argument("bad letter in lasso literal");
  props.push_back(cur);
  return props;
}

}  // namespace

LassoWord parse_lasso(const std::string& text, const Alphabet& alpha) {
  bool compact = text.find('{') == std::string::npos &&
                 text.find(' ') == std::string::npos;
  LassoWord u;
  bool in_period = false;
  bool closed = false;
  size_t i = 0;
  auto push = [&](int letter, const std::string& what) {
    if (closed)
      throw std::invalid_argument("letters after the period in lasso literal");
    if (letter < 0)
      throw std::invalid_argument("letter " + what + " not in the alphabet");
    (in_period ? u.period : u.prefix).push_back(letter);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      i++;
      continue;
    }
    if (c == '(') {
      if (in_period) throw std::invalid_argument("nested '(' in lasso literal");
      in_period = true;
      i++;
      continue;
    }
    if (c == ')') {
      if (!in_period) throw std::invalid_argument("unmatched ')' in lasso literal");
      in_period = false;
      closed = true;
      i++;
      continue;
    }
    if (compact && std::isalnum(static_cast<unsigned char>(c))) {
      std::string name(1, c);
      push(alpha.letter_of({intern_symbol(name)}), name);
      i++;
      continue;
    }
    std::vector<std::string> props = letter_tokens(text, i);
    std::vector<int32_t> syms;
    std::string what = "{";
    for (const auto& p : props) {
      syms.push_back(intern_symbol(p));
      what += p + " ";
    }
    what += "}";
    push(alpha.letter_of(syms), what);
  }
  // letters after the closing ')' are rejected above via in_period toggling;
  // a literal without parentheses denotes a pure period repeated forever.
  if (u.period.empty()) {
    if (u.prefix.empty())
      throw std::invalid_argument("lasso literal needs a non-empty period");
    u.period = u.prefix;
    u.prefix.clear();
  }
  return u;
}

std::string lasso_to_string(const LassoWord& u, const Alphabet& alpha) {
  std::string out;
  for (int l : u.prefix) out += alpha.letter_name(l) + " ";
  out += "(";
  bool first = true;
  for (int l : u.period) {
    if (!first) out += ' ';
    out += alpha.letter_name(l);
    first = false;
  }
  out += ")";
  return out;
}

}  // namespace tvmc
