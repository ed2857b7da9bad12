#include "doctest.h"

#include <random>
#include <set>

#include "testutil.hpp"
#include "tvmc/ktype.hpp"
#include "tvmc/oracle.hpp"
#include "tvmc/parser.hpp"

using namespace tvmc;

namespace {

std::vector<Word> words_up_to(const Alphabet& a, int maxlen) {
  std::vector<Word> out = {{}};
  size_t start = 0;
  for (int len = 1; len <= maxlen; len++) {
    size_t end = out.size();
    for (size_t i = start; i < end; i++) {
      for (int l = 0; l < a.size(); l++) {
        Word w = out[i];
        w.push_back(l);
        out.push_back(w);
      }
    }
    start = end;
  }
  return out;
}

}  // namespace

TEST_CASE("ktype_equiv basic cases") {
  Alphabet ab = Alphabet::unary({"a", "b"});
  Word a = {0}, b = {1}, ab_w = {0, 1}, ba = {1, 0}, abb = {0, 1, 1};

  CHECK(ktype_equiv(a, a, 3, ab));
  CHECK(!ktype_equiv(ab_w, ba, 0, ab));
  CHECK(ktype_equiv(ab_w, abb, 0, ab));
  // "abb" ~_1 "ab": letter a at 0, empty left set, right 0-types {b} vs {b}
  CHECK(ktype_equiv(abb, ab_w, 1, ab));
  CHECK(!ktype_equiv(abb, ba, 1, ab));
  CHECK(!ktype_equiv({}, a, 0, ab));
}

TEST_CASE("ktype_equiv is an equivalence relation on samples") {
  Alphabet ab = Alphabet::unary({"a", "b"});
  auto words = words_up_to(ab, 4);
  std::mt19937 rng(9);
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int t = 0; t < 200; t++) {
    const Word& u = words[pick(rng)];
    const Word& v = words[pick(rng)];
    const Word& w = words[pick(rng)];
    CHECK(ktype_equiv(u, u, 1, ab));
    CHECK(ktype_equiv(u, v, 1, ab) == ktype_equiv(v, u, 1, ab));
    if (ktype_equiv(u, v, 1, ab) && ktype_equiv(v, w, 1, ab))
      CHECK(ktype_equiv(u, w, 1, ab));
  }
}

namespace {

// Brute-force finite-word evaluation of order-only two-variable formulas,
// independent of both the lasso oracle and the type machinery.
bool finite_eval(Formula f, const Word& u, const Alphabet& a, int xi, int yi) {
  switch (f->kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Pred: {
      int pos = f->var == Var::X ? xi : yi;
      return a.holds(u[static_cast<size_t>(pos)], f->sym);
    }
    case Kind::Less: {
      int l = f->var == Var::X ? xi : yi;
      int r = f->var == Var::X ? yi : xi;
      return l < r;
    }
    case Kind::Eq: return xi == yi;
    case Kind::Not: return !finite_eval(f->kid(0), u, a, xi, yi);
    case Kind::And:
      return finite_eval(f->kid(0), u, a, xi, yi) &&
             finite_eval(f->kid(1), u, a, xi, yi);
    case Kind::Or:
      return finite_eval(f->kid(0), u, a, xi, yi) ||
             finite_eval(f->kid(1), u, a, xi, yi);
    case Kind::Exists: {
      for (int j = 0; j < static_cast<int>(u.size()); j++) {
        int nx = f->var == Var::X ? j : xi;
        int ny = f->var == Var::Y ? j : yi;
        if (finite_eval(f->kid(0), u, a, nx, ny)) return true;
      }
      return false;
    }
    default:
      throw std::logic_error("finite_eval: unsupported node");
  }
}

}  // namespace

TEST_CASE("~_1 at position 0 matches brute-force formula agreement") {
  // Over a unary alphabet the 1-type of position 0 is determined by the
  // letter there and the set of letters occurring later, so this family of
  // depth-1 formulas is complete: agreement on it is exactly ~_1.
  Alphabet ab = Alphabet::unary({"a", "b"});
  std::vector<Formula> family = {
      parse_formula("a(x)"),
      parse_formula("b(x)"),
      parse_formula("E y. (x < y & a(y))"),
      parse_formula("E y. (x < y & b(y))"),
  };
  auto words = words_up_to(ab, 3);
  for (const Word& u : words) {
    for (const Word& v : words) {
      if (u.empty() || v.empty()) continue;
      bool agree = true;
      for (Formula f : family)
        agree &= finite_eval(f, u, ab, 0, 0) == finite_eval(f, v, ab, 0, 0);
      CHECK(ktype_equiv(u, v, 1, ab) == agree);
    }
  }
}

TEST_CASE("collapse") {
  Alphabet ab = Alphabet::unary({"a", "b"});
  Word aaaa = {0, 0, 0, 0};
  CHECK(ktype_collapse(aaaa, 0, ab) == Word{0});

  Word abw = {0, 1};
  CHECK(ktype_collapse(abw, 1, ab) == abw);  // already type-distinct

  std::mt19937 rng(13);
  auto words = words_up_to(ab, 6);
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int t = 0; t < 100; t++) {
    const Word& u = words[pick(rng)];
    for (int k = 0; k <= 2; k++) {
      Word c = ktype_collapse(u, k, ab);
      CHECK(ktype_equiv(u, c, k, ab));
      CHECK(c.size() <= u.size());
    }
  }
}

TEST_CASE("lar") {
  Alphabet ab = Alphabet::unary({"a", "b", "c"});
  CHECK(lar({0, 1, 2, 0}) == Word({1, 2, 0}));
  CHECK(lar({0, 0, 0}) == Word({0}));
  CHECK(lar({}) == Word{});
  std::mt19937 rng(17);
  for (int t = 0; t < 50; t++) {
    Word u;
    std::uniform_int_distribution<int> letter(0, 2);
    std::uniform_int_distribution<int> len(0, 8);
    int n = len(rng);
    for (int i = 0; i < n; i++) u.push_back(letter(rng));
    Word l = lar(u);
    // subsequence with the same range
    std::set<int> ru(u.begin(), u.end()), rl(l.begin(), l.end());
    CHECK(ru == rl);
    CHECK(rl.size() == l.size());  // each letter once
  }
}

TEST_CASE("representatives: k=0 over {a,b}") {
  Alphabet ab = Alphabet::unary({"a", "b"});
  KTypeTable t(ab, 0);
  // {epsilon, a-starting, b-starting}: brute-force pairwise ~_0 over short
  // words confirms three classes.
  CHECK(t.reps().size() == 3);
  auto words = words_up_to(ab, 2);
  std::set<int> classes;
  for (const Word& w : words) classes.insert(t.rep_index_of(w));
  CHECK(classes.size() == 3);
}

TEST_CASE("representatives partition words and satisfy the length bound") {
  for (int k = 0; k <= 2; k++) {
    Alphabet ab = Alphabet::unary({"a", "b"});
    KTypeTable t(ab, k);
    for (const Word& r : t.reps())
      CHECK(r.size() <= t.length_bound());
    auto words = words_up_to(ab, 6);
    for (const Word& w : words) {
      int idx = t.rep_index_of(w);
      CHECK(ktype_equiv(w, t.reps()[static_cast<size_t>(idx)], k, ab));
      // exactly one representative is equivalent
      int hits = 0;
      for (const Word& r : t.reps())
        if (ktype_equiv(w, r, k, ab)) hits++;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("representatives: k=1 single letter alphabet") {
  Alphabet a1 = Alphabet::unary({"a"});
  KTypeTable t(a1, 1);
  // brute force over lengths <= 4: classes of words over {a} under ~_1
  auto words = words_up_to(a1, 4);
  std::set<int> classes;
  for (const Word& w : words) classes.insert(t.rep_index_of(w));
  CHECK(classes.size() == t.reps().size());
  // pairwise distinct representatives
  for (size_t i = 0; i < t.reps().size(); i++) {
    for (size_t j = i + 1; j < t.reps().size(); j++) {
      CHECK(!ktype_equiv(t.reps()[i], t.reps()[j], 1, a1));
    }
  }
}

TEST_CASE("composition: ~_k is a congruence for concatenation") {
  Alphabet ab = Alphabet::unary({"a", "b"});
  auto words = words_up_to(ab, 4);
  std::mt19937 rng(21);
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  int found = 0;
  for (int t = 0; t < 3000 && found < 60; t++) {
    const Word& u = words[pick(rng)];
    const Word& v = words[pick(rng)];
    const Word& u2 = words[pick(rng)];
    const Word& v2 = words[pick(rng)];
    if (!ktype_equiv(u, v, 1, ab) || !ktype_equiv(u2, v2, 1, ab)) continue;
    found++;
    Word uv = u;
    uv.insert(uv.end(), u2.begin(), u2.end());
    Word vv = v;
    vv.insert(vv.end(), v2.begin(), v2.end());
    CHECK(ktype_equiv(uv, vv, 1, ab));
  }
  CHECK(found >= 30);
}
