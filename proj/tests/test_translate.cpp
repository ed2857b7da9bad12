#include "doctest.h"

#include <random>

#include "testutil.hpp"
#include "tvmc/oracle.hpp"
#include "tvmc/parser.hpp"
#include "tvmc/rewrite.hpp"
#include "tvmc/translate.hpp"

using namespace tvmc;

namespace {

// exactly-one-member acceptance must coincide with the oracle
void check_family_against_oracle(const AutomatonFamily& fam, Formula f,
                                 const Alphabet& alpha,
                                 const std::vector<LassoWord>& lassos) {
  for (const LassoWord& u : lassos) {
    int hits = 0;
    for (const auto& m : fam.members) hits += accepts_lasso(m, u);
    bool want = eval_oracle(f, u, alpha, 0);
    CAPTURE(to_string(f));
    CAPTURE(lasso_to_string(u, alpha));
    CHECK(hits == (want ? 1 : 0));
  }
}

}  // namespace

TEST_CASE("closure automaton of F p") {
  Alphabet alpha = Alphabet::powerset({"p"});
  ClosureAutomaton ca = utl_closure_automaton_full(parse_formula("F p"), alpha);
  // the three consistent types: {p, Fp}, {!p, Fp}, {!p, !Fp}
  CHECK(ca.a.num_states() == 3);
  CHECK(ca.a.num_acc == 1);
  SccDag dag = scc_decomposition(ca.a);
  CHECK(dag.num_components() == 2);
  CHECK(check_closure_structure(ca, 2, alpha.size()) == "");
}

TEST_CASE("closure automaton initial states of a plain proposition") {
  Alphabet alpha = Alphabet::powerset({"p"});
  ClosureAutomaton ca = utl_closure_automaton_full(parse_formula("p"), alpha);
  int pletter = alpha.letter_of({intern_symbol("p")});
  for (int s : ca.a.initial) CHECK(ca.a.label[static_cast<size_t>(s)] == pletter);
  CHECK(!ca.a.initial.empty());
  // no temporal subformulas: a single component
  CHECK(scc_decomposition(ca.a).num_components() == 1);
  AutomatonFamily fam = scc_path_family(ca.a);
  CHECK(fam.size() == 1);
}

TEST_CASE("translation I: family equals the language, member by member") {
  Alphabet alpha = Alphabet::powerset({"p", "q"});
  std::vector<Formula> fs = {
      parse_formula("p"),
      parse_formula("F p"),
      parse_formula("F p & F q"),
      parse_formula("F~ q | !F p"),
      parse_formula("F (p & F q)"),
      parse_formula("!F !p"),
      parse_formula("q & F (p & F~ q)"),
  };
  std::mt19937 rng(23);
  std::vector<LassoWord> lassos;
  for (int t = 0; t < 150; t++)
    lassos.push_back(testutil::random_lasso(rng, alpha, 4, 3));
  for (Formula f : fs) {
    AutomatonFamily fam = utl_to_family(f, alpha);
    check_family_against_oracle(fam, f, alpha, lassos);
    for (const auto& m : fam.members) {
      CHECK(check_unambiguous(m));
      CHECK(check_det_in_limit(m));
    }
  }
}

TEST_CASE("translation I members: X-free state bound and degeneralization") {
  Alphabet alpha = Alphabet::powerset({"p", "q"});
  std::vector<Formula> fs = {
      parse_formula("F p & F q"),
      parse_formula("F (p & F q)"),
      parse_formula("F~ p | F q"),
  };
  for (Formula f : fs) {
    uint64_t size = measure(f).tree_size;
    AutomatonFamily fam = utl_to_family(f, alpha);
    for (const auto& m : fam.members) {
      CHECK(static_cast<uint64_t>(m.num_states()) <=
            size * static_cast<uint64_t>(alpha.size()));
      GeneralizedBuchi d = degeneralize(m);
      CHECK(d.num_states() <= m.num_states() * (m.num_acc + 1));
      std::mt19937 rng(29);
      for (int t = 0; t < 60; t++) {
        LassoWord u = testutil::random_lasso(rng, alpha, 3, 3);
        CHECK(accepts_lasso(m, u) == accepts_lasso(d, u));
      }
    }
  }
}

TEST_CASE("unambiguity: exactly one accepting run per accepted word") {
  Alphabet alpha = Alphabet::powerset({"p", "q"});
  Formula f = parse_formula("F p & F q");
  AutomatonFamily fam = utl_to_family(f, alpha);
  std::mt19937 rng(31);
  for (int t = 0; t < 100; t++) {
    LassoWord u = testutil::random_lasso(rng, alpha, 3, 3);
    for (const auto& m : fam.members) {
      long long runs = count_accepting_lasso_runs(m, u);
      CHECK(runs <= 1);
    }
  }
}

TEST_CASE("next/prev composition") {
  Alphabet alpha = Alphabet::powerset({"p"});
  std::vector<Formula> fs = {
      parse_formula("X p"),
      parse_formula("X F p"),
      parse_formula("F (p & X p)"),
      parse_formula("X~ p | F p"),
      parse_formula("F~ (X p & !p)"),
  };
  std::mt19937 rng(37);
  std::vector<LassoWord> lassos;
  for (int t = 0; t < 120; t++)
    lassos.push_back(testutil::random_lasso(rng, alpha, 3, 3));
  for (Formula f : fs) {
    AutomatonFamily fam = utl_to_family(f, alpha);
    check_family_against_oracle(fam, f, alpha, lassos);
    for (const auto& m : fam.members) {
      CHECK(check_unambiguous(m));
      CHECK(check_det_in_limit(m));
    }
  }
}

TEST_CASE("composed member size bound") {
  Alphabet alpha = Alphabet::powerset({"p"});
  Formula f = parse_formula("X F p");
  Formula g = simplify_at_origin(expand_lets(f));
  PushedForm pf = push_next_prev(g);
  int n = pf.depth;
  WindowAlphabet wa = make_window_alphabet(alpha, n);
  GeneralizedBuchi inner =
      utl_closure_automaton(shifted_atoms_to_window_props(simplify_at_origin(pf.formula)),
                            wa.window);
  AutomatonFamily fam = scc_path_family(inner);
  for (const auto& m : fam.members) {
    GeneralizedBuchi composed = nextprev_compose(m, wa);
    // steady part is at most |member|; the warmup buffer adds |Σ|+...+|Σ|^n
    int warmup = 0, pw = 1;
    for (int i = 1; i <= n; i++) {
      pw *= alpha.size();
      warmup += pw;
    }
    CHECK(composed.num_states() <= m.num_states() + warmup);
  }
}

TEST_CASE("ltl tableau") {
  Alphabet alpha = Alphabet::powerset({"p", "q"});
  Formula f = parse_formula("p U q");
  GeneralizedBuchi a = ltl_to_unambiguous_gba(f, alpha);
  CHECK(check_unambiguous(a));

  LassoWord acceptw = parse_lasso("{p} {p} {q} ({})", alpha);
  CHECK(accepts_lasso(a, acceptw));
  LassoWord rejectw = parse_lasso("({p})", alpha);
  CHECK(!accepts_lasso(a, rejectw));

  std::mt19937 rng(41);
  std::vector<Formula> fs = {
      parse_formula("p U q"),
      parse_formula("G p"),
      parse_formula("(p U q) S p"),
      parse_formula("X (p U (q S p))"),
      parse_formula("G (p -> F q)"),
      parse_formula("q U (p U q)"),
  };
  for (Formula g : fs) {
    GeneralizedBuchi b = ltl_to_unambiguous_gba(g, alpha);
    CHECK(check_unambiguous(b));
    for (int t = 0; t < 120; t++) {
      LassoWord u = testutil::random_lasso(rng, alpha, 4, 3);
      CAPTURE(to_string(g));
      CAPTURE(lasso_to_string(u, alpha));
      CHECK(accepts_lasso(b, u) == eval_oracle(g, u, alpha, 0));
    }
  }

  // G p behaves deterministically along any lasso
  GeneralizedBuchi gp = ltl_to_unambiguous_gba(parse_formula("G p"), alpha);
  for (int t = 0; t < 50; t++) {
    LassoWord u = testutil::random_lasso(rng, alpha, 3, 3);
    CHECK(count_accepting_lasso_runs(gp, u) <= 1);
  }
}

TEST_CASE("ltl tableau handles let formulas via the shared closure") {
  Alphabet alpha = Alphabet::powerset({"p", "q"});
  Formula f = parse_formula("let R(x) = p(x) & q(x) in (R U (!R & q))");
  GeneralizedBuchi a = ltl_to_unambiguous_gba(f, alpha);
  std::mt19937 rng(43);
  for (int t = 0; t < 100; t++) {
    LassoWord u = testutil::random_lasso(rng, alpha, 3, 3);
    CHECK(accepts_lasso(a, u) == eval_oracle(f, u, alpha, 0));
  }
}

TEST_CASE("fo2ltl decomposition reproduces the worked shape") {
  Formula f = parse_formula("(E y. (suc(x,y) & P1(x))) U P0");
  Fo2LtlParts parts = fo2ltl_decompose(f);
  REQUIRE(parts.fresh.size() == 3);
  int32_t r0 = parts.fresh[0], r1 = parts.fresh[1], r2 = parts.fresh[2];
  // post-order: R0 = P1(x), R1 = E y.(suc & P1), R2 = P0
  Formula expect_l = mk_and(
      mk_and(mk_until(mk_prop(r1), mk_prop(r2)),
             mk_globally(mk_iff(mk_prop(r0), mk_prop(intern_symbol("P1"))))),
      mk_globally(mk_iff(mk_prop(r2), mk_prop(intern_symbol("P0")))));
  CHECK(parts.ltl == expect_l);
  Formula expect_f = mk_forall(
      Var::X, mk_iff(mk_pred(r1, Var::X),
                     mk_exists(Var::Y, mk_and(mk_suc(Var::X), mk_pred(r0, Var::X)))));
  CHECK(parts.fo2 == expect_f);

  // degenerate cases
  Fo2LtlParts pure_ltl = fo2ltl_decompose(parse_formula("p U q"));
  CHECK(pure_ltl.fo2 == mk_true());
  Fo2LtlParts pure_fo = fo2ltl_decompose(parse_formula("E y. (x < y & p(y))"));
  CHECK(pure_fo.fo2 != mk_true());
  CHECK(classify(pure_fo.ltl).frag == Fragment::TLDD);
}

TEST_CASE("fo2ltl family agrees with the oracle") {
  Alphabet alpha = Alphabet::powerset({"P0", "P1"});
  Formula f = parse_formula("(E y. (suc(x,y) & P1(x))) U P0");
  AutomatonFamily fam = fo2ltl_family(f, alpha);
  std::mt19937 rng(47);
  std::vector<LassoWord> lassos;
  for (int t = 0; t < 100; t++)
    lassos.push_back(testutil::random_lasso(rng, alpha, 3, 3));
  check_family_against_oracle(fam, f, alpha, lassos);
  for (const auto& m : fam.members) CHECK(check_unambiguous(m));
}

TEST_CASE("fo2 family via the UTL route") {
  Alphabet alpha = Alphabet::powerset({"p"});
  std::vector<Formula> fs = {
      parse_formula("E y. p(y)"),
      parse_formula("E y. (suc(x,y) & p(y))"),
      parse_formula("A y. (y < x -> p(y))"),
  };
  std::mt19937 rng(53);
  std::vector<LassoWord> lassos;
  for (int t = 0; t < 100; t++)
    lassos.push_back(testutil::random_lasso(rng, alpha, 3, 3));
  for (Formula f : fs) {
    AutomatonFamily fam = fo2_to_family(f, alpha);
    check_family_against_oracle(fam, f, alpha, lassos);
    for (const auto& m : fam.members) {
      CHECK(check_unambiguous(m));
      CHECK(check_det_in_limit(m));
    }
  }

  // agreement formula, one bit, over a four-letter alphabet
  Alphabet ab4 = Alphabet::powerset({"b1", "c"});
  Formula agree = parse_formula("E x. E y. (x < y & (b1(x) <-> b1(y)))");
  AutomatonFamily fam = fo2_to_family(agree, ab4);
  std::vector<LassoWord> l4;
  for (int t = 0; t < 120; t++)
    l4.push_back(testutil::random_lasso(rng, ab4, 3, 2));
  check_family_against_oracle(fam, agree, ab4, l4);

  // unsatisfiable input: every member is empty
  Formula p = parse_formula("E y. p(y)");
  Formula contra = mk_and(p, mk_not(p));
  AutomatonFamily famc = fo2_to_family(contra, alpha);
  for (const auto& m : famc.members) CHECK(is_empty(m).empty);
}
