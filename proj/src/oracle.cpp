#include "tvmc/oracle.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "tvmc/fragment.hpp"
#include "tvmc/rewrite.hpp"

namespace tvmc {

namespace {

Formula canon_x(Formula f) { return (f->free_mask == 2) ? swap_vars(f) : f; }

enum class Rel : uint8_t { FarPast, Prev, Here, Next, FarFuture };

struct QPlan {
  Formula theta = nullptr;
  bool vacuous = false;       // bound variable not mentioned
  bool sentence = false;      // only the bound variable mentioned
  int sentence_port = -1;     // pindex of the body in the sentence case
  std::vector<int> xports, yports;               // pindex lists
  std::unordered_map<Formula, int> xbit, ybit;   // theta-subnode -> bit
  std::unordered_map<uint64_t, char> memo;       // (xmask,ymask,rel) -> value
};

class Eval {
 public:
  Eval(Formula root, const LassoWord& u, const Alphabet& alpha)
      : u_(u), alpha_(alpha) {
    root_ = canon_x(root);
    collect(root_);
  }

  // Evaluates with c period copies; returns false if the stabilization
  // certificate does not hold yet.
  bool run(int c) {
    m_ = static_cast<int>(u_.prefix.size());
    r_ = static_cast<int>(u_.period.size());
    L_ = m_ + c * r_;
    table_.assign(positional_.size(), std::vector<char>(L_, 0));
    for (size_t p = 0; p < positional_.size(); p++) eval_node(static_cast<int>(p));
    return stabilized();
  }

  bool value_at(int pos) const {
    return table_[static_cast<size_t>(pidx_.at(root_))][pos] != 0;
  }

 private:
  int letter(int i) const { return u_.letter_at(static_cast<size_t>(i)); }
  int wrapnext(int i) const { return i + 1 < L_ ? i + 1 : L_ - r_; }
  int wrappos(long long i) const {
    if (i < L_) return static_cast<int>(i);
    return static_cast<int>(L_ - r_ + (i - (L_ - r_)) % r_);
  }

  // -- positional formula collection -------------------------------------

  void collect_ports(Formula t, QPlan& q) {
    if (t->free_count() <= 1) {
      if (t->free_mask == 2) {
        if (!q.ybit.count(t)) {
          int pi = collect(canon_x(t));
          q.ybit.emplace(t, static_cast<int>(q.yports.size()));
          q.yports.push_back(pi);
        }
      } else {
        if (!q.xbit.count(t)) {
          int pi = collect(t);
          q.xbit.emplace(t, static_cast<int>(q.xports.size()));
          q.xports.push_back(pi);
        }
      }
      return;
    }
    switch (t->kind) {
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        for (Formula k : t->kids) collect_ports(k, q);
        return;
      case Kind::Less:
      case Kind::Eq:
      case Kind::Suc:
        return;
      default:
        throw std::logic_error("oracle: two free variables under " + to_string(t));
    }
  }

  int collect(Formula f) {
    f = canon_x(f);
    auto it = pidx_.find(f);
    if (it != pidx_.end()) return it->second;
    if (f->free_count() > 1)
      throw std::logic_error("oracle: not a positional formula: " + to_string(f));
    QPlan q;
    if (f->is(Kind::Exists)) {
      Formula theta = f->kid(0);
      uint8_t qbit = (f->var == Var::X) ? 1 : 2;
      q.theta = theta;
      if (!(theta->free_mask & qbit)) {
        q.vacuous = true;
        q.sentence_port = collect(canon_x(theta));
      } else if (theta->free_count() <= 1) {
        q.sentence = true;
        q.sentence_port = collect(canon_x(theta));
      } else {
        if (f->var != Var::Y)
          throw std::logic_error("oracle: canonical quantifier should bind y");
        collect_ports(theta, q);
        if (q.xports.size() > 32 || q.yports.size() > 32)
          throw std::runtime_error("oracle: too many quantifier ports");
      }
    } else {
      for (Formula k : f->kids) collect(k);
    }
    int id = static_cast<int>(positional_.size());
    positional_.push_back(f);
    plans_.push_back(std::move(q));
    pidx_.emplace(f, id);
    return id;
  }

  // -- evaluation ---------------------------------------------------------

  const std::vector<char>& vals(Formula f) const {
    return table_[static_cast<size_t>(pidx_.at(canon_x(f)))];
  }

  void eval_node(int p) {
    Formula f = positional_[static_cast<size_t>(p)];
    std::vector<char>& out = table_[static_cast<size_t>(p)];
    switch (f->kind) {
      case Kind::True:
        out.assign(static_cast<size_t>(L_), 1);
        break;
      case Kind::False:
        break;
      case Kind::Prop: {
        for (int i = 0; i < L_; i++) {
          long long j = static_cast<long long>(i) + f->shift;
          out[static_cast<size_t>(i)] =
              j >= 0 && alpha_.holds(letter(wrappos(j)), f->sym);
        }
        break;
      }
      case Kind::Guard:
        for (int i = 0; i < L_; i++)
          out[static_cast<size_t>(i)] = (i + f->shift >= 0);
        break;
      case Kind::Pred:
        for (int i = 0; i < L_; i++)
          out[static_cast<size_t>(i)] = alpha_.holds(letter(i), f->sym);
        break;
      case Kind::Not: {
        const auto& a = vals(f->kid(0));
        for (int i = 0; i < L_; i++) out[static_cast<size_t>(i)] = !a[static_cast<size_t>(i)];
        break;
      }
      case Kind::And: {
        const auto& a = vals(f->kid(0));
        const auto& b = vals(f->kid(1));
        for (int i = 0; i < L_; i++)
          out[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] && b[static_cast<size_t>(i)];
        break;
      }
      case Kind::Or: {
        const auto& a = vals(f->kid(0));
        const auto& b = vals(f->kid(1));
        for (int i = 0; i < L_; i++)
          out[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] || b[static_cast<size_t>(i)];
        break;
      }
      case Kind::Next: {
        const auto& a = vals(f->kid(0));
        for (int i = 0; i < L_; i++)
          out[static_cast<size_t>(i)] = a[static_cast<size_t>(wrapnext(i))];
        break;
      }
      case Kind::Prev: {
        const auto& a = vals(f->kid(0));
        for (int i = 1; i < L_; i++)
          out[static_cast<size_t>(i)] = a[static_cast<size_t>(i - 1)];
        break;
      }
      case Kind::Ev: {
        const auto& a = vals(f->kid(0));
        char cyc = 0;
        for (int i = L_ - r_; i < L_; i++) cyc |= a[static_cast<size_t>(i)];
        for (int i = L_ - r_; i < L_; i++) out[static_cast<size_t>(i)] = cyc;
        for (int i = L_ - r_ - 1; i >= 0; i--)
          out[static_cast<size_t>(i)] =
              a[static_cast<size_t>(i)] || out[static_cast<size_t>(i + 1)];
        break;
      }
      case Kind::PastEv: {
        const auto& a = vals(f->kid(0));
        char acc = 0;
        for (int i = 0; i < L_; i++) {
          acc |= a[static_cast<size_t>(i)];
          out[static_cast<size_t>(i)] = acc;
        }
        break;
      }
      case Kind::Until: {
        const auto& a = vals(f->kid(0));
        const auto& b = vals(f->kid(1));
        for (int pass = 0; pass < 2; pass++) {
          for (int i = L_ - 1; i >= L_ - r_; i--) {
            char nx = out[static_cast<size_t>(wrapnext(i))];
            out[static_cast<size_t>(i)] =
                b[static_cast<size_t>(i)] || (a[static_cast<size_t>(i)] && nx);
          }
        }
        for (int i = L_ - r_ - 1; i >= 0; i--)
          out[static_cast<size_t>(i)] =
              b[static_cast<size_t>(i)] ||
              (a[static_cast<size_t>(i)] && out[static_cast<size_t>(i + 1)]);
        break;
      }
      case Kind::Since: {
        const auto& a = vals(f->kid(0));
        const auto& b = vals(f->kid(1));
        char prev = 0;
        for (int i = 0; i < L_; i++) {
          prev = b[static_cast<size_t>(i)] || (a[static_cast<size_t>(i)] && prev);
          out[static_cast<size_t>(i)] = prev;
        }
        break;
      }
      case Kind::Exists:
        eval_exists(p);
        break;
      default:
        throw std::logic_error("oracle: unexpected node " + to_string(f));
    }
  }

  void eval_exists(int p) {
    QPlan& q = plans_[static_cast<size_t>(p)];
    std::vector<char>& out = table_[static_cast<size_t>(p)];
    if (q.vacuous) {
      out = table_[static_cast<size_t>(q.sentence_port)];
      return;
    }
    if (q.sentence) {
      // Some position satisfies the body; position-independent.
      const auto& a = table_[static_cast<size_t>(q.sentence_port)];
      char any = 0;
      for (int i = 0; i < L_; i++) any |= a[static_cast<size_t>(i)];
      out.assign(static_cast<size_t>(L_), any);
      return;
    }

    // Projected port masks per position.
    std::vector<uint32_t> xmask(static_cast<size_t>(L_), 0);
    std::vector<uint32_t> ymask(static_cast<size_t>(L_), 0);
    for (size_t b = 0; b < q.xports.size(); b++) {
      const auto& t = table_[static_cast<size_t>(q.xports[b])];
      for (int i = 0; i < L_; i++)
        if (t[static_cast<size_t>(i)]) xmask[static_cast<size_t>(i)] |= 1u << b;
    }
    for (size_t b = 0; b < q.yports.size(); b++) {
      const auto& t = table_[static_cast<size_t>(q.yports[b])];
      for (int i = 0; i < L_; i++)
        if (t[static_cast<size_t>(i)]) ymask[static_cast<size_t>(i)] |= 1u << b;
    }

    // Availability of y-masks for the far cases.
    std::unordered_map<uint32_t, int> firstpos, lastpos;
    std::unordered_set<uint32_t> in_last_copy;
    for (int i = 0; i < L_; i++) {
      uint32_t mk = ymask[static_cast<size_t>(i)];
      if (!firstpos.count(mk)) firstpos.emplace(mk, i);
      lastpos[mk] = i;
      if (i >= L_ - r_) in_last_copy.insert(mk);
    }

    auto ev = [&](uint32_t xm, uint32_t ym, Rel rel) {
      uint64_t key = (static_cast<uint64_t>(xm) << 35) ^
                     (static_cast<uint64_t>(ym) << 3) ^ static_cast<uint64_t>(rel);
      auto it = q.memo.find(key);
      if (it != q.memo.end()) return it->second != 0;
      char v = eval2(q, q.theta, xm, ym, rel) ? 1 : 0;
      q.memo.emplace(key, v);
      return v != 0;
    };

    for (int i = 0; i < L_; i++) {
      uint32_t xm = xmask[static_cast<size_t>(i)];
      bool v = ev(xm, ymask[static_cast<size_t>(i)], Rel::Here);
      if (!v && i > 0) v = ev(xm, ymask[static_cast<size_t>(i - 1)], Rel::Prev);
      if (!v) v = ev(xm, ymask[static_cast<size_t>(wrapnext(i))], Rel::Next);
      if (!v) {
        for (const auto& [mk, fp] : firstpos) {
          if (fp <= i - 2 && ev(xm, mk, Rel::FarPast)) {
            v = true;
            break;
          }
        }
      }
      if (!v) {
        for (const auto& [mk, lp] : lastpos) {
          if ((lp >= i + 2 || in_last_copy.count(mk)) &&
              ev(xm, mk, Rel::FarFuture)) {
            v = true;
            break;
          }
        }
      }
      out[static_cast<size_t>(i)] = v;
    }
  }

  bool eval2(const QPlan& q, Formula t, uint32_t xm, uint32_t ym, Rel rel) {
    if (t->free_count() <= 1) {
      if (t->free_mask == 2) return (ym >> q.ybit.at(t)) & 1;
      return (xm >> q.xbit.at(t)) & 1;
    }
    switch (t->kind) {
      case Kind::Not:
        return !eval2(q, t->kid(0), xm, ym, rel);
      case Kind::And:
        return eval2(q, t->kid(0), xm, ym, rel) && eval2(q, t->kid(1), xm, ym, rel);
      case Kind::Or:
        return eval2(q, t->kid(0), xm, ym, rel) || eval2(q, t->kid(1), xm, ym, rel);
      case Kind::Eq:
        return rel == Rel::Here;
      case Kind::Less: {
        bool future = rel == Rel::Next || rel == Rel::FarFuture;
        bool past = rel == Rel::Prev || rel == Rel::FarPast;
        return (t->var == Var::X) ? future : past;
      }
      case Kind::Suc:
        return (t->var == Var::X) ? rel == Rel::Next : rel == Rel::Prev;
      default:
        throw std::logic_error("oracle: unexpected node in quantifier body");
    }
  }

  // -- stabilization ------------------------------------------------------

  bool stabilized() const {
    if (L_ < 2 * r_ + 1) return false;
    for (const auto& t : table_) {
      for (int off = 0; off < r_; off++) {
        if (t[static_cast<size_t>(L_ - 2 * r_ + off)] !=
            t[static_cast<size_t>(L_ - r_ + off)])
          return false;
      }
    }
    // No new joint profile may appear in the second-to-last copy.
    std::set<std::vector<char>> seen;
    for (int i = 0; i < L_ - 2 * r_; i++) seen.insert(profile(i));
    for (int i = L_ - 2 * r_; i < L_ - r_; i++) {
      if (!seen.count(profile(i))) return false;
    }
    return true;
  }

  std::vector<char> profile(int i) const {
    std::vector<char> v(positional_.size());
    for (size_t p = 0; p < positional_.size(); p++)
      v[p] = table_[p][static_cast<size_t>(i)];
    return v;
  }

  const LassoWord& u_;
  const Alphabet& alpha_;
  Formula root_;
  int m_ = 0, r_ = 0, L_ = 0;
  std::vector<Formula> positional_;
  std::vector<QPlan> plans_;
  std::unordered_map<Formula, int> pidx_;
  std::vector<std::vector<char>> table_;
};

}  // namespace

bool eval_oracle(Formula f, const LassoWord& u, const Alphabet& alpha,
                 size_t position, OracleStats* stats,
                 const OracleOptions& opts) {
  if (u.period.empty()) throw std::invalid_argument("lasso period is empty");
  Formula g = expand_lets(f);
  if (g->free_count() > 1)
    throw std::invalid_argument("oracle: formula must have at most one free variable");
  Eval ev(g, u, alpha);
  int m = static_cast<int>(u.prefix.size());
  int r = static_cast<int>(u.period.size());
  // Enough copies that the queried position sits before the certificate zone.
  int need = static_cast<int>(position) + 1 - m;
  int c0 = opts.start_copies;
  while (m + (c0 - 2) * r < need + 1) c0++;
  for (int c = c0; c <= opts.max_copies; c = opts.double_growth ? c * 2 : c + 1) {
    if (ev.run(c)) {
      if (stats) stats->copies_used = c;
      return ev.value_at(static_cast<int>(position));
    }
  }
  throw std::logic_error(
      "oracle failed to stabilize within the copy cap; this is a bug");
}

}  // namespace tvmc
