#include "tvmc/ktype.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace tvmc {

int TypeRegistry::set_id(const std::vector<int>& sorted_ids) {
  auto it = sets_.find(sorted_ids);
  if (it != sets_.end()) return it->second;
  int id = static_cast<int>(sets_.size());
  sets_.emplace(sorted_ids, id);
  return id;
}

int TypeRegistry::type_id(int letter, int lset, int rset) {
  auto key = std::make_tuple(letter, lset, rset);
  auto it = types_.find(key);
  if (it != types_.end()) return it->second;
  int id = static_cast<int>(types_.size());
  types_.emplace(key, id);
  return id;
}

std::vector<int> TypeRegistry::label(const Word& u, int k, const Alphabet&) {
  size_t n = u.size();
  std::vector<int> cur(n);
  for (size_t i = 0; i < n; i++) cur[i] = type_id(u[i], -1, -1);
  for (int m = 1; m <= k; m++) {
    std::vector<int> lid(n), rid(n);
    {
      std::set<int> acc;
      for (size_t i = 0; i < n; i++) {
        lid[i] = set_id(std::vector<int>(acc.begin(), acc.end()));
        acc.insert(cur[i]);
      }
    }
    {
      std::set<int> acc;
      for (size_t ii = n; ii-- > 0;) {
        rid[ii] = set_id(std::vector<int>(acc.begin(), acc.end()));
        acc.insert(cur[ii]);
      }
    }
    std::vector<int> nxt(n);
    for (size_t i = 0; i < n; i++) nxt[i] = type_id(u[i], lid[i], rid[i]);
    cur.swap(nxt);
  }
  return cur;
}

int TypeRegistry::signature(const Word& u, int k, const Alphabet& alpha) {
  if (u.empty()) return -1;
  return label(u, k, alpha)[0];
}

bool ktype_equiv(const Word& u, const Word& v, int k, const Alphabet& alpha) {
  TypeRegistry reg;
  return reg.signature(u, k, alpha) == reg.signature(v, k, alpha);
}

Word ktype_collapse(const Word& u, int k, const Alphabet& alpha) {
  TypeRegistry reg;
  Word cur = u;
  for (;;) {
    std::vector<int> types = reg.label(cur, k, alpha);
    std::map<int, size_t> first;
    size_t cut_i = cur.size(), cut_j = cur.size();
    for (size_t j = 0; j < cur.size(); j++) {
      auto it = first.find(types[j]);
      if (it != first.end()) {
        cut_i = it->second;
        cut_j = j;
        break;
      }
      first.emplace(types[j], j);
    }
    if (cut_j == cur.size()) return cur;
    // positions cut_i < cut_j share a k-type: drop (cut_i, cut_j]
    Word next(cur.begin(), cur.begin() + static_cast<long>(cut_i) + 1);
    next.insert(next.end(), cur.begin() + static_cast<long>(cut_j) + 1, cur.end());
    cur.swap(next);
  }
}

Word lar(const Word& u) {
  Word out;
  for (size_t i = 0; i < u.size(); i++) {
    bool last = true;
    for (size_t j = i + 1; j < u.size(); j++) {
      if (u[j] == u[i]) {
        last = false;
        break;
      }
    }
    if (last) out.push_back(u[i]);
  }
  return out;
}

KTypeTable::KTypeTable(const Alphabet& alpha, int k, uint64_t budget)
    : alpha_(alpha), k_(k) {
  std::deque<Word> queue;
  Word empty;
  by_signature_.emplace(reg_.signature(empty, k_, alpha_), 0);
  reps_.push_back(empty);
  queue.push_back(empty);
  uint64_t candidates = 0;
  while (!queue.empty()) {
    Word w = queue.front();
    queue.pop_front();
    for (int a = 0; a < alpha_.size(); a++) {
      if (++candidates > budget)
        throw BudgetExceeded("representative enumeration budget exceeded");
      Word wa = w;
      wa.push_back(a);
      Word c = ktype_collapse(wa, k_, alpha_);
      int sig = reg_.signature(c, k_, alpha_);
      if (by_signature_.count(sig)) continue;
      by_signature_.emplace(sig, static_cast<int>(reps_.size()));
      reps_.push_back(c);
      queue.push_back(c);
    }
  }
}

int KTypeTable::rep_index_of(const Word& u) {
  Word c = ktype_collapse(u, k_, alpha_);
  int sig = reg_.signature(c, k_, alpha_);
  auto it = by_signature_.find(sig);
  if (it == by_signature_.end())
    throw std::logic_error("word type outside the representative table");
  return it->second;
}

uint64_t KTypeTable::length_bound() const {
  uint64_t b = static_cast<uint64_t>(alpha_.size());
  uint64_t base = 2ull * static_cast<uint64_t>(alpha_.size()) + 2ull;
  for (int i = 0; i < k_; i++) b *= base;
  return b;
}

}  // namespace tvmc
