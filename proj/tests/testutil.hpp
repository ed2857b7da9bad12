#pragma once

#include <random>
#include <string>
#include <vector>

#include "tvmc/formula.hpp"
#include "tvmc/lasso.hpp"

namespace tvmc::testutil {

inline LassoWord random_lasso(std::mt19937& rng, const Alphabet& alpha,
                              int max_prefix, int max_period) {
  std::uniform_int_distribution<int> letter(0, alpha.size() - 1);
  std::uniform_int_distribution<int> plen(0, max_prefix);
  std::uniform_int_distribution<int> wlen(1, max_period);
  LassoWord u;
  int m = plen(rng), r = wlen(rng);
  for (int i = 0; i < m; i++) u.prefix.push_back(letter(rng));
  for (int i = 0; i < r; i++) u.period.push_back(letter(rng));
  return u;
}

// All lassos with |v| <= max_prefix and 1 <= |w| <= max_period.
inline std::vector<LassoWord> all_lassos(const Alphabet& alpha, int max_prefix,
                                         int max_period) {
  std::vector<LassoWord> out;
  int k = alpha.size();
  std::vector<std::vector<std::vector<int>>> words_by_len(
      static_cast<size_t>(std::max(max_prefix, max_period)) + 1);
  words_by_len[0].push_back({});
  for (int len = 1; len <= std::max(max_prefix, max_period); len++) {
    for (const auto& w : words_by_len[static_cast<size_t>(len - 1)]) {
      for (int a = 0; a < k; a++) {
        auto w2 = w;
        w2.push_back(a);
        words_by_len[static_cast<size_t>(len)].push_back(w2);
      }
    }
  }
  for (int m = 0; m <= max_prefix; m++) {
    for (int r = 1; r <= max_period; r++) {
      for (const auto& v : words_by_len[static_cast<size_t>(m)]) {
        for (const auto& w : words_by_len[static_cast<size_t>(r)]) {
          LassoWord u;
          u.prefix = v;
          u.period = w;
          out.push_back(u);
        }
      }
    }
  }
  return out;
}

}  // namespace tvmc::testutil
