// Copyright 2026 The pirlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIRLAB_COLLUSION_HPP
#define PIRLAB_COLLUSION_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pirlab/errors.hpp"
#include "pirlab/rational.hpp"

namespace pirlab {

/// A collusion pattern over servers {0..n-1}: an inclusion-closed family of
/// server subsets, stored by its maximal sets (an antichain after
/// normalization).  Every singleton is colluding implicitly -- a server
/// always knows its own query -- so servers missing from all maximal sets
/// are fine.
class CollusionPattern {
 public:
  /// Normalizes: sorts each set, drops duplicates and sets contained in
  /// other sets.  Elements must lie in [0, n); listed sets must be nonempty.
  static CollusionPattern from_maximal(int n,
                                       std::vector<std::vector<int>> sets) {
    if (n < 1) throw std::invalid_argument("pattern needs at least one server");
    for (auto& s : sets) {
      if (s.empty())
        throw std::invalid_argument("empty set in collusion pattern");
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.front() < 0 || s.back() >= n)
        throw std::invalid_argument("collusion pattern element out of range");
    }
    // Absorption: keep only sets not contained in another listed set.
    std::vector<std::vector<int>> maximal;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      bool absorbed = false;
      for (std::size_t j = 0; j < sets.size() && !absorbed; ++j) {
        if (i == j) continue;
        bool subset = std::includes(sets[j].begin(), sets[j].end(),
                                    sets[i].begin(), sets[i].end());
        // Of two equal sets keep the first occurrence.
        if (subset && (sets[i] != sets[j] || j < i)) absorbed = true;
      }
      if (!absorbed) maximal.push_back(sets[i]);
    }
    std::sort(maximal.begin(), maximal.end());
    return CollusionPattern(n, std::move(maximal));
  }

  /// The t-collusion pattern binom(n, <= t): all t-subsets are maximal.
  static CollusionPattern uniform(int n, int t) {
    if (t < 1 || t > n) throw std::invalid_argument("uniform pattern needs 1 <= t <= n");
    std::vector<std::vector<int>> sets;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == t) {
        sets.push_back(cur);
        return;
      }
      for (int v = start; v < n; ++v) {
        cur.push_back(v);
        self(self, v + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return CollusionPattern(n, std::move(sets));
  }

  /// No collusion beyond the trivial singletons.
  static CollusionPattern singletons(int n) {
    return from_maximal(n, {});
  }

  int n() const noexcept { return n_; }
  const std::vector<std::vector<int>>& maximal_sets() const noexcept {
    return maximal_;
  }

  /// True iff T is colluding: a subset of some maximal set, or |T| <= 1.
  bool contains(std::vector<int> t) const {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (!t.empty() && (t.front() < 0 || t.back() >= n_))
      throw std::invalid_argument("collusion query element out of range");
    if (t.size() <= 1) return true;
    for (const auto& m : maximal_)
      if (std::includes(m.begin(), m.end(), t.begin(), t.end())) return true;
    return false;
  }

  /// Largest size of a colluding set; at least 1.
  int max_colluding_size() const {
    std::size_t best = 1;
    for (const auto& m : maximal_) best = std::max(best, m.size());
    return static_cast<int>(best);
  }

  /// Connected components of the hypergraph whose edges are the maximal
  /// sets.  Isolated servers form their own parts.  When the maximal sets
  /// are disjoint and cover all servers, these are exactly those sets.
  std::vector<std::vector<int>> partition_parts() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& m : maximal_)
      for (std::size_t i = 1; i < m.size(); ++i) {
        int a = find(m[0]), b = find(m[i]);
        if (a != b) parent[b] = a;
      }
    std::vector<std::vector<int>> by_root(n_);
    for (int v = 0; v < n_; ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<int>> parts;
    for (auto& p : by_root)
      if (!p.empty()) parts.push_back(std::move(p));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return parts;
  }

  /// If the pattern is disconnected, a two-part split (first component vs.
  /// the rest); every maximal set lies inside one side.
  std::optional<std::pair<std::vector<int>, std::vector<int>>>
  disconnected_split() const {
    auto parts = partition_parts();
    if (parts.size() < 2) return std::nullopt;
    std::vector<int> rest;
    for (std::size_t i = 1; i < parts.size(); ++i)
      rest.insert(rest.end(), parts[i].begin(), parts[i].end());
    std::sort(rest.begin(), rest.end());
    return std::make_pair(parts.front(), std::move(rest));
  }

  bool is_disconnected() const { return partition_parts().size() >= 2; }

  /// Servers untouched by any maximal colluding set of size > t.
  std::vector<int> i_tilde(int t) const {
    if (t < 1) throw std::invalid_argument("i_tilde needs t >= 1");
    std::vector<bool> blocked(n_, false);
    for (const auto& m : maximal_)
      if (static_cast<int>(m.size()) > t)
        for (int v : m) blocked[v] = true;
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (!blocked[v]) out.push_back(v);
    return out;
  }

  friend bool operator==(const CollusionPattern&,
                         const CollusionPattern&) = default;

 private:
  CollusionPattern(int n, std::vector<std::vector<int>> maximal)
      : n_(n), maximal_(std::move(maximal)) {}

  int n_;
  std::vector<std::vector<int>> maximal_;
};

struct RateCandidate {
  int t;
  std::size_t itilde_size;
  Rational rate;
};

/// A resolved plan for serving a pattern with protection level t: the
/// information set I carrying the query shifts, the servers kept after
/// puncturing, the exact rate |I| / (|I| + k + t - 1), and the full
/// candidate table for inspection.
struct RatePlan {
  int t = 0;
  std::vector<int> info_set;
  std::vector<int> retained;
  Rational rate;
  std::vector<RateCandidate> candidates;
};

/// Maximize min{ |I_t|/(|I_t|+k+t-1), (n-k-t+1)/n } by brute force over all
/// protection levels t with |I_t| >= k and t <= n-k (smallest t wins ties).
/// The information set is I_t truncated to n-k-t+1 lowest indices; the
/// retained servers are I plus the k+t-1 lowest-indexed others.
inline RatePlan plan_rate(const CollusionPattern& pattern, int k) {
  const int n = pattern.n();
  if (k < 1 || k >= n)
    throw std::invalid_argument("rate planning needs 1 <= k < n");
  RatePlan plan;
  bool found = false;
  for (int t = 1; t <= pattern.max_colluding_size(); ++t) {
    auto itilde = pattern.i_tilde(t);
    if (static_cast<int>(itilde.size()) < k) continue;
    if (t > n - k) continue;
    Rational trunc(static_cast<std::int64_t>(n - k - t + 1), n);
    Rational whole(static_cast<std::int64_t>(itilde.size()),
                   static_cast<std::int64_t>(itilde.size()) + k + t - 1);
    Rational rate = std::min(trunc, whole);
    plan.candidates.push_back(RateCandidate{t, itilde.size(), rate});
    if (!found || rate > plan.rate) {
      found = true;
      plan.t = t;
      plan.rate = rate;
      std::size_t take = std::min<std::size_t>(itilde.size(),
                                               static_cast<std::size_t>(n - k - t + 1));
      plan.info_set.assign(itilde.begin(), itilde.begin() + take);
    }
  }
  if (!found)
    throw InfeasibleError(
        "pattern admits no positive-rate information-set scheme for this k");
  // Retained servers: the information set plus the k+t-1 lowest others.
  plan.retained = plan.info_set;
  int need = k + plan.t - 1;
  for (int v = 0; v < n && need > 0; ++v) {
    if (std::find(plan.info_set.begin(), plan.info_set.end(), v) !=
        plan.info_set.end())
      continue;
    plan.retained.push_back(v);
    --need;
  }
  std::sort(plan.retained.begin(), plan.retained.end());
  return plan;
}

/// Rate of the naive strategy: protect against t = (largest colluding set)
/// with a plain t-collusion scheme on all n servers.  Empty if infeasible.
inline std::optional<Rational> naive_rate(const CollusionPattern& pattern,
                                          int k) {
  const int n = pattern.n();
  int t = pattern.max_colluding_size();
  if (t > n - k) return std::nullopt;
  return Rational(static_cast<std::int64_t>(n - k - t + 1), n);
}

}  // namespace pirlab

#endif  // PIRLAB_COLLUSION_HPP
