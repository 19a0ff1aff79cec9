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

#ifndef PIRLAB_SCHEME_HPP
#define PIRLAB_SCHEME_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirlab/collusion.hpp"
#include "pirlab/errors.hpp"
#include "pirlab/linear_code.hpp"
#include "pirlab/matrix.hpp"
#include "pirlab/rational.hpp"

namespace pirlab {

enum class SchemeKind { TPir, InfoSet, Partition, StripedPartition };

inline const char* scheme_kind_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::TPir: return "tpir";
    case SchemeKind::InfoSet: return "infoset";
    case SchemeKind::Partition: return "partition";
    case SchemeKind::StripedPartition: return "striped";
  }
  return "?";
}

/// One download round.  `e` is the 0-1 query shift over the retained
/// servers (local positions); block b's own shift is the indicator of
/// `block_support[b]`.  Block supports are ascending, pairwise disjoint,
/// and union to supp(e).
struct RoundPlan {
  Vec e;
  std::vector<std::vector<int>> block_support;
};

/// A complete executable retrieval plan: which servers to use, the
/// retrieval code D whose random codewords mask the queries, the per-round
/// shifts, the block/stripe layout and the exact rate.
///
/// Blocks are the stripes the file is split into; a full-file scheme
/// recovers `storage.dim()` coded symbols per block across the rounds.
/// A partition scheme over a high-rate storage code may decode fewer
/// (`symbols_per_block < k`); such schemes report their rate but cannot
/// reconstruct whole files.
struct RetrievalScheme {
  SchemeKind kind;
  LinearCode storage;             // full length n
  LinearCode retrieval;           // length = retained.size()
  std::vector<int> retained;      // ascending original server indices
  std::vector<RoundPlan> rounds;
  int blocks = 1;
  int symbols_per_block = 0;
  std::vector<int> randomness_positions;  // local; repetition schemes only
  Rational rate;

  bool full_file() const {
    return symbols_per_block == static_cast<int>(storage.dim());
  }
};

/// Decoded information symbols per downloaded response, as a reduced
/// fraction.
inline Rational scheme_rate(const RetrievalScheme& s) {
  return Rational(static_cast<std::int64_t>(s.blocks) * s.symbols_per_block,
                  static_cast<std::int64_t>(s.rounds.size()) *
                      static_cast<std::int64_t>(s.retained.size()));
}

namespace detail {

inline Vec indicator(const PrimeField& f, std::size_t n,
                     const std::vector<int>& support) {
  Vec e(n, f.zero());
  for (int j : support) e[static_cast<std::size_t>(j)] = f.one();
  return e;
}

/// Is the projection of `shift` onto coordinates T a projection of some
/// codeword of D?  (T given in D's own coordinate space.)
inline bool shift_hidden_by(const LinearCode& d, const Vec& shift,
                            const std::vector<int>& t) {
  if (t.empty()) return true;
  Vec projected;
  projected.reserve(t.size());
  for (int j : t) projected.push_back(shift[static_cast<std::size_t>(j)]);
  return row_space_contains(d.generator().select_columns(t), projected);
}

inline std::vector<int> local_positions(const std::vector<int>& retained,
                                        const std::vector<int>& original_set) {
  std::vector<int> local;
  for (std::size_t jj = 0; jj < retained.size(); ++jj)
    if (std::binary_search(original_set.begin(), original_set.end(),
                           retained[jj]))
      local.push_back(static_cast<int>(jj));
  return local;
}

inline void require_mds(const LinearCode& c, const char* who) {
  if (c.dim() == 0 || min_distance(c) != c.length() - c.dim() + 1)
    throw std::invalid_argument(std::string(who) +
                                " requires an MDS storage code");
}

}  // namespace detail

/// True iff every maximal colluding set of `pattern`, restricted to the
/// retained servers, sees every per-block query shift as a codeword
/// projection of D (so each round's combined shift too, by linearity).
inline bool scheme_secure_against(const RetrievalScheme& s,
                                  const CollusionPattern& pattern) {
  if (pattern.n() != static_cast<int>(s.storage.length()))
    throw std::invalid_argument("pattern size does not match scheme length");
  for (const auto& maximal : pattern.maximal_sets()) {
    std::vector<int> local = detail::local_positions(s.retained, maximal);
    if (local.empty()) continue;
    for (const auto& round : s.rounds) {
      for (const auto& support : round.block_support) {
        Vec shift = detail::indicator(s.storage.field(), s.retained.size(),
                                      support);
        if (!detail::shift_hidden_by(s.retrieval, shift, local)) return false;
      }
    }
  }
  return true;
}

namespace detail {

inline void assert_constructed_secure(const RetrievalScheme& s,
                                      const CollusionPattern& target) {
  if (!scheme_secure_against(s, target))
    throw std::logic_error("constructed scheme fails its own security check");
}

/// Every block must read k distinct positions on which the storage code has
/// full rank; within a round, block supports must be disjoint.
inline void assert_schedule_valid(const RetrievalScheme& s) {
  const int k = static_cast<int>(s.storage.dim());
  std::vector<std::vector<int>> per_block(s.blocks);
  for (const auto& round : s.rounds) {
    std::vector<int> seen;
    for (int b = 0; b < s.blocks; ++b) {
      for (int pos : round.block_support[b]) {
        if (std::find(seen.begin(), seen.end(), pos) != seen.end())
          throw std::logic_error("block supports overlap within a round");
        seen.push_back(pos);
      }
      for (int pos : round.block_support[b])
        per_block[b].push_back(s.retained[pos]);
    }
  }
  if (!s.full_file()) return;  // rate-only schemes skip the decode check
  for (int b = 0; b < s.blocks; ++b) {
    std::vector<int> positions = per_block[b];
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()),
                    positions.end());
    if (static_cast<int>(positions.size()) < k ||
        !full_rank_on(s.storage, positions))
      throw InfeasibleError(
          "schedule cannot decode block " + std::to_string(b + 1) +
          ": needs " + std::to_string(k) +
          " distinct positions with full storage rank");
  }
}

}  // namespace detail

/// Protection against every colluding set of size <= t, over a GRS storage
/// code: D is the dimension-t GRS code on the same evaluation points, the
/// file is split into n-k-t+1 blocks, and round j serves block b from
/// position (j*blocks + b) mod n.  Rate (n-k-t+1)/n.
inline RetrievalScheme build_tpir_scheme(const GrsSpec& storage_spec, int t) {
  const int n = static_cast<int>(storage_spec.n);
  const int k = static_cast<int>(storage_spec.k);
  if (t < 1) throw std::invalid_argument("protection level t must be >= 1");
  if (t > n - k)
    throw InfeasibleError("no positive rate: t-collusion protection needs t <= n-k");
  const int blocks = n - k - t + 1;

  RetrievalScheme s{
      SchemeKind::TPir,
      grs_code(storage_spec),
      grs_code([&] {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        return storage_spec.retrieval_spec(all, t);
      }()),
      {},  // retained
      {},  // rounds
      blocks,
      k,
      {},
      Rational(blocks, n)};
  s.retained.resize(n);
  std::iota(s.retained.begin(), s.retained.end(), 0);

  for (int j = 0; j < k; ++j) {
    RoundPlan round{Vec(n, storage_spec.field.zero()), {}};
    for (int b = 0; b < blocks; ++b) {
      int pos = (j * blocks + b) % n;
      round.block_support.push_back({pos});
      round.e[pos] = storage_spec.field.one();
    }
    s.rounds.push_back(std::move(round));
  }

  detail::assert_schedule_valid(s);
  detail::assert_constructed_secure(s, CollusionPattern::uniform(n, t));
  return s;
}

/// Scheme for an arbitrary collusion pattern built on plan_rate's choice of
/// (t, I): servers outside I + (k+t-1 helpers) are never queried, D is the
/// dimension-t GRS code on the retained evaluation points, and every round
/// serves each of the |I| blocks from a rotating position inside I.  Sets
/// intersecting I have size <= t and see D-codeword projections; sets
/// disjoint from I see shifts of zero.
inline RetrievalScheme build_infoset_scheme(const GrsSpec& storage_spec,
                                            const CollusionPattern& pattern) {
  const int k = static_cast<int>(storage_spec.k);
  if (pattern.n() != static_cast<int>(storage_spec.n))
    throw std::invalid_argument("pattern size does not match code length");
  RatePlan plan = plan_rate(pattern, k);
  if (static_cast<int>(plan.info_set.size()) < k)
    throw InfeasibleError(
        "full-file download requires |I| >= k; the rate plan is still "
        "available via plan_rate");

  const int blocks = static_cast<int>(plan.info_set.size());
  std::vector<int> local_info =
      detail::local_positions(plan.retained, plan.info_set);

  RetrievalScheme s{SchemeKind::InfoSet,
                    grs_code(storage_spec),
                    grs_code(storage_spec.retrieval_spec(plan.retained, plan.t)),
                    plan.retained,
                    {},
                    blocks,
                    k,
                    {},
                    plan.rate};

  for (int j = 0; j < k; ++j) {
    RoundPlan round{Vec(plan.retained.size(), storage_spec.field.zero()), {}};
    for (int b = 0; b < blocks; ++b) {
      int pos = local_info[(b + j) % blocks];
      round.block_support.push_back({pos});
      round.e[pos] = storage_spec.field.one();
    }
    s.rounds.push_back(std::move(round));
  }

  detail::assert_schedule_valid(s);
  detail::assert_constructed_secure(s, pattern);
  return s;
}

/// Repetition-code scheme for a disconnected pattern: one round, queries
/// constant on every part, the shift supported on the union of parts that
/// maximizes min(w, n-w).  Decodes rank(G_C diag(e) H^T) symbols; that is a
/// whole file exactly when both sides of the split have at least k servers.
inline RetrievalScheme build_partition_scheme(const LinearCode& storage,
                                              const CollusionPattern& pattern) {
  if (pattern.n() != static_cast<int>(storage.length()))
    throw std::invalid_argument("pattern size does not match code length");
  detail::require_mds(storage, "the repetition scheme");
  auto parts = pattern.partition_parts();
  if (parts.size() < 2)
    throw InfeasibleError("repetition scheme requires a disconnected pattern");
  if (parts.size() > 20)
    throw InfeasibleError("support search capped at 20 parts");

  const int n = pattern.n();
  std::vector<int> best_support;
  int best_score = -1, best_w = -1;
  for (std::uint32_t mask = 1; mask + 1 < (1u << parts.size()); ++mask) {
    std::vector<int> support;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (mask & (1u << i))
        support.insert(support.end(), parts[i].begin(), parts[i].end());
    std::sort(support.begin(), support.end());
    int w = static_cast<int>(support.size());
    int score = std::min(w, n - w);
    if (score > best_score || (score == best_score && w > best_w) ||
        (score == best_score && w == best_w && support < best_support)) {
      best_score = score;
      best_w = w;
      best_support = std::move(support);
    }
  }

  const PrimeField& f = storage.field();
  Vec e = detail::indicator(f, n, best_support);
  int decoded = static_cast<int>(rank_masked_product(storage, e));
  const int k = static_cast<int>(storage.dim());
  if (decoded != std::min({k, n - k, best_w, n - best_w}))
    throw std::logic_error("masked-product rank disagrees with the MDS formula");

  RetrievalScheme s{SchemeKind::Partition,
                    storage,
                    repetition(f, n),
                    {},
                    {RoundPlan{e, {best_support}}},
                    1,
                    decoded,
                    {},
                    Rational(decoded, n)};
  s.retained.resize(n);
  std::iota(s.retained.begin(), s.retained.end(), 0);
  for (int v = 0; v < n; ++v)
    if (!std::binary_search(best_support.begin(), best_support.end(), v))
      s.randomness_positions.push_back(v);

  detail::assert_schedule_valid(s);
  detail::assert_constructed_secure(s, pattern);
  return s;
}

/// Striped repetition scheme for a pattern whose parts all have >= k
/// servers: the first part receives the plain random vector, part sigma+1
/// receives it shifted at the stripe-sigma coordinate, and all r-1 stripes
/// of the file decode in a single round at rate (r-1)k/n.
inline RetrievalScheme build_striped_partition_scheme(
    const LinearCode& storage, const CollusionPattern& pattern) {
  if (pattern.n() != static_cast<int>(storage.length()))
    throw std::invalid_argument("pattern size does not match code length");
  detail::require_mds(storage, "the striped repetition scheme");
  auto parts = pattern.partition_parts();
  if (parts.size() < 2)
    throw InfeasibleError("repetition scheme requires a disconnected pattern");
  const int k = static_cast<int>(storage.dim());
  for (const auto& part : parts)
    if (static_cast<int>(part.size()) < k)
      throw InfeasibleError(
          "each part must have size >= k for striped decoding");

  const int n = pattern.n();
  const int stripes = static_cast<int>(parts.size()) - 1;
  const PrimeField& f = storage.field();

  RoundPlan round{Vec(n, f.zero()), {}};
  for (int sigma = 0; sigma < stripes; ++sigma) {
    const auto& part = parts[sigma + 1];
    round.block_support.push_back(part);
    for (int v : part) round.e[v] = f.one();
  }

  RetrievalScheme s{SchemeKind::StripedPartition,
                    storage,
                    repetition(f, n),
                    {},
                    {std::move(round)},
                    stripes,
                    k,
                    parts.front(),
                    Rational(static_cast<std::int64_t>(stripes) * k, n)};
  s.retained.resize(n);
  std::iota(s.retained.begin(), s.retained.end(), 0);

  detail::assert_schedule_valid(s);
  detail::assert_constructed_secure(s, pattern);
  return s;
}

}  // namespace pirlab

#endif  // PIRLAB_SCHEME_HPP
