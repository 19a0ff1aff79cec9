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

#ifndef PIRLAB_VERIFIER_HPP
#define PIRLAB_VERIFIER_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirlab/collusion.hpp"
#include "pirlab/errors.hpp"
#include "pirlab/linear_code.hpp"
#include "pirlab/matrix.hpp"
#include "pirlab/scheme.hpp"

namespace pirlab {

/// Proposition-style security test: the colluders in T cannot distinguish a
/// shifted query from a fresh one iff the projection e_T is itself a
/// projection of some codeword of D.
inline bool algebraic_check(const LinearCode& d, const Vec& e,
                            const std::vector<int>& t) {
  if (e.size() != d.length())
    throw std::invalid_argument("shift length does not match code length");
  for (int j : t)
    if (j < 0 || static_cast<std::size_t>(j) >= d.length())
      throw std::out_of_range("colluding index out of code range");
  return detail::shift_hidden_by(d, e, t);
}

enum class OracleVerdict { Equal, Differ, Skipped };

inline const char* oracle_verdict_name(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Equal: return "equal";
    case OracleVerdict::Differ: return "differ";
    case OracleVerdict::Skipped: return "skipped";
  }
  return "?";
}

struct OracleSetResult {
  std::vector<int> colluders;  // original server indices
  OracleVerdict verdict = OracleVerdict::Skipped;
  std::uint64_t states_per_round = 0;   // exact enumeration size per round
  std::string note;
};

namespace detail {

/// Exact per-round enumeration cost: p^(dim D * m * blocks), or nullopt on
/// overflow past `cap`.
inline std::optional<std::uint64_t> state_count(std::uint64_t p,
                                                std::uint64_t digits,
                                                std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < digits; ++i) {
    if (total > cap / p) return std::nullopt;
    total *= p;
  }
  return total;
}

/// Sorted multiset of projected query tuples; tuples pack into single
/// 64-bit keys whenever they fit, otherwise into byte strings.
struct ProjectedDistribution {
  bool fits_u64 = true;
  std::vector<std::uint64_t> packed;
  std::vector<std::string> wide;

  std::size_t size() const { return fits_u64 ? packed.size() : wide.size(); }
  friend bool operator==(const ProjectedDistribution&,
                         const ProjectedDistribution&) = default;
};

/// The exact multiset of projected query tuples seen by the colluders at
/// `local` positions during one round, for the reader of `file_index`.  One
/// entry per assignment of the dim(D) * m * blocks codeword coefficients.
/// Equal multisets across file indices mean the round leaks nothing.
inline ProjectedDistribution projected_distribution(
    const RetrievalScheme& scheme, const RoundPlan& plan,
    const std::vector<int>& local, int m, int file_index,
    std::uint64_t states) {
  const LinearCode& d = scheme.retrieval;
  const PrimeField& f = d.field();
  const std::uint32_t p = f.modulus();
  const int blocks = scheme.blocks;
  const std::size_t dim = d.dim();
  const std::size_t slots = static_cast<std::size_t>(m) * blocks;
  const std::size_t width = local.size();

  // Generator columns at the colluders' positions.
  std::vector<std::vector<std::uint32_t>> gen_cols(dim,
                                                   std::vector<std::uint32_t>(width));
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t j = 0; j < width; ++j)
      gen_cols[c][j] = d.generator()(c, local[j]).value();

  // Values of the projected query per (file, block) slot, updated
  // incrementally as the coefficient odometer advances.  Slot values start
  // at the reader's shift: the indicator of the block's support.
  std::vector<std::vector<std::uint32_t>> value(slots,
                                                std::vector<std::uint32_t>(width, 0));
  for (int b = 0; b < blocks; ++b) {
    const std::size_t slot = static_cast<std::size_t>(file_index) * blocks + b;
    for (std::size_t j = 0; j < width; ++j) {
      bool in_support = std::binary_search(plan.block_support[b].begin(),
                                           plan.block_support[b].end(),
                                           local[j]);
      if (in_support) value[slot][j] = 1 % p;
    }
  }

  std::vector<std::uint32_t> digits(slots * dim, 0);
  auto add_generator_row = [&](std::size_t digit) {
    const std::size_t slot = digit / dim;
    const std::size_t c = digit % dim;
    for (std::size_t j = 0; j < width; ++j) {
      std::uint32_t v = value[slot][j] + gen_cols[c][j];
      if (v >= p) v -= p;
      value[slot][j] = v;
    }
  };

  const std::size_t bits = std::bit_width(p - 1);
  ProjectedDistribution out;
  out.fits_u64 = slots * width * bits <= 64;
  // Wide keys are fixed-width byte strings, little-endian per value; the
  // byte width depends on p so packing never truncates.
  const std::size_t bytes_per_value = p <= 0x100 ? 1 : (p <= 0x10000 ? 2 : 4);
  std::string key(out.fits_u64 ? 0 : slots * width * bytes_per_value, '\0');
  if (out.fits_u64)
    out.packed.reserve(states);
  else
    out.wide.reserve(states);

  auto record = [&] {
    if (out.fits_u64) {
      std::uint64_t packed = 0;
      for (std::size_t slot = 0; slot < slots; ++slot)
        for (std::size_t j = 0; j < width; ++j)
          packed = (packed << bits) | value[slot][j];
      out.packed.push_back(packed);
    } else {
      std::size_t at = 0;
      for (std::size_t slot = 0; slot < slots; ++slot)
        for (std::size_t j = 0; j < width; ++j) {
          std::uint32_t v = value[slot][j];
          for (std::size_t byte = 0; byte < bytes_per_value; ++byte) {
            key[at++] = static_cast<char>(v & 0xff);
            v >>= 8;
          }
        }
      out.wide.push_back(key);
    }
  };

  record();
  for (std::uint64_t it = 1; it < states; ++it) {
    // Advance the odometer; a wrap from p-1 to 0 shifts the slot value by
    // -(p-1) = +1 times the generator row, same as a plain increment.
    std::size_t digit = 0;
    while (true) {
      add_generator_row(digit);
      if (digits[digit] + 1 < p) {
        ++digits[digit];
        break;
      }
      digits[digit] = 0;
      ++digit;
    }
    record();
  }
  std::sort(out.packed.begin(), out.packed.end());
  std::sort(out.wide.begin(), out.wide.end());
  return out;
}

}  // namespace detail

/// Definition-level privacy test by exhaustive enumeration: for each maximal
/// colluding set, tabulate the exact joint distribution of the projected
/// queries for every file index and require them identical.  Rounds draw
/// independent randomness, so the joint across rounds is the product
/// distribution; distributions are compared round by round, which is
/// equivalent to comparing the joints.  Never samples: either the state
/// space fits under `cap` or the set is reported as skipped.
inline std::vector<OracleSetResult> distribution_oracle(
    const RetrievalScheme& scheme, const CollusionPattern& pattern, int m,
    int stripes, std::uint64_t cap = 1000000) {
  if (pattern.n() != static_cast<int>(scheme.storage.length()))
    throw std::invalid_argument("pattern size does not match scheme length");
  if (stripes != scheme.blocks)
    throw std::invalid_argument("system stripes must equal scheme blocks");
  if (m < 1) throw std::invalid_argument("need at least one file");

  const std::uint64_t digits = static_cast<std::uint64_t>(scheme.retrieval.dim()) *
                               m * scheme.blocks;
  auto states = detail::state_count(scheme.storage.field().modulus(), digits, cap);

  std::vector<OracleSetResult> results;
  for (const auto& maximal : pattern.maximal_sets()) {
    OracleSetResult res;
    res.colluders = maximal;
    std::vector<int> local = detail::local_positions(scheme.retained, maximal);
    if (local.empty()) {
      res.verdict = OracleVerdict::Equal;
      res.states_per_round = 1;
      res.note = "no colluder is ever queried";
      results.push_back(std::move(res));
      continue;
    }
    if (!states) {
      auto true_count = detail::state_count(
          scheme.storage.field().modulus(), digits,
          std::numeric_limits<std::uint64_t>::max() / 2);
      res.verdict = OracleVerdict::Skipped;
      res.states_per_round = true_count.value_or(0);
      res.note = "state space " +
                 (true_count ? std::to_string(*true_count)
                             : std::to_string(scheme.storage.field().modulus()) +
                                   "^" + std::to_string(digits)) +
                 " per round exceeds cap " + std::to_string(cap);
      results.push_back(std::move(res));
      continue;
    }
    res.states_per_round = *states;
    res.verdict = OracleVerdict::Equal;
    for (const RoundPlan& plan : scheme.rounds) {
      auto baseline = detail::projected_distribution(scheme, plan, local, m,
                                                     0, *states);
      if (baseline.size() != *states)
        throw ConsistencyError("oracle lost probability mass");
      for (int i = 1; i < m && res.verdict == OracleVerdict::Equal; ++i) {
        auto other = detail::projected_distribution(scheme, plan, local, m, i,
                                                    *states);
        if (other != baseline) res.verdict = OracleVerdict::Differ;
      }
      if (res.verdict != OracleVerdict::Equal) break;
    }
    results.push_back(std::move(res));
  }
  return results;
}

struct SetPrivacy {
  std::vector<int> colluders;
  bool algebraic_ok = true;
  int failing_round = -1;  // 0-based round of the first failing shift
  int failing_block = -1;
  OracleVerdict oracle = OracleVerdict::Skipped;
  std::uint64_t oracle_states = 0;
  std::string oracle_note;
};

struct PrivacyReport {
  std::vector<SetPrivacy> sets;
  bool overall = false;
  std::uint64_t cap = 0;
};

/// Run both verification routes against every maximal colluding set and
/// cross-check them.  The two must agree wherever the oracle actually ran
/// (given at least two files); any disagreement is an internal bug and
/// throws ConsistencyError.
inline PrivacyReport verify_scheme(const RetrievalScheme& scheme,
                                   const CollusionPattern& pattern, int m,
                                   std::uint64_t cap = 1000000) {
  PrivacyReport report;
  report.cap = cap;
  report.overall = true;

  auto oracle = distribution_oracle(scheme, pattern, m, scheme.blocks, cap);

  const auto& sets = pattern.maximal_sets();
  for (std::size_t idx = 0; idx < sets.size(); ++idx) {
    SetPrivacy sp;
    sp.colluders = sets[idx];
    std::vector<int> local = detail::local_positions(scheme.retained, sets[idx]);
    for (std::size_t j = 0; j < scheme.rounds.size() && sp.algebraic_ok; ++j) {
      const RoundPlan& plan = scheme.rounds[j];
      for (std::size_t b = 0; b < plan.block_support.size(); ++b) {
        Vec shift = detail::indicator(scheme.storage.field(),
                                      scheme.retained.size(),
                                      plan.block_support[b]);
        if (!algebraic_check(scheme.retrieval, shift, local)) {
          sp.algebraic_ok = false;
          sp.failing_round = static_cast<int>(j);
          sp.failing_block = static_cast<int>(b);
          break;
        }
      }
    }
    sp.oracle = oracle[idx].verdict;
    sp.oracle_states = oracle[idx].states_per_round;
    sp.oracle_note = oracle[idx].note;

    if (m >= 2 && sp.oracle != OracleVerdict::Skipped &&
        sp.algebraic_ok != (sp.oracle == OracleVerdict::Equal))
      throw ConsistencyError(
          "algebraic check and distribution oracle disagree on a colluding "
          "set; this is an implementation bug");

    if (!sp.algebraic_ok || sp.oracle == OracleVerdict::Differ)
      report.overall = false;
    report.sets.push_back(std::move(sp));
  }
  return report;
}

}  // namespace pirlab

#endif  // PIRLAB_VERIFIER_HPP
