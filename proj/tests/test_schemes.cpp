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

#include <map>
#include <numeric>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "pirlab/scheme.hpp"
#include "test_util.hpp"

using namespace pirlab;
using testutil::all_binary_vectors;
using testutil::all_subsets_up_to;
using testutil::enumerate_codewords;
using testutil::hamming_weight;
using testutil::vec_of;

namespace {

GrsSpec example_spec() { return GrsSpec::standard(PrimeField(5), 5, 2); }

// A bare single-round (D,e) scheme with one block, for security probing.
RetrievalScheme manual_scheme(const LinearCode& storage, const LinearCode& d,
                              const Vec& e) {
  std::vector<int> support;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (!e[j].is_zero()) support.push_back(static_cast<int>(j));
  RetrievalScheme s{SchemeKind::TPir,
                    storage,
                    d,
                    {},
                    {RoundPlan{e, {support}}},
                    1,
                    static_cast<int>(storage.dim()),
                    {},
                    Rational(1, 1)};
  s.retained.resize(storage.length());
  std::iota(s.retained.begin(), s.retained.end(), 0);
  return s;
}

// Distinct small codes of dimension 1 and 2, canonicalized by rref.
std::vector<LinearCode> small_codes(const PrimeField& f, int n, int max_dim) {
  std::map<std::string, LinearCode> seen;
  auto key_of = [](const LinearCode& c) {
    std::string key;
    for (std::size_t i = 0; i < c.rref_generator().rows(); ++i)
      for (std::size_t j = 0; j < c.rref_generator().cols(); ++j)
        key += static_cast<char>('0' + c.rref_generator()(i, j).value());
    return key;
  };
  const std::uint64_t p = f.modulus();
  std::uint64_t total = 1;
  for (int j = 0; j < n; ++j) total *= p;
  for (std::uint64_t a = 1; a < total; ++a) {
    Matrix g(f, 1, n);
    std::uint64_t x = a;
    for (int j = 0; j < n; ++j, x /= p) g(0, j) = f.element(x % p);
    LinearCode c = LinearCode::from_span(g);
    seen.emplace(key_of(c), c);
    if (max_dim < 2) continue;
    for (std::uint64_t b = a + 1; b < total; ++b) {
      Matrix g2(f, 2, n);
      std::uint64_t y = a;
      for (int j = 0; j < n; ++j, y /= p) g2(0, j) = f.element(y % p);
      y = b;
      for (int j = 0; j < n; ++j, y /= p) g2(1, j) = f.element(y % p);
      LinearCode c2 = LinearCode::from_span(g2);
      if (c2.dim() == 2) seen.emplace(key_of(c2), c2);
    }
  }
  std::vector<LinearCode> out;
  for (auto& [key, code] : seen) out.push_back(std::move(code));
  return out;
}

// Every antichain of nonempty subsets of {0..n-1}, as mask lists.
std::vector<std::vector<std::uint32_t>> all_antichains(int n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    out.push_back(current);
    for (std::uint32_t mask = start; mask < (1u << n); ++mask) {
      bool comparable = false;
      for (std::uint32_t other : current) {
        if ((mask & other) == mask || (mask & other) == other) {
          comparable = true;
          break;
        }
      }
      if (comparable) continue;
      current.push_back(mask);
      self(self, mask + 1);
      current.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

TEST_CASE("t-collusion scheme reproduces the five-server example") {
  RetrievalScheme s = build_tpir_scheme(example_spec(), 2);
  PrimeField f(5);
  CHECK(s.blocks == 2);
  CHECK(s.rounds.size() == 2);
  CHECK(s.rate == Rational(2, 5));
  CHECK(scheme_rate(s) == Rational(2, 5));
  CHECK(s.retained == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(s.retrieval.generator() ==
        Matrix::from_rows(f, {{1, 1, 1, 1, 1}, {0, 1, 2, 3, 4}}));
  CHECK(s.rounds[0].e == vec_of(f, {1, 1, 0, 0, 0}));
  CHECK(s.rounds[1].e == vec_of(f, {0, 0, 1, 1, 0}));
  CHECK(s.full_file());
}

TEST_CASE("t-collusion scheme boundaries") {
  RetrievalScheme tight = build_tpir_scheme(example_spec(), 3);  // t = n-k
  CHECK(tight.blocks == 1);
  CHECK(tight.rate == Rational(1, 5));

  RetrievalScheme rep_scheme = build_tpir_scheme(example_spec(), 1);
  CHECK(rep_scheme.retrieval == repetition(PrimeField(5), 5));
  CHECK(rep_scheme.rate == Rational(3, 5));

  CHECK_THROWS_AS(build_tpir_scheme(example_spec(), 4), InfeasibleError);
  CHECK_THROWS_AS(build_tpir_scheme(example_spec(), 0), std::invalid_argument);
}

TEST_CASE("rotation schedule failure is reported") {
  // blocks = 3 divides n = 6, so block positions repeat after two rounds.
  GrsSpec spec = GrsSpec::standard(PrimeField(7), 6, 3);
  CHECK_THROWS_WITH(build_tpir_scheme(spec, 1),
                    Catch::Matchers::ContainsSubstring("distinct positions"));
}

TEST_CASE("information-set scheme for the split six-server pattern") {
  GrsSpec spec = GrsSpec::standard(PrimeField(7), 6, 2);
  auto pattern = CollusionPattern::from_maximal(6, {{0, 1}, {2, 3, 4, 5}});
  RetrievalScheme s = build_infoset_scheme(spec, pattern);
  CHECK(s.retained == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(s.retrieval.dim() == 2);
  CHECK(s.retrieval.length() == 5);
  CHECK(s.blocks == 2);
  CHECK(s.rounds.size() == 2);
  CHECK(s.rate == Rational(2, 5));
  CHECK(scheme_rate(s) == Rational(2, 5));
  // Shifts live inside the information set {0,1} every round.
  for (const auto& round : s.rounds)
    for (std::size_t j = 2; j < 5; ++j) CHECK(round.e[j].is_zero());
  CHECK(scheme_secure_against(s, pattern));
}

TEST_CASE("information-set scheme degenerates to plain t-collusion") {
  GrsSpec spec = example_spec();
  auto pattern = CollusionPattern::uniform(5, 2);
  RetrievalScheme info = build_infoset_scheme(spec, pattern);
  RetrievalScheme tpir = build_tpir_scheme(spec, 2);
  CHECK(info.rate == tpir.rate);
  CHECK(info.retrieval == tpir.retrieval);
  CHECK(info.retained == tpir.retained);
  CHECK(info.blocks == tpir.blocks);
  CHECK(scheme_secure_against(info, pattern));
  CHECK(scheme_secure_against(tpir, pattern));
}

TEST_CASE("information-set scheme shrugs off an extra large set") {
  auto pattern = CollusionPattern::from_maximal(
      5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3, 4}});
  RetrievalScheme s = build_infoset_scheme(example_spec(), pattern);
  CHECK(s.rate == Rational(2, 5));
  CHECK(scheme_secure_against(s, pattern));
  // The shift support stays inside {0,1}.
  for (const auto& round : s.rounds) {
    CHECK_FALSE(round.e[0].is_zero());
    CHECK_FALSE(round.e[1].is_zero());
    for (std::size_t j = 2; j < 5; ++j) CHECK(round.e[j].is_zero());
  }
}

TEST_CASE("information-set scheme refuses undersized information sets") {
  GrsSpec spec = GrsSpec::standard(PrimeField(7), 7, 3);
  auto pattern = CollusionPattern::uniform(7, 3);
  CHECK_THROWS_WITH(build_infoset_scheme(spec, pattern),
                    Catch::Matchers::ContainsSubstring("|I| >= k"));
  // The rate itself is still plannable.
  CHECK(plan_rate(pattern, 3).rate == Rational(2, 7));
}

TEST_CASE("partition scheme on the balanced six-server example") {
  PrimeField f(7);
  LinearCode c = grs_code(GrsSpec::standard(f, 6, 3));
  auto pattern = CollusionPattern::from_maximal(6, {{0, 1, 2}, {3, 4, 5}});
  RetrievalScheme s = build_partition_scheme(c, pattern);
  CHECK(s.rate == Rational(1, 2));
  CHECK(s.blocks == 1);
  CHECK(s.rounds.size() == 1);
  CHECK(s.retrieval == repetition(f, 6));
  CHECK(s.full_file());
  // Lexicographic tie-break puts the shift on the first part.
  CHECK(s.rounds[0].e == vec_of(f, {1, 1, 1, 0, 0, 0}));
  CHECK(s.randomness_positions == std::vector<int>{3, 4, 5});
  CHECK(scheme_secure_against(s, pattern));

  CHECK_THROWS_WITH(build_partition_scheme(c, CollusionPattern::uniform(6, 2)),
                    Catch::Matchers::ContainsSubstring("disconnected"));
}

TEST_CASE("partition scheme on a lopsided split is rate-only") {
  PrimeField f(7);
  LinearCode c = grs_code(GrsSpec::standard(f, 5, 3));
  auto pattern = CollusionPattern::from_maximal(5, {{0, 1}, {2, 3, 4}});
  RetrievalScheme s = build_partition_scheme(c, pattern);
  // Rate (n-k)/n for two parts of size <= k with k >= n-k.
  CHECK(s.rate == Rational(2, 5));
  CHECK(s.symbols_per_block == 2);
  CHECK_FALSE(s.full_file());
  CHECK(scheme_secure_against(s, pattern));
  // Larger-support tie-break between the w=2 and w=3 unions.
  CHECK(hamming_weight(s.rounds[0].e) == 3);
}

TEST_CASE("partition scheme part-count cap") {
  PrimeField f(23);
  LinearCode c = grs_code(GrsSpec::standard(f, 21, 1));
  std::vector<std::vector<int>> singles;
  for (int v = 0; v < 21; ++v) singles.push_back({v});
  auto pattern = CollusionPattern::from_maximal(21, singles);
  CHECK_THROWS_WITH(build_partition_scheme(c, pattern),
                    Catch::Matchers::ContainsSubstring("20 parts"));
}

TEST_CASE("striped scheme on the nine-server example") {
  PrimeField f(11);
  LinearCode c = grs_code(GrsSpec::standard(f, 9, 3));
  auto pattern =
      CollusionPattern::from_maximal(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  RetrievalScheme s = build_striped_partition_scheme(c, pattern);
  CHECK(s.blocks == 2);
  CHECK(s.rounds.size() == 1);
  CHECK(s.rate == Rational(2, 3));
  CHECK(scheme_rate(s) == Rational(6, 9));
  CHECK(s.randomness_positions == std::vector<int>{0, 1, 2});
  CHECK(s.rounds[0].block_support ==
        std::vector<std::vector<int>>{{3, 4, 5}, {6, 7, 8}});
  CHECK(s.full_file());
  CHECK(scheme_secure_against(s, pattern));
}

TEST_CASE("striped scheme with two parts degenerates to one stripe") {
  PrimeField f(7);
  LinearCode c = grs_code(GrsSpec::standard(f, 6, 3));
  auto pattern = CollusionPattern::from_maximal(6, {{0, 1, 2}, {3, 4, 5}});
  RetrievalScheme striped = build_striped_partition_scheme(c, pattern);
  CHECK(striped.blocks == 1);
  CHECK(striped.rate == Rational(3, 6));
  CHECK(striped.rate == build_partition_scheme(c, pattern).rate);
}

TEST_CASE("striped scheme needs every part at least k strong") {
  PrimeField f(11);
  LinearCode c = grs_code(GrsSpec::standard(f, 8, 3));
  auto pattern =
      CollusionPattern::from_maximal(8, {{0, 1, 2}, {3, 4, 5}, {6, 7}});
  CHECK_THROWS_WITH(build_striped_partition_scheme(c, pattern),
                    Catch::Matchers::ContainsSubstring("size >= k"));
}

TEST_CASE("security check failures") {
  PrimeField f(5);
  LinearCode c = grs_code(example_spec());
  LinearCode d = grs_code(GrsSpec::standard(f, 5, 2));
  Vec e = vec_of(f, {1, 1, 0, 0, 0});

  // Independent oracle: enumerate all 25 codewords of D and project them
  // onto {0,1,2}; neither (1,1,0) nor (1,0,0) shows up.
  std::set<std::vector<std::uint32_t>> projections;
  for (const auto& word : enumerate_codewords(d))
    projections.insert({word[0].value(), word[1].value(), word[2].value()});
  CHECK(projections.count({1, 1, 0}) == 0);
  CHECK(projections.count({1, 0, 0}) == 0);
  CHECK(projections.count({1, 1, 1}) == 1);

  RetrievalScheme manual = manual_scheme(c, d, e);
  CHECK(scheme_secure_against(manual, CollusionPattern::uniform(5, 2)));
  CHECK_FALSE(scheme_secure_against(
      manual, CollusionPattern::from_maximal(5, {{0, 1, 2}})));

  auto bonus = CollusionPattern::from_maximal(
      5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3, 4}});
  // The rotating t-collusion schedule sweeps its shifts across all servers,
  // so the triple sees a shift in later rounds; pinning the shifts to the
  // information set {0,1} keeps the triple blind.
  RetrievalScheme rotating = build_tpir_scheme(example_spec(), 2);
  CHECK(scheme_secure_against(rotating, CollusionPattern::uniform(5, 2)));
  CHECK_FALSE(scheme_secure_against(rotating, bonus));
  RetrievalScheme pinned = build_infoset_scheme(example_spec(), bonus);
  CHECK(scheme_secure_against(pinned, bonus));
  CHECK_FALSE(scheme_secure_against(
      pinned, CollusionPattern::from_maximal(5, {{0, 1, 2}})));

  // Repetition shifts must be constant on every colluding set.
  PrimeField f7(7);
  RetrievalScheme rep_manual =
      manual_scheme(grs_code(GrsSpec::standard(f7, 6, 3)), repetition(f7, 6),
                    vec_of(f7, {1, 1, 0, 0, 0, 0}));
  CHECK_FALSE(scheme_secure_against(
      rep_manual, CollusionPattern::from_maximal(6, {{1, 2}})));
  CHECK(scheme_secure_against(rep_manual,
                              CollusionPattern::from_maximal(6, {{0, 1}})));
}

TEST_CASE("every scheme at least matches the naive protection level") {
  std::vector<CollusionPattern> patterns = {
      CollusionPattern::from_maximal(6, {{0, 1}, {2, 3, 4, 5}}),
      CollusionPattern::from_maximal(6, {{0, 1, 2}, {3, 4, 5}}),
      CollusionPattern::from_maximal(7, {{0, 1, 2}, {3, 4}, {5, 6}}),
      CollusionPattern::uniform(6, 2)};
  PrimeField f(7);
  for (const auto& pattern : patterns) {
    for (int k = 2; k <= 3; ++k) {
      GrsSpec spec = GrsSpec::standard(f, pattern.n(), k);
      auto naive = naive_rate(pattern, k);
      try {
        RetrievalScheme info = build_infoset_scheme(spec, pattern);
        if (naive) CHECK(info.rate >= *naive);
        CHECK(scheme_secure_against(info, pattern));
      } catch (const InfeasibleError& err) {
        // Refusal is legitimate only when planning failed outright or the
        // planned information set is too small for full-file download.
        bool planning_failed = false;
        std::size_t info_size = 0;
        try {
          info_size = plan_rate(pattern, k).info_set.size();
        } catch (const InfeasibleError&) {
          planning_failed = true;
        }
        if (planning_failed)
          CHECK_FALSE(naive.has_value());
        else
          CHECK(info_size < static_cast<std::size_t>(k));
      }
    }
  }
}

TEST_CASE("a secure scheme against all t-subsets needs dim(D) >= t") {
  PrimeField f(3);
  for (int n = 3; n <= 4; ++n) {
    auto codes = small_codes(f, n, 2);
    auto shifts = all_binary_vectors(f, n);
    for (const auto& d : codes) {
      for (const auto& e : shifts) {
        if (d.contains(e)) continue;  // a usable shift never lies in D
        for (int t = 1; t <= n; ++t) {
          bool all_secure = true;
          for (const auto& subset : all_subsets_up_to(n, t)) {
            if (static_cast<int>(subset.size()) != t) continue;
            if (!detail::shift_hidden_by(d, e, subset)) {
              all_secure = false;
              break;
            }
          }
          if (all_secure) REQUIRE(d.dim() >= static_cast<std::size_t>(t));
        }
      }
    }
  }
}

TEST_CASE("positive-rate repetition schemes exist exactly for disconnected patterns") {
  PrimeField f(7);
  for (int n = 2; n <= 5; ++n) {
    LinearCode c = grs_code(GrsSpec::standard(f, n, std::max(1, n - 2)));
    LinearCode rep = repetition(f, n);
    auto shifts = all_binary_vectors(f, n);
    std::vector<std::size_t> rank_of_shift;
    for (const auto& e : shifts)
      rank_of_shift.push_back(rank_masked_product(c, e));

    for (const auto& antichain : all_antichains(n)) {
      std::vector<std::vector<int>> sets;
      for (std::uint32_t mask : antichain) {
        std::vector<int> s;
        for (int j = 0; j < n; ++j)
          if (mask & (1u << j)) s.push_back(j);
        sets.push_back(std::move(s));
      }
      auto pattern = CollusionPattern::from_maximal(n, sets);
      bool exists = false;
      for (std::size_t idx = 0; idx < shifts.size() && !exists; ++idx) {
        if (rank_of_shift[idx] == 0) continue;
        bool secure = true;
        for (const auto& maximal : pattern.maximal_sets())
          if (!detail::shift_hidden_by(rep, shifts[idx], maximal)) {
            secure = false;
            break;
          }
        exists = secure;
      }
      REQUIRE(exists == pattern.is_disconnected());
    }
  }
}
