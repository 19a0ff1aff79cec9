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

#ifndef PIRLAB_SIMULATOR_HPP
#define PIRLAB_SIMULATOR_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirlab/errors.hpp"
#include "pirlab/linear_code.hpp"
#include "pirlab/matrix.hpp"
#include "pirlab/scheme.hpp"

namespace pirlab {

/// Deterministic, seedable randomness source.  Uniform field elements come
/// from 64-bit draws with rejection above the largest multiple of p, so the
/// distribution is exactly uniform -- the privacy oracle depends on that.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  FieldElement uniform(const PrimeField& f) {
    const std::uint64_t p = f.modulus();
    const std::uint64_t rem =
        (std::numeric_limits<std::uint64_t>::max() % p + 1) % p;
    while (true) {
      std::uint64_t x = gen_();
      if (rem != 0 && x > std::numeric_limits<std::uint64_t>::max() - rem)
        continue;
      return f.element(x % p);
    }
  }

  /// Derive an independent child generator.
  Rng split() { return Rng(gen_() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 gen_;
};

/// m files of k symbols (split into `stripes` stripes of k symbols each),
/// encoded across n servers by the storage code.  Row i*stripes + sigma of
/// the data matrix is stripe sigma of file i; server j stores column j of
/// data * G_C.
struct StorageSystem {
  PrimeField field;
  int m = 0;
  int k = 0;
  int stripes = 1;
  int n = 0;
  LinearCode code;
  Matrix data;     // (m*stripes) x k
  Matrix encoded;  // (m*stripes) x n

  /// File i as a k x stripes array.
  Matrix file(int i) const {
    Matrix out(field, k, stripes);
    for (int sigma = 0; sigma < stripes; ++sigma)
      for (int a = 0; a < k; ++a)
        out(a, sigma) = data(static_cast<std::size_t>(i) * stripes + sigma, a);
    return out;
  }

  Vec server_column(int j) const { return encoded.column(j); }
};

/// Encode m files (each a k x stripes array) with the storage code.
inline StorageSystem encode_storage(const std::vector<Matrix>& files,
                                    const LinearCode& code, int stripes) {
  if (files.empty()) throw std::invalid_argument("need at least one file");
  if (stripes < 1) throw std::invalid_argument("stripes must be >= 1");
  const PrimeField& f = code.field();
  const int k = static_cast<int>(code.dim());
  const int m = static_cast<int>(files.size());
  Matrix data(f, static_cast<std::size_t>(m) * stripes, k);
  for (int i = 0; i < m; ++i) {
    const Matrix& file = files[i];
    if (file.field() != f || file.rows() != static_cast<std::size_t>(k) ||
        file.cols() != static_cast<std::size_t>(stripes))
      throw std::invalid_argument("file " + std::to_string(i + 1) +
                                  " is not a k x stripes array over the "
                                  "storage field");
    for (int sigma = 0; sigma < stripes; ++sigma)
      for (int a = 0; a < k; ++a)
        data(static_cast<std::size_t>(i) * stripes + sigma, a) =
            file(a, sigma);
  }
  Matrix encoded = data * code.generator();
  return StorageSystem{f,    m,    k, stripes, static_cast<int>(code.length()),
                       code, data, encoded};
}

/// Uniformly random files, deterministic in the seed.
inline StorageSystem random_storage(const LinearCode& code, int m, int stripes,
                                    std::uint64_t seed) {
  Rng rng(seed);
  const PrimeField& f = code.field();
  std::vector<Matrix> files;
  for (int i = 0; i < m; ++i) {
    Matrix file(f, code.dim(), stripes);
    for (std::size_t a = 0; a < code.dim(); ++a)
      for (int sigma = 0; sigma < stripes; ++sigma)
        file(a, sigma) = rng.uniform(f);
    files.push_back(std::move(file));
  }
  return encode_storage(files, code, stripes);
}

/// Queries for one round: one vector of length m*blocks per retained server
/// (in retained order).
using RoundQueries = std::vector<Vec>;

namespace detail {

inline void require_compatible(const RetrievalScheme& scheme,
                               const StorageSystem& system) {
  if (system.code.generator() != scheme.storage.generator())
    throw std::invalid_argument(
        "storage system was not encoded with the scheme's generator matrix");
  if (system.stripes != scheme.blocks)
    throw std::invalid_argument(
        "scheme needs " + std::to_string(scheme.blocks) +
        " stripes per file, storage has " + std::to_string(system.stripes));
}

}  // namespace detail

/// Sample the per-round queries for retrieving file i.  For every (file,
/// block) pair a codeword of D is drawn uniformly; the shift of the round's
/// block b is added at the (i, b) coordinate.  Servers outside the retained
/// set receive nothing.
inline std::vector<RoundQueries> gen_queries(const RetrievalScheme& scheme,
                                             const StorageSystem& system,
                                             int file_index, Rng& rng) {
  detail::require_compatible(scheme, system);
  if (file_index < 0 || file_index >= system.m)
    throw std::invalid_argument("file index out of range");
  const PrimeField& f = system.field;
  const std::size_t n_ret = scheme.retained.size();
  const int blocks = scheme.blocks;
  const LinearCode& d = scheme.retrieval;

  std::vector<RoundQueries> rounds;
  for (const RoundPlan& plan : scheme.rounds) {
    RoundQueries queries(n_ret, Vec(static_cast<std::size_t>(system.m) * blocks,
                                    f.zero()));
    for (int l = 0; l < system.m; ++l) {
      for (int b = 0; b < blocks; ++b) {
        Vec coeffs;
        for (std::size_t c = 0; c < d.dim(); ++c)
          coeffs.push_back(rng.uniform(f));
        Vec word = vec_mat(coeffs, d.generator());
        const std::size_t coord = static_cast<std::size_t>(l) * blocks + b;
        for (std::size_t jj = 0; jj < n_ret; ++jj)
          queries[jj][coord] = word[jj];
        if (l == file_index)
          for (int pos : plan.block_support[b])
            queries[static_cast<std::size_t>(pos)][coord] += f.one();
      }
    }
    rounds.push_back(std::move(queries));
  }
  return rounds;
}

/// A server's answer: the inner product of its stored column with the query.
inline FieldElement server_respond(const Vec& stored, const Vec& query) {
  if (stored.size() != query.size())
    throw std::invalid_argument("query length does not match stored column");
  return inner_product(query, stored);
}

struct DecodedSymbol {
  int block;
  int server;  // original index
  FieldElement value;
};

namespace detail {

struct Reconstruction {
  Matrix file;  // k x blocks
  std::vector<std::vector<DecodedSymbol>> per_round;
};

/// Generic-D path: the response vector lies in (C*D restricted to the
/// retained servers) shifted by the scheduled coded symbols, so applying a
/// parity-check matrix H of the star code leaves a square system in those
/// symbols (invertible because the dual of an MDS code is MDS).  Each block
/// collects k symbols across the rounds and solves for its stripe.
inline Reconstruction reconstruct_star(const RetrievalScheme& scheme,
                                       const std::vector<Vec>& responses) {
  const LinearCode& storage = scheme.storage;
  const PrimeField& f = storage.field();
  const int k = static_cast<int>(storage.dim());
  LinearCode used = restrict_to(storage, scheme.retained);
  Matrix h = dual(star_product(used, scheme.retrieval)).generator();
  if (h.rows() != static_cast<std::size_t>(scheme.blocks))
    throw std::domain_error("scheme corruption: star-code parity rank " +
                            std::to_string(h.rows()) + " != blocks " +
                            std::to_string(scheme.blocks));

  Reconstruction out{Matrix(f, k, scheme.blocks), {}};
  std::vector<std::vector<int>> positions(scheme.blocks);
  std::vector<std::vector<FieldElement>> values(scheme.blocks);
  for (std::size_t j = 0; j < scheme.rounds.size(); ++j) {
    const RoundPlan& plan = scheme.rounds[j];
    Vec rhs = mat_vec(h, responses[j]);
    Matrix a(f, scheme.blocks, scheme.blocks);
    for (int b = 0; b < scheme.blocks; ++b) {
      int pos = plan.block_support[b].front();
      for (int row = 0; row < scheme.blocks; ++row) a(row, b) = h(row, pos);
    }
    Vec symbols = solve_square(a, rhs);
    std::vector<DecodedSymbol> decoded;
    for (int b = 0; b < scheme.blocks; ++b) {
      int server = scheme.retained[plan.block_support[b].front()];
      positions[b].push_back(server);
      values[b].push_back(symbols[b]);
      decoded.push_back(DecodedSymbol{b, server, symbols[b]});
    }
    out.per_round.push_back(std::move(decoded));
  }

  for (int b = 0; b < scheme.blocks; ++b) {
    Matrix cols = storage.generator().select_columns(positions[b]);
    Vec stripe = solve_square(cols.transpose(), values[b]);
    for (int a = 0; a < k; ++a) out.file(a, b) = stripe[a];
  }
  return out;
}

/// Repetition path: the servers outside the shift see the plain interference
/// codeword, which k of them pin down everywhere (MDS); subtracting it from
/// each block's part leaves k clean coded symbols per stripe.
inline Reconstruction reconstruct_repetition(const RetrievalScheme& scheme,
                                             const std::vector<Vec>& responses) {
  const LinearCode& storage = scheme.storage;
  const PrimeField& f = storage.field();
  const int k = static_cast<int>(storage.dim());
  const Vec& r = responses.front();

  std::vector<int> rand_local(scheme.randomness_positions.begin(),
                              scheme.randomness_positions.begin() + k);
  std::vector<int> rand_orig;
  Vec rand_vals;
  for (int pos : rand_local) {
    rand_orig.push_back(scheme.retained[pos]);
    rand_vals.push_back(r[pos]);
  }
  Matrix rand_cols = storage.generator().select_columns(rand_orig);
  Vec interference_msg = solve_square(rand_cols.transpose(), rand_vals);
  Vec interference = vec_mat(interference_msg, storage.generator());

  Reconstruction out{Matrix(f, k, scheme.blocks), {}};
  std::vector<DecodedSymbol> decoded;
  const RoundPlan& plan = scheme.rounds.front();
  for (int b = 0; b < scheme.blocks; ++b) {
    std::vector<int> origs;
    Vec vals;
    for (int idx = 0; idx < k; ++idx) {
      int pos = plan.block_support[b][idx];
      int orig = scheme.retained[pos];
      origs.push_back(orig);
      vals.push_back(r[pos] - interference[orig]);
      decoded.push_back(DecodedSymbol{b, orig, vals.back()});
    }
    Matrix cols = storage.generator().select_columns(origs);
    Vec stripe = solve_square(cols.transpose(), vals);
    for (int a = 0; a < k; ++a) out.file(a, b) = stripe[a];
  }
  out.per_round.push_back(std::move(decoded));
  return out;
}

inline Reconstruction reconstruct_detail(const RetrievalScheme& scheme,
                                         const std::vector<Vec>& responses) {
  if (responses.size() != scheme.rounds.size())
    throw std::invalid_argument("responses missing for some rounds");
  for (const Vec& r : responses)
    if (r.size() != scheme.retained.size())
      throw std::invalid_argument("response vector has the wrong length");
  if (!scheme.full_file())
    throw InfeasibleError(
        "scheme decodes only " + std::to_string(scheme.symbols_per_block) +
        " of " + std::to_string(scheme.storage.dim()) +
        " symbols per block; full-file reconstruction is unavailable");
  switch (scheme.kind) {
    case SchemeKind::Partition:
    case SchemeKind::StripedPartition:
      return reconstruct_repetition(scheme, responses);
    default:
      return reconstruct_star(scheme, responses);
  }
}

}  // namespace detail

/// Recover the requested file (k x blocks) from the per-round responses.
inline Matrix reconstruct(const RetrievalScheme& scheme,
                          const std::vector<Vec>& responses) {
  return detail::reconstruct_detail(scheme, responses).file;
}

struct RoundRecord {
  RoundQueries queries;
  Vec responses;
  std::vector<DecodedSymbol> decoded;
};

/// Everything one retrieval produced, reproducible from the seed.
struct Transcript {
  int file_index = 0;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> rounds;
  Matrix reconstructed;
  int downloaded = 0;
  int decoded_count = 0;
  bool match = false;
};

/// Play the whole protocol: query, respond, reconstruct, compare.
inline Transcript run_retrieval(const StorageSystem& system,
                                const RetrievalScheme& scheme, int file_index,
                                std::uint64_t seed) {
  Rng rng(seed);
  auto query_rounds = gen_queries(scheme, system, file_index, rng);

  std::vector<Vec> responses;
  for (const RoundQueries& queries : query_rounds) {
    Vec r;
    for (std::size_t jj = 0; jj < scheme.retained.size(); ++jj)
      r.push_back(server_respond(system.server_column(scheme.retained[jj]),
                                 queries[jj]));
    responses.push_back(std::move(r));
  }

  detail::Reconstruction rec = detail::reconstruct_detail(scheme, responses);
  Transcript t{file_index, seed, {}, rec.file, 0, 0, false};
  for (std::size_t j = 0; j < query_rounds.size(); ++j) {
    t.rounds.push_back(RoundRecord{std::move(query_rounds[j]), responses[j],
                                   rec.per_round[j]});
    t.downloaded += static_cast<int>(responses[j].size());
    t.decoded_count += static_cast<int>(rec.per_round[j].size());
  }
  t.match = rec.file == system.file(file_index);
  return t;
}

}  // namespace pirlab

#endif  // PIRLAB_SIMULATOR_HPP
