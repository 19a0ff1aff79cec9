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

#ifndef PIRLAB_LINEAR_CODE_HPP
#define PIRLAB_LINEAR_CODE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirlab/field.hpp"
#include "pirlab/matrix.hpp"

namespace pirlab {

/// A length-n linear code over F_p, held as a full-rank generator matrix.
///
/// The reduced row echelon form of the generator is cached; two codes are
/// equal iff their rrefs are identical (row-space equality).  The zero code
/// (k = 0) is representable.
class LinearCode {
 public:
  /// Keep `gen` as the generator; it must have full row rank.
  static LinearCode from_generator(const Matrix& gen) {
    RrefResult red = rref(gen);
    if (red.rank != gen.rows())
      throw std::invalid_argument("generator matrix is not full rank");
    return LinearCode(gen, std::move(red));
  }

  /// Code spanned by the rows of `span_rows`; the generator is the rref
  /// basis (zero rows dropped, dimension may be anything from 0 to n).
  static LinearCode from_span(const Matrix& span_rows) {
    RrefResult red = rref(span_rows);
    Matrix gen = red.matrix;
    return LinearCode(gen, std::move(red));
  }

  const PrimeField& field() const noexcept { return gen_.field(); }
  std::size_t length() const noexcept { return gen_.cols(); }
  std::size_t dim() const noexcept { return gen_.rows(); }
  const Matrix& generator() const noexcept { return gen_; }
  const Matrix& rref_generator() const noexcept { return rref_gen_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const Vec& word) const {
    return row_space_contains(rref_gen_, word);
  }

  /// Row-space equality.
  friend bool operator==(const LinearCode& a, const LinearCode& b) {
    return a.rref_gen_ == b.rref_gen_;
  }

 private:
  LinearCode(Matrix gen, RrefResult red)
      : gen_(std::move(gen)), rref_gen_(std::move(red.matrix)),
        pivots_(std::move(red.pivots)) {}

  Matrix gen_;
  Matrix rref_gen_;
  std::vector<std::size_t> pivots_;
};

/// Parameters of a generalised Reed-Solomon code: n distinct evaluation
/// points and n nonzero column multipliers.  Always MDS.
struct GrsSpec {
  PrimeField field;
  std::size_t n;
  std::size_t k;
  std::vector<FieldElement> eval_points;
  std::vector<FieldElement> multipliers;

  GrsSpec(const PrimeField& f, std::size_t n_, std::size_t k_,
          std::vector<FieldElement> points, std::vector<FieldElement> mults)
      : field(f), n(n_), k(k_), eval_points(std::move(points)),
        multipliers(std::move(mults)) {
    validate();
  }

  /// Evaluation points 0,1,...,n-1 and all-ones multipliers.
  static GrsSpec standard(const PrimeField& f, std::size_t n, std::size_t k) {
    std::vector<FieldElement> pts, mults;
    for (std::size_t j = 0; j < n; ++j) {
      pts.push_back(f.element(j));
      mults.push_back(f.one());
    }
    return GrsSpec(f, n, k, std::move(pts), std::move(mults));
  }

  /// Spec of a retrieval code paired with this storage code: dimension
  /// `dim`, the evaluation points at `coords`, all-ones multipliers.
  GrsSpec retrieval_spec(const std::vector<int>& coords,
                         std::size_t dim) const {
    std::vector<FieldElement> pts, mults;
    for (int c : coords) {
      if (c < 0 || static_cast<std::size_t>(c) >= n)
        throw std::out_of_range("coordinate out of range");
      pts.push_back(eval_points[c]);
      mults.push_back(field.one());
    }
    return GrsSpec(field, coords.size(), dim, std::move(pts),
                   std::move(mults));
  }

 private:
  void validate() const {
    if (k > n) throw std::invalid_argument("GRS requires k <= n");
    if (n > field.modulus())
      throw std::invalid_argument("GRS requires n <= p for distinct points");
    if (eval_points.size() != n || multipliers.size() != n)
      throw std::invalid_argument("GRS needs n evaluation points and n multipliers");
    for (std::size_t i = 0; i < n; ++i) {
      if (multipliers[i].is_zero())
        throw std::invalid_argument("GRS multiplier " + std::to_string(i + 1) +
                                    " is zero");
      for (std::size_t j = i + 1; j < n; ++j)
        if (eval_points[i] == eval_points[j])
          throw std::invalid_argument("GRS evaluation points repeat at " +
                                      std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1));
    }
  }
};

/// Generator row i is (v_1 a_1^i, ..., v_n a_n^i), i = 0..k-1.
inline LinearCode grs_code(const GrsSpec& spec) {
  Matrix g(spec.field, spec.k, spec.n);
  for (std::size_t j = 0; j < spec.n; ++j) {
    FieldElement powed = spec.multipliers[j];
    for (std::size_t i = 0; i < spec.k; ++i) {
      g(i, j) = powed;
      powed *= spec.eval_points[j];
    }
  }
  return LinearCode::from_generator(g);
}

/// The [n,1] code generated by the all-ones row.
inline LinearCode repetition(const PrimeField& field, std::size_t n) {
  if (n == 0) throw std::invalid_argument("repetition code needs length >= 1");
  Matrix g(field, 1, n);
  for (std::size_t j = 0; j < n; ++j) g(0, j) = field.one();
  return LinearCode::from_generator(g);
}

/// Dual code: (n-k)-dimensional, generator H with gen(C) H^T = 0.
inline LinearCode dual(const LinearCode& c) {
  return LinearCode::from_span(nullspace(c.generator()));
}

/// Componentwise-product span C * D = span{ c .* d : c in C, d in D }.
inline LinearCode star_product(const LinearCode& c, const LinearCode& d) {
  if (c.field() != d.field())
    throw std::invalid_argument("star product over mixed fields");
  if (c.length() != d.length())
    throw std::invalid_argument("star product of codes of different length");
  const std::size_t n = c.length();
  Matrix prods(c.field(), c.dim() * d.dim(), n);
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < d.dim(); ++j)
      for (std::size_t l = 0; l < n; ++l)
        prods(i * d.dim() + j, l) = c.generator()(i, l) * d.generator()(j, l);
  return LinearCode::from_span(prods);
}

/// Minimum Hamming weight over all p^k - 1 nonzero codewords, by direct
/// enumeration.  Refuses to enumerate more than `cap` messages.
inline std::size_t min_distance(const LinearCode& c,
                                std::uint64_t cap = 1000000) {
  if (c.dim() == 0)
    throw std::invalid_argument("minimum distance of the zero code is undefined");
  const std::uint64_t p = c.field().modulus();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    if (total > cap / p)
      throw std::invalid_argument(
          "minimum-distance enumeration needs p^k = " +
          std::to_string(c.field().modulus()) + "^" + std::to_string(c.dim()) +
          " messages; raise the cap (currently " + std::to_string(cap) + ")");
    total *= p;
  }
  const std::size_t n = c.length(), k = c.dim();
  // Walk messages in odometer order, updating the codeword incrementally:
  // bumping digit d adds row d; wrapping a digit from p-1 to 0 also adds its
  // row once, since -(p-1) = 1 mod p.
  std::vector<std::uint32_t> digits(k, 0);
  Vec word(n, c.field().zero());
  std::size_t best = n + 1;
  for (std::uint64_t it = 1; it < total; ++it) {
    std::size_t d = 0;
    while (true) {
      for (std::size_t l = 0; l < n; ++l) word[l] += c.generator()(d, l);
      if (digits[d] + 1 < p) {
        ++digits[d];
        break;
      }
      digits[d] = 0;
      ++d;
    }
    std::size_t w = 0;
    for (std::size_t l = 0; l < n; ++l)
      if (!word[l].is_zero()) ++w;
    best = std::min(best, w);
  }
  return best;
}

/// Code of length |coords| generated by the selected generator columns
/// (ascending coordinate order); the dimension may drop.
inline LinearCode restrict_to(const LinearCode& c, std::vector<int> coords) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  if (coords.empty())
    throw std::invalid_argument("restriction to the empty coordinate set");
  if (coords.front() < 0 ||
      static_cast<std::size_t>(coords.back()) >= c.length())
    throw std::out_of_range("restriction coordinate out of range");
  return LinearCode::from_span(c.generator().select_columns(coords));
}

/// Delete the coordinates in `drop`, keeping the order of the rest.
inline LinearCode puncture(const LinearCode& c, std::vector<int> drop) {
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  if (!drop.empty() &&
      (drop.front() < 0 || static_cast<std::size_t>(drop.back()) >= c.length()))
    throw std::out_of_range("puncturing coordinate out of range");
  std::vector<int> keep;
  for (std::size_t j = 0; j < c.length(); ++j)
    if (!std::binary_search(drop.begin(), drop.end(), static_cast<int>(j)))
      keep.push_back(static_cast<int>(j));
  if (keep.empty())
    throw std::invalid_argument("cannot puncture every coordinate");
  if (keep.size() == c.length()) return c;
  return restrict_to(c, keep);
}

/// rank(G_C diag(e) H_C^T) -- the number of independent symbols a
/// repetition-query scheme with mask e retrieves from storage code C.
inline std::size_t rank_masked_product(const LinearCode& c, const Vec& e) {
  if (e.size() != c.length())
    throw std::invalid_argument("mask length does not match code length");
  Matrix h = dual(c).generator();
  Matrix masked = c.generator();  // G_C diag(e)
  for (std::size_t i = 0; i < masked.rows(); ++i)
    for (std::size_t j = 0; j < masked.cols(); ++j) masked(i, j) *= e[j];
  return rank_of(masked * h.transpose());
}

/// True iff the generator columns indexed by S have rank k.
inline bool full_rank_on(const LinearCode& c, const std::vector<int>& s) {
  return rank_of(c.generator().select_columns(s)) == c.dim();
}

}  // namespace pirlab

#endif  // PIRLAB_LINEAR_CODE_HPP
