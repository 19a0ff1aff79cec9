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

#ifndef PIRLAB_FIELD_HPP
#define PIRLAB_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pirlab {

class FieldElement;

/// The prime field F_p for a runtime modulus p, 2 <= p <= 2^31 - 1.
///
/// All codes, files, queries and responses in this library live over one of
/// these fields.  Elements are canonical least nonnegative residues; two
/// fields are the same iff their moduli are equal.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) { check_prime(p); }

  std::uint32_t modulus() const noexcept { return p_; }

  /// Canonical element from any integer (reduced mod p).
  FieldElement element(std::uint64_t value) const;
  FieldElement element_signed(std::int64_t value) const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  static void check_prime(std::uint32_t p) {
    if (p < 2) throw std::invalid_argument("field modulus must be at least 2");
    if (p > 0x7fffffffu)
      throw std::invalid_argument("field modulus must be at most 2^31 - 1");
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0)
        throw std::invalid_argument("field modulus " + std::to_string(p) +
                                    " is not prime (smallest factor " +
                                    std::to_string(d) + ")");
    }
  }

  std::uint32_t p_;
};

/// A residue in a specific prime field.  Arithmetic between elements of
/// distinct fields throws.
class FieldElement {
 public:
  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const noexcept { return value_ == 0; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.require_same_field(b);
    std::uint64_t s = std::uint64_t(a.value_) + b.value_;
    if (s >= a.p_) s -= a.p_;
    return FieldElement(static_cast<std::uint32_t>(s), a.p_);
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.require_same_field(b);
    std::uint64_t s = std::uint64_t(a.value_) + a.p_ - b.value_;
    if (s >= a.p_) s -= a.p_;
    return FieldElement(static_cast<std::uint32_t>(s), a.p_);
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.require_same_field(b);
    std::uint64_t s = std::uint64_t(a.value_) * b.value_ % a.p_;
    return FieldElement(static_cast<std::uint32_t>(s), a.p_);
  }
  FieldElement operator-() const {
    return FieldElement(value_ == 0 ? 0 : p_ - value_, p_);
  }
  FieldElement& operator+=(FieldElement b) { return *this = *this + b; }
  FieldElement& operator-=(FieldElement b) { return *this = *this - b; }
  FieldElement& operator*=(FieldElement b) { return *this = *this * b; }

  /// Multiplicative inverse via the extended Euclidean algorithm.
  FieldElement inverse() const {
    if (value_ == 0)
      throw std::domain_error("division by zero in F_" + std::to_string(p_));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = value_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return FieldElement(static_cast<std::uint32_t>(t), p_);
  }
  FieldElement operator/(FieldElement b) const { return *this * b.inverse(); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  friend std::ostream& operator<<(std::ostream& os, FieldElement x) {
    return os << x.value_;
  }

 private:
  friend class PrimeField;
  FieldElement(std::uint32_t value, std::uint32_t p) : value_(value), p_(p) {}

  void require_same_field(const FieldElement& other) const {
    if (p_ != other.p_)
      throw std::invalid_argument("mixed-field arithmetic: F_" +
                                  std::to_string(p_) + " vs F_" +
                                  std::to_string(other.p_));
  }

  std::uint32_t value_;
  std::uint32_t p_;
};

inline FieldElement PrimeField::element(std::uint64_t value) const {
  return FieldElement(static_cast<std::uint32_t>(value % p_), p_);
}

inline FieldElement PrimeField::element_signed(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return FieldElement(static_cast<std::uint32_t>(r), p_);
}

inline FieldElement PrimeField::zero() const { return FieldElement(0, p_); }

inline FieldElement PrimeField::one() const { return FieldElement(1 % p_, p_); }

}  // namespace pirlab

#endif  // PIRLAB_FIELD_HPP
