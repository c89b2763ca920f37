/* SPDX-License-Identifier: Apache-2.0 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plab {

class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(module) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

class InsufficientDepth : public Error {
 public:
  InsufficientDepth(const std::string& message, long required_exponent)
      : Error("numeric-core", "insufficient depth: " + message),
        required_(required_exponent) {}
  // Smallest exponent the first omitted term must exceed.
  long required_exponent() const { return required_; }

 private:
  long required_;
};

using BigRational = mpq_class;
using BigInt = mpz_class;

BigRational parse_rational(const std::string& text);
std::string to_string(const BigRational& r);
bool has_power_of_two_denominator(const BigRational& r);
BigInt pow2(unsigned long e);

// Real number sum_{n<=N} 2^{-a_n}. When next_exponent is set the object is a
// truncation of an infinite sum whose first omitted term is 2^{-next}; without
// it the finite sum is the number itself.
class DyadicReal {
 public:
  DyadicReal() = default;
  DyadicReal(std::vector<long> exponents, std::optional<long> next_exponent);

  const std::vector<long>& exponents() const { return exps_; }
  std::size_t depth() const { return exps_.size(); }
  long last_exponent() const { return exps_.back(); }
  const std::optional<long>& next_exponent() const { return next_; }
  bool is_truncation() const { return next_.has_value(); }

  // The omitted tail is below 2^{-tail_exponent()}; infinite-free values have
  // no tail and return nullopt.
  std::optional<long> tail_exponent() const;

  // sum 2^{A - a_n}, requires A >= last_exponent().
  BigInt scaled(long A) const;

  bool operator==(const DyadicReal& o) const {
    return exps_ == o.exps_ && next_ == o.next_;
  }

 private:
  std::vector<long> exps_;
  std::optional<long> next_;
};

DyadicReal dyadic_from_exponents(const std::vector<long>& exponents,
                                 std::optional<long> next_exponent = std::nullopt);
BigRational to_rational(const DyadicReal& d);

struct Residual {
  BigRational distance;
  BigInt nearest;
};
Residual residual(const DyadicReal& d, const BigInt& x);

enum class Expansion { normal, dual };
// Positions of the first `count` nonzero base-s digits of the value (normal)
// or of 1 - value (dual).
std::vector<long> digits_base_s(const DyadicReal& d, int s, std::size_t count,
                                Expansion mode = Expansion::normal);
// All certified nonzero positions, at most max_count of them.
std::vector<long> certified_digits(const DyadicReal& d, int s, std::size_t max_count,
                                   Expansion mode = Expansion::normal);

struct ExponentSequence {
  std::vector<long> terms;
  int label = 0;
};
void check_increasing(const std::vector<long>& terms, const std::string& what);

struct MixedSequence {
  std::vector<long> terms;
  std::vector<int> origin;
  std::size_t size() const { return terms.size(); }
};
MixedSequence mix_sequences(const std::vector<ExponentSequence>& seqs);
MixedSequence plain_sequence(const std::vector<long>& terms);

}  // namespace plab
