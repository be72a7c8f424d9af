#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace resnet {

// Arbitrary-precision unsigned magnitude, little-endian base 2^32.
// Just enough arithmetic for exact rational recursions.
class BigNat {
 public:
  BigNat() = default;
  BigNat(uint64_t v);

  bool is_zero() const { return limbs_.empty(); }
  static int compare(const BigNat& a, const BigNat& b);

  friend BigNat operator+(const BigNat& a, const BigNat& b);
  friend BigNat operator-(const BigNat& a, const BigNat& b);  // requires a >= b
  friend BigNat operator*(const BigNat& a, const BigNat& b);

  // Division by a small divisor; returns quotient, sets remainder.
  BigNat divmod_small(uint32_t divisor, uint32_t& remainder) const;

  static BigNat gcd(BigNat a, BigNat b);

  std::string to_string() const;  // decimal
  double to_double() const;
  int bit_length() const;

  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
  void halve();
  int trailing_zero_bits() const;
  void shift_right(int bits);
  void shift_left(int bits);

 private:
  std::vector<uint32_t> limbs_;
  void trim();
};

// Signed exact rational on BigNat, always stored reduced.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(int64_t value);
  BigRational(int64_t num, int64_t den);

  static BigRational from_decimal(const std::string& text);  // "3", "1.5", "3/2"

  friend BigRational operator+(const BigRational& a, const BigRational& b);
  friend BigRational operator-(const BigRational& a, const BigRational& b);
  friend BigRational operator*(const BigRational& a, const BigRational& b);
  friend bool operator==(const BigRational& a, const BigRational& b);

  bool is_negative() const { return negative_; }
  BigRational reciprocal() const;
  double to_double() const;
  std::string to_string() const;  // "p/q" reduced, or "p" when q == 1

 private:
  bool negative_ = false;
  BigNat num_;
  BigNat den_;
  void reduce();
  static BigNat divide_exact(const BigNat& a, const BigNat& b);
};

}  // namespace resnet
