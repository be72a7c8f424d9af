#include "resnet/bigrational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resnet {

BigNat::BigNat(uint64_t v) {
  while (v) {
    limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
    v >>= 32;
  }
}

void BigNat::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

int BigNat::compare(const BigNat& a, const BigNat& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  return 0;
}

BigNat operator+(const BigNat& a, const BigNat& b) {
  BigNat out;
  const size_t n = std::max(a.limbs_.size(), b.limbs_.size());
  out.limbs_.resize(n, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    out.limbs_[i] = static_cast<uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  if (carry) out.limbs_.push_back(static_cast<uint32_t>(carry));
  return out;
}

BigNat operator-(const BigNat& a, const BigNat& b) {
  if (BigNat::compare(a, b) < 0) throw std::logic_error("BigNat underflow");
  BigNat out;
  out.limbs_.resize(a.limbs_.size(), 0);
  int64_t borrow = 0;
  for (size_t i = 0; i < a.limbs_.size(); ++i) {
    int64_t s = static_cast<int64_t>(a.limbs_[i]) - borrow -
                (i < b.limbs_.size() ? b.limbs_[i] : 0);
    if (s < 0) {
      s += (1LL << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.limbs_[i] = static_cast<uint32_t>(s);
  }
  out.trim();
  return out;
}

BigNat operator*(const BigNat& a, const BigNat& b) {
  BigNat out;
  if (a.is_zero() || b.is_zero()) return out;
  out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (size_t i = 0; i < a.limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.limbs_.size(); ++j) {
      uint64_t cur = out.limbs_[i + j] +
                     static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
      out.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.limbs_.size();
    while (carry) {
      uint64_t cur = out.limbs_[k] + carry;
      out.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  out.trim();
  return out;
}

BigNat BigNat::divmod_small(uint32_t divisor, uint32_t& remainder) const {
  BigNat out;
  out.limbs_.resize(limbs_.size(), 0);
  uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    uint64_t cur = (rem << 32) | limbs_[i];
    out.limbs_[i] = static_cast<uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  remainder = static_cast<uint32_t>(rem);
  out.trim();
  return out;
}

void BigNat::halve() { shift_right(1); }

int BigNat::trailing_zero_bits() const {
  if (limbs_.empty()) return 0;
  int bits = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    if (limbs_[i] == 0) {
      bits += 32;
    } else {
      uint32_t x = limbs_[i];
      while ((x & 1u) == 0) {
        ++bits;
        x >>= 1;
      }
      break;
    }
  }
  return bits;
}

void BigNat::shift_right(int bits) {
  int limb_shift = bits / 32, bit_shift = bits % 32;
  if (limb_shift >= static_cast<int>(limbs_.size())) {
    limbs_.clear();
    return;
  }
  limbs_.erase(limbs_.begin(), limbs_.begin() + limb_shift);
  if (bit_shift) {
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint32_t high = (i + 1 < limbs_.size()) ? limbs_[i + 1] : 0;
      limbs_[i] = (limbs_[i] >> bit_shift) | (high << (32 - bit_shift));
    }
  }
  trim();
}

void BigNat::shift_left(int bits) {
  if (is_zero()) return;
  int limb_shift = bits / 32, bit_shift = bits % 32;
  if (bit_shift) {
    uint32_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint32_t next = limbs_[i] >> (32 - bit_shift);
      limbs_[i] = (limbs_[i] << bit_shift) | carry;
      carry = next;
    }
    if (carry) limbs_.push_back(carry);
  }
  limbs_.insert(limbs_.begin(), limb_shift, 0);
}

BigNat BigNat::gcd(BigNat a, BigNat b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int za = a.trailing_zero_bits(), zb = b.trailing_zero_bits();
  int shared = std::min(za, zb);
  a.shift_right(za);
  b.shift_right(zb);
  while (true) {
    int cmp = compare(a, b);
    if (cmp == 0) break;
    if (cmp < 0) std::swap(a, b);
    a = a - b;
    a.shift_right(a.trailing_zero_bits());
  }
  a.shift_left(shared);
  return a;
}

std::string BigNat::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  BigNat cur = *this;
  while (!cur.is_zero()) {
    uint32_t rem;
    cur = cur.divmod_small(1000000000u, rem);
    for (int i = 0; i < 9; ++i) {
      out.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (out.size() > 1 && out.back() == '0') out.pop_back();
  std::reverse(out.begin(), out.end());
  return out;
}

double BigNat::to_double() const {
  double out = 0.0;
  for (size_t i = limbs_.size(); i-- > 0;) out = out * 4294967296.0 + limbs_[i];
  return out;
}

int BigNat::bit_length() const {
  if (limbs_.empty()) return 0;
  int bits = 32 * static_cast<int>(limbs_.size() - 1);
  uint32_t top = limbs_.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

BigRational::BigRational(int64_t value)
    : negative_(value < 0), num_(static_cast<uint64_t>(value < 0 ? -value : value)), den_(1) {}

BigRational::BigRational(int64_t num, int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  negative_ = (num < 0) != (den < 0);
  num_ = BigNat(static_cast<uint64_t>(num < 0 ? -num : num));
  den_ = BigNat(static_cast<uint64_t>(den < 0 ? -den : den));
  reduce();
}

BigRational BigRational::from_decimal(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    int64_t p = std::stoll(text.substr(0, slash));
    int64_t q = std::stoll(text.substr(slash + 1));
    return BigRational(p, q);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return BigRational(std::stoll(text), 1);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  int64_t scale = 1;
  for (size_t i = dot + 1; i < text.size(); ++i) {
    scale *= 10;
    if (scale > 1000000000000000000LL / 10) throw std::invalid_argument("decimal too long");
  }
  return BigRational(std::stoll(digits), scale);
}

void BigRational::reduce() {
  if (num_.is_zero()) {
    negative_ = false;
    den_ = BigNat(1);
    return;
  }
  BigNat g = BigNat::gcd(num_, den_);
  if (BigNat::compare(g, BigNat(1)) != 0) {
    num_ = divide_exact(num_, g);
    den_ = divide_exact(den_, g);
  }
}

// Exact quotient a / b for b | a, via binary long division.
BigNat BigRational::divide_exact(const BigNat& a, const BigNat& b) {
  // Repeated shift-and-subtract; adequate for the sizes used here.
  BigNat rem = a, quot(0);
  if (BigNat::compare(b, BigNat(0)) == 0) throw std::logic_error("divide by zero");
  while (BigNat::compare(rem, b) >= 0) {
    BigNat shifted = b;
    BigNat unit(1);
    int shift = 0;
    while (true) {
      BigNat next = shifted;
      next.shift_left(1);
      if (BigNat::compare(next, rem) > 0) break;
      shifted = next;
      ++shift;
    }
    unit.shift_left(shift);
    rem = rem - shifted;
    quot = quot + unit;
  }
  return quot;
}

BigRational operator+(const BigRational& a, const BigRational& b) {
  BigRational out;
  BigNat left = a.num_ * b.den_;
  BigNat right = b.num_ * a.den_;
  out.den_ = a.den_ * b.den_;
  if (a.negative_ == b.negative_) {
    out.num_ = left + right;
    out.negative_ = a.negative_;
  } else if (BigNat::compare(left, right) >= 0) {
    out.num_ = left - right;
    out.negative_ = a.negative_;
  } else {
    out.num_ = right - left;
    out.negative_ = b.negative_;
  }
  out.reduce();
  return out;
}

BigRational operator-(const BigRational& a, const BigRational& b) {
  BigRational negb = b;
  if (!negb.num_.is_zero()) negb.negative_ = !negb.negative_;
  return a + negb;
}

BigRational operator*(const BigRational& a, const BigRational& b) {
  BigRational out;
  out.negative_ = a.negative_ != b.negative_;
  out.num_ = a.num_ * b.num_;
  out.den_ = a.den_ * b.den_;
  out.reduce();
  return out;
}

bool operator==(const BigRational& a, const BigRational& b) {
  return a.negative_ == b.negative_ && BigNat::compare(a.num_, b.num_) == 0 &&
         BigNat::compare(a.den_, b.den_) == 0;
}

BigRational BigRational::reciprocal() const {
  if (num_.is_zero()) throw std::invalid_argument("reciprocal of zero");
  BigRational out;
  out.negative_ = negative_;
  out.num_ = den_;
  out.den_ = num_;
  return out;
}

double BigRational::to_double() const {
  // Rescale both sides so neither overflows before dividing.
  BigNat n = num_, d = den_;
  int drop_n = std::max(0, n.bit_length() - 512);
  int drop_d = std::max(0, d.bit_length() - 512);
  n.shift_right(drop_n);
  d.shift_right(drop_d);
  double v = std::ldexp(n.to_double() / d.to_double(), drop_n - drop_d);
  return negative_ ? -v : v;
}

std::string BigRational::to_string() const {
  std::string out = negative_ ? "-" : "";
  out += num_.to_string();
  if (BigNat::compare(den_, BigNat(1)) != 0) out += "/" + den_.to_string();
  return out;
}

}  // namespace resnet
