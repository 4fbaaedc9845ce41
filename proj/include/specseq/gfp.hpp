#pragma once

// Exact arithmetic in the prime field GF(p).

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace specseq {

/// A prime modulus 2 <= p < 2^31, verified at construction.
class Prime {
 public:
  constexpr Prime() = default;  // GF(2)

  explicit Prime(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31)) {
      throw std::invalid_argument("prime out of range [2, 2^31): " + std::to_string(p));
    }
    for (std::int64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
    p_ = static_cast<std::uint32_t>(p);
  }

  constexpr std::uint32_t value() const noexcept { return p_; }

  // Raw residue helpers used by the elimination kernels. Inputs must already
  // lie in [0, p).
  constexpr std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;  // < 2^32 since both < 2^31
    return s >= p_ ? s - p_ : s;
  }
  constexpr std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + (p_ - b);
  }
  constexpr std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  constexpr std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  }
  std::uint32_t reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  /// Multiplicative inverse by the extended Euclidean algorithm.
  std::uint32_t inv(std::uint32_t a) const {
    if (a % p_ == 0) throw std::domain_error("division by zero in GF(" + std::to_string(p_) + ")");
    std::int64_t r0 = p_, r1 = a % p_;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    return reduce(t0);
  }

  friend constexpr bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_ = 2;
};

/// An element of GF(p). Mixing elements of different fields is a caller bug
/// and throws std::logic_error.
class Scalar {
 public:
  Scalar(std::int64_t value, Prime p) : value_(p.reduce(value)), p_(p) {}

  std::uint32_t value() const noexcept { return value_; }
  Prime prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend Scalar operator+(Scalar a, Scalar b) {
    check_same(a, b);
    return from_raw(a.p_.add(a.value_, b.value_), a.p_);
  }
  friend Scalar operator-(Scalar a, Scalar b) {
    check_same(a, b);
    return from_raw(a.p_.sub(a.value_, b.value_), a.p_);
  }
  friend Scalar operator*(Scalar a, Scalar b) {
    check_same(a, b);
    return from_raw(a.p_.mul(a.value_, b.value_), a.p_);
  }
  friend Scalar operator/(Scalar a, Scalar b) { return a * inv(b); }
  Scalar operator-() const { return from_raw(p_.neg(value_), p_); }

  friend bool operator==(Scalar a, Scalar b) {
    check_same(a, b);
    return a.value_ == b.value_;
  }

  friend Scalar add(Scalar a, Scalar b) { return a + b; }
  friend Scalar inv(Scalar a) { return from_raw(a.p_.inv(a.value_), a.p_); }

  friend std::ostream& operator<<(std::ostream& os, Scalar a) {
    return os << a.value_ << " (mod " << a.p_.value() << ')';
  }

 private:
  static Scalar from_raw(std::uint32_t v, Prime p) {
    Scalar s(0, p);
    s.value_ = v;
    return s;
  }
  static void check_same(Scalar a, Scalar b) {
    if (!(a.p_ == b.p_)) {
      throw std::logic_error("GF(p) arithmetic across different primes: " +
                             std::to_string(a.p_.value()) + " vs " + std::to_string(b.p_.value()));
    }
  }

  std::uint32_t value_;
  Prime p_;
};

}  // namespace specseq
