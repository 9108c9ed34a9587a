#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace posetlab {

/// Subset of the ground set [n]; bit i-1 is set iff element i belongs to the set.
using Mask = std::uint32_t;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxGround = 24;
inline constexpr int kMaxPosetSize = 64;

inline int popcount(Mask m) noexcept { return std::popcount(m); }

/// True iff a is a subset of b (not necessarily proper).
inline constexpr bool subset_of(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

inline constexpr bool proper_subset_of(Mask a, Mask b) noexcept {
  return a != b && subset_of(a, b);
}

inline constexpr Mask full_mask(int n) noexcept {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Errors. Every failure raised by the library derives from Error.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class DuplicateLabel : public Error {
 public:
  using Error::Error;
};

class InvalidParam : public Error {
 public:
  using Error::Error;
};

class OddN : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ElementOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotGraded : public Error {
 public:
  using Error::Error;
};

class InvalidColoring : public Error {
 public:
  using Error::Error;
};

class AlreadyMember : public Error {
 public:
  using Error::Error;
};

class EmbedFailed : public Error {
 public:
  EmbedFailed(int stuck_element, const std::string& what)
      : Error(what), stuck_(stuck_element) {}
  /// Index of the poset element that could not be placed.
  int stuck_element() const noexcept { return stuck_; }

 private:
  int stuck_;
};

class TooLargeForEnumeration : public Error {
 public:
  using Error::Error;
};

class NotFree : public Error {
 public:
  using Error::Error;
};

// Exact combinatorial helpers.

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt factorial(long long n) {
  BigInt r = 1;
  for (long long i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Floor division for possibly negative numerators.
inline constexpr long long floor_div(long long a, long long b) noexcept {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace posetlab
