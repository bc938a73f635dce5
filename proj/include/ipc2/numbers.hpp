#ifndef IPC2_NUMBERS_HPP
#define IPC2_NUMBERS_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ipc2 {

// Exact dyadic rational num / 2^exp, normalized so that exp == 0 or num is odd.
// All interval endpoints in this project are dyadic; no floating point anywhere.
struct Dyadic {
  long long num = 0;
  int exp = 0;

  Dyadic() = default;
  Dyadic(long long n, int e) : num(n), exp(e) {
    if (e < 0) throw std::invalid_argument("Dyadic: negative exponent");
    normalize();
  }

  // num / den with den a positive power of two.
  static Dyadic from_fraction(long long num, long long den) {
    if (den <= 0 || (den & (den - 1)) != 0)
      throw std::invalid_argument("Dyadic: denominator must be a positive power of two");
    int e = 0;
    while ((1LL << e) != den) ++e;
    return Dyadic(num, e);
  }

  void normalize() {
    while (exp > 0 && num % 2 == 0) {
      num /= 2;
      --exp;
    }
  }

  long long den() const { return 1LL << exp; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num == b.num && a.exp == b.exp;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    int m = a.exp > b.exp ? a.exp : b.exp;
    __int128 lhs = static_cast<__int128>(a.num) << (m - a.exp);
    __int128 rhs = static_cast<__int128>(b.num) << (m - b.exp);
    return lhs < rhs;
  }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a == b || a < b; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }
};

inline Dyadic dyadic_min(const Dyadic& a, const Dyadic& b) { return a < b ? a : b; }
inline Dyadic dyadic_max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

// 2*d, exact.
inline Dyadic dyadic_double(const Dyadic& d) {
  if (d.exp > 0) return Dyadic(d.num, d.exp - 1);
  return Dyadic(d.num * 2, 0);
}

// d - 1, exact (used when rescaling the right half of a cell).
inline Dyadic dyadic_sub_one(const Dyadic& d) {
  return Dyadic(d.num - (1LL << d.exp), d.exp);
}

inline std::string to_string(const Dyadic& d) {
  if (d.exp == 0) return std::to_string(d.num);
  return std::to_string(d.num) + "/" + std::to_string(d.den());
}

// Exact rational, normalized with den > 0 and gcd(|num|, den) == 1.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational of(const Dyadic& d) { return Rational(d.num, d.den()); }

  bool is_dyadic() const { return (den & (den - 1)) == 0; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
};

inline std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace ipc2

#endif
