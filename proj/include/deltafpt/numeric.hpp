#pragma once

// Exact arithmetic primitives shared by the whole library. Everything is
// boost::multiprecision based; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace deltafpt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int absInt(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sgn(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

// Floor division; remainder lands in [0, |b|).
inline Int floorDiv(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floorMod(const Int& a, const Int& b) { return a - floorDiv(a, b) * b; }

// g = gcd(a, b) >= 0 with a*x + b*y = g.
inline Int extGcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int oldR = a, r = b;
  Int oldX = 1, xx = 0;
  Int oldY = 0, yy = 1;
  while (r != 0) {
    Int q = oldR / r;
    Int t = oldR - q * r; oldR = r; r = t;
    t = oldX - q * xx; oldX = xx; xx = t;
    t = oldY - q * yy; oldY = yy; yy = t;
  }
  if (oldR < 0) { oldR = -oldR; oldX = -oldX; oldY = -oldY; }
  x = oldX;
  y = oldY;
  return oldR;
}

inline Int ipow(const Int& base, unsigned exp) {
  Int r = 1, b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

// Smallest integer r >= 1 with r^k >= v (v >= 0, k >= 1).
inline Int ceilRoot(const Int& v, unsigned k) {
  if (v <= 1) return 1;
  Int lo = 1, hi = 2;
  while (ipow(hi, k) < v) hi *= 2;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (ipow(mid, k) >= v) hi = mid; else lo = mid + 1;
  }
  return lo;
}

inline Int numer(const Rat& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int denom(const Rat& r) { return Int(boost::multiprecision::denominator(r)); }

inline Int floorRat(const Rat& r) { return floorDiv(numer(r), denom(r)); }

inline Int ceilRat(const Rat& r) {
  Int n = numer(r), d = denom(r);
  Int q = floorDiv(n, d);
  return (q * d == n) ? q : q + 1;
}

inline Rat absRat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// floor(log2(v)) for v >= 1, i.e. the index of the highest set bit.
inline unsigned floorLog2(const Int& v) {
  return static_cast<unsigned>(boost::multiprecision::msb(v));
}

// Exact test for "x > log2(v)" with integer x and v >= 1.
inline bool exceedsLog2(const Int& x, const Int& v) {
  if (x < 0) return false;
  if (v == 1) return x > 0;
  // x > log2(v)  <=>  2^x > v
  unsigned bits = floorLog2(v);
  if (x > bits + 1) return true;  // 2^x >= 2^(bits+2) > v
  return ipow(2, static_cast<unsigned>(x)) > v;
}

inline IntVec addVec(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec subVec(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec scaleVec(const IntVec& a, const Int& k) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int maxAbs(const IntVec& a) {
  Int m = 0;
  for (const Int& v : a) if (absInt(v) > m) m = absInt(v);
  return m;
}

inline bool isZeroVec(const IntVec& a) {
  for (const Int& v : a) if (v != 0) return false;
  return true;
}

// Lexicographic comparison, first differing component decides.
inline bool lexLess(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline std::string toString(const Int& v) { return v.str(); }

inline std::string toString(const Rat& r) {
  if (denom(r) == 1) return numer(r).str();
  return numer(r).str() + "/" + denom(r).str();
}

}  // namespace deltafpt
