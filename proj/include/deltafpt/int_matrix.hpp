#pragma once

// Dense arbitrary-precision integer matrix plus the text formats the CLI
// consumes. Matrices are value types; every solver takes them by const
// reference and returns fresh values.

#include "deltafpt/errors.hpp"
#include "deltafpt/numeric.hpp"

#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace deltafpt {

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {
    requireNonEmpty();
  }

  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    requireNonEmpty();
    if (e_.size() != rows_ * cols_)
      throw DimensionError("entry count does not match rows*cols");
  }

  // Row-major literal, mainly for tests and goldens.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    requireNonEmpty();
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged initializer rows");
      for (long long v : r) e_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

  IntVec row(std::size_t i) const {
    return IntVec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  }

  IntVec col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }

  IntVec mulVec(const IntVec& v) const {
    if (v.size() != cols_) throw DimensionError("matrix*vector shape mismatch");
    IntVec r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  RatVec mulVec(const RatVec& v) const {
    if (v.size() != cols_) throw DimensionError("matrix*vector shape mismatch");
    RatVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
  }

  IntMatrix selectRows(const std::vector<std::size_t>& idx) const {
    IntMatrix r(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
    return r;
  }

  IntMatrix selectCols(const std::vector<std::size_t>& idx) const {
    IntMatrix r(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
    return r;
  }

  IntMatrix topRows(std::size_t k) const {
    IntMatrix r(k, cols_);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    return r;
  }

  IntMatrix bottomRows(std::size_t k) const {
    IntMatrix r(k, cols_);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(rows_ - k + i, j);
    return r;
  }

  Int maxAbsEntry() const {
    Int m = 0;
    for (const Int& v : e_) if (absInt(v) > m) m = absInt(v);
    return m;
  }

  void swapCols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

  void swapRows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

 private:
  void requireNonEmpty() const {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("empty matrices are rejected");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Int> e_;
};

// perm[i] = source index placed at position i.
inline IntMatrix permuteRows(const IntMatrix& a, const std::vector<std::size_t>& perm) {
  if (perm.size() != a.rows()) throw DimensionError("row permutation size mismatch");
  return a.selectRows(perm);
}

inline IntMatrix permuteCols(const IntMatrix& a, const std::vector<std::size_t>& perm) {
  if (perm.size() != a.cols()) throw DimensionError("column permutation size mismatch");
  return a.selectCols(perm);
}

// ---------------------------------------------------------------------------
// Text formats.
//
// Matrix: first data line "ROWS COLS", then ROWS lines of COLS integers
// separated by single spaces. Lines starting with '#' and blank lines are
// ignored. Rational vector: one data line of space-separated entries, each a
// plain integer or "num/den".

namespace detail {

inline bool dataLine(const std::string& line) {
  for (char c : line) {
    if (c == '#') return false;
    if (!std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

inline Int parseIntToken(const std::string& tok, std::size_t lineNo, std::size_t colNo) {
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) throw ParseError("expected integer, got '" + tok + "'", lineNo, colNo);
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError("expected integer, got '" + tok + "'", lineNo, colNo);
  return Int(tok);
}

inline std::vector<std::string> splitWs(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream iss(line);
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

}  // namespace detail

inline IntMatrix parseIntMatrix(std::istream& in) {
  std::string line;
  std::size_t lineNo = 0;
  std::size_t rows = 0, cols = 0;
  bool haveHeader = false;
  std::vector<Int> entries;
  std::size_t seenRows = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!detail::dataLine(line)) continue;
    auto toks = detail::splitWs(line);
    if (!haveHeader) {
      if (toks.size() != 2)
        throw ParseError("header must be 'ROWS COLS'", lineNo);
      Int r = detail::parseIntToken(toks[0], lineNo, 1);
      Int c = detail::parseIntToken(toks[1], lineNo, 2);
      if (r < 1 || c < 1 || r > 10000 || c > 10000)
        throw ParseError("matrix dimensions out of range", lineNo);
      rows = static_cast<std::size_t>(r);
      cols = static_cast<std::size_t>(c);
      entries.reserve(rows * cols);
      haveHeader = true;
      continue;
    }
    if (seenRows == rows)
      throw ParseError("extra data after last matrix row", lineNo);
    if (toks.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " entries, got " +
                           std::to_string(toks.size()),
                       lineNo);
    for (std::size_t j = 0; j < toks.size(); ++j)
      entries.push_back(detail::parseIntToken(toks[j], lineNo, j + 1));
    ++seenRows;
  }
  if (!haveHeader) throw ParseError("missing matrix header", lineNo ? lineNo : 1);
  if (seenRows != rows)
    throw ParseError("expected " + std::to_string(rows) + " rows, got " +
                         std::to_string(seenRows),
                     lineNo ? lineNo : 1);
  return IntMatrix(rows, cols, std::move(entries));
}

inline IntMatrix parseIntMatrix(const std::string& text) {
  std::istringstream iss(text);
  return parseIntMatrix(iss);
}

inline void printIntMatrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
}

inline std::string printIntMatrix(const IntMatrix& m) {
  std::ostringstream oss;
  printIntMatrix(oss, m);
  return oss.str();
}

inline Rat parseRatToken(const std::string& tok, std::size_t lineNo, std::size_t colNo) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) return Rat(detail::parseIntToken(tok, lineNo, colNo));
  Int n = detail::parseIntToken(tok.substr(0, slash), lineNo, colNo);
  std::string denTok = tok.substr(slash + 1);
  if (denTok.empty()) throw ParseError("malformed rational '" + tok + "'", lineNo, colNo);
  Int d = detail::parseIntToken(denTok, lineNo, colNo);
  if (d == 0) throw ParseError("zero denominator in '" + tok + "'", lineNo, colNo);
  return Rat(n, d);
}

inline RatVec parseRatVec(std::istream& in) {
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!detail::dataLine(line)) continue;
    auto toks = detail::splitWs(line);
    RatVec v;
    v.reserve(toks.size());
    for (std::size_t j = 0; j < toks.size(); ++j)
      v.push_back(parseRatToken(toks[j], lineNo, j + 1));
    return v;
  }
  throw ParseError("missing vector data", lineNo ? lineNo : 1);
}

inline RatVec parseRatVec(const std::string& text) {
  std::istringstream iss(text);
  return parseRatVec(iss);
}

inline std::string printRatVec(const RatVec& v) {
  std::ostringstream oss;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) oss << ' ';
    oss << toString(v[i]);
  }
  return oss.str();
}

inline IntVec parseIntVec(std::istream& in) {
  RatVec v = parseRatVec(in);
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (denom(v[i]) != 1) throw ParseError("expected integer vector entry", 1, i + 1);
    r[i] = numer(v[i]);
  }
  return r;
}

inline IntVec parseIntVec(const std::string& text) {
  std::istringstream iss(text);
  return parseIntVec(iss);
}

}  // namespace deltafpt
