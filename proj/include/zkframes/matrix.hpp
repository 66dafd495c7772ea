#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace zkframes {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_vectors(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  void set_row(std::size_t r, const IntVector& v);
  void swap_rows(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_zero() const;
  bool is_symmetric() const;

  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);
  IntMatrix& operator*=(const Integer& s);

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator-(IntMatrix a) { return a *= Integer(-1); }
  friend IntMatrix operator*(IntMatrix a, const Integer& s) { return a *= s; }
  friend IntMatrix operator*(const Integer& s, IntMatrix a) { return a *= s; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom);
  static IntMatrix hstack(const IntMatrix& left, const IntMatrix& right);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// v * M for a row vector v.
IntVector row_times(const IntVector& v, const IntMatrix& m);
Integer dot(const IntVector& a, const IntVector& b);

/// Matrix over Z_modulus; entries are kept in {0, ..., modulus-1}.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::int64_t modulus, std::size_t rows, std::size_t cols);

  /// Reduces every entry of an integer matrix into {0, ..., modulus-1}.
  static ModMatrix reduce(const IntMatrix& m, std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);

  /// The lift rho: Z_k -> {0, ..., k-1} applied entrywise.
  IntMatrix lift() const;

  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.modulus_ == b.modulus_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::int64_t modulus_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

std::int64_t mod_floor(std::int64_t a, std::int64_t m);
Integer mod_floor(const Integer& a, const Integer& m);

/// Converts to int64, throwing std::overflow_error when it does not fit.
std::int64_t to_int64(const Integer& v);

}  // namespace zkframes
