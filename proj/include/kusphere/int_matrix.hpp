#pragma once

#include "kusphere/bigint.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kusphere {

// Sparse integer vector: entries sorted by index, no stored zeros.
class SparseVec {
 public:
  struct Entry {
    std::size_t index;
    BigInt value;
    bool operator==(const Entry&) const = default;
  };

  SparseVec() = default;

  static SparseVec unit(std::size_t index, BigInt value = 1);

  BigInt get(std::size_t index) const;
  // entry(index) += delta; returns the new value.
  const BigInt& add(std::size_t index, const BigInt& delta);
  void set(std::size_t index, const BigInt& value);
  // this += factor * other
  void add_scaled(const SparseVec& other, const BigInt& factor);
  void negate();
  void scale(const BigInt& factor);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  // Direct access for elimination kernels; callers keep entries sorted and
  // nonzero.
  std::vector<Entry>& entries_mut() noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t nnz() const noexcept { return entries_.size(); }

  bool operator==(const SparseVec&) const = default;

 private:
  std::vector<Entry>::iterator find_slot(std::size_t index);
  std::vector<Entry> entries_;
};

// Exact integer matrix. Storage is column-sparse; the interface is that of an
// ordinary rows x cols matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows,
                             std::size_t cols_if_empty = 0);
  static IntMatrix from_rows(
      std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_columns(std::size_t rows, std::vector<SparseVec> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const BigInt& value);
  void add(std::size_t r, std::size_t c, const BigInt& delta);

  const SparseVec& column(std::size_t c) const { return columns_.at(c); }
  SparseVec& column(std::size_t c) { return columns_.at(c); }
  const std::vector<SparseVec>& columns() const noexcept { return columns_; }

  // Matrix-vector product for a sparse column vector.
  SparseVec apply(const SparseVec& v) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(const BigInt& factor) const;
  IntMatrix transpose() const;
  bool is_zero() const;
  std::size_t nnz() const;

  std::vector<std::vector<BigInt>> to_rows() const;
  std::string to_string() const;  // [[a, b], [c, d]]

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> columns_;
};

}  // namespace kusphere
