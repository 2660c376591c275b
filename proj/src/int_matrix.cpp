#include "kusphere/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kusphere {

SparseVec SparseVec::unit(std::size_t index, BigInt value) {
  SparseVec v;
  if (value != 0) v.entries_.push_back({index, std::move(value)});
  return v;
}

std::vector<SparseVec::Entry>::iterator SparseVec::find_slot(std::size_t index) {
  return std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::size_t i) { return e.index < i; });
}

BigInt SparseVec::get(std::size_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::size_t i) { return e.index < i; });
  if (it != entries_.end() && it->index == index) return it->value;
  return 0;
}

const BigInt& SparseVec::add(std::size_t index, const BigInt& delta) {
  static const BigInt zero = 0;
  if (delta == 0) {
    auto it = find_slot(index);
    return (it != entries_.end() && it->index == index) ? it->value : zero;
  }
  auto it = find_slot(index);
  if (it != entries_.end() && it->index == index) {
    it->value += delta;
    if (it->value == 0) {
      entries_.erase(it);
      return zero;
    }
    return it->value;
  }
  return entries_.insert(it, Entry{index, delta})->value;
}

void SparseVec::set(std::size_t index, const BigInt& value) {
  auto it = find_slot(index);
  if (it != entries_.end() && it->index == index) {
    if (value == 0)
      entries_.erase(it);
    else
      it->value = value;
  } else if (value != 0) {
    entries_.insert(it, Entry{index, value});
  }
}

void SparseVec::add_scaled(const SparseVec& other, const BigInt& factor) {
  if (factor == 0 || other.empty()) return;
  if (other.nnz() <= 2) {
    for (const auto& e : other.entries_) add(e.index, factor * e.value);
    return;
  }
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
      merged.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->index < a->index) {
      merged.push_back({b->index, factor * b->value});
      ++b;
    } else {
      BigInt v = a->value + factor * b->value;
      if (v != 0) merged.push_back({a->index, std::move(v)});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

void SparseVec::negate() {
  for (auto& e : entries_) e.value = -e.value;
}

void SparseVec::scale(const BigInt& factor) {
  if (factor == 0) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.value *= factor;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), columns_(cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVec::unit(i);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows,
                               std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] != 0) m.columns_[c].set(r, rows[r][c]);
  }
  return m;
}

IntMatrix IntMatrix::from_rows(
    std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<BigInt>> converted;
  for (const auto& row : rows) {
    std::vector<BigInt> r;
    for (long long v : row) r.emplace_back(v);
    converted.push_back(std::move(r));
  }
  return from_rows(converted);
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::vector<SparseVec> columns) {
  IntMatrix m;
  m.rows_ = rows;
  m.cols_ = columns.size();
  m.columns_ = std::move(columns);
  for (const auto& col : m.columns_)
    if (!col.empty() && col.entries().back().index >= rows)
      throw std::out_of_range("column entry outside matrix");
  return m;
}

BigInt IntMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  return columns_[c].get(r);
}

void IntMatrix::set(std::size_t r, std::size_t c, const BigInt& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  columns_[c].set(r, value);
}

void IntMatrix::add(std::size_t r, std::size_t c, const BigInt& delta) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  columns_[c].add(r, delta);
}

SparseVec IntMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& e : v.entries()) {
    if (e.index >= cols_) throw std::out_of_range("vector longer than matrix");
    out.add_scaled(columns_[e.index], e.value);
  }
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t c = 0; c < rhs.cols_; ++c) out.columns_[c] = apply(rhs.columns_[c]);
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("dimension mismatch in sum");
  IntMatrix out = *this;
  for (std::size_t c = 0; c < cols_; ++c) out.columns_[c].add_scaled(rhs.columns_[c], 1);
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("dimension mismatch in difference");
  IntMatrix out = *this;
  for (std::size_t c = 0; c < cols_; ++c) out.columns_[c].add_scaled(rhs.columns_[c], -1);
  return out;
}

IntMatrix IntMatrix::scaled(const BigInt& factor) const {
  IntMatrix out = *this;
  for (auto& col : out.columns_) col.scale(factor);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  std::vector<SparseVec> cols(rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : columns_[c].entries()) cols[e.index].add(c, e.value);
  return from_columns(cols_, std::move(cols));
}

bool IntMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseVec& c) { return c.empty(); });
}

std::size_t IntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.nnz();
  return n;
}

std::vector<std::vector<BigInt>> IntMatrix::to_rows() const {
  std::vector<std::vector<BigInt>> out(rows_, std::vector<BigInt>(cols_));
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& e : columns_[c].entries()) out[e.index][c] = e.value;
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  const auto rows = to_rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) os << ", ";
      os << rows[r][c];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace kusphere
