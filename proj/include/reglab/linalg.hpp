#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace reglab {

/// Dense integer matrix for exact rank computations. Entries are 128-bit:
/// Bareiss elimination keeps every intermediate value equal to a minor of
/// the input, and the boundary matrices this library produces stay far
/// inside that range. Overflow throws instead of wrapping.
class IntMatrix {
 public:
  using Entry = __int128;

  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Entry& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Entry at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Entry> data_;
};

namespace detail {

inline IntMatrix::Entry checked_mul_entry(IntMatrix::Entry a, IntMatrix::Entry b) {
  IntMatrix::Entry r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("exact rank: intermediate minor overflow");
  return r;
}

inline IntMatrix::Entry checked_sub_entry(IntMatrix::Entry a, IntMatrix::Entry b) {
  IntMatrix::Entry r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("exact rank: intermediate minor overflow");
  return r;
}

}  // namespace detail

/// Rank over the rationals by fraction-free (Bareiss) elimination with full
/// pivoting. The pivot choice favors the smallest nonzero magnitude to limit
/// entry growth; the result is the exact rank regardless of pivoting.
inline std::size_t exact_rank(IntMatrix m) {
  const std::size_t limit = std::min(m.rows(), m.cols());
  IntMatrix::Entry prev = 1;
  std::size_t r = 0;
  while (r < limit) {
    std::size_t pr = m.rows(), pc = m.cols();
    IntMatrix::Entry best = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      for (std::size_t j = r; j < m.cols(); ++j) {
        IntMatrix::Entry v = m.at(i, j);
        if (v == 0) continue;
        IntMatrix::Entry mag = v < 0 ? -v : v;
        if (best == 0 || mag < best) {
          best = mag;
          pr = i;
          pc = j;
        }
      }
    }
    if (best == 0) break;
    m.swap_rows(r, pr);
    m.swap_cols(r, pc);
    const IntMatrix::Entry pivot = m.at(r, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = r + 1; j < m.cols(); ++j) {
        IntMatrix::Entry num = detail::checked_sub_entry(
            detail::checked_mul_entry(m.at(i, j), pivot),
            detail::checked_mul_entry(m.at(i, r), m.at(r, j)));
        m.at(i, j) = num / prev;  // exact by the Bareiss identity
      }
      m.at(i, r) = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

}  // namespace reglab
