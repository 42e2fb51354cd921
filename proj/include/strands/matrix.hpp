#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "strands/error.hpp"
#include "strands/rational.hpp"

namespace strands {

// Dense matrix over exact rationals.  Small (side = n-1 for n strands), so
// plain row-major storage and schoolbook multiply are fine.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.cols_ != y.rows_) throw DomainError("matrix", "dimension mismatch in product");
    RationalMatrix out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rat& xik = x.at(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out.at(i, j) += xik * y.at(k, j);
      }
    return out;
  }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RationalMatrix& o) const { return !(*this == o); }

  // Canonical string form, usable as a hash key.  Entries are always num/den
  // since cpp_rational keeps them reduced with positive denominator.
  std::string key() const {
    std::string out;
    for (const Rat& q : a_) {
      out += rat_str_explicit(q);
      out += ';';
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace strands
