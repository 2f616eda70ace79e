#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "borel/scalar.hpp"

namespace borel {

/// Sparse vector as (column, value) pairs with strictly increasing columns.
using SparseVec = std::vector<std::pair<int, FieldScalar>>;

/// Incremental reduced row echelon form of a sparse matrix.
///
/// Over F_p rows are kept monic. Over Q rows are kept as primitive integer
/// vectors (fraction-free elimination), pivot entry positive.
class Echelon {
 public:
  Echelon(Characteristic p, int columns);
  ~Echelon();
  Echelon(Echelon&&) noexcept;
  Echelon& operator=(Echelon&&) noexcept;

  Characteristic characteristic() const { return p_; }
  int columns() const { return columns_; }

  /// Adds a row; returns true when it raised the rank.
  bool insert(const SparseVec& row);
  std::size_t rank() const;
  std::vector<int> pivot_columns() const;
  /// Basis of the right kernel, one vector per free column in increasing
  /// order; each vector has coefficient 1 at its free column.
  std::vector<SparseVec> kernel() const;

 private:
  struct Impl;
  Characteristic p_;
  int columns_;
  std::unique_ptr<Impl> impl_;
};

std::vector<SparseVec> kernel_basis(Characteristic p, int columns, const std::vector<SparseVec>& rows);

}  // namespace borel
