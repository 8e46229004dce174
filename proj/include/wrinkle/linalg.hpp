#pragma once

#include <Eigen/Core>
#include <vector>

#include "wrinkle/rational.hpp"

namespace wrinkle {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

/// Reduced row echelon form over an exact field. Returns the pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(MatrixX<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar lead = m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  MatrixX<typename Derived::Scalar> work = m;
  return static_cast<Eigen::Index>(row_reduce(work).size());
}

/// Basis of the right null space, one vector per column of the result.
template <typename Derived>
MatrixX<typename Derived::Scalar> exact_nullspace(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> work = m;
  const auto pivots = row_reduce(work);
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0, p = 0; c < m.cols(); ++c) {
    if (p < static_cast<Eigen::Index>(pivots.size()) && pivots[p] == c) {
      ++p;
    } else {
      free.push_back(c);
    }
  }
  MatrixX<Scalar> basis(m.cols(), static_cast<Eigen::Index>(free.size()));
  basis.setZero();
  for (std::size_t f = 0; f < free.size(); ++f) {
    basis(free[f], static_cast<Eigen::Index>(f)) = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      basis(pivots[p], static_cast<Eigen::Index>(f)) = -work(static_cast<Eigen::Index>(p), free[f]);
    }
  }
  return basis;
}

/// Exact determinant by elimination (small matrices only).
template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> work = m;
  Scalar det = 1;
  const Eigen::Index n = work.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (work(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      work.row(pivot).swap(work.row(col));
      det = -det;
    }
    det *= work(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar factor = work(r, col) / work(col, col);
      for (Eigen::Index c = col; c < n; ++c) work(r, c) -= factor * work(col, c);
    }
  }
  return det;
}

template <typename Derived>
Eigen::MatrixXd to_double_matrix(const Eigen::MatrixBase<Derived>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  }
  return out;
}

/// Number of singular values above the threshold.
Eigen::Index numeric_rank(const Eigen::MatrixXd& m, double threshold);

}  // namespace wrinkle
