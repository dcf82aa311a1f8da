#pragma once

#include <vector>

#include <Eigen/Core>

namespace cuav {

/// Symmetric block-tridiagonal matrix with square blocks of size <= 5.
/// diag(i) is block (i, i); lower(i) is block (i + 1, i).
class BlockTridiagonal {
 public:
  using Block = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5>;
  using Vector = Eigen::VectorXd;

  BlockTridiagonal(int n_blocks, int block_size);

  int blocks() const { return n_; }
  int block_size() const { return b_; }
  int dim() const { return n_ * b_; }

  void set_zero();
  Block& diag(int i) { return diag_[i]; }
  const Block& diag(int i) const { return diag_[i]; }
  Block& lower(int i) { return lower_[i]; }
  const Block& lower(int i) const { return lower_[i]; }

  /// Block LDL^T sweep. Returns false when a pivot block is not positive
  /// definite.
  bool solve(const Vector& rhs, Vector& x) const;

  Eigen::MatrixXd to_dense() const;
  Vector multiply(const Vector& x) const;

 private:
  int n_;
  int b_;
  std::vector<Block> diag_;
  std::vector<Block> lower_;
};

}  // namespace cuav
