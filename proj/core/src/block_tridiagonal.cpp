#include "cuav/block_tridiagonal.hpp"

#include <Eigen/Cholesky>

#include "cuav/errors.hpp"

namespace cuav {

BlockTridiagonal::BlockTridiagonal(int n_blocks, int block_size) : n_(n_blocks), b_(block_size) {
  if (n_blocks < 0 || block_size < 1 || block_size > 5) {
    throw InvalidArgument("block tridiagonal: bad dimensions");
  }
  diag_.assign(n_, Block::Zero(b_, b_));
  lower_.assign(n_ > 0 ? n_ - 1 : 0, Block::Zero(b_, b_));
}

void BlockTridiagonal::set_zero() {
  for (auto& d : diag_) d.setZero();
  for (auto& l : lower_) l.setZero();
}

bool BlockTridiagonal::solve(const Vector& rhs, Vector& x) const {
  x.resize(dim());
  if (n_ == 0) return true;
  using Llt = Eigen::LLT<Block>;
  std::vector<Llt> piv(n_);
  std::vector<Block> w(n_);  // w[i] = E_{i-1} S_{i-1}^{-1}
  std::vector<Vector> y(n_);

  piv[0].compute(diag_[0]);
  if (piv[0].info() != Eigen::Success) return false;
  y[0] = rhs.segment(0, b_);
  for (int i = 1; i < n_; ++i) {
    const Block& e = lower_[i - 1];
    // S^{-1} E^T, transposed, since S is symmetric.
    w[i] = piv[i - 1].solve(e.transpose()).transpose();
    const Block s = diag_[i] - w[i] * e.transpose();
    piv[i].compute(s);
    if (piv[i].info() != Eigen::Success) return false;
    y[i] = rhs.segment(i * b_, b_) - w[i] * y[i - 1];
  }
  Vector next = piv[n_ - 1].solve(y[n_ - 1]);
  x.segment((n_ - 1) * b_, b_) = next;
  for (int i = n_ - 2; i >= 0; --i) {
    next = piv[i].solve(y[i] - lower_[i].transpose() * next);
    x.segment(i * b_, b_) = next;
  }
  return x.allFinite();
}

Eigen::MatrixXd BlockTridiagonal::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < n_; ++i) {
    m.block(i * b_, i * b_, b_, b_) = diag_[i];
    if (i + 1 < n_) {
      m.block((i + 1) * b_, i * b_, b_, b_) = lower_[i];
      m.block(i * b_, (i + 1) * b_, b_, b_) = lower_[i].transpose();
    }
  }
  return m;
}

BlockTridiagonal::Vector BlockTridiagonal::multiply(const Vector& x) const {
  Vector y = Vector::Zero(dim());
  for (int i = 0; i < n_; ++i) {
    y.segment(i * b_, b_) += diag_[i] * x.segment(i * b_, b_);
    if (i + 1 < n_) {
      y.segment((i + 1) * b_, b_) += lower_[i] * x.segment(i * b_, b_);
      y.segment(i * b_, b_) += lower_[i].transpose() * x.segment((i + 1) * b_, b_);
    }
  }
  return y;
}

}  // namespace cuav
