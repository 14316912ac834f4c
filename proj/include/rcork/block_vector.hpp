#pragma once

#include "rcork/errors.hpp"
#include "rcork/types.hpp"

namespace rcork {

/// A vector of length n*d + s laid out as d polynomial blocks of size n
/// followed by a tail of size s. Block 0 is the leading block
/// (lambda^{d-1} x for a linearization eigenvector), block d-1 holds x.
///
/// The polynomial part is contiguous and column-major, so it can be viewed
/// as an n x d matrix whose columns are the blocks.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(Index n, Index d, Index s) : n_(n), d_(d), s_(s), data_(CVector::Zero(n * d + s)) {}
  BlockVector(Index n, Index d, Index s, CVector data) : n_(n), d_(d), s_(s), data_(std::move(data)) {
    if (data_.size() != n * d + s) {
      throw DimensionError("BlockVector: data length " + std::to_string(data_.size()) +
                           " does not match n*d+s = " + std::to_string(n * d + s));
    }
  }

  Index n() const { return n_; }
  Index d() const { return d_; }
  Index s() const { return s_; }
  Index size() const { return data_.size(); }

  auto block(Index i) { return data_.segment(i * n_, n_); }
  auto block(Index i) const { return data_.segment(i * n_, n_); }
  auto tail() { return data_.segment(n_ * d_, s_); }
  auto tail() const { return data_.segment(n_ * d_, s_); }

  Eigen::Map<CMatrix> poly() { return {data_.data(), n_, d_}; }
  Eigen::Map<const CMatrix> poly() const { return {data_.data(), n_, d_}; }

  CVector& data() { return data_; }
  const CVector& data() const { return data_; }

  double norm() const { return data_.norm(); }

  bool conformal(Index n, Index d, Index s) const { return n_ == n && d_ == d && s_ == s; }

 private:
  Index n_ = 0;
  Index d_ = 0;
  Index s_ = 0;
  CVector data_;
};

}  // namespace rcork
