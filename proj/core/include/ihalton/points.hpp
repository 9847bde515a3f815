#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ihalton {

/// Row-major N x d block of points.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t n, std::size_t d) : n_(n), d_(d), data_(n * d, 0.0) {}
  PointSet(std::size_t d, std::vector<double> data) : d_(d), data_(std::move(data)) {
    if (d_ == 0) throw std::invalid_argument("point dimension must be >= 1");
    if (data_.size() % d_ != 0) throw std::invalid_argument("point data is not a multiple of d");
    n_ = data_.size() / d_;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return d_; }
  bool empty() const noexcept { return n_ == 0; }

  std::span<double> operator[](std::size_t i) noexcept { return {data_.data() + i * d_, d_}; }
  std::span<const double> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * d_, d_};
  }

  void push_back(std::span<const double> x) {
    if (d_ == 0) d_ = x.size();
    if (x.size() != d_) throw std::invalid_argument("point dimension mismatch");
    data_.insert(data_.end(), x.begin(), x.end());
    ++n_;
  }

  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

}  // namespace ihalton
