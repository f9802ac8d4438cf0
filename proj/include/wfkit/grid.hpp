#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wfkit {

// Dense row-major raster of doubles.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool all_finite() const;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Channel-major C x H x W raster, each channel row-major.
class Grid3D {
 public:
  Grid3D() = default;
  Grid3D(std::size_t channels, std::size_t rows, std::size_t cols, double fill = 0.0)
      : channels_(channels), rows_(rows), cols_(cols), data_(channels * rows * cols, fill) {}

  std::size_t channels() const { return channels_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t c, std::size_t r, std::size_t x) {
    return data_[(c * rows_ + r) * cols_ + x];
  }
  double operator()(std::size_t c, std::size_t r, std::size_t x) const {
    return data_[(c * rows_ + r) * cols_ + x];
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool all_finite() const;

  friend bool operator==(const Grid3D&, const Grid3D&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace wfkit
