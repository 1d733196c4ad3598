#ifndef HFV_VOLUME_HPP
#define HFV_VOLUME_HPP

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hfv {

using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

struct Dims {
  int frames = 0;  // T, samples per shot
  int width = 0;   // Nx
  int height = 0;  // Ny

  long pixels() const { return static_cast<long>(width) * height; }
  long samples() const { return pixels() * frames; }

  bool operator==(const Dims&) const = default;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

/// T x Nx x Ny video volume stored as a super-vector with each pixel's time
/// series contiguous: index(u, v, t) = (v*Nx + u)*T + t. Block j of a
/// block-diagonal measurement matrix therefore acts on the j-th length-T
/// slice.
class VideoVolume {
 public:
  VideoVolume() = default;
  VideoVolume(int frames, int width, int height)
      : dims_{frames, width, height}, data_(Vector::Zero(dims_.samples())) {
    require(frames >= 1 && width >= 1 && height >= 1, "VideoVolume: dimensions must be positive");
  }
  VideoVolume(Dims dims, Vector data) : dims_(dims), data_(std::move(data)) {
    require(data_.size() == dims_.samples(), "VideoVolume: data size does not match dims");
  }

  const Dims& dims() const { return dims_; }
  int frames() const { return dims_.frames; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  long size() const { return data_.size(); }

  long index(int u, int v, int t) const {
    return (static_cast<long>(v) * dims_.width + u) * dims_.frames + t;
  }

  double& at(int u, int v, int t) { return data_[index(u, v, t)]; }
  double at(int u, int v, int t) const { return data_[index(u, v, t)]; }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }

  /// View of one pixel's time series (contiguous by layout).
  Eigen::Map<const Vector> pixel_series(int u, int v) const {
    return Eigen::Map<const Vector>(data_.data() + index(u, v, 0), dims_.frames);
  }

 private:
  Dims dims_{};
  Vector data_;
};

/// K x Nx x Ny measurements, one K-vector per pixel, stored with
/// index(u, v, k) = (v*Nx + u)*K + k. noise_sigma records the std of the
/// additive noise applied at acquisition (0 for noiseless).
class MeasurementTensor {
 public:
  MeasurementTensor() = default;
  MeasurementTensor(int cameras, int width, int height, double noise_sigma = 0.0)
      : cameras_(cameras), width_(width), height_(height), noise_sigma_(noise_sigma),
        data_(Vector::Zero(static_cast<long>(cameras) * width * height)) {
    require(cameras >= 1 && width >= 1 && height >= 1,
            "MeasurementTensor: dimensions must be positive");
  }

  int cameras() const { return cameras_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double noise_sigma() const { return noise_sigma_; }
  void set_noise_sigma(double s) { noise_sigma_ = s; }
  long size() const { return data_.size(); }

  long index(int u, int v, int k) const {
    return (static_cast<long>(v) * width_ + u) * cameras_ + k;
  }

  double& at(int u, int v, int k) { return data_[index(u, v, k)]; }
  double at(int u, int v, int k) const { return data_[index(u, v, k)]; }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }

 private:
  int cameras_ = 0;
  int width_ = 0;
  int height_ = 0;
  double noise_sigma_ = 0.0;
  Vector data_;
};

}  // namespace hfv

#endif  // HFV_VOLUME_HPP
