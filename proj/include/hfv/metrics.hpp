#ifndef HFV_METRICS_HPP
#define HFV_METRICS_HPP

#include <limits>
#include <vector>

#include "hfv/volume.hpp"

namespace hfv {

/// PSNR in dB with fixed peak 255. A zero-MSE frame reports the +inf
/// sentinel rather than a capped value.
inline double psnr_from_mse(double mse) {
  if (mse <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

inline double psnr(const Vector& reference, const Vector& estimate) {
  require(reference.size() == estimate.size(), "psnr: size mismatch");
  const double mse = (reference - estimate).squaredNorm() / static_cast<double>(reference.size());
  return psnr_from_mse(mse);
}

/// Per-frame PSNR over a volume pair, plus the mean over frames.
struct PsnrReport {
  std::vector<double> per_frame;
  double mean = 0.0;
};

inline PsnrReport psnr_per_frame(const VideoVolume& reference, const VideoVolume& estimate) {
  require(reference.dims() == estimate.dims(), "psnr: volume dimension mismatch");
  const Dims d = reference.dims();
  PsnrReport rep;
  rep.per_frame.resize(d.frames);
  double sum = 0.0;
  for (int t = 0; t < d.frames; ++t) {
    double sq = 0.0;
    for (int v = 0; v < d.height; ++v)
      for (int u = 0; u < d.width; ++u) {
        const double e = reference.at(u, v, t) - estimate.at(u, v, t);
        sq += e * e;
      }
    rep.per_frame[t] = psnr_from_mse(sq / static_cast<double>(d.pixels()));
    sum += rep.per_frame[t];
  }
  rep.mean = sum / d.frames;
  return rep;
}

}  // namespace hfv

#endif  // HFV_METRICS_HPP
