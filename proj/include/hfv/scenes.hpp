#ifndef HFV_SCENES_HPP
#define HFV_SCENES_HPP

#include <algorithm>
#include <vector>

#include "hfv/rng.hpp"
#include "hfv/transforms.hpp"
#include "hfv/volume.hpp"

namespace hfv {

enum class SceneKind { StaticLinearPatch, MovingLinearPatch, TwoObjectOcclusion, FourierSparse };

inline const char* scene_name(SceneKind k) {
  switch (k) {
    case SceneKind::StaticLinearPatch: return "static-linear";
    case SceneKind::MovingLinearPatch: return "moving-linear";
    case SceneKind::TwoObjectOcclusion: return "occlusion";
    case SceneKind::FourierSparse: return "fourier-sparse";
  }
  return "?";
}

/// Synthetic test scenes. The linear-patch scenes realize the piecewise
/// linear intensity model f_t(u,v) = a u + b v + c with small translational
/// motion (du, dv) per frame; FourierSparse plants `sparsity` random
/// conjugate-symmetric 3D DFT coefficient pairs and inverts.
struct SyntheticSceneSpec {
  SceneKind kind = SceneKind::MovingLinearPatch;
  int frames = 8;
  int width = 16;
  int height = 16;
  double du = 0.5;  // motion per frame, pixels
  double dv = 0.25;
  double slope_u = 10.0;  // a
  double slope_v = 6.0;   // b
  double offset = 80.0;   // c
  double background = 40.0;
  double temporal_ramp = 0.0;  // global intensity drift per frame (in null(Theta))
  double patch_x = 2.5, patch_y = 3.5;  // patch origin (sub-pixel)
  int patch_w = 8, patch_h = 8;
  int sparsity = 5;  // FourierSparse only
  std::uint64_t seed = 1;

  void validate() const {
    require(frames >= 1 && width >= 1 && height >= 1, "scene: dimensions must be positive");
    require(std::abs(du) <= 2.0 && std::abs(dv) <= 2.0,
            "scene: motion must stay in the small-motion regime |du|,|dv| <= 2");
    require(sparsity >= 1, "scene: sparsity must be >= 1");
  }
};

namespace detail {

inline double clip255(double x) { return std::clamp(x, 0.0, 255.0); }

/// Rectangle with linear intensity, evaluated with a one-pixel bilinear
/// edge blend so sub-pixel placement moves the edge smoothly.
struct LinearPatch {
  double x0, y0;  // origin in pixel units
  int w, h;
  double a, b, c;

  double coverage(double u, double v) const {
    const double fx = std::clamp(std::min(u - x0 + 0.5, x0 + w - u + 0.5), 0.0, 1.0);
    const double fy = std::clamp(std::min(v - y0 + 0.5, y0 + h - v + 0.5), 0.0, 1.0);
    return fx * fy;
  }

  double value(double u, double v) const { return a * (u - x0) + b * (v - y0) + c; }
};

}  // namespace detail

inline VideoVolume synth_scene(const SyntheticSceneSpec& spec) {
  spec.validate();
  VideoVolume vol(spec.frames, spec.width, spec.height);

  switch (spec.kind) {
    case SceneKind::StaticLinearPatch: {
      // Full-frame linear ramp, constant in time.
      for (int v = 0; v < spec.height; ++v)
        for (int u = 0; u < spec.width; ++u) {
          const double val =
              detail::clip255(spec.slope_u * u + spec.slope_v * v + spec.offset);
          for (int t = 0; t < spec.frames; ++t) vol.at(u, v, t) = val;
        }
      break;
    }
    case SceneKind::MovingLinearPatch: {
      for (int t = 0; t < spec.frames; ++t) {
        detail::LinearPatch patch{spec.patch_x + t * spec.du, spec.patch_y + t * spec.dv,
                                  spec.patch_w, spec.patch_h,
                                  spec.slope_u, spec.slope_v, spec.offset};
        const double ramp = spec.temporal_ramp * t;
        for (int v = 0; v < spec.height; ++v)
          for (int u = 0; u < spec.width; ++u) {
            const double alpha = patch.coverage(u, v);
            const double val = alpha * patch.value(u, v) + (1.0 - alpha) * spec.background;
            vol.at(u, v, t) = detail::clip255(val + ramp);
          }
      }
      break;
    }
    case SceneKind::TwoObjectOcclusion: {
      // Foreground patch crosses in front of a counter-moving background
      // object; composite in depth order.
      for (int t = 0; t < spec.frames; ++t) {
        detail::LinearPatch front{spec.patch_x + t * spec.du, spec.patch_y + t * spec.dv,
                                  spec.patch_w, spec.patch_h,
                                  spec.slope_u, spec.slope_v, spec.offset};
        detail::LinearPatch back{spec.width - spec.patch_x - spec.patch_w - t * spec.du,
                                 spec.patch_y + 1.0 - t * spec.dv,
                                 spec.patch_w, spec.patch_h,
                                 -spec.slope_u, spec.slope_v, spec.offset * 0.6};
        for (int v = 0; v < spec.height; ++v)
          for (int u = 0; u < spec.width; ++u) {
            const double a1 = front.coverage(u, v);
            const double a2 = back.coverage(u, v);
            double val = a2 * back.value(u, v) + (1.0 - a2) * spec.background;
            val = a1 * front.value(u, v) + (1.0 - a1) * val;
            vol.at(u, v, t) = detail::clip255(val);
          }
      }
      break;
    }
    case SceneKind::FourierSparse: {
      // `sparsity` conjugate-symmetric coefficient pairs at distinct
      // non-self-conjugate frequencies; the DC stays zero so the exact pair
      // count is preserved (the signal is zero-mean, not clipped).
      const Dims d = vol.dims();
      const long n = d.samples();
      Rng rng(spec.seed);
      CVector coeffs = CVector::Zero(n);
      auto conj_index = [&](long i) {
        const long t = i % d.frames;
        const long u = (i / d.frames) % d.width;
        const long v = i / (static_cast<long>(d.frames) * d.width);
        const long tc = (d.frames - t) % d.frames;
        const long uc = (d.width - u) % d.width;
        const long vc = (d.height - v) % d.height;
        return (vc * d.width + uc) * d.frames + tc;
      };
      int placed = 0;
      while (placed < spec.sparsity) {
        const long i = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
        const long j = conj_index(i);
        if (j == i || coeffs[i] != 0.0 || coeffs[j] != 0.0) continue;
        const std::complex<double> z{rng.gaussian(), rng.gaussian()};
        coeffs[i] = z;
        coeffs[j] = std::conj(z);
        ++placed;
      }
      const Dft3 dft(d);
      Vector f = dft.inverse(coeffs).real();
      const double peak = f.cwiseAbs().maxCoeff();
      if (peak > 0.0) f *= 100.0 / peak;
      vol = VideoVolume(d, std::move(f));
      break;
    }
  }
  return vol;
}

/// The scripted desk-scale scene used by the comparative experiments: a 3x3
/// linear-intensity patch drifting by (0.5, 0.25) px/frame across a 16x16
/// frame over an 8-frame shot, on top of a global intensity ramp. The patch
/// size keeps the analysis image of the scene below 10% density, edge blend
/// included; the ramp is Theta-free but puts signal energy into the
/// spatially uniform temporal modes that a shared frame-wise block resolves
/// poorly.
inline SyntheticSceneSpec scripted_moving_scene() {
  SyntheticSceneSpec spec;
  spec.kind = SceneKind::MovingLinearPatch;
  spec.frames = 8;
  spec.width = 16;
  spec.height = 16;
  spec.patch_w = 3;
  spec.patch_h = 3;
  spec.temporal_ramp = 18.0;
  spec.seed = 7;
  return spec;
}

}  // namespace hfv

#endif  // HFV_SCENES_HPP
