#ifndef HFV_CODES_HPP
#define HFV_CODES_HPP

#include <cstdint>
#include <vector>

#include "hfv/rng.hpp"
#include "hfv/volume.hpp"

namespace hfv {

enum class CodeScheme : std::uint8_t { FrameWise = 0, PixelWise = 1, ColumnRow = 2 };

inline const char* scheme_name(CodeScheme s) {
  switch (s) {
    case CodeScheme::FrameWise: return "frame";
    case CodeScheme::PixelWise: return "pixel";
    case CodeScheme::ColumnRow: return "colrow";
  }
  return "?";
}

/// Binary exposure control sequences for K cameras over a shot of T frames.
///
/// FrameWise stores one length-T sequence per camera. PixelWise stores one
/// per camera and pixel. ColumnRow stores only the per-(k,t) row and column
/// generator sequences; pixel codes are expanded on demand as
/// r_{k,t}(row) XOR c_{k,t}(col) and never materialized densely.
class ExposureCodeSet {
 public:
  CodeScheme scheme = CodeScheme::FrameWise;
  int cameras = 0;  // K
  int frames = 0;   // T
  int width = 0;    // Nx
  int height = 0;   // Ny
  std::uint64_t seed = 0;

  // FrameWise: bit(k, t) at k*T + t.
  // PixelWise: bit(k, p, t) at (k*Nx*Ny + p)*T + t with p = v*Nx + u.
  // ColumnRow: per (k, t), Ny row bits then Nx column bits, at
  //            (k*T + t)*(Ny + Nx) + offset.
  std::vector<std::uint8_t> bits;

  Dims dims() const { return Dims{frames, width, height}; }
  long pixels() const { return static_cast<long>(width) * height; }
  long measurements() const { return static_cast<long>(cameras) * pixels(); }

  int frame_bit(int k, int t) const { return bits[static_cast<size_t>(k) * frames + t]; }

  int pixel_bit(int k, int u, int v, int t) const {
    const long p = static_cast<long>(v) * width + u;
    return bits[(static_cast<size_t>(k) * pixels() + p) * frames + t];
  }

  int row_generator_bit(int k, int t, int v) const {
    return bits[(static_cast<size_t>(k) * frames + t) * (height + width) + v];
  }

  int col_generator_bit(int k, int t, int u) const {
    return bits[(static_cast<size_t>(k) * frames + t) * (height + width) + height + u];
  }

  /// Exposure bit of camera k at pixel (u, v) and frame t, any scheme.
  int bit_at(int k, int u, int v, int t) const {
    switch (scheme) {
      case CodeScheme::FrameWise: return frame_bit(k, t);
      case CodeScheme::PixelWise: return pixel_bit(k, u, v, t);
      case CodeScheme::ColumnRow:
        return row_generator_bit(k, t, v) ^ col_generator_bit(k, t, u);
    }
    return 0;
  }

  void check_indices(int k, int u, int v) const {
    require(k >= 0 && k < cameras, "code index: camera out of range");
    require(u >= 0 && u < width, "code index: column out of range");
    require(v >= 0 && v < height, "code index: row out of range");
  }
};

namespace detail {

inline void check_code_dims(int K, int T, int Nx, int Ny) {
  require(K >= 1, "code generation: cameras must be >= 1");
  require(T >= 1, "code generation: frames must be >= 1");
  require(Nx >= 1 && Ny >= 1, "code generation: frame size must be >= 1x1");
}

}  // namespace detail

/// One i.i.d. fair-Bernoulli sequence per camera, shared by all pixels.
inline ExposureCodeSet gen_frame_wise(int K, int T, int Nx, int Ny, std::uint64_t seed) {
  detail::check_code_dims(K, T, Nx, Ny);
  ExposureCodeSet codes;
  codes.scheme = CodeScheme::FrameWise;
  codes.cameras = K;
  codes.frames = T;
  codes.width = Nx;
  codes.height = Ny;
  codes.seed = seed;
  codes.bits.resize(static_cast<size_t>(K) * T);
  Rng rng(seed);
  for (auto& b : codes.bits) b = static_cast<std::uint8_t>(rng.bit());
  return codes;
}

/// Independent sequence per camera and pixel. Storage O(K*T*Nx*Ny) bits.
inline ExposureCodeSet gen_pixel_wise(int K, int T, int Nx, int Ny, std::uint64_t seed) {
  detail::check_code_dims(K, T, Nx, Ny);
  ExposureCodeSet codes;
  codes.scheme = CodeScheme::PixelWise;
  codes.cameras = K;
  codes.frames = T;
  codes.width = Nx;
  codes.height = Ny;
  codes.seed = seed;
  codes.bits.resize(static_cast<size_t>(K) * Nx * Ny * T);
  Rng rng(seed);
  for (auto& b : codes.bits) b = static_cast<std::uint8_t>(rng.bit());
  return codes;
}

/// Row/column generator sequences drawn i.i.d. per (k, t). Storage
/// O(K*T*(Nx+Ny)) bits; expansion happens in bit_at.
inline ExposureCodeSet gen_column_row(int K, int T, int Nx, int Ny, std::uint64_t seed) {
  detail::check_code_dims(K, T, Nx, Ny);
  ExposureCodeSet codes;
  codes.scheme = CodeScheme::ColumnRow;
  codes.cameras = K;
  codes.frames = T;
  codes.width = Nx;
  codes.height = Ny;
  codes.seed = seed;
  codes.bits.resize(static_cast<size_t>(K) * T * (Ny + Nx));
  Rng rng(seed);
  for (auto& b : codes.bits) b = static_cast<std::uint8_t>(rng.bit());
  return codes;
}

inline ExposureCodeSet generate_codes(CodeScheme scheme, int K, int T, int Nx, int Ny,
                                      std::uint64_t seed) {
  switch (scheme) {
    case CodeScheme::FrameWise: return gen_frame_wise(K, T, Nx, Ny, seed);
    case CodeScheme::PixelWise: return gen_pixel_wise(K, T, Nx, Ny, seed);
    case CodeScheme::ColumnRow: return gen_column_row(K, T, Nx, Ny, seed);
  }
  throw std::invalid_argument("generate_codes: unknown scheme");
}

/// Length-T exposure vector of camera k at pixel (u, v). FrameWise returns
/// b_k for any pixel; ColumnRow expands the XOR of the stored generators.
inline Vector code_at(const ExposureCodeSet& codes, int k, int u, int v) {
  codes.check_indices(k, u, v);
  Vector b(codes.frames);
  for (int t = 0; t < codes.frames; ++t) b[t] = codes.bit_at(k, u, v, t);
  return b;
}

/// Restriction of a code set to the pixel window [u0, u0+w) x [v0, v0+h).
/// ColumnRow stays in generator form with sliced generators, so tiles keep
/// the O(K*T*(w+h)) storage and the XOR expansion law.
inline ExposureCodeSet slice_codes(const ExposureCodeSet& codes, int u0, int v0, int w, int h) {
  require(u0 >= 0 && v0 >= 0 && w >= 1 && h >= 1 && u0 + w <= codes.width &&
              v0 + h <= codes.height,
          "slice_codes: window out of range");
  ExposureCodeSet out;
  out.scheme = codes.scheme;
  out.cameras = codes.cameras;
  out.frames = codes.frames;
  out.width = w;
  out.height = h;
  out.seed = codes.seed;
  switch (codes.scheme) {
    case CodeScheme::FrameWise:
      out.bits = codes.bits;
      break;
    case CodeScheme::PixelWise:
      out.bits.resize(static_cast<size_t>(codes.cameras) * w * h * codes.frames);
      for (int k = 0; k < codes.cameras; ++k)
        for (int v = 0; v < h; ++v)
          for (int u = 0; u < w; ++u)
            for (int t = 0; t < codes.frames; ++t) {
              const long p = static_cast<long>(v) * w + u;
              out.bits[(static_cast<size_t>(k) * w * h + p) * codes.frames + t] =
                  static_cast<std::uint8_t>(codes.pixel_bit(k, u0 + u, v0 + v, t));
            }
      break;
    case CodeScheme::ColumnRow:
      out.bits.resize(static_cast<size_t>(codes.cameras) * codes.frames * (h + w));
      for (int k = 0; k < codes.cameras; ++k)
        for (int t = 0; t < codes.frames; ++t) {
          const size_t base = (static_cast<size_t>(k) * codes.frames + t) * (h + w);
          for (int v = 0; v < h; ++v)
            out.bits[base + v] = static_cast<std::uint8_t>(codes.row_generator_bit(k, t, v0 + v));
          for (int u = 0; u < w; ++u)
            out.bits[base + h + u] =
                static_cast<std::uint8_t>(codes.col_generator_bit(k, t, u0 + u));
        }
      break;
  }
  return out;
}

/// Mean exposure (fraction of open-shutter bits) per camera, reported by the
/// harness alongside recovery quality. An all-zero sequence is a legal draw.
inline std::vector<double> exposure_fractions(const ExposureCodeSet& codes) {
  std::vector<double> frac(codes.cameras, 0.0);
  const long per_camera = codes.pixels() * codes.frames;
  for (int k = 0; k < codes.cameras; ++k) {
    long count = 0;
    for (int v = 0; v < codes.height; ++v)
      for (int u = 0; u < codes.width; ++u)
        for (int t = 0; t < codes.frames; ++t) count += codes.bit_at(k, u, v, t);
    frac[k] = static_cast<double>(count) / static_cast<double>(per_camera);
  }
  return frac;
}

/// Signed, scaled view of a binary code set: each bit b maps to
/// (2b - 1)/sqrt(K'), optionally preceded by an all-ones DC camera row also
/// scaled by 1/sqrt(K'), K' = K + (dc ? 1 : 0). This is the form the
/// isometry estimators use; acquisition keeps the binary codes.
class SignedCodeSet {
 public:
  SignedCodeSet(ExposureCodeSet source, bool include_dc)
      : source_(std::move(source)), dc_row_present_(include_dc) {
    scale_ = 1.0 / std::sqrt(static_cast<double>(signed_cameras()));
  }

  const ExposureCodeSet& source() const { return source_; }
  bool dc_row_present() const { return dc_row_present_; }
  int signed_cameras() const { return source_.cameras + (dc_row_present_ ? 1 : 0); }
  double scale() const { return scale_; }
  int frames() const { return source_.frames; }
  int width() const { return source_.width; }
  int height() const { return source_.height; }

  /// Entry for signed camera row k (the DC row, when present, is row K).
  double value_at(int k, int u, int v, int t) const {
    if (dc_row_present_ && k == source_.cameras) return scale_;
    return scale_ * (2.0 * source_.bit_at(k, u, v, t) - 1.0);
  }

  Vector sequence_at(int k, int u, int v) const {
    Vector s(source_.frames);
    for (int t = 0; t < source_.frames; ++t) s[t] = value_at(k, u, v, t);
    return s;
  }

 private:
  ExposureCodeSet source_;
  bool dc_row_present_ = false;
  double scale_ = 1.0;
};

inline SignedCodeSet to_signed(const ExposureCodeSet& codes, bool include_dc) {
  return SignedCodeSet(codes, include_dc);
}

}  // namespace hfv

#endif  // HFV_CODES_HPP
