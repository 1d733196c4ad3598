#ifndef HFV_IO_HPP
#define HFV_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hfv/codes.hpp"
#include "hfv/solver.hpp"
#include "hfv/volume.hpp"

namespace hfv {

// ---------------------------------------------------------------------------
// Little-endian primitives (files are byte-order independent of the host)
// ---------------------------------------------------------------------------

namespace detail {

inline void put_bytes(std::ostream& os, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) os.put(static_cast<char>((value >> (8 * i)) & 0xff));
}

inline std::uint64_t get_bytes(std::istream& is, int bytes) {
  std::uint64_t value = 0;
  for (int i = 0; i < bytes; ++i) {
    const int ch = is.get();
    if (ch == EOF) throw std::runtime_error("file truncated");
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(ch)) << (8 * i);
  }
  return value;
}

inline void put_f64(std::ostream& os, double x) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof x);
  std::memcpy(&bits, &x, sizeof bits);
  put_bytes(os, bits, 8);
}

inline double get_f64(std::istream& is) {
  const std::uint64_t bits = get_bytes(is, 8);
  double x;
  std::memcpy(&x, &bits, sizeof x);
  return x;
}

inline void expect_magic(std::istream& is, const char* magic) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::string(buf, 4) != magic)
    throw std::runtime_error(std::string("bad magic, expected ") + magic);
}

}  // namespace detail

inline constexpr std::uint16_t kFormatVersion = 1;

// ---------------------------------------------------------------------------
// HFVV: video volume container (dtype 0 = f64, 1 = complex f64 pairs)
// ---------------------------------------------------------------------------

inline void save_volume(const VideoVolume& vol, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), "save_volume: cannot open " + path);
  os.write("HFVV", 4);
  detail::put_bytes(os, kFormatVersion, 2);
  detail::put_bytes(os, static_cast<std::uint64_t>(vol.frames()), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(vol.width()), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(vol.height()), 4);
  os.put(0);  // dtype f64
  for (long i = 0; i < vol.size(); ++i) detail::put_f64(os, vol.data()[i]);
  require(os.good(), "save_volume: write failed for " + path);
}

inline VideoVolume load_volume(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), "load_volume: cannot open " + path);
  detail::expect_magic(is, "HFVV");
  const auto version = detail::get_bytes(is, 2);
  if (version != kFormatVersion) throw std::runtime_error("load_volume: unsupported version");
  const int T = static_cast<int>(detail::get_bytes(is, 4));
  const int Nx = static_cast<int>(detail::get_bytes(is, 4));
  const int Ny = static_cast<int>(detail::get_bytes(is, 4));
  const int dtype = is.get();
  if (dtype != 0) throw std::runtime_error("load_volume: expected real dtype");
  require(T >= 1 && Nx >= 1 && Ny >= 1, "load_volume: bad dimensions");
  VideoVolume vol(T, Nx, Ny);
  for (long i = 0; i < vol.size(); ++i) vol.data()[i] = detail::get_f64(is);
  return vol;
}

/// Complex coefficient dump in the HFVV container with the complex dtype.
inline void save_coefficients(const CVector& coeffs, const Dims& d, const std::string& path) {
  require(coeffs.size() == d.samples(), "save_coefficients: size mismatch");
  std::ofstream os(path, std::ios::binary);
  require(os.good(), "save_coefficients: cannot open " + path);
  os.write("HFVV", 4);
  detail::put_bytes(os, kFormatVersion, 2);
  detail::put_bytes(os, static_cast<std::uint64_t>(d.frames), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(d.width), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(d.height), 4);
  os.put(1);  // dtype complex
  for (long i = 0; i < coeffs.size(); ++i) {
    detail::put_f64(os, coeffs[i].real());
    detail::put_f64(os, coeffs[i].imag());
  }
}

// ---------------------------------------------------------------------------
// HFVM: measurement container with recorded noise sigma
// ---------------------------------------------------------------------------

inline void save_measurements(const MeasurementTensor& meas, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), "save_measurements: cannot open " + path);
  os.write("HFVM", 4);
  detail::put_bytes(os, kFormatVersion, 2);
  detail::put_bytes(os, static_cast<std::uint64_t>(meas.cameras()), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(meas.width()), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(meas.height()), 4);
  detail::put_f64(os, meas.noise_sigma());
  for (long i = 0; i < meas.size(); ++i) detail::put_f64(os, meas.data()[i]);
  require(os.good(), "save_measurements: write failed for " + path);
}

inline MeasurementTensor load_measurements(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), "load_measurements: cannot open " + path);
  detail::expect_magic(is, "HFVM");
  if (detail::get_bytes(is, 2) != kFormatVersion)
    throw std::runtime_error("load_measurements: unsupported version");
  const int K = static_cast<int>(detail::get_bytes(is, 4));
  const int Nx = static_cast<int>(detail::get_bytes(is, 4));
  const int Ny = static_cast<int>(detail::get_bytes(is, 4));
  const double sigma = detail::get_f64(is);
  require(K >= 1 && Nx >= 1 && Ny >= 1, "load_measurements: bad dimensions");
  MeasurementTensor meas(K, Nx, Ny, sigma);
  for (long i = 0; i < meas.size(); ++i) meas.data()[i] = detail::get_f64(is);
  return meas;
}

// ---------------------------------------------------------------------------
// HFVC: exposure code container. Payload bits are packed 8 per byte,
// LSB-first, in the code set's native order: camera outer, then frame, then
// (for column-row) the Ny row-generator bits followed by the Nx column bits.
// ---------------------------------------------------------------------------

inline void save_codes(const ExposureCodeSet& codes, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), "save_codes: cannot open " + path);
  os.write("HFVC", 4);
  detail::put_bytes(os, kFormatVersion, 2);
  os.put(static_cast<char>(codes.scheme));
  detail::put_bytes(os, static_cast<std::uint64_t>(codes.cameras), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(codes.frames), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(codes.width), 4);
  detail::put_bytes(os, static_cast<std::uint64_t>(codes.height), 4);
  detail::put_bytes(os, codes.seed, 8);
  const std::string prng = kRngAlgorithmId;
  detail::put_bytes(os, prng.size(), 2);
  os.write(prng.data(), static_cast<std::streamsize>(prng.size()));
  std::uint8_t acc = 0;
  int fill = 0;
  for (const std::uint8_t bit : codes.bits) {
    acc |= static_cast<std::uint8_t>((bit & 1) << fill);
    if (++fill == 8) {
      os.put(static_cast<char>(acc));
      acc = 0;
      fill = 0;
    }
  }
  if (fill) os.put(static_cast<char>(acc));
  require(os.good(), "save_codes: write failed for " + path);
}

inline ExposureCodeSet load_codes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), "load_codes: cannot open " + path);
  detail::expect_magic(is, "HFVC");
  if (detail::get_bytes(is, 2) != kFormatVersion)
    throw std::runtime_error("load_codes: unsupported version");
  ExposureCodeSet codes;
  const int scheme = is.get();
  require(scheme >= 0 && scheme <= 2, "load_codes: bad scheme tag");
  codes.scheme = static_cast<CodeScheme>(scheme);
  codes.cameras = static_cast<int>(detail::get_bytes(is, 4));
  codes.frames = static_cast<int>(detail::get_bytes(is, 4));
  codes.width = static_cast<int>(detail::get_bytes(is, 4));
  codes.height = static_cast<int>(detail::get_bytes(is, 4));
  codes.seed = detail::get_bytes(is, 8);
  require(codes.cameras >= 1 && codes.frames >= 1 && codes.width >= 1 && codes.height >= 1,
          "load_codes: bad dimensions");
  const auto prng_len = detail::get_bytes(is, 2);
  std::string prng(prng_len, '\0');
  is.read(prng.data(), static_cast<std::streamsize>(prng_len));
  require(is.good(), "load_codes: truncated header");

  size_t nbits = 0;
  switch (codes.scheme) {
    case CodeScheme::FrameWise:
      nbits = static_cast<size_t>(codes.cameras) * codes.frames;
      break;
    case CodeScheme::PixelWise:
      nbits = static_cast<size_t>(codes.cameras) * codes.width * codes.height * codes.frames;
      break;
    case CodeScheme::ColumnRow:
      nbits = static_cast<size_t>(codes.cameras) * codes.frames * (codes.height + codes.width);
      break;
  }
  codes.bits.resize(nbits);
  std::uint8_t acc = 0;
  int avail = 0;
  for (size_t i = 0; i < nbits; ++i) {
    if (avail == 0) {
      const int ch = is.get();
      if (ch == EOF) throw std::runtime_error("load_codes: truncated payload");
      acc = static_cast<std::uint8_t>(ch);
      avail = 8;
    }
    codes.bits[i] = acc & 1;
    acc >>= 1;
    --avail;
  }
  return codes;
}

// ---------------------------------------------------------------------------
// PGM (P5 binary, maxval 255)
// ---------------------------------------------------------------------------

/// Quantize an intensity: round half away from zero, clip to [0, 255].
inline int quantize_intensity(double x) {
  const long long r = std::llround(x);
  return static_cast<int>(std::clamp<long long>(r, 0, 255));
}

inline void export_pgm(const VideoVolume& vol, int frame, const std::string& path) {
  require(frame >= 0 && frame < vol.frames(), "export_pgm: frame out of range");
  std::ofstream os(path, std::ios::binary);
  require(os.good(), "export_pgm: cannot open " + path);
  os << "P5\n" << vol.width() << " " << vol.height() << "\n255\n";
  for (int v = 0; v < vol.height(); ++v)
    for (int u = 0; u < vol.width(); ++u)
      os.put(static_cast<char>(quantize_intensity(vol.at(u, v, frame))));
  require(os.good(), "export_pgm: write failed for " + path);
}

namespace detail {

inline int pgm_token(std::istream& is) {
  // Skips whitespace and '#' comments, returns the next integer.
  for (;;) {
    int ch = is.get();
    if (ch == EOF) throw std::runtime_error("pgm: truncated header");
    if (std::isspace(ch)) continue;
    if (ch == '#') {
      while (ch != '\n' && ch != EOF) ch = is.get();
      continue;
    }
    int value = 0;
    bool any = false;
    while (ch != EOF && std::isdigit(ch)) {
      value = value * 10 + (ch - '0');
      any = true;
      ch = is.get();
    }
    if (!any) throw std::runtime_error("pgm: malformed header");
    return value;
  }
}

}  // namespace detail

/// Single-frame import; returns a width x height frame as a T=1 volume.
inline VideoVolume import_pgm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), "import_pgm: cannot open " + path);
  char p, five;
  is.get(p);
  is.get(five);
  if (p != 'P' || five != '5') throw std::runtime_error("import_pgm: not a binary PGM");
  const int w = detail::pgm_token(is);
  const int h = detail::pgm_token(is);
  const int maxval = detail::pgm_token(is);
  if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
    throw std::runtime_error("import_pgm: unsupported header");
  VideoVolume vol(1, w, h);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      const int ch = is.get();
      if (ch == EOF) throw std::runtime_error("import_pgm: truncated pixel data");
      vol.at(u, v, 0) = static_cast<double>(ch);
    }
  return vol;
}

/// All .pgm files of a directory, lexicographic filename order, stacked into
/// a T = (file count) volume. Mismatched frame sizes are an error.
inline VideoVolume import_pgm_sequence(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".pgm")
      paths.push_back(entry.path().string());
  require(!paths.empty(), "import_pgm_sequence: no .pgm files in " + dir);
  std::sort(paths.begin(), paths.end());

  const VideoVolume first = import_pgm(paths[0]);
  VideoVolume vol(static_cast<int>(paths.size()), first.width(), first.height());
  for (size_t t = 0; t < paths.size(); ++t) {
    const VideoVolume frame = import_pgm(paths[t]);
    require(frame.width() == vol.width() && frame.height() == vol.height(),
            "import_pgm_sequence: frame size mismatch at " + paths[t]);
    for (int v = 0; v < vol.height(); ++v)
      for (int u = 0; u < vol.width(); ++u)
        vol.at(u, v, static_cast<int>(t)) = frame.at(u, v, 0);
  }
  return vol;
}

// ---------------------------------------------------------------------------
// CSV (RFC-4180-style quoting) and report serialization
// ---------------------------------------------------------------------------

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : os_(path) {
    require(os_.good(), "csv: cannot open " + path);
  }

  void row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << csv_field(fields[i]);
    }
    os_ << "\r\n";
  }

 private:
  std::ofstream os_;
};

/// Key/value block followed by the iteration trace as CSV columns
/// iter,objective,residual.
inline void save_recovery_report(const RecoveryReport& rep, const std::string& path) {
  std::ofstream os(path);
  require(os.good(), "save_recovery_report: cannot open " + path);
  os << "converged: " << (rep.converged ? "true" : "false") << "\n";
  os << "iterations: " << rep.iterations << "\n";
  os << "residual: " << format_double(rep.residual) << "\n";
  os << "objective: " << format_double(rep.objective) << "\n";
  os << "fingerprint: " << rep.fingerprint << "\n";
  os << "prng: " << kRngAlgorithmId << "\n";
  if (!rep.per_frame_psnr.empty()) {
    os << "mean_psnr_db: " << format_double(rep.mean_psnr) << "\n";
    os << "per_frame_psnr_db:";
    for (double p : rep.per_frame_psnr) os << ' ' << format_double(p);
    os << "\n";
  }
  if (!rep.failed_tiles.empty()) {
    os << "failed_tiles:";
    for (int i : rep.failed_tiles) os << ' ' << i;
    os << "\n";
  }
  os << "\niter,objective,residual\n";
  for (const auto& e : rep.trace)
    os << e.iter << ',' << format_double(e.objective) << ',' << format_double(e.residual)
       << "\n";
}

}  // namespace hfv

#endif  // HFV_IO_HPP
