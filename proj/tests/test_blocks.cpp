#include <catch2/catch_amalgamated.hpp>

#include "hfv/forward.hpp"
#include "hfv/scenes.hpp"
#include "hfv/solver.hpp"

using namespace hfv;

namespace {

/// Scene with independent content in the left and right half-frames and a
/// constant band at the seam, so half-frame tiles decouple exactly.
VideoVolume separable_scene(int T, int Nx, int Ny) {
  SyntheticSceneSpec left;
  left.kind = SceneKind::MovingLinearPatch;
  left.frames = T;
  left.width = Nx;
  left.height = Ny;
  left.patch_x = 1.0;
  left.patch_y = 2.0;
  left.patch_w = 4;
  left.patch_h = 4;
  left.du = 0.25;
  left.dv = 0.25;
  VideoVolume vol = synth_scene(left);
  // second patch well inside the right half
  SyntheticSceneSpec right = left;
  right.patch_x = Nx - 6.0;
  right.patch_y = Ny - 7.0;
  right.du = -0.25;
  const VideoVolume vol2 = synth_scene(right);
  for (long i = 0; i < vol.size(); ++i)
    vol.data()[i] = std::max(vol.data()[i], vol2.data()[i]);
  return vol;
}

}  // namespace

TEST_CASE("a single block with no overlap is bit-identical to the whole-frame solve") {
  SyntheticSceneSpec spec = scripted_moving_scene();
  spec.width = 8;
  spec.height = 8;
  const VideoVolume scene = synth_scene(spec);
  const auto codes = gen_pixel_wise(4, 8, 8, 8, 5);
  const auto meas = acquire(scene, codes, 1.0, 99);

  SolverConfig cfg;
  cfg.max_iters = 400;
  cfg.sigma = sigma_radius_from_noise_std(codes.measurements(), 1.0);

  BlockSpec blocks;
  blocks.width = 8;
  blocks.height = 8;
  blocks.overlap = 0;

  const auto whole = recover_analysis(meas, codes, cfg);
  const auto tiled = recover_blocks(meas, codes, blocks, cfg);
  REQUIRE(whole.recovered.data() == tiled.recovered.data());  // bitwise
  REQUIRE(whole.objective == tiled.objective);
  REQUIRE(whole.iterations == tiled.iterations);
}

TEST_CASE("zero-overlap half-frame tiles match whole-frame recovery on a separable scene") {
  // Frame-wise codes with an invertible block make both paths exact, so the
  // comparison is immune to solver tolerance.
  const int T = 4;
  ExposureCodeSet codes;
  Matrix B(T, T);
  std::uint64_t seed = 0;
  do {
    codes = gen_frame_wise(T, T, 16, 8, ++seed);
    for (int k = 0; k < T; ++k)
      for (int t = 0; t < T; ++t) B(k, t) = codes.frame_bit(k, t);
  } while (std::abs(B.determinant()) < 0.5);

  const VideoVolume scene = separable_scene(T, 16, 8);
  const auto meas = acquire(scene, codes);

  SolverConfig cfg;
  cfg.max_iters = 800;
  BlockSpec blocks;
  blocks.width = 8;
  blocks.height = 8;
  blocks.overlap = 0;

  const auto whole = recover_analysis(meas, codes, cfg);
  const auto tiled = recover_blocks(meas, codes, blocks, cfg);
  const double rel = (whole.recovered.data() - tiled.recovered.data()).norm() /
                     whole.recovered.data().norm();
  REQUIRE(rel <= 1e-6);
}

TEST_CASE("average fusion takes the mean of covering tiles") {
  const Dims d{2, 4, 4};
  VideoVolume a(2, 4, 4), b(2, 4, 4);
  a.data().setConstant(2.0);
  b.data().setConstant(4.0);
  // both tiles cover the whole frame
  std::vector<std::pair<TileRegion, VideoVolume>> tiles;
  tiles.push_back({TileRegion{0, 0, 4, 4}, a});
  tiles.push_back({TileRegion{0, 0, 4, 4}, b});
  const VideoVolume fused = fuse_estimates(d, tiles, FusionRule::Average);
  for (long i = 0; i < fused.size(); ++i) REQUIRE(fused.data()[i] == 3.0);
}

TEST_CASE("fusion with one covering tile is the identity") {
  const Dims d{2, 3, 3};
  VideoVolume a(2, 3, 3);
  for (long i = 0; i < a.size(); ++i) a.data()[i] = static_cast<double>(i);
  std::vector<std::pair<TileRegion, VideoVolume>> tiles;
  tiles.push_back({TileRegion{0, 0, 3, 3}, a});
  for (auto rule : {FusionRule::Average, FusionRule::WeightedWindow}) {
    const VideoVolume fused = fuse_estimates(d, tiles, rule);
    REQUIRE(fused.data() == a.data());
  }
}

TEST_CASE("weighted-window fusion normalizes to unit weight at every pixel") {
  // Constant tiles must fuse to the same constant regardless of the window.
  const Dims d{1, 8, 6};
  std::vector<std::pair<TileRegion, VideoVolume>> tiles;
  for (int v0 = 0; v0 < 6; v0 += 3)
    for (int u0 = 0; u0 < 8; u0 += 4) {
      const int w = std::min(8, u0 + 4 + 1) - std::max(0, u0 - 1);
      const int h = std::min(6, v0 + 3 + 1) - std::max(0, v0 - 1);
      VideoVolume tile(1, w, h);
      tile.data().setConstant(5.0);
      tiles.push_back({TileRegion{std::max(0, u0 - 1), std::max(0, v0 - 1), w, h}, tile});
    }
  const VideoVolume fused = fuse_estimates(d, tiles, FusionRule::WeightedWindow);
  for (long i = 0; i < fused.size(); ++i)
    REQUIRE(fused.data()[i] == Catch::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("uncovered pixels are a coverage error") {
  const Dims d{1, 4, 4};
  VideoVolume a(1, 2, 4);
  std::vector<std::pair<TileRegion, VideoVolume>> tiles;
  tiles.push_back({TileRegion{0, 0, 2, 4}, a});  // right half uncovered
  REQUIRE_THROWS_AS(fuse_estimates(d, tiles, FusionRule::Average), std::invalid_argument);
}

TEST_CASE("overlapping tiles cover pixels with the expected multiplicity") {
  const Dims d{2, 16, 16};
  BlockSpec spec;
  spec.width = 8;
  spec.height = 8;
  spec.overlap = 2;
  const auto tiles = make_tiles(d, spec);
  REQUIRE(tiles.size() == 4);
  std::vector<int> cover(16 * 16, 0);
  for (const auto& t : tiles)
    for (int v = t.v0; v < t.v0 + t.h; ++v)
      for (int u = t.u0; u < t.u0 + t.w; ++u) ++cover[v * 16 + u];
  for (int c : cover) REQUIRE(c >= 1);
  REQUIRE(cover[0] == 1);        // corner: single tile
  REQUIRE(cover[7 * 16 + 7] == 4);  // center seam: all four tiles
}

TEST_CASE("block recovery with average fusion averages the overlap region") {
  SyntheticSceneSpec spec = scripted_moving_scene();
  spec.width = 8;
  spec.height = 8;
  spec.frames = 4;
  const VideoVolume scene = synth_scene(spec);
  const auto codes = gen_pixel_wise(4, 4, 8, 8, 21);
  const auto meas = acquire(scene, codes);
  SolverConfig cfg;
  cfg.max_iters = 300;
  BlockSpec blocks;
  blocks.width = 4;
  blocks.height = 8;
  blocks.overlap = 1;
  const auto rep = recover_blocks(meas, codes, blocks, cfg);
  REQUIRE(rep.recovered.dims() == scene.dims());

  // Reproduce the fusion by hand from the per-tile solves.
  const auto tiles = make_tiles(scene.dims(), blocks);
  std::vector<std::pair<TileRegion, VideoVolume>> ests;
  for (const auto& r : tiles) {
    const auto tcodes = slice_codes(codes, r.u0, r.v0, r.w, r.h);
    const auto tmeas = slice_measurements(meas, r);
    SolverConfig tcfg = cfg;
    tcfg.sigma = cfg.sigma * std::sqrt(static_cast<double>(tcodes.measurements()) /
                                       static_cast<double>(codes.measurements()));
    ests.push_back({r, recover_analysis(tmeas, tcodes, tcfg).recovered});
  }
  const VideoVolume manual = fuse_estimates(scene.dims(), ests, FusionRule::Average);
  REQUIRE((manual.data() - rep.recovered.data()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a tile that cannot converge is flagged, not silently fused") {
  SyntheticSceneSpec spec = scripted_moving_scene();
  spec.width = 8;
  spec.height = 8;
  spec.frames = 4;
  const VideoVolume scene = synth_scene(spec);
  const auto codes = gen_pixel_wise(2, 4, 8, 8, 2);
  const auto meas = acquire(scene, codes);
  SolverConfig cfg;
  cfg.max_iters = 2;  // far too few to converge
  BlockSpec blocks;
  blocks.width = 4;
  blocks.height = 4;
  blocks.overlap = 0;
  const auto rep = recover_blocks(meas, codes, blocks, cfg);
  REQUIRE_FALSE(rep.converged);
  REQUIRE_FALSE(rep.failed_tiles.empty());
}

TEST_CASE("block specs are validated") {
  const Dims d{4, 16, 16};
  BlockSpec spec;
  spec.width = 20;
  spec.height = 8;
  REQUIRE_THROWS_AS(spec.validate(d), std::invalid_argument);
  spec.width = 8;
  spec.overlap = 4;  // 2*o must stay below min(W,H)
  REQUIRE_THROWS_AS(spec.validate(d), std::invalid_argument);
}
