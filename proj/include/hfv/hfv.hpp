#ifndef HFV_HFV_HPP
#define HFV_HFV_HPP

// Umbrella header for the coded high-frame-rate video acquisition library.

#include "hfv/codes.hpp"
#include "hfv/experiment.hpp"
#include "hfv/forward.hpp"
#include "hfv/io.hpp"
#include "hfv/metrics.hpp"
#include "hfv/operators.hpp"
#include "hfv/ripcheck.hpp"
#include "hfv/rng.hpp"
#include "hfv/scenes.hpp"
#include "hfv/solver.hpp"
#include "hfv/transforms.hpp"
#include "hfv/volume.hpp"

#endif  // HFV_HFV_HPP
