#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace csi {

// Black-box objective. Works on any function, smooth or not; only finite
// values are legal.
struct ObjectiveHandle {
  int dimension = 0;
  std::function<double(std::span<const double>)> eval;
  std::optional<std::vector<std::array<double, 2>>> bounds;  // per-coordinate [lo, hi]
};

struct DescentConfig {
  // Per-coordinate probe radius; a single entry broadcasts to all coordinates.
  std::vector<double> initial_step{1.0};
  double grow = 2.0;    // step multiplier after an accepted probe
  double shrink = 0.5;  // step multiplier after a rejected pair
  double tol = 1e-8;    // finished once every step falls below this
  long max_evals = 100000;
  std::uint64_t seed = 0;  // reserved for randomized variants; the sweep itself is deterministic
  // Called after each full sweep; may rescale steps in place (encoding hook).
  std::function<void(int sweep, std::span<const double> x, std::span<double> step)> sweep_hook;
};

struct DescentTrace {
  // Accepted iterates only, starting with the initial point.
  std::vector<std::pair<std::vector<double>, double>> iterates;
  long evals_used = 0;
  bool converged = false;  // true iff all steps fell below tol (not a budget stop)
};

struct DescentResult {
  std::vector<double> x_best;
  double f_best = 0.0;
  DescentTrace trace;
};

// Cyclic coordinate sweeps: probe x +- step_i per coordinate, accept the best
// strictly improving probe (exact ties resolved toward -step), grow the step
// on success and shrink it on failure. Deterministic given the config.
DescentResult coordinate_descent(const ObjectiveHandle& f, std::span<const double> x0,
                                 const DescentConfig& cfg);

}  // namespace csi
