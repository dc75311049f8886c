#include "csi/descent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csi/error.hpp"
#include "csi/format.hpp"

namespace csi {

namespace {

std::string point_to_string(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += dtos(x[i]);
  }
  return s + ")";
}

}  // namespace

DescentResult coordinate_descent(const ObjectiveHandle& f, std::span<const double> x0,
                                 const DescentConfig& cfg) {
  const int n = f.dimension;
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "objective dimension must be >= 1");
  if (!f.eval) throw Error(ErrorKind::InvalidParameter, "objective has no evaluator");
  if (static_cast<int>(x0.size()) != n) {
    throw Error(ErrorKind::InvalidParameter,
                "start point has " + std::to_string(x0.size()) + " coordinates, expected " +
                    std::to_string(n));
  }
  if (!(cfg.grow > 1.0)) throw Error(ErrorKind::InvalidParameter, "grow factor must exceed 1");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "shrink factor must lie in (0,1)");
  }
  if (!(cfg.tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");
  if (cfg.max_evals < 1) throw Error(ErrorKind::InvalidParameter, "evaluation budget must be >= 1");

  std::vector<double> step;
  if (cfg.initial_step.size() == 1) {
    step.assign(n, cfg.initial_step[0]);
  } else if (static_cast<int>(cfg.initial_step.size()) == n) {
    step = cfg.initial_step;
  } else {
    throw Error(ErrorKind::InvalidParameter, "initial_step needs 1 or dimension entries");
  }
  for (double s : step) {
    if (!(s > 0.0)) throw Error(ErrorKind::InvalidParameter, "initial steps must be positive");
  }

  if (f.bounds) {
    if (static_cast<int>(f.bounds->size()) != n) {
      throw Error(ErrorKind::InvalidParameter, "bounds count differs from dimension");
    }
    for (int i = 0; i < n; ++i) {
      const auto& [lo, hi] = (*f.bounds)[i];
      if (!(lo <= hi)) throw Error(ErrorKind::InvalidParameter, "bounds with lo > hi");
      if (x0[i] < lo || x0[i] > hi) {
        throw Error(ErrorKind::InvalidParameter, "start point violates the bounds");
      }
    }
  }

  DescentResult res;
  DescentTrace& trace = res.trace;
  long evals = 0;
  bool budget_hit = false;

  // Evaluates within budget; nullopt once the budget is gone.
  auto eval = [&](std::span<const double> x) -> std::optional<double> {
    if (evals >= cfg.max_evals) {
      budget_hit = true;
      return std::nullopt;
    }
    ++evals;
    double v = f.eval(x);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::Numeric,
                  "objective returned a non-finite value at " + point_to_string(x));
    }
    return v;
  };

  auto clamp = [&](std::vector<double>& x) {
    if (!f.bounds) return;
    for (int i = 0; i < n; ++i) {
      x[i] = std::clamp(x[i], (*f.bounds)[i][0], (*f.bounds)[i][1]);
    }
  };

  std::vector<double> x(x0.begin(), x0.end());
  double fx = *eval(x);  // budget >= 1, so the first evaluation always runs
  trace.iterates.emplace_back(x, fx);

  auto all_below_tol = [&] {
    return std::all_of(step.begin(), step.end(), [&](double s) { return s < cfg.tol; });
  };

  int sweep = 0;
  while (!budget_hit && !all_below_tol()) {
    for (int i = 0; i < n && !budget_hit; ++i) {
      std::vector<double> minus = x;
      minus[i] -= step[i];
      clamp(minus);
      std::vector<double> plus = x;
      plus[i] += step[i];
      clamp(plus);

      // Minus first: an exact tie between the two probes goes to -step.
      std::optional<double> f_minus, f_plus;
      if (minus != x) f_minus = eval(minus);
      if (plus != x && !budget_hit) f_plus = eval(plus);

      bool minus_improves = f_minus && *f_minus < fx;
      bool plus_improves = f_plus && *f_plus < fx;
      if (minus_improves && (!plus_improves || *f_minus <= *f_plus)) {
        x = std::move(minus);
        fx = *f_minus;
        step[i] *= cfg.grow;
        trace.iterates.emplace_back(x, fx);
      } else if (plus_improves) {
        x = std::move(plus);
        fx = *f_plus;
        step[i] *= cfg.grow;
        trace.iterates.emplace_back(x, fx);
      } else {
        step[i] *= cfg.shrink;
      }
    }
    if (cfg.sweep_hook) cfg.sweep_hook(sweep, x, step);
    ++sweep;
  }

  trace.evals_used = evals;
  trace.converged = all_below_tol();
  res.x_best = std::move(x);
  res.f_best = fx;
  return res;
}

}  // namespace csi
