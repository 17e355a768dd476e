#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgp/analysis.hpp"
#include "sgp/function.hpp"
#include "sgp/yy.hpp"

namespace sgp::solver {

enum class Status { Converged, MaxIter, InfeasibleFlag, Error };

std::string to_string(Status status);

struct IterationRecord {
  int k = 0;
  Vector x;
  double fx = 0.0;
  /// |x_{k+1} - x_k|; 0 on the terminal record.
  double step_norm = 0.0;
  std::optional<double> dist_c;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  Status status = Status::MaxIter;
  /// Name of the operator that produced the trace ("G" or "Z").
  std::string op;

  int steps() const noexcept { return records.empty() ? 0 : records.back().k; }
  const IterationRecord& last() const { return records.back(); }
};

/// Which fixed-point map to iterate. An empty yy means G.
struct OperatorChoice {
  std::optional<yy::YYParams> yy;

  static OperatorChoice subgradient_projector() { return {}; }
  static OperatorChoice smoothed(yy::YYParams params) { return {params}; }
};

struct IterateOptions {
  int max_iter = 100000;
  double tol_f = 1e-10;
  std::optional<Vector> c_monitor;
};

/// x_{k+1} = T x_k until f(x_k) <= tol_f or max_iter steps. In dimension 1
/// an increase of f by more than 1e-12 flags infeasibility and halts; the
/// offending iterate is kept as the last record.
///
/// With tol_f = 0 and strictly convex f the iteration never reaches C in
/// finitely many steps, so it runs to max_iter.
IterationTrace iterate(const FunctionHandle& f, const Vector& x0, const OperatorChoice& op = {},
                       const IterateOptions& options = {});

/// Checks |x_{k+1} - c| <= |x_k - c| along a trace that recorded dist_c.
analysis::PropertyReport check_fejer(const IterationTrace& trace, double tol = 1e-10);

struct RateAssumptions {
  enum class Mode { QuadraticGrowth, LinearGrowth };

  double alpha = 1.0;
  std::optional<double> lipschitz;
  Mode mode = Mode::QuadraticGrowth;
};

/// Per-step contraction along a G trace:
///   quadratic growth (f >= alpha d_C^2, grad f L-Lipschitz):
///       d_C^2(x_{k+1}) <= (1 - alpha^2/L^2) d_C^2(x_k)
///   linear growth (f >= alpha d_C):
///       d_C^2(x_{k+1}) <= (1 - alpha^2/|s(x_k)|^2) d_C^2(x_k)
analysis::PropertyReport check_rate(const IterationTrace& trace, const FunctionHandle& f,
                                    const RateAssumptions& assumptions,
                                    const std::function<double(const Vector&)>& dist_c,
                                    double tol = 1e-9);

/// Same, with d_C taken from f's projector onto C.
analysis::PropertyReport check_rate(const IterationTrace& trace, const FunctionHandle& f,
                                    const RateAssumptions& assumptions, double tol = 1e-9);

/// |Gx - (x - f(x)/f'(x))| on grid points with f(x) > 0.
analysis::PropertyReport newton_equivalence_check(const FunctionHandle& f, const std::vector<double>& grid,
                                                  double tol = 1e-12);

}  // namespace sgp::solver
