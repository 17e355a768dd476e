#pragma once

#include <vector>

#include "sgp/function.hpp"

// Combinators that build new convex functions from old ones. Each returned
// handle carries its own value and subgradient selection; its projector is
// whatever core computes from them. The transformation identities relating
// G_g to G_f are verified in the tests, not assumed here.

namespace sgp::calculus {

/// Square matrix A with A^T A = A A^T = Id (checked to 1e-12 at construction).
class UnitaryMap {
 public:
  explicit UnitaryMap(Matrix a);

  const Matrix& matrix() const noexcept { return a_; }
  int dim() const noexcept { return static_cast<int>(a_.rows()); }

 private:
  Matrix a_;
};

struct MaxSelectionPolicy {
  enum class Rule { LowestActiveIndex, SuppliedWeights };

  Rule rule = Rule::LowestActiveIndex;
  /// One nonnegative weight per function, summing to 1. At x the weights
  /// are renormalized over the active set; if they vanish there the
  /// lowest-active-index rule is used instead.
  std::vector<double> weights;

  static MaxSelectionPolicy lowest_active_index() { return {}; }
  static MaxSelectionPolicy supplied_weights(std::vector<double> w);
};

/// Relative tie tolerance used to decide the active set of a max.
double tie_tolerance(double gx) noexcept;

/// g = alpha f, selection alpha s_f.
FunctionHandle scale(const FunctionHandle& f, double alpha);

/// g = f(alpha x), selection alpha s_f(alpha x).
FunctionHandle prescale(const FunctionHandle& f, double alpha);

/// g = f^alpha for nonnegative f and alpha >= 1.
FunctionHandle power(const FunctionHandle& f, double alpha);

/// g = f o A, selection A^T s_f(A x).
FunctionHandle unitary_compose(const FunctionHandle& f, const UnitaryMap& a);

/// g(x) = f(x - z).
FunctionHandle translate(const FunctionHandle& f, const Vector& z);

/// g = max_i f_i with the active set I(x) = {i : f_i(x) >= g(x) - tau}.
FunctionHandle max_of(const std::vector<FunctionHandle>& fs,
                      const MaxSelectionPolicy& policy = MaxSelectionPolicy::lowest_active_index());

/// Indices of the active pieces of max_i f_i at x, in increasing order.
std::vector<std::size_t> active_set(const std::vector<FunctionHandle>& fs, const Vector& x);

/// g = max{f, 0}.
FunctionHandle positive_part(const FunctionHandle& f);

/// g = f [] (1/2)|.|^2 for f with min f = 0, given the proximity operator of f.
/// g(x) = f(P x) + |x - P x|^2 / 2 and grad g(x) = x - P x.
FunctionHandle moreau_envelope(const FunctionHandle& f, VectorField prox);

/// 1-D Moreau envelope using numeric_prox.
FunctionHandle moreau_envelope(const FunctionHandle& f);

/// Solves y + f'(y) = x for a differentiable convex f on R.
double numeric_prox(const FunctionHandle& f, double x);

}  // namespace sgp::calculus
