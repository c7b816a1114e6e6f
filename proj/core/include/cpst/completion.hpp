#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cpst/mask.hpp"
#include "cpst/tensor4.hpp"

namespace cpst {

/// Fixed point continuation parameters. Unset continuation bounds are
/// derived from the data: mu_start = 0.25 * sigma_max(M(P_Omega(A))) and
/// mu_end = 1e-8 * mu_start.
struct CompletionConfig {
  double tau = 1.0;
  std::optional<double> mu_start;
  std::optional<double> mu_end;
  double eta = 0.25;
  double inner_tol = 1e-10;
  int max_inner = 500;

  /// Throws InvalidInput when a parameter is out of range.
  void validate() const;
};

struct CompletionReport {
  std::optional<double> relative_error;  // set when a reference tensor is known
  int rank_m_solution = 0;               // numerical rank at 1e-6 relative
  std::vector<double> mu_stages;
  std::vector<int> inner_iterations;  // one entry per mu stage
  std::vector<double> data_fit;       // 0.5 ||P(X) - P(A)||^2 at each stage end
  int total_iterations = 0;
  bool converged = false;  // last stage met inner_tol
};

struct CompletionResult {
  Tensor4 x;
  CompletionReport report;
};

/// One inner FPC step in square-unfolding coordinates, passed to observers.
struct FpcStep {
  int stage;
  int iteration;
  double threshold;             // tau * mu
  const Eigen::MatrixXd& y;     // M(Y_k) before shrinkage
  const Eigen::MatrixXd& x;     // M(X_k) = D_{tau mu}(M(Y_k))
};
using FpcObserver = std::function<void(const FpcStep&)>;

/// Random PS-closed sample set: every orbit of {0..n-1}^4 under the
/// partial-symmetry maps is kept independently with probability p.
SampleMask gen_ps_mask(int n, double p, std::uint64_t seed);

/// Nuclear-norm regularized completion of a real partial-symmetric tensor
/// by fixed point continuation:
///   Y_k = X_{k-1} - tau P_Omega(X_{k-1} - A),  M(X_k) = D_{tau mu}(M(Y_k)),
/// with mu decreasing geometrically by eta from mu_start to mu_end.
/// `observed` must vanish outside the mask; the mask must be PS-closed.
CompletionResult fpc_complete(const Tensor4& observed, const SampleMask& mask,
                              const CompletionConfig& config = {},
                              const FpcObserver& observer = {});

/// Masks `truth`, completes it and fills report.relative_error.
CompletionResult complete_and_score(const Tensor4& truth, const SampleMask& mask,
                                    const CompletionConfig& config = {});

/// ||X - A||_F / ||A||_F. Throws InvalidInput for A = 0.
double relative_error(const Tensor4& x, const Tensor4& a);

}  // namespace cpst
