#include "cpst/completion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "cpst/error.hpp"
#include "cpst/spectral.hpp"

namespace cpst {

void CompletionConfig::validate() const {
  if (!(tau > 0.0)) throw InvalidInput("CompletionConfig: tau must be positive");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidInput("CompletionConfig: eta must lie in (0, 1)");
  if (mu_start && !(*mu_start > 0.0)) throw InvalidInput("CompletionConfig: mu_start must be positive");
  if (mu_end && !(*mu_end > 0.0)) throw InvalidInput("CompletionConfig: mu_end must be positive");
  if (mu_start && mu_end && *mu_end > *mu_start) {
    throw InvalidInput("CompletionConfig: mu_end must not exceed mu_start");
  }
  if (!(inner_tol >= 0.0)) throw InvalidInput("CompletionConfig: inner_tol must be nonnegative");
  if (max_inner < 1) throw InvalidInput("CompletionConfig: max_inner must be at least 1");
}

SampleMask gen_ps_mask(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("gen_ps_mask: p must lie in [0, 1]");
  SampleMask mask(n);
  SampleMask visited(n);
  std::mt19937_64 rng(seed);
  const Tensor4 shape(n);
  for (std::size_t off = 0; off < shape.size(); ++off) {
    if (visited.contains_offset(off)) continue;
    const auto orbit = ps_orbit(shape.quad(off));
    for (const Quad& q : orbit) visited.insert(q);
    // 53-bit uniform in [0, 1), independent of the standard library's distributions
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) {
      for (const Quad& q : orbit) mask.insert(q);
    }
  }
  return mask;
}

double relative_error(const Tensor4& x, const Tensor4& a) {
  const double denom = frobenius_norm(a);
  if (denom == 0.0) throw InvalidInput("relative_error: reference tensor is zero");
  return frobenius_norm(x - a) / denom;
}

CompletionResult fpc_complete(const Tensor4& observed, const SampleMask& mask,
                              const CompletionConfig& config, const FpcObserver& observer) {
  config.validate();
  if (observed.dim() != mask.dim()) {
    throw InvalidInput("fpc_complete: mask dimension " + std::to_string(mask.dim()) +
                       " does not match tensor dimension " + std::to_string(observed.dim()));
  }
  if (!mask.is_ps_closed()) throw InvalidInput("fpc_complete: sample mask is not PS-closed");
  const double scale = frobenius_norm(observed);
  if (!observed.is_real(1e-12 * std::max(scale, 1.0))) {
    throw InvalidInput("fpc_complete: observed tensor must be real");
  }

  const int n = observed.dim();
  Tensor4 indicator(n);
  for (std::size_t off = 0; off < indicator.size(); ++off)
    if (mask.contains_offset(off)) indicator.entries()[off] = 1.0;
  const Eigen::MatrixXd w = unfold_matrix(indicator, kSquareUnfolding).real();
  const Eigen::MatrixXd a = w.cwiseProduct(unfold_matrix(observed, kSquareUnfolding).real());

  CompletionResult result;
  auto& report = result.report;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(a.rows(), a.cols());

  double mu = config.mu_start.value_or(0.0);
  if (!config.mu_start && a.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()),
                                                          Eigen::EigenvaluesOnly);
    mu = 0.25 * solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  const double mu_end = config.mu_end.value_or(1e-8 * mu);

  if (mu <= 0.0) {
    // No observed energy: the zero tensor is the fixed point.
    report.converged = true;
  } else {
    if (mu_end > mu) throw InvalidInput("fpc_complete: mu_end must not exceed mu_start");
    for (int stage = 0;; ++stage) {
      const double threshold = config.tau * mu;
      int iters = 0;
      bool stage_converged = false;
      while (iters < config.max_inner) {
        const Eigen::MatrixXd y = x - config.tau * w.cwiseProduct(x - a);
        Eigen::MatrixXd next = svt_symmetric(y, threshold);
        ++iters;
        if (observer) observer(FpcStep{stage, iters, threshold, y, next});
        const double change = (next - x).norm() / std::max(x.norm(), 1.0);
        x = std::move(next);
        if (change < config.inner_tol) {
          stage_converged = true;
          break;
        }
      }
      report.mu_stages.push_back(mu);
      report.inner_iterations.push_back(iters);
      report.data_fit.push_back(0.5 * w.cwiseProduct(x - a).squaredNorm());
      report.total_iterations += iters;
      report.converged = stage_converged;
      if (mu <= mu_end) break;
      mu = std::max(mu * config.eta, mu_end);
    }
  }

  result.x = fold(x.cast<Complex>(), kSquareUnfolding);
  report.rank_m_solution = numerical_rank(x.cast<Complex>(), 1e-6);
  return result;
}

CompletionResult complete_and_score(const Tensor4& truth, const SampleMask& mask,
                                    const CompletionConfig& config) {
  auto result = fpc_complete(apply_mask(truth, mask), mask, config);
  result.report.relative_error = relative_error(result.x, truth);
  return result;
}

}  // namespace cpst
