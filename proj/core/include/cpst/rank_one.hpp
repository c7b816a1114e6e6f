#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cpst/solver_report.hpp"
#include "cpst/tensor4.hpp"

namespace cpst {

/// lambda * x o x o conj(x) o conj(x) with ||x|| = 1 and x phase-normalized.
struct Rank1CPS {
  double lambda = 0.0;
  Eigen::VectorXcd x;

  Tensor4 build() const;
};

struct RelaxConfig {
  double rho = 1.0;         // conv1 regularization / ALM coupling weight
  double tau_admm = 1.0;    // augmented Lagrangian penalty, in units of T / ||T||_F
  double lambda_nuc = 0.0;  // PLMA nuclear-norm weight
  double tol = 1e-8;
  int max_iter = 1000;
  int warm_start_steps = 5;  // ALM sweeps used to pick rho for ADMM; 0 disables

  void validate() const;
};

enum class Verdict { certified_global, not_certified };
std::string_view to_string(Verdict v);

/// Global-optimality evidence for a conv1 solution.
struct Certification {
  double frob_norm = 0.0;
  double nuclear_norm_3214 = 0.0;
  double objective = 0.0;
  Verdict verdict = Verdict::not_certified;
};

inline constexpr double kCertificationTol = 1e-6;
inline constexpr double kRankOneTol = 1e-8;

/// A CPS tensor is rank-one iff its (3,2;1,4) unfolding has rank one.
bool is_rank_one_tensor(const Tensor4& t, double rel_tol = kRankOneTol);

/// Recovers (lambda, x) from a rank-one CPS tensor. Throws NotRankOne with
/// the measured unfolding rank otherwise.
Rank1CPS extract_rank1(const Tensor4& t, double rel_tol = kRankOneTol);

struct PlmaResult {
  double alpha = 0.0;
  Eigen::MatrixXd x;  // real symmetric, unit Frobenius norm
  SolverReport report;  // objective: f(alpha, X) + lambda ||X||_*, residual: ||X_{k+1} - X_k||_F
  std::vector<double> step_params;  // accepted t_k per iteration
  int annihilated_trials = 0;       // trial steps where thresholding returned zero
};

/// Proximal linearized minimization for
///   min ||A - alpha X o X||_F^2 + lambda_nuc ||X||_*  s.t. X symmetric, ||X||_F = 1
/// on a real partial-symmetric tensor. t_k is found by backtracking from 1,
/// doubling (at most 60 times) until
///   F_{k+1} <= F_k - (t_k / 4) ||X_{k+1} - X_k||^2.
PlmaResult plma_low_rank_approx(const Tensor4& a, const RelaxConfig& config);

/// Checks ||X||_F = 1, ||X_[3,2;1,4]||_* = 1 and |p| > 0 within `tol`.
Certification certify_conv1(const Tensor4& x, const Tensor4& t, double objective,
                            double tol = kCertificationTol);

struct AdmmResult {
  Tensor4 x;
  Certification certification;
  SolverReport report;  // objective: conv1 value at X^k, residual: ||Y^k - X^k||_F
  double rho = 0.0;     // regularization actually used
};

/// ADMM for min -<T, X> + rho ||X_[3,2;1,4]||_* over CPS X with ||X||_F <= 1.
/// X iterates are normalized onto ||X||_F = 1; the reported objective uses
/// the original T and rho.
/// With warm_start_steps > 0, rho = Re<T, X/||X||_F> where X is the ALM
/// iterate after that many sweeps from zero.
AdmmResult admm_conv1(const Tensor4& t, const RelaxConfig& config);

struct AlmResult {
  Rank1CPS solution;
  Tensor4 x;  // final X iterate
  SolverReport report;  // objective: F(X^k, Y^k), residual: ||X^k - X^{k-1}||_F
};

/// Alternating minimization for
///   min 0.5||T - Y||^2 + rho/2 ||X - Y||^2,  rank(Y_[3,2;1,4]) = 1, X rank-one CPS.
/// Starts from `initial` or the zero tensor.
AlmResult alm_nonconvex(const Tensor4& t, const RelaxConfig& config,
                        const std::optional<Tensor4>& initial = std::nullopt);

}  // namespace cpst
