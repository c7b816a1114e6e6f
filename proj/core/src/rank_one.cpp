#include "cpst/rank_one.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "cpst/error.hpp"
#include "cpst/spectral.hpp"
#include "cpst/symmetry.hpp"

namespace cpst {

namespace {

constexpr int kMaxStepDoublings = 60;

Tensor4 rank_one_term(const Eigen::VectorXcd& x) {
  const Eigen::VectorXcd xc = x.conjugate();
  return outer_product(x, x, xc, xc);
}

// Rotates an unfolding eigenvector w = vec(W) with W = e^{i theta} W^* so
// that the folded matrix is Hermitian. tr(W^2) = e^{i theta} ||W||_F^2.
Eigen::MatrixXcd hermitian_factor(const Eigen::VectorXcd& w) {
  Eigen::MatrixXcd m = unvec(w);
  const Complex tr = (m * m).trace();
  if (std::abs(tr) > 0.0) m *= std::polar(1.0, -0.5 * std::arg(tr));
  return 0.5 * (m + m.adjoint());
}

// Leading |eigenvalue| pair of a small Hermitian matrix.
EigenPair leading_pair(const Eigen::MatrixXcd& h) { return leading_eigenpair_abs(h, 1.0); }

double nuclear_3214(const Tensor4& x) { return nuclear_norm(unfold_matrix(x, kUnfolding3214)); }

double symmetric_nuclear(const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

Tensor4 Rank1CPS::build() const { return lambda * rank_one_term(x); }

void RelaxConfig::validate() const {
  if (!(rho > 0.0)) throw InvalidInput("rho must be positive");
  if (!(tau_admm > 0.0)) throw InvalidInput("tau must be positive");
  if (!(lambda_nuc >= 0.0)) throw InvalidInput("nuclear weight must be nonnegative");
  if (!(tol >= 0.0)) throw InvalidInput("tol must be nonnegative");
  if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  if (warm_start_steps < 0) throw InvalidInput("warm_start_steps must be nonnegative");
}

std::string_view to_string(Verdict v) {
  return v == Verdict::certified_global ? "certified_global" : "not_certified";
}

bool is_rank_one_tensor(const Tensor4& t, double rel_tol) {
  require_symmetry(t, SymmetryTag::cps, "is_rank_one_tensor");
  return numerical_rank(unfold_matrix(t, kUnfolding3214), rel_tol) == 1;
}

Rank1CPS extract_rank1(const Tensor4& t, double rel_tol) {
  require_symmetry(t, SymmetryTag::cps, "extract_rank1");
  const Eigen::MatrixXcd m = unfold_matrix(t, kUnfolding3214);
  const auto eig = hermitian_eigen(m);
  const int rank = numerical_rank(Eigen::VectorXd(eig.values.cwiseAbs()), rel_tol, m.rows());
  if (rank != 1)
    throw NotRankOne("extract_rank1: unfolding rank is " + std::to_string(rank) + ", expected 1", rank);

  const auto inner = leading_pair(hermitian_factor(eig.vectors.col(0)));
  Rank1CPS out;
  out.x = phase_normalized(inner.vector.conjugate().normalized());
  out.lambda = inner_product(t, rank_one_term(out.x)).real();
  return out;
}

PlmaResult plma_low_rank_approx(const Tensor4& a, const RelaxConfig& config) {
  config.validate();
  require_symmetry(a, SymmetryTag::ps, "plma_low_rank_approx");
  if (!a.is_real()) throw InvalidInput("plma_low_rank_approx: tensor must be real");
  const double norm_a = frobenius_norm(a);
  if (norm_a == 0.0) throw InvalidInput("plma_low_rank_approx: tensor is zero");

  const int n = a.dim();
  const Eigen::MatrixXd am = unfold_matrix(a, kSquareUnfolding).real();
  const double lam = config.lambda_nuc;

  auto apply = [&](const Eigen::MatrixXd& x) {
    Eigen::VectorXd v = am * x.reshaped();
    return Eigen::MatrixXd(v.reshaped(n, n));
  };
  auto quad = [&](const Eigen::MatrixXd& x) { return x.reshaped().dot(am * x.reshaped()); };
  // Unit-norm X: f = ||A||^2 - 2 alpha <A, X o X> + alpha^2 with alpha = <A, X o X>.
  auto objective = [&](const Eigen::MatrixXd& x, double alpha) {
    const double s = x.squaredNorm();
    return norm_a * norm_a - 2.0 * alpha * quad(x) + alpha * alpha * s * s +
           lam * symmetric_nuclear(x);
  };

  PlmaResult out;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(am);
    Eigen::Index top = 0;
    es.eigenvalues().cwiseAbs().maxCoeff(&top);
    Eigen::MatrixXd x0 = es.eigenvectors().col(top).reshaped(n, n);
    x0 = 0.5 * (x0 + x0.transpose());
    out.x = x0 / x0.norm();
  }
  out.alpha = quad(out.x);
  double f = objective(out.x, out.alpha);
  auto& report = out.report;
  report.termination = Termination::max_iterations;

  for (int k = 0; k < config.max_iter; ++k) {
    const Eigen::MatrixXd& x = out.x;
    const double alpha = out.alpha;
    const Eigen::MatrixXd grad = 4.0 * alpha * alpha * x.squaredNorm() * x - 4.0 * alpha * apply(x);

    bool accepted = false;
    double t = 1.0;
    Eigen::MatrixXd x_next;
    double alpha_next = 0.0, f_next = 0.0;
    for (int d = 0; d <= kMaxStepDoublings; ++d, t *= 2.0) {
      Eigen::MatrixXd trial = svt_symmetric(x - grad / t, lam / t);
      const double norm = trial.norm();
      if (norm == 0.0) {
        ++out.annihilated_trials;
        continue;
      }
      trial /= norm;
      const double a_trial = quad(trial);
      const double f_trial = objective(trial, a_trial);
      const double slack = 1e-12 * std::max(1.0, std::abs(f));
      if (f_trial <= f - 0.25 * t * (trial - x).squaredNorm() + slack) {
        x_next = std::move(trial);
        alpha_next = a_trial;
        f_next = f_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.termination = Termination::step_search_failed;
      break;
    }
    const double change = (x_next - x).norm();
    out.x = std::move(x_next);
    out.alpha = alpha_next;
    f = f_next;
    out.step_params.push_back(t);
    report.objective.push_back(f);
    report.residual.push_back(change);
    report.iterations = k + 1;
    if (change <= config.tol) {
      report.termination = Termination::converged;
      break;
    }
  }
  return out;
}

Certification certify_conv1(const Tensor4& x, const Tensor4& t, double objective, double tol) {
  require_symmetry(x, SymmetryTag::cps, "certify_conv1");
  if (x.dim() != t.dim()) throw InvalidInput("certify_conv1: dimension mismatch");
  Certification c;
  c.frob_norm = frobenius_norm(x);
  c.nuclear_norm_3214 = nuclear_3214(x);
  c.objective = objective;
  const bool ok = std::abs(c.frob_norm - 1.0) <= tol && std::abs(c.nuclear_norm_3214 - 1.0) <= tol &&
                  std::abs(objective) > tol;
  c.verdict = ok ? Verdict::certified_global : Verdict::not_certified;
  return c;
}

AdmmResult admm_conv1(const Tensor4& t, const RelaxConfig& config) {
  config.validate();
  require_symmetry(t, SymmetryTag::cps, "admm_conv1");
  const double norm_t = frobenius_norm(t);
  if (norm_t == 0.0) throw InvalidInput("admm_conv1: tensor is zero");
  const int n = t.dim();

  double rho = config.rho;
  if (config.warm_start_steps > 0) {
    RelaxConfig warm = config;
    warm.max_iter = config.warm_start_steps;
    warm.tol = 0.0;
    const Tensor4 xw = alm_nonconvex(t, warm).x;
    const double nw = frobenius_norm(xw);
    if (nw > 0.0) {
      const double guess = inner_product(t, xw).real() / nw;
      if (guess > 0.0) rho = guess;
    }
  }

  // The iteration runs on T / ||T||_F with rho / ||T||_F, which has the same
  // minimizers and makes tau independent of the data scale.
  const double tau = config.tau_admm;
  const Tensor4 tn = (1.0 / norm_t) * t;
  const double rho_n = rho / norm_t;
  Tensor4 y = tn;
  Tensor4 lambda(n);
  Tensor4 x(n);
  AdmmResult out{Tensor4(n), {}, {}, rho};
  auto& report = out.report;
  report.termination = Termination::max_iterations;
  double objective = 0.0;

  for (int k = 0; k < config.max_iter; ++k) {
    x = project_cps(y + (1.0 / tau) * (tn + lambda));
    const double nx = frobenius_norm(x);
    if (nx <= 1e-14) {
      report.termination = Termination::degenerate;
      break;
    }
    x *= 1.0 / nx;
    const Eigen::MatrixXcd shrunk =
        svt(unfold_matrix(x - (1.0 / tau) * lambda, kUnfolding3214), rho_n / tau);
    y = fold(shrunk, kUnfolding3214);
    const Tensor4 gap = y - x;
    lambda += tau * gap;

    const double r = frobenius_norm(gap);
    objective = -inner_product(t, x).real() + rho * nuclear_3214(x);
    report.objective.push_back(objective);
    report.residual.push_back(r);
    report.iterations = k + 1;
    if (r <= config.tol) {
      report.termination = Termination::converged;
      break;
    }
  }
  out.x = x;
  out.certification = certify_conv1(x, t, objective);
  return out;
}

AlmResult alm_nonconvex(const Tensor4& t, const RelaxConfig& config,
                        const std::optional<Tensor4>& initial) {
  config.validate();
  require_symmetry(t, SymmetryTag::cps, "alm_nonconvex");
  const int n = t.dim();
  if (initial) {
    if (initial->dim() != n) throw InvalidInput("alm_nonconvex: initial tensor dimension mismatch");
    require_symmetry(*initial, SymmetryTag::cps, "alm_nonconvex initial");
  }
  const double rho = config.rho;

  AlmResult out{{0.0, Eigen::VectorXcd::Unit(n, 0)}, initial.value_or(Tensor4(n)), {}};
  auto& report = out.report;
  report.termination = Termination::max_iterations;

  for (int k = 0; k < config.max_iter; ++k) {
    const Tensor4 z = (1.0 / (1.0 + rho)) * (t + rho * out.x);
    const auto lead = leading_eigenpair_abs(unfold_matrix(z, kUnfolding3214));
    const double mu = lead.value;
    const Tensor4 y = fold(mu * lead.vector * lead.vector.adjoint(), kUnfolding3214);

    const auto inner = leading_pair(hermitian_factor(lead.vector));
    const Eigen::VectorXcd x = phase_normalized(inner.vector.conjugate().normalized());
    const double lambda = mu * inner.value * inner.value;
    Tensor4 x_next = lambda * rank_one_term(x);

    const double fit = frobenius_norm(t - y);
    const double coupling = frobenius_norm(x_next - y);
    const double change = frobenius_norm(x_next - out.x);
    out.x = std::move(x_next);
    out.solution = {lambda, x};
    report.objective.push_back(0.5 * fit * fit + 0.5 * rho * coupling * coupling);
    report.residual.push_back(change);
    report.iterations = k + 1;
    if (change <= config.tol) {
      report.termination = Termination::converged;
      break;
    }
  }
  return out;
}

}  // namespace cpst
