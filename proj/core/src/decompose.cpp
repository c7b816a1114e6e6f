#include "cpst/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "cpst/error.hpp"
#include "cpst/spectral.hpp"
#include "cpst/symmetry.hpp"

namespace cpst {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Fold an eigenvector into a symmetric unit-norm factor with a fixed phase.
Eigen::MatrixXcd factor_from_eigenvector(const Eigen::VectorXcd& v, bool real) {
  Eigen::MatrixXcd e = unvec(v);
  e = 0.5 * (e + e.transpose());
  if (real) e = e.real().cast<Complex>();
  const double norm = e.norm();
  if (norm > 0.0) e /= norm;
  return unvec(phase_normalized(vec(e)));
}

Tensor4 factor_term(const Eigen::MatrixXcd& e, bool conjugated_second) {
  return outer_product(e, conjugated_second ? Eigen::MatrixXcd(e.conjugate()) : e);
}

}  // namespace

SmroaResult smroa(const Tensor4& a, const SmroaOptions& options) {
  require_symmetry(a, SymmetryTag::cps, "smroa");
  const int n = a.dim();
  const int max_terms = options.max_terms.value_or(n * (n + 1) / 2);
  if (max_terms < 1) throw InvalidInput("smroa: max_terms must be at least 1");
  if (options.tol < 0.0) throw InvalidInput("smroa: tol must be nonnegative");

  const bool real = a.is_real();
  SmroaResult result;
  result.decomposition.n = n;
  result.decomposition.conjugated_second = !real;
  auto& report = result.report;

  const double norm0 = frobenius_norm(a);
  Tensor4 residual = a;
  double residual_norm = norm0;
  report.termination = Termination::max_iterations;

  while (true) {
    if (residual_norm <= options.tol * norm0 || norm0 == 0.0) {
      report.termination = Termination::converged;
      break;
    }
    if (static_cast<int>(result.decomposition.factors.size()) >= max_terms) break;

    const auto eig = hermitian_eigen(unfold_matrix(residual, kSquareUnfolding));
    if (eig.values.size() > 1) {
      const double top = std::abs(eig.values(0));
      if (std::abs(top - std::abs(eig.values(1))) <= 1e-8 * top) report.degenerate_spectrum = true;
    }
    Eigen::MatrixXcd x = factor_from_eigenvector(eig.vectors.col(0), real);
    const Tensor4 term = factor_term(x, !real);
    const double lambda = inner_product(residual, term).real();

    residual -= lambda * term;
    residual_norm = frobenius_norm(residual);
    result.decomposition.factors.push_back({lambda, std::move(x)});
    report.residual.push_back(residual_norm);
    report.objective.push_back(residual_norm * residual_norm);
    ++report.iterations;
  }
  return result;
}

MatrixDecomposition full_matrix_decomposition(const Tensor4& a, std::optional<double> rel_tol) {
  require_symmetry(a, SymmetryTag::cps, "full_matrix_decomposition");
  const int n = a.dim();
  const bool real = a.is_real();
  const double tol = rel_tol.value_or(static_cast<double>(n) * n * kEps);

  MatrixDecomposition d;
  d.n = n;
  d.conjugated_second = !real;
  const auto eig = hermitian_eigen(unfold_matrix(a, kSquareUnfolding));
  const double top = eig.values.size() ? std::abs(eig.values(0)) : 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    if (top == 0.0 || std::abs(lambda) <= tol * top) break;
    d.factors.push_back({lambda, factor_from_eigenvector(eig.vectors.col(i), real)});
  }
  return d;
}

Tensor4 reconstruct(const MatrixDecomposition& d) {
  Tensor4 out(d.n);
  for (const auto& f : d.factors) {
    if (f.e.rows() != d.n || f.e.cols() != d.n) {
      throw InvalidInput("reconstruct: factor dimension does not match n");
    }
    out += f.lambda * factor_term(f.e, d.conjugated_second);
  }
  return out;
}

int rank_m(const Tensor4& a, std::optional<double> rel_tol) {
  return numerical_rank(unfold_matrix(a, kSquareUnfolding), rel_tol);
}

RankBounds cp_rank_bounds(const Tensor4& a, double rel_tol) {
  const auto d = full_matrix_decomposition(a, rel_tol);
  RankBounds b;
  b.rank_m = rank_m(a, rel_tol);
  for (const auto& f : d.factors) b.max_factor_rank = std::max(b.max_factor_rank, numerical_rank(f.e, rel_tol));
  b.cp_lower = b.rank_m;
  b.cp_upper = b.max_factor_rank * b.max_factor_rank * b.rank_m;
  return b;
}

std::vector<VectorPairFactor> expand_vector_form(const MatrixDecomposition& d) {
  std::vector<VectorPairFactor> out;
  for (const auto& f : d.factors) {
    if (f.e.imag().norm() > 1e-12 * std::max(1.0, f.e.norm())) {
      throw InvalidInput("expand_vector_form: factors must be real");
    }
    const Eigen::MatrixXd e = f.e.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (e + e.transpose()));
    const Eigen::VectorXd& beta = solver.eigenvalues();
    const Eigen::MatrixXd& u = solver.eigenvectors();
    const double floor = 1e-12 * beta.cwiseAbs().maxCoeff();

    std::vector<Eigen::Index> kept;
    for (Eigen::Index j = beta.size(); j-- > 0;)
      if (std::abs(beta(j)) > floor) kept.push_back(j);

    for (std::size_t a = 0; a < kept.size(); ++a) {
      const auto j = kept[a];
      out.push_back({0.5 * f.lambda * beta(j) * beta(j), u.col(j), u.col(j)});
      for (std::size_t b = a + 1; b < kept.size(); ++b) {
        const auto k = kept[b];
        out.push_back({f.lambda * beta(j) * beta(k), u.col(j), u.col(k)});
      }
    }
  }
  return out;
}

Tensor4 reconstruct(const std::vector<VectorPairFactor>& pairs, int n) {
  Tensor4 out(n);
  for (const auto& pq : pairs) {
    const Eigen::VectorXcd p = pq.p.cast<Complex>();
    const Eigen::VectorXcd q = pq.q.cast<Complex>();
    out += pq.coeff * (outer_product(p, p, q, q) + outer_product(q, q, p, p));
  }
  return out;
}

std::vector<SkewFactor> decompose_skew_ps(const Tensor4& a, double rel_tol) {
  require_symmetry(a, SymmetryTag::skew_ps, "decompose_skew_ps");
  if (!a.is_real(1e-12 * std::max(1.0, frobenius_norm(a)))) {
    throw InvalidInput("decompose_skew_ps: input must be real");
  }
  const Eigen::MatrixXd m = unfold_matrix(a.real_part(), kSquareUnfolding).real();
  // i*M is Hermitian; an eigenvector w for eigenvalue -sigma satisfies
  // w = (u + i v)/sqrt(2) with M = sigma (u v^T - v u^T) on that plane.
  const Eigen::MatrixXcd h = Complex(0.0, 1.0) * m.cast<Complex>();
  const auto eig = hermitian_eigen(h);
  const double top = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;

  std::vector<SkewFactor> out;
  if (top == 0.0) return out;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double sigma = -eig.values(i);
    if (sigma <= rel_tol * top) continue;
    const Eigen::VectorXcd w = eig.vectors.col(i);
    Eigen::MatrixXd u = unvec((std::sqrt(2.0) * w.real()).cast<Complex>()).real();
    Eigen::MatrixXd v = unvec((std::sqrt(2.0) * w.imag()).cast<Complex>()).real();
    u = 0.5 * (u + u.transpose());
    v = 0.5 * (v + v.transpose());
    out.push_back({sigma, std::move(u), std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SkewFactor& x, const SkewFactor& y) { return x.coeff > y.coeff; });
  return out;
}

Tensor4 reconstruct(const std::vector<SkewFactor>& factors, int n) {
  Tensor4 out(n);
  for (const auto& f : factors) {
    const Eigen::MatrixXcd u = f.u.cast<Complex>();
    const Eigen::MatrixXcd v = f.v.cast<Complex>();
    out += f.coeff * (outer_product(u, v) - outer_product(v, u));
  }
  return out;
}

}  // namespace cpst
