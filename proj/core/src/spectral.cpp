#include "cpst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cpst/error.hpp"

namespace cpst {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const Eigen::MatrixXcd& m, const char* op) {
  if (!m.allFinite()) throw InvalidInput(std::string(op) + ": non-finite entry");
}

// Insertion sort so that the tolerance-based comparator cannot break the
// sort's ordering requirements; sizes here are at most a few hundred.
std::vector<Eigen::Index> canonical_order(const Eigen::VectorXd& values) {
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  const double tie = 1e-12 * scale;
  auto before = [&](Eigen::Index a, Eigen::Index b) {
    const double da = std::abs(values(a)), db = std::abs(values(b));
    if (std::abs(da - db) > tie) return da > db;
    if (values(a) != values(b)) return values(a) > values(b);
    return a < b;
  };
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (std::size_t j = i; j > 0 && before(order[j], order[j - 1]); --j) {
      std::swap(order[j], order[j - 1]);
    }
  }
  return order;
}

}  // namespace

Eigen::VectorXcd phase_normalized(const Eigen::VectorXcd& v) {
  if (v.size() == 0) return v;
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) return v;
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - 1e-10)) {
      pivot = i;
      break;
    }
  }
  const std::complex<double> phase = std::conj(v(pivot)) / std::abs(v(pivot));
  Eigen::VectorXcd out = v * phase;
  out(pivot) = std::abs(out(pivot));
  return out;
}

EigenDecomposition hermitian_eigen(const Eigen::MatrixXcd& m, double herm_tol) {
  if (m.rows() != m.cols()) throw InvalidInput("hermitian_eigen: matrix must be square");
  require_finite(m, "hermitian_eigen");
  const double dev = (m - m.adjoint()).norm();
  if (dev > herm_tol * m.norm()) {
    throw InvalidInput("hermitian_eigen: matrix is not Hermitian (||M - M^*||_F = " +
                       std::to_string(dev) + ")");
  }
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());

  Eigen::VectorXd raw_values;
  Eigen::MatrixXcd raw_vectors;
  if (h.imag().isZero(0.0)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) throw InvalidInput("hermitian_eigen: solver failed");
    raw_values = solver.eigenvalues();
    raw_vectors = solver.eigenvectors().cast<std::complex<double>>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw InvalidInput("hermitian_eigen: solver failed");
    raw_values = solver.eigenvalues();
    raw_vectors = solver.eigenvectors();
  }

  const auto order = canonical_order(raw_values);
  EigenDecomposition out;
  out.values.resize(raw_values.size());
  out.vectors.resize(h.rows(), h.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    out.values(col) = raw_values(order[i]);
    out.vectors.col(col) = phase_normalized(raw_vectors.col(order[i]));
  }
  return out;
}

EigenPair leading_eigenpair_abs(const Eigen::MatrixXcd& m, double herm_tol) {
  if (m.rows() == 0) throw InvalidInput("leading_eigenpair_abs: empty matrix");
  if (m.isZero(0.0)) {
    require_finite(m, "leading_eigenpair_abs");
    return {0.0, Eigen::VectorXcd::Unit(m.rows(), 0)};
  }
  auto eig = hermitian_eigen(m, herm_tol);
  return {eig.values(0), eig.vectors.col(0)};
}

SingularDecomposition svd(const Eigen::MatrixXcd& m) {
  require_finite(m, "svd");
  Eigen::BDCSVD<Eigen::MatrixXcd> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

Eigen::MatrixXcd svt(const Eigen::MatrixXcd& m, double tau) {
  if (tau < 0.0) throw InvalidInput("svt: threshold must be nonnegative");
  if (tau == 0.0) return m;
  const auto d = svd(m);
  const Eigen::VectorXd shrunk = (d.values.array() - tau).cwiseMax(0.0);
  Eigen::Index keep = 0;
  while (keep < shrunk.size() && shrunk(keep) > 0.0) ++keep;
  return d.u.leftCols(keep) * shrunk.head(keep).asDiagonal() * d.v.leftCols(keep).adjoint();
}

Eigen::MatrixXd svt_symmetric(const Eigen::MatrixXd& m, double tau) {
  if (tau < 0.0) throw InvalidInput("svt_symmetric: threshold must be nonnegative");
  if (m.rows() != m.cols()) throw InvalidInput("svt_symmetric: matrix must be square");
  if (!m.allFinite()) throw InvalidInput("svt_symmetric: non-finite entry");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
  const auto& lam = solver.eigenvalues();
  Eigen::VectorXd shrunk(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double mag = std::max(std::abs(lam(i)) - tau, 0.0);
    shrunk(i) = lam(i) < 0.0 ? -mag : mag;
  }
  const auto& v = solver.eigenvectors();
  return v * shrunk.asDiagonal() * v.transpose();
}

int numerical_rank(const Eigen::VectorXd& sigma, std::optional<double> rel_tol,
                   Eigen::Index dimension) {
  const double tol = rel_tol.value_or(static_cast<double>(dimension) * kEps);
  if (sigma.size() == 0) return 0;
  const double top = sigma.maxCoeff();
  if (top <= 0.0) return 0;
  return static_cast<int>((sigma.array() > tol * top).count());
}

int numerical_rank(const Eigen::MatrixXcd& m, std::optional<double> rel_tol) {
  if (rel_tol && (*rel_tol <= 0.0 || *rel_tol >= 1.0)) {
    throw InvalidInput("numerical_rank: rel_tol must lie in (0, 1)");
  }
  require_finite(m, "numerical_rank");
  Eigen::BDCSVD<Eigen::MatrixXcd> solver(m);
  return numerical_rank(solver.singularValues(), rel_tol, std::max(m.rows(), m.cols()));
}

double nuclear_norm(const Eigen::MatrixXcd& m) {
  require_finite(m, "nuclear_norm");
  Eigen::BDCSVD<Eigen::MatrixXcd> solver(m);
  return solver.singularValues().sum();
}

}  // namespace cpst
