#pragma once

#include <optional>

#include <Eigen/Core>

namespace cpst {

/// Eigen-decomposition of a Hermitian matrix.
///
/// Ordering: descending |lambda|, ties broken by descending signed lambda,
/// then by ascending solver index. Each eigenvector is phase-normalized so
/// that its largest-magnitude entry (lowest index on ties) is real positive.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // column i pairs with values(i)
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

/// Thin SVD, singular values descending.
struct SingularDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd v;
};

inline constexpr double kDefaultHermitianTol = 1e-8;

/// Throws InvalidInput when ||M - M^*||_F > herm_tol * ||M||_F.
/// The solver runs on (M + M^*)/2; a real input takes the real symmetric path.
EigenDecomposition hermitian_eigen(const Eigen::MatrixXcd& m, double herm_tol = kDefaultHermitianTol);

/// Eigenpair of largest |lambda| under the canonical ordering. The zero
/// matrix yields (0, e_1).
EigenPair leading_eigenpair_abs(const Eigen::MatrixXcd& m, double herm_tol = kDefaultHermitianTol);

SingularDecomposition svd(const Eigen::MatrixXcd& m);

/// Singular value thresholding D_tau(M) = U (Sigma - tau I)_+ V^*.
Eigen::MatrixXcd svt(const Eigen::MatrixXcd& m, double tau);

/// D_tau for a real symmetric matrix, computed from its eigen-decomposition.
Eigen::MatrixXd svt_symmetric(const Eigen::MatrixXd& m, double tau);

/// Number of singular values strictly above rel_tol * sigma_1.
/// Default rel_tol is max(rows, cols) * machine epsilon.
int numerical_rank(const Eigen::MatrixXcd& m, std::optional<double> rel_tol = std::nullopt);
int numerical_rank(const Eigen::VectorXd& singular_values, std::optional<double> rel_tol,
                   Eigen::Index dimension);

double nuclear_norm(const Eigen::MatrixXcd& m);

/// Scales v by a unit complex number so its largest-magnitude entry is real positive.
Eigen::VectorXcd phase_normalized(const Eigen::VectorXcd& v);

}  // namespace cpst
