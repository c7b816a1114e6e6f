#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cpst/solver_report.hpp"
#include "cpst/tensor4.hpp"

namespace cpst {

/// One term lambda * E o conj(E) of a matrix outer-product decomposition.
/// E is complex symmetric (E = E^T) with unit Frobenius norm.
struct MatrixFactor {
  double lambda = 0.0;
  Eigen::MatrixXcd e;
};

/// A = sum lambda_i E_i o conj(E_i), or sum lambda_i E_i o E_i when
/// `conjugated_second` is false (real partial-symmetric input).
/// Factors are ordered by non-increasing |lambda| and mutually orthonormal.
struct MatrixDecomposition {
  int n = 0;
  std::vector<MatrixFactor> factors;
  bool conjugated_second = true;
};

struct SmroaOptions {
  /// Maximum number of rank-one matrix terms; defaults to n(n+1)/2.
  std::optional<int> max_terms;
  /// Stop once ||A_j||_F <= tol * ||A||_F.
  double tol = 1e-12;
};

struct SmroaResult {
  MatrixDecomposition decomposition;
  /// residual holds ||A_j||_F after each step; objective holds ||A_j||_F^2.
  SolverReport report;
};

/// Successive matrix outer-product rank-one approximation.
///
/// Each step takes the eigenpair of largest |lambda| of the square unfolding
/// of the current residual, folds the eigenvector into X_j, sets
/// lambda_j = <A_{j-1}, X_j o conj(X_j)> and deflates. Requires a CPS input
/// (real PS and real symmetric tensors qualify); complex tensors that are PS
/// without conjugate symmetry are rejected.
SmroaResult smroa(const Tensor4& a, const SmroaOptions& options = {});

/// One-shot decomposition from the eigen-decomposition of the square unfolding.
/// Eigenpairs with |lambda| <= rel_tol * max|lambda| are dropped
/// (default rel_tol: n^2 * machine epsilon).
MatrixDecomposition full_matrix_decomposition(const Tensor4& a,
                                              std::optional<double> rel_tol = std::nullopt);

/// Sum of lambda_i E_i o conj(E_i) (or E_i o E_i).
Tensor4 reconstruct(const MatrixDecomposition& d);

/// Numerical rank of the square unfolding.
int rank_m(const Tensor4& a, std::optional<double> rel_tol = std::nullopt);

struct RankBounds {
  int rank_m = 0;
  int max_factor_rank = 0;
  int cp_lower = 0;
  int cp_upper = 0;
};

/// rank_M <= rank_CP <= r^2 rank_M with r the largest matrix rank among the factors.
RankBounds cp_rank_bounds(const Tensor4& a, double rel_tol = 1e-9);

/// coeff * (p o p o q o q + q o q o p o p); p = q on diagonal terms.
struct VectorPairFactor {
  double coeff = 0.0;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
};

/// Expands each real symmetric factor E = sum beta_j u_j u_j^T into vector pairs.
/// Off-diagonal pairs (j < k) carry lambda beta_j beta_k; diagonal terms
/// carry lambda beta_j^2 / 2 with p = q = u_j.
std::vector<VectorPairFactor> expand_vector_form(const MatrixDecomposition& d);

Tensor4 reconstruct(const std::vector<VectorPairFactor>& pairs, int n);

/// coeff * (U o V - V o U) with U, V real symmetric, orthonormal.
struct SkewFactor {
  double coeff = 0.0;
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
};

/// Decomposition of a real skew partial-symmetric tensor via its
/// skew-symmetric square unfolding. Pairs with coeff <= rel_tol * max coeff
/// are dropped.
std::vector<SkewFactor> decompose_skew_ps(const Tensor4& a, double rel_tol = 1e-10);

Tensor4 reconstruct(const std::vector<SkewFactor>& factors, int n);

}  // namespace cpst
