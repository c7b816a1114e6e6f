#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cpst/tensor4.hpp"

namespace cpst {

enum class InstanceKind {
  ps_pairs,         // sum lambda_i (x_i o x_i o y_i o y_i + y_i o y_i o x_i o x_i), real
  ps_orthonormal,   // sum lambda_i E_i o E_i, real orthonormal symmetric E_i
  cps_orthonormal,  // sum lambda_i E_i o conj(E_i), complex orthonormal symmetric E_i
  cps_vector_sum,   // sum a_i o a_i o conj(a_i) o conj(a_i), Re and Im of a_i uniform on [0, 1)
  skew_ps,          // sum lambda_i (U_i o V_i - V_i o U_i), real symmetric U_i, V_i
  rank1_cps,        // lambda x o x o conj(x) o conj(x), unit x
};

std::string_view to_string(InstanceKind kind);
InstanceKind parse_instance_kind(std::string_view name);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::cps_orthonormal;
  int n = 3;
  int r = 1;
  std::uint64_t seed = 0;
  /// Coefficients to use verbatim; when empty, r distinct random values are drawn
  /// with |lambda| in [0.1, 1] pairwise separated by at least 0.05 * max|lambda|.
  std::optional<std::vector<double>> lambdas;
};

/// Construction data. `matrices` holds E_i (orthonormal kinds) or U_i, V_i
/// interleaved (skew_ps); `vectors` holds x_i, y_i interleaved (ps_pairs),
/// a_i (cps_vector_sum) or x (rank1_cps).
struct GroundTruth {
  InstanceKind kind = InstanceKind::cps_orthonormal;
  int n = 0;
  std::vector<double> lambdas;
  std::vector<Eigen::MatrixXcd> matrices;
  std::vector<Eigen::VectorXcd> vectors;
};

struct Instance {
  Tensor4 tensor;
  GroundTruth truth;
};

/// Deterministic given the spec. Throws InvalidInput for infeasible specs,
/// e.g. r > n(n+1)/2 for the orthonormal kinds.
Instance generate_instance(const InstanceSpec& spec);

/// Independent per-trial seed (splitmix64 of the pair).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cpst
