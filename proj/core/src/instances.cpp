#include "cpst/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cpst/error.hpp"
#include "cpst/spectral.hpp"

namespace cpst {

namespace {

using Rng = std::mt19937_64;

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double gaussian(Rng& rng) {
  std::normal_distribution<double> dist;
  return dist(rng);
}

Eigen::VectorXcd random_vector(Rng& rng, int n, bool complex) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    const double re = gaussian(rng);
    v(i) = complex ? Complex(re, gaussian(rng)) : Complex(re, 0.0);
  }
  return v;
}

Eigen::MatrixXcd random_symmetric(Rng& rng, int n, bool complex) {
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = gaussian(rng);
      g(i, j) = complex ? Complex(re, gaussian(rng)) : Complex(re, 0.0);
    }
  return 0.5 * (g + g.transpose());
}

// Two passes of Gram-Schmidt under <A, B> = sum A conj(B).
std::vector<Eigen::MatrixXcd> orthonormal_symmetric(Rng& rng, int n, int r, bool complex) {
  std::vector<Eigen::MatrixXcd> basis;
  while (static_cast<int>(basis.size()) < r) {
    Eigen::MatrixXcd e = random_symmetric(rng, n, complex);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) e -= (b.adjoint() * e).trace() * b;
    const double norm = e.norm();
    if (norm < 1e-8) continue;
    basis.push_back(e / norm);
  }
  return basis;
}

// One draw from the central half of each of r equal strata of [0.1, 1],
// shuffled, with random signs. Adjacent magnitudes differ by at least 0.45 / r.
std::vector<double> distinct_lambdas(Rng& rng, int r) {
  if (r > 9)
    throw InvalidInput("generate_instance: random coefficients support at most 9 terms; got r=" +
                       std::to_string(r));
  const double width = 0.9 / r;
  std::vector<double> out(r);
  for (int k = 0; k < r; ++k) out[k] = 0.1 + (k + 0.5) * width + (uniform01(rng) - 0.5) * 0.5 * width;
  std::shuffle(out.begin(), out.end(), rng);
  for (double& v : out)
    if (uniform01(rng) < 0.5) v = -v;
  return out;
}

std::vector<double> coefficients(const InstanceSpec& spec, Rng& rng, int count) {
  if (spec.lambdas) {
    if (static_cast<int>(spec.lambdas->size()) != count)
      throw InvalidInput("generate_instance: expected " + std::to_string(count) + " coefficients, got " +
                         std::to_string(spec.lambdas->size()));
    for (double v : *spec.lambdas)
      if (!std::isfinite(v)) throw InvalidInput("generate_instance: coefficients must be finite");
    return *spec.lambdas;
  }
  return distinct_lambdas(rng, count);
}

Eigen::MatrixXcd outer(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return a * b.transpose(); }

}  // namespace

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::ps_pairs: return "ps_pairs";
    case InstanceKind::ps_orthonormal: return "ps_orthonormal";
    case InstanceKind::cps_orthonormal: return "cps_orthonormal";
    case InstanceKind::cps_vector_sum: return "cps_vector_sum";
    case InstanceKind::skew_ps: return "skew_ps";
    case InstanceKind::rank1_cps: return "rank1_cps";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(std::string_view name) {
  for (auto kind : {InstanceKind::ps_pairs, InstanceKind::ps_orthonormal, InstanceKind::cps_orthonormal,
                    InstanceKind::cps_vector_sum, InstanceKind::skew_ps, InstanceKind::rank1_cps})
    if (to_string(kind) == name) return kind;
  throw InvalidInput("unknown instance kind '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Instance generate_instance(const InstanceSpec& spec) {
  const int n = spec.n;
  const int r = spec.r;
  if (n < 1) throw InvalidInput("generate_instance: n must be positive");
  if (r < 1) throw InvalidInput("generate_instance: r must be positive");
  Rng rng(spec.seed);

  Instance out{Tensor4(n), {}};
  GroundTruth& truth = out.truth;
  truth.kind = spec.kind;
  truth.n = n;
  Tensor4& t = out.tensor;

  switch (spec.kind) {
    case InstanceKind::ps_orthonormal:
    case InstanceKind::cps_orthonormal: {
      const bool complex = spec.kind == InstanceKind::cps_orthonormal;
      if (r > n * (n + 1) / 2)
        throw InvalidInput("generate_instance: r=" + std::to_string(r) + " exceeds n(n+1)/2=" +
                           std::to_string(n * (n + 1) / 2));
      truth.lambdas = coefficients(spec, rng, r);
      truth.matrices = orthonormal_symmetric(rng, n, r, complex);
      for (int i = 0; i < r; ++i) {
        const auto& e = truth.matrices[i];
        t += truth.lambdas[i] * outer_product(e, complex ? Eigen::MatrixXcd(e.conjugate()) : e);
      }
      break;
    }
    case InstanceKind::ps_pairs: {
      truth.lambdas = coefficients(spec, rng, r);
      for (int i = 0; i < r; ++i) {
        const Eigen::VectorXcd x = random_vector(rng, n, false).normalized();
        const Eigen::VectorXcd y = random_vector(rng, n, false).normalized();
        truth.vectors.push_back(x);
        truth.vectors.push_back(y);
        const Eigen::MatrixXcd xx = outer(x, x), yy = outer(y, y);
        t += truth.lambdas[i] * (outer_product(xx, yy) + outer_product(yy, xx));
      }
      break;
    }
    case InstanceKind::cps_vector_sum: {
      truth.lambdas = spec.lambdas ? coefficients(spec, rng, r) : std::vector<double>(r, 1.0);
      for (int i = 0; i < r; ++i) {
        Eigen::VectorXcd a(n);
        for (int k = 0; k < n; ++k) {
          const double re = uniform01(rng);
          a(k) = Complex(re, uniform01(rng));
        }
        truth.vectors.push_back(a);
        const Eigen::VectorXcd ac = a.conjugate();
        t += truth.lambdas[i] * outer_product(a, a, ac, ac);
      }
      break;
    }
    case InstanceKind::skew_ps: {
      truth.lambdas = coefficients(spec, rng, r);
      for (int i = 0; i < r; ++i) {
        Eigen::MatrixXcd u = random_symmetric(rng, n, false);
        Eigen::MatrixXcd v = random_symmetric(rng, n, false);
        u /= u.norm();
        v /= v.norm();
        truth.matrices.push_back(u);
        truth.matrices.push_back(v);
        t += truth.lambdas[i] * (outer_product(u, v) - outer_product(v, u));
      }
      break;
    }
    case InstanceKind::rank1_cps: {
      if (r != 1) throw InvalidInput("generate_instance: rank1_cps requires r=1");
      truth.lambdas = coefficients(spec, rng, 1);
      const Eigen::VectorXcd x = phase_normalized(random_vector(rng, n, true).normalized());
      truth.vectors.push_back(x);
      const Eigen::VectorXcd xc = x.conjugate();
      t = truth.lambdas[0] * outer_product(x, x, xc, xc);
      break;
    }
  }
  return out;
}

}  // namespace cpst
