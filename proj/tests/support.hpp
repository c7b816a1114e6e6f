#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "cpst/symmetry.hpp"
#include "cpst/tensor4.hpp"

namespace cpst::testing {

inline Tensor4 random_tensor(int n, std::uint64_t seed, bool complex = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Tensor4 t(n);
  for (std::size_t off = 0; off < t.size(); ++off) {
    const double re = g(rng);
    t[t.quad(off)] = Complex(re, complex ? g(rng) : 0.0);
  }
  return t;
}

inline Tensor4 random_cps(int n, std::uint64_t seed) { return project_cps(random_tensor(n, seed)); }

inline Tensor4 random_real_ps(int n, std::uint64_t seed) { return project_ps(random_tensor(n, seed, false)); }

inline Eigen::VectorXcd random_vector(int n, std::uint64_t seed, bool complex = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    v(i) = Complex(re, complex ? g(rng) : 0.0);
  }
  return v;
}

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::uint64_t seed, bool complex = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = g(rng);
      m(i, j) = Complex(re, complex ? g(rng) : 0.0);
    }
  return m;
}

// lambda x o x o conj(x) o conj(x)
inline Tensor4 rank_one_cps(const Eigen::VectorXcd& x, double lambda = 1.0) {
  const Eigen::VectorXcd xc = x.conjugate();
  return lambda * outer_product(x, x, xc, xc);
}

// e_1 o e_1 o e_1 o e_1 + e_1 o e_1 o e_2 o e_2 + e_2 o e_2 o e_1 o e_1 + e_2 o e_2 o e_2 o e_2
inline Tensor4 two_by_two_pattern() {
  Tensor4 t(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t(a, a, b, b) = 1.0;
  return t;
}

// min over unit complex c of ||a - c b||_F
inline double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).norm();
}

// Orthonormal basis (columns) of the real-linear CPS subspace, in coordinates
// (Re T[0], Im T[0], Re T[1], ...), from the null space of the defining constraints.
inline Eigen::MatrixXd cps_basis(int n) {
  const Tensor4 shape(n);
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(shape.size());
  std::vector<Eigen::RowVectorXd> rows;
  auto add = [&](std::size_t a, std::size_t b, double im_sign) {
    Eigen::RowVectorXd re = Eigen::RowVectorXd::Zero(dim), im = Eigen::RowVectorXd::Zero(dim);
    re(2 * a) += 1.0;
    re(2 * b) -= 1.0;
    im(2 * a + 1) += 1.0;
    im(2 * b + 1) -= im_sign;
    rows.push_back(re);
    rows.push_back(im);
  };
  for (std::size_t off = 0; off < shape.size(); ++off) {
    const auto [i, j, k, l] = shape.quad(off);
    add(off, shape.offset(j, i, k, l), 1.0);
    add(off, shape.offset(i, j, l, k), 1.0);
    add(off, shape.offset(k, l, i, j), -1.0);  // T = conj(T[k,l,i,j])
  }
  Eigen::MatrixXd c(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) c.row(r) = rows[r];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-10) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

inline Eigen::VectorXd coords(const Tensor4& t) {
  Eigen::VectorXd v(2 * t.size());
  for (std::size_t off = 0; off < t.size(); ++off) {
    v(2 * off) = t.entries()[off].real();
    v(2 * off + 1) = t.entries()[off].imag();
  }
  return v;
}

}  // namespace cpst::testing
