#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace cpst {

using Complex = std::complex<double>;

/// Zero-based index quadruple (i, j, k, l).
using Quad = std::array<int, 4>;

/// Dense fourth-order complex tensor over C^{n x n x n x n}.
///
/// Entries are stored lexicographically in (i, j, k, l) with l fastest.
/// Indices are zero-based in the C++ API; the text file formats use
/// one-based indices.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n);
  Tensor4(int n, std::vector<Complex> entries);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::size_t offset(int i, int j, int k, int l) const noexcept {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  std::size_t offset(const Quad& q) const noexcept {
    return offset(q[0], q[1], q[2], q[3]);
  }
  Quad quad(std::size_t offset) const noexcept;

  Complex operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }
  Complex& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  Complex operator[](const Quad& q) const { return data_[offset(q)]; }
  Complex& operator[](const Quad& q) { return data_[offset(q)]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  /// True when every imaginary part is at most `tol` in magnitude.
  bool is_real(double tol = 0.0) const noexcept;
  bool all_finite() const noexcept;

  Tensor4 conj() const;
  Tensor4 real_part() const;

  Tensor4& operator+=(const Tensor4& other);
  Tensor4& operator-=(const Tensor4& other);
  Tensor4& operator*=(Complex s);
  Tensor4& operator*=(double s);

  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(Tensor4 a, double s) { return a *= s; }
  friend Tensor4 operator*(double s, Tensor4 a) { return a *= s; }
  friend Tensor4 operator*(Tensor4 a, Complex s) { return a *= s; }
  friend Tensor4 operator*(Complex s, Tensor4 a) { return a *= s; }
  friend Tensor4 operator-(Tensor4 a) { return a *= -1.0; }

  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  int n_ = 0;
  std::vector<Complex> data_;
};

/// A = X o Y with A[i,j,k,l] = X[i,j] * Y[k,l].
Tensor4 outer_product(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// A[i,j,k,l] = a_i b_j c_k d_l.
Tensor4 outer_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                      const Eigen::VectorXcd& c, const Eigen::VectorXcd& d);

/// <A, B> = sum A[q] * conj(B[q]).
Complex inner_product(const Tensor4& a, const Tensor4& b);

double frobenius_norm(const Tensor4& t);

/// max |A[q] - B[q]|.
double max_abs_diff(const Tensor4& a, const Tensor4& b);

/// Mode permutation in one-based paper notation, e.g. {2, 1, 3, 4}.
using Permutation = std::array<int, 4>;

/// result[i1,i2,i3,i4] = T[i_{perm(1)}, i_{perm(2)}, i_{perm(3)}, i_{perm(4)}],
/// optionally conjugated entrywise.
Tensor4 permute_conjugate(const Tensor4& t, const Permutation& perm, bool conjugate = false);

/// Ordered pair of distinct one-based modes used as the row index of an
/// unfolding. The column modes are the two remaining modes in ascending order.
struct ModePair {
  int first = 1;
  int second = 2;

  friend bool operator==(const ModePair&, const ModePair&) = default;
};

inline constexpr ModePair kSquareUnfolding{1, 2};
inline constexpr ModePair kUnfolding3214{3, 2};
inline constexpr ModePair kUnfolding1324{1, 3};
inline constexpr ModePair kUnfolding1423{1, 4};

/// Complementary column modes for a row mode pair. Throws on invalid pairs.
ModePair column_modes(const ModePair& rows);

struct PairUnfolding {
  ModePair row_modes;
  ModePair col_modes;
  Eigen::MatrixXcd matrix;
};

/// For row modes (a,b) and column modes (c,d):
/// matrix[i_b*n + i_a, i_d*n + i_c] = T[i1,i2,i3,i4].
PairUnfolding unfold(const Tensor4& t, const ModePair& rows);

/// Shorthand for unfold(t, rows).matrix.
Eigen::MatrixXcd unfold_matrix(const Tensor4& t, const ModePair& rows);

/// Inverse of unfold. `m` must be n^2 x n^2.
Tensor4 fold(const Eigen::MatrixXcd& m, const ModePair& rows);

/// Column-stacking vec: v[t*n + s] = X[s,t].
Eigen::VectorXcd vec(const Eigen::MatrixXcd& x);

/// Inverse of vec for a length n^2 vector.
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v);

}  // namespace cpst
