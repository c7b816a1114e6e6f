#include "cpst/tensor4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cpst/error.hpp"

namespace cpst {

namespace {

std::size_t pow4(int n) {
  const auto m = static_cast<std::size_t>(n);
  return m * m * m * m;
}

int integer_sqrt(Eigen::Index m) {
  const auto r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  return static_cast<Eigen::Index>(r) * r == m ? r : -1;
}

void require_same_dim(const Tensor4& a, const Tensor4& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidInput(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                       " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

Tensor4::Tensor4(int n) : n_(n) {
  if (n <= 0) throw InvalidInput("Tensor4: dimension must be positive");
  data_.assign(pow4(n), Complex{});
}

Tensor4::Tensor4(int n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
  if (n <= 0) throw InvalidInput("Tensor4: dimension must be positive");
  if (data_.size() != pow4(n)) {
    throw InvalidInput("Tensor4: expected " + std::to_string(pow4(n)) + " entries, got " +
                       std::to_string(data_.size()));
  }
  if (!all_finite()) throw InvalidInput("Tensor4: non-finite entry");
}

Quad Tensor4::quad(std::size_t off) const noexcept {
  const auto n = static_cast<std::size_t>(n_);
  Quad q{};
  for (int m = 3; m >= 0; --m) {
    q[m] = static_cast<int>(off % n);
    off /= n;
  }
  return q;
}

bool Tensor4::is_real(double tol) const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [tol](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

bool Tensor4::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Tensor4 Tensor4::conj() const {
  Tensor4 out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Tensor4 Tensor4::real_part() const {
  Tensor4 out = *this;
  for (auto& z : out.data_) z = Complex(z.real(), 0.0);
  return out;
}

Tensor4& Tensor4::operator+=(const Tensor4& other) {
  require_same_dim(*this, other, "Tensor4::operator+=");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += other.data_[q];
  return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& other) {
  require_same_dim(*this, other, "Tensor4::operator-=");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= other.data_[q];
  return *this;
}

Tensor4& Tensor4::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Tensor4& Tensor4::operator*=(double s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Tensor4 outer_product(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows() || x.rows() == 0) {
    throw InvalidInput("outer_product: expected two n x n matrices of the same n");
  }
  const int n = static_cast<int>(x.rows());
  Tensor4 t(n);
  auto out = t.entries().begin();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) *out++ = x(i, j) * y(k, l);
  return t;
}

Tensor4 outer_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                      const Eigen::VectorXcd& c, const Eigen::VectorXcd& d) {
  const auto n = a.size();
  if (n == 0 || b.size() != n || c.size() != n || d.size() != n) {
    throw InvalidInput("outer_product: vectors must have equal nonzero length");
  }
  Tensor4 t(static_cast<int>(n));
  auto out = t.entries().begin();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex ab = a(i) * b(j);
      for (Eigen::Index k = 0; k < n; ++k) {
        const Complex abc = ab * c(k);
        for (Eigen::Index l = 0; l < n; ++l) *out++ = abc * d(l);
      }
    }
  return t;
}

Complex inner_product(const Tensor4& a, const Tensor4& b) {
  require_same_dim(a, b, "inner_product");
  const auto x = a.entries();
  const auto y = b.entries();
  Complex acc{};
  for (std::size_t q = 0; q < x.size(); ++q) acc += x[q] * std::conj(y[q]);
  return acc;
}

double frobenius_norm(const Tensor4& t) {
  double acc = 0.0;
  for (const auto& z : t.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

double max_abs_diff(const Tensor4& a, const Tensor4& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  const auto x = a.entries();
  const auto y = b.entries();
  for (std::size_t q = 0; q < x.size(); ++q) m = std::max(m, std::abs(x[q] - y[q]));
  return m;
}

Tensor4 permute_conjugate(const Tensor4& t, const Permutation& perm, bool conjugate) {
  std::array<bool, 4> seen{};
  for (int p : perm) {
    if (p < 1 || p > 4 || seen[p - 1]) throw InvalidInput("permute_conjugate: invalid permutation");
    seen[p - 1] = true;
  }
  const int n = t.dim();
  Tensor4 out(n);
  Quad dst{};
  for (dst[0] = 0; dst[0] < n; ++dst[0])
    for (dst[1] = 0; dst[1] < n; ++dst[1])
      for (dst[2] = 0; dst[2] < n; ++dst[2])
        for (dst[3] = 0; dst[3] < n; ++dst[3]) {
          const Quad src{dst[perm[0] - 1], dst[perm[1] - 1], dst[perm[2] - 1], dst[perm[3] - 1]};
          const Complex z = t[src];
          out[dst] = conjugate ? std::conj(z) : z;
        }
  return out;
}

ModePair column_modes(const ModePair& rows) {
  if (rows.first < 1 || rows.first > 4 || rows.second < 1 || rows.second > 4 ||
      rows.first == rows.second) {
    throw InvalidInput("unfold: invalid mode pair (" + std::to_string(rows.first) + "," +
                       std::to_string(rows.second) + ")");
  }
  std::array<int, 2> rest{};
  int r = 0;
  for (int m = 1; m <= 4; ++m)
    if (m != rows.first && m != rows.second) rest[r++] = m;
  return {rest[0], rest[1]};
}

PairUnfolding unfold(const Tensor4& t, const ModePair& rows) {
  const ModePair cols = column_modes(rows);
  const int n = t.dim();
  const int a = rows.first - 1, b = rows.second - 1, c = cols.first - 1, d = cols.second - 1;
  Eigen::MatrixXcd m(n * n, n * n);
  Quad q{};
  std::size_t off = 0;
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = 0; q[1] < n; ++q[1])
      for (q[2] = 0; q[2] < n; ++q[2])
        for (q[3] = 0; q[3] < n; ++q[3]) m(q[b] * n + q[a], q[d] * n + q[c]) = t.entries()[off++];
  return {rows, cols, std::move(m)};
}

Eigen::MatrixXcd unfold_matrix(const Tensor4& t, const ModePair& rows) {
  return unfold(t, rows).matrix;
}

Tensor4 fold(const Eigen::MatrixXcd& m, const ModePair& rows) {
  const ModePair cols = column_modes(rows);
  const int n = integer_sqrt(m.rows());
  if (m.rows() != m.cols() || n <= 0) {
    throw InvalidInput("fold: matrix must be n^2 x n^2");
  }
  const int a = rows.first - 1, b = rows.second - 1, c = cols.first - 1, d = cols.second - 1;
  Tensor4 t(n);
  Quad q{};
  std::size_t off = 0;
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = 0; q[1] < n; ++q[1])
      for (q[2] = 0; q[2] < n; ++q[2])
        for (q[3] = 0; q[3] < n; ++q[3]) t.entries()[off++] = m(q[b] * n + q[a], q[d] * n + q[c]);
  return t;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& x) {
  return x.reshaped();
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v) {
  const int n = integer_sqrt(v.size());
  if (n <= 0) throw InvalidInput("unvec: length must be a perfect square");
  return v.reshaped(n, n);
}

}  // namespace cpst
