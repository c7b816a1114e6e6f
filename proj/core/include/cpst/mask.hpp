#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cpst/tensor4.hpp"

namespace cpst {

/// The eight index maps of the partial-symmetry group applied to q:
/// (i,j,k,l), (j,i,k,l), (i,j,l,k), (j,i,l,k), (k,l,i,j), (l,k,i,j), (k,l,j,i), (l,k,j,i).
std::array<Quad, 8> ps_orbit(const Quad& q);

/// Set of observed index quadruples for an n^4 tensor, stored as a dense bitmap.
class SampleMask {
 public:
  SampleMask() = default;
  explicit SampleMask(int n);

  static SampleMask full(int n);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(const Quad& q) const;
  bool contains_offset(std::size_t off) const noexcept { return bits_[off] != 0; }
  void insert(const Quad& q);

  /// Observed quadruples in canonical (lexicographic) order.
  std::vector<Quad> quadruples() const;

  /// True when the set is invariant under every map in ps_orbit.
  bool is_ps_closed() const;
  /// Smallest PS-closed superset.
  SampleMask ps_closure() const;

  /// Fraction of the n^4 entries that are observed.
  double sample_ratio() const noexcept;

  friend bool operator==(const SampleMask&, const SampleMask&) = default;

 private:
  int n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// result[q] = T[q] for q in the mask, zero elsewhere.
Tensor4 apply_mask(const Tensor4& t, const SampleMask& mask);

}  // namespace cpst
