#include "cpst/mask.hpp"

#include <algorithm>
#include <string>

#include "cpst/error.hpp"

namespace cpst {

std::array<Quad, 8> ps_orbit(const Quad& q) {
  const auto [i, j, k, l] = q;
  return {{{i, j, k, l}, {j, i, k, l}, {i, j, l, k}, {j, i, l, k},
           {k, l, i, j}, {l, k, i, j}, {k, l, j, i}, {l, k, j, i}}};
}

SampleMask::SampleMask(int n) : n_(n) {
  if (n <= 0) throw InvalidInput("SampleMask: dimension must be positive");
  const auto m = static_cast<std::size_t>(n);
  bits_.assign(m * m * m * m, 0);
}

SampleMask SampleMask::full(int n) {
  SampleMask mask(n);
  std::fill(mask.bits_.begin(), mask.bits_.end(), std::uint8_t{1});
  mask.count_ = mask.bits_.size();
  return mask;
}

namespace {

std::size_t checked_offset(int n, const Quad& q) {
  for (int v : q) {
    if (v < 0 || v >= n) throw InvalidInput("SampleMask: index out of range");
  }
  const auto m = static_cast<std::size_t>(n);
  return ((static_cast<std::size_t>(q[0]) * m + q[1]) * m + q[2]) * m + q[3];
}

}  // namespace

bool SampleMask::contains(const Quad& q) const { return bits_[checked_offset(n_, q)] != 0; }

void SampleMask::insert(const Quad& q) {
  auto& bit = bits_[checked_offset(n_, q)];
  if (bit == 0) {
    bit = 1;
    ++count_;
  }
}

std::vector<Quad> SampleMask::quadruples() const {
  std::vector<Quad> out;
  out.reserve(count_);
  const Tensor4 shape(n_);
  for (std::size_t off = 0; off < bits_.size(); ++off)
    if (bits_[off] != 0) out.push_back(shape.quad(off));
  return out;
}

bool SampleMask::is_ps_closed() const {
  for (const Quad& q : quadruples())
    for (const Quad& p : ps_orbit(q))
      if (!contains(p)) return false;
  return true;
}

SampleMask SampleMask::ps_closure() const {
  SampleMask out = *this;
  for (const Quad& q : quadruples())
    for (const Quad& p : ps_orbit(q)) out.insert(p);
  return out;
}

double SampleMask::sample_ratio() const noexcept {
  return bits_.empty() ? 0.0 : static_cast<double>(count_) / static_cast<double>(bits_.size());
}

Tensor4 apply_mask(const Tensor4& t, const SampleMask& mask) {
  if (t.dim() != mask.dim()) {
    throw InvalidInput("apply_mask: tensor dimension " + std::to_string(t.dim()) +
                       " does not match mask dimension " + std::to_string(mask.dim()));
  }
  Tensor4 out = t;
  auto e = out.entries();
  for (std::size_t off = 0; off < e.size(); ++off)
    if (!mask.contains_offset(off)) e[off] = Complex{};
  return out;
}

}  // namespace cpst
