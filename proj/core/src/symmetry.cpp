#include "cpst/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cpst/error.hpp"

namespace cpst {

std::string_view to_string(SymmetryTag tag) {
  switch (tag) {
    case SymmetryTag::general: return "general";
    case SymmetryTag::symmetric: return "symmetric";
    case SymmetryTag::hermitian: return "hermitian";
    case SymmetryTag::ps: return "ps";
    case SymmetryTag::skew_ps: return "skew_ps";
    case SymmetryTag::cps: return "cps";
  }
  return "general";
}

SymmetryTag parse_symmetry_tag(std::string_view name) {
  for (auto tag : {SymmetryTag::general, SymmetryTag::symmetric, SymmetryTag::hermitian,
                   SymmetryTag::ps, SymmetryTag::skew_ps, SymmetryTag::cps}) {
    if (to_string(tag) == name) return tag;
  }
  throw InvalidInput("unknown symmetry class '" + std::string(name) + "'");
}

std::string_view describe(Identity id) {
  switch (id) {
    case Identity::swap_first_pair: return "T[i,j,k,l] = T[j,i,k,l]";
    case Identity::swap_second_pair: return "T[i,j,k,l] = T[i,j,l,k]";
    case Identity::swap_middle: return "T[i,j,k,l] = T[i,k,j,l]";
    case Identity::exchange_pairs: return "T[i,j,k,l] = T[k,l,i,j]";
    case Identity::exchange_pairs_conj: return "T[i,j,k,l] = conj(T[k,l,i,j])";
    case Identity::exchange_pairs_negate: return "T[i,j,k,l] = -T[k,l,i,j]";
  }
  return "";
}

double identity_deviation(const Tensor4& t, Identity id) {
  const int n = t.dim();
  double worst = 0.0;
  Quad q{};
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = 0; q[1] < n; ++q[1])
      for (q[2] = 0; q[2] < n; ++q[2])
        for (q[3] = 0; q[3] < n; ++q[3]) {
          const auto [i, j, k, l] = q;
          Complex rhs;
          switch (id) {
            case Identity::swap_first_pair: rhs = t(j, i, k, l); break;
            case Identity::swap_second_pair: rhs = t(i, j, l, k); break;
            case Identity::swap_middle: rhs = t(i, k, j, l); break;
            case Identity::exchange_pairs: rhs = t(k, l, i, j); break;
            case Identity::exchange_pairs_conj: rhs = std::conj(t(k, l, i, j)); break;
            case Identity::exchange_pairs_negate: rhs = -t(k, l, i, j); break;
          }
          worst = std::max(worst, std::abs(t[q] - rhs));
        }
  return worst;
}

std::vector<Identity> defining_identities(SymmetryTag tag) {
  using I = Identity;
  switch (tag) {
    case SymmetryTag::general: return {};
    // adjacent transpositions generate every permutation of four modes
    case SymmetryTag::symmetric: return {I::swap_first_pair, I::swap_middle, I::swap_second_pair};
    case SymmetryTag::hermitian: return {I::exchange_pairs_conj};
    case SymmetryTag::ps: return {I::swap_first_pair, I::swap_second_pair, I::exchange_pairs};
    case SymmetryTag::skew_ps:
      return {I::swap_first_pair, I::swap_second_pair, I::exchange_pairs_negate};
    case SymmetryTag::cps:
      return {I::swap_first_pair, I::swap_second_pair, I::exchange_pairs_conj};
  }
  return {};
}

std::vector<IdentityViolation> violations(const Tensor4& t, SymmetryTag tag, double rel_tol) {
  const double tol = rel_tol * frobenius_norm(t);
  std::vector<IdentityViolation> out;
  for (Identity id : defining_identities(tag)) {
    const double dev = identity_deviation(t, id);
    if (dev > tol) out.push_back({id, dev});
  }
  return out;
}

bool satisfies(const Tensor4& t, SymmetryTag tag, double rel_tol) {
  const double tol = rel_tol * frobenius_norm(t);
  const auto ids = defining_identities(tag);
  return std::all_of(ids.begin(), ids.end(),
                     [&](Identity id) { return identity_deviation(t, id) <= tol; });
}

void require_symmetry(const Tensor4& t, SymmetryTag tag, std::string_view op, double rel_tol) {
  const auto bad = violations(t, tag, rel_tol);
  if (bad.empty()) return;
  std::string msg = std::string(op) + ": input is not " + std::string(to_string(tag)) + "; violated ";
  for (std::size_t i = 0; i < bad.size(); ++i) {
    if (i) msg += ", ";
    msg += std::string(describe(bad[i].identity)) + " (max deviation " +
           std::to_string(bad[i].deviation) + ")";
  }
  throw InvalidInput(msg);
}

SymmetryClass classify_symmetry(const Tensor4& t, double rel_tol) {
  if (rel_tol < 0.0) throw InvalidInput("classify_symmetry: tolerance must be nonnegative");
  const double tol = rel_tol * frobenius_norm(t);
  auto ok = [&](Identity id) { return identity_deviation(t, id) <= tol; };

  const bool first = ok(Identity::swap_first_pair);
  const bool second = ok(Identity::swap_second_pair);
  const bool herm = ok(Identity::exchange_pairs_conj);
  const bool pair_sym = first && second;

  SymmetryTag tag = SymmetryTag::general;
  if (pair_sym && ok(Identity::swap_middle)) {
    tag = SymmetryTag::symmetric;
  } else if (pair_sym && ok(Identity::exchange_pairs)) {
    tag = SymmetryTag::ps;
  } else if (pair_sym && herm) {
    tag = SymmetryTag::cps;
  } else if (pair_sym && ok(Identity::exchange_pairs_negate)) {
    tag = SymmetryTag::skew_ps;
  } else if (herm) {
    tag = SymmetryTag::hermitian;
  }
  return {tag, tol};
}

namespace {

constexpr std::array<Permutation, 4> kPairPerms{{{1, 2, 3, 4}, {1, 2, 4, 3}, {2, 1, 3, 4}, {2, 1, 4, 3}}};
constexpr std::array<Permutation, 4> kExchangePerms{{{3, 4, 1, 2}, {4, 3, 1, 2}, {3, 4, 2, 1}, {4, 3, 2, 1}}};

Tensor4 eight_term_average(const Tensor4& y, bool conjugate_exchange) {
  Tensor4 acc(y.dim());
  for (const auto& p : kPairPerms) acc += permute_conjugate(y, p, false);
  for (const auto& p : kExchangePerms) acc += permute_conjugate(y, p, conjugate_exchange);
  acc *= 0.125;
  return acc;
}

}  // namespace

Tensor4 project_cps(const Tensor4& y) { return eight_term_average(y, true); }

Tensor4 project_ps(const Tensor4& y) { return eight_term_average(y, false); }

}  // namespace cpst
