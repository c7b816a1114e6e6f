#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpst/tensor4.hpp"

namespace cpst {

enum class SymmetryTag { general, symmetric, hermitian, ps, skew_ps, cps };

std::string_view to_string(SymmetryTag tag);
/// Parses "general", "symmetric", ...; throws InvalidInput on unknown names.
SymmetryTag parse_symmetry_tag(std::string_view name);

struct SymmetryClass {
  SymmetryTag tag = SymmetryTag::general;
  double tolerance = 0.0;  // absolute tolerance the tag was decided at
};

/// Default classification tolerance, relative to ||T||_F.
inline constexpr double kDefaultSymmetryTol = 1e-10;

/// A single index identity a tensor may satisfy.
enum class Identity {
  swap_first_pair,        // T[i,j,k,l] = T[j,i,k,l]
  swap_second_pair,       // T[i,j,k,l] = T[i,j,l,k]
  swap_middle,            // T[i,j,k,l] = T[i,k,j,l]
  exchange_pairs,         // T[i,j,k,l] = T[k,l,i,j]
  exchange_pairs_conj,    // T[i,j,k,l] = conj(T[k,l,i,j])
  exchange_pairs_negate,  // T[i,j,k,l] = -T[k,l,i,j]
};

std::string_view describe(Identity id);

/// max |T[q] - rhs(q)| over all quadruples for the given identity.
double identity_deviation(const Tensor4& t, Identity id);

/// Identities that define a symmetry class (empty for `general`).
std::vector<Identity> defining_identities(SymmetryTag tag);

/// True when every defining identity of `tag` holds within `rel_tol * ||T||_F`.
bool satisfies(const Tensor4& t, SymmetryTag tag, double rel_tol = kDefaultSymmetryTol);

/// Defining identities of `tag` violated by `t`, with their deviations.
struct IdentityViolation {
  Identity identity;
  double deviation;
};
std::vector<IdentityViolation> violations(const Tensor4& t, SymmetryTag tag,
                                          double rel_tol = kDefaultSymmetryTol);

/// Throws InvalidInput naming `op` and every violated identity unless `t` satisfies `tag`.
void require_symmetry(const Tensor4& t, SymmetryTag tag, std::string_view op,
                      double rel_tol = kDefaultSymmetryTol);

/// Most specific tag among symmetric, ps, cps, skew_ps, hermitian, general.
///
/// A tensor that satisfies both the cps and ps identities is real
/// partial-symmetric and reports `ps`.
SymmetryClass classify_symmetry(const Tensor4& t, double rel_tol = kDefaultSymmetryTol);

/// Orthogonal projection (under Re<.,.>) onto conjugate partial-symmetric tensors.
Tensor4 project_cps(const Tensor4& y);

/// Same eight-term average without conjugation; projects onto (complex) PS tensors.
Tensor4 project_ps(const Tensor4& y);

}  // namespace cpst
