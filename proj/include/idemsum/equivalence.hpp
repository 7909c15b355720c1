#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "idemsum/families.hpp"

namespace idemsum {

struct HomSpace {
  Index dim = 0;
  std::vector<CMat> basis;  // orthonormal in the Frobenius inner product
};

enum class HomMethod {
  Auto,
  // Vectorized system (a^T (x) I - I (x) b) vec C = 0 for every pair.
  Direct,
  // Diagonalize a random Hermitian element of the generated *-algebra on both
  // sides and keep only the entries of C that pair equal eigenvalues. Needs
  // the generator lists to be closed under adjoints.
  Reduced,
};

// All C with C a[i] = b[i] C. a and b must have equal length; a[i] is m x m
// and b[i] is n x n, so C is n x m.
HomSpace intertwiner_space(std::span<const CMat> a, std::span<const CMat> b, double rank_tol = kRankTol,
                           HomMethod method = HomMethod::Direct);

// Generators q_i, plus q_i* when with_star is set.
HomSpace hom_space(const IdempotentFamily& a, const IdempotentFamily& b, bool with_star,
                   HomMethod method = HomMethod::Auto);

bool is_irreducible(const IdempotentFamily& fam);

// Unitary U with U a_i U* = b_i for all i, if one exists.
std::optional<CMat> unitary_equivalent(const IdempotentFamily& a, const IdempotentFamily& b);

struct Unitarization {
  CMat G;  // positive definite, trace = dim, G q_i = q_i* G
  IdempotentFamily star_fam;
  double min_eig = 0.0;
  double max_eig = 0.0;
  Index solution_dim = 0;
};

// Finds a positive definite G with G q_i = q_i* G and returns the family
// G^{1/2} q_i G^{-1/2}, whose members are Hermitian.
Unitarization unitarize(const IdempotentFamily& fam, std::mt19937_64& rng);

}  // namespace idemsum
