#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "idemsum/families.hpp"

namespace idemsum {

// Finite-dimensional stand-in for a pair of free generators: two Hermitian
// matrices (a, b) or two unitaries (u1, u2).
struct Substitution {
  enum class Kind { Hermitian, Unitary };
  Kind kind = Kind::Hermitian;
  Index m = 0;
  CMat x1, x2;
};

Substitution hermitian_substitution(CMat a, CMat b);
Substitution unitary_substitution(CMat u1, CMat u2);
Substitution random_hermitian_substitution(std::mt19937_64& rng, Index m);
Substitution random_unitary_substitution(std::mt19937_64& rng, Index m);
// U x_i U* for both generators.
Substitution conjugate(const Substitution& sub, const CMat& u);

enum class Builder { Wild1a, Wild1b, Wild2 };
std::string_view to_string(Builder b);
std::optional<Builder> parse_builder(std::string_view name);

struct J3Parts {
  CMat a1, a2, a3, j3;  // j3 = [a1; a2; a3], 12m x 5m
  int N = 0;
};

// The isometry built from the two unitaries; N is the smallest positive
// integer with ||A1*A1 + A2*A2|| < 1.
J3Parts build_j3(const Substitution& sub);

struct PsiImage {
  std::string builder;
  Rational lambda;
  Index block_dim = 0;  // substitution size m
  int N = 0;            // wild2 only
  IdempotentFamily fam;
  std::optional<PQRSQuad> pqrs;  // wild2 only
  std::optional<J3Parts> j3;     // wild2 only
  // wild2: eigenvalue of p on each 12m-block, in block order.
  std::vector<Rational> p_levels;
};

enum class Wild1Variant { A, B };

// Variant A: three idempotents summing to I built from q1, q2 with
// q1 q2 = q2 q1 = 0. Variant B: the 2x2 projection triple with sum 3/2,
// transported through the matrix-unit images.
PsiImage wild1_image(Wild1Variant variant, const Substitution& sub);

// Four idempotents with sum lambda for lambda = 2 +- 2/k. lambda = 1 and 2
// reuse variant A (with q4 = 0 resp. q4 = I) and need a Hermitian
// substitution; 0, 3 and 4 are rejected.
PsiImage wild2_image(const Rational& lambda, const Substitution& sub);

PsiImage build_image(Builder builder, const Rational& lambda, const Substitution& sub);

struct Fullness {
  Index dim_source = 0;
  Index dim_target = 0;
  bool equal = false;
};

Fullness fullness_check(Builder builder, const Rational& lambda, const Substitution& pi1, const Substitution& pi2);

}  // namespace idemsum
