#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "idemsum/numerics.hpp"
#include "idemsum/orbits.hpp"

namespace idemsum {

using Index = Eigen::Index;
using Params = std::vector<std::pair<std::string, std::string>>;

struct IdempotentFamily {
  std::string kind;
  Params params;  // constructor arguments, in a fixed order
  int n = 0;
  cplx lambda{0.0, 0.0};
  Index dim = 0;
  std::vector<CMat> q;
  std::vector<CMat> q_star;
  // Basis indices on which the relations hold exactly; nullopt means all.
  std::optional<std::vector<Index>> interior;
  // Also require q1 q2* = 0 and q2* q1 = 0.
  bool star_orthogonal = false;
  // False for algebras without a sum condition (one idempotent, or two
  // star-orthogonal ones); lambda is then unused.
  bool sum_relation = true;

  bool truncated() const { return interior.has_value(); }
  std::vector<Index> interior_or_all() const;
};

struct FamilyFlags {
  bool star_orthogonal = false;
  bool sum_relation = true;
  bool validate = true;
};

// Assembles a family and fills n, dim and q_star. With flags.validate set,
// the idempotent and sum relations are checked on the interior (tolerance
// 1e-8 relative to the largest generator norm) and std::logic_error is
// thrown on failure, since that signals a construction bug.
IdempotentFamily make_family(std::string kind, Params params, cplx lambda, std::vector<CMat> q,
                             std::optional<std::vector<Index>> interior = std::nullopt,
                             FamilyFlags flags = {});

// Conjugation T q_i T^{-1} of every generator.
IdempotentFamily conjugate(const IdempotentFamily& fam, const CMat& t);
IdempotentFamily direct_sum(const IdempotentFamily& a, const IdempotentFamily& b);

// --- two and three idempotents ---

IdempotentFamily rep_q1_two_dim(double y);
IdempotentFamily rep_p3_32();

enum class Which { First, Second };
IdempotentFamily rep_q2perp(double alpha, Which which);
IdempotentFamily rep_q21_one_dim(int eps1, int eps2);

// --- four idempotents from spin matrices ---

struct SpinMatrices {
  CMat j1, j2, j3;  // Hermitian, [J1, J2] = i J3
};
SpinMatrices spin_matrices(int k);  // dimension k, spin (k-1)/2

IdempotentFamily su2_family(int k, int sign);
IdempotentFamily su2_family_at(const Rational& lambda);
IdempotentFamily su2_family_at(cplx lambda);

// --- truncated families ---

CMat phi_block(cplx t);
CMat psi_block(cplx t);
IdempotentFamily diag_phi_psi_family(cplx lambda, int blocks);
// ||phi(x_j)|| for j = 0..jmax, x_j = j (lambda/2 - 1).
std::vector<double> phi_norm_sequence(cplx lambda, int jmax);

struct CuntzPair {
  CMat s1, s2;
  std::vector<Index> safe;  // k < N/2
};
CuntzPair cuntz_isometries(int N);
IdempotentFamily cuntz_five_family(cplx lambda, int N);

struct PQRSQuad {
  CMat p, q, r, s;
  std::vector<Index> interior;
  cplx lambda{0.0, 0.0};
  // Also check pr* = rp, ps* = sp and p = p* (the integrable relations).
  bool star_relations = false;
};

enum class A40Case { I, II, III, IV, V };
std::string_view to_string(A40Case c);
std::optional<A40Case> parse_a40_case(std::string_view name);

struct A40Params {
  Rational lambda{1, 4};  // case I
  Rational a{1, 2};       // cases II and III
};

struct A40Rep {
  Orbit basis;
  PQRSQuad quad;
  IdempotentFamily family;  // q1 = p+r, q2 = p-r, q3 = -p+s, q4 = -p-s
};

A40Rep orbit_rep_a40(A40Case c, const A40Params& params, int depth);

// Rebuilds q1..q4 from p, r, s with p + q = lambda/2:
// q1 = p + r, q2 = p - r, q3 = q + s, q4 = q - s.
std::vector<CMat> idempotents_from_pqrs(const CMat& p, const CMat& r, const CMat& s, cplx lambda);

// --- functional realization ---

using ScalarFn = std::function<cplx(cplx)>;

// Applies the operator product word[0] word[1] ... (letters 1..4) to f and
// evaluates at z. Cost grows as 2^word.size().
cplx functional_apply(std::span<const int> word, const ScalarFn& f, cplx z, cplx lambda);

// --- sl(2) differential operators on polynomials ---

struct PolyOpPair {
  int d = 0;
  cplx lambda{0.0, 0.0};
  cplx l{0.0, 0.0};
  // Square matrices on Poly_{<= d+2}; columns of degree <= d are exact.
  CMat a1, a2, a3;
  std::array<CMat, 4> Q;  // on C^2 (x) Poly_{<= d+2}

  Index slots() const { return d + 3; }
  // Q_i restricted to inputs of degree <= d: 2(d+3) x 2(d+1).
  CMat rect(int i) const;
  std::vector<Index> interior() const;
  IdempotentFamily family() const;
};

PolyOpPair sl2_diffop_family(cplx lambda, int branch, int d);

}  // namespace idemsum
