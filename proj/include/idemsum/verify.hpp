#pragma once

#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "idemsum/families.hpp"

namespace idemsum {

struct Check {
  std::string relation;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct FamilyDescriptor {
  std::string kind;
  int n = 0;
  cplx lambda{0.0, 0.0};
  Index dim = 0;
};

struct VerifyReport {
  FamilyDescriptor family;
  std::vector<Check> checks;
  bool pass = true;

  void add(std::string relation, double residual, double tolerance);
  double max_residual() const;
};

nlohmann::ordered_json to_json(const VerifyReport& report);

// Largest column norm of m over the given columns.
double max_column_norm(const CMat& m, const std::vector<Index>& cols);

VerifyReport relation_report(const IdempotentFamily& fam, double tol);

// Relations of the p, q, r, s generators with p + q = lambda/2:
// pr = r(1-p), ps = s(lambda-1-p), r^2 = p(1-p), s^2 = q(1-q), plus the
// star relations when quad.star_relations is set.
VerifyReport pqrs_report(const PQRSQuad& quad, double tol);

// Alternating sum over S4 of x_{s(1)} x_{s(2)} x_{s(3)} x_{s(4)}.
CMat s4_standard_polynomial(const std::array<CMat, 4>& x);

// Each x_i is a random complex combination of a few random words of length
// at most word_len in q1..q4 and I. Returns the largest residual normalized
// by the product of the ||x_i||.
double s4_identity_residual(const IdempotentFamily& fam, int trials, int word_len, std::mt19937_64& rng);

// Per-trial residuals, for callers that count how often a threshold is met.
std::vector<double> s4_identity_residuals(const IdempotentFamily& fam, int trials, int word_len,
                                          std::mt19937_64& rng);

struct TraceCheck {
  cplx trace_sum{0.0, 0.0};
  cplx expected{0.0, 0.0};
  bool pass = false;
};

TraceCheck trace_lambda_check(const IdempotentFamily& fam);

}  // namespace idemsum
