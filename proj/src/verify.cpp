#include "idemsum/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "idemsum/error.hpp"

namespace idemsum {

void VerifyReport::add(std::string relation, double residual, double tolerance) {
  const bool ok = std::isfinite(residual) && residual < tolerance;
  checks.push_back({std::move(relation), residual, tolerance, ok});
  pass = pass && ok;
}

double VerifyReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

nlohmann::ordered_json to_json(const VerifyReport& report) {
  nlohmann::ordered_json fam;
  fam["kind"] = report.family.kind;
  fam["n"] = report.family.n;
  fam["lambda"] = {report.family.lambda.real(), report.family.lambda.imag()};
  fam["dim"] = report.family.dim;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json j;
    j["relation"] = c.relation;
    j["residual"] = c.residual;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    checks.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["family"] = std::move(fam);
  out["checks"] = std::move(checks);
  out["pass"] = report.pass;
  return out;
}

double max_column_norm(const CMat& m, const std::vector<Index>& cols) {
  double worst = 0.0;
  for (Index c : cols) worst = std::max(worst, m.col(c).norm());
  return worst;
}

namespace {

FamilyDescriptor describe(const IdempotentFamily& fam) { return {fam.kind, fam.n, fam.lambda, fam.dim}; }

}  // namespace

VerifyReport relation_report(const IdempotentFamily& fam, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::BadParameter, "relation_report: tol must be positive");
  VerifyReport rep;
  rep.family = describe(fam);
  const auto cols = fam.interior_or_all();
  const CMat id = identity(fam.dim);
  for (int i = 0; i < fam.n; ++i) {
    const CMat& q = fam.q[static_cast<std::size_t>(i)];
    rep.add("q" + std::to_string(i + 1) + "^2 = q" + std::to_string(i + 1), max_column_norm(q * q - q, cols), tol);
  }
  if (fam.sum_relation) {
    CMat sum = CMat::Zero(fam.dim, fam.dim), sum_star = sum;
    for (int i = 0; i < fam.n; ++i) {
      sum += fam.q[static_cast<std::size_t>(i)];
      sum_star += fam.q_star[static_cast<std::size_t>(i)];
    }
    rep.add("sum q_i = lambda I", max_column_norm(sum - fam.lambda * id, cols), tol);
    rep.add("sum q_i* = conj(lambda) I", max_column_norm(sum_star - std::conj(fam.lambda) * id, cols), tol);
  }
  if (fam.star_orthogonal && fam.n >= 2) {
    rep.add("q1 q2* = 0", max_column_norm(fam.q[0] * fam.q_star[1], cols), tol);
    rep.add("q2* q1 = 0", max_column_norm(fam.q_star[1] * fam.q[0], cols), tol);
  }
  return rep;
}

VerifyReport pqrs_report(const PQRSQuad& quad, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::BadParameter, "pqrs_report: tol must be positive");
  VerifyReport rep;
  const Index n = quad.p.rows();
  rep.family = {"pqrs", 4, quad.lambda, n};
  const CMat id = identity(n);
  const CMat &p = quad.p, &q = quad.q, &r = quad.r, &s = quad.s;
  const auto& cols = quad.interior;
  rep.add("p + q = lambda/2", max_column_norm(p + q - quad.lambda / 2.0 * id, cols), tol);
  rep.add("pr = r(1-p)", max_column_norm(p * r - r * (id - p), cols), tol);
  rep.add("ps = s(lambda-1-p)", max_column_norm(p * s - s * ((quad.lambda - 1.0) * id - p), cols), tol);
  rep.add("r^2 = p(1-p)", max_column_norm(r * r - p * (id - p), cols), tol);
  rep.add("s^2 = q(1-q)", max_column_norm(s * s - q * (id - q), cols), tol);
  if (quad.star_relations) {
    rep.add("pr* = rp", max_column_norm(p * r.adjoint() - r * p, cols), tol);
    rep.add("ps* = sp", max_column_norm(p * s.adjoint() - s * p, cols), tol);
    rep.add("p = p*", max_column_norm(p - p.adjoint(), cols), tol);
  }
  return rep;
}

CMat s4_standard_polynomial(const std::array<CMat, 4>& x) {
  std::array<int, 4> perm{0, 1, 2, 3};
  CMat sum = CMat::Zero(x[0].rows(), x[0].cols());
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const CMat term = x[perm[0]] * x[perm[1]] * x[perm[2]] * x[perm[3]];
    if (inversions % 2 == 0)
      sum += term;
    else
      sum -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

std::vector<double> s4_identity_residuals(const IdempotentFamily& fam, int trials, int word_len,
                                          std::mt19937_64& rng) {
  if (fam.n != 4) throw Error(Errc::BadParameter, "s4_identity_residual: family must have four generators");
  if (trials < 1) throw Error(Errc::BadParameter, "s4_identity_residual: trials must be >= 1");
  if (word_len < 1 || word_len > 4) throw Error(Errc::BadParameter, "s4_identity_residual: word_len must be in 1..4");
  const Index dim = fam.dim;
  const CMat id = identity(dim);
  std::uniform_int_distribution<int> letter(0, 4);  // 4 stands for I
  std::uniform_int_distribution<int> length(1, word_len);
  std::normal_distribution<double> g(0.0, 1.0);
  constexpr int kWordsPerElement = 4;

  auto random_element = [&]() {
    CMat x = CMat::Zero(dim, dim);
    for (int w = 0; w < kWordsPerElement; ++w) {
      CMat word = id;
      const int len = length(rng);
      for (int i = 0; i < len; ++i) {
        const int a = letter(rng);
        if (a < 4) word = word * fam.q[static_cast<std::size_t>(a)];
      }
      const double re = g(rng);
      const double im = g(rng);
      x += cplx(re, im) * word;
    }
    return x;
  };

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    std::array<CMat, 4> x{random_element(), random_element(), random_element(), random_element()};
    double denom = 1.0;
    for (const auto& m : x) denom *= op_norm(m);
    const double num = op_norm(s4_standard_polynomial(x));
    out.push_back(denom > 0.0 ? num / denom : 0.0);
  }
  return out;
}

double s4_identity_residual(const IdempotentFamily& fam, int trials, int word_len, std::mt19937_64& rng) {
  const auto r = s4_identity_residuals(fam, trials, word_len, rng);
  return *std::max_element(r.begin(), r.end());
}

TraceCheck trace_lambda_check(const IdempotentFamily& fam) {
  if (fam.truncated()) throw Error(Errc::Truncated, "trace_lambda_check: family is truncated");
  TraceCheck out;
  bool integral = true;
  for (const auto& q : fam.q) {
    const cplx t = q.trace();
    out.trace_sum += t;
    const double nearest = std::round(t.real());
    if (nearest < 0.0 || std::abs(t - cplx(nearest, 0.0)) > 1e-9) integral = false;
  }
  // Without a sum relation only integrality of each trace is meaningful.
  out.expected = fam.sum_relation ? fam.lambda * double(fam.dim) : cplx(std::round(out.trace_sum.real()), 0.0);
  out.pass = integral && std::abs(out.trace_sum - out.expected) <= 1e-9;
  return out;
}

}  // namespace idemsum
