#include "idemsum/families.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "idemsum/error.hpp"

namespace idemsum {

namespace {

constexpr cplx I_{0.0, 1.0};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt(cplx v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i";
}

double column_residual(const CMat& m, const std::vector<Index>& cols) {
  double worst = 0.0;
  for (Index c : cols) worst = std::max(worst, m.col(c).norm());
  return worst;
}

}  // namespace

std::vector<Index> IdempotentFamily::interior_or_all() const {
  if (interior) return *interior;
  std::vector<Index> all(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

IdempotentFamily make_family(std::string kind, Params params, cplx lambda, std::vector<CMat> q,
                             std::optional<std::vector<Index>> interior, FamilyFlags flags) {
  if (q.empty()) throw Error(Errc::BadParameter, "family needs at least one generator");
  IdempotentFamily fam;
  fam.kind = std::move(kind);
  fam.params = std::move(params);
  fam.lambda = lambda;
  fam.n = static_cast<int>(q.size());
  fam.dim = q.front().rows();
  for (const auto& m : q)
    if (m.rows() != fam.dim || m.cols() != fam.dim)
      throw Error(Errc::DimensionMismatch, "generators must be square of equal size");
  fam.q = std::move(q);
  fam.q_star.reserve(fam.q.size());
  for (const auto& m : fam.q) fam.q_star.push_back(m.adjoint());
  fam.interior = std::move(interior);
  fam.star_orthogonal = flags.star_orthogonal;
  fam.sum_relation = flags.sum_relation;

  if (flags.validate) {
    const auto cols = fam.interior_or_all();
    double scale = 1.0;
    for (const auto& m : fam.q) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    const double tol = 1e-8 * scale * scale;
    CMat sum = CMat::Zero(fam.dim, fam.dim);
    for (std::size_t i = 0; i < fam.q.size(); ++i) {
      const CMat& m = fam.q[i];
      if (column_residual(m * m - m, cols) > tol)
        throw std::logic_error(fam.kind + ": generator " + std::to_string(i + 1) + " is not idempotent");
      sum += m;
    }
    if (fam.sum_relation && column_residual(sum - lambda * identity(fam.dim), cols) > tol)
      throw std::logic_error(fam.kind + ": generators do not sum to lambda");
  }
  return fam;
}

IdempotentFamily conjugate(const IdempotentFamily& fam, const CMat& t) {
  if (fam.truncated()) throw Error(Errc::Truncated, "conjugate: family is truncated");
  if (t.rows() != fam.dim || t.cols() != fam.dim)
    throw Error(Errc::DimensionMismatch, "conjugate: size of T does not match the family");
  const CMat tinv = t.partialPivLu().inverse();
  std::vector<CMat> q;
  for (const auto& m : fam.q) q.push_back(t * m * tinv);
  return make_family(fam.kind, fam.params, fam.lambda, std::move(q), std::nullopt,
                     {fam.star_orthogonal, fam.sum_relation, false});
}

IdempotentFamily direct_sum(const IdempotentFamily& a, const IdempotentFamily& b) {
  if (a.n != b.n) throw Error(Errc::DimensionMismatch, "direct_sum: different numbers of generators");
  if (a.truncated() || b.truncated()) throw Error(Errc::Truncated, "direct_sum: truncated input");
  std::vector<CMat> q;
  for (int i = 0; i < a.n; ++i) {
    const std::array<CMat, 2> blocks{a.q[i], b.q[i]};
    q.push_back(block_diag(blocks));
  }
  Params params{{"left", a.kind}, {"right", b.kind}};
  return make_family("direct_sum", std::move(params), a.lambda, std::move(q), std::nullopt,
                     {a.star_orthogonal && b.star_orthogonal, a.sum_relation && b.sum_relation, false});
}

IdempotentFamily rep_q1_two_dim(double y) {
  if (!(y > 0.0)) throw Error(Errc::BadParameter, "rep_q1_two_dim: y must be positive");
  CMat q(2, 2);
  q << 1.0, y, 0.0, 0.0;
  return make_family("q1", {{"y", fmt(y)}}, 0.0, {q}, std::nullopt, {false, false, true});
}

IdempotentFamily rep_p3_32() {
  const double r3 = std::sqrt(3.0) / 4.0;
  CMat p1(2, 2), p2(2, 2), p3(2, 2);
  p1 << 1.0, 0.0, 0.0, 0.0;
  p2 << 0.25, r3, r3, 0.75;
  p3 << 0.25, -r3, -r3, 0.75;
  return make_family("p332", {}, 1.5, {p1, p2, p3});
}

IdempotentFamily rep_q2perp(double alpha, Which which) {
  if (!(alpha > 0.0)) throw Error(Errc::BadParameter, "rep_q2perp: alpha must be positive");
  CMat a(2, 2);
  a << 1.0, alpha, 0.0, 0.0;
  const CMat z = CMat::Zero(2, 2);
  std::vector<CMat> q = which == Which::First ? std::vector<CMat>{a, z} : std::vector<CMat>{z, a};
  return make_family("q2perp", {{"alpha", fmt(alpha)}, {"which", which == Which::First ? "first" : "second"}},
                     0.0, std::move(q), std::nullopt, {true, false, true});
}

IdempotentFamily rep_q21_one_dim(int eps1, int eps2) {
  auto ok = [](int e) { return e == 0 || e == 1; };
  if (!ok(eps1) || !ok(eps2)) throw Error(Errc::BadParameter, "rep_q21_one_dim: eps must be 0 or 1");
  if (eps1 * eps2 != 0) throw Error(Errc::BadParameter, "rep_q21_one_dim: eps1 * eps2 must vanish");
  CMat a(1, 1), b(1, 1);
  a << double(eps1);
  b << double(eps2);
  return make_family("q21", {{"eps1", std::to_string(eps1)}, {"eps2", std::to_string(eps2)}}, 0.0, {a, b},
                     std::nullopt, {true, false, true});
}

SpinMatrices spin_matrices(int k) {
  if (k < 1) throw Error(Errc::BadParameter, "spin_matrices: k must be >= 1");
  const double j = (k - 1) / 2.0;
  CMat jp = CMat::Zero(k, k);
  CMat j3 = CMat::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    const double m = j - a;
    j3(a, a) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index a-1.
    if (a > 0) jp(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const CMat jm = jp.adjoint();
  SpinMatrices s;
  s.j1 = (jp + jm) / 2.0;
  s.j2 = (jp - jm) / (2.0 * I_);
  s.j3 = j3;
  return s;
}

IdempotentFamily su2_family(int k, int sign) {
  if (k < 1) throw Error(Errc::BadParameter, "su2_family: k must be >= 1");
  if (sign != 1 && sign != -1) throw Error(Errc::BadParameter, "su2_family: sign must be +1 or -1");
  const Rational lam_q = Rational(2) + Rational(2 * sign, k);
  const double lam = to_double(lam_q);

  const SpinMatrices sp = spin_matrices(k);
  CMat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0.0, I_, I_, 0.0;
  s2 << 0.0, 1.0, -1.0, 0.0;
  s3 << -I_, 0.0, 0.0, I_;
  const CMat x1 = kron(-I_ * sp.j1, s1);
  const CMat x2 = kron(-I_ * sp.j2, s2);
  const CMat x3 = kron(-I_ * sp.j3, s3);
  const Index dim = 2 * k;
  const CMat id = identity(dim);

  const double casimir = 1.0 / ((lam - 2.0) * (lam - 2.0)) - 0.25;
  const CMat delta = x1 * x1 + x2 * x2 + x3 * x3 - casimir * id;
  if (delta.cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, casimir))
    throw Error(Errc::CasimirMismatch, "su2_family: x1^2 + x2^2 + x3^2 differs from the required scalar");

  const double f = (lam - 2.0) / 2.0;
  const double g = lam / 4.0;
  std::vector<CMat> q{f * (-x1 + x2 + x3) + g * id, f * (x1 - x2 + x3) + g * id, f * (x1 + x2 - x3) + g * id,
                      f * (-x1 - x2 - x3) + g * id};
  return make_family("su2", {{"k", std::to_string(k)}, {"sign", sign > 0 ? "plus" : "minus"},
                             {"lambda", to_string(lam_q)}},
                     lam, std::move(q));
}

namespace {

[[noreturn]] void not_in_lambda4(const std::string& shown, double value) {
  std::string near;
  if (value != 2.0) {
    const double kf = 2.0 / std::abs(value - 2.0);
    const int sign = value > 2.0 ? 1 : -1;
    std::set<long> ks;
    for (long k : {long(std::floor(kf)), long(std::ceil(kf))})
      if (k >= 1) ks.insert(k);
    if (ks.empty()) ks.insert(1);
    for (long k : ks) near += (near.empty() ? "" : ", ") + to_string(Rational(2) + Rational(2 * sign, k));
  }
  throw Error(Errc::NotInLambda4bd,
              shown + " is not of the form 2 +- 2/k" + (near.empty() ? "" : "; nearest admissible: " + near));
}

}  // namespace

IdempotentFamily su2_family_at(const Rational& lambda) {
  const auto m = lambda4bd_member(lambda);
  using Tag = Lambda4Membership::Tag;
  if (m.tag == Tag::Center) throw Error(Errc::BadParameter, "su2_family_at: no spin realization at lambda = 2");
  if (m.tag == Tag::Absent) not_in_lambda4(to_string(lambda), to_double(lambda));
  return su2_family(static_cast<int>(m.k), m.sign);
}

IdempotentFamily su2_family_at(cplx lambda) {
  if (std::abs(lambda.imag()) > 1e-12) not_in_lambda4(fmt(lambda), lambda.real());
  const double x = lambda.real();
  if (std::abs(x - 2.0) < 1e-12) throw Error(Errc::BadParameter, "su2_family_at: no spin realization at lambda = 2");
  const double kf = 2.0 / std::abs(x - 2.0);
  const double kr = std::round(kf);
  if (kr < 1.0 || std::abs(kf - kr) > 1e-9 * kr) not_in_lambda4(fmt(lambda), x);
  return su2_family(static_cast<int>(kr), x > 2.0 ? 1 : -1);
}

CMat phi_block(cplx t) {
  CMat m(2, 2);
  m << t, t - t * t, 1.0, 1.0 - t;
  return m;
}

CMat psi_block(cplx t) {
  CMat m(2, 2);
  m << t, -(t - t * t), -1.0, 1.0 - t;
  return m;
}

std::vector<double> phi_norm_sequence(cplx lambda, int jmax) {
  std::vector<double> out;
  for (int j = 0; j <= jmax; ++j) out.push_back(op_norm(phi_block(double(j) * (lambda / 2.0 - 1.0))));
  return out;
}

IdempotentFamily diag_phi_psi_family(cplx lambda, int blocks) {
  if (blocks < 2) throw Error(Errc::BadParameter, "diag_phi_psi_family: blocks must be >= 2");
  const Index dim = 2 * blocks - 1;
  auto x = [&](int j) { return double(j) * (lambda / 2.0 - 1.0); };
  CMat q1 = CMat::Zero(dim, dim), q2 = q1, q3 = q1, q4 = q1;
  // q1, q2: blocks on (2m, 2m+1) built from x_{2m+1}; index dim-1 is the
  // top-left corner of a block cut off by the truncation.
  for (int m = 0; 2 * m < dim; ++m) {
    const cplx t = x(2 * m + 1);
    const CMat f = phi_block(t), g = psi_block(t);
    const Index r = 2 * m;
    if (r + 1 < dim) {
      q1.block(r, r, 2, 2) = f;
      q2.block(r, r, 2, 2) = g;
    } else {
      q1(r, r) = f(0, 0);
      q2(r, r) = g(0, 0);
    }
  }
  // q3, q4: a leading 1, then blocks on (2m-1, 2m) built from x_{2m}.
  q3(0, 0) = 1.0;
  q4(0, 0) = 1.0;
  for (int m = 1; 2 * m < dim; ++m) {
    const cplx t = x(2 * m);
    q3.block(2 * m - 1, 2 * m - 1, 2, 2) = phi_block(t);
    q4.block(2 * m - 1, 2 * m - 1, 2, 2) = psi_block(t);
  }
  std::vector<Index> interior;
  for (Index i = 0; i + 1 < dim; ++i) interior.push_back(i);
  return make_family("diagphipsi", {{"lambda", fmt(lambda)}, {"blocks", std::to_string(blocks)}}, lambda,
                     {q1, q2, q3, q4}, std::move(interior));
}

CuntzPair cuntz_isometries(int N) {
  CuntzPair c;
  c.s1 = CMat::Zero(N, N);
  c.s2 = CMat::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    if (2 * k < N) c.s1(2 * k, k) = 1.0;
    if (2 * k + 1 < N) c.s2(2 * k + 1, k) = 1.0;
  }
  for (int k = 0; k < N / 2; ++k) c.safe.push_back(k);
  return c;
}

IdempotentFamily cuntz_five_family(cplx lambda, int N) {
  if (N < 8 || N % 2 != 0) throw Error(Errc::BadParameter, "cuntz_five_family: N must be even and >= 8");
  const cplx a = (5.0 - 2.0 * lambda) / 6.0;
  const cplx b = (4.0 * lambda - 7.0) / 3.0;
  const cplx c = (3.0 * lambda - 5.0) / 4.0;
  const cplx d = (7.0 - 3.0 * lambda) / 2.0;
  const auto cz = cuntz_isometries(N);
  const CMat id = identity(N);
  const CMat z = CMat::Zero(N, N);
  auto assemble = [&](const std::array<std::array<CMat, 3>, 3>& blk) {
    CMat m(3 * N, 3 * N);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.block(i * N, j * N, N, N) = blk[i][j];
    return m;
  };
  const CMat q1 = assemble({{{a * id, 3.0 * a * id, b * id}, {a * id, 3.0 * a * id, b * id},
                             {a * id, 3.0 * a * id, b * id}}});
  const CMat q2 = assemble({{{a * id, -3.0 * a * id, b * id}, {-a * id, 3.0 * a * id, -b * id},
                             {a * id, -3.0 * a * id, b * id}}});
  const CMat q3 = assemble({{{4.0 * a * id, z, -2.0 * b * id}, {z, z, z}, {-2.0 * a * id, z, b * id}}});
  const cplx dc2 = 2.0 * d * c;
  const CMat s1a = cz.s1.adjoint(), s2a = cz.s2.adjoint();
  const CMat q4 = assemble({{{2.0 * c * id, z, dc2 * s1a}, {z, 2.0 * c * id, dc2 * s2a}, {cz.s1, cz.s2, d * id}}});
  const CMat q5 =
      assemble({{{2.0 * c * id, z, -dc2 * s1a}, {z, 2.0 * c * id, -dc2 * s2a}, {-cz.s1, -cz.s2, d * id}}});
  std::vector<Index> interior;
  for (int copy = 0; copy < 3; ++copy)
    for (Index k : cz.safe) interior.push_back(copy * N + k);
  return make_family("cuntz5", {{"lambda", fmt(lambda)}, {"N", std::to_string(N)}}, lambda, {q1, q2, q3, q4, q5},
                     std::move(interior));
}

std::string_view to_string(A40Case c) {
  switch (c) {
    case A40Case::I: return "I";
    case A40Case::II: return "II";
    case A40Case::III: return "III";
    case A40Case::IV: return "IV";
    case A40Case::V: return "V";
  }
  return "?";
}

std::optional<A40Case> parse_a40_case(std::string_view name) {
  for (auto c : {A40Case::I, A40Case::II, A40Case::III, A40Case::IV, A40Case::V})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::vector<CMat> idempotents_from_pqrs(const CMat& p, const CMat& r, const CMat& s, cplx lambda) {
  const CMat q = lambda / 2.0 * identity(p.rows()) - p;
  return {p + r, p - r, q + s, q - s};
}

A40Rep orbit_rep_a40(A40Case c, const A40Params& params, int depth) {
  if (depth < 4) throw Error(Errc::BadParameter, "orbit_rep_a40: depth must be >= 4");
  const Rational half(1, 2);
  if (c == A40Case::I) {
    const Rational& x = params.lambda;
    if (x <= -half || x >= half || x == 0)
      throw Error(Errc::BadParameter, "orbit_rep_a40: case I needs lambda in (-1/2, 1/2) without 0");
  }
  if ((c == A40Case::II || c == A40Case::III) && params.a != half && params.a != -half)
    throw Error(Errc::BadParameter, "orbit_rep_a40: a must be 1/2 or -1/2");

  A40Rep rep;
  switch (c) {
    case A40Case::I: rep.basis = orbit_enumerate(params.lambda, depth); break;
    case A40Case::II: rep.basis = orbit_enumerate(half, depth); break;
    case A40Case::III: rep.basis = orbit_enumerate(-half, depth); break;
    case A40Case::IV: rep.basis = one_sided_orbit_zero(Side::Minus, depth); break;
    case A40Case::V: rep.basis = one_sided_orbit_zero(Side::Plus, depth); break;
  }
  const auto& pts = rep.basis.points;
  const Index dim = static_cast<Index>(pts.size());
  const Rational one(1);

  // Image of basis point i under r (resp. s): nullopt when the action
  // vanishes, -1 when the target lies outside the truncation.
  struct Step {
    bool zero = false;
    Index target = -1;
    Rational coeff;
  };
  auto step_r = [&](Index i) {
    const Rational& mu = pts[static_cast<std::size_t>(i)].value;
    Step st;
    if (c == A40Case::II && mu == half) return Step{false, i, params.a};
    if (c == A40Case::V && mu == one) return Step{true, -1, Rational(0)};
    st.coeff = one - mu;
    if (auto j = rep.basis.index_of(one - mu)) st.target = static_cast<Index>(*j);
    return st;
  };
  auto step_s = [&](Index i) {
    const Rational& mu = pts[static_cast<std::size_t>(i)].value;
    Step st;
    if (c == A40Case::III && mu == -half) return Step{false, i, params.a};
    if (c == A40Case::IV && mu == -one) return Step{true, -1, Rational(0)};
    st.coeff = -(one + mu);
    if (auto j = rep.basis.index_of(-one - mu)) st.target = static_cast<Index>(*j);
    return st;
  };

  CMat p = CMat::Zero(dim, dim), r = p, s = p;
  for (Index i = 0; i < dim; ++i) {
    p(i, i) = to_double(pts[static_cast<std::size_t>(i)].value);
    if (auto st = step_r(i); !st.zero && st.target >= 0) r(st.target, i) = to_double(st.coeff);
    if (auto st = step_s(i); !st.zero && st.target >= 0) s(st.target, i) = to_double(st.coeff);
  }

  std::vector<Index> interior;
  for (Index i = 0; i < dim; ++i) {
    bool ok = true;
    for (int first = 0; first < 2 && ok; ++first) {
      const Step a = first == 0 ? step_r(i) : step_s(i);
      if (a.zero) continue;
      if (a.target < 0) {
        ok = false;
        break;
      }
      for (int second = 0; second < 2 && ok; ++second) {
        const Step b = second == 0 ? step_r(a.target) : step_s(a.target);
        if (!b.zero && b.target < 0) ok = false;
      }
    }
    if (ok) interior.push_back(i);
  }

  rep.quad.p = p;
  rep.quad.q = -p;
  rep.quad.r = r;
  rep.quad.s = s;
  rep.quad.interior = interior;
  rep.quad.lambda = 0.0;
  rep.quad.star_relations = true;

  Params prm{{"case", std::string(to_string(c))}, {"depth", std::to_string(depth)}};
  if (c == A40Case::I) prm.emplace_back("lambda", to_string(params.lambda));
  if (c == A40Case::II || c == A40Case::III) prm.emplace_back("a", to_string(params.a));
  rep.family = make_family("orbitA40", std::move(prm), 0.0, idempotents_from_pqrs(p, r, s, 0.0), interior);
  return rep;
}

cplx functional_apply(std::span<const int> word, const ScalarFn& f, cplx z, cplx lambda) {
  if (word.empty()) return f(z);
  const int letter = word.front();
  const auto rest = word.subspan(1);
  auto g = [&](cplx w) { return functional_apply(rest, f, w, lambda); };
  const cplx h = lambda / 2.0;
  switch (letter) {
    case 1: return z * (g(z) + g(1.0 - z));
    case 2: return z * (g(z) - g(1.0 - z));
    case 3: return (h - z) * g(z) + (1.0 - h + z) * g(lambda - 1.0 - z);
    case 4: return (h - z) * g(z) - (1.0 - h + z) * g(lambda - 1.0 - z);
    default: throw Error(Errc::BadParameter, "functional_apply: letters must be 1..4");
  }
}

CMat PolyOpPair::rect(int i) const {
  const auto cols = interior();
  CMat out(Q[static_cast<std::size_t>(i)].rows(), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Index>(c)) = Q[static_cast<std::size_t>(i)].col(cols[c]);
  return out;
}

std::vector<Index> PolyOpPair::interior() const {
  std::vector<Index> out;
  for (int comp = 0; comp < 2; ++comp)
    for (int deg = 0; deg <= d; ++deg) out.push_back(comp * slots() + deg);
  return out;
}

IdempotentFamily PolyOpPair::family() const {
  return make_family("sl2diff",
                     {{"lambda", fmt(lambda)}, {"l", fmt(l)}, {"d", std::to_string(d)}},
                     lambda, {Q[0], Q[1], Q[2], Q[3]}, interior());
}

PolyOpPair sl2_diffop_family(cplx lambda, int branch, int d) {
  if (branch != 1 && branch != -1) throw Error(Errc::BadParameter, "sl2_diffop_family: branch must be +1 or -1");
  if (d < 2) throw Error(Errc::BadParameter, "sl2_diffop_family: d must be >= 2");
  if (std::abs(lambda - 2.0) < 1e-12) throw Error(Errc::BadParameter, "sl2_diffop_family: lambda = 2");
  PolyOpPair out;
  out.d = d;
  out.lambda = lambda;
  out.l = -0.5 + double(branch) / (lambda - 2.0);
  const cplx l = out.l;
  const Index D = out.slots();
  out.a1 = CMat::Zero(D, D);
  out.a2 = out.a1;
  out.a3 = out.a1;
  for (Index n = 0; n < D; ++n) {
    const double nn = double(n);
    if (n > 0) {
      out.a1(n - 1, n) = nn;
      out.a2(n - 1, n) = nn;
    }
    if (n + 1 < D) {
      out.a1(n + 1, n) = 2.0 * l - nn;
      out.a2(n + 1, n) = nn - 2.0 * l;
    }
    out.a3(n, n) = 2.0 * l - 2.0 * nn;
  }
  const CMat &A1 = out.a1, &A2 = out.a2, &A3 = out.a3;
  auto blocks = [&](const CMat& tl, const CMat& tr, const CMat& bl, const CMat& br) {
    CMat m(2 * D, 2 * D);
    m << tl, tr, bl, br;
    return m;
  };
  const cplx f = (lambda - 2.0) / 4.0;
  const CMat g = lambda / 4.0 * identity(2 * D);
  out.Q[0] = f * blocks(-A3, A1 + A2, A1 - A2, A3) + g;
  out.Q[1] = f * blocks(-A3, -A1 - A2, A2 - A1, A3) + g;
  out.Q[2] = f * blocks(A3, A2 - A1, -A1 - A2, -A3) + g;
  out.Q[3] = f * blocks(A3, A1 - A2, A1 + A2, -A3) + g;
  return out;
}

}  // namespace idemsum
