#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "idemsum/error.hpp"
#include "idemsum/families.hpp"
#include "idemsum/verify.hpp"

using namespace idemsum;
using Catch::Approx;

namespace {

const cplx I1(0.0, 1.0);

double restricted(const CMat& m, const std::vector<Index>& cols) { return max_column_norm(m, cols); }

std::vector<Index> first_n(Index n) {
  std::vector<Index> v;
  for (Index i = 0; i < n; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("one and two idempotents") {
  const auto f = rep_q1_two_dim(1.0);
  CMat expect(2, 2);
  expect << 1, 1, 0, 0;
  CHECK(f.q[0] == expect);
  CHECK_FALSE(f.sum_relation);
  CHECK_THROWS_AS(rep_q1_two_dim(0.0), Error);

  const auto p = rep_q2perp(1.0, Which::First);
  CHECK(p.q[0] == expect);
  CHECK(p.q[1] == CMat::Zero(2, 2));
  CHECK(p.star_orthogonal);
  const auto s = rep_q2perp(2.0, Which::Second);
  CHECK(s.q[0] == CMat::Zero(2, 2));
  CHECK(s.q[1](0, 1) == cplx(2.0));

  CHECK(rep_q21_one_dim(0, 0).q[0](0, 0) == cplx(0.0));
  const auto r = rep_q21_one_dim(1, 0);
  CHECK(r.q[0](0, 0) == cplx(1.0));
  CHECK(r.q[1](0, 0) == cplx(0.0));
  CHECK_THROWS_AS(rep_q21_one_dim(1, 1), Error);
}

TEST_CASE("three projections with sum 3/2") {
  const auto f = rep_p3_32();
  CHECK(f.n == 3);
  CHECK(f.lambda == cplx(1.5));
  CMat sum = f.q[0] + f.q[1] + f.q[2];
  CHECK((sum - 1.5 * identity(2)).norm() < 1e-15);
  for (const auto& q : f.q) CHECK(is_hermitian(q));
}

TEST_CASE("spin matrices") {
  for (int k = 1; k <= 6; ++k) {
    const auto s = spin_matrices(k);
    const double j = (k - 1) / 2.0;
    CHECK(op_norm(s.j1 * s.j2 - s.j2 * s.j1 - I1 * s.j3) < 1e-12);
    CHECK(op_norm(s.j2 * s.j3 - s.j3 * s.j2 - I1 * s.j1) < 1e-12);
    CHECK(op_norm(s.j1 * s.j1 + s.j2 * s.j2 + s.j3 * s.j3 - j * (j + 1) * identity(k)) < 1e-12);
  }
}

TEST_CASE("spin construction") {
  const auto one = su2_family(1, 1);
  CHECK(one.lambda == cplx(4.0));
  CHECK(one.dim == 2);
  for (const auto& q : one.q) CHECK((q - identity(2)).norm() < 1e-14);

  const auto two = su2_family(2, -1);
  CHECK(two.lambda.real() == Approx(1.0));
  CHECK(two.dim == 4);
  for (const auto& q : two.q) CHECK(q.trace().real() == Approx(1.0));

  for (int k = 1; k <= 8; ++k)
    for (int sign : {1, -1}) {
      const auto f = su2_family(k, sign);
      const double lambda = 2.0 + sign * 2.0 / k;
      CHECK(f.dim == 2 * k);
      CHECK(f.lambda.real() == Approx(lambda));
      CMat sum = CMat::Zero(f.dim, f.dim);
      for (const auto& q : f.q) {
        CHECK(op_norm(q * q - q) < 1e-12);
        CHECK(is_hermitian(q));
        CHECK(q.trace().real() == Approx(lambda * f.dim / 4.0).margin(1e-10));
        sum += q;
      }
      CHECK(op_norm(sum - lambda * identity(f.dim)) < 1e-12);
    }
  CHECK_THROWS_AS(su2_family(0, 1), Error);
  CHECK_THROWS_AS(su2_family(2, 0), Error);
}

TEST_CASE("spin construction by parameter") {
  const auto a = su2_family_at(Rational(4, 3));
  const auto b = su2_family(3, -1);
  REQUIRE(a.dim == b.dim);
  for (int i = 0; i < 4; ++i) CHECK((a.q[static_cast<std::size_t>(i)] - b.q[static_cast<std::size_t>(i)]).norm() < 1e-14);
  CHECK(su2_family_at(Rational(3, 2)).dim == 8);
  CHECK(su2_family_at(Rational(5, 3)).dim == 12);
  CHECK(su2_family_at(cplx(2.5, 0.0)).dim == 8);

  try {
    su2_family_at(Rational(7, 5));
    FAIL("expected NotInLambda4bd");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInLambda4bd);
  }
  try {
    su2_family_at(cplx(2.5, 0.1));
    FAIL("expected NotInLambda4bd");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInLambda4bd);
  }
  try {
    su2_family_at(Rational(2));
    FAIL("expected BadParameter");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadParameter);
  }
}

TEST_CASE("phi and psi blocks") {
  CMat expect(2, 2);
  expect << -1, -2, 1, 2;
  CHECK((phi_block(-1.0) - expect).norm() < 1e-15);
  CHECK((phi_block(-1.0) * phi_block(-1.0) - phi_block(-1.0)).norm() < 1e-14);
  CMat zero(2, 2);
  zero << 0, 0, 1, 1;
  CHECK(phi_block(0.0) == zero);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    const cplx z(g(rng), g(rng));
    CHECK(op_norm(psi_block(z) * psi_block(z) - psi_block(z)) < 1e-12 * (1 + std::norm(z)));
    CMat sum = CMat::Zero(2, 2);
    sum(0, 0) = 2.0 * z;
    sum(1, 1) = 2.0 - 2.0 * z;
    CHECK(op_norm(phi_block(z) + psi_block(z) - sum) < 1e-14 * (1 + std::abs(z)));
  }
}

TEST_CASE("diagonal phi/psi family") {
  const auto f = diag_phi_psi_family(0.0, 30);
  CHECK(f.dim == 59);
  CHECK(f.truncated());
  CHECK(f.interior->size() == 58);  // only the cut block of q1, q2 is excluded
  CHECK((f.q[0].block(0, 0, 2, 2) - phi_block(-1.0)).norm() < 1e-15);
  CHECK(f.q[2](0, 0) == cplx(1.0));
  CHECK((f.q[2].block(1, 1, 2, 2) - phi_block(-2.0)).norm() < 1e-15);

  const auto degenerate = diag_phi_psi_family(2.0, 5);
  CHECK((degenerate.q[0].block(0, 0, 2, 2) - phi_block(0.0)).norm() == 0.0);

  for (cplx lambda : {cplx(0.0), cplx(1.5), cplx(0.7, 0.3)}) {
    const auto fam = diag_phi_psi_family(lambda, 30);
    CHECK(relation_report(fam, 1e-10).pass);
  }

  const auto norms = phi_norm_sequence(0.0, 29);
  for (int j = 3; j <= 29; ++j) CHECK(norms[static_cast<std::size_t>(j)] > norms[static_cast<std::size_t>(j - 1)]);
  CHECK(norms[29] > 100.0);
  for (int j = 2; j <= 29; ++j) CHECK(norms[static_cast<std::size_t>(j)] >= double(j) * j - j);
}

TEST_CASE("Cuntz isometries") {
  const auto c = cuntz_isometries(16);
  const auto& safe = c.safe;
  CHECK(safe.size() == 8);
  const CMat id = identity(16);
  CHECK(restricted(c.s1.adjoint() * c.s1 - id, safe) == 0.0);
  CHECK(restricted(c.s2.adjoint() * c.s2 - id, safe) == 0.0);
  CHECK(restricted(c.s1.adjoint() * c.s2, safe) == 0.0);
  // s1 s1* + s2 s2* = I holds on the whole truncated space.
  CHECK(op_norm(c.s1 * c.s1.adjoint() + c.s2 * c.s2.adjoint() - id) == 0.0);
}

TEST_CASE("five idempotents from Cuntz isometries") {
  const int N = 8;
  const auto f = cuntz_five_family(2.0, N);
  CHECK(f.n == 5);
  CHECK(f.dim == 3 * N);
  CHECK(f.q[0](0, 0).real() == Approx(1.0 / 6.0));
  CHECK(f.q[0](0, 2 * N).real() == Approx(1.0 / 3.0));
  CHECK(f.q[3](0, 0).real() == Approx(2.0 * 0.25));
  CHECK(f.q[3](2 * N, 2 * N).real() == Approx(0.5));
  CHECK(std::abs(cuntz_five_family(1.75, N).q[0](0, 2 * N)) < 1e-15);

  for (cplx lambda : {cplx(0.0), cplx(2.0), cplx(1.0, 2.0), cplx(3.14159, 0.0)})
    CHECK(relation_report(cuntz_five_family(lambda, 64), 1e-10).pass);
  CHECK_THROWS_AS(cuntz_five_family(1.0, 7), Error);
  CHECK_THROWS_AS(cuntz_five_family(1.0, 6), Error);
}

TEST_CASE("orbit representations with sum zero") {
  const auto rep = orbit_rep_a40(A40Case::I, {Rational(1, 4), Rational(1, 2)}, 12);
  const auto i14 = rep.basis.index_of(Rational(1, 4));
  const auto i34 = rep.basis.index_of(Rational(3, 4));
  REQUIRE(i14);
  REQUIRE(i34);
  const Index a = static_cast<Index>(*i14), b = static_cast<Index>(*i34);
  CHECK(rep.quad.p(a, a).real() == Approx(0.25));
  CHECK(rep.quad.r(b, a).real() == Approx(0.75));
  CHECK(rep.quad.r.col(a).norm() == Approx(0.75));

  // p is diagonal with the orbit points on the diagonal.
  for (std::size_t i = 0; i < rep.basis.points.size(); ++i)
    CHECK(rep.quad.p(Index(i), Index(i)).real() == Approx(to_double(rep.basis.points[i].value)));

  const auto iv = orbit_rep_a40(A40Case::IV, {}, 12);
  const auto im1 = iv.basis.index_of(Rational(-1));
  REQUIRE(im1);
  CHECK(iv.quad.s.col(Index(*im1)).norm() == 0.0);

  const auto v = orbit_rep_a40(A40Case::V, {}, 12);
  const auto i1 = v.basis.index_of(Rational(1));
  REQUIRE(i1);
  CHECK(v.quad.r.col(Index(*i1)).norm() == 0.0);

  for (Rational a2 : {Rational(1, 2), Rational(-1, 2)}) {
    const auto ii = orbit_rep_a40(A40Case::II, {Rational(1, 4), a2}, 12);
    const Index h = static_cast<Index>(*ii.basis.index_of(Rational(1, 2)));
    CHECK(ii.quad.r(h, h).real() == Approx(to_double(a2)));
    const auto iii = orbit_rep_a40(A40Case::III, {Rational(1, 4), a2}, 12);
    const Index mh = static_cast<Index>(*iii.basis.index_of(Rational(-1, 2)));
    CHECK(iii.quad.s(mh, mh).real() == Approx(to_double(a2)));
  }

  for (auto c : {A40Case::I, A40Case::II, A40Case::III, A40Case::IV, A40Case::V}) {
    const auto r = orbit_rep_a40(c, {}, 12);
    CHECK(relation_report(r.family, 1e-10).pass);
    CHECK(pqrs_report(r.quad, 1e-10).pass);
  }
  CHECK_THROWS_AS(orbit_rep_a40(A40Case::I, {Rational(0), Rational(1, 2)}, 12), Error);
  CHECK_THROWS_AS(orbit_rep_a40(A40Case::I, {Rational(1, 2), Rational(1, 2)}, 12), Error);
  CHECK_THROWS_AS(orbit_rep_a40(A40Case::II, {Rational(1, 4), Rational(1, 3)}, 12), Error);
  CHECK_THROWS_AS(orbit_rep_a40(A40Case::IV, {}, 3), Error);
}

TEST_CASE("functional realization") {
  const ScalarFn one = [](cplx) { return cplx(1.0); };
  const std::array<int, 1> w1{1};
  for (cplx z : {cplx(0.3), cplx(-1.0, 2.0)}) CHECK(std::abs(functional_apply(w1, one, z, 1.0) - 2.0 * z) < 1e-15);

  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    std::array<cplx, 4> c{};
    for (auto& x : c) x = cplx(g(rng), g(rng));
    const ScalarFn f = [c](cplx z) { return c[0] + z * (c[1] + z * (c[2] + z * c[3])); };
    const cplx z(g(rng), g(rng)), lambda(g(rng), g(rng));
    cplx sum = 0.0;
    for (int i = 1; i <= 4; ++i) {
      const std::array<int, 1> wi{i};
      const std::array<int, 2> wii{i, i};
      const cplx once = functional_apply(wi, f, z, lambda);
      CHECK(std::abs(functional_apply(wii, f, z, lambda) - once) < 1e-9 * (1 + std::abs(once)));
      sum += once;
    }
    CHECK(std::abs(sum - lambda * f(z)) < 1e-9 * (1 + std::abs(lambda * f(z))));
  }
}

TEST_CASE("sl2 differential operators") {
  for (int branch : {1, -1})
    for (cplx lambda : {cplx(3.0), cplx(1.0), cplx(0.5, 0.25)}) {
      const int d = 6;
      const auto op = sl2_diffop_family(lambda, branch, d);
      const auto cols = first_n(d + 1);
      const CMat &a1 = op.a1, &a2 = op.a2, &a3 = op.a3;
      CHECK(restricted(a1 * a2 - a2 * a1 + 2.0 * a3, cols) < 1e-10);
      CHECK(restricted(a2 * a3 - a3 * a2 + 2.0 * a1, cols) < 1e-10);
      CHECK(restricted(a3 * a1 - a1 * a3 - 2.0 * a2, cols) < 1e-10);
      const CMat cas = (-(a1 * a1) + a2 * a2 - a3 * a3) / 4.0;
      const cplx l = op.l;
      CHECK(restricted(cas + l * (l + 1.0) * identity(op.slots()), cols) < 1e-10);
      // (l + 1/2)^2 = 1/(lambda - 2)^2
      CHECK(std::abs((l + 0.5) * (l + 0.5) - 1.0 / ((lambda - 2.0) * (lambda - 2.0))) < 1e-12);
      CHECK(relation_report(op.family(), 1e-10).pass);
    }
  CHECK(sl2_diffop_family(3.0, 1, 4).l.real() == Approx(0.5));
  CHECK_THROWS_AS(sl2_diffop_family(2.0, 1, 4), Error);
  CHECK_THROWS_AS(sl2_diffop_family(3.0, 0, 4), Error);
  CHECK_THROWS_AS(sl2_diffop_family(3.0, 1, 1), Error);
}

TEST_CASE("conjugation and direct sums") {
  std::mt19937_64 rng(23);
  const auto f = su2_family(3, 1);
  const CMat t = random_similarity(rng, f.dim, 50.0);
  const auto g = conjugate(f, t);
  CHECK(relation_report(g, 1e-9).pass);
  CHECK_FALSE(is_hermitian(g.q[0], 1e-6));

  const auto s = direct_sum(rep_p3_32(), rep_p3_32());
  CHECK(s.dim == 4);
  CHECK(relation_report(s, 1e-12).pass);
  CHECK_THROWS_AS(direct_sum(rep_p3_32(), su2_family(2, 1)), Error);
  CHECK_THROWS_AS(conjugate(diag_phi_psi_family(0.0, 4), identity(7)), Error);
}

TEST_CASE("make_family rejects broken input") {
  CMat bad(1, 1);
  bad << 2.0;
  CHECK_THROWS_AS(make_family("x", {}, 2.0, {bad}), std::logic_error);
  CHECK_NOTHROW(make_family("x", {}, 2.0, {bad}, std::nullopt, {false, true, false}));
}
