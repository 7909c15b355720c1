#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "idemsum/error.hpp"
#include "idemsum/orbits.hpp"

using namespace idemsum;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

std::set<Rational> as_set(const std::vector<Rational>& v) { return {v.begin(), v.end()}; }

Rational random_rational(std::mt19937_64& rng, long bound, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(-bound * q, bound * q);
  return Rational(num(rng), q);
}

Rational floor_r(const Rational& x) {
  using boost::multiprecision::cpp_int;
  const cpp_int n = numerator(x), d = denominator(x);
  cpp_int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

// Word orbit = {x + 2m} u {1 - x + 2m}; reduce both families to [-1, 1).
Rational fundamental_oracle(const Rational& x) {
  for (const Rational& base : {x, Rational(1) - x}) {
    const Rational y = base - 2 * floor_r((base + 1) / 2);
    if (y >= R(-1, 2) && y <= R(1, 2)) return y;
  }
  throw std::logic_error("no fundamental point");
}

// Nested fraction 1 + 1/(n-2 - 1/(n-2 - ... - 1/c1)) with `depth` levels,
// evaluated from the innermost tail outwards.
Rational cf_nested(int n, const Rational& c1, int depth) {
  Rational tail = c1;
  for (int i = 1; i < depth; ++i) tail = Rational(n - 2) - 1 / tail;
  return 1 + 1 / tail;
}

}  // namespace

TEST_CASE("rational text") {
  CHECK(to_string(R(3, 4)) == "3/4");
  CHECK(to_string(R(-6, 3)) == "-2");
  CHECK(parse_rational("9/4") == R(9, 4));
  CHECK(parse_rational("-0.25") == R(-1, 4));
  CHECK(parse_rational("010") == R(10));
  CHECK(parse_rational("+2/6") == R(1, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("orbit enumeration") {
  const Orbit o = orbit_enumerate(0, 2);
  CHECK(as_set(o.values()) == std::set<Rational>{0, 1, -1, -2, 2});
  CHECK(o.points.front().word.empty());

  CHECK(as_set(orbit_enumerate(R(1, 2), 1).values()) == std::set<Rational>{R(1, 2), R(-3, 2)});
  CHECK(orbit_enumerate(R(7, 3), 0).values() == std::vector<Rational>{R(7, 3)});
  CHECK_THROWS_AS(orbit_enumerate(0, 65), Error);
  CHECK_THROWS_AS(orbit_enumerate(0, -1), Error);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Rational x = random_rational(rng, 5, 50);
    const Orbit orb = orbit_enumerate(x, 9);
    const auto vals = orb.values();
    CHECK(as_set(vals).size() == vals.size());
    for (const auto& p : orb.points) {
      // Replaying the word reproduces the point.
      Rational y = x;
      for (char c : p.word) y = c == '1' ? apply_f1(y) : apply_f2(y);
      CHECK(y == p.value);
      if (static_cast<int>(p.word.size()) < orb.depth) {
        CHECK(orb.contains(apply_f1(p.value)));
        CHECK(orb.contains(apply_f2(p.value)));
      }
      // Every point lies in {x + 2m} u {1 - x + 2m}.
      const Rational a = (p.value - x) / 2, b = (p.value - 1 + x) / 2;
      CHECK((denominator(a) == 1 || denominator(b) == 1));
    }
  }
}

TEST_CASE("orbits of +-1/2 stay disjoint") {
  for (int depth = 0; depth <= 20; ++depth) {
    const auto a = as_set(orbit_enumerate(R(1, 2), depth).values());
    for (const auto& x : orbit_enumerate(R(-1, 2), depth).values()) CHECK_FALSE(a.count(x));
  }
}

TEST_CASE("one-sided orbits of zero") {
  CHECK(one_sided_orbit_zero(Side::Plus, 4).values() == std::vector<Rational>{1, -2, 3, -4});
  CHECK(one_sided_orbit_zero(Side::Minus, 4).values() == std::vector<Rational>{-1, 2, -3, 4});
  CHECK(one_sided_orbit_zero(Side::Plus, 1).values() == std::vector<Rational>{1});
}

TEST_CASE("fundamental point") {
  CHECK(fundamental_point(R(9, 4), 6) == R(1, 4));
  CHECK(fundamental_point(R(9, 4), 8) == R(1, 4));
  CHECK(fundamental_point(R(1, 2), 0) == R(1, 2));
  CHECK(fundamental_point(R(-1, 2), 0) == R(-1, 2));
  CHECK_THROWS_AS(fundamental_point(R(41, 4), 3), Error);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const Rational x = random_rational(rng, 10, 40);
    CHECK(fundamental_point(x, 24) == fundamental_oracle(x));
  }
  // Returning from a random orbit point recovers the original seed.
  for (int t = 0; t < 200; ++t) {
    const Rational s = random_rational(rng, 1, 1000) / 2;
    const auto pts = orbit_enumerate(s, 10).values();
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    CHECK(fundamental_point(pts[pick(rng)], 12) == s);
  }
}

TEST_CASE("closed-form orbit diagnostic") {
  const Rational x = R(1, 3);
  const auto bad = closed_form_mismatches(x, 6, ClosedForm::AsPrinted);
  CHECK(std::find(bad.begin(), bad.end(), -x) != bad.end());
  CHECK(closed_form_mismatches(x, 6, ClosedForm::Corrected).empty());
}

TEST_CASE("small parameter sets") {
  CHECK(lambda_set(2, LambdaKind::Lambda2, 10).terms == std::vector<Rational>{0, 1, 2});
  CHECK(lambda_set(3, LambdaKind::Lambda3, 10).terms == std::vector<Rational>{0, 1, R(3, 2), 2, 3});
}

TEST_CASE("bounded four-idempotent parameters") {
  // Generation order: 2 - 2/k, 2 + 2/k per k, with the center after k = 1.
  const auto t = lambda_set(4, LambdaKind::Lambda4bd, 8).terms;
  CHECK(t == std::vector<Rational>{0, 4, 2, 1, 3, R(4, 3), R(8, 3), R(3, 2)});

  const auto m = lambda4bd_member(R(4, 3));
  CHECK(m.tag == Lambda4Membership::Tag::Member);
  CHECK(m.k == 3);
  CHECK(m.sign == -1);
  CHECK(lambda4bd_member(2).tag == Lambda4Membership::Tag::Center);
  CHECK(lambda4bd_member(R(7, 5)).tag == Lambda4Membership::Tag::Absent);
  CHECK(lambda4bd_member(R(-1, 2)).tag == Lambda4Membership::Tag::Absent);
  CHECK(lambda4bd_member(5).tag == Lambda4Membership::Tag::Absent);

  // Both descriptions agree on a rational grid.
  for (long d = 1; d <= 30; ++d)
    for (long p = -d; p <= 5 * d; ++p) {
      const Rational q(p, d);
      CHECK((lambda4bd_member(q).tag != Lambda4Membership::Tag::Absent) == lambda4bd_member_alt(q));
    }
}

TEST_CASE("continued-fraction sets") {
  CHECK(lambda_set(5, LambdaKind::CF2, 3).terms == std::vector<Rational>{1, R(4, 3), R(11, 8)});
  CHECK_THROWS_AS(lambda_set(4, LambdaKind::CF1, 3), Error);

  for (int n = 5; n <= 8; ++n)
    for (auto kind : {LambdaKind::CF1, LambdaKind::CF2}) {
      const auto t = lambda_set(n, kind, 60).terms;
      REQUIRE(t.size() == 60);
      CHECK(t[0] == (kind == LambdaKind::CF1 ? 0 : 1));
      const Rational c1 = kind == LambdaKind::CF1 ? Rational(n - 1) : Rational(n - 2);
      for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(t[i] == cf_nested(n, c1, static_cast<int>(i)));
        CHECK(t[i] < 2);
        if (i > 1) CHECK(t[i] > t[i - 1]);
      }
    }
}

TEST_CASE("Coxeter steps and orbit sets") {
  CHECK(coxeter_step(5, 2, Direction::Forward) == 3);
  CHECK(coxeter_step(5, 3, Direction::Backward) == 2);
  CHECK(coxeter_step(5, R(5, 2), Direction::Forward) == R(10, 3));
  CHECK_THROWS_AS(coxeter_step(5, 1, Direction::Forward), Error);
  CHECK_THROWS_AS(coxeter_step(5, 4, Direction::Backward), Error);
  CHECK_THROWS_AS(coxeter_step(4, 2, Direction::Forward), Error);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    Rational a = random_rational(rng, 10, 97);
    if (a == 1 || a == 4) a += R(1, 3);
    CHECK(coxeter_step(5, coxeter_step(5, a, Direction::Forward), Direction::Backward) == a);
  }

  for (int n = 5; n <= 8; ++n)
    for (auto kind : {LambdaKind::Orb2, LambdaKind::OrbHalf}) {
      const auto t = lambda_set(n, kind, 9).terms;
      const Rational a0 = kind == LambdaKind::Orb2 ? Rational(2) : Rational(n, 2);
      REQUIRE(!t.empty());
      CHECK(t[0] == a0);
      // Positions 1, 3, 5, ... follow forward steps; 2, 4, ... backward.
      Rational f = a0, b = a0;
      for (std::size_t i = 1; i + 1 < t.size(); i += 2) {
        f = coxeter_step(n, f, Direction::Forward);
        b = coxeter_step(n, b, Direction::Backward);
        if (t.size() == 9 && f != b) {
          CHECK(std::find(t.begin(), t.end(), f) != t.end());
          CHECK(std::find(t.begin(), t.end(), b) != t.end());
        }
      }
    }
  // n = 5: 2 -> 3 -> 7/2 and 2 -> 3/2 -> 7/5.
  CHECK(lambda_set(5, LambdaKind::Orb2, 5).terms == std::vector<Rational>{2, 3, R(3, 2), R(7, 2), R(7, 5)});
}
