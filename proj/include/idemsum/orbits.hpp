#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace idemsum {

using Rational = boost::multiprecision::cpp_rational;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "p/q" and plain decimals such as "-0.25" (converted exactly).
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

enum class OrbitKind { Full, OneSidedPlus, OneSidedMinus };

struct OrbitPoint {
  Rational value;
  // Shortest generating word, letters '1' (x -> 1-x) and '2' (x -> -1-x)
  // listed in application order.
  std::string word;
};

struct Orbit {
  Rational seed;
  std::vector<OrbitPoint> points;  // BFS order
  int depth = 0;
  OrbitKind kind = OrbitKind::Full;

  std::optional<std::size_t> index_of(const Rational& x) const;
  bool contains(const Rational& x) const { return index_of(x).has_value(); }
  std::vector<Rational> values() const;
};

Rational apply_f1(const Rational& x);
Rational apply_f2(const Rational& x);

// Exact BFS closure of {seed} under both maps, up to word length depth.
Orbit orbit_enumerate(const Rational& seed, int depth);

enum class Side { Plus, Minus };

// The one-sided orbits of 0. The seed 0 itself is not a point.
Orbit one_sided_orbit_zero(Side side, int count);

// The single orbit point in [-1/2, 1/2].
Rational fundamental_point(const Rational& seed, int depth);

enum class LambdaKind { Lambda2, Lambda3, Lambda4bd, CF1, CF2, Orb2, OrbHalf };

std::string_view to_string(LambdaKind kind);
std::optional<LambdaKind> parse_lambda_kind(std::string_view name);

struct LambdaSeq {
  int n = 0;
  LambdaKind kind = LambdaKind::Lambda2;
  std::vector<Rational> terms;
};

LambdaSeq lambda_set(int n, LambdaKind kind, int count);

struct Lambda4Membership {
  enum class Tag { Absent, Center, Member };
  Tag tag = Tag::Absent;
  long k = 0;
  int sign = 0;
};

// Membership in {2 - 2/k, 2 + 2/k, 2}. Throws std::logic_error if the
// result disagrees with the {0, 1, 1+t/(t+2), 2, 3-t/(t+2), 3, 4} form.
Lambda4Membership lambda4bd_member(const Rational& q);

// Membership tested through the {0, 1, 1+t/(t+2), 2, 3-t/(t+2), 3, 4} form only.
bool lambda4bd_member_alt(const Rational& q);

enum class Direction { Forward, Backward };

Rational coxeter_step(int n, const Rational& alpha, Direction dir);

// Closed-form orbit description {(-1)^j (x - j), (-1)^j (s x - j)} for
// j = 0..jmax, with s = -1 (as printed in the literature) or s = +1 with the
// second family written (-1)^j (x + j). The word closure agrees with the
// latter only.
enum class ClosedForm { AsPrinted, Corrected };
std::vector<Rational> closed_form_orbit_points(const Rational& x, int jmax, ClosedForm form);

// Closed-form points (j <= jmax) that are not reachable by words. Empty for
// ClosedForm::Corrected; contains -x for generic x with ClosedForm::AsPrinted.
std::vector<Rational> closed_form_mismatches(const Rational& x, int jmax, ClosedForm form);

}  // namespace idemsum
