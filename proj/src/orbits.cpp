#include "idemsum/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "idemsum/error.hpp"

namespace idemsum {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& q) {
  const auto num = mp::numerator(q);
  const auto den = mp::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw Error(Errc::Parse, "empty rational");

  auto bad = [&]() { return Error(Errc::Parse, "bad rational '" + std::string(text) + "'"); };
  // Built digit by digit: the string constructor of cpp_int reads a leading 0 as octal.
  auto parse_int = [&](const std::string& t) -> mp::cpp_int {
    std::size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    if (i == t.size()) throw bad();
    mp::cpp_int v = 0;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw bad();
      v = v * 10 + (t[i] - '0');
    }
    return neg ? mp::cpp_int(-v) : v;
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const auto num = parse_int(s.substr(0, slash));
    const auto den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Error(Errc::Parse, "zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    std::string digits = s.substr(0, dot) + frac;
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    mp::cpp_int den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_int(digits), den);
  }
  return Rational(parse_int(s));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::optional<std::size_t> Orbit::index_of(const Rational& x) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].value == x) return i;
  return std::nullopt;
}

std::vector<Rational> Orbit::values() const {
  std::vector<Rational> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

Rational apply_f1(const Rational& x) { return Rational(1) - x; }
Rational apply_f2(const Rational& x) { return Rational(-1) - x; }

Orbit orbit_enumerate(const Rational& seed, int depth) {
  if (depth < 0 || depth > 64) throw Error(Errc::BadParameter, "orbit depth must be in [0, 64]");
  Orbit orb;
  orb.seed = seed;
  orb.depth = depth;
  orb.kind = OrbitKind::Full;
  std::set<Rational> seen{seed};
  orb.points.push_back({seed, ""});
  std::size_t frontier_begin = 0;
  for (int level = 0; level < depth; ++level) {
    const std::size_t frontier_end = orb.points.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const Rational x = orb.points[i].value;
      const std::string w = orb.points[i].word;
      for (char letter : {'1', '2'}) {
        Rational y = letter == '1' ? apply_f1(x) : apply_f2(x);
        if (seen.insert(y).second) orb.points.push_back({std::move(y), w + letter});
      }
    }
    frontier_begin = frontier_end;
  }
  return orb;
}

Orbit one_sided_orbit_zero(Side side, int count) {
  if (count < 1) throw Error(Errc::BadParameter, "one-sided orbit count must be >= 1");
  Orbit orb;
  orb.seed = 0;
  orb.depth = count;
  orb.kind = side == Side::Plus ? OrbitKind::OneSidedPlus : OrbitKind::OneSidedMinus;
  Rational x = 0;
  std::string word;
  char next = side == Side::Plus ? '1' : '2';
  for (int k = 1; k <= count; ++k) {
    x = next == '1' ? apply_f1(x) : apply_f2(x);
    word += next;
    orb.points.push_back({x, word});
    next = next == '1' ? '2' : '1';
  }
  return orb;
}

Rational fundamental_point(const Rational& seed, int depth) {
  const Orbit orb = orbit_enumerate(seed, depth);
  const Rational half(1, 2);
  std::vector<Rational> hits;
  for (const auto& p : orb.points)
    if (p.value >= -half && p.value <= half) hits.push_back(p.value);
  if (hits.empty())
    throw Error(Errc::NotFound, "orbit of " + to_string(seed) + " does not reach [-1/2, 1/2] by depth " +
                                    std::to_string(depth));
  if (hits.size() > 1) {
    std::string list;
    for (const auto& h : hits) list += (list.empty() ? "" : ", ") + to_string(h);
    throw Error(Errc::NotUnique, "orbit of " + to_string(seed) + " meets [-1/2, 1/2] in {" + list + "}");
  }
  return hits.front();
}

std::string_view to_string(LambdaKind kind) {
  switch (kind) {
    case LambdaKind::Lambda2: return "l2";
    case LambdaKind::Lambda3: return "l3";
    case LambdaKind::Lambda4bd: return "l4bd";
    case LambdaKind::CF1: return "cf1";
    case LambdaKind::CF2: return "cf2";
    case LambdaKind::Orb2: return "orb2";
    case LambdaKind::OrbHalf: return "orbhalf";
  }
  return "?";
}

std::optional<LambdaKind> parse_lambda_kind(std::string_view name) {
  for (auto k : {LambdaKind::Lambda2, LambdaKind::Lambda3, LambdaKind::Lambda4bd, LambdaKind::CF1,
                 LambdaKind::CF2, LambdaKind::Orb2, LambdaKind::OrbHalf})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

void push_unique(std::vector<Rational>& terms, std::set<Rational>& seen, const Rational& x) {
  if (seen.insert(x).second) terms.push_back(x);
}

Rational checked_inverse(const Rational& x, const char* where) {
  if (x == 0) throw Error(Errc::Pole, std::string(where) + ": division by zero");
  return Rational(1) / x;
}

}  // namespace

LambdaSeq lambda_set(int n, LambdaKind kind, int count) {
  if (count < 0) throw Error(Errc::BadParameter, "count must be >= 0");
  LambdaSeq seq;
  seq.n = n;
  seq.kind = kind;
  std::set<Rational> seen;
  auto& t = seq.terms;
  const std::size_t want = static_cast<std::size_t>(count);

  auto take_finite = [&](std::initializer_list<Rational> all) {
    for (const auto& x : all) {
      if (t.size() >= want) break;
      push_unique(t, seen, x);
    }
  };

  switch (kind) {
    case LambdaKind::Lambda2:
      take_finite({0, 1, 2});
      return seq;
    case LambdaKind::Lambda3:
      take_finite({0, 1, Rational(3, 2), 2, 3});
      return seq;
    case LambdaKind::Lambda4bd:
      for (long k = 1; t.size() < want; ++k) {
        push_unique(t, seen, Rational(2) - Rational(2, k));
        if (t.size() < want) push_unique(t, seen, Rational(2) + Rational(2, k));
        if (k == 1 && t.size() < want) push_unique(t, seen, Rational(2));
      }
      return seq;
    default:
      break;
  }

  if (n < 5) throw Error(Errc::BadParameter, "this parameter set needs n >= 5");
  const Rational nn(n);

  if (kind == LambdaKind::CF1 || kind == LambdaKind::CF2) {
    Rational c = kind == LambdaKind::CF1 ? nn - 1 : nn - 2;
    if (want > 0) push_unique(t, seen, kind == LambdaKind::CF1 ? Rational(0) : Rational(1));
    while (t.size() < want) {
      push_unique(t, seen, Rational(1) + checked_inverse(c, "continued fraction"));
      c = (nn - 2) - checked_inverse(c, "continued fraction");
    }
    return seq;
  }

  // Two-sided orbit under the Coxeter maps, interleaved a0, a1, a-1, a2, ...
  Rational fwd = kind == LambdaKind::Orb2 ? Rational(2) : Rational(n, 2);
  Rational bwd = fwd;
  if (want > 0) push_unique(t, seen, fwd);
  const std::size_t max_steps = 4 * want + 16;
  for (std::size_t step = 0; t.size() < want && step < max_steps; ++step) {
    fwd = coxeter_step(n, fwd, Direction::Forward);
    push_unique(t, seen, fwd);
    if (t.size() >= want) break;
    bwd = coxeter_step(n, bwd, Direction::Backward);
    push_unique(t, seen, bwd);
  }
  return seq;
}

namespace {

bool is_positive_integer(const Rational& x) { return mp::denominator(x) == 1 && x >= 1; }

}  // namespace

bool lambda4bd_member_alt(const Rational& q) {
  for (int v : {0, 1, 2, 3, 4})
    if (q == v) return true;
  // q = 1 + t/(t+2)  <=>  t = 2(q-1)/(2-q);  q = 3 - t/(t+2)  <=>  t = 2(3-q)/(q-2).
  if (q != 2) {
    if (is_positive_integer(Rational(2) * (q - 1) / (Rational(2) - q))) return true;
    if (is_positive_integer(Rational(2) * (Rational(3) - q) / (q - 2))) return true;
  }
  return false;
}

Lambda4Membership lambda4bd_member(const Rational& q) {
  Lambda4Membership out;
  if (q == 2) {
    out.tag = Lambda4Membership::Tag::Center;
  } else {
    const Rational diff = q - 2;
    const Rational k = Rational(2) / abs(diff);
    if (is_positive_integer(k)) {
      out.tag = Lambda4Membership::Tag::Member;
      out.k = mp::numerator(k).convert_to<long>();
      out.sign = diff > 0 ? 1 : -1;
    }
  }
  const bool primary = out.tag != Lambda4Membership::Tag::Absent;
  if (primary != lambda4bd_member_alt(q))
    throw std::logic_error("lambda4bd_member: the two descriptions disagree at " + to_string(q));
  return out;
}

Rational coxeter_step(int n, const Rational& alpha, Direction dir) {
  if (n < 5) throw Error(Errc::BadParameter, "coxeter_step needs n >= 5");
  const Rational nn(n);
  if (dir == Direction::Forward) {
    if (alpha == 1) throw Error(Errc::Pole, "forward step at alpha = 1");
    return (nn - 1) - Rational(1) / (alpha - 1);
  }
  if (alpha == nn - 1) throw Error(Errc::Pole, "backward step at alpha = n-1");
  return Rational(1) + Rational(1) / (nn - 1 - alpha);
}

std::vector<Rational> closed_form_orbit_points(const Rational& x, int jmax, ClosedForm form) {
  std::vector<Rational> out;
  std::set<Rational> seen;
  for (int j = 0; j <= jmax; ++j) {
    const Rational sgn = j % 2 == 0 ? 1 : -1;
    push_unique(out, seen, sgn * (x - j));
    if (form == ClosedForm::AsPrinted)
      push_unique(out, seen, sgn * (-x - j));
    else
      push_unique(out, seen, sgn * (x + j));
  }
  return out;
}

std::vector<Rational> closed_form_mismatches(const Rational& x, int jmax, ClosedForm form) {
  // Word length 2j+1 reaches every shift up to j in both families.
  const Orbit orb = orbit_enumerate(x, std::min(64, 2 * jmax + 2));
  std::set<Rational> reachable;
  for (const auto& p : orb.points) reachable.insert(p.value);
  std::vector<Rational> out;
  for (const auto& y : closed_form_orbit_points(x, jmax, form))
    if (!reachable.count(y)) out.push_back(y);
  return out;
}

}  // namespace idemsum
