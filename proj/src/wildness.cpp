#include "idemsum/wildness.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "idemsum/equivalence.hpp"
#include "idemsum/error.hpp"

namespace idemsum {

namespace {

constexpr double kSubTol = 1e-12;

void require_kind(const Substitution& sub, Substitution::Kind kind, const char* who) {
  if (sub.kind != kind)
    throw Error(Errc::BadSubstitution, std::string(who) + ": needs a " +
                                           (kind == Substitution::Kind::Hermitian ? "Hermitian" : "unitary") +
                                           " substitution");
}

}  // namespace

Substitution hermitian_substitution(CMat a, CMat b) {
  if (a.rows() == 0 || a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols())
    throw Error(Errc::BadSubstitution, "substitution matrices must be square of equal size");
  if (!is_hermitian(a, kSubTol) || !is_hermitian(b, kSubTol))
    throw Error(Errc::BadSubstitution, "substitution matrices must be Hermitian");
  return {Substitution::Kind::Hermitian, a.rows(), std::move(a), std::move(b)};
}

Substitution unitary_substitution(CMat u1, CMat u2) {
  if (u1.rows() == 0 || u1.rows() != u1.cols() || u2.rows() != u1.rows() || u2.cols() != u1.cols())
    throw Error(Errc::BadSubstitution, "substitution matrices must be square of equal size");
  if (!is_unitary(u1, kSubTol) || !is_unitary(u2, kSubTol))
    throw Error(Errc::BadSubstitution, "substitution matrices must be unitary");
  return {Substitution::Kind::Unitary, u1.rows(), std::move(u1), std::move(u2)};
}

Substitution random_hermitian_substitution(std::mt19937_64& rng, Index m) {
  CMat a = random_hermitian(rng, m);
  CMat b = random_hermitian(rng, m);
  return hermitian_substitution(std::move(a), std::move(b));
}

Substitution random_unitary_substitution(std::mt19937_64& rng, Index m) {
  CMat u1 = random_unitary(rng, m);
  CMat u2 = random_unitary(rng, m);
  return unitary_substitution(std::move(u1), std::move(u2));
}

Substitution conjugate(const Substitution& sub, const CMat& u) {
  Substitution out = sub;
  out.x1 = u * sub.x1 * u.adjoint();
  out.x2 = u * sub.x2 * u.adjoint();
  if (out.kind == Substitution::Kind::Hermitian) {
    out.x1 = (out.x1 + out.x1.adjoint()) / 2.0;
    out.x2 = (out.x2 + out.x2.adjoint()) / 2.0;
  }
  return out;
}

std::string_view to_string(Builder b) {
  switch (b) {
    case Builder::Wild1a: return "wild1a";
    case Builder::Wild1b: return "wild1b";
    case Builder::Wild2: return "wild2";
  }
  return "?";
}

std::optional<Builder> parse_builder(std::string_view name) {
  for (auto b : {Builder::Wild1a, Builder::Wild1b, Builder::Wild2})
    if (to_string(b) == name) return b;
  return std::nullopt;
}

namespace {

// Square matrix assembled from an r x r grid of m x m blocks.
class BlockGrid {
 public:
  BlockGrid(Index blocks, Index m) : m_(m), mat_(CMat::Zero(blocks * m, blocks * m)) {}
  void set(Index row, Index col, const CMat& x) { mat_.block(row * m_, col * m_, m_, m_) = x; }
  const CMat& matrix() const { return mat_; }

 private:
  Index m_;
  CMat mat_;
};

std::vector<CMat> wild1a_generators(const Substitution& sub) {
  const Index m = sub.m;
  const CMat e = identity(m);
  const CMat c = sub.x1 + cplx(0.0, 1.0) * sub.x2;
  BlockGrid q1(3, m), q2(3, m);
  q1.set(0, 0, e);
  q1.set(0, 1, e);
  q1.set(0, 2, c);
  q2.set(0, 1, -e);
  q2.set(0, 2, -e);
  q2.set(1, 1, e);
  q2.set(1, 2, e);
  return {q1.matrix(), q2.matrix()};
}

}  // namespace

PsiImage wild1_image(Wild1Variant variant, const Substitution& sub) {
  require_kind(sub, Substitution::Kind::Hermitian, "wild1_image");
  const Index m = sub.m;
  PsiImage img;
  img.block_dim = m;
  Params params{{"substitution_dim", std::to_string(m)}};
  if (variant == Wild1Variant::A) {
    auto q = wild1a_generators(sub);
    const CMat q3 = identity(3 * m) - q[0] - q[1];
    q.push_back(q3);
    img.builder = "wild1a";
    img.lambda = 1;
    img.fam = make_family("wild1a", std::move(params), 1.0, std::move(q), std::nullopt, {false, true, true});
    return img;
  }
  const CMat e = identity(m);
  const CMat c = sub.x1 + cplx(0.0, 1.0) * sub.x2;
  BlockGrid e11(2, m), e12(2, m), e21(2, m);
  e11.set(0, 0, e);
  e11.set(0, 1, -c);
  e12.set(0, 1, e);
  e21.set(0, 0, c);
  e21.set(0, 1, -c * c);
  e21.set(1, 0, e);
  e21.set(1, 1, -c);
  const CMat u11 = e11.matrix(), u12 = e12.matrix(), u21 = e21.matrix();
  const CMat u22 = u21 * u12;
  const double r3 = std::sqrt(3.0) / 4.0;
  std::vector<CMat> q{u11, 0.25 * u11 + r3 * (u12 + u21) + 0.75 * u22, 0.25 * u11 - r3 * (u12 + u21) + 0.75 * u22};
  img.builder = "wild1b";
  img.lambda = Rational(3, 2);
  img.fam = make_family("wild1b", std::move(params), 1.5, std::move(q), std::nullopt, {false, true, true});
  return img;
}

J3Parts build_j3(const Substitution& sub) {
  require_kind(sub, Substitution::Kind::Unitary, "build_j3");
  const Index m = sub.m;
  const CMat e = identity(m);
  CMat a1 = CMat::Zero(4 * m, 5 * m), a2 = CMat::Zero(3 * m, 5 * m);
  auto put = [m](CMat& t, Index r, Index c, const CMat& x) { t.block(r * m, c * m, m, m) = x; };
  put(a1, 0, 0, e);
  put(a1, 1, 1, e);
  put(a1, 2, 2, 2.0 * e);
  put(a1, 3, 3, 3.0 * e);
  put(a2, 0, 0, e);
  put(a2, 0, 2, e);
  put(a2, 0, 3, e);
  put(a2, 0, 4, e);
  put(a2, 1, 1, 2.0 * e);
  put(a2, 1, 2, e);
  put(a2, 1, 3, sub.x1);
  put(a2, 2, 2, e);
  put(a2, 2, 4, sub.x2);
  const CMat gram = a1.adjoint() * a1 + a2.adjoint() * a2;
  const double g = op_norm(gram);
  // The Gram matrix scales as 1/N^2.
  int N = 1;
  while (!(g / (double(N) * N) < 1.0)) ++N;
  J3Parts out;
  out.N = N;
  out.a1 = a1 / double(N);
  out.a2 = a2 / double(N);
  const CMat rest = identity(5 * m) - out.a1.adjoint() * out.a1 - out.a2.adjoint() * out.a2;
  out.a3 = hermitian_psd_sqrt((rest + rest.adjoint()) / 2.0);
  out.j3 = CMat(12 * m, 5 * m);
  out.j3 << out.a1, out.a2, out.a3;
  return out;
}

namespace {

// Pairing block diag(x1 E_4, x2 E_3, x3 E_5) used to carry the free generators
// through the 12m-dimensional space; x_i = i and y_i = target / i.
std::pair<CMat, CMat> xy_blocks(Index m, const Rational& target) {
  const std::array<Index, 3> sizes{4, 3, 5};
  CMat x = CMat::Zero(12 * m, 12 * m), y = x;
  Index off = 0;
  for (int i = 0; i < 3; ++i) {
    const Index len = sizes[static_cast<std::size_t>(i)] * m;
    const double xi = i + 1;
    const double yi = to_double(target / Rational(i + 1));
    x.block(off, off, len, len) = xi * identity(len);
    y.block(off, off, len, len) = yi * identity(len);
    off += len;
  }
  return {x, y};
}

}  // namespace

PsiImage wild2_image(const Rational& lambda, const Substitution& sub) {
  const auto mem = lambda4bd_member(lambda);
  using Tag = Lambda4Membership::Tag;
  if (lambda == 1 || lambda == 2) {
    require_kind(sub, Substitution::Kind::Hermitian, "wild2_image at lambda 1 or 2");
    PsiImage img = wild1_image(Wild1Variant::A, sub);
    auto q = img.fam.q;
    const Index d = img.fam.dim;
    q.push_back(lambda == 1 ? CMat(CMat::Zero(d, d)) : identity(d));
    img.builder = "wild2";
    img.lambda = lambda;
    img.fam = make_family("wild2", {{"lambda", to_string(lambda)}, {"substitution_dim", std::to_string(sub.m)}},
                          to_double(lambda), std::move(q));
    return img;
  }
  if (mem.tag != Tag::Member) throw Error(Errc::BadLambda, to_string(lambda) + " is not of the form 2 +- 2/k");
  const long k = mem.k;
  const int sign = mem.sign;
  int which = 0;
  long l = 0;
  if (k % 4 == 0) {
    which = 1;
    l = k / 4;
  } else if (k % 2 == 1) {
    which = 2;
    l = (k - 1) / 2;
  } else {
    which = 3;
    l = (k - 2) / 4;
  }
  if (l < 1) throw Error(Errc::BadLambda, "no construction for lambda = " + to_string(lambda));
  require_kind(sub, Substitution::Kind::Unitary, "wild2_image");

  const Index m = sub.m;
  const Index bs = 12 * m;
  const J3Parts j = build_j3(sub);
  const CMat P = j.j3 * j.j3.adjoint();
  const CMat E = identity(bs);
  const Rational half_lambda = lambda / 2;

  // Positions are 0-based block indices; level(j) is the j-th eigenvalue level of p.
  const Index blocks = which == 1 ? 2 * l : 2 * l + 1;
  const long offset = which == 1 ? 0 : 1;  // index of the first level
  std::function<Rational(long)> level;
  if (which == 1) {
    level = [=](long jj) {
      const bool even = jj % 2 == 0;
      const long kk = even ? jj / 2 : (jj + 1) / 2;
      const Rational t(kk, 2 * l);
      return (even == (sign > 0)) ? Rational(1) - t : t;
    };
  } else {
    const long scale = which == 2 ? 2 : 1;
    level = [=](long jj) {
      const bool even = jj % 2 == 0;
      const long kk = even ? jj / 2 : (jj - 1) / 2;
      const Rational t(scale * kk, 2 * l + 1);
      return (even == (sign > 0)) ? t : Rational(1) - t;
    };
  }
  auto coeff = [&](long jj) {
    const Rational lj = level(jj);
    return (half_lambda - lj) * (Rational(1) - half_lambda + lj);
  };

  BlockGrid p(blocks, bs), r(blocks, bs), s(blocks, bs);
  std::vector<Rational> levels;
  for (Index b = 0; b < blocks; ++b) {
    const Rational lv = level(b + offset);
    levels.push_back(lv);
    p.set(b, b, to_double(lv) * E);
  }
  auto pos = [&](long jj) { return static_cast<Index>(jj - offset); };
  // Generic 2x2 block [[0, c E], [E, 0]] on levels (top, top+1).
  auto pair_block = [&](BlockGrid& g, long top, const CMat& upper, const CMat& lower) {
    g.set(pos(top), pos(top + 1), upper);
    g.set(pos(top + 1), pos(top), lower);
  };

  if (which == 1) {
    for (long kk = 1; kk <= l - 1; ++kk)
      pair_block(r, 2 * kk - 1, to_double(level(2 * kk - 1) * level(2 * kk)) * E, E);
    r.set(pos(2 * l - 1), pos(2 * l - 1), P - 0.5 * E);
    for (long kk = 0; kk <= l - 1; ++kk) {
      if (kk == l - 1) {
        const auto [x, y] = xy_blocks(m, coeff(2 * kk));
        pair_block(s, 2 * kk, y, x);
      } else {
        pair_block(s, 2 * kk, to_double(coeff(2 * kk)) * E, E);
      }
    }
  } else if (which == 2) {
    for (long kk = 1; kk <= l; ++kk) {
      if (kk == 1) {
        const double w = std::sqrt(to_double(level(2) * level(3)));
        const CMat refl = (2.0 * P - E) * w;
        pair_block(r, 2, refl, refl);
      } else {
        pair_block(r, 2 * kk, to_double(level(2 * kk) * level(2 * kk + 1)) * E, E);
      }
    }
    for (long kk = 1; kk <= l; ++kk) {
      if (kk <= 2) {
        const auto [x, y] = xy_blocks(m, coeff(2 * kk - 1));
        pair_block(s, 2 * kk - 1, y, x);
      } else {
        pair_block(s, 2 * kk - 1, to_double(coeff(2 * kk - 1)) * E, E);
      }
    }
  } else {
    for (long kk = 1; kk <= l; ++kk) {
      if (kk == l) {
        const auto [x, y] = xy_blocks(m, level(2 * kk) * level(2 * kk + 1));
        pair_block(r, 2 * kk, y, x);
      } else {
        pair_block(r, 2 * kk, to_double(level(2 * kk) * level(2 * kk + 1)) * E, E);
      }
    }
    for (long kk = 1; kk <= l; ++kk) pair_block(s, 2 * kk - 1, to_double(coeff(2 * kk - 1)) * E, E);
    s.set(pos(2 * l + 1), pos(2 * l + 1), P - 0.5 * E);
  }

  const cplx lam = to_double(lambda);
  PsiImage img;
  img.builder = "wild2";
  img.lambda = lambda;
  img.block_dim = m;
  img.N = j.N;
  img.p_levels = levels;
  PQRSQuad quad;
  quad.p = p.matrix();
  quad.q = lam / 2.0 * identity(blocks * bs) - quad.p;
  quad.r = r.matrix();
  quad.s = s.matrix();
  quad.lambda = lam;
  for (Index i = 0; i < blocks * bs; ++i) quad.interior.push_back(i);
  img.fam = make_family("wild2",
                        {{"lambda", to_string(lambda)}, {"case", std::to_string(which)}, {"l", std::to_string(l)},
                         {"substitution_dim", std::to_string(m)}, {"N", std::to_string(j.N)}},
                        lam, idempotents_from_pqrs(quad.p, quad.r, quad.s, lam));
  img.pqrs = std::move(quad);
  img.j3 = j;
  return img;
}

PsiImage build_image(Builder builder, const Rational& lambda, const Substitution& sub) {
  switch (builder) {
    case Builder::Wild1a: return wild1_image(Wild1Variant::A, sub);
    case Builder::Wild1b: return wild1_image(Wild1Variant::B, sub);
    case Builder::Wild2: return wild2_image(lambda, sub);
  }
  throw Error(Errc::BadParameter, "unknown builder");
}

Fullness fullness_check(Builder builder, const Rational& lambda, const Substitution& pi1, const Substitution& pi2) {
  if (pi1.kind != pi2.kind) throw Error(Errc::KindMismatch, "fullness_check: substitutions of different kinds");
  const std::vector<CMat> src1{pi1.x1, pi1.x2, pi1.x1.adjoint(), pi1.x2.adjoint()};
  const std::vector<CMat> src2{pi2.x1, pi2.x2, pi2.x1.adjoint(), pi2.x2.adjoint()};
  Fullness out;
  out.dim_source = intertwiner_space(src1, src2, kRankTol, HomMethod::Direct).dim;
  const PsiImage f1 = build_image(builder, lambda, pi1);
  const PsiImage f2 = build_image(builder, lambda, pi2);
  out.dim_target = hom_space(f1.fam, f2.fam, true).dim;
  out.equal = out.dim_source == out.dim_target;
  return out;
}

}  // namespace idemsum
