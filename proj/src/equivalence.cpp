#include "idemsum/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "idemsum/error.hpp"

namespace idemsum {

namespace {

// Problems up to this many unknowns use the direct system.
constexpr Index kDirectLimit = 400;

// Norm scale of the Sylvester system C a - b C.
double system_scale(std::span<const CMat> a, std::span<const CMat> b) {
  double s = 0.0;
  for (std::size_t g = 0; g < a.size(); ++g) s = std::max(s, op_norm(a[g]) + op_norm(b[g]));
  return s;
}

HomSpace from_null_vectors(const CMat& vecs, Index rows, Index cols) {
  HomSpace h;
  h.dim = vecs.cols();
  for (Index k = 0; k < vecs.cols(); ++k) {
    CMat c(rows, cols);
    for (Index j = 0; j < cols; ++j) c.col(j) = vecs.col(k).segment(j * rows, rows);
    h.basis.push_back(std::move(c));
  }
  return h;
}

HomSpace direct_space(std::span<const CMat> a, std::span<const CMat> b, double tol) {
  const Index m = a.front().rows(), n = b.front().rows();
  const Index unknowns = n * m;
  CMat k(static_cast<Index>(a.size()) * unknowns, unknowns);
  const CMat in = identity(n), im = identity(m);
  for (std::size_t g = 0; g < a.size(); ++g)
    k.middleRows(static_cast<Index>(g) * unknowns, unknowns) = kron(a[g].transpose(), in) - kron(im, b[g]);
  return from_null_vectors(null_space(k, tol, system_scale(a, b)), n, m);
}

// Hermitian element of the algebra generated by the list (assumed closed under
// adjoints), with the same coefficients on both sides.
std::pair<CMat, CMat> probe_elements(std::span<const CMat> a, std::span<const CMat> b) {
  std::mt19937_64 rng(0x5eed1234abcdULL);
  std::normal_distribution<double> g(0.0, 1.0);
  const Index m = a.front().rows(), n = b.front().rows();
  CMat xa = CMat::Zero(m, m), xb = CMat::Zero(n, n);
  const cplx i1(0.0, 1.0);
  auto add = [&](const CMat& ua, const CMat& ub) {
    const double c = g(rng), d = g(rng);
    xa += c * (ua + ua.adjoint()) + d * i1 * (ua - ua.adjoint());
    xb += c * (ub + ub.adjoint()) + d * i1 * (ub - ub.adjoint());
  };
  for (std::size_t k = 0; k < a.size(); ++k) add(a[k], b[k]);
  // Quadratic terms split degeneracies that linear combinations can leave.
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t l = 0; l < a.size(); ++l)
      if (k != l) add(a[k] * a[l], b[k] * b[l]);
  return {xa, xb};
}

HomSpace reduced_space(std::span<const CMat> a, std::span<const CMat> b, double tol) {
  const Index m = a.front().rows(), n = b.front().rows();
  const auto [xa, xb] = probe_elements(a, b);
  const auto ea = eig_hermitian(xa);
  const auto eb = eig_hermitian(xb);
  double scale = 1.0;
  for (double v : ea.values) scale = std::max(scale, std::abs(v));
  for (double v : eb.values) scale = std::max(scale, std::abs(v));
  const double match = 1e-6 * scale;

  struct Pair {
    Index i, j;  // row in B's eigenbasis, column in A's
  };
  std::vector<Pair> pairs;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      if (std::abs(eb.values[static_cast<std::size_t>(i)] - ea.values[static_cast<std::size_t>(j)]) <= match)
        pairs.push_back({i, j});
  HomSpace h;
  if (pairs.empty()) return h;

  const Index P = static_cast<Index>(pairs.size());
  const CMat& va = ea.vectors;
  const CMat& vb = eb.vectors;

  // Accumulate the triangular factor of the stacked system one generator at a
  // time so the full (generators * n * m) x P matrix is never formed.
  CMat r = CMat::Zero(0, P);
  for (std::size_t g = 0; g < a.size(); ++g) {
    const CMat ah = va.adjoint() * a[g] * va;
    const CMat bh = vb.adjoint() * b[g] * vb;
    CMat block(r.rows() + n * m, P);
    block.topRows(r.rows()) = r;
    for (Index c = 0; c < P; ++c) {
      const auto [i, j] = pairs[static_cast<std::size_t>(c)];
      // E_ij * ah - bh * E_ij, column-major.
      CMat e = CMat::Zero(n, m);
      e.row(i) += ah.row(j);
      e.col(j) -= bh.col(i);
      block.block(r.rows(), c, n * m, 1) = Eigen::Map<const CVec>(e.data(), n * m);
    }
    Eigen::HouseholderQR<CMat> qr(block);
    const Index keep = std::min(block.rows(), P);
    r = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
  }
  const CMat ns = null_space(r, tol, system_scale(a, b));
  for (Index k = 0; k < ns.cols(); ++k) {
    CMat ch = CMat::Zero(n, m);
    for (Index c = 0; c < P; ++c) {
      const auto [i, j] = pairs[static_cast<std::size_t>(c)];
      ch(i, j) = ns(c, k);
    }
    h.basis.push_back(vb * ch * va.adjoint());
  }
  h.dim = ns.cols();
  return h;
}

}  // namespace

HomSpace intertwiner_space(std::span<const CMat> a, std::span<const CMat> b, double rank_tol, HomMethod method) {
  if (a.size() != b.size() || a.empty())
    throw Error(Errc::DimensionMismatch, "intertwiner_space: generator lists differ in length");
  for (const auto& x : a)
    if (x.rows() != a.front().rows() || x.cols() != x.rows())
      throw Error(Errc::DimensionMismatch, "intertwiner_space: generators must be square of equal size");
  for (const auto& x : b)
    if (x.rows() != b.front().rows() || x.cols() != x.rows())
      throw Error(Errc::DimensionMismatch, "intertwiner_space: generators must be square of equal size");
  if (method == HomMethod::Auto)
    method = a.front().rows() * b.front().rows() <= kDirectLimit ? HomMethod::Direct : HomMethod::Reduced;
  return method == HomMethod::Direct ? direct_space(a, b, rank_tol) : reduced_space(a, b, rank_tol);
}

HomSpace hom_space(const IdempotentFamily& a, const IdempotentFamily& b, bool with_star, HomMethod method) {
  if (a.n != b.n) throw Error(Errc::DimensionMismatch, "hom_space: families have different n");
  if (a.truncated() || b.truncated()) throw Error(Errc::Truncated, "hom_space: truncated family");
  std::vector<CMat> ga(a.q), gb(b.q);
  if (with_star) {
    ga.insert(ga.end(), a.q_star.begin(), a.q_star.end());
    gb.insert(gb.end(), b.q_star.begin(), b.q_star.end());
  } else if (method == HomMethod::Reduced) {
    throw Error(Errc::BadParameter, "hom_space: the reduced method needs with_star");
  }
  if (method == HomMethod::Auto && !with_star) method = HomMethod::Direct;
  return intertwiner_space(ga, gb, kRankTol, method);
}

bool is_irreducible(const IdempotentFamily& fam) { return hom_space(fam, fam, true).dim == 1; }

std::optional<CMat> unitary_equivalent(const IdempotentFamily& a, const IdempotentFamily& b) {
  if (!is_irreducible(a) || !is_irreducible(b))
    throw Error(Errc::NotIrreducible, "unitary_equivalent: both families must be irreducible");
  if (a.dim != b.dim || a.n != b.n) return std::nullopt;
  const HomSpace h = hom_space(a, b, true);
  if (h.dim != 1) return std::nullopt;
  const CMat& c = h.basis.front();
  // Polar factor U = C (C*C)^{-1/2}.
  const auto e = eig_hermitian(c.adjoint() * c);
  if (e.values.front() <= 1e-12 * e.values.back()) return std::nullopt;
  Eigen::VectorXd inv_sqrt(e.values.size());
  for (std::size_t i = 0; i < e.values.size(); ++i) inv_sqrt(static_cast<Index>(i)) = 1.0 / std::sqrt(e.values[i]);
  const CMat u = c * e.vectors * inv_sqrt.cast<cplx>().asDiagonal() * e.vectors.adjoint();
  if (!is_unitary(u, 1e-8)) return std::nullopt;
  for (int i = 0; i < a.n; ++i) {
    const double scale = 1.0 + op_norm(a.q[static_cast<std::size_t>(i)]);
    if (op_norm(u * a.q[static_cast<std::size_t>(i)] - b.q[static_cast<std::size_t>(i)] * u) > 1e-8 * scale)
      return std::nullopt;
  }
  return u;
}

namespace {

// Real orthonormal basis (Frobenius) of the Hermitian matrices in span(vecs).
std::vector<CMat> hermitian_basis(const CMat& vecs, Index d) {
  const Index cnt = vecs.cols();
  Eigen::MatrixXd real(2 * d * d, 2 * cnt);
  std::vector<CMat> cands;
  for (Index k = 0; k < cnt; ++k) {
    CMat b(d, d);
    for (Index j = 0; j < d; ++j) b.col(j) = vecs.col(k).segment(j * d, d);
    cands.push_back((b + b.adjoint()) / 2.0);
    cands.push_back((b - b.adjoint()) / cplx(0.0, 2.0));
  }
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const CMat& h = cands[k];
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i) {
        real(j * d + i, static_cast<Index>(k)) = h(i, j).real();
        real(d * d + j * d + i, static_cast<Index>(k)) = h(i, j).imag();
      }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(real, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  std::vector<CMat> out;
  if (s.size() == 0 || s(0) <= 0.0) return out;
  for (Index k = 0; k < s.size() && s(k) > kRankTol * s(0); ++k) {
    CMat h(d, d);
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i) h(i, j) = cplx(svd.matrixU()(j * d + i, k), svd.matrixU()(d * d + j * d + i, k));
    out.push_back((h + h.adjoint()) / 2.0);
  }
  return out;
}

CMat combine(const std::vector<CMat>& basis, const Eigen::VectorXd& c) {
  CMat g = CMat::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k) g += c(static_cast<Index>(k)) * basis[k];
  return g;
}

// Ratio of extreme eigenvalues of g or -g, whichever is larger; positive
// exactly when g is definite.
double score(const CMat& g) {
  const auto e = eig_hermitian(g);
  const double lo = e.values.front(), hi = e.values.back();
  const double pos = hi > 0.0 ? lo / hi : -1.0;
  const double neg = lo < 0.0 ? hi / lo : -1.0;
  return std::max(pos, neg);
}


// Maximizes the smallest eigenvalue of G(c) = sum c_j B_j over tr G(c) = d by
// a log-det barrier on X = G(c) + s I, minimizing s. Returns nullopt when the
// traces of the basis all vanish.
std::optional<Eigen::VectorXd> maximize_min_eig(const std::vector<CMat>& basis, Eigen::VectorXd c, Index d) {
  const Index r = static_cast<Index>(basis.size());
  Eigen::VectorXd tr(r);
  for (Index j = 0; j < r; ++j) tr(j) = basis[static_cast<std::size_t>(j)].trace().real();
  if (tr.norm() == 0.0) return std::nullopt;
  if (c.dot(tr) <= 0.0) c = tr;
  c *= double(d) / c.dot(tr);
  const CMat id = identity(d);
  double s = 1.0 - eig_hermitian(combine(basis, c)).values.front();

  auto phi = [&](const Eigen::VectorXd& cc, double ss, double mu) -> std::optional<double> {
    const CMat x = combine(basis, cc) + ss * id;
    Eigen::LLT<CMat> llt(x);
    if (llt.info() != Eigen::Success) return std::nullopt;
    double logdet = 0.0;
    for (Index i = 0; i < d; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
    return ss - mu * logdet;
  };

  for (double mu = 1.0; mu > 1e-12; mu *= 0.2) {
    for (int it = 0; it < 50; ++it) {
      const CMat x = combine(basis, c) + s * id;
      const CMat w = x.inverse();
      std::vector<CMat> wb;
      for (const auto& b : basis) wb.push_back(w * b);
      // KKT system over (c, s, multiplier of the trace constraint).
      Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(r + 2, r + 2);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r + 2);
      for (Index i = 0; i < r; ++i) {
        const auto& wi = wb[static_cast<std::size_t>(i)];
        rhs(i) = mu * wi.trace().real();
        for (Index j = 0; j <= i; ++j)
          kkt(i, j) = kkt(j, i) = mu * (wi * wb[static_cast<std::size_t>(j)]).trace().real();
        kkt(i, r) = kkt(r, i) = mu * (wi * w).trace().real();
        kkt(i, r + 1) = kkt(r + 1, i) = tr(i);
      }
      kkt(r, r) = mu * (w * w).trace().real();
      rhs(r) = mu * w.trace().real() - 1.0;
      const Eigen::VectorXd step = kkt.fullPivLu().solve(rhs);
      const Eigen::VectorXd dc = step.head(r);
      const double ds = step(r);
      const double decrement = -(rhs.head(r + 1).dot(step.head(r + 1)));
      if (std::abs(decrement) < 1e-14) break;
      const double f0 = *phi(c, s, mu);
      double t = 1.0;
      bool moved = false;
      for (int k = 0; k < 60; ++k, t *= 0.5) {
        const auto f = phi(c + t * dc, s + t * ds, mu);
        if (f && *f <= f0 + 1e-4 * t * decrement) {
          c += t * dc;
          s += t * ds;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  }
  return c;
}

}  // namespace

Unitarization unitarize(const IdempotentFamily& fam, std::mt19937_64& rng) {
  if (fam.truncated()) throw Error(Errc::Truncated, "unitarize: family is truncated");
  if (std::abs(fam.lambda.imag()) > 1e-12) throw Error(Errc::BadParameter, "unitarize: lambda must be real");
  if (fam.sum_relation && std::abs(fam.lambda - 2.0) < 1e-12) throw Error(Errc::BadParameter, "unitarize: lambda = 2");
  const Index d = fam.dim;
  const Index unknowns = d * d;
  CMat k(static_cast<Index>(fam.n) * unknowns, unknowns);
  const CMat id = identity(d);
  double max_norm = 0.0;
  for (const auto& q : fam.q) max_norm = std::max(max_norm, op_norm(q));
  for (int i = 0; i < fam.n; ++i)
    k.middleRows(i * unknowns, unknowns) =
        kron(fam.q[static_cast<std::size_t>(i)].transpose(), id) - kron(id, fam.q_star[static_cast<std::size_t>(i)]);
  const CMat ns = null_space(k, kRankTol, 2.0 * max_norm);
  const auto basis = hermitian_basis(ns, d);
  if (basis.empty()) throw Error(Errc::NoPDSolution, "unitarize: no Hermitian solution of G q = q* G");
  const Index r = static_cast<Index>(basis.size());

  // Candidate 1: orthogonal projection of I onto the solution space.
  Eigen::VectorXd best(r);
  for (Index j = 0; j < r; ++j) best(j) = basis[static_cast<std::size_t>(j)].trace().real();
  if (best.norm() == 0.0) best = Eigen::VectorXd::Unit(r, 0);
  double best_score = score(combine(basis, best));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd c(r);
    for (Index j = 0; j < r; ++j) c(j) = gauss(rng);
    const double s = score(combine(basis, c));
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  CMat g = combine(basis, best);
  if (g.trace().real() < 0.0) {
    g = -g;
    best = -best;
  }

  if (r > 1) {
    const auto c = maximize_min_eig(basis, best, d);
    if (c) g = combine(basis, *c);
  }

  g = (g + g.adjoint()) / 2.0;
  const double tr_g = g.trace().real();
  if (tr_g <= 0.0) throw Error(Errc::NoPDSolution, "unitarize: no positive definite solution found");
  g *= double(d) / tr_g;
  const auto e = eig_hermitian(g);
  if (e.values.front() <= 1e-12 * e.values.back())
    throw Error(Errc::NoPDSolution, "unitarize: best candidate has smallest eigenvalue " +
                                        std::to_string(e.values.front()));

  Eigen::VectorXd sq(d), isq(d);
  for (Index i = 0; i < d; ++i) {
    sq(i) = std::sqrt(e.values[static_cast<std::size_t>(i)]);
    isq(i) = 1.0 / sq(i);
  }
  const CMat s = e.vectors * sq.cast<cplx>().asDiagonal() * e.vectors.adjoint();
  const CMat sinv = e.vectors * isq.cast<cplx>().asDiagonal() * e.vectors.adjoint();
  std::vector<CMat> q;
  for (const auto& m : fam.q) q.push_back(s * m * sinv);

  Unitarization out;
  out.G = g;
  out.min_eig = e.values.front();
  out.max_eig = e.values.back();
  out.solution_dim = r;
  Params params = fam.params;
  params.emplace_back("unitarized", "true");
  out.star_fam = make_family(fam.kind, std::move(params), fam.lambda, std::move(q), std::nullopt,
                             {fam.star_orthogonal, fam.sum_relation, false});
  return out;
}

}  // namespace idemsum
