#include "idemsum/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "idemsum/equivalence.hpp"
#include "idemsum/error.hpp"
#include "idemsum/families.hpp"
#include "idemsum/manifest.hpp"
#include "idemsum/orbits.hpp"
#include "idemsum/verify.hpp"
#include "idemsum/wildness.hpp"

namespace idemsum::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out_dir;

  // family
  std::string kind;
  std::string lambda;
  std::string y = "1", alpha = "1", which = "first", sign = "plus", a = "1/2", a40case = "I";
  int k = 2, blocks = 30, N = 256, depth = 12, branch = 1, d = 6;
  bool verify = false;
  std::string manifest;

  // lambda / orbit
  int n = 5, count = 10;
  std::string value, orbit_seed;

  // equiv
  std::string path_a, path_b;
  bool star = false;

  // wild / identity / scan
  std::string builder;
  int subdim = 1, trials = 10, wordlen = 3;
  std::string grid;
};

Rational rational_arg(const std::string& s, const char* flag) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    throw UsageError(std::string("--") + flag + ": cannot parse '" + s + "' as a rational");
  }
}

// "p/q", a decimal, "re,im", or "a+bi" / "a-bi".
cplx complex_arg(const std::string& s, const char* flag) {
  if (auto comma = s.find(','); comma != std::string::npos) {
    return {to_double(rational_arg(s.substr(0, comma), flag)), to_double(rational_arg(s.substr(comma + 1), flag))};
  }
  static const std::regex re(R"(^\s*([-+]?[0-9./]+)\s*([-+])\s*([0-9./]*)\s*i\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    const double im = m[3].str().empty() ? 1.0 : to_double(rational_arg(m[3].str(), flag));
    return {to_double(rational_arg(m[1].str(), flag)), m[2].str() == "-" ? -im : im};
  }
  return {to_double(rational_arg(s, flag)), 0.0};
}

double double_arg(const std::string& s, const char* flag) { return to_double(rational_arg(s, flag)); }

int sign_arg(const std::string& s) {
  if (s == "plus" || s == "+" || s == "+1" || s == "1") return 1;
  if (s == "minus" || s == "-" || s == "-1") return -1;
  throw UsageError("--sign must be plus or minus");
}

json lambda_json(cplx z) { return json::array({z.real(), z.imag()}); }

json family_json(const IdempotentFamily& fam) {
  json j;
  j["kind"] = fam.kind;
  j["n"] = fam.n;
  j["lambda"] = lambda_json(fam.lambda);
  j["dim"] = fam.dim;
  json params = json::object();
  for (const auto& [k, v] : fam.params) params[k] = v;
  j["params"] = std::move(params);
  j["truncated"] = fam.truncated();
  return j;
}

void append_checks(json& doc, const VerifyReport& rep, const std::string& prefix = "") {
  if (!doc.contains("checks")) doc["checks"] = json::array();
  for (const auto& c : rep.checks) {
    json j;
    j["relation"] = prefix + c.relation;
    j["residual"] = c.residual;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    doc["checks"].push_back(std::move(j));
  }
  doc["pass"] = doc.value("pass", true) && rep.pass;
}

struct Context {
  Options opt;
  std::uint64_t seed = kDefaultSeed;
  std::ostream& out;

  bool text() const { return opt.format == "text"; }

  json header(const std::string& command) const {
    json j;
    j["command"] = command;
    j["seed"] = seed;
    return j;
  }

  int emit(json doc) {
    if (!doc.contains("pass")) doc["pass"] = true;
    const bool pass = doc["pass"].get<bool>();
    // Keep "pass" as the final key so the document reads as a report.
    json ordered;
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "pass") ordered[it.key()] = it.value();
    ordered["pass"] = pass;
    out << ordered.dump(2) << '\n';
    return pass ? 0 : 1;
  }
};

IdempotentFamily build_family(const Options& o, std::optional<A40Rep>& a40) {
  const std::string& k = o.kind;
  if (k == "q1") return rep_q1_two_dim(double_arg(o.y, "y"));
  if (k == "p332") return rep_p3_32();
  if (k == "q2perp") {
    if (o.which != "first" && o.which != "second") throw UsageError("--which must be first or second");
    return rep_q2perp(double_arg(o.alpha, "alpha"), o.which == "first" ? Which::First : Which::Second);
  }
  if (k == "su2") {
    if (!o.lambda.empty()) return su2_family_at(rational_arg(o.lambda, "lambda"));
    return su2_family(o.k, sign_arg(o.sign));
  }
  if (k == "diagphipsi") return diag_phi_psi_family(complex_arg(o.lambda.empty() ? "0" : o.lambda, "lambda"), o.blocks);
  if (k == "cuntz5") return cuntz_five_family(complex_arg(o.lambda.empty() ? "0" : o.lambda, "lambda"), o.N);
  if (k == "orbitA40") {
    const auto c = parse_a40_case(o.a40case);
    if (!c) throw UsageError("--case must be one of I, II, III, IV, V");
    A40Params prm;
    if (!o.lambda.empty()) prm.lambda = rational_arg(o.lambda, "lambda");
    prm.a = rational_arg(o.a, "a");
    a40 = orbit_rep_a40(*c, prm, o.depth);
    return a40->family;
  }
  if (k == "sl2diff") {
    if (o.branch != 1 && o.branch != -1) throw UsageError("--branch must be 1 or -1");
    return sl2_diffop_family(complex_arg(o.lambda.empty() ? "3" : o.lambda, "lambda"), o.branch, o.d).family();
  }
  throw UsageError("unknown --kind '" + k + "'");
}

int cmd_family_build(Context& ctx) {
  const Options& o = ctx.opt;
  std::optional<A40Rep> a40;
  const IdempotentFamily fam = build_family(o, a40);
  json doc = ctx.header("family build");
  doc["family"] = family_json(fam);
  if (o.verify) {
    const double tol = o.tol.value_or(kRelationTol);
    append_checks(doc, relation_report(fam, tol));
    if (a40) append_checks(doc, pqrs_report(a40->quad, tol), "pqrs: ");
  }
  if (!o.out_dir.empty()) {
    save_family(o.out_dir, fam);
    doc["out"] = o.out_dir;
  }
  return ctx.emit(std::move(doc));
}

int cmd_family_verify(Context& ctx) {
  const IdempotentFamily fam = load_family(ctx.opt.manifest);
  json doc = ctx.header("family verify");
  doc["family"] = family_json(fam);
  append_checks(doc, relation_report(fam, ctx.opt.tol.value_or(kRelationTol)));
  return ctx.emit(std::move(doc));
}

std::string join(const std::vector<Rational>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + to_string(x);
  return s;
}

json rational_list(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

int cmd_lambda_set(Context& ctx) {
  const auto kind = parse_lambda_kind(ctx.opt.kind);
  if (!kind) throw UsageError("unknown --kind '" + ctx.opt.kind + "'");
  const LambdaSeq seq = lambda_set(ctx.opt.n, *kind, ctx.opt.count);
  if (ctx.text()) {
    ctx.out << join(seq.terms) << '\n';
    return 0;
  }
  json doc = ctx.header("lambda set");
  doc["n"] = seq.n;
  doc["kind"] = std::string(to_string(seq.kind));
  doc["terms"] = rational_list(seq.terms);
  return ctx.emit(std::move(doc));
}

std::string membership_text(const Lambda4Membership& m) {
  switch (m.tag) {
    case Lambda4Membership::Tag::Center: return "center";
    case Lambda4Membership::Tag::Absent: return "absent";
    case Lambda4Membership::Tag::Member:
      return "member k=" + std::to_string(m.k) + " sign=" + (m.sign > 0 ? "plus" : "minus");
  }
  return "?";
}

int cmd_lambda_member(Context& ctx) {
  const Rational q = rational_arg(ctx.opt.value, "value");
  const auto m = lambda4bd_member(q);
  if (ctx.text()) {
    ctx.out << membership_text(m) << '\n';
    return 0;
  }
  json doc = ctx.header("lambda member");
  doc["value"] = to_string(q);
  doc["status"] = m.tag == Lambda4Membership::Tag::Member   ? "member"
                  : m.tag == Lambda4Membership::Tag::Center ? "center"
                                                            : "absent";
  if (m.tag == Lambda4Membership::Tag::Member) {
    doc["k"] = m.k;
    doc["sign"] = m.sign;
  }
  return ctx.emit(std::move(doc));
}

int cmd_orbit_enum(Context& ctx) {
  const Orbit orb = orbit_enumerate(rational_arg(ctx.opt.orbit_seed, "seed"), ctx.opt.depth);
  if (ctx.text()) {
    ctx.out << join(orb.values()) << '\n';
    return 0;
  }
  json doc = ctx.header("orbit enum");
  doc["orbit_seed"] = to_string(orb.seed);
  doc["depth"] = orb.depth;
  json pts = json::array();
  for (const auto& p : orb.points) pts.push_back({{"value", to_string(p.value)}, {"word", p.word}});
  doc["points"] = std::move(pts);
  return ctx.emit(std::move(doc));
}

int cmd_orbit_fundamental(Context& ctx) {
  const Rational x = fundamental_point(rational_arg(ctx.opt.orbit_seed, "seed"), ctx.opt.depth);
  if (ctx.text()) {
    ctx.out << to_string(x) << '\n';
    return 0;
  }
  json doc = ctx.header("orbit fundamental");
  doc["orbit_seed"] = ctx.opt.orbit_seed;
  doc["point"] = to_string(x);
  return ctx.emit(std::move(doc));
}

int cmd_equiv_hom(Context& ctx) {
  const auto a = load_family(ctx.opt.path_a);
  const auto b = load_family(ctx.opt.path_b);
  const HomSpace h = hom_space(a, b, ctx.opt.star);
  json doc = ctx.header("equiv hom");
  doc["with_star"] = ctx.opt.star;
  doc["dim"] = h.dim;
  return ctx.emit(std::move(doc));
}

int cmd_equiv_unitarize(Context& ctx) {
  const auto fam = load_family(ctx.opt.path_a);
  std::mt19937_64 rng(ctx.seed);
  const Unitarization u = unitarize(fam, rng);
  json doc = ctx.header("equiv unitarize");
  doc["family"] = family_json(fam);
  doc["G_min_eig"] = u.min_eig;
  doc["G_max_eig"] = u.max_eig;
  doc["solution_dim"] = u.solution_dim;
  const double tol = ctx.opt.tol.value_or(1e-8);
  VerifyReport herm;
  for (int i = 0; i < u.star_fam.n; ++i) {
    const CMat& q = u.star_fam.q[static_cast<std::size_t>(i)];
    herm.add("q" + std::to_string(i + 1) + " = q" + std::to_string(i + 1) + "*", op_norm(q - q.adjoint()), tol);
  }
  append_checks(doc, herm);
  append_checks(doc, relation_report(u.star_fam, 1e-8));
  if (!ctx.opt.out_dir.empty()) {
    save_family(ctx.opt.out_dir, u.star_fam);
    doc["out"] = ctx.opt.out_dir;
  }
  return ctx.emit(std::move(doc));
}

Substitution random_substitution(Builder b, std::mt19937_64& rng, Index m) {
  return b == Builder::Wild2 ? random_unitary_substitution(rng, m) : random_hermitian_substitution(rng, m);
}

Builder builder_arg(const std::string& s) {
  const auto b = parse_builder(s);
  if (!b) throw UsageError("--builder must be wild1a, wild1b or wild2");
  return *b;
}

Rational wild_lambda(const Options& o, Builder b) {
  if (!o.lambda.empty()) return rational_arg(o.lambda, "lambda");
  return b == Builder::Wild2 ? Rational(5, 2) : b == Builder::Wild1a ? Rational(1) : Rational(3, 2);
}

int cmd_wild_build(Context& ctx) {
  const Builder b = builder_arg(ctx.opt.builder);
  if (ctx.opt.subdim < 1) throw UsageError("--subdim must be >= 1");
  std::mt19937_64 rng(ctx.seed);
  const Rational lambda = wild_lambda(ctx.opt, b);
  const Substitution sub = random_substitution(b, rng, ctx.opt.subdim);
  const PsiImage img = build_image(b, lambda, sub);
  json doc = ctx.header("wild build");
  doc["builder"] = img.builder;
  doc["lambda"] = to_string(img.lambda);
  doc["substitution_dim"] = sub.m;
  doc["N"] = img.N;
  doc["family"] = family_json(img.fam);
  const double tol = ctx.opt.tol.value_or(1e-8);
  append_checks(doc, relation_report(img.fam, tol));
  if (img.pqrs) append_checks(doc, pqrs_report(*img.pqrs, tol), "pqrs: ");
  if (img.j3) {
    VerifyReport iso;
    iso.add("J3* J3 = E5", op_norm(img.j3->j3.adjoint() * img.j3->j3 - identity(5 * sub.m)), 1e-10);
    append_checks(doc, iso);
  }
  if (!ctx.opt.out_dir.empty()) {
    json extra;
    extra["builder"] = img.builder;
    extra["substitution_dim"] = sub.m;
    extra["N"] = img.N;
    save_family(ctx.opt.out_dir, img.fam, extra);
    doc["out"] = ctx.opt.out_dir;
  }
  return ctx.emit(std::move(doc));
}

int cmd_wild_fullness(Context& ctx) {
  const Builder b = builder_arg(ctx.opt.builder);
  if (ctx.opt.trials < 1) throw UsageError("--trials must be >= 1");
  if (ctx.opt.subdim < 1) throw UsageError("--subdim must be >= 1");
  std::mt19937_64 rng(ctx.seed);
  const Rational lambda = wild_lambda(ctx.opt, b);
  std::uniform_int_distribution<int> dim(1, ctx.opt.subdim);
  json doc = ctx.header("wild fullness");
  doc["builder"] = std::string(to_string(b));
  doc["lambda"] = to_string(lambda);
  json trials = json::array();
  bool all = true;
  for (int t = 0; t < ctx.opt.trials; ++t) {
    const Index m1 = dim(rng);
    const Substitution pi1 = random_substitution(b, rng, m1);
    const bool conj = t % 2 == 0;
    const Substitution pi2 = conj ? conjugate(pi1, random_unitary(rng, m1)) : random_substitution(b, rng, dim(rng));
    const Fullness f = fullness_check(b, lambda, pi1, pi2);
    all = all && f.equal;
    trials.push_back({{"m1", pi1.m},
                      {"m2", pi2.m},
                      {"conjugate", conj},
                      {"dim_source", f.dim_source},
                      {"dim_target", f.dim_target},
                      {"equal", f.equal}});
  }
  doc["trials"] = std::move(trials);
  doc["pass"] = all;
  return ctx.emit(std::move(doc));
}

int cmd_identity_s4(Context& ctx) {
  const auto fam = load_family(ctx.opt.manifest);
  std::mt19937_64 rng(ctx.seed);
  const auto res = s4_identity_residuals(fam, ctx.opt.trials, ctx.opt.wordlen, rng);
  json doc = ctx.header("identity s4");
  doc["family"] = family_json(fam);
  VerifyReport rep;
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  rep.add("standard identity s4", worst, ctx.opt.tol.value_or(1e-9));
  doc["residuals"] = res;
  append_checks(doc, rep);
  return ctx.emit(std::move(doc));
}

std::vector<Rational> parse_grid(const std::string& g) {
  const auto c1 = g.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : g.find(':', c1 + 1);
  if (c2 == std::string::npos) throw UsageError("--grid must look like a:b:step");
  const Rational lo = rational_arg(g.substr(0, c1), "grid");
  const Rational hi = rational_arg(g.substr(c1 + 1, c2 - c1 - 1), "grid");
  const Rational step = rational_arg(g.substr(c2 + 1), "grid");
  if (step <= 0) throw UsageError("--grid step must be positive");
  if (hi < lo) throw UsageError("--grid upper end below lower end");
  std::vector<Rational> out;
  for (Rational x = lo; x <= hi; x += step) {
    out.push_back(x);
    if (out.size() > 100000) throw UsageError("--grid has too many points");
  }
  return out;
}

int cmd_scan_lambda4(Context& ctx) {
  const auto grid = parse_grid(ctx.opt.grid);
  json doc = ctx.header("scan lambda4");
  json pts = json::array();
  bool all = true;
  for (const auto& x : grid) {
    const auto m = lambda4bd_member(x);
    json p;
    p["lambda"] = to_string(x);
    p["member"] = membership_text(m);
    bool admits = false;
    std::string note;
    try {
      const auto fam = su2_family_at(x);
      admits = true;
      p["dim"] = fam.dim;
    } catch (const Error& e) {
      note = std::string(to_string(e.code()));
    }
    p["su2"] = admits;
    if (!note.empty()) p["error"] = note;
    // The center has no spin realization but belongs to the set.
    const bool expected = m.tag == Lambda4Membership::Tag::Member;
    const bool agree = admits == expected && (m.tag != Lambda4Membership::Tag::Center || note == "BadParameter");
    p["agree"] = agree;
    all = all && agree;
    pts.push_back(std::move(p));
  }
  doc["points"] = std::move(pts);
  doc["pass"] = all;
  return ctx.emit(std::move(doc));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Construct and verify families of idempotents summing to a scalar", "idemsum"};
  app.require_subcommand(1);
  std::uint64_t seed_flag = 0;
  double tol_flag = 0.0;
  std::string default_format;

  auto common = [&](CLI::App* s, bool with_seed) {
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--tol", tol_flag, "tolerance")->check(CLI::PositiveNumber);
    if (with_seed) s->add_option("--seed", seed_flag, "random seed");
  };

  auto* family = app.add_subcommand("family", "build or verify operator families");
  family->require_subcommand(1);
  auto* fbuild = family->add_subcommand("build", "construct a family");
  fbuild->add_option("--kind", o.kind, "q1|p332|q2perp|su2|diagphipsi|cuntz5|orbitA40|sl2diff")->required();
  fbuild->add_option("--y", o.y);
  fbuild->add_option("--alpha", o.alpha);
  fbuild->add_option("--which", o.which);
  fbuild->add_option("--k", o.k);
  fbuild->add_option("--sign", o.sign);
  fbuild->add_option("--lambda", o.lambda);
  fbuild->add_option("--blocks", o.blocks);
  fbuild->add_option("--N", o.N);
  fbuild->add_option("--case", o.a40case);
  fbuild->add_option("--a", o.a);
  fbuild->add_option("--depth", o.depth);
  fbuild->add_option("--branch", o.branch);
  fbuild->add_option("--d", o.d);
  fbuild->add_flag("--verify", o.verify);
  fbuild->add_option("--out", o.out_dir);
  common(fbuild, true);
  auto* fverify = family->add_subcommand("verify", "check the relations of a saved family");
  fverify->add_option("--manifest", o.manifest)->required();
  common(fverify, true);

  auto* lambda = app.add_subcommand("lambda", "parameter sets");
  lambda->require_subcommand(1);
  auto* lset = lambda->add_subcommand("set", "generate a parameter set");
  lset->add_option("--n", o.n);
  lset->add_option("--kind", o.kind, "l2|l3|l4bd|cf1|cf2|orb2|orbhalf")->required();
  lset->add_option("--count", o.count);
  common(lset, false);
  auto* lmember = lambda->add_subcommand("member", "membership in the bounded four-idempotent set");
  lmember->add_option("--value", o.value)->required();
  common(lmember, false);

  auto* orbit = app.add_subcommand("orbit", "orbits of x -> 1-x, x -> -1-x");
  orbit->require_subcommand(1);
  auto* oenum = orbit->add_subcommand("enum", "enumerate an orbit");
  oenum->add_option("--seed", o.orbit_seed)->required();
  oenum->add_option("--depth", o.depth)->required();
  common(oenum, false);
  auto* ofund = orbit->add_subcommand("fundamental", "orbit point in [-1/2, 1/2]");
  ofund->add_option("--seed", o.orbit_seed)->required();
  ofund->add_option("--depth", o.depth)->required();
  common(ofund, false);

  auto* equiv = app.add_subcommand("equiv", "intertwiners and unitarization");
  equiv->require_subcommand(1);
  auto* ehom = equiv->add_subcommand("hom", "intertwiner space dimension");
  ehom->add_option("--a", o.path_a)->required();
  ehom->add_option("--b", o.path_b)->required();
  ehom->add_flag("--star", o.star);
  common(ehom, true);
  auto* eunit = equiv->add_subcommand("unitarize", "find an equivalent family of orthoprojections");
  eunit->add_option("--a", o.path_a)->required();
  eunit->add_option("--out", o.out_dir);
  common(eunit, true);

  auto* wild = app.add_subcommand("wild", "images of free pairs");
  wild->require_subcommand(1);
  auto* wbuild = wild->add_subcommand("build", "build one image");
  wbuild->add_option("--builder", o.builder)->required();
  wbuild->add_option("--lambda", o.lambda);
  wbuild->add_option("--subdim", o.subdim)->required();
  wbuild->add_option("--out", o.out_dir);
  common(wbuild, true);
  auto* wfull = wild->add_subcommand("fullness", "compare intertwiner dimensions");
  wfull->add_option("--builder", o.builder)->required();
  wfull->add_option("--lambda", o.lambda);
  wfull->add_option("--trials", o.trials)->required();
  wfull->add_option("--subdim", o.subdim);
  common(wfull, true);

  auto* identity_cmd = app.add_subcommand("identity", "polynomial identities");
  identity_cmd->require_subcommand(1);
  auto* is4 = identity_cmd->add_subcommand("s4", "standard identity of degree 4");
  is4->add_option("--manifest", o.manifest)->required();
  is4->add_option("--trials", o.trials)->required();
  is4->add_option("--wordlen", o.wordlen)->required();
  common(is4, true);

  auto* scan = app.add_subcommand("scan", "parameter scans");
  scan->require_subcommand(1);
  auto* slam = scan->add_subcommand("lambda4", "which grid points admit the spin construction");
  slam->add_option("--grid", o.grid)->required();
  common(slam, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto given = [](CLI::App* s, const char* name) { return s->count(name) > 0; };
  std::uint64_t seed = kDefaultSeed;
  if (const char* env = std::getenv("IDEMSUM_SEED"); env && *env) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "IDEMSUM_SEED must be a non-negative integer\n";
      return 2;
    }
  }

  struct Route {
    CLI::App* app;
    int (*fn)(Context&);
    const char* default_format;
  };
  const std::vector<Route> routes{
      {fbuild, cmd_family_build, "json"},       {fverify, cmd_family_verify, "json"},
      {lset, cmd_lambda_set, "text"},           {lmember, cmd_lambda_member, "text"},
      {oenum, cmd_orbit_enum, "text"},          {ofund, cmd_orbit_fundamental, "text"},
      {ehom, cmd_equiv_hom, "json"},            {eunit, cmd_equiv_unitarize, "json"},
      {wbuild, cmd_wild_build, "json"},         {wfull, cmd_wild_fullness, "json"},
      {is4, cmd_identity_s4, "json"},           {slam, cmd_scan_lambda4, "json"},
  };
  for (const auto& r : routes) {
    if (!r.app->parsed()) continue;
    if (r.app->get_option_no_throw("--seed") && given(r.app, "--seed")) seed = seed_flag;
    if (given(r.app, "--tol")) o.tol = tol_flag;
    if (o.format.empty()) o.format = r.default_format;
    Context ctx{o, seed, out};
    try {
      return r.fn(ctx);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      json doc = ctx.header(std::string(r.app->get_parent()->get_name()) + " " + r.app->get_name());
      doc["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
      doc["pass"] = false;
      err << e.what() << '\n';
      return ctx.emit(std::move(doc));
    }
  }
  err << "no command given\n";
  return 2;
}

}  // namespace idemsum::cli
