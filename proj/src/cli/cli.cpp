#include "copcone/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "copcone/bounds.hpp"
#include "copcone/cones.hpp"
#include "copcone/error.hpp"
#include "copcone/extremal.hpp"
#include "copcone/factor.hpp"
#include "copcone/io.hpp"
#include "copcone/linalg.hpp"

namespace copcone {

namespace {

using nlohmann::json;

json vec_json(const Vec& v) { return json(v); }

json factor_json(const NonnegFactor& v) { return to_json(v.matrix()); }

json certificate_json(const Certificate& c) {
  return std::visit(
      [](const auto& cert) -> json {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, ViolationVector>) {
          return {{"type", "violation_vector"}, {"x", vec_json(cert.x)}, {"value", cert.value}};
        } else if constexpr (std::is_same_v<T, NegativeEntry>) {
          return {{"type", "negative_entry"}, {"row", cert.row}, {"col", cert.col}, {"value", cert.value}};
        } else if constexpr (std::is_same_v<T, BoundaryZero>) {
          return {{"type", "boundary_zero"}, {"x", vec_json(cert.x)}, {"value", cert.value}};
        } else if constexpr (std::is_same_v<T, FactorCertificate>) {
          return {{"type", "factor"}, {"factor", factor_json(cert.factor)}, {"residual", cert.residual}};
        } else {
          return {{"type", "interior"},
                  {"factor", factor_json(cert.factor)},
                  {"positive_column", cert.positive_column},
                  {"rank", cert.rank}};
        }
      },
      c);
}

json bound_json(const BoundEntry& e) {
  return {{"value", e.value}, {"rule", std::string(to_string(e.rule))}, {"witness", e.witness}};
}

json witness_json(const OrbitWitness& w) { return {{"d", vec_json(w.d)}, {"perm", w.perm}}; }

// Shared state of one invocation.
struct Context {
  std::vector<std::string> args;
  Tolerance tol;
  bool timing = false;
  json report;
  std::ostream& out;
  std::ostream& err;

  void input(const std::string& path, const MatrixFile& f) { report["inputs"][path] = f.digest; }
};

SymMat require_matrix(const MatrixFile& f, const std::string& path) {
  if (!f.matrix) throw DataError(path + ": no \"data\" matrix");
  return *f.matrix;
}

int cmd_check(Context& ctx, const std::string& path, const std::string& cone, int max_depth) {
  const MatrixFile f = read_matrix_file(path);
  ctx.input(path, f);
  const SymMat a = require_matrix(f, path);
  ConeVerdict v;
  if (cone == "nonneg") v = is_nonneg(a, ctx.tol);
  else if (cone == "psd") v = is_psd(a, ctx.tol);
  else if (cone == "dnn") v = is_dnn(a, ctx.tol);
  else v = is_copositive(a, ctx.tol, max_depth);

  json verdict{{"cone", std::string(to_string(v.cone))},
               {"answer", std::string(to_string(v.answer))},
               {"certificate", certificate_json(v.certificate)}};
  if (cone == "copositive") {
    verdict["stats"] = {{"cells", v.stats.cells},
                        {"exact_leaves", v.stats.exact_leaves},
                        {"undecided_leaves", v.stats.undecided_leaves},
                        {"deepest", v.stats.deepest},
                        {"max_depth", max_depth}};
  }
  ctx.report["verdict"] = verdict;
  switch (v.answer) {
    case Answer::In: return kExitIn;
    case Answer::NotIn: return kExitNotIn;
    case Answer::Undecided: return kExitUndecided;
  }
  return kExitUndecided;
}

int cmd_factorize(Context& ctx, const std::string& path, const std::string& method, int target,
                  int restarts, std::uint64_t seed) {
  const MatrixFile f = read_matrix_file(path);
  ctx.input(path, f);
  json r{{"method", method}};

  std::optional<NonnegFactor> v;
  SymMat m(1);
  if (method == "horn6") {
    if (!f.factor) throw DataError(path + ": horn6 needs a \"factor\" V with M = V V^T");
    m = f.matrix ? *f.matrix : f.factor->product();
    v = horn_orthogonal_factorize(*f.factor, ctx.tol);
  } else {
    m = require_matrix(f, path);
    if (method == "dd") {
      v = dd_factorize(m, ctx.tol);
    } else if (method == "posdd") {
      PositiveDdResult p = positive_dd_factorize(m, ctx.tol);
      r["interior"] = certificate_json(p.certificate);
      v = std::move(p.factor);
    } else if (method == "cp3") {
      v = cp3_factorize(m, ctx.tol);
    } else {
      if (target < 1) throw CLI::ValidationError("--target", "heuristic needs --target p >= 1");
      HeuristicOptions opt;
      opt.restarts = restarts;
      opt.seed = seed;
      if (f.factor) opt.seed_factor = f.factor;
      v = heuristic_min_factor(m, static_cast<std::size_t>(target), opt, ctx.tol);
      r["target"] = target;
      if (!v) {
        r["answer"] = "FAILED";
        ctx.report["factorization"] = r;
        return kExitUndecided;
      }
    }
  }
  const double res = v->residual(m);
  r["answer"] = "FACTORED";
  r["columns"] = v->cols();
  r["certificate"] = certificate_json(FactorCertificate{*v, res});
  ctx.report["factorization"] = r;
  return kExitIn;
}

int cmd_bounds(Context& ctx, const std::string& path, int n, const std::vector<std::string>& witness_paths,
               const std::string& factor_path, bool shift) {
  if (path.empty()) {
    if (n < 1) throw CLI::ValidationError("bounds", "give a matrix file or --n N");
    const PnInterval k = known_pn_interval(n);
    json t{{"n", n}, {"djl_lower", djl_lower(n)}, {"babe", babe(n)},
           {"known_interval", {k.lower, k.upper}}, {"best_interval", {k.lower, k.upper}}};
    if (n >= 5) t["pn_star_upper"] = known_pn_star_upper(n);
    ctx.report["table"] = t;
    return kExitIn;
  }
  const MatrixFile f = read_matrix_file(path);
  ctx.input(path, f);
  const SymMat m = require_matrix(f, path);
  std::optional<NonnegFactor> v = f.factor;
  if (!factor_path.empty()) {
    const MatrixFile fv = read_matrix_file(factor_path);
    ctx.input(factor_path, fv);
    if (!fv.factor) throw DataError(factor_path + ": no \"factor\"");
    v = fv.factor;
  }
  std::vector<SymMat> witnesses;
  for (const auto& wp : witness_paths) {
    const MatrixFile fa = read_matrix_file(wp);
    ctx.input(wp, fa);
    witnesses.push_back(require_matrix(fa, wp));
  }
  const BoundReport b = cp_rank_interval(m, v, witnesses, ctx.tol);
  json uppers = json::array();
  for (const auto& e : b.uppers) uppers.push_back(bound_json(e));
  ctx.report["bounds"] = {{"n", b.n},
                          {"lower", bound_json(b.lower)},
                          {"uppers", uppers},
                          {"best_interval", {b.best_lower, b.best_upper}}};
  if (shift) {
    const BoundaryShift s = psd_boundary_shift(m, ctx.tol);
    ctx.report["boundary_shift"] = {{"delta", s.delta}, {"matrix", to_json(s.m)}};
  }
  return kExitIn;
}

int cmd_orbit(Context& ctx, const std::string& path) {
  const MatrixFile f = read_matrix_file(path);
  ctx.input(path, f);
  const ExtremeClass c = classify_rank12(require_matrix(f, path), ctx.tol);
  json r{{"class", std::string(to_string(c.tag))}, {"rank", c.rank}};
  if (c.witness) r["witness"] = witness_json(*c.witness);
  if (c.reference) r["reference"] = to_json(*c.reference);
  if (c.root) r["root"] = vec_json(*c.root);
  ctx.report["orbit"] = r;
  return c.tag == ExtremeTag::Unknown ? kExitNotIn : kExitIn;
}

int cmd_verify_orth(Context& ctx, const std::string& pm, const std::string& pa, const std::string& pv) {
  const MatrixFile fm = read_matrix_file(pm);
  ctx.input(pm, fm);
  const MatrixFile fa = read_matrix_file(pa);
  ctx.input(pa, fa);
  const SymMat m = require_matrix(fm, pm);
  const SymMat a = require_matrix(fa, pa);
  if (m.order() != a.order()) throw DataError("M and A have different orders");
  std::optional<NonnegFactor> v = fm.factor;
  if (!pv.empty()) {
    const MatrixFile fv = read_matrix_file(pv);
    ctx.input(pv, fv);
    if (!fv.factor) throw DataError(pv + ": no \"factor\"");
    v = fv.factor;
  }

  bool ok = true;
  json r;
  const OrthColumnResult oc = orth_column_check(m, a, ctx.tol);
  r["orth_column"] = {{"guard_ok", oc.guard_ok},
                      {"inner", oc.inner},
                      {"defect", oc.defect},
                      {"status", std::string(to_string(oc.status))}};
  ok = ok && oc.status == CheckStatus::Pass;

  try {
    const AntiDdResult ad = anti_dd_check(m, a, ctx.tol);
    json rows = json::array();
    for (bool b : ad.rows) rows.push_back(b ? "PASS" : "FAIL");
    r["anti_dd"] = {{"guard_ok", ad.guard_ok}, {"rows", rows}, {"scaled", to_json(ad.scaled)}};
    ok = ok && ad.guard_ok && ad.all_pass;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroRow) throw;
    r["anti_dd"] = {{"status", "SKIP"}, {"reason", std::string(to_string(e.code()))}};
  }

  if (v) {
    if (v->order() != m.order() || v->residual(m) > ctx.tol.threshold(m.max_abs()))
      throw Error(ErrorCode::FactorMismatch, "V V^T does not reproduce M");
    json ns = json::array();
    for (std::size_t i = 0; i < m.order(); ++i) {
      const OrthNullspaceResult n = orth_nullspace_check(m, a, *v, i, ctx.tol);
      ns.push_back({{"index", i}, {"status", std::string(to_string(n.status))}, {"value", n.value}});
      ok = ok && (n.status == CheckStatus::Pass || n.status == CheckStatus::Skip);
    }
    r["nullspace"] = ns;
  }

  const Rank3Result r3 = rank3_witness_check(m, a, ctx.tol);
  r["rank3"] = {{"guard",
                 {{"m_positive", r3.m_positive}, {"m_nonsingular", r3.m_nonsingular}, {"orthogonal", r3.orthogonal}}},
                {"rank_a", r3.rank_a},
                {"e12_block", r3.e12_block},
                {"status", r3.pass ? "PASS" : "FAIL"}};
  ctx.report["verify_orth"] = r;
  return ok ? kExitIn : kExitNotIn;
}

std::optional<double> env_tolerance() {
  const char* s = std::getenv("COPCONE_TOL");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (*end != '\0' || !(v >= 0.0)) throw CLI::ValidationError("COPCONE_TOL", "not a nonnegative number");
  return v;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copositive and completely positive matrix toolkit", "copcone"};
  app.require_subcommand(1);
  Context ctx{args, {}, false, json::object(), out, err};

  double tol_flag = -1.0;
  app.add_option("--tol", tol_flag, "Absolute and relative tolerance (overrides COPCONE_TOL)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", ctx.timing, "Add wall time to the report");

  std::string path, path2, cone = "copositive", method, factor_path;
  int max_depth = kDefaultMaxDepth, target = 0, restarts = 12, n = 0;
  std::uint64_t seed = 20140101;
  std::vector<std::string> witnesses;
  bool shift = false;

  auto* check = app.add_subcommand("check", "Cone membership with certificate");
  check->add_option("file", path, "Matrix file")->required();
  check->add_option("--cone", cone, "Cone")
      ->check(CLI::IsMember({"nonneg", "psd", "copositive", "dnn"}))
      ->capture_default_str();
  check->add_option("--max-depth", max_depth, "Subdivision depth for copositivity")
      ->check(CLI::Range(1, 200))
      ->capture_default_str();

  auto* fact = app.add_subcommand("factorize", "Nonnegative factorization M = V V^T");
  fact->add_option("file", path, "Matrix file")->required();
  fact->add_option("--method", method, "Construction")
      ->required()
      ->check(CLI::IsMember({"dd", "posdd", "horn6", "cp3", "heuristic"}));
  fact->add_option("--target", target, "Column count for heuristic")->check(CLI::PositiveNumber);
  fact->add_option("--restarts", restarts, "Heuristic restarts")->check(CLI::NonNegativeNumber)->capture_default_str();
  fact->add_option("--seed", seed, "Heuristic RNG seed")->capture_default_str();

  auto* bnd = app.add_subcommand("bounds", "cp-rank bounds");
  bnd->add_option("file", path, "Matrix file");
  bnd->add_option("--n", n, "Table mode: bracket for order n")->check(CLI::PositiveNumber);
  bnd->add_option("--witness", witnesses, "Copositive matrix orthogonal to M (repeatable)");
  bnd->add_option("--factor", factor_path, "Nonnegative factor of M");
  bnd->add_flag("--boundary-shift", shift, "Report the PSD boundary shift along e_n e_n^T");

  auto* orb = app.add_subcommand("orbit", "Classify an extreme copositive matrix");
  orb->add_option("file", path, "Matrix file")->required();

  auto* vo = app.add_subcommand("verify-orth", "Checks for an orthogonal pair (M, A)");
  vo->add_option("m", path, "cp matrix M")->required();
  vo->add_option("a", path2, "copositive matrix A")->required();
  vo->add_option("--factor", factor_path, "Nonnegative factor of M");

  const auto started = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (auto e = env_tolerance()) ctx.tol = {*e, *e};
    if (tol_flag >= 0.0) ctx.tol = {tol_flag, tol_flag};
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  ctx.report["command"] = args;
  ctx.report["inputs"] = json::object();
  ctx.report["tolerance"] = {{"abs", ctx.tol.abs}, {"rel", ctx.tol.rel}};
  int code = 0;
  try {
    if (*check) code = cmd_check(ctx, path, cone, max_depth);
    else if (*fact) code = cmd_factorize(ctx, path, method, target, restarts, seed);
    else if (*bnd) code = cmd_bounds(ctx, path, n, witnesses, factor_path, shift);
    else if (*orb) code = cmd_orbit(ctx, path);
    else code = cmd_verify_orth(ctx, path, path2, factor_path);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << e.what() << "\n";
    ctx.report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    code = kExitNotIn;
  }
  if (ctx.timing)
    ctx.report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out << canonical_json(ctx.report);
  return code;
}

}  // namespace copcone
