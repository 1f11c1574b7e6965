// Batch front-end over the asai library. JSON in, JSON out.
//
// Exit codes: 0 pass, 1 property failure, 2 validation error, 3 precision exhausted.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "asai/json_io.hpp"
#include "asai/suite.hpp"

using namespace asai;

namespace {

enum Exit { kPass = 0, kFail = 1, kInvalid = 2, kPrecision = 3 };

long default_precision() {
  if (const char* s = std::getenv("ASAI_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw ValidationError("ASAI_PRECISION must be a positive integer");
  }
  return 40;
}

json to_json_report(const PipelineReport& rep) {
  json st = json::array();
  for (const auto& s : rep.stages) st.push_back({{"stage", s.stage}, {"pass", s.pass}, {"detail", s.detail}});
  return {{"pass", rep.pass()}, {"failed_stage", rep.failed_stage.empty() ? json(nullptr) : json(rep.failed_stage)},
          {"stages", st}};
}

json valuation_json(long v) { return v >= kInf ? json(nullptr) : json(v); }

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

// --- gen-tower

struct GenTowerOpts {
  std::string eigen, out, measure_out;
  long p = 5, k = 2, R = 3, points = 5, N = 0;
  uint64_t seed = 0;
};

int cmd_gen_tower(const GenTowerOpts& o) {
  EigenData e;
  if (!o.eigen.empty()) {
    e = eigen_from_json(read_json_file(o.eigen), o.N);
  } else {
    e = demo_eigen(make_ctx(o.p, (int)o.N), o.k);
    e.validate();
  }
  std::mt19937_64 rng(o.seed);
  FiniteMeasure mu = random_measure(e.ctx, rng, o.points, o.R + 2);
  Tower tw = gen_from_measure(mu, e, o.R);
  tw.seed = o.seed;
  write_json_file(o.out, to_json(tw));
  if (!o.measure_out.empty()) write_json_file(o.measure_out, to_json(mu));
  return kPass;
}

// --- patch

struct PatchOpts {
  std::string tower, out, delta = "all";
  bool check = false;
  long N = 0;
};

int cmd_patch(const PatchOpts& o) {
  Tower tw = tower_from_json(read_json_file(o.tower), o.N);
  if (tw.ctx()->N < required_precision(tw.eigen, tw.R))
    throw PrecisionError("tower precision is below the requirement for R = " + std::to_string(tw.R));
  std::vector<long> deltas;
  if (o.delta != "all") {
    long d = std::stol(o.delta);
    if (d < 0 || d >= tw.p() - 1) throw ValidationError("--delta out of range");
    deltas = {d};
  }
  PatchRun run = run_patch(tw, deltas);
  write_json_file(o.out, to_json(run.final));
  if (!o.check) return kPass;
  PolylemReport pl = check_polylem(run);
  json coh = json::object();
  for (const auto& [d, v] : run.coherence) {
    json a = json::array();
    for (long x : v) a.push_back(valuation_json(x));
    coh[std::to_string(d)] = a;
  }
  json rep = {{"polylem",
               {{"pass", pl.pass},
                {"bounded_margin", valuation_json(pl.bounded_margin)},
                {"congruence_margin", valuation_json(pl.congruence_margin)},
                {"alternating_margin", valuation_json(pl.alternating_margin)}}},
              {"coherence", coh},
              {"admissibility", {{"h_inf", run.admissibility.h_inf}, {"violated", run.admissibility.violated}}}};
  std::cerr << rep.dump(2) << "\n";
  return pl.pass ? kPass : kFail;
}

// --- interp

struct InterpOpts {
  std::string dist, tower, theta;
  long j = 0, N = 0;
};

int cmd_interp(const InterpOpts& o) {
  Tower tw = tower_from_json(read_json_file(o.tower), o.N);
  Distribution d = distribution_from_json(read_json_file(o.dist), tw.ctx()->N);
  if (d.ctx->p != tw.p()) throw ValidationError("distribution and tower use different primes");
  d.ctx = tw.ctx();
  json tj;
  try {
    tj = json::parse(o.theta);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("--theta: ") + e.what());
  }
  DirichletChar th = char_from_json(tw.p(), tj);
  InterpReport ir = interpolation_check(d, tw, th, o.j);
  json rep = {{"pass", ir.pass},
              {"precision", valuation_json(ir.precision)},
              {"lhs", to_json(ir.lhs)},
              {"rhs", to_json(ir.rhs)}};
  std::cout << rep.dump(2) << "\n";
  return ir.pass ? kPass : kFail;
}

// --- remove-c

struct RemoveCOpts {
  std::string dist, eigen, out;
  long D = -1, N = 0;
};

int cmd_remove_c(const RemoveCOpts& o) {
  EigenData e = eigen_from_json(read_json_file(o.eigen), o.N);
  Distribution d = distribution_from_json(read_json_file(o.dist), e.ctx->N);
  d.ctx = e.ctx;
  long D = o.D;
  if (D < 0)
    for (const auto& c : d.comp) D = std::max(D, c.size() - 1);
  RemoveCResult res = remove_c_report(d, e, std::max(D, 0L));
  json out = to_json(res.d);
  json mero = json::array();
  for (size_t i = 0; i < res.meromorphic.size(); ++i)
    if (res.meromorphic[i]) mero.push_back(i);
  out["meromorphic"] = mero;
  write_json_file(o.out, out);
  if (!mero.empty()) {
    std::cerr << "meromorphic components: " << mero.dump() << "\n";
    return kFail;
  }
  return kPass;
}

// --- logmatrix

struct LogMatrixOpts {
  long p = 3, k = 1, levels = 3, N = 0;
  std::string a = "3^1*[1]", v = "1", out;
  bool check = false;
};

json mat_json(const Mat2& M) {
  json out = json::array();
  for (const auto& e : M.e) out.push_back(to_json(e));
  return out;
}

int cmd_logmatrix(const LogMatrixOpts& o) {
  Ctx ctx = make_ctx(o.p, (int)o.N);
  // Command-line literals are exact: the digit list is the value, not a precision claim.
  auto exact = [&](const std::string& s) { return PadicElt(ctx, PadicElt::parse(ctx, s).lift()); };
  LogMatrixData d{ctx, o.k, exact(o.a), exact(o.v)};
  d.validate();
  LogMatrixRun run = run_logmatrix(d, o.levels);
  json out = {{"p", o.p}, {"N", o.N}, {"k", o.k}, {"a", to_json(d.a)}, {"v", to_json(d.v)}, {"levels", o.levels}};
  json Ms = json::array();
  for (const auto& M : run.M) Ms.push_back(mat_json(M));
  out["M"] = Ms;
  int code = kPass;
  if (o.check) {
    LogMatrixReport r = check_properties(run);
    json div = json::array();
    for (const auto& x : r.divisibility) div.push_back({{"n", x[0]}, {"n2", x[1]}, {"val", valuation_json(x[2])}});
    json eig = json::array();
    for (const auto& x : r.eigen)
      eig.push_back({{"r", x[0]}, {"j", x[1]}, {"col", x[2]}, {"digits", valuation_json(x[3])}});
    out["check"] = {{"pass", r.pass()},
                    {"det_identity", r.det_identity},
                    {"det_unit", r.det_unit},
                    {"cauchy", r.cauchy},
                    {"divisibility", div},
                    {"divisibility_pass", r.divisibility_pass},
                    {"v_alpha", r.v_alpha.to_double()},
                    {"v_beta", r.v_beta.to_double()},
                    {"growth_alpha", r.growth_alpha.estimate},
                    {"growth_beta", r.growth_beta.estimate},
                    {"growth_pass", r.growth_pass},
                    {"eigen", eig},
                    {"eigen_failed", r.eigen_failed}};
    if (!r.pass() || r.eigen_failed) code = kFail;
  }
  write_json_file(o.out, out);
  return code;
}

// --- synthesize / decompose / roundtrip

struct SynthOpts {
  std::string sharp, flat, eigen, out_la, out_lb;
  long n = 2, D = -1, N = 0;
};

long default_D(const SplitEigenData& sd, long n, long deg) {
  return (sd.k + 1) * (sd.ctx->ppow(n).get_si() - 1) + std::max(deg, 0L);
}

int cmd_synthesize(const SynthOpts& o) {
  SplitEigenData sd = split_from_json(read_json_file(o.eigen), o.N);
  Distribution s = distribution_from_json(read_json_file(o.sharp), sd.ctx->N);
  Distribution f = distribution_from_json(read_json_file(o.flat), sd.ctx->N);
  s.ctx = f.ctx = sd.ctx;
  long deg = 0;
  for (const auto* d : {&s, &f})
    for (const auto& c : d->comp) deg = std::max(deg, c.size() - 1);
  long D = o.D >= 0 ? o.D : default_D(sd, o.n, deg);
  SynthPair sp = synthesize(s, f, sd, o.n, D);
  write_json_file(o.out_la, to_json(sp.L_alpha));
  write_json_file(o.out_lb, to_json(sp.L_beta));
  std::cerr << json{{"D", D},
                    {"v_alpha", sp.v_alpha.to_double()},
                    {"v_beta", sp.v_beta.to_double()},
                    {"growth_alpha", sp.growth_alpha.estimate},
                    {"growth_beta", sp.growth_beta.estimate}}
                   .dump()
            << "\n";
  return kPass;
}

struct DecomposeOpts {
  std::string la, lb, eigen, out;
  long n = 2, D = -1, N = 0;
};

int cmd_decompose(const DecomposeOpts& o) {
  SplitEigenData sd = split_from_json(read_json_file(o.eigen), o.N);
  QuadDistribution la = quad_distribution_from_json(sd.ctx, read_json_file(o.la));
  QuadDistribution lb = quad_distribution_from_json(sd.ctx, read_json_file(o.lb));
  // Both inputs are re-expressed over the field of the product polynomial.
  QField f = build_Q(sd.product_data()).f;
  for (auto* q : {&la, &lb}) {
    q->f = f;
    for (auto& c : q->comp) c.f = f;
  }
  long D = o.D;
  if (D < 0)
    for (const auto* q : {&la, &lb})
      for (const auto& c : q->comp) D = std::max(D, c.size() - 1);
  SignedPair sp = decompose(la, lb, sd, o.n, D);
  json out = {{"sharp", to_json(sp.sharp)},
              {"flat", to_json(sp.flat)},
              {"diagnostics",
               {{"rational", sp.diag.rational},
                {"det_unit", sp.diag.det_unit},
                {"min_val", valuation_json(sp.diag.min_val)},
                {"precision", valuation_json(sp.diag.precision)},
                {"mismatch", sp.diag.mismatch}}}};
  write_json_file(o.out, out);
  return sp.diag.mismatch ? kFail : kPass;
}

int cmd_roundtrip(const RoundTripConfig& cfg) {
  RoundTripReport r = run_roundtrip(cfg);
  json out = {{"pass", r.pass()},          {"pairs", r.pairs},
              {"recovered", r.recovered},  {"valid_flagged", r.valid_flagged},
              {"faults", r.faults},        {"faults_flagged", r.faults_flagged},
              {"det_unit", r.det_unit},    {"min_precision", valuation_json(r.min_precision)},
              {"D", r.D}};
  std::cout << out.dump(2) << "\n";
  return r.pass() ? kPass : kFail;
}

// --- euler / stab-check

struct EulerOpts {
  std::string tag, roots;
  long xmax = 50, aux = 0;
  uint64_t seed = 0;
};

int cmd_euler(const EulerOpts& o) {
  json j = read_json_file(o.roots);
  std::string tag = o.tag.empty() ? j.value("tag", std::string("split")) : o.tag;
  long q = j.value("q", 0L);
  if (q < 2 || !is_prime(q)) throw ValidationError("roots.json needs a prime 'q'");
  std::vector<mpq_class> roots;
  for (const auto& r : j.at("roots")) {
    mpq_class x(r.is_string() ? r.get<std::string>() : r.dump());
    x.canonicalize();
    roots.push_back(x);
  }
  LocalFactor F = asai_local_factor(tag, q, roots, j.value("k", -1L));
  EulerModel model;
  model[q] = F;
  if (o.aux) {
    if (o.aux == q || !is_prime(o.aux)) throw ValidationError("--aux must be a prime different from q");
    EulerModel extra = two_prime_model(q, o.aux, std::max(j.value("k", 0L), 0L), o.seed);
    model[o.aux] = extra[o.aux];
  }
  EulerCheckReport rep = euler_check(model, o.xmax);
  DirichletSeries table = multiplicative_table(model, o.xmax);
  json coeffs = json::array();
  for (long n = 1; n <= o.xmax; ++n) coeffs.push_back(table.a[n].get_str());
  json out = {{"factor", to_json(F)},
              {"xmax", o.xmax},
              {"coefficients", coeffs},
              {"pass", rep.pass()},
              {"first_bad", rep.first_bad}};
  std::cout << out.dump(2) << "\n";
  return rep.pass() ? kPass : kFail;
}

struct StabOpts {
  std::string alpha = "1";
  long p = 5, aux = 3, k = 0, xmax = 50;
  uint64_t seed = 0;
};

int cmd_stab(const StabOpts& o) {
  mpq_class alpha(o.alpha);
  alpha.canonicalize();
  EulerModel m = two_prime_model(o.p, o.aux, o.k, o.seed);
  StabReport r = stabilization_identity_check(m, o.p, alpha, o.xmax);
  json out = {{"p", o.p},
              {"aux", o.aux},
              {"alpha", alpha.get_str()},
              {"xmax", o.xmax},
              {"geometric_identity", r.geometric_identity},
              {"theta_insensitive", r.theta_insensitive},
              {"first_bad", r.first_bad},
              {"pass", r.pass()}};
  std::cout << out.dump(2) << "\n";
  return r.pass() ? kPass : kFail;
}

// --- invariants / pipeline

struct InvariantOpts {
  long N = 0;
  uint64_t seed = 0;
  std::string filter;
};

int cmd_invariants(const InvariantOpts& o) {
  std::vector<GridCase> cases = run_invariants(o.N, o.seed, o.filter);
  if (cases.empty()) throw ValidationError("no case matches the filter");
  std::cout << "1.." << cases.size() << "\n";
  bool fail = false, exhausted = false;
  for (size_t i = 0; i < cases.size(); ++i) {
    const GridCase& c = cases[i];
    bool ok = c.status == "ok";
    std::cout << (ok ? "ok " : "not ok ") << i + 1 << " - " << c.name;
    if (!ok) std::cout << " # " << c.status << (c.detail.empty() ? "" : ": " + c.detail);
    std::cout << "\n";
    fail |= c.status == "fail";
    exhausted |= c.status == "precision-exhausted";
  }
  return fail ? kFail : exhausted ? kPrecision : kPass;
}

struct PipelineOpts {
  PipelineConfig cfg;
  std::string fault, out;
};

int cmd_pipeline(PipelineOpts o) {
  if (!o.fault.empty()) {
    std::vector<long> f = parse_list(o.fault);
    if (f.size() != 4) throw ValidationError("--fault expects j,r,t,M");
    o.cfg.fault = true;
    o.cfg.fault_j = f[0], o.cfg.fault_r = f[1], o.cfg.fault_t = f[2], o.cfg.fault_M = f[3];
  }
  PipelineReport rep = run_pipeline(o.cfg);
  write_json_file(o.out, to_json_report(rep));
  return rep.pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic Asai distributions: patching, interpolation, log matrices and signed decomposition"};
  app.require_subcommand(1);
  long N = 0;
  try {
    N = default_precision();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }

  GenTowerOpts gt;
  gt.N = N;
  auto* c_gen = app.add_subcommand("gen-tower", "Tower of a seeded random Dirac comb");
  c_gen->add_option("--eigen", gt.eigen, "eigen.json (otherwise a demo eigen system for --p/--k)");
  c_gen->add_option("--p", gt.p);
  c_gen->add_option("--k", gt.k);
  c_gen->add_option("--R", gt.R);
  c_gen->add_option("--points", gt.points, "maximum number of support points");
  c_gen->add_option("--seed", gt.seed);
  c_gen->add_option("--N", gt.N, "digits of precision");
  c_gen->add_option("--out", gt.out, "output file (stdout when omitted)");
  c_gen->add_option("--measure-out", gt.measure_out, "also write the generating measure");

  PatchOpts pa;
  pa.N = N;
  auto* c_patch = app.add_subcommand("patch", "Patch a tower into a distribution");
  c_patch->add_option("--tower", pa.tower)->required();
  c_patch->add_option("--out", pa.out);
  c_patch->add_option("--delta", pa.delta, "all or a single index");
  c_patch->add_flag("--check", pa.check, "report the patching lemma conditions");
  c_patch->add_option("--N", pa.N);

  InterpOpts in;
  in.N = N;
  auto* c_interp = app.add_subcommand("interp", "Check the interpolation identity at u^j theta");
  c_interp->add_option("--dist", in.dist)->required();
  c_interp->add_option("--tower", in.tower)->required();
  c_interp->add_option("--theta", in.theta, R"(e.g. {"r":2,"delta_power":0,"wild_exp":1})")->required();
  c_interp->add_option("--j", in.j);
  c_interp->add_option("--N", in.N);

  RemoveCOpts rc;
  rc.N = N;
  auto* c_rem = app.add_subcommand("remove-c", "Divide out the c-factor");
  c_rem->add_option("--dist", rc.dist)->required();
  c_rem->add_option("--eigen", rc.eigen)->required();
  c_rem->add_option("--D", rc.D, "truncation degree");
  c_rem->add_option("--out", rc.out);
  c_rem->add_option("--N", rc.N);

  LogMatrixOpts lm;
  lm.N = N;
  auto* c_lm = app.add_subcommand("logmatrix", "Build M^(n) and check its properties");
  c_lm->add_option("--p", lm.p);
  c_lm->add_option("--k", lm.k);
  c_lm->add_option("--a", lm.a);
  c_lm->add_option("--v", lm.v);
  c_lm->add_option("--levels", lm.levels);
  c_lm->add_flag("--check", lm.check);
  c_lm->add_option("--out", lm.out);
  c_lm->add_option("--N", lm.N);

  SynthOpts sy;
  sy.N = N;
  auto* c_syn = app.add_subcommand("synthesize", "Build (L_alpha, L_beta) from a signed pair");
  c_syn->add_option("--sharp", sy.sharp)->required();
  c_syn->add_option("--flat", sy.flat)->required();
  c_syn->add_option("--eigen", sy.eigen, "split.json")->required();
  c_syn->add_option("--n", sy.n);
  c_syn->add_option("--D", sy.D);
  c_syn->add_option("--out-la", sy.out_la)->required();
  c_syn->add_option("--out-lb", sy.out_lb)->required();
  c_syn->add_option("--N", sy.N);

  DecomposeOpts de;
  de.N = N;
  auto* c_dec = app.add_subcommand("decompose", "Recover the signed pair from (L_alpha, L_beta)");
  c_dec->add_option("--la", de.la)->required();
  c_dec->add_option("--lb", de.lb)->required();
  c_dec->add_option("--eigen", de.eigen, "split.json")->required();
  c_dec->add_option("--n", de.n);
  c_dec->add_option("--D", de.D);
  c_dec->add_option("--out", de.out);
  c_dec->add_option("--N", de.N);

  RoundTripConfig rt;
  rt.N = std::max(N, 80L);
  rt.pairs = 20;
  auto* c_rt = app.add_subcommand("roundtrip", "Synthesize and decompose random bounded pairs");
  c_rt->add_option("--seed", rt.seed);
  c_rt->add_option("--p", rt.p);
  c_rt->add_option("--k", rt.k);
  c_rt->add_option("--n", rt.n);
  c_rt->add_option("--a-p", rt.a_p);
  c_rt->add_option("--a-pbar", rt.a_pbar);
  c_rt->add_option("--pairs", rt.pairs);
  c_rt->add_option("--deg", rt.deg);
  c_rt->add_option("--N", rt.N);

  EulerOpts eu;
  auto* c_eu = app.add_subcommand("euler", "Local Asai factor and Euler product check");
  c_eu->add_option("--tag", eu.tag, "split | inert | ramified");
  c_eu->add_option("--roots", eu.roots, "roots.json")->required();
  c_eu->add_option("--xmax", eu.xmax);
  c_eu->add_option("--aux", eu.aux, "add a random factor at this prime");
  c_eu->add_option("--seed", eu.seed);

  StabOpts st;
  auto* c_st = app.add_subcommand("stab-check", "Stabilization identity on a two-prime model");
  c_st->add_option("--alpha", st.alpha, "rational root at p");
  c_st->add_option("--p", st.p);
  c_st->add_option("--aux", st.aux);
  c_st->add_option("--k", st.k);
  c_st->add_option("--xmax", st.xmax);
  c_st->add_option("--seed", st.seed);

  InvariantOpts iv;
  iv.N = N;
  auto* c_inv = app.add_subcommand("invariants", "Property grid, TAP output");
  c_inv->add_option("--N", iv.N);
  c_inv->add_option("--seed", iv.seed);
  c_inv->add_option("--filter", iv.filter, R"(one case, e.g. "pipeline p=5 k=2 R=3")");

  PipelineOpts pl;
  pl.cfg.N = N;
  auto* c_pipe = app.add_subcommand("pipeline", "gen, norm, congruences, patch, oracle, interp");
  c_pipe->add_option("--p", pl.cfg.p);
  c_pipe->add_option("--k", pl.cfg.k);
  c_pipe->add_option("--R", pl.cfg.R);
  c_pipe->add_option("--seed", pl.cfg.seed);
  c_pipe->add_option("--points", pl.cfg.points);
  c_pipe->add_flag("--zero", pl.cfg.zero_measure, "use the zero measure");
  c_pipe->add_flag("--all-chars", pl.cfg.exhaustive_chars, "every wild exponent");
  c_pipe->add_option("--fault", pl.fault, "j,r,t,M: add p^M to one tower value");
  c_pipe->add_option("--out", pl.out);
  c_pipe->add_option("--N", pl.cfg.N);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kInvalid;
  }

  try {
    if (*c_gen) return cmd_gen_tower(gt);
    if (*c_patch) return cmd_patch(pa);
    if (*c_interp) return cmd_interp(in);
    if (*c_rem) return cmd_remove_c(rc);
    if (*c_lm) return cmd_logmatrix(lm);
    if (*c_syn) return cmd_synthesize(sy);
    if (*c_dec) return cmd_decompose(de);
    if (*c_rt) return cmd_roundtrip(rt);
    if (*c_eu) return cmd_euler(eu);
    if (*c_st) return cmd_stab(st);
    if (*c_inv) return cmd_invariants(iv);
    if (*c_pipe) return cmd_pipeline(pl);
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kPrecision;
  } catch (const MeromorphicComponent& e) {
    std::cerr << "meromorphic: " << e.what() << "\n";
    return kFail;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ContextMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
