#include "asai/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace asai {

json to_json(const PadicElt& x) { return x.str(); }

PadicElt padic_from_json(const Ctx& ctx, const json& j) {
  if (j.is_string()) return PadicElt::parse(ctx, j.get<std::string>());
  if (j.is_number_integer()) return PadicElt(ctx, j.get<long>());
  throw ValidationError("expected a p-adic string, got " + j.dump());
}

template <class T>
static T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

json ctx_to_json(const Ctx& ctx) { return {{"p", ctx->p}, {"N", ctx->N}, {"u", ctx->u}}; }

Ctx ctx_from_json(const json& j, long default_N) {
  long p = field<long>(j, "p");
  long N = j.contains("N") ? field<long>(j, "N") : default_N;
  long u = j.contains("u") ? field<long>(j, "u") : 0;
  return make_ctx(p, (int)N, u);
}

json to_json(const TruncSeries& f) {
  json c = json::array();
  for (const auto& x : f.c) c.push_back(to_json(x));
  json out = {{"Dmax", f.exact ? std::max<long>(f.size() - 1, 0) : f.dmax}, {"coeffs", c}, {"exact", f.exact}};
  if (!f.exact) out["tail_floor"] = f.tail_floor >= kInf ? json(nullptr) : json(f.tail_floor);
  return out;
}

TruncSeries series_from_json(const Ctx& ctx, const json& j) {
  std::vector<PadicElt> c;
  for (const auto& x : field<json>(j, "coeffs")) c.push_back(padic_from_json(ctx, x));
  bool exact = j.value("exact", true);
  if (exact) return TruncSeries::poly(ctx, std::move(c));
  long dmax = j.contains("Dmax") ? field<long>(j, "Dmax") : (long)c.size() - 1;
  long floor = (j.contains("tail_floor") && !j["tail_floor"].is_null()) ? field<long>(j, "tail_floor") : kInf;
  return TruncSeries::series(ctx, std::move(c), dmax, floor);
}

json to_json(const EigenData& e) {
  json out = ctx_to_json(e.ctx);
  out["k"] = e.k;
  out["a_p"] = to_json(e.a_p);
  out["sqrtD"] = to_json(e.sqrtD);
  out["eps_c_inv"] = to_json(e.eps_c_inv);
  out["c"] = e.c;
  return out;
}

EigenData eigen_from_json(const json& j, long default_N) {
  EigenData e;
  e.ctx = ctx_from_json(j, default_N);
  e.k = field<long>(j, "k");
  e.a_p = padic_from_json(e.ctx, field<json>(j, "a_p"));
  e.sqrtD = j.contains("sqrtD") ? padic_from_json(e.ctx, j["sqrtD"]) : PadicElt(e.ctx, 1L);
  e.eps_c_inv = j.contains("eps_c_inv") ? padic_from_json(e.ctx, j["eps_c_inv"]) : PadicElt(e.ctx, 1L);
  e.c = j.value("c", e.ctx->p == 5 ? 7L : 5L);
  e.validate();
  return e;
}

json to_json(const Tower& tw) {
  json vals = json::array();
  const long p = tw.p();
  for (size_t j = 0; j < tw.x.size(); ++j)
    for (long r = 1; r <= tw.R; ++r)
      for (size_t t = 0; t < tw.x[j][r].size(); ++t) {
        if ((long)t % p == 0) continue;
        vals.push_back({{"j", j}, {"r", r}, {"t", t}, {"v", to_json(tw.x[j][r][t])}});
      }
  json out = {{"eigen", to_json(tw.eigen)}, {"R", tw.R}, {"seed", tw.seed}, {"values", vals}};
  if (tw.has_x0) {
    json x0 = json::array();
    for (const auto& v : tw.x0) x0.push_back(to_json(v));
    out["x0"] = x0;
  } else {
    out["x0"] = nullptr;
  }
  return out;
}

Tower tower_from_json(const json& j, long default_N) {
  EigenData e = eigen_from_json(field<json>(j, "eigen"), default_N);
  Tower tw = empty_tower(e, field<long>(j, "R"));
  tw.seed = j.value("seed", (uint64_t)0);
  const long p = e.ctx->p;
  for (const auto& v : field<json>(j, "values")) {
    long jj = field<long>(v, "j"), r = field<long>(v, "r"), t = field<long>(v, "t");
    if (jj < 0 || jj > e.k || r < 1 || r > tw.R || t < 0 || t >= (long)tw.x[jj][r].size() || t % p == 0)
      throw ValidationError("tower value out of range: " + v.dump());
    tw.x[jj][r][t] = padic_from_json(e.ctx, field<json>(v, "v"));
  }
  if (j.contains("x0") && !j["x0"].is_null()) {
    const json& x0 = j["x0"];
    if (!x0.is_array() || (long)x0.size() != e.k + 1) throw ValidationError("x0 must hold k+1 values");
    tw.has_x0 = true;
    for (long i = 0; i <= e.k; ++i) tw.x0[i] = padic_from_json(e.ctx, x0[i]);
  }
  return tw;
}

json to_json(const Distribution& d) {
  json out = ctx_to_json(d.ctx);
  out["w"] = d.w;
  out["provenance"] = d.provenance;
  json comps = json::object();
  for (size_t i = 0; i < d.comp.size(); ++i) comps[std::to_string(i)] = to_json(d.comp[i]);
  out["components"] = comps;
  return out;
}

Distribution distribution_from_json(const json& j, long default_N) {
  Ctx ctx = ctx_from_json(j, default_N);
  Distribution d = zero_distribution(ctx, j.value("provenance", std::string("patched")));
  d.w = j.value("w", 0.0);
  const json comps = field<json>(j, "components");
  for (const auto& [key, val] : comps.items()) {
    long i = -1;
    try {
      i = std::stol(key);
    } catch (const std::exception&) {
    }
    if (i < 0 || i >= ctx->p - 1) throw ValidationError("component index out of range: " + key);
    d.comp[i] = series_from_json(ctx, val);
  }
  return d;
}

json to_json(const FiniteMeasure& mu) {
  json z = json::array(), w = json::array();
  for (const auto& x : mu.z) z.push_back(x.get_str());
  for (const auto& x : mu.w) w.push_back(to_json(x));
  return {{"z", z}, {"w", w}};
}

FiniteMeasure measure_from_json(const Ctx& ctx, const json& j) {
  FiniteMeasure mu;
  for (const auto& x : field<json>(j, "z")) mu.z.emplace_back(x.is_string() ? x.get<std::string>() : x.dump());
  for (const auto& x : field<json>(j, "w")) mu.w.push_back(padic_from_json(ctx, x));
  mu.validate(ctx);
  return mu;
}

json to_json(const DirichletChar& c) {
  return {{"p", c.p}, {"r", c.r}, {"delta_power", c.delta_power}, {"wild_exp", c.wild_exp}};
}

DirichletChar char_from_json(long p, const json& j) {
  DirichletChar c;
  c.p = j.value("p", p);
  if (c.p != p) throw ValidationError("character prime differs from the context prime");
  c.r = field<long>(j, "r");
  c.delta_power = j.value("delta_power", 0L);
  c.wild_exp = j.value("wild_exp", 0L);
  return c;
}

json to_json(const SplitEigenData& d) {
  json out = ctx_to_json(d.ctx);
  out["k"] = d.k;
  out["a_p"] = to_json(d.a_p);
  out["a_pbar"] = to_json(d.a_pbar);
  out["eps"] = to_json(d.eps);
  return out;
}

SplitEigenData split_from_json(const json& j, long default_N) {
  SplitEigenData d;
  d.ctx = ctx_from_json(j, default_N);
  d.k = field<long>(j, "k");
  d.a_p = padic_from_json(d.ctx, field<json>(j, "a_p"));
  d.a_pbar = padic_from_json(d.ctx, field<json>(j, "a_pbar"));
  d.eps = j.contains("eps") ? padic_from_json(d.ctx, j["eps"]) : PadicElt(d.ctx, 1L);
  d.validate();
  return d;
}

json to_json(const QuadDistribution& d) {
  json out = ctx_to_json(d.f->ctx());
  out["field"] = {{"a", to_json(d.f->a())}, {"c", to_json(d.f->c())}, {"split", d.f->split()}};
  json comps = json::object();
  for (size_t i = 0; i < d.comp.size(); ++i)
    comps[std::to_string(i)] = {{"s0", to_json(d.comp[i].s0)}, {"s1", to_json(d.comp[i].s1)}};
  out["components"] = comps;
  return out;
}

QuadDistribution quad_distribution_from_json(const Ctx& ctx, const json& j) {
  const json& fj = field<json>(j, "field");
  QuadDistribution d;
  d.f = make_qfield(padic_from_json(ctx, field<json>(fj, "a")), padic_from_json(ctx, field<json>(fj, "c")));
  const json& comps = field<json>(j, "components");
  d.comp.resize(comps.size());
  for (const auto& [key, val] : comps.items()) {
    size_t i = std::stoul(key);
    if (i >= d.comp.size()) throw ValidationError("component index out of range: " + key);
    d.comp[i].f = d.f;
    d.comp[i].s0 = series_from_json(ctx, field<json>(val, "s0"));
    d.comp[i].s1 = series_from_json(ctx, field<json>(val, "s1"));
  }
  return d;
}

json to_json(const CycloElt& x) {
  json v = json::array();
  for (const auto& c : x.v) v.push_back(to_json(c));
  return {{"level", x.ring.level()}, {"coords", v}};
}

json to_json(const LocalFactor& F) {
  json c = json::array();
  for (const auto& x : F.c) c.push_back(x.get_str());
  return {{"tag", F.tag}, {"q", F.q}, {"coeffs", c}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace asai
