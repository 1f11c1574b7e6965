#pragma once

#include <string>

#include "json.hpp"

#include "asai/asai_patch.hpp"
#include "asai/classical_l.hpp"
#include "asai/decompose.hpp"

namespace asai {

using json = nlohmann::json;

// Every p-adic number travels as a string: "p^v*[d0,d1,...]" (unit digits,
// least significant first), "O(p^a)" for a tracked zero, "0" for the exact
// zero. Plain integers and rationals are accepted on input.
json to_json(const PadicElt& x);
PadicElt padic_from_json(const Ctx& ctx, const json& j);

// {"p", "N", "u"}.
json ctx_to_json(const Ctx& ctx);
Ctx ctx_from_json(const json& j, long default_N);

json to_json(const TruncSeries& f);
TruncSeries series_from_json(const Ctx& ctx, const json& j);

json to_json(const EigenData& e);
EigenData eigen_from_json(const json& j, long default_N);

json to_json(const Tower& tw);
Tower tower_from_json(const json& j, long default_N);

json to_json(const Distribution& d);
Distribution distribution_from_json(const json& j, long default_N);

json to_json(const FiniteMeasure& mu);
FiniteMeasure measure_from_json(const Ctx& ctx, const json& j);

json to_json(const DirichletChar& c);
DirichletChar char_from_json(long p, const json& j);

json to_json(const SplitEigenData& d);
SplitEigenData split_from_json(const json& j, long default_N);

json to_json(const QuadDistribution& d);
QuadDistribution quad_distribution_from_json(const Ctx& ctx, const json& j);

json to_json(const CycloElt& x);

json to_json(const LocalFactor& F);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace asai
