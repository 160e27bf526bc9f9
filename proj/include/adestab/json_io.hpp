#pragma once

#include "adestab/charge_engine.hpp"
#include "adestab/exceptional_cat.hpp"
#include "adestab/rational.hpp"
#include "adestab/root_data.hpp"
#include "adestab/scanner.hpp"
#include "adestab/surface_lattice.hpp"

#include <json.hpp>

#include <vector>

namespace adestab {

using Json = nlohmann::ordered_json;

// Rationals are written as "p/q" strings (plain "p" for integers) and read
// from either strings or JSON integers. Malformed input throws
// Error(ErrorKind::Parse).

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);
RationalVector rational_vector_from_json(const Json& j);
Json rational_vector_to_json(const RationalVector& v);

/// {"ade":"A2","h_square":2,"extra_rank":0,"extra_gram":[[2]]}
/// extra_rank and extra_gram may be omitted for a bare [[h_square]] block.
SurfaceSpec surface_from_json(const Json& j);
Json surface_to_json(const SurfaceSpec& spec);

/// {"ch0":2,"ch1":{"h":1,"e":[2,1],"x":[]},"ch2":3}; missing e/x read as 0.
NumClass class_from_json(const SurfaceSpec& spec, const Json& j);
Json class_to_json(const SurfaceSpec& spec, const NumClass& v);

/// {"ch0":2,"ch1":{"H":1,"x":[]},"ch2":3} ("h" accepted for "H").
PushedClass pushed_from_json(const SurfaceSpec& spec, const Json& j);
Json pushed_to_json(const PushedClass& w);

/// {"beta":["-1/4"],"z":"1","s":"1","epsilon":"1","eta":"0","alpha":"0"}
/// Everything except beta defaults as in ChargeParams.
ChargeParams params_from_json(const Json& j);
Json params_to_json(const ChargeParams& p);

Json charge_to_json(const ChargeValue& z);
Json ade_to_json(const AdeData& ade);
Json inertia_to_json(const Inertia& inertia);
Json violations_to_json(const std::vector<ParamViolation>& violations);
Json definiteness_to_json(const SurfaceSpec& spec, const DefinitenessCertificate& cert, bool pushed);
Json filtration_to_json(const SurfaceSpec& spec, const FiltrationReport& report);
Json phase_chain_to_json(const SurfaceSpec& spec, const PhaseChainResult& result);
Json walk_to_json(const SurfaceSpec& spec, const std::vector<WalkStep>& trace);
Json wall_report_to_json(const SurfaceSpec& spec, const ChargeParams& params, const WallReport& report);

}  // namespace adestab
