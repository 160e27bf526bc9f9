#include "adestab/json_io.hpp"

#include "adestab/errors.hpp"

namespace adestab {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  throw Error(ErrorKind::Parse, "expected a rational as \"p/q\" string or integer, got " + j.dump());
}

Json rational_to_json(const Rational& q) { return to_string(q); }

RationalVector rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals, got " + j.dump());
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json rational_vector_to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

RationalVector optional_vector(const Json& obj, const char* key, std::size_t expected, const char* what) {
  if (!obj.contains(key)) return RationalVector(expected);
  RationalVector v = rational_vector_from_json(obj.at(key));
  if (v.size() != expected) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has " + std::to_string(v.size()) +
                                                  " entries, expected " + std::to_string(expected));
  }
  return v;
}

Json int_array(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x);
  return out;
}

}  // namespace

SurfaceSpec surface_from_json(const Json& j) {
  const Json& ade_field = require(j, "ade");
  if (!ade_field.is_string()) throw Error(ErrorKind::Parse, "'ade' must be a string such as \"D4\"");
  const AdeType type = parse_ade_type(ade_field.get<std::string>());
  const Rational d = rational_from_json(require(j, "h_square"));
  const std::size_t r = j.contains("extra_rank") ? j.at("extra_rank").get<std::size_t>() : 0;
  RatMatrix extra(1 + r, 1 + r);
  if (j.contains("extra_gram")) {
    const Json& rows = j.at("extra_gram");
    if (!rows.is_array() || rows.size() != 1 + r) {
      throw Error(ErrorKind::BadBlock, "extra_gram must have 1 + extra_rank rows");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const RationalVector row = rational_vector_from_json(rows[i]);
      if (row.size() != 1 + r) throw Error(ErrorKind::BadBlock, "extra_gram must be square");
      for (std::size_t k = 0; k < row.size(); ++k) extra(i, k) = row[k];
    }
  } else {
    if (r != 0) throw Error(ErrorKind::BadBlock, "extra_gram is required when extra_rank > 0");
    extra(0, 0) = d;
  }
  return SurfaceSpec(build_ade(type), d, extra);
}

Json surface_to_json(const SurfaceSpec& spec) {
  Json gram = Json::array();
  for (std::size_t i = 0; i < spec.extra_gram().rows(); ++i) gram.push_back(rational_vector_to_json(spec.extra_gram().row(i)));
  return Json{{"ade", to_string(spec.ade().type)},
              {"h_square", rational_to_json(spec.h_square())},
              {"extra_rank", spec.extra_rank()},
              {"extra_gram", gram}};
}

NumClass class_from_json(const SurfaceSpec& spec, const Json& j) {
  const Rational ch0 = rational_from_json(require(j, "ch0"));
  const Json& ch1 = require(j, "ch1");
  if (!ch1.is_object()) throw Error(ErrorKind::Parse, "'ch1' must be an object with h, x and e");
  const Rational h = ch1.contains("h") ? rational_from_json(ch1.at("h")) : Rational(0);
  const RationalVector x = optional_vector(ch1, "x", spec.extra_rank(), "ch1.x");
  const RationalVector e = optional_vector(ch1, "e", spec.curve_count(), "ch1.e");
  const Rational ch2 = rational_from_json(require(j, "ch2"));
  return make_class(spec, ch0, h, x, e, ch2);
}

Json class_to_json(const SurfaceSpec& spec, const NumClass& v) {
  const auto begin = v.ch1.begin();
  const auto e_begin = begin + static_cast<std::ptrdiff_t>(spec.e_offset());
  return Json{{"ch0", rational_to_json(v.ch0)},
              {"ch1",
               {{"h", rational_to_json(v.ch1[0])},
                {"e", rational_vector_to_json(RationalVector(e_begin, v.ch1.end()))},
                {"x", rational_vector_to_json(RationalVector(begin + 1, e_begin))}}},
              {"ch2", rational_to_json(v.ch2)}};
}

PushedClass pushed_from_json(const SurfaceSpec& spec, const Json& j) {
  PushedClass w;
  w.ch0 = rational_from_json(require(j, "ch0"));
  const Json& ch1 = require(j, "ch1");
  if (!ch1.is_object()) throw Error(ErrorKind::Parse, "'ch1' must be an object with H and x");
  w.ch1.push_back(ch1.contains("H") ? rational_from_json(ch1.at("H"))
                  : ch1.contains("h") ? rational_from_json(ch1.at("h"))
                                      : Rational(0));
  const RationalVector x = optional_vector(ch1, "x", spec.extra_rank(), "ch1.x");
  w.ch1.insert(w.ch1.end(), x.begin(), x.end());
  w.ch2 = rational_from_json(require(j, "ch2"));
  return w;
}

Json pushed_to_json(const PushedClass& w) {
  return Json{{"ch0", rational_to_json(w.ch0)},
              {"ch1",
               {{"H", rational_to_json(w.ch1[0])},
                {"x", rational_vector_to_json(RationalVector(w.ch1.begin() + 1, w.ch1.end()))}}},
              {"ch2", rational_to_json(w.ch2)}};
}

ChargeParams params_from_json(const Json& j) {
  ChargeParams p;
  p.beta = rational_vector_from_json(require(j, "beta"));
  if (j.contains("z")) p.z = rational_from_json(j.at("z"));
  if (j.contains("s")) p.s = rational_from_json(j.at("s"));
  if (j.contains("epsilon")) p.epsilon = rational_from_json(j.at("epsilon"));
  if (j.contains("eta")) p.eta = rational_from_json(j.at("eta"));
  if (j.contains("alpha")) p.alpha = rational_from_json(j.at("alpha"));
  return p;
}

Json params_to_json(const ChargeParams& p) {
  return Json{{"beta", rational_vector_to_json(p.beta)},  {"z", rational_to_json(p.z)},
              {"s", rational_to_json(p.s)},               {"epsilon", rational_to_json(p.epsilon)},
              {"eta", rational_to_json(p.eta)},           {"alpha", rational_to_json(p.alpha)}};
}

Json charge_to_json(const ChargeValue& z) {
  return Json{{"re", rational_to_json(z.re)}, {"im", rational_to_json(z.im)}, {"phase_approx", phase_approx(z)}};
}

Json ade_to_json(const AdeData& ade) {
  Json gram = Json::array();
  for (std::size_t i = 0; i < ade.gram.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < ade.gram.cols(); ++k) row.push_back(ade.gram(i, k).get_num().get_si());
    gram.push_back(row);
  }
  Json edges = Json::array();
  for (const auto& [a, b] : ade.adjacency) edges.push_back(Json::array({a + 1, b + 1}));
  return Json{{"type", to_string(ade.type)},
              {"rank", ade.rank()},
              {"gram", gram},
              {"adjacency", edges},
              {"fund_cycle", int_array(ade.fund_cycle)}};
}

Json inertia_to_json(const Inertia& inertia) {
  return Json::array({inertia.positive, inertia.negative, inertia.zero});
}

Json violations_to_json(const std::vector<ParamViolation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) out.push_back(Json{{"constraint", constraint_name(v.constraint)}, {"detail", v.detail}});
  return out;
}

Json definiteness_to_json(const SurfaceSpec& spec, const DefinitenessCertificate& cert, bool pushed) {
  Json out{{"negative_definite", cert.negative_definite},
           {"kernel_dimension", cert.kernel_dimension},
           {"inertia", inertia_to_json(cert.inertia)}};
  Json basis = Json::array();
  for (const auto& b : cert.kernel_basis) {
    basis.push_back(pushed ? pushed_to_json(unflatten_pushed(spec, b)) : class_to_json(spec, unflatten(spec, b)));
  }
  out["kernel_basis"] = basis;
  if (cert.witness) {
    out["witness"] = pushed ? pushed_to_json(unflatten_pushed(spec, *cert.witness))
                            : class_to_json(spec, unflatten(spec, *cert.witness));
    out["witness_value"] = rational_to_json(*cert.witness_value);
  }
  return out;
}

Json filtration_to_json(const SurfaceSpec& spec, const FiltrationReport& report) {
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    steps.push_back(Json{{"curve", s.curve + 1}, {"multiplicity", s.multiplicity}, {"divisor", int_array(s.divisor)}});
  }
  Json factors{{"O_Pi", report.opi_multiplicity}};
  for (std::size_t i = 0; i < report.factor_multiplicity.size(); ++i) {
    factors["s_" + std::to_string(i + 1)] = report.factor_multiplicity[i];
  }
  return Json{{"type", to_string(spec.ade().type)},
              {"target", report.target + 1},
              {"initial_divisor", int_array(report.initial_divisor)},
              {"steps", steps},
              {"factors", factors},
              {"telescoping_ok", report.telescoping_ok}};
}

Json phase_chain_to_json(const SurfaceSpec& spec, const PhaseChainResult& result) {
  Json chain = Json::array();
  for (std::size_t i = 0; i < result.classes.size(); ++i) {
    chain.push_back(Json{{"label", result.labels[i]},
                         {"class", class_to_json(spec, result.classes[i])},
                         {"charge", charge_to_json(result.charges[i])}});
  }
  Json out{{"holds", result.holds}, {"chain", chain}};
  if (result.first_violation) out["first_violation"] = *result.first_violation;
  return out;
}

Json walk_to_json(const SurfaceSpec& spec, const std::vector<WalkStep>& trace) {
  Json out = Json::array();
  for (const auto& s : trace) {
    out.push_back(Json{{"curve", s.curve + 1},
                       {"action", s.direction > 0 ? "add_s" : "remove_s"},
                       {"pairing", rational_to_json(s.pairing)},
                       {"result", class_to_json(spec, s.result)}});
  }
  return out;
}

Json wall_report_to_json(const SurfaceSpec& spec, const ChargeParams& params, const WallReport& report) {
  const AffineCharge av = affine_charge(spec, params, report.parameter, report.v);
  Json walls = Json::array();
  for (const auto& wall : report.walls) {
    const QuadSurd re = QuadSurd(av.re0) + QuadSurd(av.re1) * wall.value;
    const QuadSurd im = QuadSurd(av.im0) + QuadSurd(av.im1) * wall.value;
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < wall.witnesses.size(); ++i) {
      witnesses.push_back(Json{{"class", class_to_json(spec, wall.witnesses[i])}, {"same_phase", wall.same_phase[i]}});
    }
    walls.push_back(Json{{"value", wall.value.to_string()},
                         {"value_approx", wall.value.approx()},
                         {"slope_num", (QuadSurd(0) - re).to_string()},
                         {"slope_den", im.to_string()},
                         {"witnesses", witnesses}});
  }
  Json degenerate = Json::array();
  for (const auto& w : report.degenerate_witnesses) degenerate.push_back(class_to_json(spec, w));
  Json range{{"lo", rational_to_json(report.range.lo)},
             {"hi", rational_to_json(report.range.hi)},
             {"lo_open", report.range.lo_open},
             {"hi_open", report.range.hi_open}};
  return Json{{"parameter", to_string(report.parameter)},
              {"range", range},
              {"class", class_to_json(spec, report.v)},
              {"walls", walls},
              {"degenerate_segment", degenerate}};
}

}  // namespace adestab
