// Command-line front end. Every subcommand reads JSON (file path, "-" for
// stdin, or an inline document starting with '{' or '[') and writes a JSON
// report to stdout, or CSV with --format csv.
//
// Exit status: 0 success, 1 a certification or check failed, 2 bad input.

#include "adestab/charge_engine.hpp"
#include "adestab/errors.hpp"
#include "adestab/exceptional_cat.hpp"
#include "adestab/json_io.hpp"
#include "adestab/root_data.hpp"
#include "adestab/scanner.hpp"
#include "adestab/surface_lattice.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

using namespace adestab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

Json read_json(const std::string& source) {
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw Error(ErrorKind::Parse, "cannot open '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "invalid JSON in '" + source + "': " + e.what());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten_csv(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten_csv(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_csv(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << csv_escape(prefix) << ',' << csv_escape(j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string compact_class(const SurfaceSpec& spec, const NumClass& v) {
  std::ostringstream s;
  s << '(' << to_string(v.ch0) << ';';
  for (std::size_t j = 0; j < v.ch1.size(); ++j) {
    s << (j == 0 ? "" : j == spec.e_offset() ? "|" : " ") << to_string(v.ch1[j]);
  }
  s << ';' << to_string(v.ch2) << ')';
  return s.str();
}

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const Json& report, const std::string& csv_override = {}) const {
    std::ostringstream text;
    if (format == "csv") {
      if (!csv_override.empty()) {
        text << csv_override;
      } else {
        text << "key,value\n";
        flatten_csv(report, "", text);
      }
    } else {
      text << report.dump(2) << '\n';
    }
    if (path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream out(path);
      if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
      out << text.str();
    }
  }
};

std::string walls_csv(const SurfaceSpec& spec, const ChargeParams& params, const WallReport& report) {
  std::ostringstream out;
  out << "parameter_value,witness_class,phase_num,phase_den\n";
  const AffineCharge av = affine_charge(spec, params, report.parameter, report.v);
  for (const auto& wall : report.walls) {
    const QuadSurd re = QuadSurd(av.re0) + QuadSurd(av.re1) * wall.value;
    const QuadSurd im = QuadSurd(av.im0) + QuadSurd(av.im1) * wall.value;
    for (const auto& w : wall.witnesses) {
      out << csv_escape(wall.value.to_string()) << ',' << csv_escape(compact_class(spec, w)) << ','
          << csv_escape((QuadSurd(0) - re).to_string()) << ',' << csv_escape(im.to_string()) << '\n';
    }
  }
  for (const auto& w : report.degenerate_witnesses) {
    out << "segment," << csv_escape(compact_class(spec, w)) << ",,\n";
  }
  return out.str();
}

std::string filtration_diagram(const SurfaceSpec& spec, const FiltrationReport& report) {
  auto divisor_name = [](const std::vector<int>& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (d[i] != 1) s += std::to_string(d[i]);
      s += "C" + std::to_string(i + 1);
    }
    return "O_{" + s + "}";
  };
  std::ostringstream out;
  out << "skyscraper filtration on " << to_string(spec.ade().type) << ", point on C" << report.target + 1 << "\n\n";
  out << "0 -> " << divisor_name(report.initial_divisor) << "  (O_Pi)\n";
  for (const auto& step : report.steps) {
    out << "  -> " << divisor_name(step.divisor) << "   quotient: s_" << step.curve + 1;
    if (step.multiplicity != 1) out << " x" << step.multiplicity;
    out << '\n';
  }
  out << "  -> O_x   quotient: s_" << report.target + 1 << '\n';
  out << "\nfactors: O_Pi x1";
  for (std::size_t i = 0; i < report.factor_multiplicity.size(); ++i) {
    out << ", s_" << i + 1 << " x" << report.factor_multiplicity[i];
  }
  out << "\ntelescoping: " << (report.telescoping_ok ? "ok" : "FAILED") << '\n';
  return out.str();
}

IntRange parse_int_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const long v = std::stol(text);
      return {v, v};
    }
    return {std::stol(text.substr(0, colon)), std::stol(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad integer range '" + text + "', expected lo:hi");
  }
}

SurfaceSpec load_surface(const std::string& source) {
  SurfaceSpec spec = surface_from_json(read_json(source));
  validate_surface(spec);
  return spec;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Stuck:
    case ErrorKind::NonTerminating:
    case ErrorKind::InternalContradiction:
    case ErrorKind::ZeroCharge:
      return kExitViolation;
    default:
      return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice computations for stability conditions on ADE resolutions"};
  app.require_subcommand(1);
  Output output;
  app.add_option("--format", output.format, "json (default) or csv; filtration also accepts text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", output.path, "write the report to this file instead of stdout");

  int status = kExitOk;
  std::function<void()> action;

  // ade info <type>
  auto* ade = app.add_subcommand("ade", "ADE configuration data");
  ade->require_subcommand(1);
  auto* ade_info = ade->add_subcommand("info", "Gram matrix, Dynkin edges, fundamental cycle, inverse sign check");
  std::string ade_type;
  ade_info->add_option("type", ade_type, "e.g. A3, D4, E8")->required();
  ade_info->callback([&] {
    action = [&] {
      const AdeData data = build_ade(parse_ade_type(ade_type));
      const InverseCertificate inv = inverse_negativity_check(data);
      Json report = ade_to_json(data);
      Json inverse = Json::array();
      for (std::size_t i = 0; i < inv.inverse.rows(); ++i) inverse.push_back(rational_vector_to_json(inv.inverse.row(i)));
      report["gram_inverse"] = inverse;
      report["inverse_all_negative"] = inv.all_negative;
      output.emit(report);
      if (!inv.all_negative) status = kExitViolation;
    };
  });

  // beta find <spec> [--t]
  auto* beta = app.add_subcommand("beta", "choice of beta");
  beta->require_subcommand(1);
  auto* beta_find = beta->add_subcommand("find", "solve G b = t (1,...,1)");
  std::string beta_spec, beta_t;
  beta_find->add_option("spec", beta_spec, "surface JSON")->required();
  beta_find->add_option("--t", beta_t, "margin in (0, 1/(1+sum m_i)]; defaults to the upper bound");
  beta_find->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(beta_spec);
      const Rational t = beta_t.empty() ? max_beta_margin(spec) : parse_rational(beta_t);
      const RationalVector b = find_beta(spec, t);
      ChargeParams params;
      params.beta = b;
      const auto violations = validate_params(spec, params);
      output.emit(Json{{"t", rational_to_json(t)},
                       {"beta", rational_vector_to_json(b)},
                       {"beta_square", rational_to_json(beta_square(spec, b))},
                       {"beta_dot_curves", rational_vector_to_json(spec.ade().gram * b)},
                       {"violations_at_z_1", violations_to_json(violations)}});
      if (!violations.empty()) status = kExitViolation;
    };
  });

  // charge eval <spec> <params> <class>
  auto* charge_cmd = app.add_subcommand("charge", "central charge");
  charge_cmd->require_subcommand(1);
  auto* charge_eval = charge_cmd->add_subcommand("eval", "evaluate Z on one class");
  std::string ce_spec, ce_params, ce_class;
  charge_eval->add_option("spec", ce_spec)->required();
  charge_eval->add_option("params", ce_params)->required();
  charge_eval->add_option("class", ce_class)->required();
  charge_eval->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(ce_spec);
      const ChargeParams params = params_from_json(read_json(ce_params));
      const NumClass v = class_from_json(spec, read_json(ce_class));
      const auto violations = validate_params(spec, params);
      output.emit(Json{{"class", class_to_json(spec, v)},
                       {"charge", charge_to_json(charge(spec, params, v))},
                       {"discriminant", rational_to_json(discriminant(spec, v))},
                       {"param_violations", violations_to_json(violations)}});
    };
  });

  // certify support <spec> <params> [--A --B]
  auto* certify = app.add_subcommand("certify", "certificates");
  certify->require_subcommand(1);
  auto* certify_support = certify->add_subcommand("support", "negative definiteness of the support forms on ker Z");
  std::string cs_spec, cs_params, cs_a, cs_b;
  certify_support->add_option("spec", cs_spec)->required();
  certify_support->add_option("params", cs_params)->required();
  certify_support->add_option("--A", cs_a, "defaults to the computed A0");
  certify_support->add_option("--B", cs_b, "defaults to the computed B0");
  certify_support->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(cs_spec);
      const ChargeParams params = params_from_json(read_json(cs_params));
      const auto violations = validate_params(spec, params);
      Json report{{"param_violations", violations_to_json(violations)}};
      if (!violations.empty()) {
        output.emit(report);
        status = kExitViolation;
        return;
      }
      const SupportConstants constants = support_constants(spec, params, simple_class_list(spec));
      const Rational a = cs_a.empty() ? constants.a0 : parse_rational(cs_a);
      const Rational b = cs_b.empty() ? constants.b0 : parse_rational(cs_b);
      if (a < 0 || b < 0) throw Error(ErrorKind::Parse, "A and B must be non-negative");
      const auto resolution = certify_negative_definite(spec, params, a, b);
      const auto singular = certify_negative_definite_X(spec, params, a);
      bool simple_ok = true;
      for (const auto& s : simple_class_list(spec)) simple_ok = simple_ok && q_form(spec, params, a, b, s) >= 0;
      report["A"] = rational_to_json(a);
      report["B"] = rational_to_json(b);
      report["support_constants"] = Json{{"A0", rational_to_json(constants.a0)}, {"B0", rational_to_json(constants.b0)}};
      report["resolution"] = definiteness_to_json(spec, resolution, false);
      report["singular_surface"] = definiteness_to_json(spec, singular, true);
      report["simple_classes_nonnegative"] = simple_ok;
      output.emit(report);
      if (!resolution.negative_definite || !singular.negative_definite || !simple_ok) status = kExitViolation;
    };
  });

  // lift <spec> <pushed-class> [--offset]
  auto* lift_cmd = app.add_subcommand("lift", "lift a class of the singular surface with kernel part in [0,1)");
  std::string lift_spec, lift_class, lift_offset;
  lift_cmd->add_option("spec", lift_spec)->required();
  lift_cmd->add_option("pushed-class", lift_class)->required();
  lift_cmd->add_option("--offset", lift_offset, "JSON array of kernel coefficients to reduce mod 1");
  lift_cmd->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(lift_spec);
      const PushedClass w = pushed_from_json(spec, read_json(lift_class));
      const NumClass v = lift_offset.empty() ? lift(spec, w)
                                             : lift(spec, w, rational_vector_from_json(read_json(lift_offset)));
      output.emit(Json{{"pushed", pushed_to_json(w)},
                       {"lift", class_to_json(spec, v)},
                       {"kernel_coefficients", rational_vector_to_json(pr_kernel(spec, v).coefficients)}});
    };
  });

  // walk <spec> <class>
  auto* walk_cmd = app.add_subcommand("walk", "replay the kernel normalisation walk of a class");
  std::string walk_spec, walk_class;
  walk_cmd->add_option("spec", walk_spec)->required();
  walk_cmd->add_option("class", walk_class)->required();
  walk_cmd->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(walk_spec);
      const NumClass v = class_from_json(spec, read_json(walk_class));
      const auto trace = normalize_walk(spec, v);
      const NumClass end = trace.empty() ? v : trace.back().result;
      output.emit(Json{{"start", class_to_json(spec, v)}, {"trace", walk_to_json(spec, trace)}, {"end", class_to_json(spec, end)}});
    };
  });

  // filtration <spec> --target i [--check-phases --eps --eta --params]
  auto* filt = app.add_subcommand("filtration", "Jordan-Hoelder filtration of a skyscraper on the exceptional locus");
  std::string filt_spec, filt_params, filt_eps = "1", filt_eta = "1/100";
  std::size_t filt_target = 1;
  bool filt_check = false;
  filt->add_option("spec", filt_spec)->required();
  filt->add_option("--target", filt_target, "1-based curve containing the point")->required();
  filt->add_flag("--check-phases", filt_check, "verify the strict phase chain under the eta-deformation");
  filt->add_option("--eps", filt_eps, "epsilon for the phase check");
  filt->add_option("--eta", filt_eta, "eta for the phase check");
  filt->add_option("--params", filt_params, "charge parameters; default beta from the maximal margin and z = 1");
  filt->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(filt_spec);
      if (filt_target == 0) throw Error(ErrorKind::IndexOutOfRange, "curves are numbered from 1");
      const FiltrationReport report = skyscraper_filtration(spec, filt_target - 1);
      Json out = filtration_to_json(spec, report);
      if (!report.telescoping_ok) status = kExitViolation;
      if (filt_check) {
        ChargeParams params;
        if (filt_params.empty()) {
          params.beta = find_beta(spec, max_beta_margin(spec));
        } else {
          params = params_from_json(read_json(filt_params));
        }
        params.epsilon = parse_rational(filt_eps);
        params.eta = parse_rational(filt_eta);
        const PhaseChainResult chain = phase_chain_check(spec, params, report);
        out["phase_params"] = params_to_json(params);
        out["phase_chain"] = phase_chain_to_json(spec, chain);
        if (!chain.holds) status = kExitViolation;
      }
      if (output.format == "text") {
        std::cout << filtration_diagram(spec, report);
        if (out.contains("phase_chain")) {
          std::cout << "phase chain: " << (out["phase_chain"]["holds"].get<bool>() ? "strict" : "violated") << '\n';
        }
      } else {
        output.emit(out);
      }
    };
  });

  // walls <spec> <params> --class v --param epsilon|s
  auto* walls = app.add_subcommand("walls", "locate walls for a class along the epsilon- or s-path");
  std::string w_spec, w_params, w_class, w_param = "epsilon", w_candidates = "simple", w_lo, w_hi;
  std::string w_ch0 = "-1:1", w_h = "0:0", w_x = "0:0", w_e = "-1:1", w_ch2 = "-1:1", w_a = "0", w_b = "0";
  bool w_lo_closed = false, w_hi_open = false;
  std::size_t w_cap = 2'000'000;
  walls->add_option("spec", w_spec)->required();
  walls->add_option("params", w_params)->required();
  walls->add_option("--class", w_class, "class v whose walls are scanned")->required();
  walls->add_option("--param", w_param, "epsilon or s")->check(CLI::IsMember({"epsilon", "s"}));
  walls->add_option("--candidates", w_candidates, "simple, box, or a JSON array of classes");
  walls->add_option("--lo", w_lo, "range start (default 0 for epsilon, 1 for s)");
  walls->add_option("--hi", w_hi, "range end (default 1 for epsilon, 16 for s)");
  walls->add_flag("--lo-closed", w_lo_closed, "include the range start");
  walls->add_flag("--hi-open", w_hi_open, "exclude the range end");
  walls->add_option("--ch0", w_ch0, "box range lo:hi");
  walls->add_option("--hcoef", w_h, "box range for the h coefficient");
  walls->add_option("--x", w_x, "box range for each extra coefficient");
  walls->add_option("--e", w_e, "box range for each exceptional coefficient");
  walls->add_option("--ch2", w_ch2, "box range for ch2");
  walls->add_option("--A", w_a, "A in the box filter Q_{A,B} >= 0");
  walls->add_option("--B", w_b, "B in the box filter Q_{A,B} >= 0");
  walls->add_option("--cap", w_cap, "maximum box cardinality");
  walls->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(w_spec);
      const ChargeParams params = params_from_json(read_json(w_params));
      const NumClass v = class_from_json(spec, read_json(w_class));
      const WallParameter p = parse_wall_parameter(w_param);
      ParamRange range = default_range(p);
      if (!w_lo.empty()) range.lo = parse_rational(w_lo);
      if (!w_hi.empty()) range.hi = parse_rational(w_hi);
      if (w_lo_closed) range.lo_open = false;
      if (w_hi_open) range.hi_open = true;

      std::vector<NumClass> candidates;
      if (w_candidates == "simple") {
        candidates = simple_class_list(spec);
      } else if (w_candidates == "box") {
        CandidateBox box;
        box.ch0 = parse_int_range(w_ch0);
        box.h = parse_int_range(w_h);
        box.x = parse_int_range(w_x);
        box.e = parse_int_range(w_e);
        box.ch2 = parse_int_range(w_ch2);
        box.a = parse_rational(w_a);
        box.b = parse_rational(w_b);
        box.cap = w_cap;
        candidates = enumerate_candidates(spec, params, v, box);
      } else {
        const Json list = read_json(w_candidates);
        if (!list.is_array()) throw Error(ErrorKind::Parse, "candidate file must hold a JSON array of classes");
        for (const auto& c : list) candidates.push_back(class_from_json(spec, c));
      }
      const WallReport report = scan_walls(spec, params, v, candidates, p, range);
      Json out = wall_report_to_json(spec, params, report);
      out["candidate_count"] = candidates.size();
      output.emit(out, output.format == "csv" ? walls_csv(spec, params, report) : std::string{});
    };
  });

  // decompose <spec> <class>
  auto* dec = app.add_subcommand("decompose", "Jordan-Hoelder multiplicities in O_Pi and the s_i");
  std::string dec_spec, dec_class;
  dec->add_option("spec", dec_spec)->required();
  dec->add_option("class", dec_class)->required();
  dec->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(dec_spec);
      const NumClass v = class_from_json(spec, read_json(dec_class));
      const auto d = decompose(spec, v);
      Json out{{"class", class_to_json(spec, v)}, {"decomposable", d.has_value()}};
      if (d) {
        out["O_Pi"] = rational_to_json(d->n0);
        out["s"] = rational_vector_to_json(d->n);
      }
      output.emit(out);
    };
  });

  // delta <spec> <class>
  auto* delta = app.add_subcommand("delta", "discriminants before and after pushforward");
  std::string delta_spec, delta_class;
  delta->add_option("spec", delta_spec)->required();
  delta->add_option("class", delta_class)->required();
  delta->callback([&] {
    action = [&] {
      const SurfaceSpec spec = load_surface(delta_spec);
      const NumClass v = class_from_json(spec, read_json(delta_class));
      const DeltaPushCheck c = delta_push_check(spec, v);
      const PushedClass w = pushforward(spec, v);
      output.emit(Json{{"delta", rational_to_json(c.delta)},
                       {"delta_pushed", rational_to_json(c.delta_pushed)},
                       {"monotone", c.holds},
                       {"pushed", pushed_to_json(w)},
                       {"bogomolov_gieseker_on_X", bogomolov_gieseker_holds(spec, w)}});
      if (!c.holds) status = kExitViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    std::cerr << Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}.dump() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << Json{{"error", "Parse"}, {"message", e.what()}}.dump() << '\n';
    return kExitInput;
  }
  return status;
}
