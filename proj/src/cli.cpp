#include "deristab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deristab/automorphism.hpp"
#include "deristab/derivation.hpp"
#include "deristab/enumerate.hpp"
#include "deristab/isotropy.hpp"
#include "deristab/simplicity.hpp"

namespace deristab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

RatVector parse_rat_list(const std::string& text) {
  RatVector out;
  for (const auto& item : split_list(text)) out.push_back(parse_rat(item));
  return out;
}

std::string tuple_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

Json tuple_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

Json strings_json(const std::vector<std::string>& v) { return Json(v); }

std::string map_label(const PolyMap& f) { return f.is_identity() ? "identity" : to_string(f); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Shared option storage for every subcommand.
struct Options {
  std::size_t n = 0;
  std::string derivation;
  std::string map;
  std::string translation;
  std::string a, b, p = "0";
  std::string c_tilde = "1", c_bar = "0";
  std::string generators;
  unsigned degree = 2, coeff = 2;
  bool json = false;
};

std::string cmd_commutes(const Options& o) {
  auto d = Derivation::parse(split_list(o.derivation), o.n);
  auto f = PolyMap::parse(split_list(o.map), o.n);
  auto failure = first_commutation_failure(f, d);
  std::string lhs, rhs;
  if (failure) {
    lhs = to_string(d.apply(f[*failure]));
    rhs = to_string(substitute(d.coeff(*failure), f.components()));
  }
  if (o.json) {
    Json j{{"schema", kSchema}, {"command", "commutes"}, {"commutes", !failure}};
    if (failure) {
      j["failing_component"] = *failure + 1;
      j["lhs"] = lhs;
      j["rhs"] = rhs;
    }
    return dump(j);
  }
  if (!failure) return "true\n";
  return "false\ncomponent " + std::to_string(*failure + 1) + ": D(f" +
         std::to_string(*failure + 1) + ") = " + lhs + " but p" + std::to_string(*failure + 1) +
         "(f) = " + rhs + "\n";
}

std::string cmd_invariant_translations(const Options& o) {
  auto d = Derivation::parse(split_list(o.derivation), o.n);
  auto basis = invariant_translations(d);
  if (o.json) {
    Json rows = Json::array();
    for (const auto& v : basis) rows.push_back(tuple_json(v));
    return dump(Json{{"schema", kSchema}, {"command", "invariant-translations"}, {"basis", rows}});
  }
  std::string s = "[";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) s += ", ";
    s += tuple_string(basis[i]);
  }
  return s + "]\n";
}

std::string cmd_witness(const Options& o) {
  auto d = Derivation::parse(split_list(o.derivation), o.n);
  std::optional<RatVector> c;
  if (!o.translation.empty()) c = parse_rat_list(o.translation);
  auto search = find_witness(d, c);

  if (!search.witness) {
    if (o.json) {
      Json j{{"schema", kSchema}, {"command", "witness"}, {"decision", "inconclusive"}};
      if (search.translation) j["translation"] = tuple_json(*search.translation);
      j["diagnostic"] = search.diagnostic;
      return dump(j);
    }
    std::string s = "inconclusive\n";
    if (search.diagnostic != "inconclusive") s += "diagnostic: " + search.diagnostic + "\n";
    return s;
  }
  const auto& w = *search.witness;
  std::vector<std::string> gens;
  for (const auto& g : w.generators) gens.push_back(to_string(g));
  if (o.json) {
    Json j{{"schema", kSchema},
           {"command", "witness"},
           {"rationale", to_string(w.rationale)},
           {"generators", strings_json(gens)},
           {"stable", w.checked}};
    if (w.cofactor) j["cofactor"] = to_string(*w.cofactor);
    if (search.translation) j["translation"] = tuple_json(*search.translation);
    return dump(j);
  }
  std::ostringstream s;
  s << "rationale: " << to_string(w.rationale) << "\n";
  s << "generators: [";
  for (std::size_t i = 0; i < gens.size(); ++i) s << (i ? ", " : "") << gens[i];
  s << "]\n";
  if (w.cofactor) s << "cofactor: " << to_string(*w.cofactor) << "\n";
  if (search.translation) s << "translation: " << tuple_string(*search.translation) << "\n";
  s << "stable: " << (w.checked ? "true" : "false") << "\n";
  return s.str();
}

std::string cmd_shamsuddin(const Options& o) {
  auto a = parse(o.a, 2);
  auto b = parse(o.b, 2);
  auto decision = shamsuddin_simplicity(a, b);
  if (o.json) {
    Json j{{"schema", kSchema}, {"command", "shamsuddin"}};
    if (decision.simple) {
      j["decision"] = "simple";
    } else {
      j["decision"] = "not-simple";
      j["y"] = to_string(*decision.solution);
    }
    return dump(j);
  }
  if (decision.simple) return "simple\n";
  return "not-simple {y: " + to_string(*decision.solution) + "}\n";
}

std::string params_string(const TriangularIsotropyParams& e) {
  static const std::vector<std::string> w_name{"w"};
  return "{b: " + to_string(e.b) + ", p: " + to_string(e.p, w_name) +
         ", c_tilde: " + to_string(e.c_tilde) + ", c_bar: " + to_string(e.c_bar) + "}";
}

Json params_json(const TriangularIsotropyParams& e) {
  static const std::vector<std::string> w_name{"w"};
  return Json{{"b", to_string(e.b)},
              {"p", to_string(e.p, w_name)},
              {"c_tilde", to_string(e.c_tilde)},
              {"c_bar", to_string(e.c_bar)}};
}

std::string cmd_isotropy_b(const Options& o) {
  auto b = parse(o.b, 2);
  const auto d = shear_derivation(b);

  if (!o.map.empty()) {
    auto rho = PolyMap::parse(split_list(o.map), 2);
    auto dec = decompose_triangular_isotropy(rho, b);
    std::string status = dec.status == DecomposeStatus::kOk            ? "ok"
                         : dec.status == DecomposeStatus::kNotCommuting ? "not-commuting"
                                                                        : "shape-mismatch";
    if (o.json) {
      Json j{{"schema", kSchema}, {"command", "isotropy-b"}, {"decompose", status}};
      if (dec.params) j["element"] = params_json(*dec.params);
      return dump(j);
    }
    std::string s = "decompose: " + status + "\n";
    if (dec.params) s += "element: " + params_string(*dec.params) + "\n";
    return s;
  }

  TriangularIsotropyParams e{b, parse(o.p, 1, 0), parse_rat(o.c_tilde), parse_rat(o.c_bar)};
  auto f = triangular_isotropy_map(e);
  auto inv = invert_triangular_isotropy(e);
  const bool comm = commutes(f, d);
  const bool inverse_ok = is_inverse_pair(f, inv);
  const auto jac = jacobian_det(f);
  if (o.json) {
    return dump(Json{{"schema", kSchema},
                     {"command", "isotropy-b"},
                     {"element", params_json(e)},
                     {"map", strings_json(to_strings(f))},
                     {"inverse", strings_json(to_strings(inv))},
                     {"jacobian", to_string(jac)},
                     {"commutes", comm},
                     {"inverse_verified", inverse_ok}});
  }
  std::ostringstream s;
  s << "element: " << params_string(e) << "\n";
  s << "f: " << to_string(f[0]) << "\n";
  s << "g: " << to_string(f[1]) << "\n";
  s << "inverse: " << to_string(inv) << "\n";
  s << "jacobian: " << to_string(jac) << "\n";
  s << "commutes: " << (comm ? "true" : "false") << "\n";
  s << "inverse verified: " << (inverse_ok ? "true" : "false") << "\n";
  return s.str();
}

EnumerationGuard guard_from_env() {
  if (const char* v = std::getenv("DERISTAB_MAX_ENUM"); v && *v) {
    char* end = nullptr;
    unsigned long limit = std::strtoul(v, &end, 10);
    if (end && *end == '\0') return EnumerationGuard::uniform(static_cast<unsigned>(limit));
    throw PreconditionError("DERISTAB_MAX_ENUM must be a non-negative integer");
  }
  return {};
}

std::string cmd_enumerate(const Options& o) {
  auto d = Derivation::parse(split_list(o.derivation), o.n);
  auto maps = bounded_isotropy_enumeration(d, {o.degree, o.coeff}, guard_from_env());
  if (o.json) {
    Json list = Json::array();
    for (const auto& f : maps) list.push_back(strings_json(to_strings(f)));
    return dump(Json{{"schema", kSchema},
                     {"command", "enumerate"},
                     {"degree", o.degree},
                     {"coeff", o.coeff},
                     {"count", maps.size()},
                     {"maps", list}});
  }
  std::string s = "[";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (i) s += "; ";
    s += map_label(maps[i]);
  }
  return s + "]\n";
}

std::string cmd_classify(const Options& o) {
  auto d = Derivation::parse(split_list(o.derivation), o.n);
  auto f = PolyMap::parse(split_list(o.map), o.n);
  long deg = 1;
  for (const auto& c : f.components()) deg = std::max(deg, c.total_degree());
  auto inverse = invert_bounded_degree(f, static_cast<unsigned>(deg));
  auto r = classify_shift(f, d, inverse);
  if (o.json) {
    return dump(Json{{"schema", kSchema},
                     {"command", "classify"},
                     {"classification", to_string(r.outcome)},
                     {"shift", tuple_json(r.shift)},
                     {"shifted_commutes", r.shifted_commutes},
                     {"coefficients_fixed", r.coefficients_fixed},
                     {"verified_automorphism", r.verified_automorphism}});
  }
  std::ostringstream s;
  s << to_string(r.outcome) << "\n";
  s << "shift: " << tuple_string(r.shift) << "\n";
  s << "shifted commutes: " << (r.shifted_commutes ? "true" : "false") << "\n";
  s << "coefficients fixed: " << (r.coefficients_fixed ? "true" : "false") << "\n";
  s << "verified automorphism: " << (r.verified_automorphism ? "true" : "false") << "\n";
  return s.str();
}

std::string cmd_stable(const Options& o) {
  auto d = Derivation::parse(split_list(o.derivation), o.n);
  std::vector<MultiPoly> gens;
  for (const auto& g : split_list(o.generators)) gens.push_back(parse(g, o.n));
  bool stable = gens.size() == 1 ? principal_ideal_stable(d, gens[0])
                                 : multi_generator_stability(d, gens, o.degree);
  if (o.json)
    return dump(Json{{"schema", kSchema}, {"command", "stable"}, {"stable", stable}});
  return stable ? "true\n" : "false\n";
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Exact tools for polynomial derivations and their isotropy groups", "deristab"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* s) { s->add_option("-n", o.n, "number of variables")->required(); };
  auto add_d = [&](CLI::App* s) {
    s->add_option("-D", o.derivation, "derivation coefficients, comma separated")->required();
  };
  auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.json, "JSON output"); };

  auto* commutes_cmd = app.add_subcommand("commutes", "does the map commute with D");
  add_n(commutes_cmd);
  add_d(commutes_cmd);
  commutes_cmd->add_option("-f", o.map, "map components, comma separated")->required();
  add_json(commutes_cmd);

  auto* translations_cmd =
      app.add_subcommand("invariant-translations", "translations fixing every coefficient");
  add_n(translations_cmd);
  add_d(translations_cmd);
  add_json(translations_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "construct a D-stable ideal");
  add_n(witness_cmd);
  add_d(witness_cmd);
  witness_cmd->add_option("-c", o.translation, "invariant translation, comma separated");
  add_json(witness_cmd);

  auto* sham_cmd = app.add_subcommand("shamsuddin", "simplicity of d/dx1 + (a x2 + b) d/dx2");
  sham_cmd->add_option("-a", o.a, "a(x1)")->required();
  sham_cmd->add_option("-b", o.b, "b(x1)")->required();
  add_json(sham_cmd);

  auto* iso_cmd =
      app.add_subcommand("isotropy-b", "isotropy group element of d/dx1 + b(x1) d/dx2");
  iso_cmd->add_option("-b", o.b, "b(x1)")->required();
  iso_cmd->add_option("-p", o.p, "p(w)");
  iso_cmd->add_option("--ctilde", o.c_tilde, "nonzero rational");
  iso_cmd->add_option("--cbar", o.c_bar, "rational");
  iso_cmd->add_option("-f", o.map, "decompose this map instead of building one");
  add_json(iso_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "bounded search for commuting automorphisms");
  add_n(enum_cmd);
  add_d(enum_cmd);
  enum_cmd->add_option("--deg", o.degree, "degree bound per component");
  enum_cmd->add_option("--coeff", o.coeff, "coefficient bound");
  add_json(enum_cmd);

  auto* classify_cmd =
      app.add_subcommand("classify", "shift classification of a commuting map");
  add_n(classify_cmd);
  add_d(classify_cmd);
  classify_cmd->add_option("-f", o.map, "map components, comma separated")->required();
  add_json(classify_cmd);

  auto* stable_cmd = app.add_subcommand("stable", "is the ideal D-stable");
  add_n(stable_cmd);
  add_d(stable_cmd);
  stable_cmd->add_option("-g", o.generators, "ideal generators, comma separated")->required();
  stable_cmd->add_option("--deg", o.degree, "cofactor degree bound for several generators");
  add_json(stable_cmd);

  CommandResult result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    result.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    if (*commutes_cmd) result.out = cmd_commutes(o);
    else if (*translations_cmd) result.out = cmd_invariant_translations(o);
    else if (*witness_cmd) result.out = cmd_witness(o);
    else if (*sham_cmd) result.out = cmd_shamsuddin(o);
    else if (*iso_cmd) result.out = cmd_isotropy_b(o);
    else if (*enum_cmd) result.out = cmd_enumerate(o);
    else if (*classify_cmd) result.out = cmd_classify(o);
    else if (*stable_cmd) result.out = cmd_stable(o);
  } catch (const std::invalid_argument& e) {
    result.exit_code = 1;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::logic_error& e) {
    result.exit_code = 3;
    result.err = std::string("internal error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace deristab::cli
