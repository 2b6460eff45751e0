#include "steklov/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace steklov {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_json_text(const std::string& text, const std::string& context) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    fail(errc::config_error, context + ", line " + std::to_string(line) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::config_error, ("cannot read file: " + path).c_str());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double number_at(const json& j, const char* key, std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    fail(errc::config_error, std::string("missing numeric field \"") + key + "\"");
  }
  require(j.at(key).is_number(), errc::config_error, "field is not a number");
  return j.at(key).get<double>();
}

Domain domain_from_json(const json& j) {
  require(j.is_object() && j.contains("shape"), errc::config_error,
          "domain record needs a \"shape\" field");
  const std::string shape = j.at("shape").get<std::string>();

  bool central = false, quarter = false;
  if (j.contains("symmetries")) {
    for (const auto& s : j.at("symmetries")) {
      const std::string name = s.get<std::string>();
      if (name == "central") central = true;
      else if (name == "quarter_turn") quarter = true;
      else fail(errc::config_error, "unknown symmetry tag: " + name);
    }
  }

  if (shape == "polygon") {
    std::vector<Vec2> vertices;
    for (const auto& v : j.at("vertices")) {
      require(v.is_array() && v.size() == 2, errc::config_error,
              "polygon vertices must be [x, y] pairs");
      vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return make_polygon(std::move(vertices), central, quarter);
  }
  if (shape == "star") {
    std::vector<double> a, b;
    for (const auto& c : j.at("a")) a.push_back(c.get<double>());
    if (j.contains("b")) {
      for (const auto& c : j.at("b")) b.push_back(c.get<double>());
    }
    return make_star(std::move(a), std::move(b), central, quarter);
  }
  if (shape == "disc") return make_disc(number_at(j, "radius", 1.0));
  if (shape == "square") return make_square(number_at(j, "half_side", 1.0));
  if (shape == "rectangle") {
    return make_rectangle(number_at(j, "half_width"), number_at(j, "half_height"));
  }
  if (shape == "cross") {
    return make_cross(number_at(j, "arm_half_length"), number_at(j, "arm_half_width"));
  }
  fail(errc::config_error, "unknown domain shape: " + shape);
}

WeightSpec weight_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), errc::config_error,
          "weight record needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    const int dim = static_cast<int>(number_at(j, "dim", 2.0));
    return make_power_pair(number_at(j, "alpha"), number_at(j, "beta"), dim);
  }
  if (kind == "logconvex") {
    const std::string family = j.value("family", "constant");
    const double r_max = number_at(j, "r_max", 10.0);
    if (family == "constant") return make_constant_weight(number_at(j, "c", 0.0), r_max);
    if (family == "quadratic") return make_quadratic_weight(number_at(j, "a"), r_max);
    if (family == "power") {
      return make_power_potential_weight(number_at(j, "a"), number_at(j, "p"), r_max);
    }
    if (family == "spline") {
      std::vector<double> r, v;
      for (const auto& x : j.at("r")) r.push_back(x.get<double>());
      for (const auto& x : j.at("v")) v.push_back(x.get<double>());
      return make_spline_weight(std::move(r), std::move(v));
    }
    fail(errc::config_error, "unknown log-convex family: " + family);
  }
  fail(errc::config_error, "unknown weight kind: " + kind);
}

}  // namespace

Domain parse_domain(const std::string& json_text) {
  return domain_from_json(parse_json_text(json_text, "domain record"));
}

Domain load_domain(const std::string& path) {
  return domain_from_json(parse_json_text(read_file(path), path));
}

WeightSpec parse_weight(const std::string& json_text) {
  return weight_from_json(parse_json_text(json_text, "weight record"));
}

WeightSpec load_weight_arg(const std::string& path_or_json) {
  if (std::filesystem::exists(path_or_json)) {
    return weight_from_json(parse_json_text(read_file(path_or_json), path_or_json));
  }
  return parse_weight(path_or_json);
}

SuiteConfig load_suite_config(const std::string& path) {
  const json j = parse_json_text(read_file(path), path);
  const std::filesystem::path base = std::filesystem::path(path).parent_path();

  SuiteConfig config;
  config.options.h = number_at(j, "h", 0.06);
  config.options.refinements = static_cast<int>(number_at(j, "refinements", 3.0));
  config.options.ode_steps = static_cast<int>(number_at(j, "ode_steps", 4096.0));
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    config.options.tol.quad = number_at(t, "quad", 1e-9);
    config.options.tol.ode = number_at(t, "ode", 1e-8);
    config.options.tol.slack = number_at(t, "slack", 1e-9);
  }
  if (j.contains("f_threshold")) {
    const std::string rule = j.at("f_threshold").get<std::string>();
    if (rule == "derived") config.options.classify.f_rule = FThresholdRule::sign_of_f;
    else if (rule == "paper") config.options.classify.f_rule = FThresholdRule::printed;
    else fail(errc::config_error, "f_threshold must be \"derived\" or \"paper\"");
  }

  const auto parse_theorems = [](const json& list) {
    std::vector<TheoremId> out;
    for (const auto& t : list) {
      const auto id = theorem_from_label(t.get<std::string>());
      if (!id) fail(errc::config_error, "unknown theorem label: " + t.get<std::string>());
      out.push_back(*id);
    }
    return out;
  };
  if (j.contains("theorems")) config.theorems = parse_theorems(j.at("theorems"));

  if (j.contains("domains")) {
    for (const auto& d : j.at("domains")) {
      SuiteDomain sd;
      sd.id = d.value("id", std::string("domain") + std::to_string(config.domains.size()));
      if (d.contains("file")) {
        sd.domain = load_domain((base / d.at("file").get<std::string>()).string());
      } else {
        sd.domain = domain_from_json(d);
      }
      if (d.contains("theorems")) sd.theorems = parse_theorems(d.at("theorems"));
      config.domains.push_back(std::move(sd));
    }
  }
  if (j.contains("weights")) {
    for (const auto& w : j.at("weights")) {
      SuiteWeight sw;
      sw.id = w.value("id", std::string("weight") + std::to_string(config.weights.size()));
      sw.spec = weight_from_json(w);
      sw.json = w.dump();
      config.weights.push_back(std::move(sw));
    }
  }
  return config;
}

namespace {

ordered symmetry_to_json(const SymmetryCheck& c) {
  ordered j;
  j["pass"] = c.pass;
  j["analytic"] = c.analytic;
  if (!c.analytic) {
    j["max_deviation"] = c.max_deviation;
    j["radii_sampled"] = c.radii_sampled;
  }
  return j;
}

}  // namespace

std::string report_to_json_line(const VerificationReport& r) {
  ordered j;
  j["theorem"] = theorem_label(r.theorem);
  j["domain"] = r.domain_id;
  j["weight"] = r.weight_id;
  if (!r.weight_json.empty()) j["weight_spec"] = json::parse(r.weight_json);
  if (r.params) {
    ordered p;
    p["alpha"] = r.params->alpha;
    p["beta"] = r.params->beta;
    p["dim"] = r.params->dim;
    p["z"] = r.params->z;
    p["rho"] = r.params->rho;
    p["ell"] = r.params->ell;
    p["k"] = r.params->k;
    p["m"] = r.params->m;
    j["params"] = p;
  }
  if (r.condition) {
    ordered c;
    c["theorem_case"] = theorem_case_name(r.condition->theorem_case);
    c["lemma_case"] = lemma_case_name(r.condition->lemma_case);
    if (r.condition->z0) c["z0"] = *r.condition->z0;
    c["f_rules_agree"] = r.condition->f_rules_agree;
    if (r.condition->iv_derived_holds) c["iv_derived_holds"] = *r.condition->iv_derived_holds;
    j["condition"] = c;
  }
  ordered sym;
  sym["s1"] = symmetry_to_json(r.symmetry.s1);
  sym["s2"] = symmetry_to_json(r.symmetry.s2);
  j["symmetry"] = sym;
  j["gamma1_omega"] = r.gamma1_omega;
  j["gamma_list_omega"] = r.gamma_list_omega;
  j["R"] = r.R;
  j["gamma1_ball"] = r.gamma1_ball;
  j["margin"] = r.margin;
  j["tolerance_used"] = r.tolerance_used;
  j["status"] = status_name(r.status);
  j["mesh_h"] = r.mesh_h;
  j["convergence_rate"] = r.convergence_rate;
  ordered rows = ordered::array();
  for (const auto& row : r.consistency) {
    ordered rj;
    rj["name"] = row.name;
    rj["lhs"] = row.lhs;
    rj["rhs"] = row.rhs;
    rj["ok"] = row.ok;
    rows.push_back(rj);
  }
  j["consistency"] = rows;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

std::string report_csv_header() {
  return "theorem,domain,weight,status,margin,tolerance,gamma1_omega,gamma1_ball,R,mesh_h,"
         "convergence_rate";
}

std::string report_to_csv_row(const VerificationReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s,%s,%s,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.4g",
                theorem_label(r.theorem), r.domain_id.c_str(), r.weight_id.c_str(),
                status_name(r.status), r.margin, r.tolerance_used, r.gamma1_omega,
                r.gamma1_ball, r.R, r.mesh_h, r.convergence_rate);
  return buf;
}

}  // namespace steklov
