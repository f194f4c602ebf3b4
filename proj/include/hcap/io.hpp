#pragma once

// Shape files and report serialization.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "capacity.hpp"
#include "fixtures.hpp"
#include "geometry.hpp"
#include "verify.hpp"

namespace hcap {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "capacity-report/1";
inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Shape files

struct ShapeFile {
  Space space = Space::halfplane;
  std::vector<Shape> shapes;
};

namespace detail {

inline double field(const json& obj, const std::string& where, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw ValidationError(where + "." + name + ": missing");
  if (!it->is_number()) throw ValidationError(where + "." + name + ": expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ValidationError(where + "." + name + ": not finite");
  return v;
}

inline Shape parse_shape(const json& s, const std::string& where, Space space) {
  if (!s.is_object()) throw ValidationError(where + ": expected an object");
  const auto t = s.find("type");
  if (t == s.end() || !t->is_string()) throw ValidationError(where + ".type: missing or not a string");
  const std::string type = t->get<std::string>();
  const bool half = type == "vslit" || type == "box" || type == "halfdisk";
  const bool disk = type == "rslit" || type == "arcbox";
  if (!half && !disk) throw ValidationError(where + ".type: unknown shape type '" + type + "'");
  if (half != (space == Space::halfplane))
    throw ValidationError(where + ".type: '" + type + "' is not allowed in space '" + space_name(space) + "'");
  try {
    if (type == "vslit") return make_vslit(field(s, where, "x"), field(s, where, "h"));
    if (type == "box")
      return make_box(field(s, where, "x0"), field(s, where, "x1"), field(s, where, "y0"), field(s, where, "y1"));
    if (type == "halfdisk") return make_halfdisk(field(s, where, "c"), field(s, where, "r"));
    const double rho = field(s, where, "rho");
    if (!(rho > 0.5 && rho < 1.0)) throw ValidationError(where + ".rho: must lie in (1/2, 1)");
    if (type == "rslit") return make_rslit(field(s, where, "theta"), rho);
    return make_arcbox(field(s, where, "theta0"), field(s, where, "theta1"), rho);
  } catch (const std::logic_error& e) {
    const std::string what = e.what();
    if (what.rfind(where, 0) == 0) throw;
    throw ValidationError(where + ": " + what);
  }
}

}  // namespace detail

inline ShapeFile parse_shape_file(const json& doc) {
  if (!doc.is_object()) throw ValidationError("document: expected an object");
  const auto sp = doc.find("space");
  if (sp == doc.end() || !sp->is_string()) throw ValidationError("space: missing or not a string");
  ShapeFile f;
  if (*sp == "halfplane") f.space = Space::halfplane;
  else if (*sp == "disk") f.space = Space::disk;
  else throw ValidationError("space: must be \"halfplane\" or \"disk\"");
  const auto sh = doc.find("shapes");
  if (sh == doc.end() || !sh->is_array()) throw ValidationError("shapes: missing or not an array");
  for (std::size_t i = 0; i < sh->size(); ++i)
    f.shapes.push_back(detail::parse_shape((*sh)[i], "shapes[" + std::to_string(i) + "]", f.space));
  const auto err = f.space == Space::halfplane ? validate_hull(f.shapes) : validate_disk_set(f.shapes);
  if (err) throw ValidationError("shapes: " + *err);
  return f;
}

inline ShapeFile read_shape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return parse_shape_file(doc);
}

inline json shape_json(const Shape& s) {
  return std::visit(detail::overloaded{
                        [](const VSlit& v) { return json{{"type", "vslit"}, {"x", v.x}, {"h", v.h}}; },
                        [](const BoxShape& b) { return json{{"type", "box"}, {"x0", b.x0}, {"x1", b.x1}, {"y0", b.y0}, {"y1", b.y1}}; },
                        [](const HalfDisk& d) { return json{{"type", "halfdisk"}, {"c", d.c}, {"r", d.r}}; },
                        [](const RadialSlit& r) { return json{{"type", "rslit"}, {"theta", r.theta}, {"rho", r.rho}}; },
                        [](const ArcBox& a) { return json{{"type", "arcbox"}, {"theta0", a.theta0}, {"theta1", a.theta1}, {"rho", a.rho}}; },
                        [](const PointShape& p) { return json{{"type", "point"}, {"x", p.p.x}, {"y", p.p.y}}; },
                    },
                    s);
}

inline json shape_file_json(Space space, std::span<const Shape> shapes) {
  json arr = json::array();
  for (const Shape& s : shapes) arr.push_back(shape_json(s));
  return json{{"space", space_name(space)}, {"shapes", std::move(arr)}};
}

// ---------------------------------------------------------------------------
// Reports

inline std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace detail {

// JSON has no infinities; open ends become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

inline json result_json(const CheckResult& r) {
  json j;
  if (!r.claim.empty()) j["claim"] = r.claim;
  if (!r.case_id.empty()) j["case"] = r.case_id;
  j["quantity"] = r.quantity;
  j["value"] = detail::number(r.value);
  if (r.std_error) j["std_error"] = detail::number(*r.std_error);
  if (r.bounds) j["bounds"] = json::array({detail::number(r.bounds->first), detail::number(r.bounds->second)});
  if (r.verdict) j["verdict"] = verdict_name(*r.verdict);
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.fixture.empty()) j["fixture"] = r.fixture;
  return j;
}

/// {schema, manifest, results, digest}; the digest covers the first three only.
inline json make_report(const json& manifest, const std::vector<CheckResult>& rows) {
  json results = json::array();
  for (const auto& r : rows) results.push_back(result_json(r));
  json doc{{"schema", kReportSchema}, {"manifest", manifest}, {"results", std::move(results)}};
  doc["digest"] = sha256_hex(doc.dump());
  return doc;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string report_csv(const std::vector<CheckResult>& rows) {
  std::ostringstream out;
  out << "claim,case,quantity,value,std_error,lower,upper,verdict,note\n";
  for (const auto& r : rows) {
    out << csv_escape(r.claim) << ',' << csv_escape(r.case_id) << ',' << csv_escape(r.quantity) << ',' << csv_number(r.value)
        << ',' << (r.std_error ? csv_number(*r.std_error) : "") << ',' << (r.bounds ? csv_number(r.bounds->first) : "") << ','
        << (r.bounds ? csv_number(r.bounds->second) : "") << ',' << (r.verdict ? verdict_name(*r.verdict) : "") << ','
        << csv_escape(r.note) << '\n';
  }
  return out.str();
}

inline json bracket_json(const Bracket& b) { return json::array({detail::number(b.lo), detail::number(b.hi)}); }

inline json fixtures_json(const Fixtures& f) {
  return json{{"t1_ratio", bracket_json(f.t1_ratio)},   {"t1_spread", f.t1_spread},
              {"t1_whitney", bracket_json(f.t1_whitney)}, {"t1_lipschitz", bracket_json(f.t1_lipschitz)},
              {"t2_ratio", bracket_json(f.t2_ratio)},   {"t2_spread", f.t2_spread},
              {"prop1_c1", bracket_json(f.prop1_c1)},   {"prop1_c2", bracket_json(f.prop1_c2)},
              {"induction", bracket_json(f.induction)}, {"fattening", f.fattening},
              {"fattening_step", f.fattening_step},     {"omega", f.omega},
              {"hcap_crad", f.hcap_crad},               {"map_c1", f.map_c1},
              {"map_c2", f.map_c2},                     {"margin", kFixtureMargin}};
}

inline json verify_config_json(const VerifyConfig& c) {
  return json{{"seed", c.seed},
              {"walks", c.n_walks},
              {"corpus_walks", c.corpus_walks},
              {"neighborhood_walks", c.neighborhood_walks},
              {"eps_stop", c.eps_stop},
              {"eps_stop_halfplane", "eps_stop * (hull scale + 1)"},
              {"step_cap", kDefaultStepCap},
              {"max_flagged_fraction", WalkConfig{}.max_flagged_fraction},
              {"tol_area", c.tol_area},
              {"tol_area_relative", true},
              {"y_grid_multipliers_of_scale", c.y_multipliers},
              {"limit_y", c.limit_y},
              {"corpus_size", c.corpus_size},
              {"halfplane_corpus_size", c.halfplane_corpus_size},
              {"pair_count", c.pair_count},
              {"prop1_cases", c.prop1_cases},
              {"fattening_cases", c.fattening_cases},
              {"omega_cases", c.omega_cases},
              {"eps_list", c.eps_list},
              {"limit_delta", c.limit_delta},
              {"omega_eps", c.omega_eps},
              {"fattening_step", c.fattening_step},
              {"fixtures", fixtures_json(c.fixtures)}};
}

inline std::vector<CheckResult> capacity_rows(const CapacityReport& r) {
  std::vector<CheckResult> rows;
  const auto est = [&](const std::string& q, const Estimate& e) {
    CheckResult c;
    c.quantity = q;
    c.value = e.mean;
    c.std_error = e.std_error;
    c.note = e.bias_note;
    rows.push_back(c);
  };
  const auto exact = [&](const std::string& q, double v) {
    CheckResult c;
    c.quantity = q;
    c.value = v;
    c.note = "closed form";
    rows.push_back(c);
  };
  if (r.hcap) est("hcap", *r.hcap);
  if (r.hcap_closed_form) exact("hcap", *r.hcap_closed_form);
  if (r.hcap_detail) {
    for (std::size_t k = 0; k < r.hcap_detail->per_y.size(); ++k)
      est("hcap_raw(y=" + detail::fmt(r.hcap_detail->y_grid[k]) + ")", r.hcap_detail->per_y[k]);
    CheckResult c;
    c.quantity = "hcap_fit_max_residual_sigma";
    c.value = r.hcap_detail->max_residual_sigma;
    c.note = r.hcap_detail->fit_rejected ? "fit rejected" : "fit accepted";
    rows.push_back(c);
  }
  if (r.dcap) est("dcap", *r.dcap);
  if (r.dcap_closed_form) exact("dcap", *r.dcap_closed_form);
  if (r.crad) est(r.space == Space::halfplane ? "crad(i)" : "crad(0)", *r.crad);
  for (const auto& a : r.areas) {
    CheckResult c;
    c.quantity = "area:" + a.name;
    c.value = a.bounds.mid();
    c.bounds = std::pair{a.bounds.lower, a.bounds.upper};
    if (!a.bounds.tolerance_met) c.note = "tolerance not met";
    rows.push_back(c);
  }
  for (const auto& v : r.ratios) {
    CheckResult c;
    c.quantity = "ratio:" + v.name;
    c.value = v.value;
    rows.push_back(c);
  }
  return rows;
}

}  // namespace hcap
