#pragma once

#include "zetalab/version.hpp"
#include "zetalab/zeta.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

namespace zetalab {

using Json = nlohmann::json;

/// Schema or parse failure; the CLI maps this onto exit code 3.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Name that does not resolve; the CLI maps this onto exit code 2.
struct NameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfaceData {
  std::string gauge;
  RatMatrix gram;
  long ns_torsion_order = 1;
  long pic_dim = 0;
  long chi_O = 1;
};

struct InputDocument {
  PAdicContext ctx;
  std::map<std::string, GaugeSpec> gauges;
  std::map<std::string, SurfaceData> surfaces;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline long int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

inline long int_field_or(const Json& j, const char* key, long dflt) {
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_number_integer())
    throw ParseError(std::string("field '") + key + "' must be an integer");
  return it->get<long>();
}

inline RatPoly parse_poly(const Json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be an array");
  std::vector<Rat> c;
  for (const Json& x : j) {
    if (!x.is_string())
      throw ParseError("polynomial coefficients must be strings");
    try {
      c.push_back(parse_rat(x.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return RatPoly(std::move(c));
}

inline RatMatrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a nonempty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  RatMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw ParseError("matrix rows must have equal length");
    for (size_t k = 0; k < cols; ++k) {
      const Json& x = row[k];
      try {
        if (x.is_string())
          m(static_cast<Index>(i), static_cast<Index>(k)) =
              parse_rat(x.get<std::string>());
        else if (x.is_number_integer())
          m(static_cast<Index>(i), static_cast<Index>(k)) = Rat(x.get<long>());
        else
          throw ParseError("matrix entries must be strings or integers");
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
  }
  return m;
}

inline HodgeTable parse_hodge(const Json& j) {
  if (!j.is_array()) throw ParseError("hodge table must be an array");
  HodgeTable t;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 3)
      throw ParseError("hodge entries are [i, j, h] triples");
    t.add(e[0].get<long>(), e[1].get<long>(), e[2].get<long>());
  }
  return t;
}

inline std::vector<SlopeDatum> parse_slopes(const Json& j) {
  if (!j.is_array()) throw ParseError("slopes must be an array");
  std::vector<SlopeDatum> out;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string())
      throw ParseError("slope entries are [\"s/r\", multiplicity] pairs");
    try {
      out.push_back(SlopeDatum{parse_rat(e[0].get<std::string>()),
                               e[1].get<long>()});
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what());
    }
  }
  return out;
}

inline GaugeSummand parse_summand(const Json& j, const PAdicContext& ctx) {
  std::string tier = field(j, "tier").get<std::string>();
  long degree = int_field_or(j, "degree", 0);
  std::optional<HodgeTable> hodge;
  if (j.contains("hodge")) hodge = parse_hodge(j["hodge"]);
  try {
    if (tier == "charpoly")
      return charpoly_summand(ctx, degree, parse_poly(field(j, "poly")),
                              hodge);
    if (tier == "slope")
      return slope_summand(degree, parse_slopes(field(j, "slopes")), hodge);
    if (tier == "dieudonne")
      return dieudonne_summand(
          make_dieudonne_gauge(ctx, int_field(j, "t_rank"),
                               int_field(j, "w_rank"),
                               parse_matrix(field(j, "matrix")), degree),
          hodge);
    if (tier == "torsion")
      return torsion_summand(make_torsion_gauge(
          ctx, int_field(j, "modulus"), int_field(j, "t_rank"),
          int_field(j, "w_rank"), parse_matrix(field(j, "matrix")), degree));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown tier '" + tier + "'");
}

}  // namespace detail

inline InputDocument parse_input(const Json& j) {
  using namespace detail;
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  if (int_field(j, "schema_version") != kSchemaVersion)
    throw ParseError("unsupported schema_version");
  InputDocument doc;
  try {
    doc.ctx = PAdicContext(int_field(j, "p"), int_field_or(j, "n", 1));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (j.contains("gauges")) {
    const Json& gs = j["gauges"];
    if (!gs.is_object()) throw ParseError("'gauges' must be an object");
    for (auto it = gs.begin(); it != gs.end(); ++it) {
      const Json& g = it.value();
      std::vector<GaugeSummand> summands;
      for (const Json& s : field(g, "summands"))
        summands.push_back(parse_summand(s, doc.ctx));
      try {
        doc.gauges.emplace(
            it.key(),
            make_gauge_spec(doc.ctx, std::move(summands),
                            int_field_or(g, "shift", 0),
                            int_field_or(g, "twist", 0)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
  }
  if (j.contains("surfaces")) {
    const Json& ss = j["surfaces"];
    if (!ss.is_object()) throw ParseError("'surfaces' must be an object");
    for (auto it = ss.begin(); it != ss.end(); ++it) {
      const Json& s = it.value();
      SurfaceData d;
      d.gauge = field(s, "gauge").get<std::string>();
      d.gram = parse_matrix(field(s, "gram"));
      d.ns_torsion_order = int_field_or(s, "ns_torsion_order", 1);
      d.pic_dim = int_field_or(s, "pic_dim", 0);
      d.chi_O = int_field_or(s, "chi_O", 1);
      if (!doc.gauges.count(d.gauge))
        throw NameError("surface references unknown gauge '" + d.gauge + "'");
      doc.surfaces.emplace(it.key(), std::move(d));
    }
  }
  return doc;
}

inline InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  return parse_input(j);
}

inline const GaugeSpec& resolve_gauge(const InputDocument& doc,
                                      const std::string& name) {
  auto it = doc.gauges.find(name);
  if (it == doc.gauges.end()) throw NameError("unknown gauge '" + name + "'");
  return it->second;
}

inline std::string p_power(long p, long exponent) {
  return std::to_string(p) + "^" + std::to_string(exponent);
}

inline Json report_json(const SpecialValueReport& r, const PAdicContext& ctx) {
  Json diag = Json::array();
  for (const auto& [deg, d] : r.diag)
    diag.push_back({{"degree", deg},
                    {"m", d.m},
                    {"nu", d.nu},
                    {"sigma", d.sigma},
                    {"e", d.e}});
  return Json{{"weight", r.weight},
              {"rho", r.rho},
              {"lhs_norm", p_power(ctx.p, r.lhs_exponent)},
              {"mu_syn", p_power(ctx.p, r.mu_exponent)},
              {"chi", r.chi},
              {"verdict", verdict_name(r.verdict)},
              {"limit", rat_str(r.limit_value)},
              {"degrees", diag},
              {"note", r.note}};
}

/// FNV-1a 64-bit digest of the canonical serialization.
inline std::string digest(const std::string& text) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[2 + 16 + 1];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return std::string(buf);
}

}  // namespace zetalab
