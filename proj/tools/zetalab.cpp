// zetalab: zeta functions, slopes, Bockstein characteristics, and
// special-value verification for gauge descriptions over finite fields.

#include "zetalab/corpus.hpp"
#include "zetalab/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using namespace zetalab;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitParse = 3;

struct WeightRange {
  bool given = false;
  long lo = 0, hi = 0;
};

WeightRange parse_weights(const std::string& single, const std::string& range) {
  WeightRange w;
  if (!single.empty() && !range.empty())
    throw ParseError("--weight and --weights are mutually exclusive");
  if (!single.empty()) {
    w.given = true;
    w.lo = w.hi = std::stol(single);
  } else if (!range.empty()) {
    auto dots = range.find("..");
    if (dots == std::string::npos)
      throw ParseError("--weights expects an inclusive range 'a..b'");
    w.given = true;
    w.lo = std::stol(range.substr(0, dots));
    w.hi = std::stol(range.substr(dots + 2));
    if (w.lo > w.hi) throw ParseError("--weights range is empty");
  }
  return w;
}

std::pair<long, long> weights_for(const GaugeSpec& g, const WeightRange& w) {
  if (w.given) return {w.lo, w.hi};
  return default_weight_range(g);
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Verified: return kExitOk;
    case Verdict::Failed: return kExitFailed;
    case Verdict::InconsistentInput: return kExitInconsistent;
  }
  return kExitFailed;
}

void print_report_line(const SpecialValueReport& r, const PAdicContext& ctx) {
  std::printf("  r=%-3ld rho=%-3ld |lim|_p=%-8s mu_syn=%-8s chi=%-4ld %s\n",
              r.weight, r.rho, p_power(ctx.p, r.lhs_exponent).c_str(),
              p_power(ctx.p, r.mu_exponent).c_str(), r.chi,
              verdict_name(r.verdict));
}

int cmd_slopes(const InputDocument& doc, const std::string& name, bool json) {
  const GaugeSpec& g = resolve_gauge(doc, name);
  ZetaFunction z = zeta_from_gauge(g);
  Json all = Json::object();
  for (const auto& [deg, P] : z.factors) {
    IsocrystalCharPoly ic{g.ctx, P};
    auto slopes = slope_decomposition(ic);
    if (json) {
      Json arr = Json::array();
      for (const auto& s : slopes)
        arr.push_back({{"slope", rat_str(s.slope)},
                       {"multiplicity", s.multiplicity}});
      all[std::to_string(deg)] = arr;
    } else {
      std::printf("degree %ld:\n", deg);
      for (const auto& s : slopes)
        std::printf("  slope %-6s multiplicity %ld\n",
                    rat_str(s.slope).c_str(), s.multiplicity);
    }
  }
  if (json) std::cout << all.dump(2) << "\n";
  return kExitOk;
}

int cmd_zeta(const InputDocument& doc, const std::string& name, bool json) {
  const GaugeSpec& g = resolve_gauge(doc, name);
  ZetaFunction z = zeta_from_gauge(g);
  if (json) {
    Json out = Json::object();
    for (const auto& [deg, P] : z.factors) {
      Json arr = Json::array();
      for (const Rat& c : P.coeffs()) arr.push_back(rat_str(c));
      out[std::to_string(deg)] = arr;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& [deg, P] : z.factors)
      std::printf("P_%ld(t) = %s\n", deg, P.str().c_str());
  }
  return kExitOk;
}

int run_verify(const InputDocument& doc, const std::string& name,
               const WeightRange& w, bool json, bool print_values) {
  const GaugeSpec& g = resolve_gauge(doc, name);
  auto [lo, hi] = weights_for(g, w);
  bool any_failed = false, any_inconsistent = false;
  Json arr = Json::array();
  if (!json) std::printf("gauge %s (p=%ld, n=%ld):\n", name.c_str(), g.ctx.p,
                         g.ctx.n);
  for (long r = lo; r <= hi; ++r) {
    SpecialValueReport rep = verify_theorem(g, r);
    if (rep.verdict == Verdict::Failed) any_failed = true;
    if (rep.verdict == Verdict::InconsistentInput) any_inconsistent = true;
    if (json)
      arr.push_back(report_json(rep, g.ctx));
    else
      print_report_line(rep, g.ctx);
  }
  if (json) std::cout << arr.dump(2) << "\n";
  (void)print_values;
  if (any_inconsistent) return kExitInconsistent;
  if (any_failed) return kExitFailed;
  return kExitOk;
}

int cmd_bockstein(const std::string& path, bool stable, bool json) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  long p = detail::int_field(j, "p");
  PAdicContext ctx;
  try {
    ctx = PAdicContext(p, 1);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  RatMatrix m = detail::parse_matrix(detail::field(j, "matrix"));
  if (m.rows() != m.cols()) throw ParseError("matrix must be square");
  EndoModule em;
  try {
    em = endo_on_free(m, ctx);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  std::string value;
  if (stable) {
    value = std::to_string(stable_bockstein_char(em, ctx));
  } else {
    auto chi = bockstein_char(em, ctx);
    value = chi ? std::to_string(*chi) : "undefined";
  }
  if (json)
    std::cout << Json{{"p", p},
                      {"stable", stable},
                      {"characteristic", value}}
                     .dump(2)
              << "\n";
  else
    std::printf("%s\n", value.c_str());
  return kExitOk;
}

int cmd_surface(const InputDocument& doc, const std::string& name, bool json) {
  auto it = doc.surfaces.find(name);
  if (it == doc.surfaces.end())
    throw NameError("unknown surface '" + name + "'");
  const SurfaceData& s = it->second;
  const GaugeSpec& g = resolve_gauge(doc, s.gauge);
  SpecialValueReport sv = verify_theorem(g, 1);
  if (sv.verdict == Verdict::InconsistentInput) return kExitInconsistent;
  SurfaceBeta beta =
      surface_beta(sv.mu_exponent, s.gram, s.ns_torsion_order, g.ctx);
  ArtinTateReport at =
      artin_tate_check(g, s.gram, s.ns_torsion_order, s.pic_dim, s.chi_O);
  if (json) {
    std::cout << Json{{"surface", name},
                      {"beta_r", p_power(g.ctx.p, beta.exponent)},
                      {"br_norm_beta", p_power(g.ctx.p, at.beta_exponent)},
                      {"br_norm_artin_tate", p_power(g.ctx.p, at.at_exponent)},
                      {"rho", at.rho_x},
                      {"agree", at.agree},
                      {"square_parity_even", at.even_power},
                      {"verdict", verdict_name(at.verdict)}}
                     .dump(2)
              << "\n";
  } else {
    std::printf("surface %s: beta_r = %s\n", name.c_str(),
                p_power(g.ctx.p, beta.exponent).c_str());
    std::printf("  |Br|_p via beta_r      : %s\n",
                p_power(g.ctx.p, at.beta_exponent).c_str());
    std::printf("  |Br|_p via Artin-Tate  : %s\n",
                p_power(g.ctx.p, at.at_exponent).c_str());
    std::printf("  agreement: %s, even p-power: %s\n",
                at.agree ? "yes" : "no", at.even_power ? "yes" : "no");
  }
  return at.verdict == Verdict::Verified ? kExitOk : kExitFailed;
}

Json selftest_report(bool* all_ok) {
  Json gauges = Json::array();
  bool ok = true;
  auto corpus = curated_corpus();
  std::ostringstream digest_src;
  for (const NamedGauge& ng : corpus) {
    Json entry;
    entry["name"] = ng.name;
    entry["p"] = ng.gauge.ctx.p;
    entry["n"] = ng.gauge.ctx.n;
    Json reports = Json::array();
    for (long r = -3; r <= 5; ++r) {
      SpecialValueReport rep = verify_theorem(ng.gauge, r);
      if (rep.verdict != Verdict::Verified) ok = false;
      reports.push_back(report_json(rep, ng.gauge.ctx));
    }
    entry["weights"] = reports;
    // twist laws at i in {-2..2}
    bool twist_ok = true;
    for (long i = -2; i <= 2; ++i)
      if (!twist_shift_laws(ng.gauge, i, 1).ok()) twist_ok = false;
    entry["twist_laws"] = twist_ok;
    if (!twist_ok) ok = false;
    gauges.push_back(entry);
    digest_src << ng.name << ";";
  }

  // Dieudonne-tier checks: niceob, dim0, order of vanishing
  PAdicContext f5(5, 1);
  Json direct = Json::array();
  struct Named {
    const char* name;
    DieudonneGauge g;
  };
  const Named dgs[] = {{"unit", unit_dieudonne(f5)},
                       {"multiplicative", multiplicative_dieudonne(f5)},
                       {"supersingular", supersingular_dieudonne(f5)},
                       {"ordinary", ordinary_dieudonne(f5)}};
  for (const auto& [nm, g] : dgs) {
    bool niceob = true, dim0 = true;
    for (long r = -3; r <= 5; ++r) niceob = niceob && check_niceob(g, r);
    for (long r = -2; r <= 3; ++r)
      dim0 = dim0 && descent_rank_checks(g, r).alternating_zero;
    direct.push_back({{"name", nm},
                      {"ok", niceob && dim0},
                      {"niceob", niceob},
                      {"dim0", dim0}});
    if (!niceob || !dim0) ok = false;
  }
  TorsionGauge tg = corpus_torsion_gauge(f5);
  bool tors_ok = true;
  for (long r = -3; r <= 5; ++r) {
    auto [h0, h1] = syntomic_cohomology(tg, r);
    long lhs = h0.length() - h1.length();
    long sign = tg.degree % 2 == 0 ? 1 : -1;
    if (lhs != -sign * nygaard_characteristic(tg, r)) tors_ok = false;
    if (!check_niceob(tg, r)) tors_ok = false;
  }
  direct.push_back({{"name", "torsion_m2"}, {"ok", tors_ok}});
  if (!tors_ok) ok = false;

  // surface invariant on the projective plane
  RatMatrix gram = RatMatrix::Identity(1, 1);
  ArtinTateReport at = artin_tate_check(projective_plane_family(f5), gram, 1,
                                        0, 1);
  bool surface_ok = at.verdict == Verdict::Verified && at.beta_exponent == 0 &&
                    at.even_power;
  direct.push_back({{"name", "p2_surface"}, {"ok", surface_ok}});
  if (!surface_ok) ok = false;

  Json out;
  out["tool"] = "zetalab";
  out["version"] = kVersion;
  out["corpus_digest"] = digest(gauges.dump());
  out["gauges"] = gauges;
  out["direct"] = direct;
  out["ok"] = ok;
  if (all_ok) *all_ok = ok;
  return out;
}

int cmd_selftest(bool json) {
  bool ok = false;
  Json rep = selftest_report(&ok);
  if (json) {
    std::cout << rep.dump(2) << "\n";
  } else {
    for (const Json& g : rep["gauges"]) {
      size_t verified = 0, total = 0;
      for (const Json& w : g["weights"]) {
        ++total;
        if (w["verdict"] == "verified") ++verified;
      }
      std::printf("%-22s weights %zu/%zu verified, twist laws %s\n",
                  g["name"].get<std::string>().c_str(), verified, total,
                  g["twist_laws"].get<bool>() ? "ok" : "FAILED");
    }
    for (const Json& d : rep["direct"])
      std::printf("%-22s direct checks %s\n",
                  d["name"].get<std::string>().c_str(),
                  d["ok"].get<bool>() ? "ok" : "FAILED");
    std::printf("selftest: %s\n", ok ? "ok" : "FAILED");
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact special-value computations for gauges over finite fields"};
  app.require_subcommand(1);

  std::string input, gauge, weight, weights, surface_name, matrix_file;
  bool json = false, stable = false;

  auto add_common = [&](CLI::App* cmd, bool needs_gauge) {
    cmd->add_option("--input", input, "input JSON file")->required();
    if (needs_gauge)
      cmd->add_option("--gauge", gauge, "gauge name")->required();
    cmd->add_flag("--json", json, "machine-readable output");
  };

  CLI::App* slopes = app.add_subcommand("slopes", "per-degree slope data");
  add_common(slopes, true);

  CLI::App* zeta = app.add_subcommand("zeta", "per-degree zeta factors");
  add_common(zeta, true);

  CLI::App* special =
      app.add_subcommand("special", "special-value report per weight");
  add_common(special, true);
  special->add_option("--weight", weight, "single weight r");
  special->add_option("--weights", weights, "inclusive range a..b");

  CLI::App* verify =
      app.add_subcommand("verify", "verify the special-value identity");
  add_common(verify, true);
  verify->add_option("--weight", weight, "single weight r");
  verify->add_option("--weights", weights, "inclusive range a..b");

  CLI::App* bockstein = app.add_subcommand(
      "bockstein", "Bockstein characteristic of a matrix endomorphism");
  bockstein->add_option("--input", matrix_file, "JSON with p and matrix")
      ->required();
  bockstein->add_flag("--stable", stable, "stable characteristic");
  bockstein->add_flag("--json", json, "machine-readable output");

  CLI::App* surface =
      app.add_subcommand("surface", "surface invariant and Artin-Tate check");
  surface->add_option("--input", input, "input JSON file")->required();
  surface->add_option("--surface", surface_name, "surface name")->required();
  surface->add_flag("--json", json, "machine-readable output");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the built-in corpus checks");
  selftest->add_flag("--json", json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (selftest->parsed()) return cmd_selftest(json);
    if (bockstein->parsed()) return cmd_bockstein(matrix_file, stable, json);

    if (surface->parsed()) {
      InputDocument doc = load_input(input);
      return cmd_surface(doc, surface_name, json);
    }

    InputDocument doc = load_input(input);
    WeightRange w = parse_weights(weight, weights);
    if (slopes->parsed()) return cmd_slopes(doc, gauge, json);
    if (zeta->parsed()) return cmd_zeta(doc, gauge, json);
    if (special->parsed()) return run_verify(doc, gauge, w, json, true);
    if (verify->parsed()) return run_verify(doc, gauge, w, json, false);
  } catch (const zetalab::NameError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInconsistent;
  } catch (const zetalab::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }
  return kExitOk;
}
