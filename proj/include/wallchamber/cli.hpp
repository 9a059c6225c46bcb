// Copyright 2026 The wallchamber Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wallchamber/dioph.hpp"
#include "wallchamber/k3.hpp"
#include "wallchamber/lattice.hpp"
#include "wallchamber/moduli.hpp"
#include "wallchamber/walls.hpp"

namespace wallchamber::cli {

using json = nlohmann::json;  // object keys are kept sorted: byte-stable

inline constexpr int kSchemaVersion = 1;

/// Everything a subcommand produces. Rendering is deterministic for fixed
/// inputs and schema version.
struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

enum class Format { kText, kJson };

namespace detail {

inline void render_text_value(const json& v, const std::string& key,
                              int indent, std::ostream& os) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& s) {
    return s.is_string() ? s.get<std::string>() : s.dump();
  };
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (auto it = v.begin(); it != v.end(); ++it)
      render_text_value(it.value(), it.key(), indent + 2, os);
  } else if (v.is_array()) {
    bool flat = std::all_of(v.begin(), v.end(),
                            [](const json& e) { return e.is_primitive(); });
    if (flat) {
      os << pad << key << " = [";
      for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << scalar(v[i]);
      os << "]\n";
      return;
    }
    os << pad << key << ": [" << v.size() << "]\n";
    std::size_t i = 0;
    for (const auto& item : v)
      render_text_value(item, "- " + std::to_string(i++), indent + 2, os);
  } else {
    os << pad << key << " = " << scalar(v) << "\n";
  }
}

}  // namespace detail

inline std::string render(const Report& rep, Format format) {
  if (format == Format::kJson) {
    json j;
    j["command"] = rep.command;
    j["inputs"] = rep.inputs;
    j["results"] = rep.results;
    j["schema_version"] = kSchemaVersion;
    j["warnings"] = rep.warnings;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "command: " << rep.command << "\n";
  detail::render_text_value(rep.inputs, "inputs", 0, os);
  detail::render_text_value(rep.results, "results", 0, os);
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  return os.str();
}

namespace detail {

using lattice::DivisorClass;
using lattice::SurfaceModel;

struct CommonArgs {
  int n = 0;
  std::string c1;
  long long c2 = 0;
  std::string l, l0, region = "full-cone";
  std::string format = "text";
  std::string config_path;
};

inline DivisorClass parse_for(const SurfaceModel& s, const std::string& text,
                              const char* flag) {
  DivisorClass d = lattice::parse_class(text);
  if (d.e.size() != static_cast<std::size_t>(s.n))
    throw InvalidInput(std::string(flag) + ": class '" + text + "' has " +
                       std::to_string(d.e.size()) +
                       " exceptional coordinates, expected n = " +
                       std::to_string(s.n));
  return d;
}

inline walls::EnumerateOptions load_options(const std::string& config_path) {
  walls::EnumerateOptions opts;
  if (config_path.empty()) return opts;
  std::ifstream in(config_path);
  if (!in) throw InvalidInput("config: cannot open " + config_path);
  json cfg = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (cfg.is_discarded())
    throw InvalidInput("config: " + config_path + " is not valid JSON");
  if (cfg.contains("full_cone_b_bound"))
    opts.full_cone_b_bound = cfg["full_cone_b_bound"].get<long long>();
  if (cfg.contains("bound_scale"))
    opts.bound_scale = cfg["bound_scale"].get<long long>();
  return opts;
}

inline json wall_list_json(const std::vector<walls::Wall>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(w.zeta.str());
  return arr;
}

inline json numerics_json(const moduli::WallNumerics& num) {
  json j;
  j["l_zeta"] = num.l_zeta;
  j["n_zeta"] = num.n_zeta;
  j["n_minus_zeta"] = num.n_minus_zeta;
  j["creates_component"] = num.creates_component;
  return j;
}

inline json bn_json(const k3::BrillNoetherData& bn) {
  json j;
  j["g"] = bn.g;
  j["r"] = bn.r;
  j["d"] = bn.d;
  j["rho"] = bn.rho;
  return j;
}

}  // namespace detail

/// Parses argv (without the program name), runs the subcommand, writes the
/// rendered report to `out` and diagnostics to `err`. Returns the process
/// exit code: 0 success, 2 invalid input, 1 internal failure.
inline int run(const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err) {
  using detail::parse_for;
  using lattice::DivisorClass;
  using lattice::SurfaceModel;

  CLI::App app{"exact wall-and-chamber arithmetic for rank-2 moduli"};
  app.require_subcommand(1);
  detail::CommonArgs a;
  std::string dioph_mode, k3_mode;
  long long x = 0;
  std::optional<long long> bmin, bmax;
  bool orderings = false;
  long long l2 = 0;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", a.format)
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--config", a.config_path);
  };

  CLI::App* walls_cmd = app.add_subcommand("walls", "enumerate walls");
  walls_cmd->add_option("--n", a.n)->required();
  walls_cmd->add_option("--c1", a.c1)->required();
  walls_cmd->add_option("--c2", a.c2)->required();
  walls_cmd->add_option("--region", a.region)
      ->check(CLI::IsMember({"full-cone", "segment"}));
  walls_cmd->add_option("--L0", a.l0);
  walls_cmd->add_option("--L", a.l);
  add_format(walls_cmd);

  CLI::App* generic_cmd =
      app.add_subcommand("generic", "test a polarization for genericity");
  generic_cmd->add_option("--n", a.n)->required();
  generic_cmd->add_option("--c1", a.c1)->required();
  generic_cmd->add_option("--c2", a.c2)->required();
  generic_cmd->add_option("--L", a.l)->required();
  add_format(generic_cmd);

  CLI::App* crossings_cmd =
      app.add_subcommand("crossings", "walls separating two polarizations");
  crossings_cmd->add_option("--n", a.n)->required();
  crossings_cmd->add_option("--c1", a.c1)->required();
  crossings_cmd->add_option("--c2", a.c2)->required();
  crossings_cmd->add_option("--L0", a.l0)->required();
  crossings_cmd->add_option("--L", a.l)->required();
  add_format(crossings_cmd);

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "component-creation analysis");
  analyze_cmd->add_option("--n", a.n)->required();
  analyze_cmd->add_option("--c1", a.c1)->required();
  analyze_cmd->add_option("--c2", a.c2)->required();
  analyze_cmd->add_option("--L", a.l)->required();
  add_format(analyze_cmd);

  CLI::App* minus_cmd =
      app.add_subcommand("minus-one", "enumerate (-1)-classes");
  minus_cmd->add_option("--n", a.n)->required();
  add_format(minus_cmd);

  CLI::App* dioph_cmd = app.add_subcommand("dioph", "wall system solutions");
  dioph_cmd->require_subcommand(1);
  CLI::App* dioph_classify = dioph_cmd->add_subcommand(
      "classify", "closed-form positive-b classification");
  dioph_classify->add_option("--x", x)->required();
  add_format(dioph_classify);
  CLI::App* dioph_brute =
      dioph_cmd->add_subcommand("brute", "exhaustive solution search");
  dioph_brute->add_option("--x", x)->required();
  long long bmin_v = 0, bmax_v = 0;
  CLI::Option* bmin_opt = dioph_brute->add_option("--bmin", bmin_v);
  CLI::Option* bmax_opt = dioph_brute->add_option("--bmax", bmax_v);
  dioph_brute->add_flag("--orderings", orderings,
                        "list all orderings, not multiset classes");
  add_format(dioph_brute);
  CLI::App* dioph_bounds =
      dioph_cmd->add_subcommand("bounds", "real root bounds for b");
  dioph_bounds->add_option("--x", x)->required();
  add_format(dioph_bounds);

  CLI::App* k3_cmd = app.add_subcommand("k3", "K3-side numerology");
  k3_cmd->require_subcommand(1);
  CLI::App* k3_report = k3_cmd->add_subcommand("report", "full report");
  k3_report->add_option("--l2", l2)->required();
  k3_report->add_option("--c2", a.c2)->required();
  add_format(k3_report);
  CLI::App* k3_bn = k3_cmd->add_subcommand("bn", "Brill-Noether instance");
  k3_bn->add_option("--l2", l2)->required();
  k3_bn->add_option("--c2", a.c2)->required();
  add_format(k3_bn);
  CLI::App* k3_regime = k3_cmd->add_subcommand("regime", "regime index");
  k3_regime->add_option("--l2", l2)->required();
  k3_regime->add_option("--c2", a.c2)->required();
  add_format(k3_regime);

  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Report rep;
  try {
    walls::EnumerateOptions opts = detail::load_options(a.config_path);
    if (walls_cmd->parsed()) {
      SurfaceModel s(a.n);
      DivisorClass c1 = parse_for(s, a.c1, "--c1");
      walls::WallSpec spec(s, c1, a.c2);
      rep.command = "walls";
      rep.inputs = {{"n", a.n}, {"c1", a.c1}, {"c2", a.c2},
                    {"region", a.region}};
      walls::Region region = walls::FullCone{};
      if (a.region == "segment") {
        if (a.l0.empty() || a.l.empty())
          throw InvalidInput("walls: --region segment requires --L0 and --L");
        rep.inputs["L0"] = a.l0;
        rep.inputs["L"] = a.l;
        region = walls::Segment{parse_for(s, a.l0, "--L0"),
                                parse_for(s, a.l, "--L")};
      }
      auto ws = walls::enumerate_walls(spec, region, opts);
      rep.results["walls"] = detail::wall_list_json(ws);
      rep.results["count"] = ws.size();
      rep.results["x"] = spec.x;
    } else if (generic_cmd->parsed()) {
      SurfaceModel s(a.n);
      walls::WallSpec spec(s, parse_for(s, a.c1, "--c1"), a.c2);
      DivisorClass l = parse_for(s, a.l, "--L");
      rep.command = "generic";
      rep.inputs = {{"n", a.n}, {"c1", a.c1}, {"c2", a.c2}, {"L", a.l}};
      auto w = walls::wall_through(spec, l);
      rep.results["generic"] = !w.has_value();
      if (w) rep.results["wall"] = w->zeta.str();
    } else if (crossings_cmd->parsed()) {
      SurfaceModel s(a.n);
      walls::WallSpec spec(s, parse_for(s, a.c1, "--c1"), a.c2);
      DivisorClass l0 = parse_for(s, a.l0, "--L0");
      DivisorClass l1 = parse_for(s, a.l, "--L");
      rep.command = "crossings";
      rep.inputs = {{"n", a.n}, {"c1", a.c1}, {"c2", a.c2}, {"L0", a.l0},
                    {"L", a.l}};
      auto sep = walls::separating_walls(spec, l0, l1);
      json arr = json::array();
      for (const auto& [w, o] : sep)
        arr.push_back({{"wall", w.zeta.str()},
                       {"orientation", walls::to_string(o)}});
      rep.results["separating"] = arr;
      rep.results["count"] = sep.size();
      rep.results["same_chamber"] = sep.empty();
    } else if (analyze_cmd->parsed()) {
      SurfaceModel s(a.n);
      DivisorClass c1 = parse_for(s, a.c1, "--c1");
      DivisorClass l = parse_for(s, a.l, "--L");
      rep.command = "analyze";
      rep.inputs = {{"n", a.n}, {"c1", a.c1}, {"c2", a.c2}, {"L", a.l}};
      moduli::AnalysisReport ar = moduli::analyze(s, c1, a.c2, l);
      rep.results["normalized_c1"] = ar.normalized_c1.str();
      rep.results["twist"] = ar.twist.str();
      rep.results["adjusted_c2"] = ar.adjusted_c2;
      rep.results["x"] = ar.x;
      rep.results["dim_moduli"] = ar.dim_moduli;
      rep.results["l0"] = ar.l0.str();
      rep.results["l"] = ar.l.str();
      json sep = json::array();
      for (const auto& e : ar.separating) {
        json j = detail::numerics_json(e.numerics);
        j["wall"] = e.wall.zeta.str();
        sep.push_back(j);
      }
      rep.results["separating"] = sep;
      rep.results["creating"] = detail::wall_list_json(ar.creating);
      rep.results["verdict"] = moduli::to_string(ar.verdict);
      rep.warnings = ar.warnings;
      rep.notes = ar.notes;
    } else if (minus_cmd->parsed()) {
      SurfaceModel s(a.n);
      rep.command = "minus-one";
      rep.inputs = {{"n", a.n}};
      auto classes = lattice::minus_one_classes(s);
      json arr = json::array();
      for (const auto& c : classes) arr.push_back(c.str());
      rep.results["classes"] = arr;
      rep.results["count"] = classes.size();
    } else if (dioph_classify->parsed()) {
      rep.command = "dioph classify";
      rep.inputs = {{"x", x}};
      json arr = json::array();
      for (const auto& sol : dioph::classify_positive_b(x))
        arr.push_back({{"b", sol.b}, {"a", sol.a}});
      rep.results["solutions"] = arr;
      rep.results["count"] = arr.size();
    } else if (dioph_brute->parsed()) {
      rep.command = "dioph brute";
      auto range = dioph::default_b_range(x);
      if (*bmin_opt) range.first = bmin_v;
      if (*bmax_opt) range.second = bmax_v;
      rep.inputs = {{"x", x}, {"bmin", range.first}, {"bmax", range.second},
                    {"orderings", orderings}};
      auto sols = dioph::brute_solutions(
          x, range.first, range.second,
          orderings ? dioph::SolutionListing::kOrderings
                    : dioph::SolutionListing::kMultisets);
      json arr = json::array();
      for (const auto& sol : sols) arr.push_back({{"b", sol.b}, {"a", sol.a}});
      rep.results["solutions"] = arr;
      rep.results["count"] = arr.size();
    } else if (dioph_bounds->parsed()) {
      rep.command = "dioph bounds";
      rep.inputs = {{"x", x}};
      auto bounds = dioph::real_b_bounds(x);
      rep.results["b_minus"] = {{"exact", bounds.b_minus.str()},
                                {"decimal", bounds.b_minus.decimal()}};
      rep.results["b_plus"] = {{"exact", bounds.b_plus.str()},
                               {"decimal", bounds.b_plus.decimal()},
                               {"floor", bounds.b_plus.floor()}};
      rep.results["quadratic"] = {{"b2_coeff", 1},
                                  {"b_coeff", bounds.quad_linear},
                                  {"const", bounds.quad_const}};
    } else if (k3_report->parsed() || k3_bn->parsed() || k3_regime->parsed()) {
      k3::K3Config cfg(l2, a.c2);
      rep.inputs = {{"l2", l2}, {"c2", a.c2}};
      if (k3_regime->parsed()) {
        rep.command = "k3 regime";
        rep.results["regime"] = k3::regime(cfg);
      } else if (k3_bn->parsed()) {
        rep.command = "k3 bn";
        if (k3::is_small_c2(cfg)) {
          rep.results["range"] = "small";
          rep.results["bn"] = detail::bn_json(k3::bn_instance_small(cfg));
        } else {
          long long n = k3::regime(cfg);
          rep.results["range"] = "large";
          rep.results["regime"] = n;
          rep.results["bn"] = detail::bn_json(k3::bn_instance_large(cfg, n));
        }
      } else {
        rep.command = "k3 report";
        rep.results["dim_moduli"] = k3::moduli_dim_k3(cfg);
        rep.results["small_c2"] = k3::is_small_c2(cfg);
        if (k3::is_small_c2(cfg)) {
          rep.results["bn"] = detail::bn_json(k3::bn_instance_small(cfg));
        } else {
          long long n = k3::regime(cfg);
          rep.results["regime"] = n;
          rep.results["bn"] = detail::bn_json(k3::bn_instance_large(cfg, n));
          k3::TypeMReport tm = k3::type_m_report(cfg, n, n);
          json j;
          j["m"] = tm.m;
          j["zm_length"] = tm.zm_length;
          j["dim_moduli"] = tm.dim_moduli;
          j["h0_lower"] = tm.h0_lower;
          j["case1_codim"] = tm.case1_codim;
          j["case2_codim"] = tm.case2_codim;
          j["reducible_bounds"] = tm.reducible_bounds;
          rep.results["type_m"] = j;
          rep.results["nonlocallyfree_l1"] =
              k3::nonlocallyfree_param_count(cfg, 1);
          rep.warnings.push_back(tm.range_note);
        }
      }
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }

  out << render(rep, a.format == "json" ? Format::kJson : Format::kText);
  return 0;
}

}  // namespace wallchamber::cli
