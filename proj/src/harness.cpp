// Copyright (C) 2026 The sepoco Authors. All Rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepoco/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "sepoco/error.hpp"

namespace sepoco {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& key, std::int64_t line, const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, line, "expected a number, got '" + text + "'");
  }
}

std::int64_t parse_int(const std::string& key, std::int64_t line, const std::string& text) {
  try {
    size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, line, "expected an integer, got '" + text + "'");
  }
}

Vector parse_vector(const std::string& key, std::int64_t line, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty() || text.empty()) throw ConfigError(key, line, "expected a list of numbers");
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(key, line, parts[i]);
  return v;
}

std::string format_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += echo_number(v(i));
  }
  return out;
}

Vector broadcast(const std::string& key, std::int64_t line, const Vector& v, int d) {
  if (v.size() == d) return v;
  if (v.size() == 1) return Vector::Constant(d, v(0));
  throw ConfigError(key, line, "expected 1 or " + std::to_string(d) + " values");
}

bool same(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

bool same(const std::optional<Vector>& a, const std::optional<Vector>& b) {
  return a.has_value() == b.has_value() && (!a || same(*a, *b));
}

GeometryConfig parse_geometry(const std::string& text, std::int64_t line) {
  const std::string key = "geometry";
  std::istringstream in(text);
  GeometryConfig g;
  in >> g.kind;
  if (g.kind != "ball" && g.kind != "box" && g.kind != "simplex" && g.kind != "polytope") {
    throw ConfigError(key, line, "unknown geometry '" + g.kind + "'");
  }
  std::map<std::string, std::string> fields;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ConfigError(key, line, "expected name=value, got '" + tok + "'");
    if (!fields.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
      throw ConfigError(key, line, "repeated geometry field '" + tok.substr(0, eq) + "'");
    }
  }
  auto take = [&](const std::string& name) -> std::optional<std::string> {
    auto it = fields.find(name);
    if (it == fields.end()) return std::nullopt;
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  const auto d = take("d");
  if (!d) throw ConfigError(key, line, "geometry needs d=<dimension>");
  const std::int64_t dim = parse_int(key, line, *d);
  if (dim < 1 || dim > 1000) throw ConfigError(key, line, "dimension out of range");
  g.dimension = static_cast<int>(dim);
  if (g.kind == "ball") {
    if (auto r = take("radius")) g.radius = parse_double(key, line, *r);
    g.center = Vector::Zero(g.dimension);
    if (auto c = take("center")) g.center = broadcast(key, line, parse_vector(key, line, *c), g.dimension);
  } else if (g.kind == "box") {
    const auto lo = take("lower");
    const auto up = take("upper");
    if (!lo || !up) throw ConfigError(key, line, "box needs lower= and upper=");
    g.lower = broadcast(key, line, parse_vector(key, line, *lo), g.dimension);
    g.upper = broadcast(key, line, parse_vector(key, line, *up), g.dimension);
  } else if (g.kind == "polytope") {
    const auto faces = take("faces");
    if (!faces) throw ConfigError(key, line, "polytope needs faces=a,..:b;...");
    for (const auto& f : split(*faces, ';')) {
      const auto colon = f.find(':');
      if (colon == std::string::npos) throw ConfigError(key, line, "face needs normal:offset");
      Halfspace h{parse_vector(key, line, f.substr(0, colon)),
                  parse_double(key, line, f.substr(colon + 1))};
      if (h.normal.size() != g.dimension) throw ConfigError(key, line, "face normal has wrong dimension");
      g.faces.push_back(std::move(h));
    }
    if (auto a = take("anchor")) {
      g.anchor = parse_vector(key, line, *a);
      if (g.anchor->size() != g.dimension) throw ConfigError(key, line, "anchor has wrong dimension");
    }
  }
  if (!fields.empty()) {
    throw ConfigError(key, line, "unknown geometry field '" + fields.begin()->first + "'");
  }
  try {
    (void)g.build();
  } catch (const Error& e) {
    throw ConfigError(key, line, e.what());
  }
  return g;
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string echo_text(const ParamsEcho& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIoError, "failed writing " + path);
}

std::optional<ScalingFit> try_fit(const std::map<std::int64_t, std::vector<double>>& values,
                                  Metric metric) {
  try {
    return fit_scaling(values, metric);
  } catch (const Error&) {
    return std::nullopt;
  }
}

double ccv_exponent(CostMode mode, double beta) {
  return mode == CostMode::kConvex ? 1.0 - beta : 1.0 - beta / 2.0;
}

}  // namespace

ConvexBody GeometryConfig::build() const {
  if (kind == "ball") return ConvexBody::ball(center, radius);
  if (kind == "box") return ConvexBody::box(lower, upper);
  if (kind == "simplex") return ConvexBody::simplex(dimension);
  if (kind == "polytope") return ConvexBody::polytope(faces, anchor);
  fail(ErrorCode::kInvalidConfig, "unknown geometry '" + kind + "'");
}

std::string GeometryConfig::format() const {
  std::string out = kind + " d=" + std::to_string(dimension);
  if (kind == "ball") {
    out += " radius=" + echo_number(radius) + " center=" + format_vector(center);
  } else if (kind == "box") {
    out += " lower=" + format_vector(lower) + " upper=" + format_vector(upper);
  } else if (kind == "polytope") {
    out += " faces=";
    for (size_t i = 0; i < faces.size(); ++i) {
      if (i) out += ';';
      out += format_vector(faces[i].normal) + ":" + echo_number(faces[i].offset);
    }
    if (anchor) out += " anchor=" + format_vector(*anchor);
  }
  return out;
}

bool GeometryConfig::operator==(const GeometryConfig& o) const {
  if (kind != o.kind || dimension != o.dimension || faces.size() != o.faces.size()) return false;
  for (size_t i = 0; i < faces.size(); ++i) {
    if (!same(faces[i].normal, o.faces[i].normal) || faces[i].offset != o.faces[i].offset) {
      return false;
    }
  }
  return radius == o.radius && same(center, o.center) && same(lower, o.lower) &&
         same(upper, o.upper) && same(anchor, o.anchor);
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kBagel: return "bagel";
    case Algorithm::kBaseOgd: return "base_ogd";
    case Algorithm::kProjectionBaseline: return "projection_baseline";
  }
  return "unknown";
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  const ScenarioSpec& a = scenario;
  const ScenarioSpec& b = o.scenario;
  const bool scenario_same = a.kind == b.kind && a.constraints == b.constraints &&
                             same(a.axis, b.axis) && a.bias == b.bias && a.tilt == b.tilt &&
                             a.period == b.period && a.margin == b.margin &&
                             a.offset == b.offset && a.radius == b.radius && a.noise == b.noise;
  return scenario_same && geometry == o.geometry && algorithm == o.algorithm && mode == o.mode &&
         horizons == o.horizons && beta == o.beta && betas == o.betas && seeds == o.seeds &&
         constants.c_delta == o.constants.c_delta && constants.c_K == o.constants.c_K &&
         constants.epsilon == o.constants.epsilon && theta == o.theta &&
         M1_override == o.M1_override && output_path == o.output_path && name == o.name &&
         threads == o.threads;
}

ExperimentConfig parse_config(std::string_view text, bool for_tradeoff) {
  ExperimentConfig cfg;
  std::map<std::string, std::int64_t> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::int64_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(body, line, "expected key=value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!seen.emplace(key, line).second) throw ConfigError(key, line, "key given twice");

    if (key == "algorithm") {
      if (value == "bagel") cfg.algorithm = Algorithm::kBagel;
      else if (value == "base_ogd") cfg.algorithm = Algorithm::kBaseOgd;
      else if (value == "projection_baseline") cfg.algorithm = Algorithm::kProjectionBaseline;
      else throw ConfigError(key, line, "unknown algorithm '" + value + "'");
    } else if (key == "mode") {
      if (value == "convex") cfg.mode = CostMode::kConvex;
      else if (value == "strongly_convex") cfg.mode = CostMode::kStronglyConvex;
      else throw ConfigError(key, line, "mode must be convex or strongly_convex");
    } else if (key == "geometry") {
      cfg.geometry = parse_geometry(value, line);
    } else if (key == "horizons") {
      if (value.empty()) throw ConfigError(key, line, "empty horizon list");
      for (const auto& p : split(value, ',')) {
        const std::int64_t T = parse_int(key, line, p);
        if (T < 1) throw ConfigError(key, line, "horizons must be positive");
        cfg.horizons.push_back(T);
      }
    } else if (key == "beta") {
      cfg.beta = parse_double(key, line, value);
    } else if (key == "betas") {
      if (value.empty()) throw ConfigError(key, line, "empty beta list");
      for (const auto& p : split(value, ',')) cfg.betas.push_back(parse_double(key, line, p));
    } else if (key == "seeds") {
      if (value.empty()) throw ConfigError(key, line, "empty seed list");
      for (const auto& p : split(value, ',')) {
        const std::int64_t s = parse_int(key, line, p);
        if (s < 0) throw ConfigError(key, line, "seeds must be non-negative");
        cfg.seeds.push_back(static_cast<std::uint64_t>(s));
      }
    } else if (key == "c_delta") {
      cfg.constants.c_delta = parse_double(key, line, value);
      if (!(cfg.constants.c_delta > 0.0)) throw ConfigError(key, line, "must be positive");
    } else if (key == "c_K") {
      cfg.constants.c_K = parse_double(key, line, value);
      if (!(cfg.constants.c_K > 0.0)) throw ConfigError(key, line, "must be positive");
    } else if (key == "epsilon") {
      cfg.constants.epsilon = parse_double(key, line, value);
      if (!(cfg.constants.epsilon >= 0.0)) throw ConfigError(key, line, "must be non-negative");
    } else if (key == "theta") {
      cfg.theta = parse_double(key, line, value);
      if (!(cfg.theta > 0.0)) throw ConfigError(key, line, "must be positive");
    } else if (key == "M1") {
      cfg.M1_override = parse_double(key, line, value);
      if (!(*cfg.M1_override > 0.0)) throw ConfigError(key, line, "must be positive");
    } else if (key == "scenario") {
      const auto k = parse_scenario_kind(value);
      if (!k) throw ConfigError(key, line, "unknown scenario '" + value + "'");
      cfg.scenario.kind = *k;
    } else if (key == "constraints") {
      const auto m = parse_constraint_mode(value);
      if (!m) throw ConfigError(key, line, "unknown constraint mode '" + value + "'");
      cfg.scenario.constraints = *m;
    } else if (key == "axis") {
      cfg.scenario.axis = parse_vector(key, line, value);
    } else if (key == "bias") {
      cfg.scenario.bias = parse_double(key, line, value);
      if (std::abs(cfg.scenario.bias) > 1.0) throw ConfigError(key, line, "must lie in [-1, 1]");
    } else if (key == "tilt") {
      cfg.scenario.tilt = parse_double(key, line, value);
    } else if (key == "period") {
      cfg.scenario.period = parse_double(key, line, value);
      if (!(cfg.scenario.period > 0.0)) throw ConfigError(key, line, "must be positive");
    } else if (key == "margin") {
      cfg.scenario.margin = parse_double(key, line, value);
      if (!(cfg.scenario.margin >= 0.0)) throw ConfigError(key, line, "must be non-negative");
    } else if (key == "target_offset") {
      cfg.scenario.offset = parse_double(key, line, value);
    } else if (key == "target_radius") {
      cfg.scenario.radius = parse_double(key, line, value);
    } else if (key == "target_noise") {
      cfg.scenario.noise = parse_double(key, line, value);
    } else if (key == "output") {
      if (value.empty()) throw ConfigError(key, line, "empty output path");
      cfg.output_path = value;
    } else if (key == "name") {
      if (value.empty() || value.find_first_of("/\\") != std::string::npos) {
        throw ConfigError(key, line, "name must be a plain file stem");
      }
      cfg.name = value;
    } else if (key == "threads") {
      const std::int64_t n = parse_int(key, line, value);
      if (n < 0 || n > 1024) throw ConfigError(key, line, "threads out of range");
      cfg.threads = static_cast<int>(n);
    } else {
      throw ConfigError(key, line, "unknown key");
    }
  }

  auto line_of = [&](const std::string& key) {
    auto it = seen.find(key);
    return it == seen.end() ? std::int64_t{0} : it->second;
  };
  if (!seen.count("geometry")) throw ConfigError("geometry", 0, "missing required key");
  if (!seen.count("horizons")) throw ConfigError("horizons", 0, "missing required key");
  if (!seen.count("seeds")) throw ConfigError("seeds", 0, "missing required key");
  if (for_tradeoff) {
    if (!seen.count("betas")) throw ConfigError("betas", 0, "missing required key");
    if (std::set<double>(cfg.betas.begin(), cfg.betas.end()).size() < 2) {
      throw ConfigError("betas", line_of("betas"), "a trade-off table needs at least two betas");
    }
  } else if (!seen.count("beta")) {
    throw ConfigError("beta", 0, "missing required key");
  }

  std::vector<std::pair<std::string, double>> to_check;
  if (!for_tradeoff || seen.count("beta")) to_check.emplace_back("beta", cfg.beta);
  for (double b : cfg.betas) to_check.emplace_back("betas", b);
  for (const auto& [key, b] : to_check) {
    if (cfg.mode == CostMode::kConvex && !(b > 0.0 && b <= 0.5)) {
      throw ConfigError(key, line_of(key), "convex mode needs beta in (0, 1/2], got " + echo_number(b));
    }
    if (cfg.mode == CostMode::kStronglyConvex) {
      if (!(b > 0.0 && b <= 1.0)) {
        throw ConfigError(key, line_of(key),
                          "strongly convex mode needs beta in (0, 1], got " + echo_number(b));
      }
      for (std::int64_t T : cfg.horizons) {
        const double t = static_cast<double>(T);
        if (cfg.constants.c_delta * std::pow(t, -b) * std::log(t) >= 1.0 || T < 2) {
          throw ConfigError(key, line_of(key),
                            "delta = c_delta T^-beta log T reaches 1 at T = " + std::to_string(T));
        }
      }
    }
  }
  if (cfg.mode == CostMode::kConvex) {
    for (std::int64_t T : cfg.horizons) {
      for (const auto& [key, b] : to_check) {
        if (cfg.constants.c_delta * std::pow(static_cast<double>(T), -b) >= 1.0) {
          throw ConfigError("c_delta", line_of("c_delta"),
                            "delta = c_delta T^-beta reaches 1 at T = " + std::to_string(T));
        }
      }
    }
  }
  const auto& s = cfg.scenario;
  if (s.axis && s.axis->size() != cfg.geometry.dimension) {
    throw ConfigError("axis", line_of("axis"), "axis dimension differs from the geometry");
  }
  if (s.offset < 0.0 || s.radius < 0.0 || s.noise < 0.0 || s.offset + s.radius + s.noise > 1.0) {
    throw ConfigError("target_offset", line_of("target_offset"),
                      "target_offset + target_radius + target_noise must lie in [0, 1]");
  }
  return cfg;
}

std::string format_config(const ExperimentConfig& cfg) {
  auto list = [](const auto& values, auto fmt) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += fmt(values[i]);
    }
    return out;
  };
  std::ostringstream o;
  o << "algorithm=" << algorithm_name(cfg.algorithm) << '\n';
  o << "mode=" << (cfg.mode == CostMode::kConvex ? "convex" : "strongly_convex") << '\n';
  o << "geometry=" << cfg.geometry.format() << '\n';
  o << "horizons=" << list(cfg.horizons, [](std::int64_t v) { return std::to_string(v); }) << '\n';
  o << "beta=" << echo_number(cfg.beta) << '\n';
  if (!cfg.betas.empty()) o << "betas=" << list(cfg.betas, echo_number) << '\n';
  o << "seeds=" << list(cfg.seeds, [](std::uint64_t v) { return std::to_string(v); }) << '\n';
  o << "c_delta=" << echo_number(cfg.constants.c_delta) << '\n';
  o << "c_K=" << echo_number(cfg.constants.c_K) << '\n';
  o << "epsilon=" << echo_number(cfg.constants.epsilon) << '\n';
  o << "theta=" << echo_number(cfg.theta) << '\n';
  if (cfg.M1_override) o << "M1=" << echo_number(*cfg.M1_override) << '\n';
  o << "scenario=" << scenario_kind_name(cfg.scenario.kind) << '\n';
  o << "constraints=" << constraint_mode_name(cfg.scenario.constraints) << '\n';
  if (cfg.scenario.axis) o << "axis=" << format_vector(*cfg.scenario.axis) << '\n';
  o << "bias=" << echo_number(cfg.scenario.bias) << '\n';
  o << "tilt=" << echo_number(cfg.scenario.tilt) << '\n';
  o << "period=" << echo_number(cfg.scenario.period) << '\n';
  o << "margin=" << echo_number(cfg.scenario.margin) << '\n';
  o << "target_offset=" << echo_number(cfg.scenario.offset) << '\n';
  o << "target_radius=" << echo_number(cfg.scenario.radius) << '\n';
  o << "target_noise=" << echo_number(cfg.scenario.noise) << '\n';
  o << "output=" << cfg.output_path << '\n';
  o << "name=" << cfg.name << '\n';
  o << "threads=" << cfg.threads << '\n';
  return o.str();
}

ExperimentConfig load_config(const std::string& path, bool for_tradeoff) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), for_tradeoff);
}

CellResult run_cell(const ExperimentConfig& cfg, std::int64_t T, double beta, std::uint64_t seed) {
  CellResult cell;
  cell.T = T;
  cell.beta = beta;
  cell.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const ConvexBody body = cfg.geometry.build();
    ScenarioSpec spec = cfg.scenario;
    spec.seed = seed;
    spec.horizon = T;
    spec.dimension = body.dimension();
    spec.theta = cfg.theta;
    const std::vector<RoundOracle> rounds = generate(spec, body);
    double M1 = 0.0;
    for (const auto& o : rounds) M1 = std::max(M1, o.declared_M1);
    if (cfg.M1_override) M1 = *cfg.M1_override;

    RunTrace trace;
    if (cfg.algorithm == Algorithm::kBaseOgd) {
      const double t = static_cast<double>(T);
      std::int64_t requested = 0;
      double delta = 0.0;
      StepRule rule = StepRule::convex(cfg.constants.epsilon, body.diameter());
      if (cfg.mode == CostMode::kConvex) {
        requested = std::max<std::int64_t>(1, std::llround(cfg.constants.c_K * std::pow(t, 1.0 - 2.0 * beta)));
        delta = cfg.constants.c_delta * std::pow(t, -beta);
      } else {
        requested = std::max<std::int64_t>(1, std::llround(cfg.constants.c_K * std::pow(t, 1.0 - beta)));
        delta = cfg.constants.c_delta * std::pow(t, -beta) * std::log(t);
        rule = StepRule::strongly_convex(cfg.theta);
      }
      const std::int64_t K = divisor_at_most(T, requested);
      trace = run_oco(body, T, K, delta, rule, rounds);
      trace.params["K_requested"] = std::to_string(requested);
      trace.params["beta"] = echo_number(beta);
      trace.params["mode"] = cfg.mode == CostMode::kConvex ? "convex" : "strongly_convex";
      if (cfg.mode == CostMode::kConvex) {
        trace.params["epsilon"] = echo_number(cfg.constants.epsilon);
      } else {
        trace.params["theta"] = echo_number(cfg.theta);
      }
    } else {
      const BagelParams params =
          cfg.mode == CostMode::kConvex
              ? convex_preset(T, beta, M1, body.diameter(), cfg.constants)
              : strongly_convex_preset(T, beta, M1, cfg.theta, cfg.constants);
      trace = cfg.algorithm == Algorithm::kBagel
                  ? run_coco(body, T, params, rounds)
                  : projection_baseline_trace(body, T, params, rounds);
    }
    EvaluateOptions opts;
    opts.keep_rounds = false;
    RunReport report = evaluate_run(body, rounds, std::move(trace), opts);
    cell.params = report.params_echo;
    cell.params["seed"] = std::to_string(seed);
    cell.params["scenario"] = scenario_kind_name(cfg.scenario.kind);
    cell.params["geometry"] = body.kind_name();
    cell.K = std::stoll(cell.params.at("K"));
    cell.K_requested = std::stoll(cell.params.count("K_requested") ? cell.params.at("K_requested")
                                                                   : cell.params.at("K"));
    cell.delta = std::stod(cell.params.at("delta"));
    cell.regret = report.regret;
    cell.ccv = report.ccv;
    cell.so_calls = report.total_so_calls;
    cell.hindsight_value = report.hindsight_value;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  cell.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

std::vector<CellResult> run_cells(const ExperimentConfig& cfg, const std::vector<double>& betas) {
  struct Job {
    std::int64_t T;
    double beta;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double b : betas) {
    for (std::int64_t T : cfg.horizons) {
      for (std::uint64_t s : cfg.seeds) jobs.push_back({T, b, s});
    }
  }
  std::vector<CellResult> results(jobs.size());
  unsigned n = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                               : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<size_t>(1, jobs.size())));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = run_cell(cfg, jobs[i].T, jobs[i].beta, jobs[i].seed);
    }
  };
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

std::string output_directory(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("SEPOCO_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_path;
}

std::string runs_csv_header() {
  return "T,K,delta,beta,seed,regret,ccv,so_calls,hindsight_value,runtime_ms,K_requested,"
         "algorithm,mode,geometry,scenario,params\n";
}

std::string runs_csv_row(const CellResult& c, const ExperimentConfig& cfg) {
  if (c.error) {
    return "ERROR," + std::to_string(c.T) + "," + echo_number(c.beta) + "," +
           std::to_string(c.seed) + "," + csv_quote(*c.error) + "\n";
  }
  std::ostringstream o;
  o << c.T << ',' << c.K << ',' << echo_number(c.delta) << ',' << echo_number(c.beta) << ','
    << c.seed << ',' << echo_number(c.regret) << ',' << echo_number(c.ccv) << ',' << c.so_calls
    << ',' << echo_number(c.hindsight_value) << ',' << echo_number(std::round(c.runtime_ms * 1000.0) / 1000.0)
    << ',' << c.K_requested << ',' << algorithm_name(cfg.algorithm) << ','
    << (cfg.mode == CostMode::kConvex ? "convex" : "strongly_convex") << ','
    << cfg.geometry.kind << ',' << scenario_kind_name(cfg.scenario.kind) << ','
    << csv_quote(echo_text(c.params)) << '\n';
  return o.str();
}

SuiteResult run_suite(const ExperimentConfig& cfg) {
  SuiteResult result;
  result.cells = run_cells(cfg, {cfg.beta});
  const std::string dir = output_directory(cfg);
  result.runs_csv = (std::filesystem::path(dir) / (cfg.name + "_runs.csv")).string();
  result.summary_csv = (std::filesystem::path(dir) / (cfg.name + "_summary.csv")).string();

  std::string runs = runs_csv_header();
  std::string errors;
  std::map<std::int64_t, std::vector<double>> regret, ccv, calls;
  for (const auto& c : result.cells) {
    if (c.error) {
      result.ok = false;
      errors += runs_csv_row(c, cfg);
      continue;
    }
    runs += runs_csv_row(c, cfg);
    regret[c.T].push_back(c.regret);
    ccv[c.T].push_back(c.ccv);
    calls[c.T].push_back(static_cast<double>(c.so_calls));
  }
  runs += errors;
  write_file(result.runs_csv, runs);

  if (result.ok) {
    result.regret_fit = try_fit(regret, Metric::kRegret);
    result.ccv_fit = try_fit(ccv, Metric::kCcv);
    result.so_calls_fit = try_fit(calls, Metric::kSoCalls);
  }
  std::ostringstream s;
  s << "section,metric,T,value,slope,intercept,r_squared,theory_exponent\n";
  const std::pair<const char*, const std::map<std::int64_t, std::vector<double>>*> tables[] = {
      {"regret", &regret}, {"ccv", &ccv}, {"so_calls", &calls}};
  for (const auto& [name, table] : tables) {
    for (const auto& [T, v] : *table) s << "mean," << name << ',' << T << ',' << echo_number(mean_of(v)) << ",,,,\n";
  }
  auto fit_row = [&](const char* name, const std::optional<ScalingFit>& f, double theory) {
    s << "fit," << name << ",,,";
    if (f) s << echo_number(f->slope) << ',' << echo_number(f->intercept) << ',' << echo_number(f->r_squared);
    else s << ",,";
    s << ',' << echo_number(theory) << '\n';
  };
  fit_row("regret", result.regret_fit, 1.0 - cfg.beta);
  fit_row("ccv", result.ccv_fit, ccv_exponent(cfg.mode, cfg.beta));
  fit_row("so_calls", result.so_calls_fit, 2.0 * cfg.beta);
  if (!result.ok) s << "ERROR,see runs file,,,,,,\n";
  write_file(result.summary_csv, s.str());
  return result;
}

TradeoffResult emit_tradeoff_table(const ExperimentConfig& cfg) {
  if (std::set<double>(cfg.betas.begin(), cfg.betas.end()).size() < 2) {
    throw ConfigError("betas", 0, "a trade-off table needs at least two betas");
  }
  TradeoffResult result;
  const std::vector<CellResult> cells = run_cells(cfg, cfg.betas);
  result.csv = (std::filesystem::path(output_directory(cfg)) / (cfg.name + "_tradeoff.csv")).string();
  std::ostringstream o;
  o << "beta,T,K,delta,mean_regret,mean_ccv,mean_so_calls,runs,theory_regret_exponent,"
       "theory_ccv_exponent,theory_so_calls_exponent,measured_regret_slope,measured_ccv_slope,"
       "measured_so_calls_slope\n";
  std::string errors;
  for (double b : cfg.betas) {
    std::map<std::int64_t, std::vector<double>> regret, ccv, calls;
    std::map<std::int64_t, const CellResult*> any;
    bool beta_ok = true;
    for (const auto& c : cells) {
      if (c.beta != b) continue;
      if (c.error) {
        beta_ok = false;
        result.ok = false;
        errors += runs_csv_row(c, cfg);
        continue;
      }
      regret[c.T].push_back(c.regret);
      ccv[c.T].push_back(c.ccv);
      calls[c.T].push_back(static_cast<double>(c.so_calls));
      any[c.T] = &c;
    }
    std::optional<ScalingFit> fr, fc, fs;
    if (beta_ok) {
      fr = try_fit(regret, Metric::kRegret);
      fc = try_fit(ccv, Metric::kCcv);
      fs = try_fit(calls, Metric::kSoCalls);
    }
    for (const auto& [T, cell] : any) {
      TradeoffRow row;
      row.beta = b;
      row.T = T;
      row.K = cell->K;
      row.delta = cell->delta;
      row.mean_regret = mean_of(regret[T]);
      row.mean_ccv = mean_of(ccv[T]);
      row.mean_so_calls = mean_of(calls[T]);
      row.regret_fit = fr;
      row.ccv_fit = fc;
      row.so_calls_fit = fs;
      auto slope = [](const std::optional<ScalingFit>& f) { return f ? echo_number(f->slope) : std::string(); };
      o << echo_number(b) << ',' << T << ',' << row.K << ',' << echo_number(row.delta) << ','
        << echo_number(row.mean_regret) << ',' << echo_number(row.mean_ccv) << ','
        << echo_number(row.mean_so_calls) << ',' << regret[T].size() << ','
        << echo_number(1.0 - b) << ',' << echo_number(ccv_exponent(cfg.mode, b)) << ','
        << echo_number(2.0 * b) << ',' << slope(fr) << ',' << slope(fc) << ',' << slope(fs) << '\n';
      result.rows.push_back(row);
    }
  }
  o << errors;
  write_file(result.csv, o.str());
  return result;
}

}  // namespace sepoco
