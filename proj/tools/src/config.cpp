// Copyright 2026 The ttk Authors.
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

#include "config.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ttk::cli {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"", {"seed"}},
      {"problem",
       {"type", "d", "n", "diffusion", "convection", "sync_rate", "rate_low", "rate_high",
        "precond_shift", "seed"}},
      {"solver",
       {"name", "variants", "maxit", "tol", "sketched_tol", "window", "eta", "max_rank",
        "sketch_rows", "oversampling", "solution_rank", "frame_rank", "combine",
        "force_iterations"}},
      {"preconditioner", {"type", "zeta", "max_rank", "accumulation", "frame_rank"}},
      {"output", {"csv", "track_true_residual"}},
      {"sweep", {"axis", "values"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& root) : root_(root) {}

  std::optional<std::string> raw(const std::string& key) const {
    if (auto v = root_.get_optional<std::string>(pt::ptree::path_type(key, '/'))) return trim(*v);
    return std::nullopt;
  }

  template <typename T>
  std::optional<T> get(const std::string& key) const {
    const auto text = raw(key);
    if (!text) return std::nullopt;
    return convert<T>(dotted(key), *text);
  }

  template <typename T>
  void assign(const std::string& key, T& target) const {
    if (auto v = get<T>(key)) target = *v;
  }

  std::optional<Index> rank(const std::string& key) const {
    const auto text = raw(key);
    if (!text || *text == "none" || *text == "inf") return std::nullopt;
    return convert<Index>(dotted(key), *text);
  }

  static std::string dotted(std::string key) {
    std::replace(key.begin(), key.end(), '/', '.');
    return key;
  }

  template <typename T>
  static T convert(const std::string& key, const std::string& text) {
    if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
      if (text == "false" || text == "0" || text == "no" || text == "off") return false;
      throw ConfigError(key + ": expected a boolean, got '" + text + "'");
    } else if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else {
      std::istringstream is(text);
      T value{};
      is >> value;
      if (is.fail() || !is.eof()) {
        throw ConfigError(key + (std::is_integral_v<T> ? ": expected an integer" : ": expected a number") +
                          ", got '" + text + "'");
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (text.starts_with('-')) throw ConfigError(key + ": must be non-negative");
      }
      return value;
    }
  }

 private:
  const pt::ptree& root_;
};

void check_keys(const pt::ptree& root) {
  const auto& allowed = allowed_keys();
  for (const auto& [name, node] : root) {
    if (node.empty()) {
      if (!allowed.at("").contains(name)) throw ConfigError(name + ": unknown key");
      continue;
    }
    const auto section = allowed.find(name);
    if (section == allowed.end()) throw ConfigError(name + ": unknown section");
    for (const auto& [key, unused] : node) {
      if (!section->second.contains(key)) throw ConfigError(name + "." + key + ": unknown key");
    }
  }
}

}  // namespace

SolverKind parse_solver(const std::string& name) {
  if (name == "tt_gmres") return SolverKind::kGmres;
  if (name == "tt_sgmres_vanilla") return SolverKind::kSgmresVanilla;
  if (name == "tt_sgmres") return SolverKind::kSgmres;
  if (name == "tt_spgmres") return SolverKind::kSpgmres;
  throw ConfigError("solver.name: unknown solver '" + name + "'");
}

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kGmres: return "tt_gmres";
    case SolverKind::kSgmresVanilla: return "tt_sgmres_vanilla";
    case SolverKind::kSgmres: return "tt_sgmres";
    case SolverKind::kSpgmres: return "tt_spgmres";
  }
  return "?";
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  pt::ptree root;
  try {
    pt::read_ini(path.string(), root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(path.string() + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  check_keys(root);
  const Reader r(root);
  ExperimentConfig cfg;

  r.assign("seed", cfg.seed);

  const std::string type = r.get<std::string>("problem/type").value_or("pde");
  if (type == "pde" || type == "convection_diffusion") {
    cfg.problem = ProblemKind::kConvectionDiffusion;
  } else if (type == "markov") {
    cfg.problem = ProblemKind::kMarkov;
  } else {
    throw ConfigError("problem.type: unknown problem '" + type + "'");
  }
  r.assign("problem/d", cfg.pde.d);
  r.assign("problem/n", cfg.pde.n);
  r.assign("problem/diffusion", cfg.pde.diffusion);
  if (const auto w = r.raw("problem/convection")) {
    for (const auto& item : split_list(*w)) {
      cfg.pde.convection.push_back(Reader::convert<double>("problem.convection", item));
    }
    if (cfg.pde.convection.size() == 1) cfg.pde.convection.assign(cfg.pde.d, cfg.pde.convection[0]);
  }
  cfg.markov.d = cfg.pde.d;
  cfg.markov.n = cfg.pde.n;
  r.assign("problem/sync_rate", cfg.markov.sync_rate);
  r.assign("problem/rate_low", cfg.markov.rate_low);
  r.assign("problem/rate_high", cfg.markov.rate_high);
  r.assign("problem/precond_shift", cfg.markov.precond_shift);
  cfg.markov.seed = cfg.seed;
  r.assign("problem/seed", cfg.markov.seed);

  SolverConfig& s = cfg.solver;
  if (const auto list = r.raw("solver/variants")) {
    for (const auto& name : split_list(*list)) cfg.variants.push_back(parse_solver(name));
    if (cfg.variants.empty()) throw ConfigError("solver.variants: empty list");
  } else {
    cfg.variants.push_back(parse_solver(r.get<std::string>("solver/name").value_or("tt_sgmres")));
  }
  r.assign("solver/maxit", s.maxit);
  r.assign("solver/tol", s.tol);
  cfg.sketched_tol = r.get<double>("solver/sketched_tol");
  r.assign("solver/window", s.window);
  r.assign("solver/eta", s.eta);
  s.max_rank = r.rank("solver/max_rank");
  r.assign("solver/sketch_rows", s.sketch_rows);
  r.assign("solver/oversampling", s.oversampling);
  s.solution_rank = r.rank("solver/solution_rank");
  if (const auto fr = r.get<Index>("solver/frame_rank")) s.frame_ranks = {*fr};
  const std::string combine = r.get<std::string>("solver/combine").value_or("explicit");
  if (combine == "explicit") {
    s.combine_mode = CombineMode::kExplicit;
  } else if (combine == "stta") {
    s.combine_mode = CombineMode::kStta;
  } else {
    throw ConfigError("solver.combine: expected 'explicit' or 'stta', got '" + combine + "'");
  }
  r.assign("solver/force_iterations", s.force_iterations);

  const std::string ptype = r.get<std::string>("preconditioner/type").value_or("none");
  if (ptype == "expsum") {
    cfg.precond.enabled = true;
  } else if (ptype != "none") {
    throw ConfigError("preconditioner.type: expected 'none' or 'expsum', got '" + ptype + "'");
  }
  r.assign("preconditioner/zeta", cfg.precond.zeta);
  cfg.precond.max_rank = r.rank("preconditioner/max_rank");
  r.assign("preconditioner/frame_rank", cfg.precond.frame_rank);
  const std::string acc = r.get<std::string>("preconditioner/accumulation").value_or("stta");
  if (acc == "stta") {
    cfg.precond.accumulation = Accumulation::kStta;
  } else if (acc == "sequential") {
    cfg.precond.accumulation = Accumulation::kSequential;
  } else {
    throw ConfigError("preconditioner.accumulation: expected 'stta' or 'sequential', got '" + acc + "'");
  }
  if (cfg.precond.zeta < 1) throw ConfigError("preconditioner.zeta: must be positive");

  for (SolverKind v : cfg.variants) {
    if (v == SolverKind::kSpgmres && !cfg.precond.enabled) {
      throw ConfigError("preconditioner.type: tt_spgmres requires 'expsum'");
    }
  }

  r.assign("output/csv", cfg.csv);
  r.assign("output/track_true_residual", cfg.track_true_residual);

  r.assign("sweep/axis", cfg.sweep.axis);
  if (const auto values = r.raw("sweep/values")) cfg.sweep.values = split_list(*values);
  if (!cfg.sweep.axis.empty() && cfg.sweep.axis != "d" && cfg.sweep.axis != "n" &&
      cfg.sweep.axis != "max_rank") {
    throw ConfigError("sweep.axis: expected 'd', 'n' or 'max_rank', got '" + cfg.sweep.axis + "'");
  }
  return cfg;
}

}  // namespace ttk::cli
