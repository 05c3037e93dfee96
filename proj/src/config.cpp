#include "lavrentiev/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lavrentiev/csv.hpp"

#ifndef LAVRENTIEV_PRESET_DIR
#define LAVRENTIEV_PRESET_DIR "presets"
#endif

namespace lavrentiev {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"grids", {"nx", "nt"}},
      {"gamma", {"intervals", "breakpoints"}},
      {"phantom", {"name"}},
      {"regularization", {"lambda", "mu"}},
      {"noise", {"delta", "seed", "mode"}},
      {"solver",
       {"C", "alpha", "beta", "k_max", "sigma", "max_outer", "tol_update", "inertia", "power_iters", "power_seed"}},
      {"rates", {"levels"}},
      {"preset", {"base"}},
  };
  return s;
}

pt::ptree read_ini_text(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  return tree;
}

pt::ptree read_ini_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_ini_text(buf.str(), path.string());
}

void check_schema(const pt::ptree& tree, const std::string& origin) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError(origin + ": unknown section [" + section + "]");
    if (!body.data().empty()) throw ConfigError(origin + ": key '" + section + "' outside of any section");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ConfigError(origin + ": unknown key '" + section + "." + key + "'");
    }
  }
}

void merge_into(pt::ptree& base, const pt::ptree& layer) {
  for (const auto& [section, body] : layer)
    for (const auto& [key, value] : body) base.put(pt::ptree::path_type(section + "." + key, '.'), value.data());
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "': expected a number, got '" + raw + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  try {
    std::size_t pos = 0;
    if (!s.empty() && s[0] != '-') {
      const unsigned long long v = std::stoull(s, &pos);
      if (pos == s.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "': expected a nonnegative integer, got '" + raw + "'");
}

int to_int(const std::string& key, const std::string& raw) {
  const std::uint64_t v = to_u64(key, raw);
  if (v > 1'000'000'000ULL) throw ConfigError("'" + key + "': value too large");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("'" + key + "': expected true/false, got '" + raw + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(to_double(key, item));
  }
  return out;
}

ExperimentConfig from_tree(const pt::ptree& tree) {
  ExperimentConfig c;
  auto get = [&tree](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
    return std::nullopt;
  };
  if (auto v = get("grids.nx")) c.nx = to_u64("grids.nx", *v);
  if (auto v = get("grids.nt")) c.nt = to_u64("grids.nt", *v);
  if (auto v = get("gamma.intervals")) c.intervals = to_u64("gamma.intervals", *v);
  if (auto v = get("gamma.breakpoints")) c.breakpoints = to_list("gamma.breakpoints", *v);
  if (auto v = get("phantom.name")) c.phantom = trim(*v);
  if (auto v = get("regularization.lambda")) c.weights.lambda = to_double("regularization.lambda", *v);
  if (auto v = get("regularization.mu")) c.weights.mu = to_double("regularization.mu", *v);
  if (auto v = get("noise.delta")) c.noise.delta = to_double("noise.delta", *v);
  if (auto v = get("noise.seed")) c.noise.seed = to_u64("noise.seed", *v);
  if (auto v = get("noise.mode")) {
    const std::string m = trim(*v);
    if (m == "relative")
      c.noise.mode = NoiseMode::relative;
    else if (m == "literal")
      c.noise.mode = NoiseMode::literal;
    else
      throw ConfigError("'noise.mode': expected relative or literal, got '" + m + "'");
  }
  if (auto v = get("solver.C")) c.cocoercivity = to_double("solver.C", *v);
  if (auto v = get("solver.alpha")) c.alpha = to_double("solver.alpha", *v);
  if (auto v = get("solver.beta")) c.beta = to_double("solver.beta", *v);
  if (auto v = get("solver.k_max")) c.k_max = to_int("solver.k_max", *v);
  if (auto v = get("solver.sigma")) c.sigma = to_double("solver.sigma", *v);
  if (auto v = get("solver.max_outer")) c.max_outer = to_int("solver.max_outer", *v);
  if (auto v = get("solver.tol_update")) c.tol_update = to_double("solver.tol_update", *v);
  if (auto v = get("solver.inertia")) c.inertia = to_bool("solver.inertia", *v);
  if (auto v = get("solver.power_iters")) c.power_iters = to_int("solver.power_iters", *v);
  if (auto v = get("solver.power_seed")) c.power_seed = to_u64("solver.power_seed", *v);
  if (auto v = get("rates.levels")) c.rate_levels = to_int("rates.levels", *v);

  if (c.nx < 3 || c.nt < 3) throw ConfigError("grids need at least 3 nodes");
  if (c.intervals < 1) throw ConfigError("gamma.intervals must be positive");
  if (!(c.weights.lambda > 0.0) || !(c.weights.mu > 0.0)) throw ConfigError("lambda and mu must be positive");
  if (!(c.noise.delta >= 0.0)) throw ConfigError("noise.delta must be nonnegative");
  if (c.k_max < 1) throw ConfigError("solver.k_max must be at least 1");
  if (!(c.tol_update >= 0.0)) throw ConfigError("solver.tol_update must be nonnegative");
  if (c.power_iters < 20) throw ConfigError("solver.power_iters must be at least 20");
  if (c.rate_levels < 1) throw ConfigError("rates.levels must be at least 1");
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << body;
  if (!out) throw ConfigError("failed writing " + path.string());
}

template <class Tag>
std::string field_text(const Array2D<Tag>& f, const ExperimentProblem& p) {
  std::ostringstream os;
  write_field_csv(os, f, p.cfg.space.size(), p.cfg.time.size(), p.gamma.intervals());
  return os.str();
}

} // namespace

std::filesystem::path preset_directory() {
  if (const char* env = std::getenv("LAVRENTIEV_PRESET_DIR"); env && *env) return env;
  return LAVRENTIEV_PRESET_DIR;
}

ExperimentConfig parse_config(const std::string& ini_text) {
  const pt::ptree tree = read_ini_text(ini_text, "<config>");
  check_schema(tree, "<config>");
  return from_tree(tree);
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& config_file,
                             const std::optional<std::string>& preset, const std::optional<std::uint64_t>& seed,
                             const std::vector<std::string>& overrides) {
  pt::ptree user;
  if (config_file) {
    user = read_ini_file(*config_file);
    check_schema(user, config_file->string());
  }
  std::optional<std::string> preset_name = preset;
  if (!preset_name) {
    if (auto b = user.get_optional<std::string>("preset.base")) preset_name = trim(*b);
  }

  pt::ptree merged;
  if (preset_name) {
    const auto path = preset_directory() / (*preset_name + ".ini");
    if (!std::filesystem::exists(path)) throw ConfigError("unknown preset '" + *preset_name + "'");
    merged = read_ini_file(path);
    check_schema(merged, path.string());
  }
  merge_into(merged, user);
  if (seed) merged.put("noise.seed", std::to_string(*seed));
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("override '" + o + "' is not of the form section.key=value");
    const std::string section = trim(o.substr(0, dot));
    const std::string key = trim(o.substr(dot + 1, eq - dot - 1));
    pt::ptree layer;
    layer.put(pt::ptree::path_type(section + "." + key, '.'), o.substr(eq + 1));
    check_schema(layer, "--override");
    merge_into(merged, layer);
  }
  return from_tree(merged);
}

void cmd_forward(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const ExperimentProblem p = build_problem(c);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "u.csv", field_text(p.u_true, p));
  write_file(out_dir / "y.csv", field_text(p.y_clean, p));
}

void cmd_invert(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const ExperimentProblem p = build_problem(c);
  const ReconstructionResult r = reconstruct(c, p);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "reconstruction.csv", field_text(r.solution.u, p));
  write_file(out_dir / "error.csv", field_text(r.solution.u - p.u_true, p));
  std::ostringstream trace;
  r.solution.trace.write_csv(trace);
  write_file(out_dir / "trace.csv", trace.str());
  std::ostringstream summary;
  summary << "rel_error,rel_residual,iterations,fixed_point_residual\n"
          << format_double(r.rel_error) << ',' << format_double(r.rel_residual) << ',' << r.solution.iterations << ','
          << format_double(r.solution.fixed_point_residual) << '\n';
  write_file(out_dir / "summary.csv", summary.str());
}

void cmd_rates(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const RateStudySpec spec{c.weights.lambda, c.weights.mu, c.noise.delta, c.rate_levels};
  const RateTable table = run_rate_study(spec, c);
  std::filesystem::create_directories(out_dir);
  std::ostringstream rates;
  table.write_csv(rates);
  write_file(out_dir / "rates.csv", rates.str());
  std::ostringstream slopes;
  table.write_slopes_csv(slopes);
  write_file(out_dir / "slopes.csv", slopes.str());
}

} // namespace lavrentiev
