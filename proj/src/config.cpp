#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "jump_laws.hpp"

namespace garchlim {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse number '" + s + "' for key " + key);
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse integer '" + s + "' for key " + key);
  }
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("config: cannot parse boolean '" + s + "' for key " + key);
}

}  // namespace

Theta parse_theta(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 4) {
    throw ConfigError("config: theta needs four components 'h0,beta,alpha,lambda', got '" +
                      text + "'");
  }
  Theta t{parse_double(parts[0], "theta"), parse_double(parts[1], "theta"),
          parse_double(parts[2], "theta"), parse_double(parts[3], "theta")};
  try {
    t.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return t;
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.thetas = {
      {"theta11", Theta{0.4, 1.0, 1.0, 0.1}},  {"theta12", Theta{10.0, 1.0, 1.0, 0.1}},
      {"theta21", Theta{2.0, 0.2, 1.0, 0.1}},  {"theta22", Theta{2.0, 5.0, 1.0, 0.1}},
      {"theta31", Theta{2.0, 1.0, 0.2, 0.1}},  {"theta32", Theta{2.0, 1.0, 5.0, 0.1}},
      {"theta41", Theta{2.0, 1.0, 1.0, 0.02}}, {"theta42", Theta{2.0, 1.0, 1.0, 0.5}},
  };
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  ExperimentConfig cfg = defaults();
  bool theta_grid_cleared = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "theta0") {
      cfg.theta0 = parse_theta(value);
    } else if (key.rfind("theta.", 0) == 0) {
      const std::string label = key.substr(6);
      if (label.empty()) throw ConfigError("config: empty theta label at line " +
                                           std::to_string(lineno));
      if (!theta_grid_cleared) {
        cfg.thetas.clear();
        theta_grid_cleared = true;
      }
      cfg.thetas.emplace_back(label, parse_theta(value));
    } else if (key == "laws") {
      cfg.laws = split(value, ';');
      if (cfg.laws.empty()) throw ConfigError("config: laws must be nonempty");
    } else if (key == "gamma") {
      cfg.gamma = parse_double(value, key);
    } else if (key == "sample_sizes") {
      cfg.sample_sizes.clear();
      for (auto& s : split(value, ',')) {
        cfg.sample_sizes.push_back(static_cast<std::size_t>(parse_u64(s, key)));
      }
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, key);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "models") {
      cfg.models.clear();
      for (auto& s : split(value, ',')) cfg.models.push_back(parse_model(s));
    } else if (key == "share_seed") {
      cfg.share_seed = parse_bool(value, key);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_u64(value, key));
    } else {
      throw ConfigError("config: unknown key '" + key + "' at line " + std::to_string(lineno));
    }
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  try {
    theta0.validate();
    for (auto& [label, theta] : thetas) {
      if (label.empty()) throw ConfigError("config: theta labels must be nonempty");
      theta.validate();
    }
    for (auto& spec : laws) JumpLaw::parse(spec);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (thetas.empty()) throw ConfigError("config: need at least one theta row");
  if (!(gamma > 0.0)) throw ConfigError("config: gamma must be positive");
  if (sample_sizes.empty()) throw ConfigError("config: sample_sizes must be nonempty");
  for (std::size_t s : sample_sizes) {
    if (s < 2) throw ConfigError("config: sample sizes must be >= 2");
  }
  if (!std::is_sorted(sample_sizes.begin(), sample_sizes.end())) {
    throw ConfigError("config: sample_sizes must be increasing");
  }
  if (models.empty()) throw ConfigError("config: need at least one model");
  if (output_dir.empty()) throw ConfigError("config: output_dir must be nonempty");
}

}  // namespace garchlim
