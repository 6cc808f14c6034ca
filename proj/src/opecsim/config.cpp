#include "opecsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opecsim {

namespace {

struct Entry {
  int line = 0;
  std::string value;
  bool used = false;
};

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(key.front())) && key.front() != '_') {
    return false;
  }
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t pos = text.find(sep);
    if (pos == std::string_view::npos) {
      parts.push_back(text);
      return parts;
    }
    parts.push_back(text.substr(0, pos));
    text.remove_prefix(pos + 1);
  }
}

// Parses one file; reports errors as "path:line: detail".
class Parser {
 public:
  explicit Parser(const std::filesystem::path& path) : path_(path.string()) {
    std::ifstream in(path);
    if (!in) {
      throw ConfigError(ConfigError::Kind::Io, path_ + ": cannot open file");
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      std::string_view body = line;
      if (const std::size_t hash = body.find('#'); hash != std::string_view::npos) {
        body = body.substr(0, hash);
      }
      body = trim(body);
      if (body.empty()) continue;

      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        fail_syntax(number, "expected 'key = value'");
      }
      const std::string key{trim(body.substr(0, eq))};
      const std::string value{trim(body.substr(eq + 1))};
      if (!valid_key(key)) {
        fail_syntax(number, "invalid key '" + key + "'");
      }
      if (value.empty()) {
        fail_syntax(number, "key '" + key + "' has no value");
      }
      const auto [it, inserted] = entries_.try_emplace(key, Entry{number, value});
      if (!inserted) {
        fail_at(number, "duplicate key '" + key + "' (first set on line " +
                            std::to_string(it->second.line) + ")");
      }
    }
  }

  LoadResult load() {
    SimConfig cfg;
    cfg.links = static_cast<int>(require_int("n", 1, 1 << 16));
    cfg.horizon = require_uint("horizon", 1);
    cfg.seed = optional_uint("seed", kDefaultSeed, 0);
    cfg.v = optional_double("v", 0.0);
    if (!std::isfinite(cfg.v) || cfg.v < 0.0) {
      fail_key("v", "V must be >= 0");
    }
    cfg.initial_queue = optional_int("q0", 0, 0);
    cfg.initial_virtual_queue = optional_double("z0", 0.0);
    if (!std::isfinite(cfg.initial_virtual_queue) || cfg.initial_virtual_queue < 0.0) {
      fail_key("z0", "z0 must be >= 0");
    }
    cfg.trace_every = optional_uint("trace_every", 0, 0);

    cfg.energy.cellular_tx = require_double("p_c");
    cfg.energy.wifi_tx = require_double("p_w");
    cfg.energy.avg_budget = require_double("p_av");
    try {
      cfg.energy.validate();
    } catch (const std::invalid_argument& e) {
      fail_at(first_line_of({"p_c", "p_w", "p_av"}), e.what());
    }

    cfg.arrivals = require_distribution("arrivals");
    cfg.link_states.reserve(static_cast<std::size_t>(cfg.links));
    for (int link = 1; link <= cfg.links; ++link) {
      cfg.link_states.push_back(
          require_distribution("link" + std::to_string(link)));
    }

    std::optional<std::vector<double>> v_list = take_v_list();
    std::optional<std::vector<std::string>> policies = take_policies();

    reject_unknown_keys();

    if (!v_list && !policies) {
      cfg.validate();
      return cfg;
    }

    SweepSpec spec;
    spec.base = std::move(cfg);
    if (v_list) {
      spec.v_values = std::move(*v_list);
    } else {
      spec.v_values.assign(default_v_grid().begin(), default_v_grid().end());
    }
    spec.policies = policies ? std::move(*policies)
                             : std::vector<std::string>{"opec"};
    try {
      spec.validate();
    } catch (const std::exception& e) {
      fail_at(v_list ? line_of("v_list") : line_of("policies"), e.what());
    }
    return spec;
  }

 private:
  [[noreturn]] void fail_at(int line, std::string_view detail) const {
    std::string where = path_;
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(ConfigError::Kind::Invariant,
                      where + ": " + std::string(detail));
  }

  [[noreturn]] void fail_syntax(int line, std::string_view detail) const {
    throw ConfigError(ConfigError::Kind::Syntax,
                      path_ + ":" + std::to_string(line) + ": " +
                          std::string(detail));
  }

  [[noreturn]] void fail_key(const std::string& key, std::string_view detail) {
    fail_at(line_of(key), detail);
  }

  int line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  int first_line_of(std::initializer_list<const char*> keys) const {
    int best = 0;
    for (const char* key : keys) {
      const int line = line_of(key);
      if (line > 0 && (best == 0 || line < best)) best = line;
    }
    return best;
  }

  Entry* find(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  Entry& require(const std::string& key) {
    Entry* entry = find(key);
    if (!entry) {
      throw ConfigError(ConfigError::Kind::Invariant,
                        path_ + ": missing required key '" + key + "'");
    }
    return *entry;
  }

  double parse_double(const Entry& entry, const std::string& key) const {
    const std::string_view text = entry.value;
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail_syntax(entry.line, "key '" + key + "': '" + entry.value +
                                  "' is not a number");
    }
    return value;
  }

  std::int64_t parse_int(const Entry& entry, const std::string& key) const {
    const std::string_view text = entry.value;
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail_syntax(entry.line, "key '" + key + "': '" + entry.value +
                                  "' is not an integer");
    }
    return value;
  }

  std::uint64_t parse_uint(const Entry& entry, const std::string& key) const {
    const std::string_view text = entry.value;
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail_syntax(entry.line, "key '" + key + "': '" + entry.value +
                                  "' is not a non-negative integer");
    }
    return value;
  }

  std::int64_t require_int(const std::string& key, std::int64_t min,
                           std::int64_t max) {
    const Entry& entry = require(key);
    const std::int64_t value = parse_int(entry, key);
    if (value < min || value > max) {
      fail_at(entry.line, "key '" + key + "' must be in " +
                              std::to_string(min) + ".." + std::to_string(max));
    }
    return value;
  }

  std::uint64_t require_uint(const std::string& key, std::uint64_t min) {
    const Entry& entry = require(key);
    const std::uint64_t value = parse_uint(entry, key);
    if (value < min) {
      fail_at(entry.line,
              "key '" + key + "' must be at least " + std::to_string(min));
    }
    return value;
  }

  double require_double(const std::string& key) {
    const Entry& entry = require(key);
    return parse_double(entry, key);
  }

  std::int64_t optional_int(const std::string& key, std::int64_t fallback,
                            std::int64_t min) {
    const Entry* entry = find(key);
    if (!entry) return fallback;
    const std::int64_t value = parse_int(*entry, key);
    if (value < min) {
      fail_at(entry->line,
              "key '" + key + "' must be at least " + std::to_string(min));
    }
    return value;
  }

  std::uint64_t optional_uint(const std::string& key, std::uint64_t fallback,
                              std::uint64_t min) {
    const Entry* entry = find(key);
    if (!entry) return fallback;
    const std::uint64_t value = parse_uint(*entry, key);
    if (value < min) {
      fail_at(entry->line,
              "key '" + key + "' must be at least " + std::to_string(min));
    }
    return value;
  }

  double optional_double(const std::string& key, double fallback) {
    const Entry* entry = find(key);
    return entry ? parse_double(*entry, key) : fallback;
  }

  DiscreteDistribution require_distribution(const std::string& key) {
    const Entry& entry = require(key);
    std::string_view text = trim(entry.value);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
      fail_syntax(entry.line, "distribution '" + key +
                                  "' must look like {value:prob, value:prob}");
    }
    text = trim(text.substr(1, text.size() - 2));
    if (text.empty()) {
      fail_at(entry.line, "distribution '" + key + "' is empty");
    }
    std::vector<std::int64_t> support;
    std::vector<double> probs;
    for (std::string_view part : split(text, ',')) {
      part = trim(part);
      const std::size_t colon = part.find(':');
      if (colon == std::string_view::npos) {
        fail_syntax(entry.line, "distribution '" + key + "': entry '" +
                                    std::string(part) + "' lacks a ':'");
      }
      const Entry value_entry{entry.line, std::string(trim(part.substr(0, colon)))};
      const Entry prob_entry{entry.line, std::string(trim(part.substr(colon + 1)))};
      support.push_back(parse_int(value_entry, key));
      probs.push_back(parse_double(prob_entry, key));
    }
    try {
      return DiscreteDistribution(std::move(support), std::move(probs));
    } catch (const std::invalid_argument& e) {
      fail_at(entry.line, "distribution '" + key + "': " + std::string(e.what()));
    }
  }

  std::optional<std::vector<double>> take_v_list() {
    const Entry* entry = find("v_list");
    if (!entry) return std::nullopt;
    std::vector<double> values;
    for (std::string_view part : split(entry->value, ',')) {
      const Entry item{entry->line, std::string(trim(part))};
      values.push_back(parse_double(item, "v_list"));
    }
    return values;
  }

  std::optional<std::vector<std::string>> take_policies() {
    const Entry* entry = find("policies");
    if (!entry) return std::nullopt;
    std::vector<std::string> names;
    for (std::string_view part : split(entry->value, ',')) {
      names.emplace_back(trim(part));
    }
    return names;
  }

  void reject_unknown_keys() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) {
        fail_at(entry.line, "unknown key '" + key + "'");
      }
    }
  }

  std::string path_;
  std::map<std::string, Entry> entries_;
};

}  // namespace

LoadResult load_config(const std::filesystem::path& path) {
  return Parser(path).load();
}

SimConfig base_config(const LoadResult& loaded) {
  if (const SimConfig* cfg = std::get_if<SimConfig>(&loaded)) return *cfg;
  return std::get<SweepSpec>(loaded).base;
}

}  // namespace opecsim
