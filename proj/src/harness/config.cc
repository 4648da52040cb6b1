#include "ue/harness/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "ue/errors.h"
#include "ue/format.h"

namespace ue::harness {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

InvalidArgument field_error(const std::string& key, const std::string& what) {
  return InvalidArgument(key + ": " + what);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "agent_a",  "agent_b",   "algo",      "alpha",  "belief",    "eta",    "etas",
      "game",     "games",     "histories", "iters",  "max_attempts",       "objective",
      "out",      "params",    "particles", "policy", "policy_out",         "schedule",
      "seed",     "selection", "size",      "variant", "workers"};
  return keys;
}

void ExperimentConfig::set(const std::string& key, std::string value) {
  const auto& keys = config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
  values_[key] = std::move(value);
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string ExperimentConfig::require_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) throw field_error(key, "is required");
  return it->second;
}

long ExperimentConfig::get_long(const std::string& key, long fallback, long lo, long hi) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& text = it->second;
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw field_error(key, "expected an integer, got '" + text + "'");
  }
  if (value < lo || value > hi) {
    throw field_error(key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "], got " + text);
  }
  return value;
}

std::optional<double> ExperimentConfig::find_double(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  try {
    const double v = parse_double(it->second);
    if (!std::isfinite(v)) throw InvalidArgument("non-finite");
    return v;
  } catch (const InvalidArgument&) {
    throw field_error(key, "expected a number, got '" + it->second + "'");
  }
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  return find_double(key).value_or(fallback);
}

std::vector<double> ExperimentConfig::get_double_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream in(get_string(key, ""));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(parse_double(item));
    } catch (const InvalidArgument&) {
      throw field_error(key, "expected a comma-separated list of numbers, got '" + item + "'");
    }
  }
  return out;
}

std::uint64_t ExperimentConfig::seed() const {
  auto it = values_.find("seed");
  if (it == values_.end()) throw field_error("seed", "is required");
  std::uint64_t value = 0;
  const std::string& text = it->second;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw field_error("seed", "expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

std::string ExperimentConfig::canonical() const {
  std::string out = "command=" + command_ + "\n";
  for (const auto& [key, value] : values_) {
    if (key == "out" || key == "policy_out") continue;
    out += key + "=" + value + "\n";
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

void merge_config_text(std::istream& in, ExperimentConfig& config, const std::string& origin) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(origin + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    if (config.has(key)) continue;
    try {
      config.set(key, trim(line.substr(eq + 1)));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void merge_config_file(const std::string& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot read '" + path + "'");
  merge_config_text(in, config, path);
}

std::shared_ptr<const Game> make_game(const ExperimentConfig& config) {
  const std::string name = config.require_string("game");
  GameParams params;
  std::stringstream in(config.get_string("params", ""));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw field_error("params", "expected k=v pairs, got '" + item + "'");
    params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  if (config.has("size")) params["size"] = config.get_string("size", "");
  try {
    return new_game(name, params);
  } catch (const InvalidArgument& e) {
    throw field_error("game", e.what());
  }
}

}  // namespace ue::harness
