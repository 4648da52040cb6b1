#ifndef UE_HARNESS_CONFIG_H_
#define UE_HARNESS_CONFIG_H_

// Experiment configuration: flat key=value settings from a config file and
// command-line flags (flags win). Typed accessors validate one field at a
// time and name the field in their error messages.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ue/game.h"

namespace ue::harness {

// Every recognized key. Flags spell underscores as dashes (--agent-a).
const std::vector<std::string>& config_keys();

class ExperimentConfig {
 public:
  ExperimentConfig() = default;
  explicit ExperimentConfig(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }

  // Throws InvalidArgument for unknown keys.
  void set(const std::string& key, std::string value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  long get_long(const std::string& key, long fallback, long lo, long hi) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> find_double(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::uint64_t seed() const;  // mandatory

  // Sorted "key=value" lines of every setting that affects results (output
  // paths excluded), prefixed by the command.
  std::string canonical() const;
  std::uint64_t hash() const;

 private:
  std::string command_;
  std::map<std::string, std::string> values_;
};

// Reads key=value lines; '#' starts a comment. Keys already present in
// `config` are kept (command-line values override the file).
void merge_config_text(std::istream& in, ExperimentConfig& config, const std::string& origin);
void merge_config_file(const std::string& path, ExperimentConfig& config);

std::uint64_t fnv1a64(std::string_view text);

// Game from the game/size/params keys.
std::shared_ptr<const Game> make_game(const ExperimentConfig& config);

}  // namespace ue::harness

#endif  // UE_HARNESS_CONFIG_H_
