#include "ue/harness/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ue/errors.h"
#include "ue/harness/config.h"
#include "ue/harness/experiments.h"

namespace ue::harness {

namespace {

struct FlagHelp {
  const char* key;
  const char* help;
};

constexpr FlagHelp kFlags[] = {
    {"game", "game name, e.g. kuhn_poker, abrupt_dark_hex"},
    {"size", "board size or generator size"},
    {"params", "extra game parameters k=v,k=v"},
    {"algo", "search algorithm for sweeps: mcs, mds, mmds"},
    {"variant", "standard, subgame, bft or opponent"},
    {"objective", "plain or minimaxent"},
    {"eta", "stepsize"},
    {"alpha", "regularization temperature"},
    {"schedule", "eta=<term>,alpha=<term>, terms like 1/sqrt(t) or 1/(2sqrt(t))"},
    {"particles", "particles per decision"},
    {"max_attempts", "rejection-sampling playouts per decision (0: 1000 per particle)"},
    {"belief", "particles or exact"},
    {"histories", "histories per decision with the exact belief source"},
    {"selection", "sample or argmax"},
    {"games", "number of games"},
    {"iters", "number of iterations"},
    {"etas", "comma-separated stepsize grid"},
    {"agent_a", "agent spec, e.g. uniform+mmds"},
    {"agent_b", "agent spec, e.g. uniform"},
    {"policy", "policy file to evaluate"},
    {"policy_out", "write the final policy here"},
    {"workers", "parallel game workers"},
    {"seed", "random seed (required)"},
    {"out", "output CSV path (default: stdout)"},
};

std::string flag_name(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Update-equivalence planning toolkit"};
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::string> config_paths;

  using Runner = std::function<bool(const ExperimentConfig&, std::ostream&)>;
  const std::vector<std::tuple<std::string, std::string, Runner>> commands = {
      {"converge", "MMD convergence to the AQRE",
       [](const ExperimentConfig& c, std::ostream& o) { run_convergence(c, o); return true; }},
      {"anneal", "annealed MMD towards Nash equilibrium",
       [](const ExperimentConfig& c, std::ostream& o) { run_annealed(c, o); return true; }},
      {"sweep", "stepsize sweep of search agents in self-play",
       [](const ExperimentConfig& c, std::ostream& o) { run_stepsize_sweep(c, o); return true; }},
      {"match", "head-to-head match with bootstrap confidence intervals",
       [](const ExperimentConfig& c, std::ostream& o) { run_match(c, o); return true; }},
      {"exploit", "exact exploitability of policies and one-step iterates",
       [](const ExperimentConfig& c, std::ostream& o) { run_exploitability_eval(c, o); return true; }},
      {"selfcheck", "oracle-equivalence checks",
       [](const ExperimentConfig& c, std::ostream& o) { return run_selfcheck(c, o); }},
  };

  std::vector<CLI::App*> subs;
  for (const auto& [name, help, runner] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    auto& store = values[name];
    for (const auto& f : kFlags) store[f.key];
    for (const auto& f : kFlags) sub->add_option(flag_name(f.key), store[f.key], f.help);
    sub->add_option("--config", config_paths[name], "key=value config file");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* sub = subs[i];
    if (!sub->parsed()) continue;
    const auto& [name, help, runner] = commands[i];
    try {
      ExperimentConfig config(name);
      for (const auto& f : kFlags) {
        if (sub->count(flag_name(f.key)) > 0) config.set(f.key, values[name][f.key]);
      }
      if (!config_paths[name].empty()) merge_config_file(config_paths[name], config);
      config.seed();
      std::ostringstream buffer;
      const bool ok = runner(config, buffer);
      if (config.has("out")) {
        const std::string path = config.get_string("out", "");
        std::ofstream file(path, std::ios::binary);
        if (!file) throw InvalidArgument("out: cannot write '" + path + "'");
        file << buffer.str();
      } else {
        out << buffer.str();
      }
      if (!ok) {
        err << "error: one or more checks failed\n";
        return kExitValidation;
      }
      return kExitOk;
    } catch (const BudgetExceeded& e) {
      err << "error: " << e.what() << '\n';
      return kExitBudget;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitValidation;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitValidation;
    }
  }
  return kExitValidation;
}

}  // namespace ue::harness
