#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <type_traits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ffising/model.hpp>

namespace ffising::cli {

using json = nlohmann::json;

struct Globals {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  bool no_timestamp = false;
  bool self_test = false;
};

struct Result {
  std::vector<std::string> columns;
  std::vector<json> rows;  // each a json array, one cell per column
  json summary = json::object();
  int status = 0;  // 0, or 4 on a validation breach
};

// Flags that fall back to the --config file and are echoed into the output header.
class Params {
 public:
  explicit Params(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& key, T& var, const std::string& desc) {
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    CLI::Option* opt = app_->add_option(flag, var, desc)->capture_default_str();
    if constexpr (!std::is_same_v<T, std::string> && requires { var.push_back(*var.begin()); })
      opt->delimiter(',');
    entries_.push_back({key, opt, [&var](const json& j) { var = j.get<T>(); },
                        [&var] { return json(var); }});
    return opt;
  }
  CLI::Option* flag(const std::string& key, bool& var, const std::string& desc);

  void resolve(const json& file);
  json echo() const;

 private:
  struct Entry {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> load;
    std::function<json()> save;
  };
  CLI::App* app_;
  std::vector<Entry> entries_;
};

struct SelfCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};
SelfCheck below(std::string name, double value, double limit);
SelfCheck holds(std::string name, bool ok);

struct Command {
  CLI::App* app = nullptr;
  std::unique_ptr<Params> params;
  std::function<Result(const Globals&)> run;
  std::function<std::vector<SelfCheck>()> self_test;
};

class Registry {
 public:
  explicit Registry(CLI::App& app) : app_(app) {}
  Command& add(const std::string& name, const std::string& desc);
  std::vector<std::unique_ptr<Command>>& commands() { return commands_; }

 private:
  CLI::App& app_;
  std::vector<std::unique_ptr<Command>> commands_;
};

void register_static(Registry& r);
void register_dynamics(Registry& r);
void register_correlations(Registry& r);
void register_validate(Registry& r);

// self-test suites, one per library module
std::vector<SelfCheck> self_test_uniform();
std::vector<SelfCheck> self_test_bdg();
std::vector<SelfCheck> self_test_gaussian();
std::vector<SelfCheck> self_test_dynamics();
std::vector<SelfCheck> self_test_floquet();
std::vector<SelfCheck> self_test_thermal();
std::vector<SelfCheck> self_test_observables();
std::vector<SelfCheck> self_test_ed_oracle();

// Library-vs-ED deltas on one chain (L <= 12), named and thresholded.
std::vector<SelfCheck> ed_deltas(const ChainSpec& s, double threshold);

// Chain parameters shared by most subcommands. J and h take one value or L values.
struct ChainArgs {
  int L = 16;
  std::vector<double> J{1.0};
  double kappa = 1.0;
  std::vector<double> h{0.5};
  std::string bc = "PBC";
};
void add_chain(Params& p, ChainArgs& c);
ChainSpec make_chain(const ChainArgs& c, std::uint64_t seed);

// "a:step:b" (inclusive), "a,b,c" or a single value
std::vector<double> parse_grid(const std::string& text);
std::vector<double> log_grid(double lo, double hi, int n);
// OLS slope and intercept
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

void write_result(std::ostream& os, const Result& r, const std::string& command, const json& config,
                  const Globals& g);
Result self_test_result(const std::vector<SelfCheck>& checks);

}  // namespace ffising::cli
