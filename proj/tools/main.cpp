#include <fstream>
#include <iostream>

#include <ffising/error.hpp>
#include <ffising/version.hpp>

#include "cli.hpp"

using namespace ffising;
using namespace ffising::cli;

int main(int argc, char** argv) {
  CLI::App app{"Free-fermion transverse-field Ising chain experiments"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON file with parameters; flags take precedence");
  CLI::Option* seed_opt = app.add_option("--seed", g.seed, "seed for random chains")->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp header line");
  app.add_flag("--self-test", g.self_test, "run the invariant suite of the subcommand's module");

  Registry reg(app);
  register_static(reg);
  register_dynamics(reg);
  register_correlations(reg);
  register_validate(reg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Command* cmd = nullptr;
  for (auto& c : reg.commands())
    if (c->app->parsed()) cmd = c.get();
  if (!cmd) return 2;
  const std::string name = cmd->app->get_name();

  try {
    json file = json::object();
    if (!g.config_path.empty()) {
      std::ifstream in(g.config_path);
      if (!in) throw Error(Errc::invalid_input, "cannot read config '" + g.config_path + "'");
      try {
        file = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, std::string("config: ") + e.what());
      }
      if (!file.is_object()) throw Error(Errc::invalid_input, "config must be a JSON object");
    }
    cmd->params->resolve(file);
    if (seed_opt->count() == 0 && file.contains("seed") && !file["seed"].is_null())
      g.seed = file["seed"].get<std::uint64_t>();

    json config = cmd->params->echo();
    config["seed"] = g.seed;
    const Result r = g.self_test ? self_test_result(cmd->self_test()) : cmd->run(g);

    std::ofstream fout;
    if (!g.out.empty()) {
      fout.open(g.out);
      if (!fout) throw Error(Errc::invalid_input, "cannot write '" + g.out + "'");
    }
    std::ostream& os = g.out.empty() ? std::cout : fout;
    write_result(os, r, g.self_test ? name + " --self-test" : name, config, g);
    if (r.status != 0) std::cerr << "ffising " << name << ": validation breach\n";
    return r.status;
  } catch (const Error& e) {
    std::cerr << "ffising " << name << ": " << e.what() << "\n";
    return is_numerical(e.code()) ? 3 : 2;
  } catch (const json::exception& e) {
    std::cerr << "ffising " << name << ": config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ffising " << name << ": " << e.what() << "\n";
    return 3;
  }
}
