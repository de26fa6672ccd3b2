#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>

#include <ffising/error.hpp>
#include <ffising/model.hpp>
#include <ffising/version.hpp>

#include "cli.hpp"

namespace ffising::cli {

CLI::Option* Params::flag(const std::string& key, bool& var, const std::string& desc) {
  std::string name = "--" + key;
  std::replace(name.begin() + 2, name.end(), '_', '-');
  CLI::Option* opt = app_->add_flag(name, var, desc);
  entries_.push_back({key, opt, [&var](const json& j) { var = j.get<bool>(); }, [&var] { return json(var); }});
  return opt;
}

void Params::resolve(const json& file) {
  for (const Entry& e : entries_) {
    if (e.opt->count() > 0 || !file.contains(e.key)) continue;
    try {
      e.load(file.at(e.key));
    } catch (const json::exception& ex) {
      throw Error(Errc::invalid_input, "config key '" + e.key + "': " + ex.what());
    }
  }
}

json Params::echo() const {
  json j = json::object();
  for (const Entry& e : entries_) j[e.key] = e.save();
  return j;
}

SelfCheck below(std::string name, double value, double limit) {
  return {std::move(name), value, limit, value <= limit};
}

SelfCheck holds(std::string name, bool ok) { return {std::move(name), ok ? 0.0 : 1.0, 0.0, ok}; }

Command& Registry::add(const std::string& name, const std::string& desc) {
  auto c = std::make_unique<Command>();
  c->app = app_.add_subcommand(name, desc);
  c->params = std::make_unique<Params>(c->app);
  commands_.push_back(std::move(c));
  return *commands_.back();
}

void add_chain(Params& p, ChainArgs& c) {
  p.add("L", c.L, "chain length");
  p.add("J", c.J, "bond couplings: one value or L values");
  p.add("kappa", c.kappa, "anisotropy");
  p.add("h", c.h, "transverse fields: one value or L values");
  p.add("bc", c.bc, "boundary condition, PBC or OBC");
}

ChainSpec make_chain(const ChainArgs& c, std::uint64_t seed) {
  if (c.L < 1) throw Error(Errc::invalid_size, "L must be positive");
  auto widen = [&](const std::vector<double>& v, const char* what) {
    if (v.size() == 1) return std::vector<double>(c.L, v[0]);
    if (static_cast<int>(v.size()) != c.L)
      throw Error(Errc::invalid_size, std::string(what) + " needs 1 or L values");
    return v;
  };
  ChainSpec s;
  s.L = c.L;
  s.J = widen(c.J, "J");
  s.h = widen(c.h, "h");
  s.kappa = c.kappa;
  s.bc = parse_boundary(c.bc);
  s.seed = seed;
  s.validate();
  return s;
}

std::vector<double> parse_grid(const std::string& text) {
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw Error(Errc::invalid_input, "bad number '" + s + "' in grid");
    return v;
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  std::vector<double> out;
  if (sep == ':') {
    if (parts.size() != 3) throw Error(Errc::invalid_input, "range grid needs a:step:b");
    const double a = num(parts[0]), step = num(parts[1]), b = num(parts[2]);
    if (!(step > 0) || b < a) throw Error(Errc::invalid_input, "range grid needs step > 0 and b >= a");
    const long n = std::lround(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    for (const std::string& p : parts) out.push_back(num(p));
  }
  if (out.empty()) throw Error(Errc::invalid_input, "empty grid");
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || hi < lo || n < 1) throw Error(Errc::invalid_input, "log grid needs 0 < lo <= hi, n >= 1");
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) throw Error(Errc::invalid_input, "fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {b, (sy - b * sx) / n};
}

namespace {

std::string cell(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_result(std::ostream& os, const Result& r, const std::string& command, const json& config,
                  const Globals& g) {
  if (g.format == "json") {
    json j;
    j["ffising_version"] = kVersion;
    j["command"] = command;
    j["rng"] = kRngName;
    j["config"] = config;
    if (!g.no_timestamp) j["timestamp"] = timestamp();
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    j["summary"] = r.summary;
    os << j.dump(2) << "\n";
    return;
  }
  os << "# ffising " << kVersion << " " << command << "\n";
  os << "# rng: " << kRngName << "\n";
  os << "# config: " << config.dump() << "\n";
  if (!g.no_timestamp) os << "# timestamp: " << timestamp() << "\n";
  if (!r.summary.empty()) os << "# summary: " << r.summary.dump() << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const json& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
    os << "\n";
  }
}

Result self_test_result(const std::vector<SelfCheck>& checks) {
  Result r;
  r.columns = {"check", "value", "limit", "pass"};
  int failed = 0;
  for (const SelfCheck& c : checks) {
    r.rows.push_back(json::array({c.name, c.value, c.limit, c.pass ? "PASS" : "FAIL"}));
    failed += !c.pass;
  }
  r.summary = {{"checks", checks.size()}, {"failed", failed}};
  r.status = failed ? 4 : 0;
  return r;
}

}  // namespace ffising::cli
