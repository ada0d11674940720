// qszego: evaluate kernels, export them, and run verification suites.
// Exit codes: 0 pass, 1 check failure, 2 usage or I/O error.

#include "qszego/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

namespace {

using namespace qszego;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 1;
  int m = 4;
  std::string nu = "1,0,0,0";
  std::string q;
  std::string omega;
  double eps = 0;
  double tol = 1e-3;
  double budget = 2e7;
  std::uint64_t seed = 0;
  int max_order = 3;
  int samples = 100000;
  std::string output;
  std::string format = "json";
  std::string config;
  std::string kernel_file;

  void validate() const {
    if (!(tol > 0)) throw UsageError("--tol must be positive");
    if (!(budget > 0)) throw UsageError("--budget must be positive");
    if (n < 1) throw UsageError("--n must be positive");
    if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
  }

  suites::Settings settings() const {
    suites::Settings s;
    s.n = n;
    s.seed = seed;
    s.tol = tol;
    s.budget = static_cast<long>(budget);
    s.max_order = max_order;
    s.decay_samples = samples;
    return s;
  }
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " component '" + item + "'");
    }
  }
  return out;
}

template <std::size_t D>
Hypercomplex<double, D> parse_number(const std::string& text, const char* what) {
  auto v = parse_list(text, what);
  if (v.size() != D) {
    throw UsageError(std::string(what) + " needs " + std::to_string(D) + " components, got " + std::to_string(v.size()));
  }
  Hypercomplex<double, D> h;
  for (std::size_t i = 0; i < D; ++i) h[i] = v[i];
  return h;
}

/// Horizontal quaternions followed by the vertical one: 4(n + 1) reals.
SiegelPoint<double, 4> parse_point(const std::string& text, int n, const char* what) {
  auto v = parse_list(text, what);
  if (static_cast<int>(v.size()) != 4 * (n + 1)) {
    throw UsageError(std::string(what) + " needs 4(n+1) = " + std::to_string(4 * (n + 1)) + " components");
  }
  SiegelPoint<double, 4> p;
  p.horizontal.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < 4; ++i) p.horizontal[j][i] = v[4 * j + i];
  }
  for (int i = 0; i < 4; ++i) p.vertical[i] = v[4 * n + i];
  return p;
}

/// omega' followed by t: 4n + 3 reals.
GroupElement<double, 4> parse_element(const std::string& text, int n) {
  auto v = parse_list(text, "--omega");
  if (static_cast<int>(v.size()) != 4 * n + 3) {
    throw UsageError("--omega needs 4n+3 = " + std::to_string(4 * n + 3) + " components");
  }
  auto h = GroupElement<double, 4>::identity(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < 4; ++i) h.omega[j][i] = v[4 * j + i];
  }
  for (int i = 0; i < 3; ++i) h.t[i] = v[4 * n + i];
  return h;
}

/// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(RunConfig& cfg, const CLI::App& app) {
  if (cfg.config.empty()) return;
  // Flags given on the command line win over the file.
  auto given = [&](const std::string& flag) { return app.get_option(flag)->count() > 0; };
  for (const auto& [key, value] : read_config(cfg.config)) {
    try {
      if (key == "n") {
        if (!given("--n")) cfg.n = std::stoi(value);
      } else if (key == "m") {
        if (!given("--m")) cfg.m = std::stoi(value);
      } else if (key == "tol") {
        if (!given("--tol")) cfg.tol = std::stod(value);
      } else if (key == "budget") {
        if (!given("--budget")) cfg.budget = std::stod(value);
      } else if (key == "seed") {
        if (!given("--seed")) cfg.seed = std::stoull(value);
      } else if (key == "eps") {
        if (!given("--eps")) cfg.eps = std::stod(value);
      } else if (key == "format") {
        if (!given("--format")) cfg.format = value;
      } else if (key == "max-order") {
        if (!given("--max-order")) cfg.max_order = std::stoi(value);
      } else if (key == "samples") {
        if (!given("--samples")) cfg.samples = std::stoi(value);
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad value for config key '" + key + "': " + value);
    }
  }
}

/// Writes to -o when given, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw std::ios_base::failure("cannot open " + cfg.output + " for writing");
  out << text;
  if (!out) throw std::ios_base::failure("write to " + cfg.output + " failed");
}

template <std::size_t D>
nlohmann::json number_json(const Hypercomplex<double, D>& h) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < D; ++i) j.push_back(h[i]);
  return j;
}

int cmd_eval(const std::string& kind, const RunConfig& cfg) {
  nlohmann::json out = {{"kind", kind}, {"n", cfg.n}};
  if (kind == "s" && !cfg.kernel_file.empty()) {
    std::ifstream in(cfg.kernel_file);
    if (!in) throw std::ios_base::failure("cannot open " + cfg.kernel_file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(cfg.kernel_file + ": " + e.what());
    }
    const PiScaledKernel k = pi_scaled_kernel_from_json(j);
    auto v = parse_list(cfg.nu, "--nu");
    if (static_cast<int>(v.size()) != k.body.var_dim()) throw UsageError("--nu does not match the kernel dimension");
    bool zero = true;
    for (double x : v) zero = zero && x == 0;
    if (zero) throw SingularPoint("singular point: kernel at nu = 0");
    out["kernel_file"] = cfg.kernel_file;
    out["nu"] = v;
    const CompiledHyperFrac compiled(k.body);
    std::vector<double> value(k.body.components());
    compiled.eval(v, value);
    for (auto& x : value) x *= k.scale();
    out["value"] = value;
  } else if (kind == "s") {
    out["m"] = cfg.m;
    if (cfg.m == 2) {
      auto nu = parse_number<2>(cfg.nu, "--nu");
      out["nu"] = number_json(nu);
      out["value"] = number_json(szego_density({cfg.n, 2})(nu));
    } else {
      auto nu = parse_number<4>(cfg.nu, "--nu");
      out["nu"] = number_json(nu);
      out["value"] = number_json(szego_density({cfg.n, cfg.m})(nu));
    }
  } else if (kind == "E") {
    out["m"] = cfg.m;
    const auto e = cauchy_kernel(cfg.m);
    auto v = parse_list(cfg.nu, "--nu");
    if (static_cast<int>(v.size()) != cfg.m) throw UsageError("--nu needs m components");
    bool zero = true;
    for (double x : v) zero = zero && x == 0;
    if (zero) throw SingularPoint("singular point: E at nu = 0");
    out["nu"] = v;
    out["value"] = e.eval(v);
  } else if (kind == "S") {
    if (cfg.q.empty() || cfg.omega.empty()) throw UsageError("eval S needs --q and --omega");
    auto q = parse_point(cfg.q, cfg.n, "--q");
    auto w = parse_point(cfg.omega, cfg.n, "--omega");
    out["m"] = 4;
    out["nu"] = number_json(szego_argument(q, w));
    out["value"] = number_json(szego_eval(cfg.n, q, w));
  } else if (kind == "K") {
    if (cfg.omega.empty()) throw UsageError("eval K needs --omega (omega' then t)");
    auto h = parse_element(cfg.omega, cfg.n);
    out["m"] = 4;
    out["eps"] = cfg.eps;
    out["h"] = to_json(h);
    out["value"] = number_json(group_kernel(cfg.n, h, cfg.eps));
  } else {
    throw UsageError("unknown eval kind '" + kind + "' (expected s, S, E or K)");
  }
  emit(cfg, out.dump() + "\n");
  return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
  if (suite != "all" && std::find(suites::names().begin(), suites::names().end(), suite) == suites::names().end()) {
    throw UsageError("unknown suite '" + suite + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  auto reports = suites::run(suite, cfg.settings());
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  int failed = 0;
  for (const auto& r : reports) {
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.name << " " << r.inputs.dump() << "\n";
    }
  }
  if (cfg.format == "csv") {
    std::string csv = "name,inputs,pass,metric,abs_dev,rel_dev,tolerance,n_evals\n";
    for (const auto& r : reports) {
      std::string inputs = r.inputs.dump();
      std::string quoted;
      for (char c : inputs) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      csv += r.name + ",\"" + quoted + "\"," + (r.pass ? "true" : "false") + "," + r.metric + "," +
             to_string(r.abs_dev) + "," + to_string(r.rel_dev) + "," + to_string(r.tolerance) + "," +
             std::to_string(r.n_evals) + "\n";
    }
    emit(cfg, csv);
  } else {
    emit(cfg, to_jsonl(reports));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "verify " << suite << ": " << reports.size() - failed << "/" << reports.size() << " passed, " << failed
            << " failed (" << std::fixed << std::setprecision(1) << secs << " s)\n";
  return failed ? 1 : 0;
}

int cmd_export(const std::string& what, const std::string& table, const RunConfig& cfg) {
  if (what == "kernel") {
    const auto& d = szego_density({cfg.n, cfg.m});
    nlohmann::json j = to_json(d.kernel);
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    emit(cfg, j.dump(1) + "\n");
    return 0;
  }
  if (what != "table") throw UsageError("unknown export target '" + what + "' (expected kernel or table)");
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  if (table == "s-ray") {
    header = {"r", "s0", "s1", "s2", "s3"};
    const auto& s = szego_density({cfg.n, 4});
    auto dir = parse_number<4>(cfg.nu, "--nu");
    const double len = abs(dir);
    if (len == 0) throw UsageError("--nu direction must be nonzero");
    for (int k = 0; k <= 40; ++k) {
      const double r = std::pow(10.0, -1 + k * 0.05);
      auto v = s(dir * (r / len));
      rows.push_back({r, v[0], v[1], v[2], v[3]});
    }
  } else if (table == "K-decay") {
    header = {"rho", "absK", "absK_times_rho_d"};
    const int d = homogeneous_dim(cfg.n);
    auto h = GroupElement<double, 4>::identity(cfg.n);
    if (cfg.omega.empty()) {
      h.omega[0] = QuaternionD{0.6, 0.0, 0.0, 0.0};
      h.t = {0.8, 0.0, 0.0};
    } else {
      h = parse_element(cfg.omega, cfg.n);
    }
    h = dilate(1.0 / rho_length(h), h);
    for (int k = 0; k <= 40; ++k) {
      const double rho = std::pow(10.0, k * 0.05);
      const double a = abs(group_kernel(cfg.n, dilate(rho, h), cfg.eps));
      rows.push_back({rho, a, a * std::pow(rho, d)});
    }
  } else {
    throw UsageError("unknown table '" + table + "' (expected s-ray or K-decay)");
  }
  std::ostringstream out;
  out << std::setprecision(17);
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json o;
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
      j.push_back(o);
    }
    out << j.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << "\n";
    }
  }
  emit(cfg, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic Cauchy-Szego kernel toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "number of horizontal quaternionic variables");
    sub->add_option("--m", cfg.m, "algebra dimension (2 or 4)");
    sub->add_option("--nu", cfg.nu, "comma-separated hypercomplex argument");
    sub->add_option("--q", cfg.q, "point q' then q_{n+1}, 4(n+1) reals");
    sub->add_option("--omega", cfg.omega, "point (for S) or group element w' then t (for K)");
    sub->add_option("--eps", cfg.eps, "vertical offset for K");
    sub->add_option("--tol", cfg.tol, "relative tolerance");
    sub->add_option("--budget", cfg.budget, "integrand evaluation budget");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--max-order", cfg.max_order, "largest multi-index order in the Newton pairing grid");
    sub->add_option("--samples", cfg.samples, "samples per shell for kernel estimates");
    sub->add_option("--config", cfg.config, "key=value file; command-line flags win");
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
  };

  std::string eval_kind, suite = "all", export_what, table = "s-ray";
  auto* eval = app.add_subcommand("eval", "evaluate s, S, E or K");
  eval->add_option("kind", eval_kind, "s | S | E | K")->required();
  eval->add_option("--kernel", cfg.kernel_file, "evaluate an exported kernel JSON file instead of building s");
  common(eval);
  auto* verify = app.add_subcommand("verify", "run a verification suite, JSON lines to stdout");
  verify->add_option("suite", suite, "all | algebra | kernel | geometry | props | reproducing | octonion");
  common(verify);
  auto* exp = app.add_subcommand("export", "export a kernel (JSON) or a table (CSV)");
  exp->add_option("target", export_what, "kernel | table")->required();
  exp->add_option("--what", table, "table: s-ray | K-decay");
  common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config(cfg, *active);
    cfg.validate();
    if (active == eval) return cmd_eval(eval_kind, cfg);
    if (active == verify) return cmd_verify(suite, cfg);
    if (export_what == "table" && cfg.format == "json" && active->get_option("--format")->count() == 0) cfg.format = "csv";
    return cmd_export(export_what, table, cfg);
  } catch (const SingularPoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
