// squeezekit command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <squeezekit/squeezekit.h>

#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace {

using json = nlohmann::ordered_json;
using Complex = std::complex<double>;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Library failure carrying the C status.
struct LibraryError {
  sqk_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void check(sqk_status status) {
  if (status != SQK_OK) throw LibraryError{status, sqk_last_error()};
}

struct StateDeleter {
  void operator()(sqk_state* s) const { sqk_state_free(s); }
};
using StatePtr = std::unique_ptr<sqk_state, StateDeleter>;

struct CString {
  char* ptr = nullptr;
  ~CString() { sqk_string_free(ptr); }
};

sqk_complex to_c(Complex z) { return {z.real(), z.imag()}; }
json pair(Complex z) { return json::array({z.real(), z.imag()}); }
json pair(sqk_complex z) { return json::array({z.re, z.im}); }

double parse_real(const std::string& text, const std::string& what) {
  if (text.empty()) throw UsageError{"empty number in " + what};
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw UsageError{"cannot parse '" + text + "' in " + what};
  }
  return v;
}

// Accepts 0.5, -0.2i, 0.3+0.4i, 1e-3-2e-2j, i.
Complex parse_complex(std::string text) {
  std::erase(text, ' ');
  const std::string what = "complex literal '" + text + "'";
  if (text.empty()) throw UsageError{"empty " + what};
  const char last = text.back();
  if (last != 'i' && last != 'j') return {parse_real(text, what), 0.0};
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, what);
  };
  if (split == std::string::npos) return {0.0, imag_part(text)};
  return {parse_real(text.substr(0, split), what), imag_part(text.substr(split))};
}

std::vector<Complex> parse_alpha_list(const std::vector<std::string>& items, int modes) {
  std::vector<Complex> out;
  for (const auto& item : items) out.push_back(parse_complex(item));
  if (modes > 0 && out.size() == 1) out.assign(static_cast<std::size_t>(modes), out.front());
  if (modes > 0 && static_cast<int>(out.size()) != modes) {
    throw UsageError{"--alpha lists " + std::to_string(out.size()) + " values but --modes is " + std::to_string(modes)};
  }
  return out;
}

json alpha_json(const std::vector<Complex>& alphas) {
  json a = json::array();
  for (const auto& z : alphas) a.push_back(pair(z));
  return a;
}

json state_json(const sqk_state* state) {
  CString text;
  check(sqk_state_to_json(state, &text.ptr));
  return json::parse(text.ptr);
}

std::vector<sqk_complex> amplitudes(const sqk_state* state) {
  std::size_t dim = 0;
  check(sqk_state_shape(state, nullptr, nullptr, &dim));
  std::vector<sqk_complex> amps(dim);
  check(sqk_state_amplitudes(state, amps.data(), amps.size()));
  return amps;
}

json state_summary(const sqk_state* state, bool include_state) {
  int modes = 0, cutoff = 0;
  std::size_t dim = 0;
  check(sqk_state_shape(state, &modes, &cutoff, &dim));
  double norm = 0.0, deficit = 0.0;
  check(sqk_state_norm(state, &norm));
  check(sqk_state_truncation_deficit(state, &deficit));
  json out;
  out["num_modes"] = modes;
  out["cutoff"] = cutoff;
  out["norm"] = norm;
  out["truncation_deficit"] = deficit;
  json occupations = json::array();
  for (int m = 1; m <= modes; ++m) {
    double n = 0.0;
    if (sqk_mean_occupation(state, m, &n) == SQK_OK) {
      occupations.push_back(n);
    } else {
      occupations.push_back(nullptr);
    }
  }
  out["mean_occupation"] = std::move(occupations);
  out["c0"] = pair(amplitudes(state).front());
  if (include_state) out["state"] = state_json(state);
  return out;
}

struct Output {
  std::string path;
  bool csv = false;
};

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw LibraryError{SQK_INVALID_ARGUMENT, "cannot open " + tmp.string() + " for writing"};
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw LibraryError{SQK_INTERNAL_ERROR, "write to " + tmp.string() + " failed"};
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw LibraryError{SQK_INTERNAL_ERROR, "cannot move output into place at " + path};
  }
}

void emit(const Output& out, const std::string& text) {
  if (out.path.empty() || out.path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_atomically(out.path, text);
  }
}

json document(const std::string& command, json config, json result) {
  json doc;
  doc["schema_version"] = sqk_schema_version();
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// splitmix64; used instead of <random> distributions so seeded output is
// identical across standard libraries.
struct SeededStream {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// ------------------------------------------------------------------ options

struct Global {
  std::string output;
  std::uint64_t seed = 0;
};

struct SqueezeOpts {
  std::string alpha;
  std::optional<double> r;
  double theta = 0.0;
  int cutoff = 0;
  bool no_state = false;
};

struct EquivOpts {
  double r = 0.5;
  double theta = 0.0;
  int cutoff = 0;
  double tol = 1e-8;
};

struct ScanOpts {
  int modes = 0;
  std::vector<std::string> alpha;
  std::vector<int> cutoffs;
  double tol = 1e-8;
  std::string system;
  bool include_basis = false;
};

struct ChainOpts {
  int modes = 4;
  std::vector<std::string> alpha = {"0.5"};
  int cutoff = 28;
};

struct TfdOpts {
  double beta = 1.0;
  std::string omega = "0.1:10:50:log";
  std::string format = "csv";
};

struct AppendixOpts {
  double x = 0.25;
  int terms = 60;
  std::string alpha = "0.5";
  int cutoff = 60;
  int window = 20;
  int samples = 2;
  double tol = 1e-9;
};

struct InspectOpts {
  std::string input;
};

// ------------------------------------------------------------------ commands

int run_squeeze(const Global& g, const SqueezeOpts& o, bool two_mode) {
  const std::string command = two_mode ? "squeeze two" : "squeeze single";
  json config;
  sqk_state* raw = nullptr;
  json result;
  if (o.r.has_value()) {
    if (!o.alpha.empty()) throw UsageError{"give either --alpha or --r, not both"};
    config["r"] = *o.r;
    config["theta"] = o.theta;
    config["cutoff"] = o.cutoff > 0 ? json(o.cutoff) : json("auto");
    check(two_mode ? sqk_state_squeeze_two(*o.r, o.theta, o.cutoff, &raw)
                   : sqk_state_squeeze_single(*o.r, o.theta, o.cutoff, &raw));
    sqk_complex alpha{};
    check(sqk_alpha_from_xi(*o.r, o.theta, two_mode ? 1 : 0, &alpha));
    result["construction"] = "unitary";
    result["alpha"] = pair(alpha);
  } else {
    const Complex alpha = parse_complex(o.alpha.empty() ? "0.5" : o.alpha);
    config["alpha"] = pair(alpha);
    config["cutoff"] = o.cutoff > 0 ? json(o.cutoff) : json("auto");
    check(two_mode ? sqk_state_tmsv(to_c(alpha), o.cutoff, &raw) : sqk_state_smsv(to_c(alpha), o.cutoff, &raw));
    result["construction"] = "closed-form";
    result["alpha"] = pair(alpha);
  }
  config["include_state"] = !o.no_state;
  const StatePtr state(raw);
  json summary = state_summary(state.get(), !o.no_state);
  for (auto& [k, v] : summary.items()) result[k] = v;
  if (two_mode) {
    const int keep = 1;
    double entropy = 0.0;
    check(sqk_entanglement_entropy(state.get(), &keep, 1, &entropy));
    result["entanglement_entropy"] = entropy;
  }
  emit({g.output}, dump(document(command, config, result)));
  return kExitOk;
}

int run_equiv(const Global& g, const EquivOpts& o, bool two_mode) {
  int cutoff = o.cutoff;
  if (cutoff <= 0) check(sqk_auto_cutoff_for_r(o.r, &cutoff));
  json config = {{"r", o.r}, {"theta", o.theta}, {"cutoff", cutoff}, {"tol", o.tol}};
  sqk_complex alpha{};
  check(sqk_alpha_from_xi(o.r, o.theta, two_mode ? 1 : 0, &alpha));
  sqk_state *u = nullptr, *e = nullptr, *raw = nullptr, *c = nullptr;
  check(two_mode ? sqk_state_squeeze_two(o.r, o.theta, cutoff, &u) : sqk_state_squeeze_single(o.r, o.theta, cutoff, &u));
  const StatePtr unitary(u);
  check(two_mode ? sqk_state_exp_pair(alpha, cutoff, 1, &e) : sqk_state_exp_single(alpha, cutoff, 1, &e));
  const StatePtr exp_form(e);
  check(two_mode ? sqk_state_exp_pair(alpha, cutoff, 0, &raw) : sqk_state_exp_single(alpha, cutoff, 0, &raw));
  const StatePtr exp_raw(raw);
  check(two_mode ? sqk_state_tmsv(alpha, cutoff, &c) : sqk_state_smsv(alpha, cutoff, &c));
  const StatePtr closed(c);
  double f_exp = 0.0, f_closed = 0.0, raw_norm = 0.0, deficit = 0.0;
  check(sqk_fidelity(unitary.get(), exp_form.get(), &f_exp));
  check(sqk_fidelity(unitary.get(), closed.get(), &f_closed));
  check(sqk_state_norm(exp_raw.get(), &raw_norm));
  check(sqk_state_truncation_deficit(exp_raw.get(), &deficit));
  const double mod2 = alpha.re * alpha.re + alpha.im * alpha.im;
  const double expected_norm = std::pow(1.0 - mod2, two_mode ? -0.5 : -0.25);
  json result;
  result["alpha"] = pair(alpha);
  result["alpha_sign"] = two_mode ? 1 : -1;
  result["fidelity_unitary_vs_exp"] = f_exp;
  result["fidelity_unitary_vs_closed_form"] = f_closed;
  result["fidelity_deficit"] = 1.0 - f_exp;
  result["exp_form_norm"] = raw_norm;
  result["expected_exp_form_norm"] = expected_norm;
  result["exp_form_truncation_deficit"] = deficit;
  result["passed"] = (1.0 - f_exp) <= o.tol && (1.0 - f_closed) <= o.tol;
  emit({g.output}, dump(document(two_mode ? "equiv two" : "equiv single", config, result)));
  return kExitOk;
}

std::vector<int> default_cutoffs(int modes) {
  if (modes <= 1) return {10, 20, 30, 40};
  if (modes == 2) return {10, 16, 22};
  return {4, 5, 6};
}

int run_scan(const Global& g, const ScanOpts& o) {
  json config;
  CString text;
  if (!o.system.empty()) {
    if (!o.alpha.empty()) throw UsageError{"give either --system or --alpha, not both"};
    std::ifstream f(o.system);
    if (!f) throw UsageError{"cannot read system file " + o.system};
    std::stringstream buffer;
    buffer << f.rdbuf();
    json sys;
    try {
      sys = json::parse(buffer.str());
    } catch (const json::exception& e) {
      throw UsageError{"system file " + o.system + " is not valid JSON: " + e.what()};
    }
    if (!sys.is_object() || !sys.contains("alphas") || !sys["alphas"].is_array()) {
      throw UsageError{"system file needs an \"alphas\" array"};
    }
    const int n = static_cast<int>(sys["alphas"].size());
    if (o.modes > 0 && o.modes != n) throw UsageError{"--modes disagrees with the system file"};
    const std::vector<int> cutoffs = o.cutoffs.empty() ? default_cutoffs(n) : o.cutoffs;
    config["system"] = sys;
    config["cutoffs"] = cutoffs;
    config["tol"] = o.tol;
    config["include_basis"] = o.include_basis;
    check(sqk_nogo_scan_json(buffer.str().c_str(), cutoffs.data(), cutoffs.size(), o.tol, o.include_basis ? 1 : 0,
                             &text.ptr));
  } else {
    if (o.alpha.empty()) throw UsageError{"nogo scan needs --alpha or --system"};
    const std::vector<Complex> alphas = parse_alpha_list(o.alpha, o.modes);
    const int n = static_cast<int>(alphas.size());
    const std::vector<int> cutoffs = o.cutoffs.empty() ? default_cutoffs(n) : o.cutoffs;
    std::vector<sqk_complex> c;
    for (const auto& z : alphas) c.push_back(to_c(z));
    config["modes"] = n;
    config["alphas"] = alpha_json(alphas);
    config["cutoffs"] = cutoffs;
    config["tol"] = o.tol;
    config["include_basis"] = o.include_basis;
    check(sqk_nogo_scan(c.data(), c.size(), cutoffs.data(), cutoffs.size(), o.tol, o.include_basis ? 1 : 0,
                        &text.ptr));
  }
  emit({g.output}, dump(document("nogo scan", config, json::parse(text.ptr))));
  return kExitOk;
}

int run_chain(const Global& g, const ChainOpts& o) {
  const std::vector<Complex> alphas = parse_alpha_list(o.alpha, o.modes);
  std::vector<sqk_complex> c;
  for (const auto& z : alphas) c.push_back(to_c(z));
  const json config = {{"modes", o.modes}, {"alphas", alpha_json(alphas)}, {"cutoff", o.cutoff}};
  CString text;
  check(sqk_pairwise_chain(c.data(), c.size(), o.cutoff, &text.ptr));
  emit({g.output}, dump(document("nogo pairwise-chain", config, json::parse(text.ptr))));
  return kExitOk;
}

struct OmegaGrid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool logarithmic = true;
};

OmegaGrid parse_omega(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw UsageError{"--omega must look like min:max:n:lin|log, got '" + text + "'"};
  OmegaGrid grid;
  grid.min = parse_real(parts[0], "--omega");
  grid.max = parse_real(parts[1], "--omega");
  const double n = parse_real(parts[2], "--omega");
  if (n != std::floor(n) || n < 2 || n > 1e6) throw UsageError{"--omega point count must be an integer >= 2"};
  grid.points = static_cast<int>(n);
  if (parts[3] == "log") {
    grid.logarithmic = true;
  } else if (parts[3] == "lin") {
    grid.logarithmic = false;
  } else {
    throw UsageError{"--omega grid must be lin or log, got '" + parts[3] + "'"};
  }
  return grid;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_tfd(const Global& g, const TfdOpts& o) {
  const OmegaGrid grid = parse_omega(o.omega);
  std::size_t count = 0;
  check(sqk_tfd_spectrum(o.beta, grid.min, grid.max, grid.points, grid.logarithmic ? 1 : 0, nullptr, 0, &count));
  std::vector<sqk_tfd_row> rows(count);
  check(sqk_tfd_spectrum(o.beta, grid.min, grid.max, grid.points, grid.logarithmic ? 1 : 0, rows.data(), rows.size(),
                         &count));
  std::size_t capped = 0;
  for (const auto& r : rows) capped += r.cutoff_capped != 0;
  if (capped > 0) {
    std::cerr << "warning: " << capped << " row(s) hit the cutoff cap; see the cutoff_capped column\n";
  }
  if (o.format == "csv") {
    std::string out = "# schema_version=" + std::string(sqk_schema_version()) + " beta=" + format_g17(o.beta) +
                      " omega=" + o.omega + "\n";
    out += "omega,alpha,r,mean_occupation,thermal_residual,cutoff,cutoff_capped\n";
    for (const auto& r : rows) {
      out += format_g17(r.omega) + "," + format_g17(r.alpha) + "," + format_g17(r.r) + "," +
             format_g17(r.mean_occupation) + "," + format_g17(r.thermal_residual) + "," + std::to_string(r.cutoff) +
             "," + std::to_string(r.cutoff_capped) + "\n";
    }
    emit({g.output, true}, out);
    return kExitOk;
  }
  const json config = {{"beta", o.beta},
                       {"omega_min", grid.min},
                       {"omega_max", grid.max},
                       {"num_points", grid.points},
                       {"grid", grid.logarithmic ? "log" : "lin"},
                       {"format", o.format}};
  json result = json::array();
  for (const auto& r : rows) {
    result.push_back({{"omega", r.omega},
                      {"alpha", r.alpha},
                      {"r", r.r},
                      {"mean_occupation", r.mean_occupation},
                      {"thermal_residual", r.thermal_residual},
                      {"cutoff", r.cutoff},
                      {"cutoff_capped", r.cutoff_capped != 0}});
  }
  emit({g.output}, dump(document("tfd spectrum", config, json{{"rows", result}})));
  return kExitOk;
}

int run_appendix(const Global& g, const AppendixOpts& o) {
  const Complex alpha = parse_complex(o.alpha);
  json config = {{"x", o.x},           {"terms", o.terms},     {"alpha", pair(alpha)}, {"cutoff", o.cutoff},
                 {"window", o.window}, {"samples", o.samples}, {"seed", g.seed},       {"tol", o.tol}};
  json result;
  bool all_passed = true;

  double partial = 0.0;
  check(sqk_gen_fn_partial_sum(o.x, o.terms, &partial));
  const double exact = 1.0 / std::sqrt(1.0 - o.x);
  const bool a_ok = std::abs(partial - exact) <= 1e-7;
  all_passed = all_passed && a_ok;
  result["generating_function"] = {{"partial_sum", partial},
                                   {"closed_form", exact},
                                   {"abs_error", std::abs(partial - exact)},
                                   {"passed", a_ok}};

  std::vector<Complex> alphas = {alpha, Complex(0.0, std::abs(alpha))};
  SeededStream rng{g.seed};
  for (int s = 0; s < o.samples; ++s) {
    const double mod = 0.05 + 0.8 * rng.uniform();
    alphas.push_back(std::polar(mod, 2.0 * std::numbers::pi * rng.uniform()));
  }
  json commutator = json::array();
  for (const auto& a : alphas) {
    double residual = 0.0;
    check(sqk_commutator_check_single(to_c(a), o.cutoff, o.window, &residual));
    const bool ok = residual <= o.tol;
    all_passed = all_passed && ok;
    commutator.push_back({{"alpha", pair(a)}, {"residual", residual}, {"passed", ok}});
  }
  result["commutator"] = std::move(commutator);

  sqk_state* raw = nullptr;
  const int pair_cutoff = 20;
  check(sqk_state_tmsv(to_c(alpha), pair_cutoff, &raw));
  const StatePtr tmsv(raw);
  double closed_off = 0.0;
  const auto amps = amplitudes(tmsv.get());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i / (pair_cutoff + 1) != i % (pair_cutoff + 1)) closed_off = std::max(closed_off, std::hypot(amps[i].re, amps[i].im));
  }
  const sqk_complex both[2] = {to_c(alpha), to_c(alpha)};
  const int cutoffs[3] = {16, 18, 20};
  CString text;
  check(sqk_nogo_scan(both, 2, cutoffs, 3, 0.0, 1, &text.ptr));
  const json scan = json::parse(text.ptr);
  const json& last = scan["reports"].back();
  double kernel_off = 0.0;
  const int k = last["cutoff"].get<int>();
  for (const auto& vec : last["kernel_basis"]) {
    const auto& a = vec["amplitudes"];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i / (k + 1) != i % (k + 1)) kernel_off = std::max(kernel_off, std::hypot(a[i][0].get<double>(), a[i][1].get<double>()));
    }
  }
  const bool c_ok = closed_off <= 1e-10 && kernel_off <= 1e-10 && last["kernel_dim"].get<int>() == 1;
  all_passed = all_passed && c_ok;
  result["off_diagonal"] = {{"closed_form_max", closed_off},
                            {"kernel_cutoff", k},
                            {"kernel_dim", last["kernel_dim"]},
                            {"kernel_max", kernel_off},
                            {"passed", c_ok}};
  result["passed"] = all_passed;
  emit({g.output}, dump(document("check appendix", config, result)));
  return all_passed ? kExitOk : kExitFailure;
}

int run_inspect(const Global& g, const InspectOpts& o) {
  std::ifstream f(o.input);
  if (!f) throw UsageError{"cannot read state file " + o.input};
  std::stringstream buffer;
  buffer << f.rdbuf();
  sqk_state* raw = nullptr;
  check(sqk_state_from_json(buffer.str().c_str(), &raw));
  const StatePtr state(raw);
  emit({g.output}, dump(document("state inspect", json{{"input", o.input}}, state_summary(state.get(), true))));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squeezekit: squeezed vacua in truncated Fock space"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.allow_config_extras(false);
  app.set_version_flag("--version", std::string(sqk_version()));

  Global global;
  app.add_option("-o,--output", global.output, "Write the result here (atomically) instead of stdout");
  app.add_option("--seed", global.seed, "Seed for randomized sampling");

  SqueezeOpts squeeze_single_opts, squeeze_two_opts;
  auto* squeeze = app.add_subcommand("squeeze", "Construct a squeezed vacuum")->require_subcommand(1);
  auto add_squeeze = [&](const char* name, const char* help, SqueezeOpts& o) {
    auto* sub = squeeze->add_subcommand(name, help);
    sub->add_option("--alpha", o.alpha, "Closed-form parameter alpha (complex literal, e.g. 0.3+0.2i)");
    sub->add_option("--r", o.r, "Squeeze magnitude; builds the state with the unitary operator instead");
    sub->add_option("--theta", o.theta, "Squeeze phase (with --r)");
    sub->add_option("--cutoff", o.cutoff, "Fock cutoff; 0 chooses automatically");
    sub->add_flag("--no-state", o.no_state, "Omit the amplitude tensor from the output");
    return sub;
  };
  auto* squeeze_single = add_squeeze("single", "Single-mode squeezed vacuum", squeeze_single_opts);
  auto* squeeze_two = add_squeeze("two", "Two-mode squeezed vacuum", squeeze_two_opts);

  EquivOpts equiv_single_opts, equiv_two_opts;
  auto* equiv = app.add_subcommand("equiv", "Compare the unitary and exponential constructions")->require_subcommand(1);
  auto add_equiv = [&](const char* name, const char* help, EquivOpts& o) {
    auto* sub = equiv->add_subcommand(name, help);
    sub->add_option("--r", o.r, "Squeeze magnitude")->check(CLI::NonNegativeNumber);
    sub->add_option("--theta", o.theta, "Squeeze phase");
    sub->add_option("--cutoff", o.cutoff, "Fock cutoff; 0 chooses automatically");
    sub->add_option("--tol", o.tol, "Allowed fidelity deficit");
    return sub;
  };
  auto* equiv_single = add_equiv("single", "S(xi)|0> against exp(alpha a^dagger^2 / 2)|0>", equiv_single_opts);
  auto* equiv_two = add_equiv("two", "T(xi)|0,0> against exp(alpha a^dagger b^dagger)|0,0>", equiv_two_opts);

  ScanOpts scan_opts;
  ChainOpts chain_opts;
  auto* nogo = app.add_subcommand("nogo", "Cyclic N-mode conditions")->require_subcommand(1);
  auto* scan = nogo->add_subcommand("scan", "Kernel scan over cutoffs with a verdict");
  scan->add_option("--modes", scan_opts.modes, "Number of modes N");
  scan->add_option("--alpha", scan_opts.alpha, "Comma-separated couplings; one value is broadcast")->delimiter(',');
  scan->add_option("--cutoffs", scan_opts.cutoffs, "Comma-separated ascending cutoffs")->delimiter(',');
  scan->add_option("--tol", scan_opts.tol, "Relative singular-value tolerance")->check(CLI::PositiveNumber);
  scan->add_option("--system", scan_opts.system, "JSON file with {\"alphas\": [...]}");
  scan->add_flag("--include-basis", scan_opts.include_basis, "Emit kernel basis states");
  auto* chain = nogo->add_subcommand("pairwise-chain", "Product of pairwise squeezed states on the cyclic conditions");
  chain->add_option("--modes", chain_opts.modes, "Even number of modes");
  chain->add_option("--alpha", chain_opts.alpha, "Comma-separated couplings; one value is broadcast")->delimiter(',');
  chain->add_option("--cutoff", chain_opts.cutoff, "Fock cutoff");

  TfdOpts tfd_opts;
  auto* tfd = app.add_subcommand("tfd", "Thermofield double")->require_subcommand(1);
  auto* spectrum = tfd->add_subcommand("spectrum", "Per-frequency squeezing spectrum");
  spectrum->add_option("--beta", tfd_opts.beta, "Inverse temperature");
  spectrum->add_option("--omega", tfd_opts.omega, "Grid as min:max:n:lin|log");
  spectrum->add_option("--format", tfd_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  AppendixOpts appendix_opts;
  auto* checks = app.add_subcommand("check", "Numerical identity checks")->require_subcommand(1);
  auto* appendix = checks->add_subcommand("appendix", "Generating function, commutator and off-diagonal checks");
  appendix->add_option("--x", appendix_opts.x, "Generating-function argument");
  appendix->add_option("--terms", appendix_opts.terms, "Generating-function terms");
  appendix->add_option("--alpha", appendix_opts.alpha, "Coupling for the commutator and pair checks");
  appendix->add_option("--cutoff", appendix_opts.cutoff, "Cutoff for the commutator check");
  appendix->add_option("--window", appendix_opts.window, "Interior window for the commutator check");
  appendix->add_option("--samples", appendix_opts.samples, "Extra seeded random couplings")->check(CLI::Range(0, 100));
  appendix->add_option("--tol", appendix_opts.tol, "Commutator residual threshold");

  InspectOpts inspect_opts;
  auto* state_cmd = app.add_subcommand("state", "State documents")->require_subcommand(1);
  auto* inspect = state_cmd->add_subcommand("inspect", "Load a state JSON document and summarize it");
  inspect->add_option("input", inspect_opts.input, "State JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*squeeze_single) return run_squeeze(global, squeeze_single_opts, false);
    if (*squeeze_two) return run_squeeze(global, squeeze_two_opts, true);
    if (*equiv_single) return run_equiv(global, equiv_single_opts, false);
    if (*equiv_two) return run_equiv(global, equiv_two_opts, true);
    if (*scan) return run_scan(global, scan_opts);
    if (*chain) return run_chain(global, chain_opts);
    if (*spectrum) return run_tfd(global, tfd_opts);
    if (*appendix) return run_appendix(global, appendix_opts);
    if (*inspect) return run_inspect(global, inspect_opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.status == SQK_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
