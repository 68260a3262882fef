#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sbp/counts.hpp"
#include "sbp/lumped.hpp"
#include "sbp/mc.hpp"
#include "sbp/oracle.hpp"
#include "sbp/sylow.hpp"

namespace sbp::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void check_pk(unsigned p, unsigned k) {
  if (!is_prime(p)) throw UsageError("--p must be prime, got " + std::to_string(p));
  if (k < 1 || k >= p) {
    throw UsageError("--k must satisfy 1 <= k < p, got k=" + std::to_string(k) + " p=" + std::to_string(p));
  }
}

enum class Format { csv, json };

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw UsageError("--format must be csv or json");
}

json report_json(const VerificationReport& report) {
  json families = json::object();
  for (const auto& [name, f] : report.families()) {
    families[name] = {{"checked", f.checked}, {"failed", f.failed}, {"skipped", f.skipped},
                      {"note", f.note},       {"witnesses", f.witnesses}};
  }
  return {{"name", report.name()}, {"passed", report.passed()}, {"families", families}};
}

json counts_json(const CosetCountTable& table) {
  const auto pi = lumped_stationary(table);
  json rows = json::array();
  for (unsigned a = table.k; a <= 2 * table.k; ++a) {
    rows.push_back({{"a", a},
                    {"f", to_string(table.count(a))},
                    {"pi_bar", to_string(pi[a])},
                    {"pi_bar_float", pi[a].get_d()}});
  }
  return {{"p", table.p}, {"k", table.k}, {"Z", to_string(table.Z)}, {"rows", rows}};
}

CosetCountTable read_counts(const std::string& path, unsigned p, unsigned k) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open counts file " + path);
  CosetCountTable table;
  try {
    const json doc = json::parse(in);
    table.p = doc.at("p").get<unsigned>();
    table.k = doc.at("k").get<unsigned>();
    table.Z = BigInt(doc.at("Z").get<std::string>());
    const auto& rows = doc.at("rows");
    table.f.assign(rows.size(), BigInt(0));
    for (const auto& row : rows) {
      const unsigned a = row.at("a").get<unsigned>();
      if (a < table.k || a - table.k >= table.f.size()) throw UsageError("counts file has a row outside [k:2k]");
      table.f[a - table.k] = BigInt(row.at("f").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw UsageError("malformed counts file " + path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed number in counts file " + path + ": " + e.what());
  }
  if (table.p != p || table.k != k) throw UsageError("counts file is for a different (p, k)");
  try {
    validate_table(table);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid counts file: ") + e.what());
  }
  return table;
}

ProfileRegime pick_regime(const std::string& text, unsigned k) {
  if (text == "fixed-k") return ProfileRegime::fixed_k;
  if (text == "cutoff") return ProfileRegime::cutoff;
  if (text == "auto") return k == 1 ? ProfileRegime::fixed_k : ProfileRegime::cutoff;
  throw UsageError("--regime must be auto, fixed-k or cutoff");
}

/// Limit profile at time t for a chain that still has `missing` = 2k - a
/// coordinates to hit.
double profile_at(ProfileRegime regime, unsigned p, unsigned missing, unsigned t) {
  if (missing == 0) return 0.0;
  const double pd = p;
  if (regime == ProfileRegime::fixed_k) return limit_profile(regime, missing, t / pd);
  return limit_profile(regime, missing, (t - pd * std::log(static_cast<double>(missing))) / pd);
}

std::string radius_or_na(unsigned p, unsigned t) {
  if (p < 11) return "NA";
  return num(envelope_radius_exact(p, t).get_d());
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct Options {
  unsigned p = 0;
  unsigned k = 0;
  std::string format = "csv";
  // lumped
  std::optional<unsigned> start;
  unsigned t_max = 10;
  std::string mode;
  std::string emit = "curve";
  std::string counts_file;
  std::string regime = "auto";
  // simulate
  std::uint64_t chains = 1000;
  std::uint64_t seed = 0;
  std::string start_perm = "identity";
  std::string out_path;
  unsigned threads = 0;
  // oracle
  std::string check;
  // profile
  double c_min = -2;
  double c_max = 3;
  double c_step = 0.5;
};

int cmd_count(const Options& o, std::ostream& out) {
  check_pk(o.p, o.k);
  const auto table = build_table(o.p, o.k);
  if (parse_format(o.format) == Format::json) {
    out << counts_json(table).dump(2) << "\n";
    return kExitOk;
  }
  const auto pi = lumped_stationary(table);
  out << "a,f,pi_bar_num,pi_bar_den,pi_bar\n";
  for (unsigned a = o.k; a <= 2 * o.k; ++a) {
    out << a << "," << to_string(table.count(a)) << "," << to_string(pi[a].get_num()) << ","
        << to_string(pi[a].get_den()) << "," << num(pi[a].get_d()) << "\n";
  }
  return kExitOk;
}

int cmd_lumped(const Options& o, std::ostream& out) {
  check_pk(o.p, o.k);
  const Format format = parse_format(o.format);
  const auto table = o.counts_file.empty() ? build_table(o.p, o.k) : read_counts(o.counts_file, o.p, o.k);
  const auto kernel = build_lumped(o.p, o.k, table);
  const unsigned start = o.start.value_or(o.k);
  if (start < o.k || start > 2 * o.k) throw UsageError("--start must lie in [k:2k]");
  PowerMode mode = default_mode(o.t_max);
  if (o.mode == "exact") {
    mode = PowerMode::exact;
  } else if (o.mode == "float") {
    mode = PowerMode::floating;
  } else if (!o.mode.empty()) {
    throw UsageError("--mode must be exact or float");
  }
  const bool exact = mode == PowerMode::exact;

  if (o.emit == "kernel") {
    if (format == Format::json) {
      json rows = json::array();
      for (const auto& row : kernel.entries) {
        json r = json::array();
        for (const auto& q : row) r.push_back(exact ? json(to_string(q)) : json(q.get_d()));
        rows.push_back(r);
      }
      out << json{{"p", o.p}, {"k", o.k}, {"states", {o.k, 2 * o.k}}, {"entries", rows}}.dump(2) << "\n";
      return kExitOk;
    }
    out << "a,b,probability\n";
    for (unsigned a = o.k; a <= 2 * o.k; ++a) {
      for (unsigned b = o.k; b <= 2 * o.k; ++b) {
        out << a << "," << b << "," << (exact ? to_string(kernel(a, b)) : num(kernel(a, b).get_d())) << "\n";
      }
    }
    return kExitOk;
  }

  if (o.emit == "envelope") {
    if (format == Format::csv) out << "t,envelope_center,envelope_radius,lumped_radius\n";
    json rows = json::array();
    for (unsigned t = 1; t <= o.t_max; ++t) {
      const std::string center = num(envelope_center_exact(o.p, o.k, start, t).get_d());
      const std::string radius = radius_or_na(o.p, t);
      const std::string lumped_radius = o.p < 11 ? "NA" : num(lumped_radius_exact(o.p, t).get_d());
      if (format == Format::csv) {
        out << t << "," << center << "," << radius << "," << lumped_radius << "\n";
      } else {
        rows.push_back({{"t", t}, {"envelope_center", center}, {"envelope_radius", radius}, {"lumped_radius", lumped_radius}});
      }
    }
    if (format == Format::json) out << rows.dump(2) << "\n";
    return kExitOk;
  }

  if (o.emit != "curve") throw UsageError("--emit must be kernel, curve or envelope");
  const ProfileRegime regime = pick_regime(o.regime, o.k);
  ScaledVector pi_scaled;
  pi_scaled.num = table.f;
  pi_scaled.den = table.Z;
  const auto pi_float = to_float(lumped_stationary(table));
  std::optional<ExactEvolution> exact_chain;
  std::optional<FloatEvolution> float_chain;
  if (exact) {
    exact_chain.emplace(kernel, start);
  } else {
    float_chain.emplace(kernel, start);
  }
  if (format == Format::csv) out << "t,tv,envelope_center,envelope_radius,limit_profile\n";
  json rows = json::array();
  for (unsigned t = 0; t <= o.t_max; ++t) {
    std::string tv;
    if (exact) {
      if (t > 0) exact_chain->step();
      tv = to_string(tv_distance(exact_chain->current(), pi_scaled).reduced());
    } else {
      if (t > 0) float_chain->step();
      tv = num(tv_distance(float_chain->current(), pi_float));
    }
    const std::string center = num(envelope_center_exact(o.p, o.k, start, t).get_d());
    const std::string radius = radius_or_na(o.p, t);
    const std::string profile = num(profile_at(regime, o.p, 2 * o.k - start, t));
    if (format == Format::csv) {
      out << t << "," << tv << "," << center << "," << radius << "," << profile << "\n";
    } else {
      rows.push_back({{"t", t}, {"tv", tv}, {"envelope_center", center}, {"envelope_radius", radius},
                      {"limit_profile", profile}});
    }
  }
  if (format == Format::json) out << rows.dump(2) << "\n";
  return kExitOk;
}

Permutation parse_start(const std::string& text, std::size_t n) {
  if (text == "identity") return identity(n);
  const std::string prefix = "cycles:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      return parse_cycles(text.substr(prefix.size()), n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad --start: ") + e.what());
    }
  }
  throw UsageError("--start must be identity or cycles:\"(...)\"");
}

int cmd_simulate(const Options& o, std::ostream& out) {
  check_pk(o.p, o.k);
  const Format format = parse_format(o.format);
  if (o.chains < 1) throw UsageError("--chains must be positive");
  if (o.t_max < 1) throw UsageError("--tmax must be positive");
  SimulationConfig cfg;
  cfg.p = o.p;
  cfg.k = o.k;
  cfg.chains = o.chains;
  cfg.t_max = o.t_max;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.start = parse_start(o.start_perm, static_cast<std::size_t>(o.p) * o.k);
  const unsigned a0 = coset_exponent_T(SylowContext(o.p, o.k), *cfg.start);
  const auto curve = run_simulation(cfg);

  OutputTarget target(o.out_path, out);
  std::ostream& os = *target;
  if (format == Format::json) {
    json rows = json::array();
    for (unsigned t = 1; t <= curve.t_max; ++t) {
      rows.push_back({{"t", t},
                      {"counts", curve.counts[t - 1]},
                      {"mu_hat", curve.mu_hat[t - 1]},
                      {"tv_hat", curve.tv_hat[t - 1]},
                      {"std_error", curve.std_error[t - 1]},
                      {"envelope_center", envelope_center_exact(o.p, o.k, a0, t).get_d()},
                      {"envelope_radius", radius_or_na(o.p, t)}});
    }
    os << json{{"p", o.p}, {"k", o.k}, {"chains", o.chains}, {"seed", o.seed}, {"start_exponent", a0}, {"curve", rows}}
              .dump(2)
       << "\n";
    return kExitOk;
  }
  os << "t";
  for (unsigned a = o.k; a <= 2 * o.k; ++a) os << ",mu_hat_" << a;
  os << ",tv_hat,envelope_center,envelope_radius\n";
  for (unsigned t = 1; t <= curve.t_max; ++t) {
    os << t;
    for (double m : curve.mu_hat[t - 1]) os << "," << num(m);
    os << "," << num(curve.tv_hat[t - 1]) << "," << num(envelope_center_exact(o.p, o.k, a0, t).get_d()) << ","
       << radius_or_na(o.p, t) << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  check_pk(o.p, o.k);
  const bool needs_k1 = o.check == "k1spectrum" || o.check == "k1tv";
  if (needs_k1 && o.k != 1) throw UsageError("--check " + o.check + " needs k = 1");
  json doc = {{"p", o.p}, {"k", o.k}, {"check", o.check}};
  std::optional<VerificationReport> report;
  try {
    if (o.check == "census") {
      const auto census = census_double_cosets(o.p, o.k);
      const auto formula = build_table(o.p, o.k);
      report.emplace("census p=" + std::to_string(o.p) + " k=" + std::to_string(o.k));
      for (unsigned a = o.k; a <= 2 * o.k; ++a) {
        report->record("census-vs-count-f", census.count(a) == formula.count(a), [&] {
          return "a=" + std::to_string(a) + ": census " + to_string(census.count(a)) + " vs formula " +
                 to_string(formula.count(a));
        });
      }
      doc["census"] = counts_json(census);
    } else {
      const auto kernel = build_full_kernel(o.p, o.k);
      if (o.check == "kernel") {
        report.emplace(verify_full_kernel(kernel));
        if (o.k == 1) report->merge(verify_k1_kernel(kernel));
      } else if (o.check == "lumping") {
        report.emplace(verify_lumping(kernel));
      } else if (o.check == "conditional") {
        report.emplace(verify_conditional_uniformity(kernel, o.t_max));
      } else if (o.check == "sandwich") {
        report.emplace(verify_tv_sandwich(kernel, o.t_max));
      } else if (o.check == "k1spectrum") {
        report.emplace(verify_k1_spectrum(kernel, o.t_max));
      } else if (o.check == "k1tv") {
        report.emplace(verify_k1_tv(kernel, o.t_max));
      } else {
        throw UsageError("--check must be one of kernel, census, lumping, conditional, sandwich, k1spectrum, k1tv");
      }
    }
  } catch (const InstanceTooLarge& e) {
    throw UsageError(e.what());
  }
  doc["report"] = report_json(*report);
  out << doc.dump(2) << "\n";
  return report->passed() ? kExitOk : kExitCheckFailed;
}

int cmd_profile(const Options& o, std::ostream& out) {
  check_pk(o.p, o.k);
  const Format format = parse_format(o.format);
  if (!(o.c_step > 0) || o.c_max < o.c_min) throw UsageError("need --cstep > 0 and --cmax >= --cmin");
  const ProfileRegime regime = pick_regime(o.regime, o.k);
  const double pd = o.p;
  const double shift = regime == ProfileRegime::cutoff ? pd * std::log(static_cast<double>(o.k)) : 0.0;
  const auto table = build_table(o.p, o.k);
  const auto kernel = build_lumped(o.p, o.k, table);
  const auto pi = to_float(lumped_stationary(table));
  FloatEvolution chain(kernel, o.k);

  if (format == Format::csv) out << "c,t,limit_profile,envelope_center,lumped_tv\n";
  json rows = json::array();
  const auto steps = static_cast<long>(std::floor((o.c_max - o.c_min) / o.c_step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double c = o.c_min + static_cast<double>(i) * o.c_step;
    const double x = shift + pd * c;
    if (x < 0 || (regime == ProfileRegime::fixed_k && c < 0)) continue;
    const auto t = static_cast<unsigned>(std::floor(x + 1e-9));
    while (chain.time() < t) chain.step();
    const double profile = limit_profile(regime, o.k, c);
    const double center = envelope_center_exact(o.p, o.k, o.k, t).get_d();
    const double tv = tv_distance(chain.current(), pi);
    if (format == Format::csv) {
      out << num(c) << "," << t << "," << num(profile) << "," << num(center) << "," << num(tv) << "\n";
    } else {
      rows.push_back({{"c", c}, {"t", t}, {"limit_profile", profile}, {"envelope_center", center}, {"lumped_tv", tv}});
    }
  }
  if (format == Format::json) out << rows.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sylow-Burnside process on S_pk: exact counts, lumped chain, oracles and simulation", "sbp"};
  app.require_subcommand(1);

  auto add_pk = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "prime p")->required();
    sub->add_option("--k", o.k, "number of blocks, 1 <= k < p")->required();
    sub->add_option("--format", o.format, "csv or json")->capture_default_str();
  };

  auto* count = app.add_subcommand("count", "double-coset counts f(a;k)");
  add_pk(count);

  auto* lumped = app.add_subcommand("lumped", "lumped chain on [k:2k]");
  add_pk(lumped);
  lumped->add_option("--start", o.start, "start state a (default k)");
  lumped->add_option("--tmax", o.t_max, "last time step")->capture_default_str();
  lumped->add_option("--mode", o.mode, "exact or float (default: exact for tmax <= 64)");
  lumped->add_option("--emit", o.emit, "kernel, curve or envelope")->capture_default_str();
  lumped->add_option("--counts-file", o.counts_file, "JSON from `count --format json`");
  lumped->add_option("--regime", o.regime, "limit profile: auto, fixed-k or cutoff")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo lumped curves");
  add_pk(simulate);
  simulate->add_option("--chains", o.chains, "independent chains")->capture_default_str();
  simulate->add_option("--tmax", o.t_max, "last time step")->capture_default_str();
  simulate->add_option("--seed", o.seed, "master seed")->capture_default_str();
  simulate->add_option("--start", o.start_perm, "identity or cycles:\"(1 2)(3 4)\"")->capture_default_str();
  simulate->add_option("--out", o.out_path, "output file (default stdout)");
  simulate->add_option("--threads", o.threads, "worker threads (0: SBP_THREADS or hardware)")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "brute-force checks on small S_pk");
  add_pk(oracle);
  oracle->add_option("--check", o.check, "kernel, census, lumping, conditional, sandwich, k1spectrum or k1tv")
      ->required();
  oracle->add_option("--tmax", o.t_max, "last time step")->capture_default_str();

  auto* profile = app.add_subcommand("profile", "limit profile vs envelope center vs lumped tv");
  add_pk(profile);
  profile->add_option("--cmin", o.c_min)->capture_default_str();
  profile->add_option("--cmax", o.c_max)->capture_default_str();
  profile->add_option("--cstep", o.c_step)->capture_default_str();
  profile->add_option("--regime", o.regime, "auto, fixed-k or cutoff")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (count->parsed()) return cmd_count(o, out);
    if (lumped->parsed()) return cmd_lumped(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    if (profile->parsed()) return cmd_profile(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace sbp::cli
