#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "bandrec/analysis.hpp"
#include "bandrec/constants.hpp"
#include "bandrec/errors.hpp"
#include "bandrec/io.hpp"
#include "bandrec/reconstruct.hpp"
#include "bandrec/rng.hpp"
#include "bandrec/sampling.hpp"

namespace bandrec::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  int k = 1;
  std::string sigma_text = "pi";
  std::optional<double> delta;
  std::optional<double> period;
  std::size_t grid = 0;
  std::optional<int> iters;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  double jitter = 0.5;
  std::string format = "json";
  std::string output;
  std::string input;
  int k_max = 10;
  std::string k_list;
  bool upper = false;
  std::string bounds = "empirical";
  std::string only;
  std::string cr_source = "eigensolver";
  int r_max = 12;
};

std::string fixed4(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json meta(const Config& c, json config) {
  config["command"] = c.command;
  return {{"seed", c.seed}, {"version", kVersion}, {"config", std::move(config)}};
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw IoError("cannot open output file " + c.output);
  file << text;
  if (!file) throw IoError("failed writing output file " + c.output);
}

json load_json(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

void require_format(const Config& c) {
  if (c.format != "json" && c.format != "csv") throw PreconditionError("--format must be csv or json");
}

int run_constants(const Config& c, std::ostream& out, std::ostream& err) {
  require_format(c);
  if (c.r_max < 1 || c.r_max > 20) throw PreconditionError("--r-max must be in 1..20");
  json rows = json::array();
  std::ostringstream csv;
  csv << "r,c_r,uncertainty,source,printed,characteristic,lower,upper\n" << std::setprecision(12);
  for (int r = 1; r <= c.r_max; ++r) {
    const ConstantValue v = wirtinger_constant(r, CrSource::eigensolver);
    const CrBounds b = cr_bounds(r);
    json row{{"r", r},
             {"c_r", v.value},
             {"uncertainty", v.uncertainty},
             {"source", to_string(v.source)},
             {"lower", b.lower},
             {"upper", b.upper},
             {"asymptotic", b.asymptotic},
             {"inside_bounds", b.lower <= v.value && v.value <= b.upper},
             {"C_k", c_of_k(r).str()}};
    std::string printed;
    std::string characteristic;
    if (r <= 3) {
      row["printed"] = wirtinger_constant(r, CrSource::printed).value;
      std::ostringstream s;
      s << std::setprecision(12) << row["printed"].get<double>();
      printed = s.str();
    }
    if (r <= 2) {
      row["characteristic"] = wirtinger_constant(r, CrSource::characteristic_equation).value;
      std::ostringstream s;
      s << std::setprecision(12) << row["characteristic"].get<double>();
      characteristic = s.str();
    }
    csv << r << ',' << v.value << ',' << v.uncertainty << ',' << to_string(v.source) << ',' << printed << ','
        << characteristic << ',' << b.lower << ',' << b.upper << '\n';
    rows.push_back(std::move(row));
  }
  json doc{{"meta", meta(c, {{"r_max", c.r_max}, {"format", c.format}})},
           {"constants", rows},
           {"tau", {{"printed", tau(TauSource::printed)}, {"root_find", tau(TauSource::root_find)}}},
           {"clamped_beam_root", clamped_beam_root()}};
  if (c.format == "csv") {
    err << "# meta " << doc["meta"].dump() << '\n';
    emit(c, csv.str(), out);
  } else {
    emit(c, doc.dump(2) + "\n", out);
  }
  return ok;
}

int run_gap_table(const Config& c, std::ostream& out, std::ostream& err) {
  require_format(c);
  const double sigma = parse_sigma(c.sigma_text);
  std::vector<int> ks;
  if (!c.k_list.empty()) {
    ks = parse_k_list(c.k_list);
  } else {
    if (c.k_max < 1) throw PreconditionError("--k-max must be >= 1");
    for (int k = 1; k <= c.k_max; ++k) ks.push_back(k);
  }
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,L_taylor,L_hermite,cr_source\n";
  for (int k : ks) {
    const CrSource source = c.upper ? CrSource::upper_bound : table_cr_source(k);
    const GapThresholds g = gap_thresholds(k, sigma, source);
    rows.push_back({{"k", k}, {"L_taylor", g.L_taylor}, {"L_hermite", g.L_hermite}, {"cr_source", to_string(source)}});
    csv << k << ',' << fixed4(g.L_taylor) << ',' << fixed4(g.L_hermite) << ',' << to_string(source) << '\n';
  }
  json config{{"sigma", sigma}, {"k", ks}, {"upper", c.upper}, {"format", c.format}};
  if (c.format == "csv") {
    err << "# meta " << meta(c, config).dump() << '\n';
    emit(c, csv.str(), out);
  } else {
    emit(c, json{{"meta", meta(c, config)}, {"rows", rows}}.dump(2) + "\n", out);
  }
  return ok;
}

int run_iteration(const Config& c, std::ostream& out, std::ostream& err) {
  require_format(c);
  const bool frame = c.command == "frame";
  const double sigma = parse_sigma(c.sigma_text);
  const CrSource cr = parse_cr_source(c.cr_source);
  if (c.tol <= 0) throw PreconditionError("--tol must be positive");
  if (c.iters && *c.iters < 1) throw PreconditionError("--iters must be >= 1");
  if (c.jitter < 0 || c.jitter >= 1) throw PreconditionError("--jitter must be in [0, 1)");
  if (frame && c.bounds != "empirical" && c.bounds != "analytic") {
    throw PreconditionError("--bounds must be empirical or analytic");
  }
  const bool analytic = frame && c.bounds == "analytic";

  json config{{"sigma", sigma}, {"tol", c.tol}, {"cr_source", c.cr_source}, {"format", c.format}};
  std::optional<SampleSet> samples;
  std::optional<PeriodicBandSignal> truth;
  if (!c.input.empty()) {
    samples = sample_set_from_json(load_json(c.input));
    config["input"] = c.input;
  } else {
    if (c.k < 1) throw PreconditionError("--k must be >= 1");
    const double period = c.period.value_or(default_period(sigma));
    if (!(period > 0)) throw PreconditionError("--period must be positive");
    const GapThresholds g = gap_thresholds(c.k, sigma, cr);
    const double delta = c.delta.value_or(0.9 * g.L_hermite);
    if (!(delta > 0)) throw PreconditionError("--delta must be positive");
    if ((!frame || analytic) && !(delta < g.L_hermite)) throw GapConditionError(delta, g.L_hermite);
    const Rng root(c.seed);
    truth = random_signal(root.split(0).next_u64(), period, sigma, false);
    samples = take_samples(*truth, make_partition(period, delta, c.jitter, root.split(1).next_u64()), c.k);
    config["k"] = c.k;
    config["delta_target"] = delta;
    config["period"] = period;
    config["jitter"] = c.jitter;
  }

  Reconstruction result = [&] {
    if (frame) {
      FrameIterationOptions o;
      o.bounds = analytic ? BoundSource::analytic : BoundSource::empirical;
      o.n_max = c.iters.value_or(o.n_max);
      o.tol = c.tol;
      o.cr_source = cr;
      o.truth = truth;
      return iterate_frame(*samples, sigma, o);
    }
    HermiteIterationOptions o;
    o.n_max = c.iters.value_or(o.n_max);
    o.tol = c.tol;
    o.grid_size = c.grid;
    o.cr_source = cr;
    o.truth = truth;
    return iterate_hermite(*samples, sigma, o);
  }();
  config["iters"] = c.iters.value_or(frame ? FrameIterationOptions{}.n_max : HermiteIterationOptions{}.n_max);
  if (frame) config["bounds"] = c.bounds;
  if (!frame) config["grid"] = c.grid;

  const ReconstructionReport& r = result.report;
  if (c.format == "csv") {
    err << "# meta " << meta(c, config).dump() << '\n';
    std::ostringstream csv;
    csv << std::setprecision(17) << "n,error,bound\n";
    for (std::size_t n = 0; n < r.errors.size(); ++n) csv << n << ',' << r.errors[n] << ',' << r.bound_curve[n] << '\n';
    emit(c, csv.str(), out);
  } else {
    json doc{{"meta", meta(c, config)}, {"report", to_json(r)}};
    if (truth) doc["final_error"] = l2_norm(*truth - result.signal) / l2_norm(*truth);
    emit(c, doc.dump(2) + "\n", out);
  }
  if (!r.converged) {
    err << "iteration did not reach tol " << c.tol << " in " << r.iterations << " steps\n";
    return verification_failed;
  }
  return ok;
}

int run_verify(const Config& c, std::ostream& out, std::ostream& err) {
  require_format(c);
  CorpusOptions options;
  options.seed = c.seed;
  options.only = c.only;
  const std::vector<VerificationRecord> records = verification_corpus(options);
  json arr = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "check,lhs,rhs,holds,inputs\n";
  std::size_t failed = 0;
  double min_gap_ratio = std::numeric_limits<double>::infinity();
  for (const VerificationRecord& rec : records) {
    arr.push_back(to_json(rec));
    csv << rec.check << ',' << rec.lhs << ',' << rec.rhs << ',' << (rec.holds ? "true" : "false") << ','
        << csv_quote(rec.inputs.dump()) << '\n';
    if (rec.check == "double-zero" && !rec.inputs.value("vacuous", false)) {
      min_gap_ratio = std::min(min_gap_ratio, rec.lhs / rec.rhs);
    }
    if (!rec.holds) {
      ++failed;
      err << "FAILED " << rec.check << ' ' << rec.inputs.dump() << " lhs=" << rec.lhs << " rhs=" << rec.rhs << '\n';
    }
  }
  json summary{{"total", records.size()}, {"failed", failed}};
  if (std::isfinite(min_gap_ratio)) summary["min_double_zero_gap_ratio"] = min_gap_ratio;
  json config{{"only", c.only.empty() ? "all" : c.only}, {"format", c.format}};
  if (c.format == "csv") {
    err << "# meta " << meta(c, config).dump() << '\n';
    emit(c, csv.str(), out);
  } else {
    emit(c, json{{"meta", meta(c, config)}, {"records", arr}, {"summary", summary}}.dump(2) + "\n", out);
  }
  return failed == 0 ? ok : verification_failed;
}

int run_zeros(const Config& c, std::ostream& out, std::ostream& err) {
  require_format(c);
  json config{{"format", c.format}};
  std::optional<PeriodicBandSignal> f;
  if (!c.input.empty()) {
    f = signal_from_json(load_json(c.input));
    config["input"] = c.input;
  } else {
    const double sigma = parse_sigma(c.sigma_text);
    const double period = c.period.value_or(default_period(sigma));
    const PeriodicBandSignal g = random_signal(Rng(c.seed).split(0).next_u64(), period, sigma, true);
    f = multiply(g, g);
    config["sigma_g"] = sigma;
    config["period"] = period;
  }
  const DoubleZeroReport rep = double_zero_gap(*f);
  if (c.format == "csv") {
    err << "# meta " << meta(c, config).dump() << '\n';
    std::ostringstream csv;
    csv << std::setprecision(17) << "zero\n";
    for (double z : rep.zeros) csv << z << '\n';
    emit(c, csv.str(), out);
  } else {
    json doc{{"meta", meta(c, config)},
             {"zeros", rep.zeros},
             {"max_gap", rep.max_gap},
             {"threshold", rep.threshold},
             {"consistent", rep.consistent},
             {"vacuous", rep.vacuous}};
    emit(c, doc.dump(2) + "\n", out);
  }
  return rep.consistent ? ok : verification_failed;
}

}  // namespace

double parse_sigma(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  double value = 0.0;
  auto to_double = [&](const std::string& t) {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad number");
    return v;
  };
  try {
    if (s == "pi") {
      value = std::numbers::pi;
    } else if (s.size() > 2 && s.ends_with("pi")) {
      std::string factor = s.substr(0, s.size() - 2);
      if (factor.ends_with("*")) factor.pop_back();
      value = to_double(factor) * std::numbers::pi;
    } else {
      value = to_double(s);
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse sigma '" + text + "' (use pi, N*pi or a decimal)");
  }
  if (!(value > 0) || !std::isfinite(value)) throw std::invalid_argument("sigma must be positive: '" + text + "'");
  return value;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  std::stringstream all(text);
  std::string part;
  auto to_int = [&](const std::string& t) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size() || v < 1) throw std::invalid_argument("bad k list '" + text + "'");
    return v;
  };
  while (std::getline(all, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      ks.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(part.substr(0, dots));
    const int hi = to_int(part.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("bad k range '" + part + "'");
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
  }
  if (ks.empty()) throw std::invalid_argument("empty k list");
  return ks;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Reconstruction of band-limited signals from derivative samples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "csv or json");
    sub->add_option("--output", c.output, "write to this file instead of stdout");
  };
  auto signal_opts = [&](CLI::App* sub) {
    sub->add_option("--sigma", c.sigma_text, "bandlimit: pi, N*pi or a decimal");
    sub->add_option("--period", c.period, "torus period (default 20 * 2 pi / sigma)");
    sub->add_option("--seed", c.seed, "random seed");
  };

  CLI::App* constants = app.add_subcommand("constants", "Wirtinger-Sobolev constants and their bounds");
  common(constants);
  constants->add_option("--r-max", c.r_max, "largest order");

  CLI::App* table = app.add_subcommand("gap-table", "maximum gap thresholds L_taylor and L_hermite");
  common(table);
  table->add_option("--k-max", c.k_max, "rows k = 1..k_max");
  table->add_option("--k", c.k_list, "rows, e.g. 40..42 or 1..10,20,30");
  table->add_option("--sigma", c.sigma_text, "bandlimit: pi, N*pi or a decimal");
  table->add_flag("--upper", c.upper, "use the upper bound on c_k for every row");

  for (const char* name : {"reconstruct", "frame"}) {
    CLI::App* sub = app.add_subcommand(name, std::string(name) == "frame" ? "frame algorithm" : "Hermite iteration");
    common(sub);
    signal_opts(sub);
    sub->add_option("--k", c.k, "number of derivative samples per point");
    sub->add_option("--delta", c.delta, "target maximum gap (default 0.9 L)");
    sub->add_option("--iters", c.iters, "maximum number of iterations");
    sub->add_option("--tol", c.tol, "relative update tolerance");
    sub->add_option("--jitter", c.jitter, "partition jitter in [0, 1)");
    sub->add_option("--input", c.input, "sample set JSON");
    sub->add_option("--cr-source", c.cr_source, "printed, characteristic_equation, eigensolver, lower_bound, upper_bound");
    if (std::string(name) == "frame") {
      sub->add_option("--bounds", c.bounds, "empirical or analytic");
    } else {
      sub->add_option("--grid", c.grid, "dense grid size for the projection");
    }
  }

  CLI::App* verify = app.add_subcommand("verify", "inequality, zero-separation and uniqueness corpus");
  common(verify);
  verify->add_option("--seed", c.seed, "corpus seed (default 2024)");
  verify->add_option("--only", c.only, "ws, ws-2r, aah-equality, double-zero or uniqueness");

  CLI::App* zeros = app.add_subcommand("zeros", "double zeros of a squared random signal");
  common(zeros);
  signal_opts(zeros);
  zeros->add_option("--input", c.input, "signal JSON");

  std::vector<std::string> argv_store{"bandrec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : precondition;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "verify" && verify->count("--seed") == 0) c.seed = CorpusOptions{}.seed;

  try {
    if (c.command == "constants") return run_constants(c, out, err);
    if (c.command == "gap-table") return run_gap_table(c, out, err);
    if (c.command == "reconstruct" || c.command == "frame") return run_iteration(c, out, err);
    if (c.command == "verify") return run_verify(c, out, err);
    return run_zeros(c, out, err);
  } catch (const GapConditionError& e) {
    err << "error: " << e.what() << "\nthreshold L = " << e.threshold() << '\n';
    return precondition;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\nupdate norms:";
    for (double v : e.update_norms()) err << ' ' << v;
    err << '\n';
    return divergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io_failure;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return verification_failed;
  } catch (const std::exception& e) {
    // Domain, precondition and generation errors, and malformed flag values.
    err << "error: " << e.what() << '\n';
    return precondition;
  }
}

}  // namespace bandrec::cli
