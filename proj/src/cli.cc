// Copyright 2026 The sbmrd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbmrd/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbmrd/errors.h"
#include "sbmrd/io.h"
#include "sbmrd/oracle.h"
#include "sbmrd/rdf.h"
#include "sbmrd/simulate.h"
#include "sbmrd/waterfill.h"

namespace sbmrd {
namespace {

using nlohmann::json;

// Raised for anything the user can fix by editing flags or the config.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unattainable request that is not a modelling error (verify --tol 0).
class ComputationError : public Error {
 public:
  using Error::Error;
};

struct Flags {
  std::string config_path;
  std::string out_path;
  std::vector<double> distortions;
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<unsigned> threads;
  std::string graph_out;
  std::string labels_out;
  std::string recon_out;
};

// Model plus run options, flags taking precedence over the file.
struct RunConfig {
  ModelParams model;
  std::vector<double> distortions;
  std::optional<std::vector<double>> grid;
  std::optional<std::size_t> points;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  unsigned threads = 1;
};

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "model", "n",      "p",      "W",   "edge_probs", "D",
      "grid",  "points", "trials", "seed", "tol",       "threads"};
  return keys;
}

json LoadJson(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config \"" + path + "\"");
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

std::uint64_t NonNegativeInt(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("\"") + key +
                      "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> Numbers(const json& v, const char* key) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
    return out;
  }
  if (!v.is_array()) {
    throw ConfigError(std::string("\"") + key +
                      "\" must be a number or an array of numbers");
  }
  for (const json& x : v) {
    if (!x.is_number()) {
      throw ConfigError(std::string("\"") + key + "\" has a non-number");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

RunConfig Resolve(const Flags& flags, std::istream& in) {
  if (flags.config_path.empty()) throw ConfigError("--config is required");
  const json config = LoadJson(flags.config_path, in);
  if (!config.is_object()) {
    throw ConfigError("configuration must be a JSON object");
  }
  for (const auto& item : config.items()) {
    if (!KnownKeys().count(item.key())) {
      throw ConfigError("unknown config key \"" + item.key() + "\"");
    }
  }
  RunConfig rc;
  try {
    rc.model = ParseModel(config);
  } catch (const InvalidParams& e) {
    throw ConfigError(e.what());
  } catch (const DimensionError& e) {
    throw ConfigError(e.what());
  }
  if (auto it = config.find("D"); it != config.end()) {
    rc.distortions = Numbers(*it, "D");
  }
  if (auto it = config.find("grid"); it != config.end()) {
    if (it->is_object()) {
      auto pts = it->find("points");
      if (pts == it->end() || it->size() != 1) {
        throw ConfigError("\"grid\" object must be {\"points\": N}");
      }
      rc.points = NonNegativeInt(*pts, "grid.points");
    } else {
      rc.grid = Numbers(*it, "grid");
    }
  }
  if (auto it = config.find("points"); it != config.end()) {
    rc.points = NonNegativeInt(*it, "points");
  }
  if (auto it = config.find("trials"); it != config.end()) {
    rc.trials = NonNegativeInt(*it, "trials");
  }
  if (auto it = config.find("seed"); it != config.end()) {
    rc.seed = NonNegativeInt(*it, "seed");
  }
  if (auto it = config.find("tol"); it != config.end()) {
    if (!it->is_number()) throw ConfigError("\"tol\" must be a number");
    rc.tol = it->get<double>();
  }
  if (auto it = config.find("threads"); it != config.end()) {
    rc.threads = static_cast<unsigned>(NonNegativeInt(*it, "threads"));
  }

  if (!flags.distortions.empty()) rc.distortions = flags.distortions;
  if (flags.points) {
    rc.points = flags.points;
    rc.grid.reset();
  }
  if (flags.trials) rc.trials = *flags.trials;
  if (flags.seed) rc.seed = *flags.seed;
  if (flags.tol) rc.tol = flags.tol;
  if (flags.threads) rc.threads = *flags.threads;
  if (rc.threads == 0) throw ConfigError("threads must be positive");
  for (double d : rc.distortions) {
    if (!std::isfinite(d) || d < 0.0) {
      throw ConfigError("distortion must be finite and non-negative, got " +
                        FormatNumber(d));
    }
  }
  return rc;
}

double SingleDistortion(const RunConfig& rc) {
  if (rc.distortions.size() != 1) {
    throw ConfigError("exactly one distortion D is required");
  }
  return rc.distortions.front();
}

// Writes to --out if given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot write \"" + path + "\"");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

json KktJson(const KktCertificate& kkt) {
  json j;
  j["nu"] = std::isfinite(kkt.nu) ? json(kkt.nu) : json(nullptr);
  j["max_multiplier_violation"] = kkt.max_multiplier_violation;
  j["max_slackness_residual"] = kkt.max_slackness_residual;
  j["constraint_residual"] = kkt.constraint_residual;
  j["max_cap_excess"] = kkt.max_cap_excess;
  j["holds_1e-10"] = kkt.Holds(1e-10);
  return j;
}

int CmdEntropy(const RunConfig& rc, std::ostream& out) {
  json j;
  j["model"] = ModelName(rc.model);
  if (const auto* sbm = std::get_if<SbmParams>(&rc.model)) {
    const EntropyInterval e = SbmEntropyInterval(*sbm);
    j["conditional_entropy_bits"] = e.lower;
    j["entropy_interval_bits"] = {e.lower, e.upper};
  } else if (const auto* er = std::get_if<ErParams>(&rc.model)) {
    j["entropy_bits"] = ErEntropy(*er);
  } else {
    j["entropy_bits"] = InhomogeneousErEntropy(std::get<InhomErParams>(rc.model));
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int CmdCurve(const RunConfig& rc, std::ostream& out) {
  std::vector<double> grid;
  if (rc.points) {
    grid = UniformGrid(rc.model, *rc.points);
  } else if (rc.grid) {
    grid = *rc.grid;
  } else {
    grid = UniformGrid(rc.model, 200);
  }
  std::vector<RdCurvePoint> curve;
  try {
    curve = RdfCurve(rc.model, grid, rc.threads);
  } catch (const InvalidParams& e) {
    throw ConfigError(e.what());
  }
  out << "D,D_per_edge,rate_bits,mu\n";
  for (const RdCurvePoint& pt : curve) {
    out << FormatNumber(pt.distortion_abs) << ','
        << FormatNumber(pt.distortion_per_edge) << ','
        << FormatNumber(pt.rate_bits) << ',' << FormatNumber(pt.water_level)
        << '\n';
  }
  return kExitOk;
}

int CmdWaterfill(const RunConfig& rc, std::ostream& out) {
  const double d = SingleDistortion(rc);
  json j;
  j["model"] = ModelName(rc.model);
  j["D"] = d;
  j["D_per_edge"] = d / ModelPairCount(rc.model);
  if (const auto* sbm = std::get_if<SbmParams>(&rc.model)) {
    const SbmAllocation alloc = SolveSbmWaterfill(*sbm, d);
    j["mu"] = alloc.mu;
    j["dstar"] = alloc.dstar.Rows();
    j["rate_bits"] = SbmConditionalRdf(*sbm, d).rate_bits;
    j["kkt"] = KktJson(CertifySbmAllocation(*sbm, alloc, d));
  } else {
    const bool homogeneous = std::holds_alternative<ErParams>(rc.model);
    const InhomErParams inhom =
        homogeneous ? ToInhomogeneous(std::get<ErParams>(rc.model))
                    : std::get<InhomErParams>(rc.model);
    const ErAllocation alloc = SolveErWaterfill(inhom, d);
    j["lambda"] = alloc.lambda;
    if (homogeneous) {
      j["d"] = alloc.d.empty() ? 0.0 : alloc.d.front();
    } else {
      j["d"] = alloc.d;
    }
    j["rate_bits"] = InhomogeneousErRdf(inhom, d).rate_bits;
    j["kkt"] = KktJson(CertifyErAllocation(inhom, alloc, d));
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int CmdVerify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const double tol = rc.tol.value_or(1e-4);
  if (!(tol >= 0.0) || !std::isfinite(tol)) {
    throw ConfigError("tolerance must be finite and non-negative");
  }
  // Guards before any tolerance check so oversize inputs are always usage
  // errors.
  std::vector<double> edge_probs;
  const SbmParams* sbm = std::get_if<SbmParams>(&rc.model);
  if (sbm) {
    if (sbm->n > 4 || sbm->k() > 2) {
      throw ConfigError(
          "verify is limited to n <= 4 and k <= 2 for the block model");
    }
  } else {
    const InhomErParams inhom =
        std::holds_alternative<ErParams>(rc.model)
            ? ToInhomogeneous(std::get<ErParams>(rc.model))
            : std::get<InhomErParams>(rc.model);
    if (inhom.n > 4) throw ConfigError("verify is limited to n <= 4");
    edge_probs = inhom.edge_probs;
  }
  if (tol == 0.0) {
    throw ComputationError("tolerance 0 is unattainable for an iterative "
                           "oracle; use a positive tolerance");
  }

  std::vector<double> ds = rc.distortions;
  if (ds.empty()) {
    const double boundary = ZeroRateBoundary(rc.model);
    for (int j = 1; j <= 5; ++j) ds.push_back(boundary * j / 6.0);
  }

  json results = json::array();
  double worst = 0.0;
  for (double d : ds) {
    const RdCurvePoint closed = EvaluateRdf(rc.model, d);
    OracleResult oracle;
    if (sbm) {
      oracle = ConditionalSbmOracle(*sbm, d).aggregate;
    } else {
      oracle = JointGraphRdfOracle(edge_probs, d);
    }
    const double diff = std::abs(oracle.rate_bits - closed.rate_bits);
    worst = std::max(worst, diff);
    json row;
    row["D"] = d;
    row["closed_form_bits"] = closed.rate_bits;
    row["oracle_bits"] = oracle.rate_bits;
    row["abs_diff"] = diff;
    row["oracle_distortion"] = oracle.achieved_distortion;
    row["iterations"] = oracle.iterations;
    results.push_back(row);
  }
  const bool pass = worst <= tol;
  json j;
  j["model"] = ModelName(rc.model);
  j["tolerance"] = tol;
  j["results"] = results;
  j["max_abs_diff"] = worst;
  j["pass"] = pass;
  out << j.dump(2) << '\n';
  if (!pass) {
    err << "verify: max |closed form - oracle| = " << FormatNumber(worst)
        << " exceeds tolerance " << FormatNumber(tol) << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

void DumpText(const std::string& path,
              const std::function<void(std::ostream&)>& write) {
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write \"" + path + "\"");
  write(file);
}

int CmdSimulate(const RunConfig& rc, const Flags& flags, std::ostream& out) {
  const double d = SingleDistortion(rc);
  if (rc.trials == 0) throw ConfigError("trials must be positive");
  const RngSpec rng{rc.seed, 0};
  SimReport report;
  json j;
  j["model"] = ModelName(rc.model);
  if (std::holds_alternative<InhomErParams>(rc.model)) {
    const auto& inhom = std::get<InhomErParams>(rc.model);
    report = MonteCarloDistortion(inhom, d, rc.trials, rng, rc.threads);
    const RngSpec first = rng.ForTrial(0);
    if (!flags.graph_out.empty() || !flags.recon_out.empty()) {
      const Graph g = SampleGraph(inhom, first);
      DumpText(flags.graph_out, [&](std::ostream& o) { WriteGraph(o, g); });
      const Graph y =
          ApplyTestChannel(g, inhom, SolveErWaterfill(inhom, d), first);
      DumpText(flags.recon_out, [&](std::ostream& o) { WriteGraph(o, y); });
    }
  } else {
    const SbmParams sbm = std::holds_alternative<SbmParams>(rc.model)
                              ? std::get<SbmParams>(rc.model)
                              : ToSbm(std::get<ErParams>(rc.model));
    report = MonteCarloDistortion(sbm, d, rc.trials, rng, rc.threads);
    const RngSpec first = rng.ForTrial(0);
    if (!flags.graph_out.empty() || !flags.labels_out.empty() ||
        !flags.recon_out.empty()) {
      const LabelVector labels = SampleLabels(sbm, first);
      const Graph g = SampleGraph(labels, sbm.w, first);
      DumpText(flags.labels_out,
               [&](std::ostream& o) { WriteLabels(o, labels); });
      DumpText(flags.graph_out, [&](std::ostream& o) { WriteGraph(o, g); });
      const Graph y = ApplyTestChannel(g, labels, SolveSbmWaterfill(sbm, d),
                                       sbm.w, first);
      DumpText(flags.recon_out, [&](std::ostream& o) { WriteGraph(o, y); });
    }
    const std::size_t k = sbm.k();
    json pairs = json::array();
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t m = l; m < k; ++m) {
        const PairTally& t = report.pair_tallies[l * k + m];
        json row;
        row["l"] = l + 1;
        row["m"] = m + 1;
        row["pairs"] = t.edges;
        row["flips"] = t.flips;
        row["reproduced"] = t.reproduced;
        row["flip_rate"] =
            t.edges ? json(static_cast<double>(t.flips) / t.edges)
                    : json(nullptr);
        row["dstar"] = report.dstar(l, m);
        pairs.push_back(row);
      }
    }
    j["label_pairs"] = pairs;
  }
  j["seed"] = rc.seed;
  j["trials"] = report.trials;
  j["D"] = report.target_distortion;
  j["mean_distortion"] = report.mean_distortion;
  j["std_error"] =
      report.std_error ? json(*report.std_error) : json(nullptr);
  j["analytic_rate_bits"] = report.analytic_rate;
  out << j.dump(2) << '\n';
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path,
                  "JSON model and run options ('-' for stdin)")
      ->required();
  cmd->add_option("--out", f.out_path, "write results here instead of stdout");
  cmd->add_option("--threads", f.threads, "worker threads");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app("Rate-distortion tools for stochastic block model graphs",
               "sbmrd");
  app.require_subcommand(1);
  Flags f;

  CLI::App* entropy = app.add_subcommand("entropy", "graph entropy in bits");
  AddCommon(entropy, f);

  CLI::App* curve =
      app.add_subcommand("curve", "rate-distortion curve as CSV");
  AddCommon(curve, f);
  curve->add_option("--points", f.points, "uniform grid size on [0, D_max]");

  CLI::App* waterfill =
      app.add_subcommand("waterfill", "optimal distortion allocation");
  AddCommon(waterfill, f);
  waterfill->add_option("--D", f.distortions, "total Hamming distortion");

  CLI::App* verify = app.add_subcommand(
      "verify", "compare the closed form with a Blahut-Arimoto oracle");
  AddCommon(verify, f);
  verify->add_option("--D", f.distortions, "distortions to check");
  verify->add_option("--tol", f.tol, "largest allowed |difference| in bits");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo check of the test channel");
  AddCommon(simulate, f);
  simulate->add_option("--D", f.distortions, "total Hamming distortion");
  simulate->add_option("--trials", f.trials, "number of sampled graphs");
  simulate->add_option("--seed", f.seed, "RNG seed");
  simulate->add_option("--graph-out", f.graph_out, "first sampled graph");
  simulate->add_option("--labels-out", f.labels_out, "first sampled labels");
  simulate->add_option("--recon-out", f.recon_out,
                       "first reproduction graph");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("sbmrd");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sbmrd: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const RunConfig rc = Resolve(f, in);
    Sink sink(f.out_path, out);
    std::ostream& o = sink.stream();
    if (entropy->parsed()) return CmdEntropy(rc, o);
    if (curve->parsed()) return CmdCurve(rc, o);
    if (waterfill->parsed()) return CmdWaterfill(rc, o);
    if (verify->parsed()) return CmdVerify(rc, o, err);
    return CmdSimulate(rc, f, o);
  } catch (const ConfigError& e) {
    err << "sbmrd: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParams& e) {
    err << "sbmrd: invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    err << "sbmrd: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    err << "sbmrd: oracle did not converge: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "sbmrd: " << e.what() << '\n';
    return kExitComputation;
  } catch (const json::exception& e) {
    err << "sbmrd: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace sbmrd
