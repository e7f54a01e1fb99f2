// Command-line front end: simulate | estimate | sweep. Every run writes a
// manifest.json with the full parameter set so outputs can be reproduced
// byte for byte (timing lives in metrics files only, never in manifests).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "jeek/entry_lp.hpp"
#include "jeek/estimator.hpp"
#include "jeek/matrix_io.hpp"
#include "jeek/metrics.hpp"
#include "jeek/simgen.hpp"
#include "jeek/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("JEEK_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

void write_json_file(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

// --- knowledge specs -------------------------------------------------------
//
//   none
//   matrix:PATH
//   cohub:hubs=1,2:gamma=2
//   perturbed:hubs=1,2:gamma=2
//   group:edges=1-2,3-4:gamma=2
//
// hubs may be omitted for cohub/perturbed when a ground truth with hub
// metadata is available (oracle weights).

struct KnowledgeSpec {
  std::string raw;
  std::string kind;
  std::map<std::string, std::string> args;
};

KnowledgeSpec parse_knowledge_spec(const std::string& text) {
  KnowledgeSpec spec;
  spec.raw = text;
  std::stringstream ss(text);
  std::string token;
  bool first = true;
  while (std::getline(ss, token, ':')) {
    if (first) {
      spec.kind = token;
      first = false;
      continue;
    }
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("knowledge spec: expected key=value, got '" + token + "'");
    spec.args[token.substr(0, eq)] = token.substr(eq + 1);
  }
  if (spec.kind.empty()) throw std::runtime_error("knowledge spec: empty");
  return spec;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<std::pair<int, int>> parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos)
      throw std::runtime_error("knowledge spec: edges need the form j-k");
    out.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
  }
  return out;
}

jeek::KnowledgeWeights build_knowledge(const KnowledgeSpec& spec, int p, int k,
                                       const std::vector<int>& truth_hubs) {
  auto gamma_of = [&](double fallback) {
    const auto it = spec.args.find("gamma");
    return it == spec.args.end() ? fallback : std::stod(it->second);
  };
  auto hubs_of = [&]() {
    const auto it = spec.args.find("hubs");
    if (it != spec.args.end()) return parse_int_list(it->second);
    if (!truth_hubs.empty()) return truth_hubs;
    throw std::runtime_error("knowledge spec '" + spec.raw +
                             "': hubs not given and no ground-truth hub set available");
  };

  if (spec.kind == "none") return jeek::KnowledgeWeights::all_ones(p, k);
  if (spec.kind == "matrix") {
    const auto it = spec.args.find("file");
    std::string path = it != spec.args.end() ? it->second : "";
    if (path.empty()) {
      const auto fit = spec.args.find("path");
      if (fit != spec.args.end()) path = fit->second;
    }
    if (path.empty())
      throw std::runtime_error("knowledge spec 'matrix' needs file=PATH");
    const auto bundle = jeek::read_matrices(path);
    if (bundle.matrices.size() != 1)
      throw std::runtime_error("knowledge matrix file must hold exactly one matrix");
    jeek::Matrix w = bundle.matrices[0];
    // Distance files carry a zero diagonal; diagonals take the neutral
    // weight 1, matching the hub/group builders.
    for (Eigen::Index d = 0; d < w.rows() && d < w.cols(); ++d)
      if (w(d, d) == 0.0) w(d, d) = 1.0;
    return jeek::build_matrix_weights(w, k);
  }
  if (spec.kind == "cohub") return jeek::build_cohub_weights(p, k, hubs_of(), gamma_of(2.0));
  if (spec.kind == "perturbed")
    return jeek::build_perturbed_weights(p, k, hubs_of(), gamma_of(2.0));
  if (spec.kind == "group") {
    const auto it = spec.args.find("edges");
    if (it == spec.args.end())
      throw std::runtime_error("knowledge spec 'group' needs edges=j-k,...");
    return jeek::build_group_weights(p, k, parse_edge_list(it->second), gamma_of(2.0));
  }
  throw std::runtime_error("unknown knowledge kind '" + spec.kind +
                           "' (expected none|matrix|cohub|perturbed|group)");
}

// --- shared file layouts ----------------------------------------------------

jeek::MatrixBundle to_bundle(const std::vector<jeek::Matrix>& mats, int p) {
  jeek::MatrixBundle b;
  b.p = p;
  b.matrices = mats;
  return b;
}

void write_truth(const jeek::GroundTruth& truth, const fs::path& dir) {
  jeek::write_matrix_json(to_bundle(truth.decomp.individual, truth.dim()),
                          dir / "truth_individual.json");
  jeek::write_matrix_json(to_bundle({truth.decomp.shared}, truth.dim()),
                          dir / "truth_shared.json");
}

jeek::GroundTruth read_truth(const fs::path& dir) {
  const json manifest = read_json_file(dir / "manifest.json");
  jeek::GroundTruth truth;
  auto individual = jeek::read_matrix_json(dir / "truth_individual.json");
  auto shared = jeek::read_matrix_json(dir / "truth_shared.json");
  if (shared.matrices.size() != 1)
    throw std::runtime_error("truth_shared.json must hold exactly one matrix");
  truth.decomp.individual = std::move(individual.matrices);
  truth.decomp.shared = std::move(shared.matrices[0]);
  truth.delta = manifest.at("delta").get<double>();
  truth.protocol = manifest.at("protocol").get<std::string>();
  truth.seed = manifest.at("seed").get<std::uint64_t>();
  if (manifest.contains("hub_nodes"))
    truth.hub_nodes = manifest.at("hub_nodes").get<std::vector<int>>();
  truth.validate();
  return truth;
}

jeek::TaskDataset read_dataset(const fs::path& path) {
  auto bundle = jeek::read_matrices(path);  // .csv loads as a single task
  jeek::TaskDataset data;
  data.tasks = std::move(bundle.matrices);
  data.validate();
  return data;
}

jeek::GroundTruth simulate_truth(const std::string& protocol, int p, int k,
                                 double hub_fraction, const std::string& distance_file,
                                 std::uint64_t seed) {
  if (protocol == "random") return jeek::gen_random_graphs(p, k, seed);
  if (protocol == "cohub") return jeek::gen_cohub(p, k, hub_fraction, seed);
  if (protocol == "perturbed") return jeek::gen_perturbed(p, k, hub_fraction, seed);
  if (protocol == "brain") {
    if (distance_file.empty())
      throw std::runtime_error("protocol 'brain' requires --distance FILE");
    return jeek::gen_brain(jeek::read_matrix_csv(distance_file), k, seed);
  }
  throw std::runtime_error("unknown protocol '" + protocol +
                           "' (expected random|cohub|perturbed|brain)");
}

json roc_json(const jeek::MetricsReport& report) {
  json rows = json::array();
  for (std::size_t i = 0; i < report.roc.size(); ++i) {
    rows.push_back({{"lambda", report.lambdas[i]},
                    {"fpr", report.roc[i].fpr},
                    {"tpr", report.roc[i].tpr},
                    {"f1", report.per_lambda_f1[i]}});
  }
  return rows;
}

json report_json(const jeek::MetricsReport& report) {
  return json{{"f1", report.best_f1},
              {"auc", report.auc},
              {"roc", roc_json(report)},
              {"runtime_seconds",
               {{"per_lambda", report.per_lambda_seconds},
                {"total", report.total_seconds},
                {"wall", report.wall_seconds}}},
              {"v_used", report.v_used},
              {"auc_convention", "trapezoid with (0,0) and (1,1) anchors"}};
}

void write_roc_csv(const jeek::MetricsReport& report, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "lambda,fpr,tpr,f1,seconds\n";
  for (std::size_t i = 0; i < report.roc.size(); ++i) {
    out << jeek::format_double(report.lambdas[i]) << ','
        << jeek::format_double(report.roc[i].fpr) << ','
        << jeek::format_double(report.roc[i].tpr) << ','
        << jeek::format_double(report.per_lambda_f1[i]) << ','
        << jeek::format_double(report.per_lambda_seconds[i]) << '\n';
  }
}

// --- subcommands ------------------------------------------------------------

struct SimulateArgs {
  std::string protocol;
  int p = 50;
  int k = 2;
  int n = 25;
  std::uint64_t seed = 0;
  double hub_fraction = 0.05;
  std::string distance_file;
  std::string out_dir;
};

int run_simulate(const SimulateArgs& args) {
  const auto truth =
      simulate_truth(args.protocol, args.p, args.k, args.hub_fraction, args.distance_file,
                     args.seed);
  const auto data = jeek::sample_gaussian(truth, args.n, args.seed);

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  jeek::write_matrix_json(to_bundle(data.tasks, truth.dim()), dir / "dataset.json");
  write_truth(truth, dir);

  json manifest{{"tool", "jeek"},
                {"version", kVersion},
                {"command", "simulate"},
                {"protocol", truth.protocol},
                {"p", truth.dim()},
                {"K", truth.num_tasks()},
                {"n", args.n},
                {"seed", args.seed},
                {"delta", truth.delta},
                {"files", {"dataset.json", "truth_individual.json", "truth_shared.json"}}};
  if (args.protocol == "cohub" || args.protocol == "perturbed")
    manifest["hub_fraction"] = args.hub_fraction;
  if (!truth.hub_nodes.empty()) manifest["hub_nodes"] = truth.hub_nodes;
  if (!args.distance_file.empty()) manifest["distance_file"] = args.distance_file;
  write_json_file(manifest, dir / "manifest.json");
  return 0;
}

struct EstimateArgs {
  std::string data_file;
  std::string knowledge = "none";
  double lambda = 0.0;  // 0 -> use lambda_index
  int lambda_index = 0; // 0 -> defaults to lambda_steps
  int lambda_steps = 30;
  double v = -1.0;      // < 0 -> select from the default grid
  int threads = 0;
  std::string out_dir;
};

int run_estimate(const EstimateArgs& args) {
  const auto data = read_dataset(args.data_file);
  const int p = data.dim();
  const int k = data.num_tasks();

  const auto cov = jeek::sample_covariance(data);
  const auto v_grid = jeek::default_v_grid();
  const double v = args.v >= 0.0 ? args.v : jeek::select_v(cov, v_grid);
  const auto bmap = jeek::backward_map(cov, v);

  double lambda = args.lambda;
  if (lambda <= 0.0) {
    const auto grid = jeek::lambda_grid(p, k, data.total_samples(), args.lambda_steps);
    const int index = args.lambda_index > 0 ? args.lambda_index : args.lambda_steps;
    if (index > static_cast<int>(grid.size()))
      throw std::runtime_error("--lambda-index exceeds --lambda-steps");
    lambda = grid[index - 1];
  }

  const auto spec = parse_knowledge_spec(args.knowledge);
  const auto weights = build_knowledge(spec, p, k, {});

  jeek::EstimateOptions opts;
  opts.threads = resolve_threads(args.threads);
  const auto est = jeek::estimate(bmap, weights, lambda, opts);

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  jeek::write_matrix_json(to_bundle(est.individual, p), dir / "omega_individual.json");
  jeek::write_matrix_json(to_bundle({est.shared}, p), dir / "omega_shared.json");
  std::vector<jeek::Matrix> totals;
  totals.reserve(k);
  for (int i = 0; i < k; ++i) totals.push_back(est.total(i));
  jeek::write_matrix_json(to_bundle(totals, p), dir / "omega_total.json");

  // threads deliberately left out: outputs are schedule independent
  json manifest{{"tool", "jeek"},
                {"version", kVersion},
                {"command", "estimate"},
                {"data", args.data_file},
                {"knowledge", args.knowledge},
                {"p", p},
                {"K", k},
                {"n_tot", data.total_samples()},
                {"lambda", lambda},
                {"v_used", v},
                {"files",
                 {"omega_individual.json", "omega_shared.json", "omega_total.json"}}};
  write_json_file(manifest, dir / "manifest.json");
  return 0;
}

struct SweepArgs {
  std::string run_dir;  // simulate output; exclusive with protocol mode
  std::string protocol;
  int p = 50;
  int k = 2;
  int n = 25;
  std::uint64_t seed = 0;
  int seeds = 1;
  double hub_fraction = 0.05;
  std::string distance_file;
  std::vector<std::string> knowledge;
  int lambda_steps = 30;
  double tol = 1e-8;
  int threads = 0;
  std::string out_dir;
};

int run_sweep(const SweepArgs& args) {
  if (args.run_dir.empty() == args.protocol.empty())
    throw std::runtime_error("sweep needs exactly one of --run DIR or --protocol NAME");
  if (!args.run_dir.empty() && args.seeds != 1)
    throw std::runtime_error("--seeds needs protocol mode (a stored run is a single seed)");
  std::vector<std::string> knowledge = args.knowledge;
  if (knowledge.empty()) knowledge.push_back("none");
  if (knowledge.size() > 2)
    throw std::runtime_error("sweep compares at most two knowledge settings");

  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);

  jeek::SweepOptions opts;
  opts.tol = args.tol;
  opts.threads = resolve_threads(args.threads);

  json arms = json::array();
  std::vector<std::vector<double>> arm_aucs(knowledge.size());
  for (std::size_t arm = 0; arm < knowledge.size(); ++arm) {
    const auto spec = parse_knowledge_spec(knowledge[arm]);
    json seeds_json = json::array();
    for (int s = 0; s < args.seeds; ++s) {
      jeek::GroundTruth truth;
      jeek::TaskDataset data;
      std::uint64_t seed = args.seed + static_cast<std::uint64_t>(s);
      if (!args.run_dir.empty()) {
        truth = read_truth(args.run_dir);
        data = read_dataset(fs::path(args.run_dir) / "dataset.json");
        seed = truth.seed;
      } else {
        truth = simulate_truth(args.protocol, args.p, args.k, args.hub_fraction,
                               args.distance_file, seed);
        data = jeek::sample_gaussian(truth, args.n, seed);
      }
      const auto lambdas =
          jeek::lambda_grid(truth.dim(), truth.num_tasks(), data.total_samples(),
                            args.lambda_steps);
      const auto weights =
          build_knowledge(spec, truth.dim(), truth.num_tasks(), truth.hub_nodes);
      const auto report = jeek::sweep(data, truth, weights, lambdas, opts);
      arm_aucs[arm].push_back(report.auc);

      json entry = report_json(report);
      entry["seed"] = seed;
      seeds_json.push_back(entry);

      std::string csv_name = "roc_arm" + std::to_string(arm + 1);
      if (args.seeds > 1) csv_name += "_seed" + std::to_string(s + 1);
      write_roc_csv(report, dir / (csv_name + ".csv"));
    }
    double mean_auc = 0.0, mean_f1 = 0.0;
    for (const auto& e : seeds_json) {
      mean_auc += e.at("auc").get<double>();
      mean_f1 += e.at("f1").get<double>();
    }
    mean_auc /= seeds_json.size();
    mean_f1 /= seeds_json.size();
    arms.push_back({{"knowledge", knowledge[arm]},
                    {"seeds", seeds_json},
                    {"mean_auc", mean_auc},
                    {"mean_f1", mean_f1}});
  }

  json metrics{{"tool", "jeek"},
               {"version", kVersion},
               {"command", "sweep"},
               {"lambda_steps", args.lambda_steps},
               {"tol", args.tol},
               {"arms", arms}};
  write_json_file(metrics, dir / "metrics.json");

  json manifest{{"tool", "jeek"},
                {"version", kVersion},
                {"command", "sweep"},
                {"knowledge", knowledge},
                {"lambda_steps", args.lambda_steps},
                {"tol", args.tol},
                {"seeds", args.seeds}};
  if (!args.run_dir.empty()) {
    manifest["run"] = args.run_dir;
  } else {
    manifest["protocol"] = args.protocol;
    manifest["p"] = args.p;
    manifest["K"] = args.k;
    manifest["n"] = args.n;
    manifest["seed"] = args.seed;
    if (args.protocol == "cohub" || args.protocol == "perturbed")
      manifest["hub_fraction"] = args.hub_fraction;
    if (!args.distance_file.empty()) manifest["distance_file"] = args.distance_file;
  }
  write_json_file(manifest, dir / "manifest.json");

  if (knowledge.size() == 2) {
    json deltas = json::array();
    double mean_delta = 0.0;
    for (std::size_t s = 0; s < arm_aucs[0].size(); ++s) {
      const double d = arm_aucs[1][s] - arm_aucs[0][s];
      deltas.push_back(d);
      mean_delta += d;
    }
    mean_delta /= arm_aucs[0].size();
    write_json_file(json{{"knowledge", knowledge},
                         {"auc_delta_per_seed", deltas},
                         {"auc_delta_mean", mean_delta}},
                    dir / "comparison.json");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JEEK: joint estimation of multiple sparse Gaussian graphical models "
               "with knowledge weights"};
  app.set_version_flag("--version", std::string("jeek ") + kVersion);
  app.set_config("--config", "", "read defaults from an INI/TOML file (flags win)");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset + truth");
  simulate->add_option("--protocol", sim.protocol, "random|cohub|perturbed|brain")
      ->required();
  simulate->add_option("--p", sim.p, "variables");
  simulate->add_option("--K", sim.k, "tasks");
  simulate->add_option("--n", sim.n, "samples per task")->required();
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--hub-fraction", sim.hub_fraction, "hub node fraction");
  simulate->add_option("--distance", sim.distance_file, "distance CSV (brain protocol)");
  simulate->add_option("--out", sim.out_dir, "output directory")->required();

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "run the estimator on a dataset");
  estimate->add_option("--data", est.data_file, "dataset.json")->required();
  estimate->add_option("--knowledge", est.knowledge,
                       "none|matrix:file=..|cohub:..|perturbed:..|group:..");
  estimate->add_option("--lambda", est.lambda, "explicit lambda (overrides the grid)");
  estimate->add_option("--lambda-index", est.lambda_index, "1-based index into the grid");
  estimate->add_option("--lambda-steps", est.lambda_steps, "grid size");
  estimate->add_option("--v", est.v, "explicit threshold level (skips selection)");
  estimate->add_option("--threads", est.threads, "workers (JEEK_THREADS fallback)");
  estimate->add_option("--out", est.out_dir, "output directory")->required();

  SweepArgs swp;
  auto* sweep = app.add_subcommand("sweep", "lambda sweep with metrics against truth");
  sweep->add_option("--run", swp.run_dir, "simulate output directory");
  sweep->add_option("--protocol", swp.protocol, "random|cohub|perturbed|brain");
  sweep->add_option("--p", swp.p, "variables");
  sweep->add_option("--K", swp.k, "tasks");
  sweep->add_option("--n", swp.n, "samples per task");
  sweep->add_option("--seed", swp.seed, "base RNG seed");
  sweep->add_option("--seeds", swp.seeds, "number of seeds (protocol mode)");
  sweep->add_option("--hub-fraction", swp.hub_fraction, "hub node fraction");
  sweep->add_option("--distance", swp.distance_file, "distance CSV (brain protocol)");
  sweep->add_option("--knowledge", swp.knowledge, "knowledge spec (repeat to compare two)");
  sweep->add_option("--lambda-steps", swp.lambda_steps, "grid size");
  sweep->add_option("--tol", swp.tol, "nonzero tolerance for edges");
  sweep->add_option("--threads", swp.threads, "workers (JEEK_THREADS fallback)");
  sweep->add_option("--out", swp.out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (estimate->parsed()) return run_estimate(est);
    if (sweep->parsed()) return run_sweep(swp);
  } catch (const std::exception& e) {
    std::cerr << "jeek: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
