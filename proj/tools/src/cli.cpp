#include "ultrafit_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "svg.hpp"
#include "ultrafit/error.hpp"
#include "ultrafit/evaluation.hpp"
#include "ultrafit/fitting.hpp"
#include "ultrafit/io.hpp"
#include "ultrafit/preprocessing.hpp"

namespace ultrafit::cli {

namespace fs = std::filesystem;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::invalid_argument, "cannot open '" + path + "' for writing");
  return out;
}

template <class Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in = open_in(path);
  try {
    return reader(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

int exit_code(const Error& e) {
  return e.kind() == ErrorKind::numerical ? kNumericalError : kValidationError;
}

// ---------------------------------------------------------------- graph-build

struct GraphBuildArgs {
  std::string input, output, labels_out;
  std::size_t knn = 5;
  bool labeled = false;
};

int run_graph_build(const GraphBuildArgs& a, std::ostream& out) {
  if (!a.labels_out.empty() && !a.labeled) {
    throw Error(Errc::invalid_argument, "--labels-out needs --labeled");
  }
  const PointSet points =
      read_file(a.input, [&](std::istream& in) { return read_points_csv(in, a.labeled); });
  const WeightedGraph wg = knn_mst_graph(points, a.knn);
  {
    std::ofstream f = open_out(a.output);
    write_edge_list(f, wg.graph, wg.weights);
  }
  if (!a.labels_out.empty()) {
    std::ofstream f = open_out(a.labels_out);
    for (std::size_t v = 0; v < points.labels.size(); ++v) {
      if (points.labels[v]) f << v << ' ' << *points.labels[v] << '\n';
    }
  }
  out << "graph: " << wg.graph.vertex_count() << " vertices, " << wg.graph.edge_count()
      << " edges\n";
  return kSuccess;
}

// ------------------------------------------------------------------------ fit

struct FitArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string cost = "closest";
  std::optional<double> lambda;
  double alpha = 10.0;
  std::size_t top_k = 10;
  double tau = 1.0;
  std::size_t iterations = 150;
  double step_size = 0.1;
  std::string triplets, labels;
  std::size_t triplet_count = 200;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool svg = false;
};

/// Builds the cost for one graph; triplets are sampled per graph so every
/// input of a batch is validated against its own vertex count.
CostSpec make_cost(const FitArgs& a, std::size_t vertex_count) {
  const double lambda = a.lambda.value_or(a.cost == "closest+size" ? 10.0 : 1.0);
  CostSpec spec;
  if (a.cost == "closest") {
    spec.terms = {{ClosestTerm{}, 1.0}};
  } else if (a.cost == "closest+size") {
    spec.terms = {{ClosestTerm{}, 1.0}, {ClusterSizeTerm{a.top_k}, lambda}};
  } else if (a.cost == "dasgupta") {
    spec.terms = {{DasguptaTerm{a.tau}, 1.0}};
  } else if (a.cost == "dasgupta+size") {
    spec.terms = {{DasguptaTerm{a.tau}, 1.0}, {ClusterSizeTerm{a.top_k}, lambda}};
  } else {  // closest+triplet
    TripletSet triplets;
    if (!a.triplets.empty()) {
      triplets = read_file(a.triplets, [](std::istream& in) { return read_triplets(in); });
    } else {
      std::vector<ClassLabel> labels =
          read_file(a.labels, [](std::istream& in) { return read_vertex_labels(in); });
      if (labels.size() > vertex_count) {
        throw Error(Errc::vertex_out_of_range,
                    a.labels + ": labels vertex " + std::to_string(labels.size() - 1) +
                        " but the graph has " + std::to_string(vertex_count) + " vertices");
      }
      labels.resize(vertex_count);
      triplets = sample_triplets(labels, a.triplet_count, a.seed);
    }
    for (std::size_t i = 0; i < triplets.size(); ++i) {
      const Triplet& t = triplets[i];
      if (std::max({t.ref, t.pos, t.neg}) >= vertex_count) {
        throw Error(Errc::vertex_out_of_range,
                    "triplet " + std::to_string(i) + " references a vertex outside [0, " +
                        std::to_string(vertex_count) + ")");
      }
    }
    spec.terms = {{ClosestTerm{}, 1.0}, {TripletTerm{std::move(triplets), a.alpha}, lambda}};
  }
  return spec;
}

struct FitJob {
  std::string input, output;
  std::string message;  // summary line or error text
  int status = kSuccess;
};

void run_one_fit(const FitArgs& a, FitJob& job) {
  try {
    const WeightedGraph wg =
        read_file(job.input, [](std::istream& in) { return read_edge_list(in); });
    FitConfig cfg;
    cfg.cost = make_cost(a, wg.graph.vertex_count());
    cfg.iterations = a.iterations;
    cfg.step_size = a.step_size;
    cfg.seed = a.seed;
    const FitResult r = fit(wg.graph, wg.weights, cfg);
    {
      std::ofstream f = open_out(job.output);
      write_edge_list(f, wg.graph, r.ultrametric);
    }
    {
      std::ofstream f = open_out(job.output + ".linkage");
      write_linkage(f, r.dendrogram);
    }
    {
      std::ofstream f = open_out(job.output + ".trace.csv");
      write_trace_csv(f, r.trace);
    }
    if (a.svg) {
      std::ofstream f = open_out(job.output + ".svg");
      write_trace_svg(f, normalize_trace(r.trace), a.cost + " cost (normalized)");
    }
    std::ostringstream msg;
    msg << job.input << ": cost " << format_double(r.trace.front()) << " -> "
        << format_double(r.trace.back()) << " after " << r.iterations << " iterations";
    if (r.clamped_edges > 0) msg << " (" << r.clamped_edges << " edges clamped to 0)";
    job.message = msg.str();
  } catch (const Error& e) {
    job.status = exit_code(e);
    job.message = std::string("error: ") + e.what();
  }
}

int run_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  const bool uses_triplets = a.cost == "closest+triplet";
  if (uses_triplets && a.triplets.empty() == a.labels.empty()) {
    throw Error(Errc::invalid_argument,
                "closest+triplet needs exactly one of --triplets or --labels");
  }
  if (!uses_triplets && (!a.triplets.empty() || !a.labels.empty())) {
    throw Error(Errc::invalid_argument, "--triplets and --labels need --cost closest+triplet");
  }

  std::vector<FitJob> jobs;
  if (a.inputs.size() == 1) {
    jobs.push_back({a.inputs[0], a.output, {}, kSuccess});
  } else {
    // Batch mode: --output names a directory that receives one fit per input.
    fs::create_directories(a.output);
    std::map<std::string, std::string> seen;
    for (const std::string& in : a.inputs) {
      const std::string name = fs::path(in).filename().string();
      if (!seen.emplace(name, in).second) {
        throw Error(Errc::invalid_argument,
                    "inputs '" + seen[name] + "' and '" + in + "' share the file name '" +
                        name + "'");
      }
      jobs.push_back({in, (fs::path(a.output) / name).string(), {}, kSuccess});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) run_one_fit(a, jobs[i]);
  };
  const std::size_t threads = std::min(a.jobs, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  int status = kSuccess;
  for (const FitJob& job : jobs) {
    (job.status == kSuccess ? out : err) << job.message << '\n';
    status = std::max(status, job.status);
  }
  return status;
}

// -------------------------------------------------------------------- cluster

int run_cluster(const std::string& input, const std::string& output, std::size_t k,
                std::ostream& out) {
  const Dendrogram tree = read_file(input, [](std::istream& in) { return read_linkage(in); });
  const std::vector<std::size_t> labels = cut_to_k_clusters(tree, k);
  std::ofstream f = open_out(output);
  write_labels_csv(f, labels);
  out << "clusters: " << k << " over " << labels.size() << " vertices\n";
  return kSuccess;
}

// ----------------------------------------------------------------------- eval

int run_eval(const std::string& input, const std::string& truth_path, std::ostream& out) {
  const auto predicted =
      read_file(input, [](std::istream& in) { return read_vertex_labels(in); });
  const auto truth =
      read_file(truth_path, [](std::istream& in) { return read_vertex_labels(in); });
  if (truth.size() > predicted.size()) {
    throw Error(Errc::length_mismatch,
                "ground truth labels vertex " + std::to_string(truth.size() - 1) +
                    " but only " + std::to_string(predicted.size()) + " predictions given");
  }
  std::vector<int> p, t;
  for (std::size_t v = 0; v < truth.size(); ++v) {
    if (!truth[v]) continue;
    if (!predicted[v]) {
      throw Error(Errc::length_mismatch, "no prediction for vertex " + std::to_string(v));
    }
    p.push_back(*predicted[v]);
    t.push_back(*truth[v]);
  }
  out << "accuracy " << format_double(clustering_accuracy(p, t)) << " over " << t.size()
      << " labeled vertices\n";
  return kSuccess;
}

// ---------------------------------------------------------------------- check

int run_check(const std::string& input, double tol, std::ostream& out) {
  const WeightedGraph wg = read_file(input, [](std::istream& in) { return read_edge_list(in); });
  const EdgeWeights sub = subdominant(wg.graph, wg.weights).ultrametric;
  double worst = 0.0;
  for (std::size_t e = 0; e < sub.size(); ++e) {
    worst = std::max(worst, std::abs(wg.weights[e] - sub[e]));
  }
  if (worst <= tol) {
    out << "ultrametric\n";
    return kSuccess;
  }
  out << "not ultrametric (max deviation " << format_double(worst) << ")\n";
  return kNotUltrametric;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ultrametric fitting of edge-weighted graphs", "ultrafit"};
  app.require_subcommand(1);

  GraphBuildArgs gb;
  auto* graph_build =
      app.add_subcommand("graph-build", "Build a kNN + spanning tree graph from points");
  graph_build->add_option("--input", gb.input, "Points CSV (header optional)")->required();
  graph_build->add_option("--output", gb.output, "Edge-list output")->required();
  graph_build->add_option("--knn", gb.knn, "Neighbours per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  graph_build->add_flag("--labeled", gb.labeled, "Last CSV column is a class label");
  graph_build->add_option("--labels-out", gb.labels_out, "Write `vertex class` label file");

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Fit an ultrametric to an edge list");
  fit_cmd->add_option("--input", fa.inputs, "Edge list (repeat for batch mode)")
      ->required()
      ->expected(1, -1);
  fit_cmd->add_option("--output", fa.output, "Output path (directory in batch mode)")
      ->required();
  fit_cmd->add_option("--cost", fa.cost, "Cost function")
      ->check(CLI::IsMember(
          {"closest", "closest+size", "closest+triplet", "dasgupta", "dasgupta+size"}))
      ->capture_default_str();
  fit_cmd->add_option("--lambda", fa.lambda,
                      "Regularization weight (default 10 for closest+size, else 1)")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--alpha", fa.alpha, "Triplet margin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_option("--top-k", fa.top_k, "Cluster-size term: top nodes penalised")
      ->capture_default_str();
  fit_cmd->add_option("--tau", fa.tau, "Soft cardinal temperature")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_option("--iterations", fa.iterations)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_option("--step-size", fa.step_size)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* trip_opt = fit_cmd->add_option("--triplets", fa.triplets, "Triplet file `ref pos neg`");
  fit_cmd->add_option("--labels", fa.labels, "Label file `vertex class` to sample triplets")
      ->excludes(trip_opt);
  fit_cmd->add_option("--triplet-count", fa.triplet_count, "Triplets sampled from --labels")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fa.seed, "Triplet sampling seed")->capture_default_str();
  fit_cmd->add_option("--jobs", fa.jobs, "Parallel fits in batch mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit_cmd->add_flag("--svg", fa.svg, "Also write OUTPUT.svg with the normalized cost trace");

  std::string cl_input, cl_output;
  std::size_t cl_k = 2;
  auto* cluster = app.add_subcommand("cluster", "Cut a linkage matrix into k clusters");
  cluster->add_option("--input", cl_input, "Linkage matrix")->required();
  cluster->add_option("--output", cl_output, "Labels CSV output")->required();
  cluster->add_option("--k", cl_k, "Number of clusters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string ev_input, ev_truth;
  auto* eval = app.add_subcommand("eval", "Accuracy of predicted labels");
  eval->add_option("--input", ev_input, "Predicted labels")->required();
  eval->add_option("--truth", ev_truth, "Ground truth `vertex class` file")->required();

  std::string ck_input;
  double ck_tol = 0.0;
  auto* check = app.add_subcommand("check", "Test whether edge weights are ultrametric");
  check->add_option("--input", ck_input, "Edge list")->required();
  check->add_option("--tol", ck_tol, "Absolute tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::vector<const char*> argv{"ultrafit"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    if (*graph_build) return run_graph_build(gb, out);
    if (*fit_cmd) return run_fit(fa, out, err);
    if (*cluster) return run_cluster(cl_input, cl_output, cl_k, out);
    if (*eval) return run_eval(ev_input, ev_truth, out);
    return run_check(ck_input, ck_tol, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

}  // namespace ultrafit::cli
