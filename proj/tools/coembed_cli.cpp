// Batch front end: prepare -> coembed -> cluster -> evaluate -> plot, each
// step also available on its own. All outputs are plain CSV/JSON/SVG and a
// run is fully determined by its flags and --seed.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coembed/baseline.hpp"
#include "coembed/coembed.hpp"
#include "coembed/eval.hpp"
#include "coembed/graph.hpp"
#include "coembed/io.hpp"
#include "coembed/meanshift.hpp"
#include "coembed/svd.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace coembed;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

BipartiteGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file: " + path);
  return load_edge_list(in);
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << content;
}

void write_manifest(const fs::path& dir, const std::string& subcommand,
                    ordered_json config) {
  ordered_json manifest;
  manifest["tool"] = "coembed";
  manifest["subcommand"] = subcommand;
  manifest["config"] = std::move(config);
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

struct PrepareOpts {
  std::string input;
  std::string output_dir;
  int min_degree = 5;
  std::optional<int> min_degree_resources;
  std::optional<int> min_degree_tags;
  std::optional<int> sample;
  std::uint64_t seed = 0;
};

struct CoembedOpts {
  std::string input;
  std::string output_dir;
  int iterations = 8;
  std::optional<double> perp_resources;
  std::optional<double> perp_tags;
  int dimensions = 2;
  std::uint64_t seed = 0;
  bool weighted = false;
  std::string scheme = "tf";
  std::optional<double> stability_threshold;
  std::optional<int> stability_neighbors;
  int tsne_iterations = 750;
};

struct ClusterOpts {
  std::string embeddings_dir;
  std::string output_dir;
  std::string method = "meanshift";
  std::string input; // graph, spectral only
  std::optional<int> k_resources;
  std::optional<int> k_tags;
  std::optional<double> epsilon_merge;
  std::optional<double> perp_resources;
  std::optional<double> perp_tags;
  std::string from_clustering;
  int restarts = 10;
  std::uint64_t seed = 0;
};

struct EvaluateOpts {
  std::string input;
  std::string clusters_resources;
  std::string clusters_tags;
  std::string output_dir;
  int top_n = 4;
  double epsilon = 1e-10;
};

struct PlotOpts {
  std::string embedding;
  std::string output;
  std::string clusters;
  std::string input;
  std::string side = "resources";
};

struct PipelineOpts {
  PrepareOpts prepare;
  CoembedOpts coembed;
  ClusterOpts cluster;
  EvaluateOpts evaluate;
};

ordered_json degree_stats(const BipartiteGraph& g) {
  double mean = 0.0;
  for (int r = 0; r < g.n_resources(); ++r) mean += g.resource_degree(r);
  mean = g.n_resources() > 0 ? mean / g.n_resources() : 0.0;
  double var = 0.0;
  for (int r = 0; r < g.n_resources(); ++r) {
    const double d = g.resource_degree(r) - mean;
    var += d * d;
  }
  var = g.n_resources() > 0 ? var / g.n_resources() : 0.0;

  ordered_json stats;
  stats["n_resources"] = g.n_resources();
  stats["n_tags"] = g.n_tags();
  stats["n_edges"] = g.n_edges();
  stats["mean_resource_degree"] = mean;
  stats["std_resource_degree"] = std::sqrt(var);
  return stats;
}

void run_prepare(const PrepareOpts& opt) {
  BipartiteGraph g = read_graph(opt.input);

  if (opt.sample) {
    DerivedGraph sampled = sample_resources(g, *opt.sample, mix_seed(opt.seed, 1));
    g = std::move(sampled.graph);
  }
  const int min_r = opt.min_degree_resources.value_or(opt.min_degree);
  const int min_t = opt.min_degree_tags.value_or(opt.min_degree);
  DerivedGraph filtered = filter_min_degree(g, min_r, min_t);

  if (filtered.graph.n_edges() == 0)
    throw DataError("nothing survives the degree filter (thresholds " +
                    std::to_string(min_r) + "/" + std::to_string(min_t) + ")");

  const fs::path dir(opt.output_dir);
  {
    std::ostringstream edges;
    save_edge_list(filtered.graph, edges);
    write_text(dir / "edges.tsv", edges.str());
  }
  {
    std::ostringstream map;
    write_mapping_tsv(map, filtered.graph.resource_labels());
    write_text(dir / "resource_map.tsv", map.str());
  }
  {
    std::ostringstream map;
    write_mapping_tsv(map, filtered.graph.tag_labels());
    write_text(dir / "tag_map.tsv", map.str());
  }
  write_text(dir / "stats.json", degree_stats(filtered.graph).dump(2) + "\n");

  ordered_json config;
  config["input"] = opt.input;
  config["min_degree_resources"] = min_r;
  config["min_degree_tags"] = min_t;
  if (opt.sample) config["sample"] = *opt.sample;
  config["seed"] = opt.seed;
  write_manifest(dir, "prepare", config);
}

CoembedConfig to_config(const CoembedOpts& opt) {
  CoembedConfig cfg;
  cfg.k_iterations = opt.iterations;
  cfg.perp_resources = opt.perp_resources;
  cfg.perp_tags = opt.perp_tags;
  cfg.dim = opt.dimensions;
  cfg.seed = opt.seed;
  cfg.weighted = opt.weighted;
  if (opt.scheme == "tf")
    cfg.scheme = WeightScheme::PerDocumentTf;
  else if (opt.scheme == "count")
    cfg.scheme = WeightScheme::CorpusCount;
  else
    throw CLI::ValidationError("--scheme must be 'tf' or 'count'");
  cfg.stability_threshold = opt.stability_threshold;
  cfg.stability_neighbors = opt.stability_neighbors;
  cfg.tsne.max_iter = opt.tsne_iterations;
  return cfg;
}

void run_coembed(const CoembedOpts& opt) {
  BipartiteGraph g = read_graph(opt.input);
  CoembedConfig cfg = to_config(opt);
  CoembedResult res = co_embed(g, cfg);

  const fs::path dir(opt.output_dir);
  for (const CoembedStep& step : res.steps) {
    std::ostringstream csv;
    write_embedding_csv(csv, step.embedding);
    const std::string side = step.resources_embedded ? "resources" : "tags";
    write_text(dir / ("step_" + std::to_string(step.step) + "_" + side + ".csv"),
               csv.str());
  }
  {
    std::ostringstream csv;
    write_embedding_csv(csv, res.resources);
    write_text(dir / "resources.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_embedding_csv(csv, res.tags);
    write_text(dir / "tags.csv", csv.str());
  }

  ordered_json config;
  config["input"] = opt.input;
  config["iterations"] = opt.iterations;
  config["perp_resources"] =
      cfg.perp_resources ? ordered_json(*cfg.perp_resources) : ordered_json(nullptr);
  config["perp_tags"] =
      cfg.perp_tags ? ordered_json(*cfg.perp_tags) : ordered_json(nullptr);
  config["dimensions"] = opt.dimensions;
  config["weighted"] = opt.weighted;
  config["scheme"] = opt.scheme;
  config["tsne_iterations"] = opt.tsne_iterations;
  config["stability_threshold"] = opt.stability_threshold
                                      ? ordered_json(*opt.stability_threshold)
                                      : ordered_json(nullptr);
  config["seed"] = opt.seed;

  ordered_json manifest_extra;
  ordered_json steps = ordered_json::array();
  for (const CoembedStep& step : res.steps) {
    ordered_json s;
    s["step"] = step.step;
    s["side"] = step.resources_embedded ? "resources" : "tags";
    s["mean_stability"] = step.mean_stability;
    s["final_objective"] = step.final_objective;
    s["bandwidth"] = step.bandwidth;
    steps.push_back(s);
  }

  ordered_json manifest;
  manifest["tool"] = "coembed";
  manifest["subcommand"] = "coembed";
  manifest["config"] = config;
  manifest["steps"] = steps;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

Embedding read_embedding(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding file: " + path.string());
  return read_embedding_csv(in);
}

Clustering read_clustering(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open clustering file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return clustering_from_json(buf.str());
}

void run_cluster(const ClusterOpts& opt) {
  const fs::path dir(opt.output_dir);
  ordered_json config;
  config["method"] = opt.method;
  config["seed"] = opt.seed;

  if (opt.method == "meanshift") {
    const Embedding yr = read_embedding(fs::path(opt.embeddings_dir) / "resources.csv");
    const Embedding yt = read_embedding(fs::path(opt.embeddings_dir) / "tags.csv");
    const double perp_r =
        opt.perp_resources.value_or(default_perplexity(static_cast<int>(yr.rows())));
    const double perp_t =
        opt.perp_tags.value_or(default_perplexity(static_cast<int>(yt.rows())));

    auto cluster_side = [&](const Embedding& y, double perp) {
      const Bandwidth bw = estimate_bandwidth(y, perp);
      MeanShiftConfig cfg;
      cfg.sigma = bw.sigma;
      const Embedding converged = mean_shift(y, cfg);
      const double eps = opt.epsilon_merge.value_or(bw.sigma / 4.0);
      return extract_clusters(converged, eps);
    };
    Clustering cr = cluster_side(yr, perp_r);
    Clustering ct = cluster_side(yt, perp_t);
    write_text(dir / "clusters_resources.json", clustering_to_json(cr));
    write_text(dir / "clusters_tags.json", clustering_to_json(ct));

    config["embeddings"] = opt.embeddings_dir;
    config["perp_resources"] = perp_r;
    config["perp_tags"] = perp_t;
    config["epsilon_merge"] =
        opt.epsilon_merge ? ordered_json(*opt.epsilon_merge) : ordered_json(nullptr);
  } else if (opt.method == "spectral") {
    if (opt.input.empty())
      throw CLI::ValidationError("--method spectral requires --input");
    int k_r = opt.k_resources.value_or(0);
    int k_t = opt.k_tags.value_or(0);
    if ((k_r == 0 || k_t == 0) && !opt.from_clustering.empty()) {
      // mirror the study protocol: search for the cluster counts the
      // mean-shift pass discovered
      if (k_r == 0)
        k_r = read_clustering(fs::path(opt.from_clustering) /
                              "clusters_resources.json")
                  .n_clusters;
      if (k_t == 0)
        k_t = read_clustering(fs::path(opt.from_clustering) / "clusters_tags.json")
                  .n_clusters;
    }
    if (k_r == 0 || k_t == 0)
      throw CLI::ValidationError(
          "--method spectral needs --k-resources/--k-tags or --from-clustering");

    BipartiteGraph g = read_graph(opt.input);
    KMeansConfig kc;
    kc.restarts = opt.restarts;
    kc.seed = mix_seed(opt.seed, 3);
    auto [cr, ct] = spectral_cocluster(g, k_r, k_t, kc);
    write_text(dir / "clusters_resources.json", clustering_to_json(cr));
    write_text(dir / "clusters_tags.json", clustering_to_json(ct));

    config["input"] = opt.input;
    config["k_resources"] = k_r;
    config["k_tags"] = k_t;
    config["restarts"] = opt.restarts;
  } else {
    throw CLI::ValidationError("--method must be 'meanshift' or 'spectral'");
  }
  write_manifest(dir, "cluster", config);
}

std::string representative_report(const GraphView& view,
                                  const Clustering& sample_clusters,
                                  const Clustering& feature_clusters, int top_n,
                                  double epsilon) {
  std::ostringstream out;
  for (int c = 0; c < sample_clusters.n_clusters; ++c) {
    out << "# cluster " << c << "\n";
    const std::vector<int> members = sample_clusters.members(c);
    const std::vector<ScoredItem> top =
        top_representative_items(view, members, feature_clusters, top_n, epsilon);
    for (std::size_t rank = 0; rank < top.size(); ++rank)
      out << (rank + 1) << '\t' << view.sample_label(top[rank].item) << '\t'
          << format_double(top[rank].score) << '\n';
  }
  return out.str();
}

void run_evaluate(const EvaluateOpts& opt) {
  BipartiteGraph g = read_graph(opt.input);
  Clustering cr = read_clustering(opt.clusters_resources);
  Clustering ct = read_clustering(opt.clusters_tags);
  if (static_cast<int>(cr.labels.size()) != g.n_resources())
    throw DataError("resource clustering does not match the graph");
  if (static_cast<int>(ct.labels.size()) != g.n_tags())
    throw DataError("tag clustering does not match the graph");

  const GraphView resources(g);
  const GraphView tags = resources.transpose();
  const RetrievalReport rep_r = cluster_retrieval(resources, cr, ct, opt.epsilon);
  const RetrievalReport rep_t = cluster_retrieval(tags, ct, cr, opt.epsilon);

  ordered_json metrics;
  metrics["mrr_resources"] = rep_r.mrr;
  metrics["mrr_tags"] = rep_t.mrr;
  metrics["n_clusters"] = {{"resources", cr.n_clusters}, {"tags", ct.n_clusters}};
  metrics["effective_clusters"] = {{"resources", effective_clusters(cr)},
                                   {"tags", effective_clusters(ct)}};
  metrics["entropy_bits"] = {{"resources", partition_entropy(cr)},
                             {"tags", partition_entropy(ct)}};

  const fs::path dir(opt.output_dir);
  write_text(dir / "metrics.json", metrics.dump(2) + "\n");
  write_text(dir / "representative_resources.tsv",
             representative_report(resources, cr, ct, opt.top_n, opt.epsilon));
  write_text(dir / "representative_tags.tsv",
             representative_report(tags, ct, cr, opt.top_n, opt.epsilon));

  ordered_json config;
  config["input"] = opt.input;
  config["clusters_resources"] = opt.clusters_resources;
  config["clusters_tags"] = opt.clusters_tags;
  config["top_n"] = opt.top_n;
  config["epsilon"] = opt.epsilon;
  write_manifest(dir, "evaluate", config);
}

void run_plot(const PlotOpts& opt) {
  const Embedding y = read_embedding(opt.embedding);

  Clustering clusters;
  const Clustering* clusters_ptr = nullptr;
  if (!opt.clusters.empty()) {
    clusters = read_clustering(opt.clusters);
    if (static_cast<int>(clusters.labels.size()) != y.rows())
      throw DataError("clustering does not match the embedding size");
    clusters_ptr = &clusters;
  }

  std::vector<int> degrees;
  const std::vector<int>* degrees_ptr = nullptr;
  if (!opt.input.empty()) {
    BipartiteGraph g = read_graph(opt.input);
    const bool tags = opt.side == "tags";
    const int n = tags ? g.n_tags() : g.n_resources();
    if (n != y.rows()) throw DataError("graph side does not match the embedding");
    for (int i = 0; i < n; ++i)
      degrees.push_back(tags ? g.tag_degree(i) : g.resource_degree(i));
    degrees_ptr = &degrees;
  }

  write_text(opt.output, svg_scatter(y, clusters_ptr, degrees_ptr));
}

void run_pipeline(PipelineOpts opt) {
  const fs::path root(opt.prepare.output_dir);

  opt.prepare.output_dir = (root / "prepare").string();
  run_prepare(opt.prepare);

  opt.coembed.input = (root / "prepare" / "edges.tsv").string();
  opt.coembed.output_dir = (root / "coembed").string();
  run_coembed(opt.coembed);

  ClusterOpts ms = opt.cluster;
  ms.method = "meanshift";
  ms.embeddings_dir = (root / "coembed").string();
  ms.output_dir = (root / "cluster_meanshift").string();
  ms.perp_resources = opt.coembed.perp_resources;
  ms.perp_tags = opt.coembed.perp_tags;
  run_cluster(ms);

  ClusterOpts sc = opt.cluster;
  sc.method = "spectral";
  sc.input = opt.coembed.input;
  sc.output_dir = (root / "cluster_spectral").string();
  sc.from_clustering = ms.output_dir;
  run_cluster(sc);

  for (const char* method : {"meanshift", "spectral"}) {
    EvaluateOpts ev = opt.evaluate;
    ev.input = opt.coembed.input;
    const fs::path cdir = root / (std::string("cluster_") + method);
    ev.clusters_resources = (cdir / "clusters_resources.json").string();
    ev.clusters_tags = (cdir / "clusters_tags.json").string();
    ev.output_dir = (root / (std::string("evaluate_") + method)).string();
    run_evaluate(ev);
  }

  for (const char* side : {"resources", "tags"}) {
    PlotOpts plot;
    plot.embedding = (root / "coembed" / (std::string(side) + ".csv")).string();
    plot.clusters =
        (root / "cluster_meanshift" / (std::string("clusters_") + side + ".json"))
            .string();
    plot.input = opt.coembed.input;
    plot.side = side;
    plot.output = (root / (std::string(side) + ".svg")).string();
    run_plot(plot);
  }

  ordered_json config;
  config["input"] = opt.prepare.input;
  config["seed"] = opt.coembed.seed;
  config["iterations"] = opt.coembed.iterations;
  write_manifest(root, "pipeline", config);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-way co-clustering of bipartite graphs via alternating "
               "co-embedding, with a spectral baseline and evaluation suite"};
  app.require_subcommand(1);

  PrepareOpts prep;
  CoembedOpts coemb;
  ClusterOpts clus;
  EvaluateOpts eval;
  PlotOpts plot;
  PipelineOpts pipe;

  auto add_prepare_flags = [](CLI::App* cmd, PrepareOpts& o, bool with_out) {
    cmd->add_option("--input", o.input, "edge-list TSV")->required();
    if (with_out)
      cmd->add_option("--output-dir", o.output_dir, "output directory")->required();
    cmd->add_option("--min-degree", o.min_degree,
                    "degree threshold for both sides (default 5)");
    cmd->add_option("--min-degree-resources", o.min_degree_resources,
                    "resource-side override");
    cmd->add_option("--min-degree-tags", o.min_degree_tags, "tag-side override");
    cmd->add_option("--sample", o.sample, "resource sample size before filtering");
    cmd->add_option("--seed", o.seed, "root random seed");
  };

  auto add_coembed_flags = [](CLI::App* cmd, CoembedOpts& o, bool with_io) {
    if (with_io) {
      cmd->add_option("--input", o.input, "prepared edge-list TSV")->required();
      cmd->add_option("--output-dir", o.output_dir, "output directory")->required();
      cmd->add_option("--seed", o.seed, "root random seed");
    }
    cmd->add_option("--iterations", o.iterations, "per-side iterations (default 8)");
    cmd->add_option("--perp-resources", o.perp_resources, "resource-side perplexity");
    cmd->add_option("--perp-tags", o.perp_tags, "tag-side perplexity");
    cmd->add_option("--dimensions", o.dimensions, "embedding dimension (default 2)");
    cmd->add_flag("--weighted", o.weighted, "use per-edge counts");
    cmd->add_option("--scheme", o.scheme, "weighting scheme: tf | count");
    cmd->add_option("--stability-threshold", o.stability_threshold,
                    "early stop once both sides reach this mean stability");
    cmd->add_option("--stability-neighbors", o.stability_neighbors,
                    "neighborhood size for the stability monitor");
    cmd->add_option("--tsne-iterations", o.tsne_iterations,
                    "gradient steps per t-SNE run (default 750)");
  };

  CLI::App* cmd_prepare = app.add_subcommand("prepare", "sample and degree-filter an edge list");
  add_prepare_flags(cmd_prepare, prep, true);

  CLI::App* cmd_coembed = app.add_subcommand("coembed", "run the alternating co-embedding");
  add_coembed_flags(cmd_coembed, coemb, true);

  CLI::App* cmd_cluster = app.add_subcommand("cluster", "extract clusters from embeddings");
  cmd_cluster->add_option("--embeddings", clus.embeddings_dir,
                          "directory with resources.csv / tags.csv");
  cmd_cluster->add_option("--output-dir", clus.output_dir)->required();
  cmd_cluster->add_option("--method", clus.method, "meanshift | spectral");
  cmd_cluster->add_option("--input", clus.input, "edge-list TSV (spectral)");
  cmd_cluster->add_option("--k-resources", clus.k_resources, "spectral cluster count");
  cmd_cluster->add_option("--k-tags", clus.k_tags, "spectral cluster count");
  cmd_cluster->add_option("--epsilon-merge", clus.epsilon_merge,
                          "mode merge radius (default sigma/4)");
  cmd_cluster->add_option("--perp-resources", clus.perp_resources,
                          "bandwidth perplexity override");
  cmd_cluster->add_option("--perp-tags", clus.perp_tags,
                          "bandwidth perplexity override");
  cmd_cluster->add_option("--from-clustering", clus.from_clustering,
                          "meanshift output dir supplying spectral k defaults");
  cmd_cluster->add_option("--restarts", clus.restarts, "k-means restarts (default 10)");
  cmd_cluster->add_option("--seed", clus.seed, "root random seed");

  CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "retrieval and balance metrics");
  cmd_evaluate->add_option("--input", eval.input, "edge-list TSV")->required();
  cmd_evaluate->add_option("--clusters-resources", eval.clusters_resources)->required();
  cmd_evaluate->add_option("--clusters-tags", eval.clusters_tags)->required();
  cmd_evaluate->add_option("--output-dir", eval.output_dir)->required();
  cmd_evaluate->add_option("--top-n", eval.top_n, "representative items per cluster");
  cmd_evaluate->add_option("--epsilon", eval.epsilon, "KL smoothing epsilon");

  CLI::App* cmd_plot = app.add_subcommand("plot", "render an embedding as SVG");
  cmd_plot->add_option("--embedding", plot.embedding, "embedding CSV")->required();
  cmd_plot->add_option("--output", plot.output, "output SVG path")->required();
  cmd_plot->add_option("--clusters", plot.clusters, "clustering JSON for colors");
  cmd_plot->add_option("--input", plot.input, "edge-list TSV for degree opacity");
  cmd_plot->add_option("--side", plot.side, "resources | tags (degree lookup)");

  CLI::App* cmd_pipeline = app.add_subcommand(
      "pipeline", "prepare, coembed, cluster (both methods), evaluate, plot");
  add_prepare_flags(cmd_pipeline, pipe.prepare, true);
  add_coembed_flags(cmd_pipeline, pipe.coembed, false);
  cmd_pipeline->add_option("--epsilon-merge", pipe.cluster.epsilon_merge,
                           "mode merge radius (default sigma/4)");
  cmd_pipeline->add_option("--restarts", pipe.cluster.restarts,
                           "spectral k-means restarts");
  cmd_pipeline->add_option("--top-n", pipe.evaluate.top_n,
                           "representative items per cluster");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_prepare->parsed()) run_prepare(prep);
    if (cmd_coembed->parsed()) run_coembed(coemb);
    if (cmd_cluster->parsed()) run_cluster(clus);
    if (cmd_evaluate->parsed()) run_evaluate(eval);
    if (cmd_plot->parsed()) run_plot(plot);
    if (cmd_pipeline->parsed()) {
      pipe.coembed.seed = pipe.prepare.seed;
      pipe.cluster.seed = pipe.prepare.seed;
      run_pipeline(pipe);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
