// Copyright 2026 The HOT Authors
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

// Command-line front end: gen, align, eval, bench.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hot/alignment_io.h"
#include "hot/bench.h"
#include "hot/errors.h"
#include "hot/graph.h"
#include "hot/metrics.h"
#include "hot/pipeline.h"

namespace {

using hot::RunConfig;

struct SolverFlags {
  std::string clusters = "auto";
  std::string barycenter_features = "embedding";
};

void AddSolverFlags(CLI::App* cmd, RunConfig& c, SolverFlags& f) {
  cmd->add_option("--clusters", f.clusters,
                  "Cluster count M, or 'auto' for ceil(max n_i / 50)")
      ->capture_default_str();
  cmd->add_option("--alpha", c.solver.alpha, "Structure/feature trade-off in [0, 1]")
      ->capture_default_str();
  cmd->add_option("--beta", c.beta, "RWR restart probability in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--lambda", c.solver.lambda, "Proximal/entropic weight")
      ->capture_default_str();
  cmd->add_option("--outer-iters", c.solver.outer_iters, "Proximal point steps T")
      ->capture_default_str();
  cmd->add_option("--inner-iters", c.solver.inner_iters, "Sinkhorn rounds L per step")
      ->capture_default_str();
  cmd->add_option("--tol", c.solver.outer_tol, "Stop once ||S(t+1) - S(t)||_1 < tol")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--workers", c.workers, "Concurrent cluster solves")
      ->capture_default_str();
  cmd->add_option("--budget", c.element_budget, "Per-block coupling element budget")
      ->capture_default_str();
  cmd->add_option("--barycenter-features", f.barycenter_features,
                  "Barycenter node features")
      ->check(CLI::IsMember({"embedding", "attributes"}))
      ->capture_default_str();
  cmd->add_option("--emit-threshold", c.emit_threshold,
                  "Smallest coupling entry written to the alignment file")
      ->capture_default_str();
}

void FinishConfig(RunConfig& c, const SolverFlags& f) {
  if (f.clusters == "auto") {
    c.clusters = 0;
  } else {
    try {
      std::size_t pos = 0;
      const long long m = std::stoll(f.clusters, &pos);
      if (pos != f.clusters.size() || m < 1) throw std::invalid_argument("");
      c.clusters = static_cast<std::size_t>(m);
    } catch (const std::exception&) {
      throw hot::ConfigurationError("--clusters expects 'auto' or a positive integer");
    }
  }
  c.barycenter_features = f.barycenter_features == "attributes"
                              ? hot::BarycenterFeatures::kAttributes
                              : hot::BarycenterFeatures::kEmbedding;
  c.Validate();
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw hot::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw hot::IoError("write failed for '" + path + "'");
}

std::string CsvSibling(const std::string& path) {
  std::filesystem::path p(path);
  p.replace_extension(".csv");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hot: hierarchical multi-marginal optimal transport for aligning K networks"};
  app.require_subcommand(1);

  // gen
  hot::NoisyErOptions gen;
  std::string gen_dir = ".";
  auto* gen_cmd = app.add_subcommand("gen", "Generate noisy ER copies, truth and anchors");
  gen_cmd->add_option("--nodes", gen.node_count, "Nodes per graph")->capture_default_str();
  gen_cmd->add_option("--p", gen.edge_probability, "Base ER edge probability")
      ->capture_default_str();
  gen_cmd->add_option("--copies", gen.copies, "Number of graphs K")->capture_default_str();
  gen_cmd->add_option("--insert", gen.insert_fraction, "Fraction of edges inserted per copy")
      ->capture_default_str();
  gen_cmd->add_option("--remove", gen.remove_fraction, "Fraction of edges removed per copy")
      ->capture_default_str();
  gen_cmd->add_option("--anchor-fraction", gen.anchor_fraction,
                      "Fraction of truth tuples used as anchors")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out-dir", gen_dir, "Output directory")->capture_default_str();

  // align
  RunConfig align_config;
  SolverFlags align_flags;
  std::vector<std::string> graph_paths;
  std::vector<std::string> attr_paths;
  std::string anchors_path;
  std::string align_out;
  auto* align_cmd = app.add_subcommand("align", "Align K graphs");
  align_cmd->add_option("--graphs", graph_paths, "Comma-separated edge-list files")
      ->required()
      ->delimiter(',');
  align_cmd->add_option("--attrs", attr_paths, "Comma-separated attribute CSV files")
      ->delimiter(',');
  align_cmd->add_option("--anchors", anchors_path, "Anchor tuple CSV")->required();
  align_cmd->add_option("--out", align_out, "Alignment output file")->required();
  AddSolverFlags(align_cmd, align_config, align_flags);

  // eval
  std::vector<std::string> alignment_paths;
  std::string truth_path;
  std::string eval_anchors;
  std::vector<int> k_list{1, 5, 10, 30, 50};
  std::string rank_scope = "global";
  std::string eval_out = "report.json";
  auto* eval_cmd = app.add_subcommand("eval", "Score alignments against ground truth");
  eval_cmd->add_option("--alignment", alignment_paths,
                       "Comma-separated alignment files; several are summarized as folds")
      ->required()
      ->delimiter(',');
  eval_cmd->add_option("--truth", truth_path, "Ground-truth tuple CSV")->required();
  eval_cmd->add_option("--anchors", eval_anchors, "Anchor tuple CSV excluded from testing");
  eval_cmd->add_option("--k", k_list, "Hits@K values")->delimiter(',')->capture_default_str();
  eval_cmd->add_option("--rank-scope", rank_scope, "High-order ranking universe")
      ->check(CLI::IsMember({"global", "cluster"}))
      ->capture_default_str();
  eval_cmd->add_option("--out", eval_out, "Report JSON; a CSV summary is written beside it")
      ->capture_default_str();

  // bench
  RunConfig bench_config;
  SolverFlags bench_flags;
  std::vector<std::size_t> bench_sizes{50, 100};
  std::vector<std::size_t> bench_counts{3};
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Hierarchical vs flat timing and storage");
  bench_cmd->add_option("--sizes", bench_sizes, "Node counts")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--graph-counts", bench_counts, "Graph counts K")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "CSV output (stdout when omitted)");
  AddSolverFlags(bench_cmd, bench_config, bench_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hot::ExitCodeFor(hot::ErrorKind::kConfiguration);
  }

  try {
    if (*gen_cmd) {
      const hot::MultiNetworkProblem p = hot::generate_noisy_er(gen);
      std::filesystem::create_directories(gen_dir);
      for (std::size_t i = 0; i < p.graphs.size(); ++i) {
        hot::write_graph(p.graphs[i], JoinPath(gen_dir, "g" + std::to_string(i + 1) + ".txt"));
      }
      hot::WriteTuples(p.ground_truth, JoinPath(gen_dir, "truth.csv"));
      hot::WriteTuples(p.anchors, JoinPath(gen_dir, "anchors.csv"));
    } else if (*align_cmd) {
      FinishConfig(align_config, align_flags);
      if (!attr_paths.empty() && attr_paths.size() != graph_paths.size()) {
        throw hot::ConfigurationError("--attrs needs one file per graph");
      }
      hot::MultiNetworkProblem p;
      for (std::size_t i = 0; i < graph_paths.size(); ++i) {
        std::optional<std::string> attrs;
        if (!attr_paths.empty()) attrs = attr_paths[i];
        p.graphs.push_back(hot::load_graph(graph_paths[i], attrs));
      }
      p.anchors = hot::ReadTuples(anchors_path);
      const hot::AlignmentResult r = hot::hot_align(p, align_config);
      hot::write_alignment(r, align_out);
      std::fprintf(stderr, "aligned %zu graphs into %zu clusters, %zu coupling elements\n",
                   r.graph_count(), r.blocks().size(), r.AllocatedElements());
    } else if (*eval_cmd) {
      const hot::RankScope scope =
          rank_scope == "cluster" ? hot::RankScope::kCluster : hot::RankScope::kGlobal;
      const std::vector<hot::NodeTuple> truth = hot::ReadTuples(truth_path);
      std::vector<hot::NodeTuple> anchors;
      if (!eval_anchors.empty()) anchors = hot::ReadTuples(eval_anchors);
      std::vector<hot::EvalReport> runs;
      for (const std::string& path : alignment_paths) {
        const hot::AlignmentResult r = hot::load_alignment(path);
        runs.push_back(hot::evaluate(r, truth, anchors, k_list, scope));
      }
      WriteText(eval_out, hot::ReportJson(runs).dump(2) + "\n");
      const std::vector<hot::MetricSummary> summary = hot::Summarize(runs);
      WriteText(CsvSibling(eval_out), hot::SummaryCsv(summary));
      for (const hot::MetricSummary& m : summary) {
        if (m.metric.rfind("pair_", 0) == 0) continue;
        if (m.k > 0) {
          std::printf("%s@%d %.4f\n", m.metric.c_str(), m.k, m.mean);
        } else {
          std::printf("%s %.4f\n", m.metric.c_str(), m.mean);
        }
      }
    } else if (*bench_cmd) {
      FinishConfig(bench_config, bench_flags);
      const std::vector<hot::BenchRow> rows =
          hot::cmd_bench(bench_sizes, bench_counts, bench_config);
      const std::string csv = hot::BenchCsv(rows);
      if (bench_out.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        WriteText(bench_out, csv);
      }
    }
  } catch (const hot::Error& e) {
    std::fprintf(stderr, "hot: %s\n", e.what());
    return hot::ExitCodeFor(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "hot: %s\n", e.what());
    return hot::ExitCodeFor(hot::ErrorKind::kIo);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hot: internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
