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

#include "hot/graph.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "hot/errors.h"

namespace hot {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string StripComment(const std::string& line) {
  auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Strict parse of a non-negative integer token.
bool ParseIndex(const std::string& tok, std::size_t* out) {
  if (tok.empty() || tok[0] == '-' || tok[0] == '+') return false;
  std::size_t pos = 0;
  try {
    unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) return false;
    *out = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

bool ParseReal(const std::string& tok, double* out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    *out = std::stod(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size() && std::isfinite(*out);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    auto first = cell.find_first_not_of(" \t\r");
    auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos
                        ? ""
                        : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string FormatReal(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges,
             std::optional<Eigen::MatrixXd> attributes, std::string id)
    : node_count_(node_count),
      edges_(std::move(edges)),
      attributes_(std::move(attributes)),
      id_(std::move(id)) {
  if (node_count_ == 0) throw ValidationError("graph must have at least one node");
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<double> degree(node_count_, 0.0);
  for (const Edge& e : edges_) {
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") out of range for n=" +
                            std::to_string(node_count_));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") has invalid weight");
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      throw ValidationError("duplicate edge (" + std::to_string(key.first) +
                            "," + std::to_string(key.second) + ")");
    }
    degree[e.u] += e.weight;
    if (e.v != e.u) degree[e.v] += e.weight;
  }
  for (std::size_t i = 0; i < node_count_; ++i) {
    if (degree[i] <= 0.0) {
      throw ValidationError("isolated node " + std::to_string(i));
    }
  }
  if (attributes_ &&
      static_cast<std::size_t>(attributes_->rows()) != node_count_) {
    throw ValidationError("attribute matrix has " +
                          std::to_string(attributes_->rows()) +
                          " rows, expected " + std::to_string(node_count_));
  }
}

Eigen::MatrixXd Graph::Adjacency() const {
  const auto n = static_cast<Eigen::Index>(node_count_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) {
    a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = e.weight;
    a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = e.weight;
  }
  return a;
}

Eigen::VectorXd Graph::WeightedDegrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(node_count_));
  for (const Edge& e : edges_) {
    d[static_cast<Eigen::Index>(e.u)] += e.weight;
    if (e.u != e.v) d[static_cast<Eigen::Index>(e.v)] += e.weight;
  }
  return d;
}

Measure::Measure(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw ValidationError("empty measure");
  if ((weights_.array() < 0.0).any() || !weights_.allFinite()) {
    throw ValidationError("measure has negative or non-finite weights");
  }
  if (std::abs(weights_.sum() - 1.0) > 1e-12) {
    throw ValidationError("measure weights do not sum to 1");
  }
}

Measure Measure::Uniform(std::size_t n) {
  if (n == 0) throw ValidationError("uniform measure over zero points");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                1.0 / static_cast<double>(n));
  return Normalized(std::move(w));
}

Measure Measure::Normalized(Eigen::VectorXd weights) {
  if (weights.size() == 0 || (weights.array() < 0.0).any() ||
      !weights.allFinite()) {
    throw ValidationError("cannot normalize measure weights");
  }
  const double total = weights.sum();
  if (!(total > 0.0)) throw ValidationError("measure has zero total mass");
  weights /= total;
  // Fold the rounding residue into the first entry.
  weights[0] += 1.0 - weights.sum();
  if (weights[0] < 0.0) weights[0] = 0.0;
  return Measure(std::move(weights), Unchecked{});
}

Measure uniform_measure(const Graph& g) { return Measure::Uniform(g.node_count()); }

void ValidateTuples(const std::vector<Graph>& graphs,
                    const std::vector<NodeTuple>& tuples,
                    const std::string& what) {
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    if (tuples[t].size() != graphs.size()) {
      throw ValidationError(what + " tuple " + std::to_string(t) + " has " +
                            std::to_string(tuples[t].size()) +
                            " entries, expected " +
                            std::to_string(graphs.size()));
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      if (tuples[t][i] >= graphs[i].node_count()) {
        throw ValidationError(what + " tuple " + std::to_string(t) +
                              " index " + std::to_string(tuples[t][i]) +
                              " out of range for graph " + std::to_string(i));
      }
    }
  }
}

void MultiNetworkProblem::Validate() const {
  if (graphs.size() < 2) throw ValidationError("need at least two graphs");
  ValidateTuples(graphs, anchors, "anchor");
  ValidateTuples(graphs, ground_truth, "ground-truth");
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    std::set<NodeId> used;
    for (const NodeTuple& t : anchors) {
      if (!used.insert(t[i]).second) {
        throw ValidationError("node " + std::to_string(t[i]) + " of graph " +
                              std::to_string(i) +
                              " appears in two anchor tuples");
      }
    }
  }
  bool has_attr = graphs[0].has_attributes();
  for (const Graph& g : graphs) {
    if (g.has_attributes() != has_attr ||
        (has_attr && g.attributes().cols() != graphs[0].attributes().cols())) {
      throw ValidationError("attribute width differs across graphs");
    }
  }
}

Graph ParseGraph(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = StripComment(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (!have_header) {
      if (tok.size() != 2 || !ParseIndex(tok[0], &n) || !ParseIndex(tok[1], &m)) {
        throw FormatError(source, line_no, "expected header \"n m\"");
      }
      have_header = true;
      edges.reserve(m);
      continue;
    }
    Edge e;
    if ((tok.size() != 2 && tok.size() != 3) || !ParseIndex(tok[0], &e.u) ||
        !ParseIndex(tok[1], &e.v) ||
        (tok.size() == 3 && !ParseReal(tok[2], &e.weight))) {
      throw FormatError(source, line_no, "expected edge \"u v [w]\"");
    }
    if (edges.size() == m) {
      throw FormatError(source, line_no,
                        "more edges than declared (" + std::to_string(m) + ")");
    }
    if (e.u >= n || e.v >= n) {
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": node index out of range for n=" +
                            std::to_string(n));
    }
    edges.push_back(e);
  }
  if (!have_header) throw FormatError(source, 0, "missing header line");
  if (edges.size() != m) {
    throw FormatError(source, 0,
                      "declared " + std::to_string(m) + " edges, found " +
                          std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges), std::nullopt, source);
}

Graph load_graph(const std::string& path,
                 const std::optional<std::string>& attr_path) {
  Graph g = ParseGraph(ReadFile(path), path);
  if (!attr_path) return g;
  Eigen::MatrixXd x = ReadAttributes(*attr_path);
  std::vector<Edge> edges = g.edges();
  return Graph(g.node_count(), std::move(edges), std::move(x), path);
}

std::string FormatGraph(const Graph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.weight != 1.0) out << ' ' << FormatReal(e.weight);
    out << '\n';
  }
  return out.str();
}

void write_graph(const Graph& g, const std::string& path) {
  WriteFile(path, FormatGraph(g));
}

Eigen::MatrixXd ReadAttributes(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::vector<double>> rows;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (StripComment(raw).empty()) continue;
    std::vector<double> row;
    for (const std::string& cell : SplitCsv(StripComment(raw))) {
      double v;
      if (!ParseReal(cell, &v)) {
        throw FormatError(path, line_no, "invalid real '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError(path, line_no, "inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError(path, 0, "empty attribute file");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return x;
}

void WriteAttributes(const Eigen::MatrixXd& x, const std::string& path) {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (c) out << ',';
      out << FormatReal(x(r, c));
    }
    out << '\n';
  }
  WriteFile(path, out.str());
}

std::vector<NodeTuple> ReadTuples(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<NodeTuple> tuples;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = StripComment(raw);
    if (line.empty()) continue;
    NodeTuple t;
    for (const std::string& cell : SplitCsv(line)) {
      std::size_t v;
      if (!ParseIndex(cell, &v)) {
        throw FormatError(path, line_no, "invalid node index '" + cell + "'");
      }
      t.push_back(v);
    }
    if (!tuples.empty() && t.size() != tuples.front().size()) {
      throw FormatError(path, line_no, "inconsistent tuple width");
    }
    tuples.push_back(std::move(t));
  }
  return tuples;
}

void WriteTuples(const std::vector<NodeTuple>& tuples, const std::string& path) {
  std::ostringstream out;
  for (const NodeTuple& t : tuples) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << ',';
      out << t[i];
    }
    out << '\n';
  }
  WriteFile(path, out.str());
}

}  // namespace hot
