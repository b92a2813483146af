#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sscd {

enum class Indexing { Zero, One };

// Undirected simple graph. Node ids are 0-based everywhere inside the
// library; indexing conversion happens only at the I/O boundary.
//
// `labels` holds ground-truth community ids where known and may cover only a
// subset of the nodes (the football network has 5 unlabeled teams).
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (u, v) with u < v, sorted, unique
  std::map<int, int> labels;

  bool has_labels() const { return !labels.empty(); }
  std::size_t edge_count() const { return edges.size(); }
  std::vector<int> degrees() const;
};

// Parses whitespace-separated "u v" lines. Lines whose first non-blank
// character is '#' are skipped, as are blank lines. Duplicate edges collapse;
// self-loops are rejected. n is max node id + 1.
Graph load_edge_list(const std::string& text, Indexing indexing);
Graph load_edge_list_file(const std::filesystem::path& path, Indexing indexing);

// Parses "node community" lines. Community ids are recoded to 0..k-1 in order
// of first appearance. A non-negative expected_n bounds the node ids.
std::map<int, int> load_labels(const std::string& text, Indexing indexing,
                               int expected_n = -1);
std::map<int, int> load_labels_file(const std::filesystem::path& path, Indexing indexing,
                                    int expected_n = -1);

// Sorted "u v" lines (u < v), 0-indexed, newline-separated, no trailing newline.
std::string emit_edge_list(const Graph& g);

// A0: 1 at edges, 0 elsewhere (zero diagonal).
Eigen::MatrixXd adjacency_a0(const Graph& g);
// A1 = A0 with the diagonal raised to 1.
Eigen::MatrixXd adjacency_a1(const Graph& g);
// Complement: 1 - A0 entrywise (diagonal becomes 1).
Eigen::MatrixXd adjacency_complement(const Graph& g);

}  // namespace sscd
