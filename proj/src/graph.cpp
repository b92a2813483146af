#include "sscd/graph.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sscd {
namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return true;  // blank
}

// Splits a line into integer tokens; returns false on any non-integer token.
bool parse_ints(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      return false;
    }
    if (pos != tok.size()) return false;
    out.push_back(v);
  }
  return true;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n, 0);
  for (auto [u, v] : edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

Graph load_edge_list(const std::string& text, Indexing indexing) {
  const int shift = indexing == Indexing::One ? 1 : 0;
  std::set<std::pair<int, int>> edge_set;
  int max_id = -1;

  std::istringstream in(text);
  std::string line;
  std::vector<long long> toks;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (is_comment_or_blank(line)) continue;
    if (!parse_ints(line, toks) || toks.size() != 2) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected two integer tokens, got \"" + line + "\"");
    }
    if (toks[0] == toks[1]) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": self-loop at node " + std::to_string(toks[0]));
    }
    const long long u = toks[0] - shift;
    const long long v = toks[1] - shift;
    if (u < 0 || v < 0) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": node id below the indexing base");
    }
    edge_set.emplace(static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }

  Graph g;
  g.n = max_id + 1;
  g.edges.assign(edge_set.begin(), edge_set.end());
  return g;
}

Graph load_edge_list_file(const std::filesystem::path& path, Indexing indexing) {
  return load_edge_list(read_file(path), indexing);
}

std::map<int, int> load_labels(const std::string& text, Indexing indexing, int expected_n) {
  const int shift = indexing == Indexing::One ? 1 : 0;
  std::map<int, int> out;
  std::map<long long, int> recode;  // raw community id -> 0..k-1, first-appearance order

  std::istringstream in(text);
  std::string line;
  std::vector<long long> toks;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (is_comment_or_blank(line)) continue;
    if (!parse_ints(line, toks) || toks.size() != 2) {
      throw std::invalid_argument("label file line " + std::to_string(line_no) +
                                  ": expected \"node community\", got \"" + line + "\"");
    }
    const long long node = toks[0] - shift;
    if (node < 0 || (expected_n >= 0 && node >= expected_n)) {
      throw std::invalid_argument("label file line " + std::to_string(line_no) +
                                  ": node id " + std::to_string(toks[0]) + " out of range");
    }
    if (out.count(static_cast<int>(node))) {
      throw std::invalid_argument("label file line " + std::to_string(line_no) +
                                  ": duplicate node " + std::to_string(toks[0]));
    }
    auto [it, fresh] = recode.try_emplace(toks[1], static_cast<int>(recode.size()));
    (void)fresh;
    out[static_cast<int>(node)] = it->second;
  }
  return out;
}

std::map<int, int> load_labels_file(const std::filesystem::path& path, Indexing indexing,
                                    int expected_n) {
  return load_labels(read_file(path), indexing, expected_n);
}

std::string emit_edge_list(const Graph& g) {
  std::string out;
  bool first = true;
  for (auto [u, v] : g.edges) {
    if (!first) out += '\n';
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    first = false;
  }
  return out;
}

Eigen::MatrixXd adjacency_a0(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (auto [u, v] : g.edges) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Eigen::MatrixXd adjacency_a1(const Graph& g) {
  Eigen::MatrixXd a = adjacency_a0(g);
  a.diagonal().setOnes();
  return a;
}

Eigen::MatrixXd adjacency_complement(const Graph& g) {
  return Eigen::MatrixXd::Ones(g.n, g.n) - adjacency_a0(g);
}

}  // namespace sscd
