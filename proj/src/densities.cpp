#include "treewalk/densities.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

namespace treewalk {

namespace {

using nlohmann::json;

bool is_sorted_subset(std::span<const int> s, int n) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= n) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

json parse_json_document(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw Error(std::string("malformed ") + what + " document");
  return doc;
}

}  // namespace

SubsetDensity::SubsetDensity(int n, int k) : n_(n), k_(k) {
  if (n < 0 || k < 0 || k > n) throw Error("invalid density dimensions");
}

std::vector<Subset> SubsetDensity::enumerate_support(std::size_t support_cap) const {
  // Lexicographic scan over all C(n, k) subsets; bail out when either the
  // scan itself or the positive-mass count would blow past the caps.
  constexpr std::size_t kScanCap = 20'000'000;
  double combos = 1.0;
  for (int i = 0; i < k_; ++i) combos *= static_cast<double>(n_ - i) / (i + 1);
  if (combos > static_cast<double>(kScanCap)) {
    throw EnumerationCapError("support scan over C(" + std::to_string(n_) + "," +
                              std::to_string(k_) + ") subsets is too large");
  }

  std::vector<Subset> support;
  if (k_ == 0) {
    Subset empty;
    if (eval(empty) > 0.0) support.push_back(empty);
    return support;
  }
  Subset comb(static_cast<std::size_t>(k_));
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    if (eval(comb) > 0.0) {
      if (support.size() >= support_cap) {
        throw EnumerationCapError("support exceeds cap of " + std::to_string(support_cap));
      }
      support.push_back(comb);
    }
    int i = k_ - 1;
    while (i >= 0 && comb[i] == n_ - k_ + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k_; ++j) comb[j] = comb[j - 1] + 1;
  }
  return support;
}

TableDensity::TableDensity(int n, int k, std::map<Subset, double> entries)
    : SubsetDensity(n, k), entries_(std::move(entries)) {
  bool any_positive = false;
  for (const auto& [subset, weight] : entries_) {
    if (std::cmp_not_equal(subset.size(), k) || !is_sorted_subset(subset, n)) {
      throw Error("table entry is not a sorted k-subset of the ground set");
    }
    if (weight < 0.0 || !std::isfinite(weight)) {
      throw Error("table weights must be finite and nonnegative");
    }
    any_positive |= weight > 0.0;
  }
  if (!any_positive) throw Error("table density has empty support");
}

double TableDensity::eval(std::span<const int> subset) const {
  auto it = entries_.find(Subset(subset.begin(), subset.end()));
  return it == entries_.end() ? 0.0 : it->second;
}

std::vector<Subset> TableDensity::enumerate_support(std::size_t support_cap) const {
  std::vector<Subset> support;
  for (const auto& [subset, weight] : entries_) {
    if (weight <= 0.0) continue;
    if (support.size() >= support_cap) {
      throw EnumerationCapError("support exceeds cap of " + std::to_string(support_cap));
    }
    support.push_back(subset);
  }
  return support;  // std::map keys are already in lexicographic order
}

TableDensity TableDensity::from_json_text(const std::string& text) {
  json doc = parse_json_document(text, "table density");
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("k") ||
      !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error("table density document needs n, k and entries");
  }
  int n = doc["n"].get<int>();
  int k = doc["k"].get<int>();
  std::map<Subset, double> entries;
  for (const auto& item : doc["entries"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_array()) {
      throw Error("each entry must be [[elements...], weight]");
    }
    Subset s = item[0].get<Subset>();
    std::sort(s.begin(), s.end());
    entries[std::move(s)] = item[1].get<double>();
  }
  return TableDensity(n, k, std::move(entries));
}

TableDensity TableDensity::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open density file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

DppDensity::DppDensity(std::vector<std::vector<double>> vectors)
    : SubsetDensity(static_cast<int>(vectors.size()),
                    vectors.empty() ? 0 : static_cast<int>(vectors.front().size())),
      vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw Error("DPP needs at least one vector");
  for (const auto& v : vectors_) {
    if (std::cmp_not_equal(v.size(), k_)) {
      throw Error("all DPP vectors must have dimension k");
    }
    for (double x : v) {
      if (!std::isfinite(x)) throw Error("DPP vector entries must be finite");
    }
  }
}

double DppDensity::eval(std::span<const int> subset) const {
  if (std::cmp_not_equal(subset.size(), k_) || !is_sorted_subset(subset, n_)) return 0.0;
  Eigen::MatrixXd m(k_, k_);
  for (int row = 0; row < k_; ++row) {
    const auto& v = vectors_[static_cast<std::size_t>(subset[row])];
    for (int col = 0; col < k_; ++col) m(row, col) = v[static_cast<std::size_t>(col)];
  }
  double det = Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
  return det * det;
}

DppDensity DppDensity::from_json_text(const std::string& text) {
  json doc = parse_json_document(text, "DPP density");
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("vectors") ||
      !doc["vectors"].is_array()) {
    throw Error("DPP document needs k and vectors");
  }
  int k = doc["k"].get<int>();
  auto vectors = doc["vectors"].get<std::vector<std::vector<double>>>();
  for (const auto& v : vectors) {
    if (std::cmp_not_equal(v.size(), k)) throw Error("DPP vector has wrong dimension");
  }
  return DppDensity(std::move(vectors));
}

DppDensity DppDensity::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open DPP file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

double dpp_eval(const DppDensity& d, std::span<const int> subset) {
  return d.eval(subset);
}

namespace {

class GraphicBasisDensity : public SubsetDensity {
 public:
  explicit GraphicBasisDensity(WeightedGraph g)
      : SubsetDensity(g.edge_count(), g.vertex_count() - 1), graph_(std::move(g)) {}

  double eval(std::span<const int> subset) const override {
    if (!is_sorted_subset(subset, n_)) return 0.0;
    std::vector<int> ids(subset.begin(), subset.end());
    if (!is_spanning_tree(graph_, ids)) return 0.0;
    double w = 1.0;
    for (int id : ids) w *= graph_.edge(id).weight;
    return w;
  }

 private:
  WeightedGraph graph_;
};

class ComplementInverseDensity : public SubsetDensity {
 public:
  explicit ComplementInverseDensity(WeightedGraph g)
      : SubsetDensity(g.edge_count(), g.cotree_size()), graph_(std::move(g)) {}

  double eval(std::span<const int> subset) const override {
    if (!is_sorted_subset(subset, n_)) return 0.0;
    std::vector<int> complement;
    complement.reserve(static_cast<std::size_t>(n_ - k_));
    std::size_t pos = 0;
    for (int id = 0; id < n_; ++id) {
      if (pos < subset.size() && subset[pos] == id) {
        ++pos;
      } else {
        complement.push_back(id);
      }
    }
    if (!is_spanning_tree(graph_, complement)) return 0.0;
    double w = 1.0;
    for (int id : subset) w *= 1.0 / graph_.edge(id).weight;
    return w;
  }

 private:
  WeightedGraph graph_;
};

}  // namespace

std::shared_ptr<SubsetDensity> graphic_basis_density(const WeightedGraph& g) {
  return std::make_shared<GraphicBasisDensity>(g);
}

std::shared_ptr<SubsetDensity> complement_inverse_density(const WeightedGraph& g) {
  return std::make_shared<ComplementInverseDensity>(g);
}

std::vector<std::vector<double>> hessian_at(const SubsetDensity& d,
                                            const std::vector<double>& z,
                                            std::size_t support_cap) {
  const int n = d.ground_size();
  if (std::cmp_not_equal(z.size(), n)) throw Error("hessian_at: z has wrong dimension");
  for (double x : z) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error("hessian_at: z must be strictly positive");
    }
  }
  std::vector<std::vector<double>> h(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const Subset& s : d.enumerate_support(support_cap)) {
    double mass = d.eval(s);
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        double term = mass;
        for (std::size_t c = 0; c < s.size(); ++c) {
          if (c == a || c == b) continue;
          term *= z[static_cast<std::size_t>(s[c])];
        }
        h[static_cast<std::size_t>(s[a])][static_cast<std::size_t>(s[b])] += term;
        h[static_cast<std::size_t>(s[b])][static_cast<std::size_t>(s[a])] += term;
      }
    }
  }
  return h;
}

int positive_eigenvalue_count(const std::vector<std::vector<double>>& m,
                              int dimension_cap, double tolerance) {
  const int n = static_cast<int>(m.size());
  if (n > dimension_cap) {
    throw EnumerationCapError("matrix dimension " + std::to_string(n) +
                              " exceeds cap of " + std::to_string(dimension_cap));
  }
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    if (std::cmp_not_equal(m[static_cast<std::size_t>(i)].size(), n)) {
      throw Error("matrix is not square");
    }
    for (int j = 0; j < n; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  if (!a.isApprox(a.transpose(), 1e-12)) throw Error("matrix is not symmetric");
  if (n == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& eigs = solver.eigenvalues();
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(eigs[i]));
  double threshold = tolerance * max_abs;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (eigs[i] > threshold) ++count;
  }
  return count;
}

}  // namespace treewalk
