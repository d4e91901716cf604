#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "treewalk/error.hpp"
#include "treewalk/graph.hpp"

namespace treewalk {

using Subset = std::vector<int>;  // sorted ascending, no repeats

/// Unnormalized density over k-subsets of {0, ..., n-1}. eval must be pure
/// and nonnegative, with at least one positive subset. Instances are
/// immutable and safe to share across threads.
class SubsetDensity {
 public:
  virtual ~SubsetDensity() = default;

  int ground_size() const { return n_; }
  int subset_size() const { return k_; }

  /// Mass of a sorted k-subset.
  virtual double eval(std::span<const int> subset) const = 0;

  /// Every subset with positive mass, in lexicographic order. Throws
  /// EnumerationCapError when the support exceeds `support_cap` or the
  /// ground set is too large to scan.
  virtual std::vector<Subset> enumerate_support(std::size_t support_cap = 5000) const;

 protected:
  SubsetDensity(int n, int k);

  int n_;
  int k_;
};

/// Explicit table of k-subset weights; unlisted subsets evaluate to 0.
class TableDensity : public SubsetDensity {
 public:
  TableDensity(int n, int k, std::map<Subset, double> entries);

  double eval(std::span<const int> subset) const override;
  std::vector<Subset> enumerate_support(std::size_t support_cap) const override;

  /// Document format: { "n": int, "k": int, "entries": [ [ [i,...], w ], ... ] }.
  static TableDensity from_json_text(const std::string& text);
  static TableDensity load_file(const std::string& path);

 private:
  std::map<Subset, double> entries_;
};

/// Determinantal density: eval(S) = det([v_i]_{i in S})^2 for vectors in R^k.
class DppDensity : public SubsetDensity {
 public:
  explicit DppDensity(std::vector<std::vector<double>> vectors);

  double eval(std::span<const int> subset) const override;
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }

  /// Document format: { "k": int, "vectors": [ [k reals], ... ] }.
  static DppDensity from_json_text(const std::string& text);
  static DppDensity load_file(const std::string& path);

 private:
  std::vector<std::vector<double>> vectors_;
};

/// Spanning-tree density of a graph: eval(S) = prod_{e in S} w_e when S is a
/// spanning tree, else 0. Ground set = edge ids, k = |V| - 1.
std::shared_ptr<SubsetDensity> graphic_basis_density(const WeightedGraph& g);

/// Complements of spanning trees with inverted weights: eval(S) =
/// prod_{e in S} 1/w_e when E - S is a spanning tree, else 0. k = |E| - |V| + 1.
std::shared_ptr<SubsetDensity> complement_inverse_density(const WeightedGraph& g);

double dpp_eval(const DppDensity& d, std::span<const int> subset);

/// Hessian of the generating polynomial at z > 0: entry (i, j), i != j, is
/// sum over support sets containing both of mu(S) * prod of z over S minus
/// {i, j}. Diagonal is 0 (the polynomial is multiaffine).
std::vector<std::vector<double>> hessian_at(const SubsetDensity& d,
                                            const std::vector<double>& z,
                                            std::size_t support_cap = 5000);

/// Number of eigenvalues above tolerance * max |eigenvalue|.
int positive_eigenvalue_count(const std::vector<std::vector<double>>& m,
                              int dimension_cap = 64, double tolerance = 1e-9);

}  // namespace treewalk
