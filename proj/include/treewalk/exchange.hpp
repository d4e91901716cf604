#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treewalk/densities.hpp"

namespace treewalk {

struct ExchangeTriple {
  Subset s;
  Subset t;
  int i = -1;           // element of s being exchanged out
  std::optional<int> j;  // best partner in t, absent for violations
};

struct ExchangeReport {
  /// Smallest alpha such that alpha * mu(S-i+j) * mu(T+i-j) >= mu(S) * mu(T)
  /// holds for every support pair and i in S with the best choice of j.
  /// At least 1 whenever the support is nonempty; infinite iff violations
  /// exist.
  double alpha_min = 1.0;
  ExchangeTriple witness;
  std::size_t pair_count = 0;
  std::vector<ExchangeTriple> violations;

  bool finite() const;
  std::string to_json(int k) const;  // adds k_squared for the DPP bound
};

/// Exhaustive alpha computation over the enumerated support.
ExchangeReport exchange_alpha(const SubsetDensity& d, std::size_t support_cap = 5000);

struct QuadraticExchangeResult {
  bool pass = false;
  double a = 0.0;  // mu(S) mu(T)
  double b = 0.0;  // mu({s1,t1}) mu({s2,t2})
  double c = 0.0;  // mu({s1,t2}) mu({s2,t1})
};

/// k = 2 exchange inequality sqrt(A) <= sqrt(B) + sqrt(C) for disjoint pairs.
QuadraticExchangeResult quadratic_exchange_check(const SubsetDensity& d,
                                                 const Subset& s, const Subset& t);

struct DppExchangeBoundResult {
  bool pass = false;
  double alpha_min = 0.0;
  double k_squared = 0.0;
};

/// Checks alpha_min <= k^2 for a determinantal density.
DppExchangeBoundResult dpp_exchange_bound_check(const DppDensity& d,
                                                std::size_t support_cap = 5000);

struct LogConcavityCheckResult {
  bool pass = false;
  int max_positive_eigenvalues = 0;
};

/// Necessary condition: the generating-polynomial Hessian has at most one
/// positive eigenvalue at z = 1 and at `num_points` seeded random z > 0.
LogConcavityCheckResult logconcavity_necessary_check(const SubsetDensity& d,
                                                     int num_points = 20,
                                                     std::uint64_t seed = 0,
                                                     std::size_t support_cap = 5000);

}  // namespace treewalk
