#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treewalk/densities.hpp"
#include "treewalk/error.hpp"
#include "treewalk/rng.hpp"

namespace treewalk {

/// The density oracle returned zero total mass over the extensions of a set
/// it previously claimed was in the support.
struct OracleInconsistencyError : Error {
  using Error::Error;
};

struct WalkConfig {
  double epsilon = 0.01;
  double schedule_constant = 4.0;
  std::uint64_t seed = 0;
  std::optional<long long> step_override;
};

struct WalkRun {
  Subset final_set;
  long long steps = 0;
  std::optional<long long> tau;  // first step with every initial slot replaced
};

/// Steps to schedule for rank k and accuracy epsilon:
/// max(1, ceil(C * k * (ln(max(k, 2)) + ln(1/epsilon)))).
long long mixing_steps(long long k, double epsilon, double schedule_constant);

/// One transition: drop a uniform element of S, then re-add one of the
/// n - k + 1 candidates proportionally to the density. The dropped element
/// may come straight back.
Subset down_up_step(const SubsetDensity& d, const Subset& s, Rng& rng);

WalkRun run_chain(const SubsetDensity& d, const Subset& start, long long steps, Rng& rng);

/// Fraction of `trials` independent chains whose tau exceeds t.
double tau_survival(const SubsetDensity& d, const Subset& start, long long t,
                    long long trials, Rng& rng);

/// Normalized distribution over an enumerated support.
struct DistributionTable {
  std::vector<Subset> support;
  std::vector<double> prob;

  static DistributionTable from_density(const SubsetDensity& d,
                                        std::size_t support_cap = 5000);
  static DistributionTable from_weights(std::vector<Subset> support,
                                        std::vector<double> weights);
};

/// Exact one-step kernel of the down-up walk over the enumerated support.
/// Rows index the current set, columns the next; each row sums to 1.
struct TransitionMatrix {
  std::vector<Subset> support;
  std::vector<std::vector<double>> rows;
  DistributionTable stationary;  // the density, normalized over the support

  std::size_t index_of(const Subset& s) const;  // throws if absent
  DistributionTable apply(const DistributionTable& nu) const;
};

TransitionMatrix transition_matrix(const SubsetDensity& d, std::size_t support_cap = 5000);

/// KL divergence D(nu | mu) = sum nu log(nu/mu); terms with nu = 0 drop out.
/// Returns +infinity when nu charges a mu-null state.
double kl_divergence(const DistributionTable& nu, const DistributionTable& mu);

/// Half L1 distance.
double tv_distance(const DistributionTable& nu, const DistributionTable& mu);

}  // namespace treewalk
