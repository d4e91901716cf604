#include "treewalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace treewalk {

namespace {

struct StepOutcome {
  Subset next;
  int dropped;
  int added;
};

// Masses of all one-element extensions of T (a (k-1)-subset).
struct Extensions {
  std::vector<int> candidates;
  std::vector<double> masses;
  double total = 0.0;
};

Extensions scan_extensions(const SubsetDensity& d, const Subset& t) {
  const int n = d.ground_size();
  Extensions ext;
  ext.candidates.reserve(static_cast<std::size_t>(n) - t.size() + 1);
  ext.masses.reserve(ext.candidates.capacity());
  Subset trial(t.size() + 1);
  std::size_t skip = 0;
  for (int j = 0; j < n; ++j) {
    if (skip < t.size() && t[skip] == j) {
      ++skip;
      continue;
    }
    auto pos = std::lower_bound(t.begin(), t.end(), j);
    auto out = std::copy(t.begin(), pos, trial.begin());
    *out++ = j;
    std::copy(pos, t.end(), out);
    double mass = d.eval(trial);
    if (mass > 0.0) {
      ext.candidates.push_back(j);
      ext.masses.push_back(mass);
      ext.total += mass;
    }
  }
  return ext;
}

StepOutcome step_once(const SubsetDensity& d, const Subset& s, Rng& rng) {
  StepOutcome out;
  std::size_t drop_pos = static_cast<std::size_t>(uniform_index(rng, s.size()));
  out.dropped = s[drop_pos];

  Subset t;
  t.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != drop_pos) t.push_back(s[i]);
  }

  Extensions ext = scan_extensions(d, t);
  if (!(ext.total > 0.0) || !std::isfinite(ext.total)) {
    throw OracleInconsistencyError(
        "density reports zero or non-finite total mass over extensions");
  }

  double target = uniform01(rng) * ext.total;
  std::size_t pick = 0;
  for (; pick + 1 < ext.masses.size(); ++pick) {
    if (target < ext.masses[pick]) break;
    target -= ext.masses[pick];
  }
  out.added = ext.candidates[pick];

  auto pos = std::lower_bound(t.begin(), t.end(), out.added);
  t.insert(pos, out.added);
  out.next = std::move(t);
  return out;
}

}  // namespace

long long mixing_steps(long long k, double epsilon, double schedule_constant) {
  if (k < 1) throw Error("mixing_steps: k must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("mixing_steps: epsilon must lie in (0, 1)");
  if (!(schedule_constant > 0.0)) throw Error("mixing_steps: constant must be positive");
  double raw = schedule_constant * static_cast<double>(k) *
               (std::log(static_cast<double>(std::max<long long>(k, 2))) +
                std::log(1.0 / epsilon));
  return std::max<long long>(1, static_cast<long long>(std::ceil(raw)));
}

Subset down_up_step(const SubsetDensity& d, const Subset& s, Rng& rng) {
  if (s.empty()) throw Error("down_up_step: k must be at least 1");
  return step_once(d, s, rng).next;
}

WalkRun run_chain(const SubsetDensity& d, const Subset& start, long long steps, Rng& rng) {
  if (!(d.eval(start) > 0.0)) throw Error("run_chain: start set has zero mass");
  WalkRun run;
  run.final_set = start;
  run.steps = steps;

  std::vector<char> unmarked(static_cast<std::size_t>(d.ground_size()), 0);
  for (int e : start) unmarked[static_cast<std::size_t>(e)] = 1;
  long long unmarked_count = static_cast<long long>(start.size());
  if (unmarked_count == 0) run.tau = 0;  // k = 0: nothing to replace

  for (long long step = 1; step <= steps; ++step) {
    StepOutcome out = step_once(d, run.final_set, rng);
    if (unmarked[static_cast<std::size_t>(out.dropped)]) {
      unmarked[static_cast<std::size_t>(out.dropped)] = 0;
      if (--unmarked_count == 0 && !run.tau) run.tau = step;
    }
    run.final_set = std::move(out.next);
  }
  return run;
}

double tau_survival(const SubsetDensity& d, const Subset& start, long long t,
                    long long trials, Rng& rng) {
  if (trials < 1) throw Error("tau_survival: trials must be at least 1");
  if (!(d.eval(start) > 0.0)) throw Error("tau_survival: start set has zero mass");
  long long survived = 0;
  std::vector<char> unmarked(static_cast<std::size_t>(d.ground_size()), 0);
  for (long long trial = 0; trial < trials; ++trial) {
    std::fill(unmarked.begin(), unmarked.end(), 0);
    for (int e : start) unmarked[static_cast<std::size_t>(e)] = 1;
    long long unmarked_count = static_cast<long long>(start.size());
    Subset s = start;
    for (long long step = 1; step <= t && unmarked_count > 0; ++step) {
      StepOutcome out = step_once(d, s, rng);
      if (unmarked[static_cast<std::size_t>(out.dropped)]) {
        unmarked[static_cast<std::size_t>(out.dropped)] = 0;
        --unmarked_count;
      }
      s = std::move(out.next);
    }
    if (unmarked_count > 0) ++survived;
  }
  return static_cast<double>(survived) / static_cast<double>(trials);
}

DistributionTable DistributionTable::from_density(const SubsetDensity& d,
                                                  std::size_t support_cap) {
  std::vector<Subset> support = d.enumerate_support(support_cap);
  std::vector<double> weights;
  weights.reserve(support.size());
  for (const Subset& s : support) weights.push_back(d.eval(s));
  return from_weights(std::move(support), std::move(weights));
}

DistributionTable DistributionTable::from_weights(std::vector<Subset> support,
                                                  std::vector<double> weights) {
  if (support.size() != weights.size()) {
    throw Error("distribution table: support/weight size mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw Error("distribution weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw Error("distribution has zero total mass");
  for (double& w : weights) w /= total;
  return DistributionTable{std::move(support), std::move(weights)};
}

std::size_t TransitionMatrix::index_of(const Subset& s) const {
  auto it = std::lower_bound(support.begin(), support.end(), s);
  if (it == support.end() || *it != s) throw Error("set is not in the enumerated support");
  return static_cast<std::size_t>(it - support.begin());
}

DistributionTable TransitionMatrix::apply(const DistributionTable& nu) const {
  if (nu.support != support) throw Error("distribution support does not match the kernel");
  std::vector<double> out(support.size(), 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    double mass = nu.prob[i];
    if (mass == 0.0) continue;
    const auto& row = rows[i];
    for (std::size_t j = 0; j < support.size(); ++j) out[j] += mass * row[j];
  }
  return DistributionTable{support, std::move(out)};
}

TransitionMatrix transition_matrix(const SubsetDensity& d, std::size_t support_cap) {
  TransitionMatrix tm;
  tm.support = d.enumerate_support(support_cap);
  if (tm.support.empty()) throw Error("density has empty support");
  const std::size_t m = tm.support.size();
  const std::size_t k = static_cast<std::size_t>(d.subset_size());

  std::vector<double> weights;
  weights.reserve(m);
  for (const Subset& s : tm.support) weights.push_back(d.eval(s));
  tm.stationary = DistributionTable::from_weights(tm.support, std::move(weights));

  tm.rows.assign(m, std::vector<double>(m, 0.0));
  if (k == 0) {
    tm.rows[0][0] = 1.0;  // unique state
    return tm;
  }

  std::map<Subset, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(tm.support[i], i);

  Subset t(k - 1);
  Subset trial(k);
  for (std::size_t i = 0; i < m; ++i) {
    const Subset& s = tm.support[i];
    for (std::size_t drop = 0; drop < k; ++drop) {
      auto out = std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(drop), t.begin());
      std::copy(s.begin() + static_cast<std::ptrdiff_t>(drop) + 1, s.end(), out);
      Extensions ext = scan_extensions(d, t);
      for (std::size_t c = 0; c < ext.candidates.size(); ++c) {
        auto pos = std::lower_bound(t.begin(), t.end(), ext.candidates[c]);
        auto mid = std::copy(t.begin(), pos, trial.begin());
        *mid++ = ext.candidates[c];
        std::copy(pos, t.end(), mid);
        auto found = index.find(trial);
        if (found == index.end()) {
          throw OracleInconsistencyError("positive-mass extension missing from support");
        }
        tm.rows[i][found->second] +=
            (1.0 / static_cast<double>(k)) * (ext.masses[c] / ext.total);
      }
    }
  }
  return tm;
}

double kl_divergence(const DistributionTable& nu, const DistributionTable& mu) {
  if (nu.support != mu.support) throw Error("KL divergence needs matching supports");
  double sum = 0.0;
  for (std::size_t i = 0; i < nu.prob.size(); ++i) {
    if (nu.prob[i] == 0.0) continue;
    if (mu.prob[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += nu.prob[i] * std::log(nu.prob[i] / mu.prob[i]);
  }
  return sum;
}

double tv_distance(const DistributionTable& nu, const DistributionTable& mu) {
  if (nu.support != mu.support) throw Error("TV distance needs matching supports");
  double sum = 0.0;
  for (std::size_t i = 0; i < nu.prob.size(); ++i) {
    sum += std::abs(nu.prob[i] - mu.prob[i]);
  }
  return 0.5 * sum;
}

}  // namespace treewalk
