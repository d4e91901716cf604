#include "treewalk/exchange.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "treewalk/rng.hpp"

namespace treewalk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Subset replace_element(const Subset& s, int out, int in) {
  Subset r;
  r.reserve(s.size());
  for (int e : s) {
    if (e != out) r.push_back(e);
  }
  r.insert(std::lower_bound(r.begin(), r.end(), in), in);
  return r;
}

nlohmann::json triple_to_json(const ExchangeTriple& t) {
  nlohmann::json j;
  j["S"] = t.s;
  j["T"] = t.t;
  j["i"] = t.i;
  j["j"] = t.j ? nlohmann::json(*t.j) : nlohmann::json(nullptr);
  return j;
}

}  // namespace

bool ExchangeReport::finite() const { return std::isfinite(alpha_min); }

std::string ExchangeReport::to_json(int k) const {
  nlohmann::json j;
  j["alpha_min"] = finite() ? nlohmann::json(alpha_min) : nlohmann::json("inf");
  j["k_squared"] = static_cast<double>(k) * static_cast<double>(k);
  j["witness"] = triple_to_json(witness);
  j["pair_count"] = pair_count;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations) j["violations"].push_back(triple_to_json(v));
  return j.dump(2);
}

ExchangeReport exchange_alpha(const SubsetDensity& d, std::size_t support_cap) {
  std::vector<Subset> support = d.enumerate_support(support_cap);
  if (support.empty()) throw Error("exchange_alpha: density has empty support");

  std::vector<double> log_mass;
  log_mass.reserve(support.size());
  for (const Subset& s : support) log_mass.push_back(std::log(d.eval(s)));

  ExchangeReport report;
  report.alpha_min = 1.0;
  report.pair_count = support.size() * support.size();
  double best_log_alpha = -kInf;
  bool have_witness = false;

  std::vector<char> in_t(static_cast<std::size_t>(d.ground_size()), 0);
  for (std::size_t a = 0; a < support.size(); ++a) {
    const Subset& s = support[a];
    for (std::size_t b = 0; b < support.size(); ++b) {
      const Subset& t = support[b];
      const double log_st = log_mass[a] + log_mass[b];
      for (int e : t) in_t[static_cast<std::size_t>(e)] = 1;

      for (int i : s) {
        // Valid partners keep both exchanged sets at size k: j = i when
        // i in T, otherwise j ranges over T \ S.
        double best = kInf;  // min over j of log ratio
        int best_j = -1;
        if (in_t[static_cast<std::size_t>(i)]) {
          best = 0.0;  // exchanging i for itself returns (S, T)
          best_j = i;
        } else {
          for (int j : t) {
            if (std::binary_search(s.begin(), s.end(), j)) continue;
            double m1 = d.eval(replace_element(s, i, j));
            if (!(m1 > 0.0)) continue;
            double m2 = d.eval(replace_element(t, j, i));
            if (!(m2 > 0.0)) continue;
            double log_ratio = log_st - std::log(m1) - std::log(m2);
            if (log_ratio < best) {
              best = log_ratio;
              best_j = j;
            }
          }
        }
        if (best_j < 0) {
          report.violations.push_back(ExchangeTriple{s, t, i, std::nullopt});
        } else if (best > best_log_alpha || !have_witness) {
          best_log_alpha = best;
          report.witness = ExchangeTriple{s, t, i, best_j};
          have_witness = true;
        }
      }
      for (int e : t) in_t[static_cast<std::size_t>(e)] = 0;
    }
  }

  if (!report.violations.empty()) {
    report.alpha_min = kInf;
    report.witness = report.violations.front();
  } else {
    report.alpha_min = std::exp(best_log_alpha);
  }
  return report;
}

QuadraticExchangeResult quadratic_exchange_check(const SubsetDensity& d,
                                                 const Subset& s, const Subset& t) {
  if (d.subset_size() != 2 || s.size() != 2 || t.size() != 2) {
    throw Error("quadratic_exchange_check: needs k = 2 and two 2-subsets");
  }
  for (int e : s) {
    if (std::binary_search(t.begin(), t.end(), e)) {
      throw Error("quadratic_exchange_check: S and T must be disjoint");
    }
  }
  auto pair_mass = [&d](int x, int y) {
    Subset p{std::min(x, y), std::max(x, y)};
    return d.eval(p);
  };
  QuadraticExchangeResult r;
  r.a = d.eval(s) * d.eval(t);
  r.b = pair_mass(s[0], t[0]) * pair_mass(s[1], t[1]);
  r.c = pair_mass(s[0], t[1]) * pair_mass(s[1], t[0]);
  r.pass = std::sqrt(r.a) <= std::sqrt(r.b) + std::sqrt(r.c) + 1e-12;
  return r;
}

DppExchangeBoundResult dpp_exchange_bound_check(const DppDensity& d,
                                                std::size_t support_cap) {
  DppExchangeBoundResult r;
  r.alpha_min = exchange_alpha(d, support_cap).alpha_min;
  r.k_squared = static_cast<double>(d.subset_size()) * static_cast<double>(d.subset_size());
  r.pass = r.alpha_min <= r.k_squared + 1e-9;
  return r;
}

LogConcavityCheckResult logconcavity_necessary_check(const SubsetDensity& d,
                                                     int num_points,
                                                     std::uint64_t seed,
                                                     std::size_t support_cap) {
  LogConcavityCheckResult r;
  std::vector<double> z(static_cast<std::size_t>(d.ground_size()), 1.0);
  r.max_positive_eigenvalues = positive_eigenvalue_count(hessian_at(d, z, support_cap));
  Rng rng = chain_rng(seed, 0x10c0);
  for (int p = 0; p < num_points; ++p) {
    for (double& x : z) x = 0.5 + 1.5 * uniform01(rng);
    r.max_positive_eigenvalues = std::max(
        r.max_positive_eigenvalues, positive_eigenvalue_count(hessian_at(d, z, support_cap)));
  }
  r.pass = r.max_positive_eigenvalues <= 1;
  return r;
}

}  // namespace treewalk
