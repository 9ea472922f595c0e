// Copyright 2026 The monoseq Authors.
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

#include "monoseq/policy_sim.hpp"

#include <cmath>
#include <numeric>
#include <thread>

#include "monoseq/core_dp.hpp"

namespace monoseq {
namespace {

// Counts marked values in 1..n.
class Fenwick {
 public:
  explicit Fenwick(Index n) : tree_(n + 1, 0) {}

  void mark(Index v) {
    for (; v < static_cast<Index>(tree_.size()); v += v & -v) ++tree_[v];
  }

  Index count_upto(Index v) const {
    Index total = 0;
    for (; v > 0; v -= v & -v) total += tree_[v];
    return total;
  }

 private:
  std::vector<Index> tree_;
};

}  // namespace

Permutation::Permutation(std::vector<Index> image) : image_(std::move(image)) {
  const Index n = size();
  if (n < 1) throw std::invalid_argument("permutation needs n >= 1");
  std::vector<bool> seen(n + 1, false);
  for (Index v : image_) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
    seen[v] = true;
  }
}

Permutation Permutation::identity(Index n) {
  std::vector<Index> image(n);
  std::iota(image.begin(), image.end(), Index{1});
  return Permutation(std::move(image));
}

void SelectionTrace::accept(Index position, Index value) {
  accepted_positions.push_back(position);
  accepted_values.push_back(value);
}

bool SelectionTrace::is_increasing() const {
  if (accepted_positions.size() != accepted_values.size()) return false;
  for (std::size_t i = 1; i < accepted_values.size(); ++i) {
    if (accepted_positions[i] <= accepted_positions[i - 1]) return false;
    if (accepted_values[i] <= accepted_values[i - 1]) return false;
  }
  return true;
}

Permutation random_permutation(Index n, Xoshiro256& rng) {
  if (n < 1) throw std::domain_error("random_permutation needs n >= 1");
  std::vector<Index> image(n);
  std::iota(image.begin(), image.end(), Index{1});
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
    std::swap(image[i], image[j]);
  }
  return Permutation(std::move(image));
}

SelectionTrace run_policy(const Permutation& perm, const ValueTable& table) {
  const Index n = perm.size();
  if (table.n_max() < n) throw std::domain_error("value table shorter than the permutation");

  SelectionTrace trace;
  Fenwick seen(n);
  Index last = 0;
  Index unseen_above_last = n;
  for (Index i = 1; i <= n; ++i) {
    const Index v = perm[i];
    if (v > last) {
      const Index seen_above = (i - 1) - seen.count_upto(v);
      const Index unseen_above = (n - v) - seen_above;
      if (accept_decision(table, unseen_above_last, unseen_above)) {
        trace.accept(i, v);
        last = v;
        unseen_above_last = unseen_above;
      } else {
        --unseen_above_last;
      }
    }
    seen.mark(v);
  }
  return trace;
}

Embedding exponential_embedding(Index n, Xoshiro256& rng) {
  if (n < 1) throw std::domain_error("exponential_embedding needs n >= 1");
  std::vector<double> partial(n + 1);
  double total = 0.0;
  for (Index i = 0; i <= n; ++i) {
    total += standard_exponential(rng);
    partial[i] = total;
  }
  Embedding embedding;
  embedding.y.resize(n);
  double prev = 0.0;
  for (Index i = 0; i < n; ++i) {
    double y = partial[i] / total;
    // Rounding can collapse adjacent spacings; keep the order strict.
    if (!(y > prev)) y = std::nextafter(prev, 1.0);
    embedding.y[i] = y;
    prev = y;
  }
  if (!(embedding.y.back() < 1.0)) {
    throw std::runtime_error("exponential embedding lost strict ordering");
  }
  return embedding;
}

SimReport monte_carlo(const SimConfig& config, const std::string& policy_id,
                      const ReplicateFn& replicate) {
  if (config.n < 1 || config.replicates < 1) {
    throw std::domain_error("monte_carlo needs n >= 1 and replicates >= 1");
  }
  const Index reps = config.replicates;
  std::vector<Index> lengths(reps);

  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<Index>(workers, 1, reps));
  auto run_block = [&](Index begin, Index end) {
    for (Index r = begin; r < end; ++r) {
      Xoshiro256 rng = replicate_stream(config.seed, static_cast<std::uint64_t>(r));
      lengths[r] = replicate(rng);
    }
  };
  if (workers == 1) {
    run_block(0, reps);
  } else {
    std::vector<std::jthread> pool;
    const Index block = (reps + workers - 1) / workers;
    for (Index begin = 0; begin < reps; begin += block) {
      pool.emplace_back(run_block, begin, std::min(reps, begin + block));
    }
  }

  SimReport report;
  report.n = config.n;
  report.replicates = reps;
  report.seed = config.seed;
  report.policy_id = policy_id;
  double sum = 0.0;
  for (Index len : lengths) sum += static_cast<double>(len);
  report.mean = sum / static_cast<double>(reps);
  if (reps > 1) {
    double ss = 0.0;
    for (Index len : lengths) {
      const double d = static_cast<double>(len) - report.mean;
      ss += d * d;
    }
    report.standard_error = std::sqrt(ss / static_cast<double>(reps - 1)) / std::sqrt(static_cast<double>(reps));
  }
  return report;
}

SimReport simulate_optimal(const SimConfig& config, const ValueTable& table) {
  return monte_carlo(config, "optimal", [&](Xoshiro256& rng) {
    return run_policy(random_permutation(config.n, rng), table).length();
  });
}

SimReport simulate_lis(const SimConfig& config) {
  return monte_carlo(config, "lis", [&](Xoshiro256& rng) {
    const Permutation perm = random_permutation(config.n, rng);
    return lis_patience(perm);
  });
}

}  // namespace monoseq
