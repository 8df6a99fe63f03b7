// SPDX-License-Identifier: Apache-2.0
#include "courtside/tactics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "courtside/assignment.hpp"
#include "courtside/dtw.hpp"

namespace courtside {

std::string_view to_string(Correspondence c) {
  return c == Correspondence::FixedSlot ? "fixed_slot" : "optimal_assignment";
}

std::optional<Correspondence> parse_correspondence(std::string_view text) {
  if (text == "fixed_slot") return Correspondence::FixedSlot;
  if (text == "optimal_assignment") return Correspondence::OptimalAssignment;
  return std::nullopt;
}

TrajectorySet normalize_trajectories(const Clip& clip, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  TrajectorySet out;
  for (const auto& player : clip.offense()) {
    Trajectory t;
    for (std::size_t f = 0; f < clip.frames.size(); f += static_cast<std::size_t>(stride)) {
      const Point2 p = clip.court.canonical(clip.position(player.player_id, f), clip.attack_direction);
      t.samples.push_back({clip.frames[f].frame_index,
                           {std::clamp(p.x / clip.court.length, 0.0, 1.0), std::clamp(p.y / clip.court.width, 0.0, 1.0)}});
    }
    out.push_back(std::move(t));
  }
  return out;
}

double clip_distance(const TrajectorySet& query, const ReferenceClip& ref, const DistanceParams& params) {
  if (query.size() != 5)
    throw std::invalid_argument(fmt::format("clip distance needs 5 trajectories, got {}", query.size()));
  std::vector<std::vector<Point2>> q, r;
  for (const auto& t : query) q.push_back(positions(t));
  for (const auto& t : ref.trajectories) r.push_back(positions(t));

  if (params.correspondence == Correspondence::FixedSlot) {
    double total = 0.0;
    for (std::size_t i = 0; i < 5; ++i) total += fastdtw(q[i], r[i], params.radius);
    return total;
  }
  CostMatrix cost(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) cost(i, j) = fastdtw(q[i], r[j], params.radius);
  return hungarian(cost).cost;
}

TacticLabel knn_vote(std::span<const Neighbor> sorted, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > sorted.size())
    throw std::invalid_argument(fmt::format("k={} outside [1, {}]", k, sorted.size()));
  std::map<TacticLabel, std::pair<int, double>> tally;  // votes, distance sum
  for (int i = 0; i < k; ++i) {
    auto& [votes, sum] = tally[sorted[static_cast<std::size_t>(i)].label];
    ++votes;
    sum += sorted[static_cast<std::size_t>(i)].distance;
  }
  // std::map iterates in enum order, so a strict comparison keeps the earliest label on full ties.
  TacticLabel best = tally.begin()->first;
  int best_votes = -1;
  double best_mean = 0.0;
  for (const auto& [label, vs] : tally) {
    const double mean = vs.second / vs.first;
    if (vs.first > best_votes || (vs.first == best_votes && mean < best_mean)) {
      best = label;
      best_votes = vs.first;
      best_mean = mean;
    }
  }
  return best;
}

namespace {

void sort_neighbors(std::vector<Neighbor>& n) {
  std::sort(n.begin(), n.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
  });
}

}  // namespace

TacticPrediction knn_classify(const TrajectorySet& query, const ReferenceSet& refs, int k,
                              const DistanceParams& params) {
  if (refs.clips.empty()) throw std::invalid_argument("reference set is empty");
  if (k < 1 || static_cast<std::size_t>(k) > refs.clips.size())
    throw std::invalid_argument(fmt::format("k={} outside [1, {}]", k, refs.clips.size()));
  TacticPrediction out;
  out.k = k;
  out.neighbors.reserve(refs.clips.size());
  for (std::size_t i = 0; i < refs.clips.size(); ++i)
    out.neighbors.push_back({refs.clips[i].label, clip_distance(query, refs.clips[i], params), i});
  sort_neighbors(out.neighbors);
  out.label = knn_vote(out.neighbors, k);
  return out;
}

CrossValidationReport cross_validate(const ReferenceSet& refs, int folds, int k, const DistanceParams& params,
                                     std::uint64_t seed) {
  const std::size_t n = refs.clips.size();
  if (folds < 2) throw std::invalid_argument("cross validation needs at least 2 folds");
  if (n < static_cast<std::size_t>(folds))
    throw std::invalid_argument(fmt::format("{} clips is fewer than {} folds", n, folds));

  // Stratified assignment: shuffle each label's clips, then deal them round-robin across folds.
  std::mt19937_64 rng(seed);
  std::vector<int> fold_of(n, 0);
  std::size_t dealt = 0;
  for (TacticLabel label : kAllTactics) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (refs.clips[i].label == label) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t idx : members) fold_of[idx] = static_cast<int>(dealt++ % static_cast<std::size_t>(folds));
  }

  std::vector<TrajectorySet> queries(n);
  for (std::size_t i = 0; i < n; ++i)
    queries[i] = TrajectorySet(refs.clips[i].trajectories.begin(), refs.clips[i].trajectories.end());

  CrossValidationReport report;
  report.folds = folds;
  report.k = k;
  report.seed = seed;
  report.params = params;

  ConfusionMatrix& cm = report.matrix;
  for (TacticLabel label : kAllTactics)
    if (std::any_of(refs.clips.begin(), refs.clips.end(), [&](const ReferenceClip& c) { return c.label == label; }))
      cm.labels.push_back(label);
  auto label_pos = [&](TacticLabel l) {
    return static_cast<std::size_t>(std::find(cm.labels.begin(), cm.labels.end(), l) - cm.labels.begin());
  };
  cm.counts.assign(cm.labels.size(), std::vector<int>(cm.labels.size(), 0));

  std::size_t correct_total = 0;
  for (int fold = 0; fold < folds; ++fold) {
    std::size_t correct = 0;
    std::size_t held = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (fold_of[q] != fold) continue;
      std::vector<Neighbor> neighbors;
      for (std::size_t r = 0; r < n; ++r)
        if (fold_of[r] != fold) neighbors.push_back({refs.clips[r].label, clip_distance(queries[q], refs.clips[r], params), r});
      if (static_cast<std::size_t>(k) > neighbors.size())
        throw std::invalid_argument(fmt::format("k={} exceeds training fold size {}", k, neighbors.size()));
      sort_neighbors(neighbors);
      const TacticLabel predicted = knn_vote(neighbors, k);
      cm.counts[label_pos(refs.clips[q].label)][label_pos(predicted)]++;
      ++held;
      if (predicted == refs.clips[q].label) ++correct;
    }
    correct_total += correct;
    report.fold_accuracies.push_back(held == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(held));
  }

  cm.rows.assign(cm.labels.size(), std::vector<double>(cm.labels.size(), 0.0));
  for (std::size_t t = 0; t < cm.labels.size(); ++t) {
    const int total = std::accumulate(cm.counts[t].begin(), cm.counts[t].end(), 0);
    if (total == 0) continue;
    for (std::size_t p = 0; p < cm.labels.size(); ++p)
      cm.rows[t][p] = static_cast<double>(cm.counts[t][p]) / static_cast<double>(total);
  }
  cm.accuracy = static_cast<double>(correct_total) / static_cast<double>(n);
  return report;
}

nlohmann::json to_json(const TacticPrediction& p, std::size_t max_neighbors) {
  nlohmann::json neighbors = nlohmann::json::array();
  for (std::size_t i = 0; i < p.neighbors.size() && i < max_neighbors; ++i)
    neighbors.push_back({{"label", std::string(code(p.neighbors[i].label))},
                         {"distance", p.neighbors[i].distance},
                         {"index", p.neighbors[i].index}});
  return {{"label", std::string(code(p.label))},
          {"name", std::string(display_name(p.label))},
          {"k", p.k},
          {"neighbors", std::move(neighbors)}};
}

nlohmann::json to_json(const CrossValidationReport& r) {
  nlohmann::json labels = nlohmann::json::array();
  for (TacticLabel l : r.matrix.labels) labels.push_back(std::string(code(l)));
  return {{"labels", std::move(labels)},
          {"matrix", r.matrix.rows},
          {"counts", r.matrix.counts},
          {"accuracy", r.matrix.accuracy},
          {"fold_accuracies", r.fold_accuracies},
          {"params",
           {{"folds", r.folds},
            {"k", r.k},
            {"seed", r.seed},
            {"radius", r.params.radius},
            {"correspondence", std::string(to_string(r.params.correspondence))}}}};
}

}  // namespace courtside
