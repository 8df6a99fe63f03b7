// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "courtside/core.hpp"
#include "courtside/ingestion.hpp"

namespace courtside {

enum class Correspondence { FixedSlot, OptimalAssignment };
std::string_view to_string(Correspondence c);
std::optional<Correspondence> parse_correspondence(std::string_view text);

struct DistanceParams {
  int radius = 10;
  Correspondence correspondence = Correspondence::OptimalAssignment;
};

/// The five offensive trajectories of a clip, normalized into [0,1]^2.
using TrajectorySet = std::vector<Trajectory>;

/// Offensive players in roster order, mirrored so the offense attacks left, scaled by court
/// length and width. `stride` keeps every stride-th frame (1 keeps all).
TrajectorySet normalize_trajectories(const Clip& clip, int stride = 1);

/// Sum of slot-wise FastDTW costs, or the cheapest one-to-one pairing of the 5x5 cost matrix.
/// Throws std::invalid_argument unless the query has five trajectories.
double clip_distance(const TrajectorySet& query, const ReferenceClip& ref, const DistanceParams& params);

struct Neighbor {
  TacticLabel label = TacticLabel::F23;
  double distance = 0.0;
  std::size_t index = 0;  // position in the reference set
};

struct TacticPrediction {
  TacticLabel label = TacticLabel::F23;
  std::vector<Neighbor> neighbors;  // every reference, ascending distance
  int k = 1;
};

/// Majority label among the first k of `sorted`; ties go to the smaller mean distance, then
/// to enum order.
TacticLabel knn_vote(std::span<const Neighbor> sorted, int k);

TacticPrediction knn_classify(const TrajectorySet& query, const ReferenceSet& refs, int k,
                              const DistanceParams& params);

struct ConfusionMatrix {
  std::vector<TacticLabel> labels;          // labels present in the data, enum order
  std::vector<std::vector<int>> counts;     // [true][predicted]
  std::vector<std::vector<double>> rows;    // counts normalized per true label
  double accuracy = 0.0;
};

struct CrossValidationReport {
  ConfusionMatrix matrix;
  std::vector<double> fold_accuracies;
  int folds = 5;
  int k = 3;
  std::uint64_t seed = 0;
  DistanceParams params;
};

/// Seeded stratified k-fold evaluation of knn_classify.
CrossValidationReport cross_validate(const ReferenceSet& refs, int folds, int k, const DistanceParams& params,
                                     std::uint64_t seed);

nlohmann::json to_json(const TacticPrediction& p, std::size_t max_neighbors = 10);
nlohmann::json to_json(const CrossValidationReport& r);

}  // namespace courtside
