// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "courtside/dtw.hpp"
#include "courtside/plays.hpp"
#include "courtside/tactics.hpp"
#include "support/oracles.hpp"

namespace courtside {
namespace {

using testing::brute_force_assignment;
using testing::random_walk;

ReferenceClip random_reference(std::mt19937_64& rng, TacticLabel label, std::size_t length) {
  ReferenceClip c;
  c.label = label;
  for (auto& t : c.trajectories) t = testing::as_trajectory(random_walk(rng, length, 0.03));
  return c;
}

TrajectorySet as_query(const ReferenceClip& c) { return {c.trajectories.begin(), c.trajectories.end()}; }

TEST(Normalize, CenterCourtMapsToTheMiddleOfTheUnitSquare) {
  PlayScript s;
  s.clip_id = "center";
  s.rosters = demo_rosters();
  for (const auto& p : s.rosters) s.waypoints[p.player_id] = {{0, {47, 25}}, {1, {47, 25}}};
  s.ball = {{0, "h1"}};
  const Clip c = generate_synthetic_play(s, 10, 0, 1).clip;
  const TrajectorySet t = normalize_trajectories(c);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].size(), c.frames.size());
  EXPECT_DOUBLE_EQ(t[2].samples[3].pos.x, 0.5);
  EXPECT_DOUBLE_EQ(t[2].samples[3].pos.y, 0.5);
  EXPECT_EQ(normalize_trajectories(c, 3)[0].size(), (c.frames.size() + 2) / 3);
  EXPECT_THROW(normalize_trajectories(c, 0), std::invalid_argument);
}

TEST(Normalize, RightAttackingPlayIsMirroredOntoTheLeftHalf) {
  const Clip left = generate_synthetic_play(tactic_play(TacticLabel::PD), kDefaultFps, 0, 1).clip;
  PlayVariation v;
  v.direction = AttackDirection::Right;
  const Clip right = generate_synthetic_play(tactic_play(TacticLabel::PD, v), kDefaultFps, 0, 1).clip;
  const TrajectorySet a = normalize_trajectories(left, 5);
  const TrajectorySet b = normalize_trajectories(right, 5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t i = 0; i < a[p].size(); ++i) {
      EXPECT_NEAR(a[p].samples[i].pos.x, b[p].samples[i].pos.x, 1e-9);
      EXPECT_NEAR(a[p].samples[i].pos.y, b[p].samples[i].pos.y, 1e-9);
    }
}

TEST(ClipDistance, OptimalAssignmentEqualsPermutationSearch) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const ReferenceClip q = random_reference(rng, TacticLabel::EV, 12);
    const ReferenceClip r = random_reference(rng, TacticLabel::HK, 15);
    const DistanceParams params{3, Correspondence::OptimalAssignment};
    std::vector<std::vector<double>> cost(5, std::vector<double>(5));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        cost[i][j] = fastdtw(positions(q.trajectories[i]), positions(r.trajectories[j]), params.radius);
    EXPECT_NEAR(clip_distance(as_query(q), r, params), brute_force_assignment(cost).cost, 1e-9);
    double slotwise = 0.0;
    for (std::size_t i = 0; i < 5; ++i) slotwise += cost[i][i];
    EXPECT_NEAR(clip_distance(as_query(q), r, {3, Correspondence::FixedSlot}), slotwise, 1e-9);
  }
}

TEST(ClipDistance, ShuffledSlotsDoNotMatterUnderAssignment) {
  std::mt19937_64 rng(42);
  const ReferenceClip r = random_reference(rng, TacticLabel::EV, 20);
  TrajectorySet q = as_query(r);
  std::rotate(q.begin(), q.begin() + 2, q.end());
  EXPECT_NEAR(clip_distance(q, r, {}), 0.0, 1e-12);
  EXPECT_GT(clip_distance(q, r, {10, Correspondence::FixedSlot}), 0.0);
  q.pop_back();
  EXPECT_THROW(clip_distance(q, r, {}), std::invalid_argument);
}

TEST(KnnVote, MajorityThenMeanDistanceThenEnumOrder) {
  const std::vector<Neighbor> majority = {{TacticLabel::PD, 1, 0}, {TacticLabel::HK, 2, 1}, {TacticLabel::HK, 3, 2}};
  EXPECT_EQ(knn_vote(majority, 3), TacticLabel::HK);
  EXPECT_EQ(knn_vote(majority, 1), TacticLabel::PD);
  // One vote each: PD has the smaller mean.
  EXPECT_EQ(knn_vote(majority, 2), TacticLabel::PD);
  const std::vector<Neighbor> tie = {{TacticLabel::WW, 1, 0}, {TacticLabel::EV, 3, 1}, {TacticLabel::EV, 1, 2},
                                     {TacticLabel::WW, 3, 3}};
  EXPECT_EQ(knn_vote(tie, 4), TacticLabel::EV);
  EXPECT_THROW(knn_vote(tie, 0), std::invalid_argument);
  EXPECT_THROW(knn_vote(tie, 5), std::invalid_argument);
}

TEST(Knn, NeighborsAreSortedAndTheQueryFindsItself) {
  std::mt19937_64 rng(43);
  ReferenceSet refs;
  for (TacticLabel l : kAllTactics) refs.clips.push_back(random_reference(rng, l, 10));
  const TacticPrediction p = knn_classify(as_query(refs.clips[6]), refs, 1, {});
  EXPECT_EQ(p.label, refs.clips[6].label);
  EXPECT_EQ(p.neighbors.size(), refs.clips.size());
  EXPECT_DOUBLE_EQ(p.neighbors.front().distance, 0.0);
  for (std::size_t i = 1; i < p.neighbors.size(); ++i) EXPECT_LE(p.neighbors[i - 1].distance, p.neighbors[i].distance);
  EXPECT_THROW(knn_classify(as_query(refs.clips[0]), refs, 11, {}), std::invalid_argument);
  EXPECT_THROW(knn_classify(as_query(refs.clips[0]), ReferenceSet{}, 1, {}), std::invalid_argument);
  const auto j = to_json(p, 3);
  EXPECT_EQ(j["neighbors"].size(), 3u);
}

TEST(CrossValidation, SmallSetIsReproducibleAndRowsAreDistributions) {
  ReferenceBuildParams bp;
  bp.per_class = 3;
  bp.stride = 10;
  const ReferenceSet refs = build_reference_set(bp);
  ASSERT_EQ(refs.clips.size(), 30u);
  const auto a = cross_validate(refs, 3, 1, {}, 5);
  const auto b = cross_validate(refs, 3, 1, {}, 5);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(a.fold_accuracies.size(), 3u);
  EXPECT_EQ(a.matrix.labels.size(), 10u);
  int total = 0;
  for (std::size_t r = 0; r < a.matrix.rows.size(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < a.matrix.rows[r].size(); ++c) {
      sum += a.matrix.rows[r][c];
      total += a.matrix.counts[r][c];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_EQ(total, 30);
  EXPECT_GE(a.matrix.accuracy, 0.8);
  EXPECT_THROW(cross_validate(refs, 1, 1, {}, 5), std::invalid_argument);
}

TEST(Correspondence, NamesRoundTrip) {
  for (auto c : {Correspondence::FixedSlot, Correspondence::OptimalAssignment})
    EXPECT_EQ(parse_correspondence(to_string(c)), c);
  EXPECT_FALSE(parse_correspondence("hungarian"));
}

}  // namespace
}  // namespace courtside
