// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "courtside/core.hpp"
#include "courtside/ingestion.hpp"

namespace courtside {

/// Per-instance perturbation of a tactic template.
struct PlayVariation {
  double time_scale = 1.0;
  Point2 offset;  // canonical-half feet, applied to every offensive waypoint
  AttackDirection direction = AttackDirection::Left;
};

/// Ten-player demo roster: home ids h1..h5, away ids a1..a5.
std::vector<PlayerRef> demo_rosters();

/// Scripted offensive template for a tactic with home on offense. Defenders shadow their
/// matchups from the hoop side. The script ends with a shot.
PlayScript tactic_play(TacticLabel label, const PlayVariation& variation = {});

/// Adds a defender per attacker (roster order) that stays `gap` feet toward the attacked hoop
/// from its man, never closer to the hoop than half the attacker's own distance.
void add_shadow_defenders(PlayScript& script, double gap = 4.0);

struct ReferenceBuildParams {
  int per_class = 15;
  double sigma = 1.5;
  std::uint64_t seed = 7;
  double fps = kDefaultFps;
  int stride = 5;
  double time_jitter = 0.1;    // time scale drawn from [1 - j, 1 + j]
  double offset_jitter = 1.5;  // feet, per axis
};

/// Reference clip from a clip's offense, normalized and subsampled by `stride`.
ReferenceClip reference_from_clip(const Clip& clip, TacticLabel label, int stride);

/// per_class noisy instances of every template, in label order.
ReferenceSet build_reference_set(const ReferenceBuildParams& params);

}  // namespace courtside
