// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "courtside/core.hpp"
#include "courtside/events.hpp"

namespace courtside {

struct DetectionParams {
  double possession_radius = 2.5;  // ft
  int possession_hold = 3;         // frames
  int marking_hysteresis = 5;      // frames
  double screen_proximity = 4.0;   // ft
  double cut_speed = 6.0;          // ft/s
  double cut_window = 0.5;         // s

  /// Throws std::invalid_argument unless every field is positive.
  void check() const;
};

/// Ball owner at one frame.
struct Owner {
  enum class State { Dead, InFlight, Player };
  State state = State::Dead;
  std::string player_id;  // set iff state == Player

  static Owner dead() { return {}; }
  static Owner in_flight() { return {State::InFlight, {}}; }
  static Owner player(std::string id) { return {State::Player, std::move(id)}; }
  bool is_player() const { return state == State::Player; }
  bool is(std::string_view id) const { return state == State::Player && player_id == id; }

  friend bool operator==(const Owner&, const Owner&) = default;
};

/// One owner per entry of clip.frames.
struct PossessionTimeline {
  std::vector<Owner> owners;
};

/// Defender -> offensive player pairs, sorted by defender id.
struct MarkingMap {
  std::vector<std::pair<std::string, std::string>> pairs;
  double cost = 0.0;  // total defender-attacker distance at the frame the map was evaluated

  const std::string* offense_of(std::string_view defender) const;
  friend bool operator==(const MarkingMap& a, const MarkingMap& b) { return a.pairs == b.pairs; }
};

/// Stable marking per entry of clip.frames.
struct MarkingTimeline {
  std::vector<MarkingMap> frames;
};

PossessionTimeline compute_possession(const Clip& clip, const DetectionParams& params);

/// Minimum-total-distance matching of defenders to attackers at one frame position, ties
/// broken lexicographically by defender id then offense id.
MarkingMap optimal_marking(const Clip& clip, std::size_t frame_pos);

/// Marking that only switches after a strictly better assignment persists for
/// `marking_hysteresis` consecutive frames.
MarkingTimeline compute_marking_timeline(const Clip& clip, const DetectionParams& params);

/// Stable marking at `frame` (a frame_index). Throws std::out_of_range for unknown frames.
MarkingMap compute_marking(const Clip& clip, int frame, const DetectionParams& params = {});

std::vector<ActionEvent> detect_pass(const Clip& clip, const PossessionTimeline& possession);
std::vector<ActionEvent> detect_shoot(const Clip& clip, const PossessionTimeline& possession);
/// Runs of frames where an off-ball attacker's net displacement over `cut_window` reaches
/// `cut_speed` and the start and end regions differ. Dips shorter than the window do not end a run.
std::vector<ActionEvent> detect_cut(const Clip& clip, const PossessionTimeline& possession,
                                    const DetectionParams& params);
std::vector<ActionEvent> detect_screen(const Clip& clip, const PossessionTimeline& possession,
                                       const MarkingTimeline& marking, const DetectionParams& params);

/// All four detectors, sorted with chronological_less.
std::vector<ActionEvent> detect_all(const Clip& clip, const DetectionParams& params = {});

}  // namespace courtside
