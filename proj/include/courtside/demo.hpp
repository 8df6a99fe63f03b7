// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "courtside/ingestion.hpp"
#include "courtside/plays.hpp"
#include "courtside/service.hpp"

namespace courtside {

struct DemoParams {
  double sigma = 0.3;
  std::uint64_t seed = 11;
  double fps = kDefaultFps;
};

/// One scripted possession per tactic, with its generated clip.
struct DemoCorpus {
  std::vector<PlayScript> scripts;
  std::vector<Clip> clips;
};

DemoCorpus build_demo_corpus(const DemoParams& params = {});

/// Scripted chat rules answering both narrative steps for every analysed clip, in both
/// perspectives, plus generic ReAct rules for the stats questions used by the examples.
nlohmann::json demo_chat_script(const std::vector<ClipAnalysis>& analyses,
                                const std::map<TacticLabel, std::string>& descriptions);

/// Writes scripts/, clips/, references.json and mock_chat.json under `dir`. The
/// tactic_descriptions.json file must already be there.
void write_demo_data(const std::filesystem::path& dir, const DemoParams& demo, const ReferenceBuildParams& refs);

}  // namespace courtside
