// SPDX-License-Identifier: Apache-2.0
#include "courtside/cli.hpp"

#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "courtside/config.hpp"
#include "courtside/demo.hpp"
#include "courtside/ingestion.hpp"
#include "courtside/service.hpp"
#include "courtside/tactics.hpp"

namespace courtside {

namespace {

using nlohmann::json;

struct DistanceOptions {
  int radius = 10;
  std::string correspondence = "optimal_assignment";

  DistanceParams params() const { return {radius, *parse_correspondence(correspondence)}; }
};

void add_distance_options(CLI::App* cmd, DistanceOptions& d) {
  cmd->add_option("--radius", d.radius, "FastDTW radius")->check(CLI::NonNegativeNumber);
  cmd->add_option("--correspondence", d.correspondence, "Player correspondence")
      ->check(CLI::IsMember({"fixed_slot", "optimal_assignment"}));
}

void emit(std::ostream& out, const std::optional<std::string>& file, const std::string& text) {
  if (!file) {
    out << text;
    return;
  }
  std::ofstream f(*file, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", *file));
  f << text;
}

AppConfig load_config(const std::optional<std::string>& path) {
  AppConfig config = AppConfig::load(resolve_config_path(path, std::filesystem::path(COURTSIDE_DATA_DIR) / "courtside.conf"));
  config.check();
  return config;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Basketball tactic detection, explanation and overlay engine", "courtside"};
  app.require_subcommand(1);

  // analyze
  std::string clip_path;
  std::optional<std::string> refs_path;
  int k = 3;
  DistanceOptions dist;
  auto* analyze = app.add_subcommand("analyze", "Detect, filter and (with --refs) classify one clip");
  analyze->add_option("clip", clip_path, "Clip JSON file")->required();
  analyze->add_option("--refs", refs_path, "Reference set JSON file");
  analyze->add_option("--k", k, "Neighbours for the vote")->check(CLI::PositiveNumber);
  add_distance_options(analyze, dist);

  // classify
  std::string classify_refs;
  auto* classify = app.add_subcommand("classify", "Classify one clip against a reference set");
  classify->add_option("clip", clip_path, "Clip JSON file")->required();
  classify->add_option("--refs", classify_refs, "Reference set JSON file")->required();
  classify->add_option("--k", k, "Neighbours for the vote")->check(CLI::PositiveNumber);
  add_distance_options(classify, dist);

  // evaluate
  int folds = 5;
  std::uint64_t seed = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Stratified k-fold cross-validation of the classifier");
  evaluate->add_option("--refs", classify_refs, "Reference set JSON file")->required();
  evaluate->add_option("--folds", folds, "Fold count")->check(CLI::Range(2, 1000));
  evaluate->add_option("--k", k, "Neighbours for the vote")->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", seed, "Split seed");
  add_distance_options(evaluate, dist);

  // synth
  std::string script_path;
  double sigma = 0.0;
  double fps = kDefaultFps;
  std::optional<std::string> output;
  auto* synth = app.add_subcommand("synth", "Generate a clip from a scripted play");
  synth->add_option("script", script_path, "Play script JSON file")->required();
  synth->add_option("--seed", seed, "Noise seed");
  synth->add_option("--sigma", sigma, "Position noise in feet")->check(CLI::NonNegativeNumber);
  synth->add_option("--fps", fps, "Frame rate")->check(CLI::PositiveNumber);
  synth->add_option("-o,--output", output, "Write here instead of stdout");

  // synth-refs
  ReferenceBuildParams ref_params;
  auto* synth_refs = app.add_subcommand("synth-refs", "Generate a labelled reference set from the tactic templates");
  synth_refs->add_option("--per-class", ref_params.per_class, "Clips per tactic")->check(CLI::PositiveNumber);
  synth_refs->add_option("--sigma", ref_params.sigma, "Position noise in feet")->check(CLI::NonNegativeNumber);
  synth_refs->add_option("--seed", ref_params.seed, "Generator seed");
  synth_refs->add_option("--stride", ref_params.stride, "Frame subsampling")->check(CLI::PositiveNumber);
  synth_refs->add_option("-o,--output", output, "Write here instead of stdout");

  // demo-data
  std::string demo_dir;
  DemoParams demo;
  auto* demo_data = app.add_subcommand("demo-data", "Regenerate the demo corpus (scripts, clips, references, mock chat)");
  demo_data->add_option("dir", demo_dir, "Data directory holding tactic_descriptions.json")->required();
  demo_data->add_option("--seed", demo.seed, "Clip noise seed");
  demo_data->add_option("--sigma", demo.sigma, "Clip position noise in feet")->check(CLI::NonNegativeNumber);

  // explain
  std::string clip_id;
  std::string question;
  std::string perspective = "third";
  std::optional<std::string> config_path;
  auto* explain = app.add_subcommand("explain", "Answer a tactic question about a served clip");
  explain->add_option("clip_id", clip_id, "Clip id")->required();
  explain->add_option("-q,--question", question, "Question")->required();
  explain->add_option("-p,--perspective", perspective, "first or third")->check(CLI::IsMember({"first", "third"}));
  explain->add_option("--config", config_path, "Configuration file");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", config_path, "Configuration file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      std::optional<ReferenceSet> refs;
      if (refs_path) refs = load_reference_set(read_file(*refs_path));
      const ClipAnalysis a =
          analyze_clip(load_clip(read_file(clip_path)), refs ? &*refs : nullptr, {{}, {}, dist.params(), k});
      out << analysis_json(a).dump(2) << "\n";
    } else if (classify->parsed()) {
      const ReferenceSet refs = load_reference_set(read_file(classify_refs));
      const Clip clip = load_clip(read_file(clip_path));
      const TacticPrediction p = knn_classify(normalize_trajectories(clip), refs, k, dist.params());
      json j = to_json(p);
      j["clip_id"] = clip.clip_id;
      out << j.dump(2) << "\n";
    } else if (evaluate->parsed()) {
      const ReferenceSet refs = load_reference_set(read_file(classify_refs));
      const CrossValidationReport r = cross_validate(refs, folds, k, dist.params(), seed);
      out << to_json(r).dump(2) << "\n";
      err << fmt::format("accuracy {:.4f} over {} clips\n", r.matrix.accuracy, refs.clips.size());
    } else if (synth->parsed()) {
      const SyntheticPlay play = generate_synthetic_play(load_play_script(read_file(script_path)), fps, sigma, seed);
      emit(out, output, save_clip(play.clip));
    } else if (synth_refs->parsed()) {
      emit(out, output, save_reference_set(build_reference_set(ref_params)));
    } else if (demo_data->parsed()) {
      write_demo_data(demo_dir, demo, ReferenceBuildParams{});
      err << fmt::format("demo corpus written to {}\n", demo_dir);
    } else if (explain->parsed()) {
      const AppConfig config = load_config(config_path);
      const Service service(config, load_service_data(config), make_chat_factory(config.chat));
      const json body = {{"question", question}, {"perspective", perspective}};
      const HttpResponse res = service.handle({"POST", fmt::format("/api/clips/{}/ask", clip_id), {}, body.dump()});
      if (res.status != 200) {
        err << res.body << "\n";
        return kExitDataError;
      }
      out << json::parse(res.body).dump(2) << "\n";
    } else if (serve->parsed()) {
      const AppConfig config = load_config(config_path);
      const Service service(config, load_service_data(config), make_chat_factory(config.chat));
      service.serve();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace courtside
