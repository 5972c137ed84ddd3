#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "salfuse/config.hpp"

namespace salfuse {

struct RunOptions {
    std::string out_dir;
    std::optional<std::uint64_t> seed;  // overrides run.seed from the config
    int jobs = 1;
};

// Dataset directory contract shared by the subcommands:
//   videos.csv            `video_id,category,n_frames`
//   gaze.csv              gaze-ingest CSV
//   <video_id>.fmap       per-video feature stacks
struct VideoEntry {
    std::string video_id;
    std::string category;
    int n_frames = 0;
};

std::vector<VideoEntry> read_videos_csv(std::istream& in);
void write_videos_csv(std::ostream& out, const std::vector<VideoEntry>& videos);

// synth: generate a seeded synthetic dataset (fmaps + gaze + truth schedule).
void run_synth(const Config& config, const RunOptions& options);

// features: build per-video FMAP stacks from computed maps, PGM sequences and
// precomputed FMAP inputs.
void run_features(const Config& config, const RunOptions& options);

// fit: learn per-frame weights for every configured method; writes
// weights.csv and skipped.csv.
void run_fit(const Config& config, const RunOptions& options);

// evaluate: score the configured fusion schemes per frame (NSS/KLD) under
// leave-one-out weights; writes scores.csv and period_summary.csv.
void run_evaluate(const Config& config, const RunOptions& options);

// report: render weight-evolution and metric-evolution SVG charts.
void run_report(const Config& config, const RunOptions& options);

}  // namespace salfuse
