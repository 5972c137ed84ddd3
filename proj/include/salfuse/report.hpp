#pragma once

#include <span>
#include <string>
#include <vector>

#include "salfuse/fusion.hpp"
#include "salfuse/metrics.hpp"

namespace salfuse {

struct SeriesPoint {
    int frame = 0;
    double mean = 0.0;
    double sem = 0.0;  // sample sd / sqrt(n) across videos
    int n = 0;
};

struct Series {
    std::string name;
    std::vector<SeriesPoint> points;  // ascending frame order
};

// Per-frame mean and sem of normalized weights across the videos of one
// (method, category), one series per feature.
std::vector<Series> weight_series(const WeightDatabase& db, const std::string& method,
                                  const std::string& category);

// Per-frame mean and sem of one metric across videos, one series per scheme.
std::vector<Series> metric_series(std::span<const FrameScore> scores, MetricKind metric);

// Self-contained SVG line chart with a shaded mean +/- sem band per series.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, std::span<const Series> series);

}  // namespace salfuse
