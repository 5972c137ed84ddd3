#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "salfuse/gaze.hpp"
#include "salfuse/grid.hpp"

namespace salfuse {

// Mean z-scored saliency value at the on-screen fixation pixels
// (nearest-pixel lookup, population standard deviation). A flat map scores 0.
// Throws Error(NoValidFixations) when no fixation is on-screen.
double nss(const DensityMap& saliency, std::span<const Point> fixations);

enum class KldDirection { EyeToModel, ModelToEye };

// Kullback-Leibler divergence in nats: sum over pixels with p > 0 of
// p * ln(p / (q + epsilon)), with p the eye-position density and q the model
// saliency in the default direction.
double kld(const DensityMap& p_eye, const DensityMap& q_saliency, double epsilon = 1e-12);

struct FrameScore {
    std::string scheme;
    std::string category;
    std::string video_id;
    int frame_index = 0;
    double nss = 0.0;
    double kld = 0.0;
};

void write_scores_csv(std::ostream& out, std::span<const FrameScore> scores);
std::vector<FrameScore> read_scores_csv(std::istream& in);

enum class Period { First15, Rest };
enum class MetricKind { Nss, Kld };

const char* period_name(Period p);
const char* metric_name(MetricKind m);

struct PeriodSummary {
    std::string scheme;
    Period period = Period::First15;
    MetricKind metric = MetricKind::Nss;
    double mean = 0.0;
    double sem = 0.0;  // sample sd / sqrt(n); 0 when n == 1
    int n = 0;         // number of videos
};

// Per scheme x period x metric, mean and standard error over per-video period
// averages (the video is the unit of analysis). Frames with index < split
// fall in the first period.
std::vector<PeriodSummary> period_summary(std::span<const FrameScore> scores, int split = 15);

void write_period_summary_csv(std::ostream& out, std::span<const PeriodSummary> summaries);

// Convenience lookup; throws Error(BadInput) when the combination is absent.
const PeriodSummary& find_summary(std::span<const PeriodSummary> summaries,
                                  const std::string& scheme, Period period, MetricKind metric);

}  // namespace salfuse
