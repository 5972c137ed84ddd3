#include "salfuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>

namespace salfuse {

double nss(const DensityMap& saliency, std::span<const Point> fixations) {
    const SceneGeometry& g = saliency.geometry;
    const double n = static_cast<double>(saliency.size());
    double mean = 0.0;
    for (double v : saliency.values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : saliency.values) {
        const double d = v - mean;
        var += d * d;
    }
    var /= n;  // population variance: the map's pixels are the whole population
    const double sd = std::sqrt(var);

    double acc = 0.0;
    std::size_t used = 0;
    for (const Point& p : fixations) {
        if (!on_screen(p, g)) continue;
        const int x = std::min(g.width_px - 1, std::max(0, static_cast<int>(std::lround(p.x))));
        const int y = std::min(g.height_px - 1, std::max(0, static_cast<int>(std::lround(p.y))));
        ++used;
        if (sd > 0.0) acc += (saliency.at(x, y) - mean) / sd;
    }
    if (used == 0)
        throw Error(Errc::NoValidFixations, "all fixations are off-screen");
    return sd > 0.0 ? acc / static_cast<double>(used) : 0.0;
}

double kld(const DensityMap& p_eye, const DensityMap& q_saliency, double epsilon) {
    if (p_eye.geometry != q_saliency.geometry)
        throw Error(Errc::GeometryMismatch, "KLD inputs disagree in geometry");
    double acc = 0.0;
    for (std::size_t i = 0; i < p_eye.size(); ++i) {
        const double p = p_eye.values[i];
        if (p > 0.0) acc += p * std::log(p / (q_saliency.values[i] + epsilon));
    }
    return acc;
}

const char* period_name(Period p) { return p == Period::First15 ? "FIRST_15" : "REST"; }
const char* metric_name(MetricKind m) { return m == MetricKind::Nss ? "nss" : "kld"; }

void write_scores_csv(std::ostream& out, std::span<const FrameScore> scores) {
    out << "scheme,category,video_id,frame_index,nss,kld\n";
    char buf[128];
    for (const FrameScore& s : scores) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g", s.frame_index, s.nss, s.kld);
        out << s.scheme << ',' << s.category << ',' << s.video_id << ',' << buf << '\n';
    }
}

std::vector<FrameScore> read_scores_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::MissingHeader, "empty score CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "scheme,category,video_id,frame_index,nss,kld")
        throw Error(Errc::MissingHeader, "unexpected score CSV header");
    std::vector<FrameScore> scores;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') { f.push_back(cur); cur.clear(); }
            else cur.push_back(ch);
        }
        f.push_back(cur);
        if (f.size() != 6)
            throw Error(Errc::BadInput, "score CSV row " + std::to_string(line_no) +
                                            ": expected 6 fields");
        FrameScore s;
        s.scheme = f[0];
        s.category = f[1];
        s.video_id = f[2];
        char* end = nullptr;
        const long frame = std::strtol(f[3].c_str(), &end, 10);
        if (end != f[3].c_str() + f[3].size())
            throw Error(Errc::BadInput, "score CSV row " + std::to_string(line_no) +
                                            ": bad frame index");
        s.frame_index = static_cast<int>(frame);
        s.nss = std::strtod(f[4].c_str(), nullptr);
        s.kld = std::strtod(f[5].c_str(), nullptr);
        scores.push_back(std::move(s));
    }
    return scores;
}

std::vector<PeriodSummary> period_summary(std::span<const FrameScore> scores, int split) {
    if (scores.empty())
        throw Error(Errc::BadInput, "period_summary: no scores");

    // scheme -> video -> per-period accumulators
    struct Acc {
        double nss_sum = 0.0, kld_sum = 0.0;
        int count = 0;
    };
    std::map<std::string, std::map<std::string, Acc>> by_period[2];
    for (const FrameScore& s : scores) {
        const int period = s.frame_index < split ? 0 : 1;
        Acc& a = by_period[period][s.scheme][s.video_id];
        a.nss_sum += s.nss;
        a.kld_sum += s.kld;
        ++a.count;
    }

    std::vector<PeriodSummary> out;
    for (int period = 0; period < 2; ++period) {
        for (const auto& [scheme, videos] : by_period[period]) {
            for (MetricKind metric : {MetricKind::Nss, MetricKind::Kld}) {
                std::vector<double> video_means;
                for (const auto& [video, acc] : videos) {
                    const double sum = metric == MetricKind::Nss ? acc.nss_sum : acc.kld_sum;
                    video_means.push_back(sum / acc.count);
                }
                PeriodSummary ps;
                ps.scheme = scheme;
                ps.period = period == 0 ? Period::First15 : Period::Rest;
                ps.metric = metric;
                ps.n = static_cast<int>(video_means.size());
                double mean = 0.0;
                for (double v : video_means) mean += v;
                mean /= video_means.size();
                ps.mean = mean;
                if (video_means.size() > 1) {
                    double ss = 0.0;
                    for (double v : video_means) ss += (v - mean) * (v - mean);
                    const double sd = std::sqrt(ss / (video_means.size() - 1));
                    ps.sem = sd / std::sqrt(static_cast<double>(video_means.size()));
                }
                out.push_back(std::move(ps));
            }
        }
    }
    return out;
}

void write_period_summary_csv(std::ostream& out, std::span<const PeriodSummary> summaries) {
    out << "scheme,metric,period,mean,sem,n\n";
    char buf[96];
    for (const PeriodSummary& s : summaries) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%d", s.mean, s.sem, s.n);
        out << s.scheme << ',' << metric_name(s.metric) << ',' << period_name(s.period) << ','
            << buf << '\n';
    }
}

const PeriodSummary& find_summary(std::span<const PeriodSummary> summaries,
                                  const std::string& scheme, Period period, MetricKind metric) {
    for (const PeriodSummary& s : summaries)
        if (s.scheme == scheme && s.period == period && s.metric == metric) return s;
    throw Error(Errc::BadInput, "no summary for scheme `" + scheme + "`");
}

}  // namespace salfuse
