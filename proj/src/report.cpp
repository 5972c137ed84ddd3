#include "salfuse/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace salfuse {

namespace {

SeriesPoint summarize(const std::vector<double>& values, int frame) {
    SeriesPoint p;
    p.frame = frame;
    p.n = static_cast<int>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    p.mean = mean;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        p.sem = std::sqrt(ss / (values.size() - 1)) / std::sqrt(static_cast<double>(values.size()));
    }
    return p;
}

}  // namespace

std::vector<Series> weight_series(const WeightDatabase& db, const std::string& method,
                                  const std::string& category) {
    const std::vector<std::string> videos = db.videos_in_category(method, category);
    if (videos.empty())
        throw Error(Errc::EmptyCategory, "no weights for category `" + category + "`");

    std::set<int> frames;
    for (const std::string& v : videos)
        for (int f : db.frames_of(method, category, v)) frames.insert(f);

    std::vector<std::string> features;
    std::map<std::string, Series> by_feature;
    for (int frame : frames) {
        std::map<std::string, std::vector<double>> values;  // feature -> per-video beta_norm
        for (const std::string& v : videos) {
            const WeightVector* w = db.find(method, category, v, frame);
            if (!w) continue;
            for (std::size_t j = 0; j < w->size(); ++j)
                values[w->names[j]].push_back(w->beta_norm[j]);
        }
        for (auto& [feature, vals] : values) {
            auto [it, inserted] = by_feature.try_emplace(feature);
            if (inserted) {
                it->second.name = feature;
                features.push_back(feature);
            }
            it->second.points.push_back(summarize(vals, frame));
        }
    }
    std::vector<Series> out;
    out.reserve(features.size());
    for (const std::string& f : features) out.push_back(std::move(by_feature[f]));
    return out;
}

std::vector<Series> metric_series(std::span<const FrameScore> scores, MetricKind metric) {
    std::map<std::string, std::map<int, std::vector<double>>> grouped;
    for (const FrameScore& s : scores)
        grouped[s.scheme][s.frame_index].push_back(metric == MetricKind::Nss ? s.nss : s.kld);
    std::vector<Series> out;
    for (auto& [scheme, frames] : grouped) {
        Series series;
        series.name = scheme;
        for (auto& [frame, vals] : frames) series.points.push_back(summarize(vals, frame));
        out.push_back(std::move(series));
    }
    return out;
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, std::span<const Series> series) {
    if (series.empty())
        throw Error(Errc::BadInput, "render_line_chart: no series");

    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const Series& s : series)
        for (const SeriesPoint& p : s.points) {
            x_min = std::min(x_min, static_cast<double>(p.frame));
            x_max = std::max(x_max, static_cast<double>(p.frame));
            y_min = std::min(y_min, p.mean - p.sem);
            y_max = std::max(y_max, p.mean + p.sem);
        }
    if (!(x_max >= x_min))
        throw Error(Errc::BadInput, "render_line_chart: series have no points");
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double width = 760, height = 420;
    const double ml = 64, mr = 160, mt = 40, mb = 48;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto sx = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
    auto sy = [&](double y) { return mt + ph * (1.0 - (y - y_min) / (y_max - y_min)); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
           fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(ml) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape_xml(title) + "</text>\n";

    // axes with five ticks each
    svg += "<g stroke=\"#333\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(ml + pw) +
           "\" y2=\"" + fmt(mt + ph) + "\"/>\n";
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
           fmt(mt + ph) + "\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        svg += "<line x1=\"" + fmt(sx(fx)) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(sx(fx)) +
               "\" y2=\"" + fmt(mt + ph + 4) + "\"/>\n";
        svg += "<text x=\"" + fmt(sx(fx)) + "\" y=\"" + fmt(mt + ph + 16) +
               "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">" + fmt(fx) + "</text>\n";
        svg += "<line x1=\"" + fmt(ml - 4) + "\" y1=\"" + fmt(sy(fy)) + "\" x2=\"" + fmt(ml) +
               "\" y2=\"" + fmt(sy(fy)) + "\"/>\n";
        svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(sy(fy) + 4) +
               "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333\">" + fmt(fy) + "</text>\n";
    }
    svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 12) +
           "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">" + escape_xml(x_label) +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\" transform=\"rotate(-90 16 " +
           fmt(mt + ph / 2) + ")\">" + escape_xml(y_label) + "</text>\n";
    svg += "</g>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        if (s.points.empty()) continue;
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];

        // sem band: forward upper edge, backward lower edge
        std::string band;
        for (const SeriesPoint& p : s.points)
            band += fmt(sx(p.frame)) + "," + fmt(sy(p.mean + p.sem)) + " ";
        for (auto it = s.points.rbegin(); it != s.points.rend(); ++it)
            band += fmt(sx(it->frame)) + "," + fmt(sy(it->mean - it->sem)) + " ";
        svg += "<polygon class=\"band\" data-series=\"" + escape_xml(s.name) + "\" points=\"" +
               band + "\" fill=\"" + color + "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";

        std::string line;
        for (const SeriesPoint& p : s.points) line += fmt(sx(p.frame)) + "," + fmt(sy(p.mean)) + " ";
        svg += "<polyline class=\"series\" data-series=\"" + escape_xml(s.name) + "\" points=\"" +
               line + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.8\"/>\n";

        const double ly = mt + 16 + 18 * static_cast<double>(si);
        svg += "<rect x=\"" + fmt(ml + pw + 12) + "\" y=\"" + fmt(ly - 9) +
               "\" width=\"14\" height=\"4\" fill=\"" + color + "\"/>\n";
        svg += "<text class=\"legend\" x=\"" + fmt(ml + pw + 31) + "\" y=\"" + fmt(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape_xml(s.name) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace salfuse
