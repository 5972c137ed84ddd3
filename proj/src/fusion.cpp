#include "salfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>

namespace salfuse {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Mean: return "MEAN";
        case Scheme::Marat2009: return "MARAT2009";
        case Scheme::Marat2013: return "MARAT2013";
        case Scheme::LearnedEm: return "LEARNED_EM";
        case Scheme::LearnedLasso: return "LEARNED_LASSO";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "MEAN") return Scheme::Mean;
    if (name == "MARAT2009") return Scheme::Marat2009;
    if (name == "MARAT2013") return Scheme::Marat2013;
    if (name == "LEARNED_EM") return Scheme::LearnedEm;
    if (name == "LEARNED_LASSO") return Scheme::LearnedLasso;
    throw Error(Errc::BadInput, "unknown fusion scheme `" + name + "`");
}

void WeightDatabase::insert(const std::string& method, const std::string& category,
                            const std::string& video_id, int frame_index, WeightVector weights) {
    auto [it, inserted] = method_feature_names_.try_emplace(method, weights.names);
    if (!inserted && it->second != weights.names)
        throw std::invalid_argument("WeightDatabase: feature names differ within method " + method);
    entries_[Key{method, category, video_id, frame_index}] = std::move(weights);
}

const WeightVector* WeightDatabase::find(const std::string& method, const std::string& category,
                                         const std::string& video_id, int frame_index) const {
    const auto it = entries_.find(Key{method, category, video_id, frame_index});
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> WeightDatabase::videos_in_category(const std::string& method,
                                                            const std::string& category) const {
    std::set<std::string> seen;
    for (const auto& [key, value] : entries_)
        if (std::get<0>(key) == method && std::get<1>(key) == category)
            seen.insert(std::get<2>(key));
    return {seen.begin(), seen.end()};
}

std::vector<std::pair<std::string, std::string>> WeightDatabase::method_categories() const {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [key, value] : entries_)
        seen.insert({std::get<0>(key), std::get<1>(key)});
    return {seen.begin(), seen.end()};
}

std::vector<int> WeightDatabase::frames_of(const std::string& method, const std::string& category,
                                           const std::string& video_id) const {
    std::vector<int> frames;
    for (const auto& [key, value] : entries_)
        if (std::get<0>(key) == method && std::get<1>(key) == category &&
            std::get<2>(key) == video_id)
            frames.push_back(std::get<3>(key));
    std::sort(frames.begin(), frames.end());
    return frames;
}

void WeightDatabase::write_csv(std::ostream& out) const {
    out << "method,category,video_id,frame_index,feature,beta,beta_norm\n";
    char buf[160];
    for (const auto& [key, w] : entries_) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%d,%s,%.12g,%.12g", std::get<3>(key),
                          w.names[j].c_str(), w.beta[j], w.beta_norm[j]);
            out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
                << buf << '\n';
        }
    }
}

WeightDatabase WeightDatabase::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::MissingHeader, "empty weight CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "method,category,video_id,frame_index,feature,beta,beta_norm")
        throw Error(Errc::MissingHeader, "unexpected weight CSV header");

    WeightDatabase db;
    // Rows for one (method, category, video, frame) are contiguous in our own
    // output; collect feature rows until the key changes.
    std::string cur_method, cur_category, cur_video;
    int cur_frame = -1;
    std::vector<std::string> names;
    std::vector<double> beta;
    bool have_group = false;

    auto flush = [&]() {
        if (!have_group) return;
        db.insert(cur_method, cur_category, cur_video, cur_frame,
                  make_weight_vector(names, beta));
        names.clear();
        beta.clear();
        have_group = false;
    };

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
        if (f.size() != 7)
            throw Error(Errc::BadInput, "weight CSV row " + std::to_string(line_no) +
                                            ": expected 7 fields");
        char* end = nullptr;
        const long frame_l = std::strtol(f[3].c_str(), &end, 10);
        if (end != f[3].c_str() + f[3].size())
            throw Error(Errc::BadInput, "weight CSV row " + std::to_string(line_no) +
                                            ": bad frame index");
        const int frame = static_cast<int>(frame_l);
        const double b = std::strtod(f[5].c_str(), nullptr);
        if (!have_group || f[0] != cur_method || f[1] != cur_category || f[2] != cur_video ||
            frame != cur_frame) {
            flush();
            cur_method = f[0];
            cur_category = f[1];
            cur_video = f[2];
            cur_frame = frame;
            have_group = true;
        }
        names.push_back(f[4]);
        beta.push_back(b);
    }
    flush();
    return db;
}

DensityMap fuse_linear(std::span<const DensityMap* const> maps,
                       std::span<const std::string> map_names, const WeightVector& weights) {
    if (maps.empty() || maps.size() != map_names.size())
        throw std::invalid_argument("fuse_linear: need one name per map");
    const SceneGeometry& g = maps[0]->geometry;
    std::vector<double> acc(maps[0]->size(), 0.0);
    for (std::size_t j = 0; j < maps.size(); ++j) {
        if (maps[j]->geometry != g)
            throw Error(Errc::GeometryMismatch, "fusion inputs disagree in geometry");
        const auto it = std::find(weights.names.begin(), weights.names.end(), map_names[j]);
        if (it == weights.names.end())
            throw std::invalid_argument("fuse_linear: no weight for map `" +
                                        std::string(map_names[j]) + "`");
        const double b = weights.beta[static_cast<std::size_t>(it - weights.names.begin())];
        if (b == 0.0) continue;
        const std::vector<double>& v = maps[j]->values;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += b * v[i];
    }
    return normalize_to_pdf(std::move(acc), g);  // clamps negatives, throws AllZeroMap
}

DensityMap fuse_linear(const FeatureStack& stack, int frame, const WeightVector& weights) {
    const auto maps = stack.frame_slice(frame);
    return fuse_linear(maps, stack.names(), weights);
}

double map_skewness(const DensityMap& map) {
    const double n = static_cast<double>(map.size());
    double mean = 0.0;
    for (double v : map.values) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0;
    for (double v : map.values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (!(m2 > 0.0)) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

namespace {

DensityMap center_product(const DensityMap& m, const DensityMap& c, bool renormalize) {
    if (m.geometry != c.geometry)
        throw Error(Errc::GeometryMismatch, "fusion inputs disagree in geometry");
    std::vector<double> prod(m.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = m.values[i] * c.values[i];
    if (!renormalize) return DensityMap{m.geometry, std::move(prod)};
    return normalize_to_pdf(std::move(prod), m.geometry);
}

}  // namespace

DensityMap fuse_marat2009(const DensityMap& static_map, const DensityMap& dynamic_map,
                          const DensityMap& center_bias, const MaratOptions& options) {
    const DensityMap ms = center_product(static_map, center_bias, options.renormalize_center_product);
    const DensityMap md = center_product(dynamic_map, center_bias, options.renormalize_center_product);
    const double beta_s = *std::max_element(ms.values.begin(), ms.values.end());
    const double beta_d = std::max(0.0, map_skewness(md));
    std::vector<double> acc(ms.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = beta_s * ms.values[i] + beta_d * md.values[i] +
                 beta_s * beta_d * ms.values[i] * md.values[i];
    return normalize_to_pdf(std::move(acc), ms.geometry);
}

DensityMap fuse_marat2013(const DensityMap& static_map, const DensityMap& dynamic_map,
                          const DensityMap& center_bias, const DensityMap& face_map,
                          const MaratOptions& options) {
    if (face_map.geometry != static_map.geometry)
        throw Error(Errc::GeometryMismatch, "fusion inputs disagree in geometry");
    const DensityMap base = fuse_marat2009(static_map, dynamic_map, center_bias, options);
    const double beta_f = *std::max_element(face_map.values.begin(), face_map.values.end());
    std::vector<double> acc(base.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = base.values[i] + beta_f * face_map.values[i];
    return normalize_to_pdf(std::move(acc), base.geometry);
}

WeightVector loo_weights(const WeightDatabase& db, const std::string& method,
                         const std::string& category, const std::string& video_id,
                         int frame_index, const LooOptions& options) {
    std::vector<std::string> others;
    for (const std::string& v : db.videos_in_category(method, category))
        if (v != video_id) others.push_back(v);
    if (others.empty())
        throw Error(Errc::EmptyCategory,
                    "category `" + category + "` has no other video with weights");

    std::vector<std::string> names;
    std::vector<double> acc;
    std::size_t n_used = 0;
    auto accumulate = [&](const WeightVector& w, double scale) {
        if (names.empty()) {
            names = w.names;
            acc.assign(names.size(), 0.0);
        }
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += scale * w.beta[j];
        ++n_used;
    };

    for (const std::string& other : others) {
        if (const WeightVector* w = db.find(method, category, other, frame_index))
            accumulate(*w, 1.0);
    }

    if (n_used == 0) {
        // No other video reaches this frame: use each video's plateau average
        // (frames >= plateau_start, or all of its frames when shorter).
        for (const std::string& other : others) {
            std::vector<int> frames = db.frames_of(method, category, other);
            if (frames.empty()) continue;
            std::vector<int> plateau;
            for (int f : frames)
                if (f >= options.plateau_start) plateau.push_back(f);
            if (plateau.empty()) plateau = frames;
            std::vector<double> video_acc;
            std::vector<std::string> video_names;
            for (int f : plateau) {
                const WeightVector* w = db.find(method, category, other, f);
                if (video_names.empty()) {
                    video_names = w->names;
                    video_acc.assign(video_names.size(), 0.0);
                }
                for (std::size_t j = 0; j < video_acc.size(); ++j) video_acc[j] += w->beta[j];
            }
            for (double& v : video_acc) v /= static_cast<double>(plateau.size());
            accumulate(make_weight_vector(video_names, video_acc), 1.0);
        }
    }
    if (n_used == 0)
        throw Error(Errc::EmptyCategory, "no usable weights in category `" + category + "`");

    for (double& v : acc) v /= static_cast<double>(n_used);
    return make_weight_vector(std::move(names), std::move(acc));
}

DensityMap fuse_learned(const FeatureStack& stack, int frame, const WeightDatabase& db,
                        const std::string& method, const std::string& category,
                        const std::string& video_id, const LooOptions& options) {
    return fuse_linear(stack, frame,
                       loo_weights(db, method, category, video_id, frame, options));
}

}  // namespace salfuse
