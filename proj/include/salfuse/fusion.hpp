#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salfuse/estimators.hpp"
#include "salfuse/features.hpp"
#include "salfuse/grid.hpp"

namespace salfuse {

enum class Scheme { Mean, Marat2009, Marat2013, LearnedEm, LearnedLasso };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Per (method, category, video, frame) weight vectors, e.g. the output of a
// fitting run. All vectors within one method share feature names and order.
class WeightDatabase {
public:
    void insert(const std::string& method, const std::string& category,
                const std::string& video_id, int frame_index, WeightVector weights);

    const WeightVector* find(const std::string& method, const std::string& category,
                             const std::string& video_id, int frame_index) const;
    std::vector<std::string> videos_in_category(const std::string& method,
                                                const std::string& category) const;
    // Unique (method, category) pairs, sorted.
    std::vector<std::pair<std::string, std::string>> method_categories() const;
    // Frames recorded for one video, ascending.
    std::vector<int> frames_of(const std::string& method, const std::string& category,
                               const std::string& video_id) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // CSV interchange: `method,category,video_id,frame_index,feature,beta,beta_norm`.
    void write_csv(std::ostream& out) const;
    static WeightDatabase read_csv(std::istream& in);

private:
    using Key = std::tuple<std::string, std::string, std::string, int>;
    std::map<Key, WeightVector> entries_;
    std::map<std::string, std::vector<std::string>> method_feature_names_;
};

// S = sum_k beta_k M_k, clamped at zero and renormalized. Weights are matched
// to maps by feature name.
DensityMap fuse_linear(std::span<const DensityMap* const> maps,
                       std::span<const std::string> map_names, const WeightVector& weights);
DensityMap fuse_linear(const FeatureStack& stack, int frame, const WeightVector& weights);

// Fisher-Pearson skewness of the pixel-value distribution (population
// moments); flat maps return 0.
double map_skewness(const DensityMap& map);

struct MaratOptions {
    // Renormalize the static/dynamic maps after the center-bias product.
    bool renormalize_center_product = true;
};

// Max/skewness-weighted fusion of static and dynamic saliency with a
// multiplicative reinforcement term; negative skewness weights clamp to 0.
DensityMap fuse_marat2009(const DensityMap& static_map, const DensityMap& dynamic_map,
                          const DensityMap& center_bias, const MaratOptions& options = {});

// fuse_marat2009 plus an additive face term weighted by the face map maximum.
DensityMap fuse_marat2013(const DensityMap& static_map, const DensityMap& dynamic_map,
                          const DensityMap& center_bias, const DensityMap& face_map,
                          const MaratOptions& options = {});

struct LooOptions {
    // First frame of the stable regime used when no other video reaches the
    // queried frame.
    int plateau_start = 15;
};

// Leave-one-out weights: per-coordinate mean of beta over all other videos of
// the category at the queried frame, falling back to the mean of their
// plateau averages when none reaches it. Throws Error(EmptyCategory) when the
// category holds no other video with weights.
WeightVector loo_weights(const WeightDatabase& db, const std::string& method,
                         const std::string& category, const std::string& video_id,
                         int frame_index, const LooOptions& options = {});

DensityMap fuse_learned(const FeatureStack& stack, int frame, const WeightDatabase& db,
                        const std::string& method, const std::string& category,
                        const std::string& video_id, const LooOptions& options = {});

}  // namespace salfuse
