#include "salfuse/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "salfuse/estimators.hpp"
#include "salfuse/fmap_io.hpp"
#include "salfuse/fusion.hpp"
#include "salfuse/metrics.hpp"
#include "salfuse/parallel.hpp"
#include "salfuse/pgm_io.hpp"
#include "salfuse/report.hpp"
#include "salfuse/rng.hpp"
#include "salfuse/synth.hpp"

namespace fs = std::filesystem;

namespace salfuse {

namespace {

std::uint64_t effective_seed(const Config& config, const RunOptions& options) {
    return options.seed.value_or(config.get_u64("run.seed", 1));
}

fs::path ensure_out_dir(const RunOptions& options) {
    if (options.out_dir.empty()) throw Error(Errc::BadInput, "output directory not set");
    fs::create_directories(options.out_dir);
    return fs::path(options.out_dir);
}

std::ofstream open_out(const fs::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw Error(Errc::BadInput, "cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const fs::path& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw Error(Errc::BadInput, "cannot open for reading: " + path.string());
    return in;
}

std::vector<std::string> sorted_pgm_files(const fs::path& dir) {
    if (!fs::is_directory(dir))
        throw Error(Errc::BadInput, "expected a directory of PGM frames at " + dir.string());
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

// Maps name:weight pairs from the config onto the spec's feature order,
// rescaling to a proper mixture.
std::vector<double> schedule_row(const Config& config, const std::string& key,
                                 const std::vector<std::string>& feature_names) {
    std::vector<double> row(feature_names.size(), 0.0);
    double sum = 0.0;
    for (const auto& [name, value] : config.get_weighted_list(key)) {
        const auto it = std::find(feature_names.begin(), feature_names.end(), name);
        if (it == feature_names.end())
            throw Error(Errc::BadInput, "config: `" + key + "` names unknown feature `" + name + "`");
        if (value < 0.0)
            throw Error(Errc::BadInput, "config: `" + key + "` has a negative weight");
        row[static_cast<std::size_t>(it - feature_names.begin())] = value;
        sum += value;
    }
    if (!(sum > 0.0))
        throw Error(Errc::BadInput, "config: `" + key + "` defines an empty mixture");
    for (double& v : row) v /= sum;
    return row;
}

struct Dataset {
    fs::path dir;
    SceneGeometry geometry;
    std::vector<VideoEntry> videos;
    GazeTable gaze;
};

Dataset load_dataset(const Config& config) {
    Dataset ds;
    ds.dir = config.require("data.dir");
    ds.geometry = geometry_from_config(config);
    {
        auto in = open_in(ds.dir / "videos.csv");
        ds.videos = read_videos_csv(in);
    }
    {
        auto in = open_in(ds.dir / "gaze.csv");
        ds.gaze = parse_gaze_csv(in, ds.geometry).table;
    }
    return ds;
}

}  // namespace

std::vector<VideoEntry> read_videos_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::MissingHeader, "empty videos CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "video_id,category,n_frames")
        throw Error(Errc::MissingHeader, "unexpected videos CSV header");
    std::vector<VideoEntry> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw Error(Errc::BadInput, "videos CSV: expected 3 fields");
        VideoEntry e;
        e.video_id = line.substr(0, c1);
        e.category = line.substr(c1 + 1, c2 - c1 - 1);
        e.n_frames = std::atoi(line.c_str() + c2 + 1);
        if (e.video_id.empty() || e.n_frames < 1)
            throw Error(Errc::BadInput, "videos CSV: malformed row `" + line + "`");
        out.push_back(std::move(e));
    }
    return out;
}

void write_videos_csv(std::ostream& out, const std::vector<VideoEntry>& videos) {
    out << "video_id,category,n_frames\n";
    for (const VideoEntry& v : videos)
        out << v.video_id << ',' << v.category << ',' << v.n_frames << '\n';
}

void run_synth(const Config& config, const RunOptions& options) {
    const SceneGeometry geometry = geometry_from_config(config);
    const std::uint64_t seed = effective_seed(config, options);
    const fs::path out_dir = ensure_out_dir(options);

    std::vector<std::string> categories = config.get_list("synth.categories");
    if (categories.empty()) categories = {"default"};
    const int videos_per_category = config.get_int("synth.videos_per_category", 1);
    const int n_frames = config.get_int("synth.n_frames", 50);
    const int n_observers = config.get_int("synth.n_observers", 15);
    const int switch_frame = config.get_int("synth.switch_frame", 15);

    struct Job {
        VideoEntry entry;
        SyntheticSpec spec;
    };
    std::vector<Job> jobs;
    std::uint64_t video_counter = 0;
    for (const std::string& category : categories) {
        for (int v = 0; v < videos_per_category; ++v) {
            char name[64];
            std::snprintf(name, sizeof(name), "%s_v%02d", category.c_str(), v + 1);
            Job job;
            job.entry = VideoEntry{name, category, n_frames};
            job.spec = standard_layout_spec(geometry, n_frames, n_observers,
                                            Rng::mix(seed, ++video_counter));
            const std::string p2_key = config.has("synth.period2_weights." + category)
                                           ? "synth.period2_weights." + category
                                           : "synth.period2_weights";
            const std::vector<double> w1 =
                schedule_row(config, "synth.period1_weights", job.spec.feature_names);
            const std::vector<double> w2 = config.has(p2_key)
                                               ? schedule_row(config, p2_key, job.spec.feature_names)
                                               : w1;
            for (int t = 0; t < n_frames; ++t)
                job.spec.weight_schedule.push_back(t < switch_frame ? w1 : w2);
            jobs.push_back(std::move(job));
        }
    }

    std::vector<GazeTable> tables(jobs.size());
    parallel_for(jobs.size(), options.jobs, [&](std::size_t i) {
        const Job& job = jobs[i];
        const FeatureStack stack = make_synthetic_stack(job.spec);
        store_fmap_file(stack, (out_dir / (job.entry.video_id + ".fmap")).string());
        tables[i] = sample_gaze_table(stack, job.spec, job.entry.video_id);
    });

    GazeTable all;
    all.geometry = geometry;
    std::vector<VideoEntry> videos;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        videos.push_back(jobs[i].entry);
        all.records.insert(all.records.end(), tables[i].records.begin(), tables[i].records.end());
    }
    {
        auto out = open_out(out_dir / "videos.csv");
        write_videos_csv(out, videos);
    }
    {
        auto out = open_out(out_dir / "gaze.csv");
        write_gaze_csv(out, all);
    }
    {
        auto out = open_out(out_dir / "truth.csv");
        out << "video_id,category,frame_index,feature,weight\n";
        char buf[64];
        for (const Job& job : jobs)
            for (int t = 0; t < job.spec.n_frames; ++t)
                for (std::size_t k = 0; k < job.spec.feature_names.size(); ++k) {
                    std::snprintf(buf, sizeof(buf), "%d,%s,%.12g", t,
                                  job.spec.feature_names[k].c_str(),
                                  job.spec.weight_schedule[static_cast<std::size_t>(t)][k]);
                    out << job.entry.video_id << ',' << job.entry.category << ',' << buf << '\n';
                }
    }
    std::cout << "synth: wrote " << videos.size() << " videos x " << n_frames << " frames to "
              << out_dir.string() << '\n';
}

namespace {

Raster raster_from_file(const std::string& path, const SceneGeometry& g) {
    Raster r = read_pgm_file(path);
    if (r.width != g.width_px || r.height != g.height_px)
        throw Error(Errc::DimensionMismatch, "PGM dimensions at " + path + " do not match geometry");
    return r;
}

}  // namespace

void run_features(const Config& config, const RunOptions& options) {
    const SceneGeometry geometry = geometry_from_config(config);
    const fs::path out_dir = ensure_out_dir(options);

    const std::vector<std::string> names = config.get_list("features.names");
    if (names.empty()) throw Error(Errc::BadInput, "config: features.names is required");

    std::vector<VideoEntry> videos;
    for (const std::string& item : config.get_list("videos.list")) {
        const std::size_t colon = item.find(':');
        VideoEntry e;
        e.video_id = colon == std::string::npos ? item : item.substr(0, colon);
        e.category = colon == std::string::npos ? "default" : item.substr(colon + 1);
        if (e.video_id.empty())
            throw Error(Errc::BadInput, "config: videos.list has an empty video id");
        videos.push_back(std::move(e));
    }
    if (videos.empty()) throw Error(Errc::BadInput, "config: videos.list is required");

    const GaborBankSpec gabor;  // defaults; the loader path covers custom banks

    for (VideoEntry& video : videos) {
        // Per-feature sources. A precomputed FMAP takes precedence; luma and
        // mask directories follow the <root>/<video_id>/ convention.
        std::map<std::string, FeatureStack> loaded;
        std::map<std::string, std::vector<std::string>> pgm_sources;
        int n_frames = config.get_int("features.n_frames", 0);

        for (const std::string& name : names) {
            const std::string fmap_key = "features." + name + ".fmap_dir";
            if (config.has(fmap_key)) {
                const fs::path path = fs::path(config.require(fmap_key)) / (video.video_id + ".fmap");
                if (!fs::exists(path))
                    throw Error(Errc::BadInput, "missing FMAP input: " + path.string());
                FeatureStack stack = load_fmap_file(path.string(), geometry);
                if (stack.feature_index(name) < 0)
                    throw Error(Errc::BadInput,
                                "FMAP at " + path.string() + " lacks feature `" + name + "`");
                n_frames = n_frames == 0 ? stack.n_frames() : n_frames;
                loaded.emplace(name, std::move(stack));
            } else if (name == feature_names::kStatic || name == feature_names::kDynamic) {
                const std::string key = "features." + name + ".luma_dir";
                const fs::path dir = fs::path(config.require(key)) / video.video_id;
                if (!fs::is_directory(dir))
                    throw Error(Errc::BadInput, "missing luma directory: " + dir.string());
                auto files = sorted_pgm_files(dir);
                if (files.empty())
                    throw Error(Errc::BadInput, "no PGM frames in " + dir.string());
                n_frames = n_frames == 0 ? static_cast<int>(files.size()) : n_frames;
                pgm_sources.emplace(name, std::move(files));
            } else if (name == feature_names::kFaces) {
                const fs::path dir =
                    fs::path(config.require("features.faces.mask_dir")) / video.video_id;
                if (!fs::is_directory(dir))
                    throw Error(Errc::BadInput, "missing face mask directory: " + dir.string());
                auto files = sorted_pgm_files(dir);
                if (files.empty())
                    throw Error(Errc::BadInput, "no PGM masks in " + dir.string());
                n_frames = n_frames == 0 ? static_cast<int>(files.size()) : n_frames;
                pgm_sources.emplace(name, std::move(files));
            } else if (name != feature_names::kCenterBias && name != feature_names::kUniform) {
                throw Error(Errc::BadInput, "feature `" + name + "` needs features." + name +
                                                ".fmap_dir (no computed builder)");
            }
        }
        if (n_frames < 1)
            throw Error(Errc::BadInput,
                        "config: features.n_frames is required when every feature is computed");
        for (const auto& [name, files] : pgm_sources)
            if (static_cast<int>(files.size()) < n_frames)
                throw Error(Errc::BadInput,
                            "feature `" + name + "`: only " + std::to_string(files.size()) +
                                " PGM files under " +
                                fs::path(files.front()).parent_path().string() + ", need " +
                                std::to_string(n_frames));

        FeatureStack stack(geometry, names, n_frames);
        std::map<std::string, std::vector<Raster>> lumas;  // shared by static/dynamic
        for (const auto& [name, files] : pgm_sources) {
            if (name != feature_names::kStatic && name != feature_names::kDynamic) continue;
            auto& frames = lumas[config.require("features." + name + ".luma_dir")];
            if (!frames.empty()) continue;
            frames.reserve(static_cast<std::size_t>(n_frames));
            for (int t = 0; t < n_frames; ++t)
                frames.push_back(raster_from_file(files[static_cast<std::size_t>(t)], geometry));
        }

        for (std::size_t k = 0; k < names.size(); ++k) {
            const std::string& name = names[k];
            const int kf = static_cast<int>(k);
            if (auto it = loaded.find(name); it != loaded.end()) {
                const int src = it->second.feature_index(name);
                if (it->second.n_frames() < n_frames)
                    throw Error(Errc::BadInput, "FMAP input for `" + name + "` is too short");
                for (int t = 0; t < n_frames; ++t)
                    stack.set_map(t, kf, it->second.map(t, src));
            } else if (name == feature_names::kCenterBias) {
                stack.set_time_independent_map(
                    kf, center_bias_map(geometry,
                                        config.get_double("features.center_bias.sigma_x_deg", 2.3),
                                        config.get_double("features.center_bias.sigma_y_deg", 1.9)));
            } else if (name == feature_names::kUniform) {
                stack.set_time_independent_map(kf, uniform_map(geometry));
            } else if (name == feature_names::kFaces) {
                const auto& files = pgm_sources.at(name);
                const double blur = config.get_double("features.faces.blur_sigma_deg", 0.0);
                std::vector<DensityMap> maps(static_cast<std::size_t>(n_frames));
                parallel_for(static_cast<std::size_t>(n_frames), options.jobs, [&](std::size_t t) {
                    maps[t] = face_map(raster_from_file(files[t], geometry), geometry, blur).map;
                });
                for (int t = 0; t < n_frames; ++t)
                    stack.set_map(t, kf, std::move(maps[static_cast<std::size_t>(t)]));
            } else {
                const auto& frames = lumas.at(config.require("features." + name + ".luma_dir"));
                std::vector<DensityMap> maps(static_cast<std::size_t>(n_frames));
                if (name == feature_names::kStatic) {
                    parallel_for(static_cast<std::size_t>(n_frames), options.jobs,
                                 [&](std::size_t t) {
                                     maps[t] = static_saliency(frames[t], geometry, gabor).map;
                                 });
                } else {
                    parallel_for(static_cast<std::size_t>(n_frames), options.jobs,
                                 [&](std::size_t t) {
                                     // 5-frame window centered on t, clamped at the ends.
                                     std::vector<Raster> window;
                                     window.reserve(5);
                                     for (int i = static_cast<int>(t) - 2;
                                          i <= static_cast<int>(t) + 2; ++i)
                                         window.push_back(frames[static_cast<std::size_t>(
                                             std::clamp(i, 0, n_frames - 1))]);
                                     maps[t] = dynamic_saliency(window, geometry).map;
                                 });
                }
                for (int t = 0; t < n_frames; ++t)
                    stack.set_map(t, kf, std::move(maps[static_cast<std::size_t>(t)]));
            }
        }

        store_fmap_file(stack, (out_dir / (video.video_id + ".fmap")).string());
        video.n_frames = n_frames;
        std::cout << "features: " << video.video_id << ": " << names.size() << " features x "
                  << n_frames << " frames\n";
    }

    auto out = open_out(out_dir / "videos.csv");
    write_videos_csv(out, videos);
}

void run_fit(const Config& config, const RunOptions& options) {
    const Dataset ds = load_dataset(config);
    const fs::path out_dir = ensure_out_dir(options);

    std::vector<std::string> method_names = config.get_list("fit.methods");
    if (method_names.empty()) method_names = {"LASSO_BIC"};
    std::vector<FitMethod> methods;
    for (const std::string& m : method_names) methods.push_back(fit_method_from_name(m));

    FitOptions fit_options;
    fit_options.downsample = config.get_int("fit.downsample", 4);
    fit_options.n_lambda = config.get_int("fit.n_lambda", 100);
    fit_options.nonnegative_ls = config.get_bool("fit.nonnegative_ls", false);
    fit_options.em_tol = config.get_double("fit.em_tol", 1e-6);
    fit_options.em_max_iter = config.get_int("fit.em_max_iter", 500);
    fit_options.kernel_sigma_deg = config.get_double("fit.kernel_sigma_deg", 1.0);

    if (ds.gaze.records.empty())
        std::cerr << "warning: gaze table is empty; writing an empty weight database\n";

    struct Item {
        const VideoEntry* video = nullptr;
        int frame = 0;
        FitMethod method = FitMethod::LS;
    };
    struct Outcome {
        bool ok = false;
        WeightVector weights;
        std::string skip_reason;
    };

    WeightDatabase db;
    std::vector<std::pair<Item, std::string>> skipped;
    for (const VideoEntry& video : ds.videos) {
        const FeatureStack stack =
            load_fmap_file((ds.dir / (video.video_id + ".fmap")).string(), ds.geometry);
        std::vector<Item> items;
        for (int t = 0; t < video.n_frames; ++t)
            for (FitMethod m : methods) items.push_back(Item{&video, t, m});
        std::vector<Outcome> outcomes(items.size());
        parallel_for(items.size(), options.jobs, [&](std::size_t i) {
            const Item& item = items[i];
            try {
                outcomes[i].weights =
                    fit_frame(item.frame, ds.gaze, item.video->video_id, stack, item.method,
                              fit_options)
                        .weights;
                outcomes[i].ok = true;
            } catch (const Error& e) {
                outcomes[i].skip_reason = errc_name(e.code());
            }
        });
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (outcomes[i].ok)
                db.insert(fit_method_name(items[i].method), video.category, video.video_id,
                          items[i].frame, std::move(outcomes[i].weights));
            else
                skipped.emplace_back(items[i], outcomes[i].skip_reason);
        }
    }

    {
        auto out = open_out(out_dir / "weights.csv");
        db.write_csv(out);
    }
    {
        auto out = open_out(out_dir / "skipped.csv");
        out << "video_id,frame_index,method,reason\n";
        for (const auto& [item, reason] : skipped)
            out << item.video->video_id << ',' << item.frame << ',' << fit_method_name(item.method)
                << ',' << reason << '\n';
    }
    std::cout << "fit: " << db.size() << " weight vectors, " << skipped.size()
              << " skipped frames (downsample " << fit_options.downsample << ")\n";
}

void run_evaluate(const Config& config, const RunOptions& options) {
    const Dataset ds = load_dataset(config);
    const fs::path out_dir = ensure_out_dir(options);

    std::vector<std::string> scheme_names = config.get_list("eval.schemes");
    if (scheme_names.empty())
        scheme_names = {"MARAT2009", "MEAN", "MARAT2013", "LEARNED_EM", "LEARNED_LASSO"};
    std::vector<Scheme> schemes;
    for (const std::string& s : scheme_names) schemes.push_back(scheme_from_name(s));

    const double kld_epsilon = config.get_double("eval.kld_epsilon", 1e-12);
    const std::string kld_dir = config.get_or("eval.kld_direction", "eye_to_model");
    if (kld_dir != "eye_to_model" && kld_dir != "model_to_eye")
        throw Error(Errc::BadInput, "eval.kld_direction must be eye_to_model or model_to_eye");
    const bool eye_to_model = kld_dir == "eye_to_model";
    const double kernel_sigma_deg = config.get_double("eval.kernel_sigma_deg", 1.0);
    const int split = config.get_int("eval.period_split", 15);
    MaratOptions marat;
    marat.renormalize_center_product =
        config.get_bool("eval.marat_renormalize_center_product", true);
    LooOptions loo;
    loo.plateau_start = config.get_int("eval.loo_plateau_start", 15);

    const bool needs_db =
        std::any_of(schemes.begin(), schemes.end(),
                    [](Scheme s) { return s == Scheme::LearnedEm || s == Scheme::LearnedLasso; });
    WeightDatabase db;
    if (needs_db) {
        const std::string weights_csv = config.require("eval.weights_csv");
        auto in = open_in(weights_csv);
        db = WeightDatabase::read_csv(in);
    }

    std::vector<std::vector<FrameScore>> per_video(ds.videos.size());
    parallel_for(ds.videos.size(), options.jobs, [&](std::size_t vi) {
        const VideoEntry& video = ds.videos[vi];
        const FeatureStack stack =
            load_fmap_file((ds.dir / (video.video_id + ".fmap")).string(), ds.geometry);
        for (int t = 0; t < video.n_frames; ++t) {
            const std::vector<Point> fixations = ds.gaze.positions(video.video_id, t);
            if (fixations.empty()) continue;
            const DensityMap p_eye = eye_position_density(fixations, ds.geometry, kernel_sigma_deg);
            for (const Scheme scheme : schemes) {
                DensityMap sal;
                switch (scheme) {
                    case Scheme::Mean: {
                        std::vector<double> ones(static_cast<std::size_t>(stack.n_features()), 1.0);
                        sal = fuse_linear(stack, t, make_weight_vector(stack.names(), ones));
                        break;
                    }
                    case Scheme::Marat2009:
                        sal = fuse_marat2009(stack.map(t, feature_names::kStatic),
                                             stack.map(t, feature_names::kDynamic),
                                             stack.map(t, feature_names::kCenterBias), marat);
                        break;
                    case Scheme::Marat2013:
                        sal = fuse_marat2013(stack.map(t, feature_names::kStatic),
                                             stack.map(t, feature_names::kDynamic),
                                             stack.map(t, feature_names::kCenterBias),
                                             stack.map(t, feature_names::kFaces), marat);
                        break;
                    case Scheme::LearnedEm:
                        sal = fuse_learned(stack, t, db, "EM", video.category, video.video_id, loo);
                        break;
                    case Scheme::LearnedLasso:
                        sal = fuse_learned(stack, t, db, "LASSO_BIC", video.category,
                                           video.video_id, loo);
                        break;
                }
                FrameScore score;
                score.scheme = scheme_name(scheme);
                score.category = video.category;
                score.video_id = video.video_id;
                score.frame_index = t;
                score.nss = nss(sal, fixations);
                score.kld = eye_to_model ? kld(p_eye, sal, kld_epsilon)
                                         : kld(sal, p_eye, kld_epsilon);
                per_video[vi].push_back(std::move(score));
            }
        }
    });

    std::vector<FrameScore> scores;
    for (auto& v : per_video) scores.insert(scores.end(), v.begin(), v.end());
    {
        auto out = open_out(out_dir / "scores.csv");
        write_scores_csv(out, scores);
    }
    {
        const std::vector<PeriodSummary> summaries = period_summary(scores, split);
        auto out = open_out(out_dir / "period_summary.csv");
        write_period_summary_csv(out, summaries);
    }
    std::cout << "evaluate: " << scores.size() << " frame scores across " << ds.videos.size()
              << " videos\n";
}

void run_report(const Config& config, const RunOptions& options) {
    const fs::path out_dir = ensure_out_dir(options);
    bool wrote_anything = false;

    if (config.has("report.weights_csv")) {
        auto in = open_in(config.require("report.weights_csv"));
        const WeightDatabase db = WeightDatabase::read_csv(in);
        if (db.empty())
            throw Error(Errc::BadInput, "weight CSV holds no rows");
        for (const auto& [method, category] : db.method_categories()) {
            const std::vector<Series> series = weight_series(db, method, category);
            const std::string svg =
                render_line_chart("weights " + category + " (" + method + ")", "frame",
                                  "normalized weight", series);
            auto out = open_out(out_dir / ("weights_" + category + "_" + method + ".svg"));
            out << svg;
            wrote_anything = true;
        }
    }

    if (config.has("report.scores_csv")) {
        auto in = open_in(config.require("report.scores_csv"));
        const std::vector<FrameScore> scores = read_scores_csv(in);
        if (scores.empty())
            throw Error(Errc::BadInput, "score CSV holds no rows");
        for (MetricKind metric : {MetricKind::Nss, MetricKind::Kld}) {
            const std::vector<Series> series = metric_series(scores, metric);
            const std::string svg = render_line_chart(
                std::string(metric == MetricKind::Nss ? "NSS" : "KLD") + " per frame", "frame",
                metric == MetricKind::Nss ? "NSS" : "KLD (nats)", series);
            auto out = open_out(out_dir /
                                (std::string("metrics_") + metric_name(metric) + ".svg"));
            out << svg;
            wrote_anything = true;
        }
    }

    if (!wrote_anything)
        throw Error(Errc::BadInput,
                    "report needs report.weights_csv and/or report.scores_csv in the config");
    std::cout << "report: charts written to " << out_dir.string() << '\n';
}

}  // namespace salfuse
