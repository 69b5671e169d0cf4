#include "semd/recognition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <random>

#include "semd/io.hpp"
#include "semd/serialize.hpp"
#include "semd/synth.hpp"

namespace fs = std::filesystem;

namespace semd {

std::string face_dataset_root(const std::string& explicit_root) {
    if (!explicit_root.empty()) return explicit_root;
    if (const char* env = std::getenv("SERIAL_EMD_DATASET"); env && *env) return env;
    throw DatasetNotFound(
        "dataset not found: no path given and SERIAL_EMD_DATASET is not set");
}

FaceDataset load_face_dataset(const std::string& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw DatasetNotFound("dataset not found: '" + root + "' is not a directory");

    FaceDataset ds;
    for (std::size_t subject = 1;; ++subject) {
        const fs::path dir = fs::path(root) / ("s" + std::to_string(subject));
        if (!fs::is_directory(dir, ec)) break;

        std::size_t count = 0;
        for (std::size_t image = 1;; ++image) {
            const fs::path file = dir / (std::to_string(image) + ".pgm");
            if (!fs::is_regular_file(file, ec)) break;
            ds.images.push_back(read_pgm(file.string()));
            ds.labels.push_back(static_cast<int>(subject));
            ++count;
        }
        if (count == 0)
            throw InvalidInput("face dataset: '" + dir.string() + "' contains no 1.pgm");
        if (subject == 1) {
            ds.per_subject = count;
        } else if (count != ds.per_subject) {
            throw InvalidInput("face dataset: unbalanced subject s" + std::to_string(subject) +
                               " (" + std::to_string(count) + " images, expected " +
                               std::to_string(ds.per_subject) + ")");
        }
        ds.subjects = subject;
    }
    if (ds.subjects == 0)
        throw DatasetNotFound("dataset not found: '" + root + "' has no s1/ subdirectory");

    for (const Image& img : ds.images)
        if (img.rows() != ds.images.front().rows() || img.cols() != ds.images.front().cols())
            throw InvalidInput("face dataset: images have differing dimensions");
    return ds;
}

ImfTensor normalize_imf_count(const ImfTensor& t, std::size_t target) {
    if (t.modes() == 0 || target == 0)
        throw InvalidInput("normalize_imf_count: mode counts must be positive");
    if (t.modes() == target) return t;

    ImfTensor out(t.rows(), t.channels(), target);
    const std::size_t keep = std::min(t.modes(), target);
    const std::size_t slice = t.rows() * t.channels();
    std::copy(t.data().begin(), t.data().begin() + static_cast<std::ptrdiff_t>(keep * slice),
              out.mode_channel(0, 0));
    return out;
}

std::vector<double> sum_imf_range(const ImfTensor& t, std::size_t first, std::size_t last) {
    if (first < 1 || first > last || last > t.modes())
        throw InvalidInput("sum_imf_range: invalid mode range " + std::to_string(first) + ".." +
                           std::to_string(last) + " for K=" + std::to_string(t.modes()));

    std::vector<double> feature(t.rows() * t.channels(), 0.0);
    for (std::size_t k = first - 1; k < last; ++k)
        for (std::size_t r = 0; r < t.rows(); ++r)
            for (std::size_t c = 0; c < t.channels(); ++c)
                feature[r * t.channels() + c] += t(r, c, k);
    return feature;
}

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

int knn_classify(const std::vector<std::vector<double>>& train_x,
                 const std::vector<int>& train_y,
                 const std::vector<double>& query, int k) {
    if (train_x.empty()) throw InvalidInput("knn_classify: empty training set");
    if (train_x.size() != train_y.size())
        throw InvalidInput("knn_classify: feature/label count mismatch");
    if (k < 1) throw InvalidInput("knn_classify: k must be at least 1");

    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(train_x.size());
    for (std::size_t i = 0; i < train_x.size(); ++i) {
        if (train_x[i].size() != query.size())
            throw InvalidInput("knn_classify: feature dimension mismatch");
        dist.emplace_back(squared_distance(train_x[i], query), i);
    }

    const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());

    // Vote among the k nearest; ties by smallest summed distance, then label.
    std::map<int, std::pair<std::size_t, double>> votes;  // label -> (count, sum dist)
    for (std::size_t i = 0; i < kk; ++i) {
        auto& v = votes[train_y[dist[i].second]];
        v.first += 1;
        v.second += std::sqrt(dist[i].first);
    }
    int best_label = votes.begin()->first;
    std::size_t best_count = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (const auto& [label, v] : votes) {
        const bool wins = v.first > best_count ||
                          (v.first == best_count && v.second < best_sum);
        if (wins) {  // map order makes the lowest label win remaining ties
            best_label = label;
            best_count = v.first;
            best_sum = v.second;
        }
    }
    return best_label;
}

namespace {

/// Deterministic Fisher-Yates (the standard library's shuffle is not
/// pinned down across implementations).
void deterministic_shuffle(std::vector<std::size_t>& v, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[eng() % i]);
}

}  // namespace

CvResult kfold_cv(const std::vector<int>& labels, int folds, std::uint64_t seed,
                  const FoldClassifier& classify) {
    if (labels.empty()) throw InvalidInput("kfold_cv: empty label set");
    if (folds < 2) throw InvalidInput("kfold_cv: need at least 2 folds");

    std::map<int, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);

    const std::size_t per = by_label.begin()->second.size();
    for (const auto& [label, idx] : by_label)
        if (idx.size() != per)
            throw InvalidInput("kfold_cv: unbalanced dataset (label " + std::to_string(label) +
                               " has " + std::to_string(idx.size()) + " items, expected " +
                               std::to_string(per) + ")");
    if (per % static_cast<std::size_t>(folds) != 0)
        throw InvalidInput("kfold_cv: folds must divide the per-label item count");

    // Stratify: shuffle each label's items deterministically, deal them
    // across folds in equal parts.
    std::vector<std::vector<std::size_t>> fold_items(static_cast<std::size_t>(folds));
    const std::size_t chunk = per / static_cast<std::size_t>(folds);
    for (auto& [label, idx] : by_label) {
        deterministic_shuffle(idx, derive_seed(seed, static_cast<std::uint64_t>(label)));
        for (std::size_t f = 0; f < static_cast<std::size_t>(folds); ++f)
            for (std::size_t c = 0; c < chunk; ++c)
                fold_items[f].push_back(idx[f * chunk + c]);
    }

    CvResult res;
    for (std::size_t f = 0; f < static_cast<std::size_t>(folds); ++f) {
        std::vector<char> in_test(labels.size(), 0);
        for (std::size_t i : fold_items[f]) in_test[i] = 1;
        std::vector<std::size_t> train_idx;
        train_idx.reserve(labels.size() - fold_items[f].size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!in_test[i]) train_idx.push_back(i);

        std::size_t correct = 0;
        for (std::size_t i : fold_items[f])
            if (classify(train_idx, i) == labels[i]) ++correct;
        res.fold_accuracy.push_back(static_cast<double>(correct) /
                                    static_cast<double>(fold_items[f].size()));
    }

    double mean = 0.0;
    for (double a : res.fold_accuracy) mean += a;
    mean /= static_cast<double>(res.fold_accuracy.size());
    res.mean_accuracy = mean;
    if (res.fold_accuracy.size() > 1) {
        double acc = 0.0;
        for (double a : res.fold_accuracy) acc += (a - mean) * (a - mean);
        res.std_accuracy = std::sqrt(acc / static_cast<double>(res.fold_accuracy.size() - 1));
    }
    return res;
}

CvResult knn_cv(const std::vector<std::vector<double>>& features,
                const std::vector<int>& labels, int folds, int k, std::uint64_t seed) {
    if (features.size() != labels.size())
        throw InvalidInput("knn_cv: feature/label count mismatch");

    const FoldClassifier classify = [&](const std::vector<std::size_t>& train_idx,
                                        std::size_t query_idx) {
        // Nearest neighbors straight off the index lists; equal-distance and
        // vote ties follow the same rules as knn_classify.
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(train_idx.size());
        for (std::size_t i : train_idx)
            dist.emplace_back(squared_distance(features[i], features[query_idx]), i);
        const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), dist.size());
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk),
                          dist.end());
        std::map<int, std::pair<std::size_t, double>> votes;
        for (std::size_t i = 0; i < kk; ++i) {
            auto& v = votes[labels[dist[i].second]];
            v.first += 1;
            v.second += std::sqrt(dist[i].first);
        }
        int best_label = votes.begin()->first;
        std::size_t best_count = 0;
        double best_sum = std::numeric_limits<double>::infinity();
        for (const auto& [label, v] : votes)
            if (v.first > best_count || (v.first == best_count && v.second < best_sum)) {
                best_label = label;
                best_count = v.first;
                best_sum = v.second;
            }
        return best_label;
    };
    return kfold_cv(labels, folds, seed, classify);
}

void FaceFeatureBank::add(const ImfTensor& t) {
    if (t.rows() * t.channels() != dim_ || t.modes() != modes_)
        throw InvalidInput("FaceFeatureBank: tensor shape does not match the bank");

    std::vector<float> cum(modes_ * dim_, 0.0f);
    std::vector<double> running(dim_, 0.0);
    for (std::size_t k = 0; k < modes_; ++k) {
        for (std::size_t r = 0; r < t.rows(); ++r)
            for (std::size_t c = 0; c < t.channels(); ++c)
                running[r * t.channels() + c] += t(r, c, k);
        for (std::size_t p = 0; p < dim_; ++p)
            cum[k * dim_ + p] = static_cast<float>(running[p]);
    }
    cum_.push_back(std::move(cum));
}

std::vector<std::vector<double>> FaceFeatureBank::features(std::size_t first,
                                                           std::size_t last) const {
    if (first < 1 || first > last || last > modes_)
        throw InvalidInput("FaceFeatureBank: invalid mode range");

    std::vector<std::vector<double>> out(cum_.size());
    for (std::size_t img = 0; img < cum_.size(); ++img) {
        const float* hi = cum_[img].data() + (last - 1) * dim_;
        const float* lo = first >= 2 ? cum_[img].data() + (first - 2) * dim_ : nullptr;
        std::vector<double>& f = out[img];
        f.resize(dim_);
        for (std::size_t p = 0; p < dim_; ++p)
            f[p] = static_cast<double>(hi[p]) - (lo ? static_cast<double>(lo[p]) : 0.0);
    }
    return out;
}

FaceFeatureBank build_feature_bank(const FaceDataset& ds, Algorithm algo, std::size_t d,
                                   const SiftConfig& cfg, const EnsembleConfig& ens,
                                   double speckle_snr_db, std::uint64_t speckle_seed,
                                   std::size_t target_modes) {
    if (ds.images.empty()) throw InvalidInput("build_feature_bank: empty dataset");

    const Image& first = ds.images.front();
    FaceFeatureBank bank(first.rows() * first.cols(), target_modes);
    for (std::size_t i = 0; i < ds.images.size(); ++i) {
        Image img = ds.images[i];
        if (std::isfinite(speckle_snr_db))
            img = add_speckle(img, speckle_snr_db, derive_seed(speckle_seed, i));
        const ImfTensor t =
            serial_decompose(image_to_multisignal(img), d, algo, cfg, ens);
        bank.add(normalize_imf_count(t, target_modes));
    }
    return bank;
}

HeatmapResult heatmap_sweep(const FaceFeatureBank& bank, const std::vector<int>& labels,
                            int folds, int k, std::uint64_t seed) {
    if (bank.modes() != HeatmapResult::extent)
        throw InvalidInput("heatmap_sweep: bank must hold exactly 10 modes");

    HeatmapResult grid;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& row : grid.mean) row.fill(nan);
    for (auto& row : grid.stddev) row.fill(nan);

    for (std::size_t first = 1; first <= HeatmapResult::extent; ++first)
        for (std::size_t last = first; last <= HeatmapResult::extent; ++last) {
            const CvResult cv = knn_cv(bank.features(first, last), labels, folds, k, seed);
            grid.mean[first - 1][last - 1] = cv.mean_accuracy;
            grid.stddev[first - 1][last - 1] = cv.std_accuracy;
        }
    return grid;
}

}  // namespace semd
