#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "semd/emd.hpp"
#include "semd/types.hpp"

namespace semd {

/// A labeled face database in ORL/AT&T layout: balanced subjects, equal
/// image dimensions throughout.
struct FaceDataset {
    std::vector<Image> images;  // grouped by subject, then image number
    std::vector<int> labels;    // 1-based subject labels, parallel to images
    std::size_t subjects = 0;
    std::size_t per_subject = 0;
};

/// Resolve the dataset root: an explicit non-empty path wins, otherwise
/// the SERIAL_EMD_DATASET environment variable. Throws DatasetNotFound
/// when neither is set.
std::string face_dataset_root(const std::string& explicit_root = "");

/// Load a directory tree root/sN/M.pgm (subjects s1..sS, images 1..P each,
/// binary PGM). Throws DatasetNotFound when the root or the sN layout is
/// missing, InvalidInput when the layout is present but unbalanced or
/// dimensions differ.
FaceDataset load_face_dataset(const std::string& root);

/// Align a decomposition to exactly `target` modes: fewer modes are padded
/// with zero modes at the end, more are cut by dropping trailing modes.
/// The sum of the first min(K, target) modes is preserved exactly.
ImfTensor normalize_imf_count(const ImfTensor& t, std::size_t target = 10);

/// Elementwise sum of modes first..last (1-based, inclusive), flattened
/// row-major over (row, channel) to a feature vector of length
/// rows*channels. Throws InvalidInput for an invalid range.
std::vector<double> sum_imf_range(const ImfTensor& t, std::size_t first, std::size_t last);

/// k-nearest-neighbor vote under Euclidean distance. Ties on the vote
/// count are broken by the smallest summed distance among each tied
/// label's neighbors, then by the lowest label. Throws InvalidInput on an
/// empty training set or k < 1.
int knn_classify(const std::vector<std::vector<double>>& train_x,
                 const std::vector<int>& train_y,
                 const std::vector<double>& query, int k);

struct CvResult {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // sample std over folds
    std::vector<double> fold_accuracy;
};

/// Pluggable per-fold classifier: predict the label of `query_idx` given
/// the training items `train_idx` (both index into the caller's data).
using FoldClassifier =
    std::function<int(const std::vector<std::size_t>& train_idx, std::size_t query_idx)>;

/// Stratified k-fold cross-validation over a balanced labeled set: each
/// label's items are shuffled with a deterministic per-label generator
/// (derive_seed(seed, label)) and dealt evenly across folds, so every fold
/// holds per_subject/folds items of every subject. Throws InvalidInput
/// when labels are unbalanced or folds does not divide the per-label
/// count.
CvResult kfold_cv(const std::vector<int>& labels, int folds, std::uint64_t seed,
                  const FoldClassifier& classify);

/// kfold_cv specialized to KNN over an explicit feature matrix.
CvResult knn_cv(const std::vector<std::vector<double>>& features,
                const std::vector<int>& labels, int folds, int k, std::uint64_t seed);

/// Per-image cumulative mode sums (float storage), so any contiguous
/// IMF-range feature is one subtraction away instead of a fresh pass over
/// the decomposition. Feature layout matches sum_imf_range.
class FaceFeatureBank {
public:
    FaceFeatureBank() = default;
    FaceFeatureBank(std::size_t feature_dim, std::size_t modes)
        : dim_(feature_dim), modes_(modes) {}

    std::size_t size() const { return cum_.size(); }
    std::size_t feature_dim() const { return dim_; }
    std::size_t modes() const { return modes_; }

    /// Append one image's normalized decomposition (modes() modes,
    /// rows*channels == feature_dim()).
    void add(const ImfTensor& t);

    /// Feature matrix for the mode range first..last (1-based, inclusive).
    std::vector<std::vector<double>> features(std::size_t first, std::size_t last) const;

private:
    std::size_t dim_ = 0;
    std::size_t modes_ = 0;
    std::vector<std::vector<float>> cum_;  // per image: modes_ x dim_, cumulative
};

/// Decompose every dataset image (optionally speckled first at
/// speckle_snr_db; pass +infinity for clean images) with the serial
/// pipeline and bank the normalized modes. Image i's noise seed is
/// derive_seed(speckle_seed, i).
FaceFeatureBank build_feature_bank(const FaceDataset& ds, Algorithm algo, std::size_t d,
                                   const SiftConfig& cfg, const EnsembleConfig& ens,
                                   double speckle_snr_db, std::uint64_t speckle_seed,
                                   std::size_t target_modes = 10);

/// Accuracy grids over every IMF range: cell [first-1][last-1] holds the
/// CV mean/std for the range (first, last); cells with first > last are
/// NaN (undefined). Exactly 55 cells are defined for 10 modes.
struct HeatmapResult {
    static constexpr std::size_t extent = 10;
    std::array<std::array<double, extent>, extent> mean{};
    std::array<std::array<double, extent>, extent> stddev{};
};

HeatmapResult heatmap_sweep(const FaceFeatureBank& bank, const std::vector<int>& labels,
                            int folds, int k, std::uint64_t seed);

}  // namespace semd
