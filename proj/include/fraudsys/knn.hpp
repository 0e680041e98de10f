#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraudsys/graph.hpp"

namespace fraudsys {

struct LabeledExample {
    FeatureVector features;
    bool fraud = false;
    std::string worker_id; // empty for honest rows; enables per-worker splits
};

// k-nearest-neighbour fraud scorer with per-dimension min-max
// normalization fitted on the training set. Immutable after training;
// scoring is thread-safe.
class KnnModel {
public:
    // Requires both classes present and 1 <= k <= examples.size().
    static KnnModel train(const std::vector<LabeledExample>& examples, size_t k);

    // Fraction of fraud labels among the k nearest neighbours under
    // Euclidean distance in normalized space; ties broken by insertion
    // order. Always a multiple of 1/k.
    double score(const FeatureVector& f) const;

    size_t k() const { return k_; }
    size_t size() const { return points_.size(); }

    // Versioned binary format, magic "FSKNN1", little-endian payload.
    void save(std::ostream& out) const;
    void save_file(const std::filesystem::path& path) const;
    static KnnModel load(std::istream& in);
    static KnnModel load_file(const std::filesystem::path& path);

private:
    KnnModel() = default;

    std::array<double, FeatureVector::kDims> normalize(
        const std::array<double, FeatureVector::kDims>& raw) const;

    size_t k_ = 0;
    std::array<double, FeatureVector::kDims> mins_{};
    std::array<double, FeatureVector::kDims> maxs_{};
    std::vector<std::array<double, FeatureVector::kDims>> points_;
    std::vector<uint8_t> labels_;
};

struct CvMetrics {
    double fpr = 0;
    double fnr = 0;
    double accuracy = 0;
    size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

// Stratified k-fold cross validation with a seeded shuffle. Fraud is the
// positive class; scores threshold at 0.5. A fold split that strands a
// class is reshuffled with the next seed, failing after ten attempts.
CvMetrics cross_validate(const std::vector<LabeledExample>& examples, size_t folds,
                         size_t k, uint64_t seed = 1);

} // namespace fraudsys
