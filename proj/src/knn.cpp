#include "fraudsys/knn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fraudsys {

static constexpr size_t kDims = FeatureVector::kDims;
static constexpr char kMagic[6] = {'F', 'S', 'K', 'N', 'N', '1'};

KnnModel KnnModel::train(const std::vector<LabeledExample>& examples, size_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k > examples.size()) throw std::invalid_argument("k exceeds training set size");
    bool any_fraud = false, any_honest = false;
    for (const auto& e : examples) (e.fraud ? any_fraud : any_honest) = true;
    if (!any_fraud || !any_honest) {
        throw std::invalid_argument("training set must contain both classes");
    }

    KnnModel m;
    m.k_ = k;
    m.mins_.fill(std::numeric_limits<double>::infinity());
    m.maxs_.fill(-std::numeric_limits<double>::infinity());
    for (const auto& e : examples) {
        auto a = e.features.as_array();
        for (size_t d = 0; d < kDims; ++d) {
            m.mins_[d] = std::min(m.mins_[d], a[d]);
            m.maxs_[d] = std::max(m.maxs_[d], a[d]);
        }
    }
    m.points_.reserve(examples.size());
    m.labels_.reserve(examples.size());
    for (const auto& e : examples) {
        m.points_.push_back(m.normalize(e.features.as_array()));
        m.labels_.push_back(e.fraud ? 1 : 0);
    }
    return m;
}

std::array<double, kDims> KnnModel::normalize(const std::array<double, kDims>& raw) const {
    std::array<double, kDims> out{};
    for (size_t d = 0; d < kDims; ++d) {
        double range = maxs_[d] - mins_[d];
        // A constant training dimension maps everything to 0.
        out[d] = range > 0 ? (raw[d] - mins_[d]) / range : 0.0;
    }
    return out;
}

double KnnModel::score(const FeatureVector& f) const {
    if (points_.empty()) throw std::logic_error("model not trained");
    auto q = normalize(f.as_array());

    // (squared distance, insertion index); stable tie order.
    std::vector<std::pair<double, size_t>> dist(points_.size());
    for (size_t i = 0; i < points_.size(); ++i) {
        double s = 0;
        for (size_t d = 0; d < kDims; ++d) {
            double diff = points_[i][d] - q[d];
            s += diff * diff;
        }
        dist[i] = {s, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k_), dist.end());
    size_t fraud = 0;
    for (size_t i = 0; i < k_; ++i) fraud += labels_[dist[i].second];
    return static_cast<double>(fraud) / static_cast<double>(k_);
}

static void put_u32(std::ostream& out, uint32_t v) {
    uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

static void put_f64(std::ostream& out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

static uint32_t get_u32(std::istream& in) {
    uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

static double get_f64(std::istream& in) {
    uint8_t b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void KnnModel::save(std::ostream& out) const {
    out.write(kMagic, 6);
    put_u32(out, static_cast<uint32_t>(k_));
    put_u32(out, static_cast<uint32_t>(kDims));
    put_u32(out, static_cast<uint32_t>(points_.size()));
    for (size_t d = 0; d < kDims; ++d) put_f64(out, mins_[d]);
    for (size_t d = 0; d < kDims; ++d) put_f64(out, maxs_[d]);
    for (size_t i = 0; i < points_.size(); ++i) {
        for (size_t d = 0; d < kDims; ++d) put_f64(out, points_[i][d]);
        put_f64(out, labels_[i] ? 1.0 : 0.0);
    }
    if (!out) throw std::runtime_error("model write failed");
}

void KnnModel::save_file(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    save(out);
}

KnnModel KnnModel::load(std::istream& in) {
    char magic[6];
    in.read(magic, 6);
    if (!in || std::memcmp(magic, kMagic, 6) != 0) {
        throw std::runtime_error("not a FSKNN1 model file");
    }
    KnnModel m;
    m.k_ = get_u32(in);
    uint32_t dims = get_u32(in);
    if (dims != kDims) throw std::runtime_error("model dimension mismatch");
    uint32_t n = get_u32(in);
    if (m.k_ < 1 || m.k_ > n) throw std::runtime_error("corrupt model header");
    for (size_t d = 0; d < kDims; ++d) m.mins_[d] = get_f64(in);
    for (size_t d = 0; d < kDims; ++d) m.maxs_[d] = get_f64(in);
    m.points_.resize(n);
    m.labels_.resize(n);
    for (uint32_t i = 0; i < n; ++i) {
        for (size_t d = 0; d < kDims; ++d) m.points_[i][d] = get_f64(in);
        m.labels_[i] = get_f64(in) >= 0.5 ? 1 : 0;
    }
    if (!in) throw std::runtime_error("model truncated");
    return m;
}

KnnModel KnnModel::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load(in);
}

CvMetrics cross_validate(const std::vector<LabeledExample>& examples, size_t folds,
                         size_t k, uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("folds must be >= 2");
    if (examples.size() < folds) throw std::invalid_argument("fewer examples than folds");

    std::vector<size_t> assignment(examples.size());
    for (int attempt = 0; attempt < 10; ++attempt) {
        // Stratified: shuffle within each class, deal round-robin.
        std::mt19937_64 rng(seed + static_cast<uint64_t>(attempt));
        std::vector<size_t> fraud_idx, honest_idx;
        for (size_t i = 0; i < examples.size(); ++i) {
            (examples[i].fraud ? fraud_idx : honest_idx).push_back(i);
        }
        std::shuffle(fraud_idx.begin(), fraud_idx.end(), rng);
        std::shuffle(honest_idx.begin(), honest_idx.end(), rng);
        size_t f = 0;
        for (size_t i : fraud_idx) assignment[i] = f++ % folds;
        for (size_t i : honest_idx) assignment[i] = f++ % folds;

        // Every fold's training partition needs both classes.
        bool ok = true;
        for (size_t fold = 0; fold < folds && ok; ++fold) {
            bool train_fraud = false, train_honest = false;
            for (size_t i = 0; i < examples.size(); ++i) {
                if (assignment[i] == fold) continue;
                (examples[i].fraud ? train_fraud : train_honest) = true;
            }
            ok = train_fraud && train_honest;
        }
        if (ok) break;
        if (attempt == 9) throw std::runtime_error("cannot stratify folds: class too small");
    }

    CvMetrics m;
    for (size_t fold = 0; fold < folds; ++fold) {
        std::vector<LabeledExample> train;
        std::vector<size_t> test;
        for (size_t i = 0; i < examples.size(); ++i) {
            if (assignment[i] == fold) {
                test.push_back(i);
            } else {
                train.push_back(examples[i]);
            }
        }
        KnnModel model = KnnModel::train(train, std::min(k, train.size()));
        for (size_t i : test) {
            bool predicted = model.score(examples[i].features) >= 0.5;
            bool actual = examples[i].fraud;
            if (predicted && actual) ++m.tp;
            else if (predicted && !actual) ++m.fp;
            else if (!predicted && actual) ++m.fn;
            else ++m.tn;
        }
    }
    size_t total = m.tp + m.tn + m.fp + m.fn;
    m.fpr = (m.fp + m.tn) ? static_cast<double>(m.fp) / static_cast<double>(m.fp + m.tn) : 0;
    m.fnr = (m.fn + m.tp) ? static_cast<double>(m.fn) / static_cast<double>(m.fn + m.tp) : 0;
    m.accuracy = total ? static_cast<double>(m.tp + m.tn) / static_cast<double>(total) : 0;
    return m;
}

} // namespace fraudsys
