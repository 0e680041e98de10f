#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraudsys/knn.hpp"
#include "fraudsys/penalty.hpp"
#include "fraudsys/store.hpp"

namespace fraudsys {

// One log row. CSV schema (header required):
//   timestamp_ms,user_id,device_model,subject_id,category,label,worker_id
// with label in {fraud, honest} and worker_id empty for honest rows.
struct ActivityLogRow {
    int64_t timestamp_ms = 0;
    std::string user_id;
    std::string device_model;
    std::string subject_id;
    std::string category;
    bool fraud = false;
    std::string worker_id;
};

std::string log_to_csv(const std::vector<ActivityLogRow>& rows);
// Malformed rows are skipped and counted.
std::vector<ActivityLogRow> log_from_csv(std::istream& in, size_t* skipped = nullptr);

struct SynthConfig {
    size_t n_workers = 5;
    size_t accounts_per_worker = 20;
    size_t n_subjects = 50;
    size_t n_honest = 500;
    uint64_t seed = 1;
};

// Planted-community activity log: each worker's accounts co-review most of
// the worker's target subjects inside a burst campaign window, honest
// accounts sample subjects near-independently over a long background
// period that starts before any campaign. Deterministic per seed.
std::vector<ActivityLogRow> generate_synthetic(const SynthConfig& cfg);

struct SimConfig {
    PenaltyParams penalty;
    uint32_t shares_required = 4;
    size_t knn_k = 5;
    double theta = 0.5;
    size_t cv_folds = 10;
    size_t honest_train_per_fold = 200;
    uint64_t seed = 1;
    // Puzzles at or below this per-share difficulty are solved by real
    // hashing (Claim 1 spot check); larger ones sample the analytic model.
    uint64_t real_solve_max_delta = 0;
    bool drop_account_features = false;
};

struct DayPenalty {
    std::string worker_id;
    std::string date; // UTC YYYY-MM-DD
    double penalty_h = 0;
};

struct RankPenalty {
    size_t rank = 0; // i-th activity of a worker on one subject, 1-based
    size_t n = 0;
    double mean_h = 0;
    double q1_h = 0;
    double median_h = 0;
    double q3_h = 0;
};

struct SimReport {
    std::vector<DayPenalty> worker_daily;
    std::vector<RankPenalty> rank_penalties;
    std::vector<double> honest_penalties_s;
    CvMetrics cv;                        // pooled stratified k-fold CV
    std::vector<CvMetrics> fold_metrics; // leave-one-worker-out folds
    double avg_fraud_penalty_h = 0;
    double avg_honest_penalty_s = 0;
    size_t accepted_fraud = 0;
    size_t fraud_rows = 0;
    size_t honest_rows = 0;
    // Serialization guarantee (Claim 2): accepted posts per entity per UTC
    // day never exceed day/tau_min + 1.
    bool claim2_ok = true;
    size_t claim2_violations = 0;
    // Real-solve spot check (Claim 1): mean attempts / expected hashes.
    double real_solve_ratio = 0;
    size_t real_solves = 0;
    std::string fingerprint; // hash of the serialized bundle
};

// Replays the log through the graph pipeline (zero scorer) and returns
// every row's feature vector with its label; scores depend on the fold
// model but features do not.
std::vector<LabeledExample> extract_log_features(const std::vector<ActivityLogRow>& log,
                                                 const SimConfig& cfg);

// Leave-one-worker-out replay through the full pipeline with simulated
// solvers. The log must be sorted by timestamp and contain both classes.
SimReport replay(const std::vector<ActivityLogRow>& log, const SimConfig& cfg);

// As above, additionally saving the model trained on the full data set.
SimReport replay_and_export(const std::vector<ActivityLogRow>& log, const SimConfig& cfg,
                            const std::filesystem::path& model_out);

struct PayoutRow {
    std::string scenario;
    double activities_per_day = 0;
    double usd_per_day = 0;
};

struct PayoutTable {
    std::vector<PayoutRow> rows;
    bool fraud_pays_less = false;
};

// Saturated-fraudster payout: a serialized fraudster completes one
// activity per average penalty, so earns (24h / avg penalty) * price per
// day, compared against the mining baseline.
PayoutTable payout_compare(double avg_fraud_penalty_h, double price_per_fraud_usd,
                           double mining_usd_per_day);
std::string payout_csv(const PayoutTable& t);

// CSV bundle + summary under dir: summary.json, worker_daily.csv,
// rank_penalties.csv, honest_penalties.csv, summary.txt.
void write_report(const SimReport& report, const std::filesystem::path& dir);
SimReport read_report(const std::filesystem::path& dir);
std::string summarize(const SimReport& report);

} // namespace fraudsys
