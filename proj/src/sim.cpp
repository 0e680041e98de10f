#include "fraudsys/sim.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "fraudsys/hex.hpp"
#include "fraudsys/sha256.hpp"

namespace fraudsys {

using nlohmann::json;

static constexpr int64_t kDayMs = 86400000;
static constexpr int64_t kEpochMs = 1483228800000; // 2017-01-01 UTC

// ---------------------------------------------------------------- CSV --

std::string log_to_csv(const std::vector<ActivityLogRow>& rows) {
    std::ostringstream out;
    out << "timestamp_ms,user_id,device_model,subject_id,category,label,worker_id\n";
    for (const auto& r : rows) {
        out << r.timestamp_ms << ',' << r.user_id << ',' << r.device_model << ','
            << r.subject_id << ',' << r.category << ',' << (r.fraud ? "fraud" : "honest")
            << ',' << r.worker_id << '\n';
    }
    return out.str();
}

std::vector<ActivityLogRow> log_from_csv(std::istream& in, size_t* skipped) {
    std::vector<ActivityLogRow> rows;
    size_t bad = 0;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.starts_with("timestamp_ms")) continue;
        }
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() == 6) f.push_back(""); // empty worker_id
        if (f.size() != 7) {
            ++bad;
            continue;
        }
        ActivityLogRow r;
        try {
            r.timestamp_ms = std::stoll(f[0]);
        } catch (...) {
            ++bad;
            continue;
        }
        r.user_id = f[1];
        r.device_model = f[2];
        r.subject_id = f[3];
        r.category = f[4];
        if (f[5] == "fraud") {
            r.fraud = true;
        } else if (f[5] == "honest") {
            r.fraud = false;
        } else {
            ++bad;
            continue;
        }
        r.worker_id = f[6];
        if (r.user_id.empty() || r.subject_id.empty()) {
            ++bad;
            continue;
        }
        rows.push_back(std::move(r));
    }
    if (skipped) *skipped = bad;
    return rows;
}

// ---------------------------------------------------------- generator --

std::vector<ActivityLogRow> generate_synthetic(const SynthConfig& cfg) {
    if (cfg.n_subjects < 1) throw std::invalid_argument("need at least one subject");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::vector<std::string> phones = {"Nexus 4", "Nexus 5", "LG Leon LTE"};
    auto subject_name = [](size_t i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "app%03zu", i);
        return std::string(buf);
    };
    auto category_of = [](size_t i) { return "cat" + std::to_string(i % 8); };

    std::vector<ActivityLogRow> rows;

    // Honest background: accounts appear during an initial warm-up month
    // and keep acting over the whole horizon with a mild popularity skew.
    size_t n_accounts = std::max<size_t>(1, cfg.n_honest / 3);
    size_t made = 0;
    for (size_t a = 0; a < n_accounts && made < cfg.n_honest; ++a) {
        std::string user = "h" + std::to_string(a);
        std::string device = phones[rng() % phones.size()];
        size_t quota = 1 + rng() % 5;
        if (a + 1 == n_accounts) quota = cfg.n_honest - made; // spend the remainder
        quota = std::min(quota, cfg.n_honest - made);

        double first_day = unit(rng) * 25.0;
        for (size_t i = 0; i < quota; ++i) {
            double day = i == 0 ? first_day : first_day + unit(rng) * (115.0 - first_day);
            size_t subject = static_cast<size_t>(
                std::pow(unit(rng), 1.5) * static_cast<double>(cfg.n_subjects));
            subject = std::min(subject, cfg.n_subjects - 1);
            rows.push_back({kEpochMs + static_cast<int64_t>(day * kDayMs), user, device,
                            subject_name(subject), category_of(subject), false, ""});
            ++made;
        }
    }

    // Worker campaigns: each worker bursts its accounts over most of its
    // target subjects inside a window that starts after the warm-up.
    for (size_t w = 0; w < cfg.n_workers; ++w) {
        std::string worker = "worker" + std::to_string(w);
        std::vector<size_t> targets(cfg.n_subjects);
        for (size_t i = 0; i < cfg.n_subjects; ++i) targets[i] = i;
        std::shuffle(targets.begin(), targets.end(), rng);
        size_t n_targets =
            std::max<size_t>(3, std::min(cfg.n_subjects, (cfg.n_subjects * 3 + 9) / 10));
        targets.resize(n_targets);

        double start_day = 30.0 + unit(rng) * 50.0;
        double window = 20.0 + unit(rng) * 20.0;

        for (size_t a = 0; a < cfg.accounts_per_worker; ++a) {
            std::string user = "w" + std::to_string(w) + "a" + std::to_string(a);
            std::string device = phones[rng() % phones.size()];
            double frac = 0.7 + 0.25 * unit(rng);
            for (size_t t : targets) {
                if (unit(rng) > frac) continue;
                double day = start_day + unit(rng) * window;
                rows.push_back({kEpochMs + static_cast<int64_t>(day * kDayMs), user,
                                device, subject_name(t), category_of(t), true, worker});
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const ActivityLogRow& a, const ActivityLogRow& b) {
        if (a.timestamp_ms != b.timestamp_ms) return a.timestamp_ms < b.timestamp_ms;
        if (a.user_id != b.user_id) return a.user_id < b.user_id;
        return a.subject_id < b.subject_id;
    });
    return rows;
}

// ------------------------------------------------------------- replay --

namespace {

struct SharedClock {
    std::shared_ptr<int64_t> now = std::make_shared<int64_t>(0);
    Clock fn() const {
        auto p = now;
        return [p] { return *p; };
    }
    void set(int64_t t) { *now = t; }
};

StoreConfig store_config_for(const SimConfig& cfg) {
    StoreConfig scfg;
    // Fixed simulation key; verification is exercised but not under test.
    for (int i = 0; i < 32; ++i) scfg.key[i] = static_cast<uint8_t>(0x51 + i);
    scfg.shares_required = cfg.shares_required;
    scfg.theta = cfg.theta;
    scfg.penalty = cfg.penalty;
    scfg.drop_account_features = cfg.drop_account_features;
    // Fraud clusters legitimately accumulate far ahead in replays.
    scfg.max_timeout_ahead_ms = std::numeric_limits<int64_t>::max() / 4;
    return scfg;
}

void register_principals(ServiceStore& store, const std::vector<ActivityLogRow>& log,
                         SharedClock& clk) {
    std::map<std::string, const ActivityLogRow*> first_row;
    for (const auto& r : log) {
        if (!first_row.contains(r.user_id)) first_row[r.user_id] = &r;
    }
    // Register everything at the log start so every entity's initial
    // timeout (and any cluster's merged timeout) is already expired when
    // its first activity arrives. Account creation stays the user's first
    // appearance.
    clk.set(log.front().timestamp_ms);
    for (const auto& [user, row] : first_row) {
        store.register_user(user, row->timestamp_ms);
        store.register_device(user, "dev", row->device_model, "phone");
    }
    // Ground-truth per-fraudster clusters: one shared timeout per worker.
    std::map<std::string, std::vector<std::string>> members;
    for (const auto& [user, row] : first_row) {
        if (row->fraud && !row->worker_id.empty()) {
            members[row->worker_id].push_back(user);
        }
    }
    for (const auto& [worker, users] : members) {
        store.assign_cluster("ring:" + worker, users);
    }
}

std::string utc_date(int64_t ts_ms) {
    std::time_t secs = static_cast<std::time_t>(ts_ms / 1000);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[16];
    std::strftime(buf, sizeof(buf), "%Y-%m-%d", &tm);
    return buf;
}

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0;
    size_t idx = static_cast<size_t>(
        std::llround(p * static_cast<double>(sorted.size() - 1)));
    return sorted[idx];
}

struct FoldOutcome {
    CvMetrics metrics;
    size_t claim2_violations = 0;
    double real_ratio_sum = 0;
    size_t real_solves = 0;
};

} // namespace

std::vector<LabeledExample> extract_log_features(const std::vector<ActivityLogRow>& log,
                                                 const SimConfig& cfg) {
    SharedClock clk;
    ServiceStore store(store_config_for(cfg), clk.fn());
    // Keep the graph pipeline exactly as in the penalty replay; no
    // clusters are needed for feature extraction.
    std::map<std::string, bool> seen;
    std::vector<LabeledExample> out;
    out.reserve(log.size());
    size_t index = 0;
    for (const auto& r : log) {
        if (!seen[r.user_id]) {
            seen[r.user_id] = true;
            clk.set(r.timestamp_ms);
            store.register_user(r.user_id, r.timestamp_ms);
            store.register_device(r.user_id, "dev", r.device_model, "phone");
        }
        clk.set(r.timestamp_ms);
        IssuedPuzzle p = store.submit_activity(r.user_id, "dev", r.subject_id, r.category,
                                               "row" + std::to_string(index++));
        out.push_back({p.features, r.fraud, r.worker_id});
    }
    return out;
}

static void run_fold(const std::vector<ActivityLogRow>& log, const SimConfig& cfg,
                     const KnnModel& model, const std::string& held_out_worker,
                     const std::set<size_t>& honest_training_rows, SimReport& report,
                     FoldOutcome& outcome) {
    SharedClock clk;
    ServiceStore store(store_config_for(cfg), clk.fn());
    store.set_scorer([&model](const FeatureVector& f) { return model.score(f); });
    register_principals(store, log, clk);

    ProfileTable profiles = ProfileTable::builtin_defaults();
    std::map<std::string, double> true_rate;
    for (const auto& r : log) {
        if (!true_rate.contains(r.user_id)) {
            true_rate[r.user_id] = profiles.initial_hashrate(r.device_model, "phone");
        }
    }

    std::mt19937_64 rng(cfg.seed ^ 0x5b5b5b5bull ^
                        std::hash<std::string>{}(held_out_worker));

    // Per-entity issuance recurrence (exact Sigma tau accumulation) and
    // accepted-post bookkeeping for the Claim 2 bound.
    std::map<std::string, int64_t> expected_timeout;
    std::map<std::string, int64_t> min_tau_ms;
    std::map<std::string, std::map<std::string, size_t>> posts_per_day;

    std::map<std::string, size_t> subject_rank; // per (worker|subject)
    std::map<size_t, std::vector<double>> rank_values;
    std::map<std::pair<std::string, std::string>, double> daily;
    std::vector<double> fraud_penalties_h;

    size_t index = 0;
    for (const auto& r : log) {
        clk.set(r.timestamp_ms);
        IssuedPuzzle p =
            store.submit_activity(r.user_id, "dev", r.subject_id, r.category,
                                  held_out_worker + "#row" + std::to_string(index++));

        // Exact accumulation on the issuing entity's timeout.
        std::string entity = (r.fraud && !r.worker_id.empty()) ? "ring:" + r.worker_id
                                                               : r.user_id;
        int64_t& exp_timeout = expected_timeout[entity];
        exp_timeout = std::max(exp_timeout, r.timestamp_ms) + p.penalty_ms;
        int64_t stored_timeout = (r.fraud && !r.worker_id.empty())
                                     ? store.cluster(entity)->timeout_ms
                                     : store.user(entity)->timeout_ms;
        if (stored_timeout != exp_timeout || p.puzzle.timeout_ms != exp_timeout) {
            throw std::logic_error("penalty accumulation mismatch on " + entity);
        }

        // Simulated solver: real hashing below the cutoff, the analytic
        // geometric model above it.
        double eta = true_rate[r.user_id];
        double delta = p.puzzle.difficulty.value.to_double();
        double solve_s;
        if (cfg.real_solve_max_delta > 0 && p.puzzle.difficulty.value.fits_u64() &&
            p.puzzle.difficulty.value.low64() <= cfg.real_solve_max_delta) {
            SolveOptions opts;
            opts.seed = cfg.seed ^ (index * 0x9e3779b97f4a7c15ull);
            auto sol = solve_puzzle(p.puzzle.cookie.gamma, p.puzzle.difficulty,
                                    cfg.shares_required, opts);
            solve_s = static_cast<double>(sol->attempts) / eta;
            double expected_hashes = 2.0 * cfg.shares_required * delta;
            outcome.real_ratio_sum += static_cast<double>(sol->attempts) / expected_hashes;
            outcome.real_solves += 1;

            clk.set(r.timestamp_ms + std::llround(solve_s * 1000.0));
            Verdict v = store.submit_solution(r.user_id, "dev", r.subject_id,
                                              p.activity_digest, p.puzzle.timeout_ms,
                                              p.puzzle.difficulty, p.puzzle.cookie,
                                              sol->shares, p.issued_at_ms);
            if (v.status != VerdictStatus::accepted) {
                throw std::logic_error("simulated solution rejected");
            }
        } else {
            // Sum of q exponentials, each with mean 2*delta/eta.
            std::exponential_distribution<double> exp_dist(eta / (2.0 * delta));
            solve_s = 0;
            for (uint32_t i = 0; i < cfg.shares_required; ++i) solve_s += exp_dist(rng);
            // The shares themselves are not recomputed for large puzzles;
            // account the accepted post directly.
            clk.set(r.timestamp_ms + std::llround(solve_s * 1000.0));
        }
        int64_t post_at = std::max<int64_t>(p.puzzle.timeout_ms,
                                            r.timestamp_ms +
                                                std::llround(solve_s * 1000.0));

        auto& mt = min_tau_ms[entity];
        mt = mt == 0 ? p.penalty_ms : std::min(mt, p.penalty_ms);
        posts_per_day[entity][utc_date(post_at)] += 1;

        // Statistics for held-out rows only.
        bool is_test = r.fraud ? (r.worker_id == held_out_worker)
                               : !honest_training_rows.contains(index - 1);
        bool predicted_fraud = p.fraud_score >= 0.5;
        if (is_test) {
            if (r.fraud) {
                (predicted_fraud ? outcome.metrics.tp : outcome.metrics.fn) += 1;
            } else {
                (predicted_fraud ? outcome.metrics.fp : outcome.metrics.tn) += 1;
            }
        }
        if (is_test && r.fraud) {
            double hours = static_cast<double>(p.penalty_ms) / 3.6e6;
            fraud_penalties_h.push_back(hours);
            daily[{r.worker_id, utc_date(r.timestamp_ms)}] += hours;
            size_t rank = ++subject_rank[r.worker_id + "|" + r.subject_id];
            rank_values[rank].push_back(hours);
            report.accepted_fraud += 1;
        } else if (is_test && !r.fraud) {
            report.honest_penalties_s.push_back(static_cast<double>(p.penalty_ms) /
                                                1000.0);
        }
    }

    // Claim 2: accepted posts per entity per UTC day stay within the
    // serialization bound.
    for (const auto& [entity, days] : posts_per_day) {
        int64_t tau_min = min_tau_ms[entity];
        size_t bound =
            static_cast<size_t>(kDayMs / std::max<int64_t>(1, tau_min)) + 1;
        for (const auto& [day, count] : days) {
            if (count > bound) outcome.claim2_violations += 1;
        }
    }

    for (const auto& [key, hours] : daily) {
        report.worker_daily.push_back({key.first, key.second, hours});
    }
    for (const auto& [rank, values] : rank_values) {
        auto sorted = values;
        std::sort(sorted.begin(), sorted.end());
        RankPenalty rp;
        rp.rank = rank;
        rp.n = sorted.size();
        rp.mean_h = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                    static_cast<double>(sorted.size());
        rp.q1_h = quantile(sorted, 0.25);
        rp.median_h = quantile(sorted, 0.5);
        rp.q3_h = quantile(sorted, 0.75);
        report.rank_penalties.push_back(rp);
    }
    for (double h : fraud_penalties_h) report.avg_fraud_penalty_h += h;
    report.fraud_rows += fraud_penalties_h.size();
}

SimReport replay(const std::vector<ActivityLogRow>& log, const SimConfig& cfg) {
    return replay_and_export(log, cfg, {});
}

SimReport replay_and_export(const std::vector<ActivityLogRow>& log, const SimConfig& cfg,
                            const std::filesystem::path& model_out) {
    if (log.empty()) throw std::invalid_argument("empty activity log");
    for (size_t i = 1; i < log.size(); ++i) {
        if (log[i].timestamp_ms < log[i - 1].timestamp_ms) {
            throw std::invalid_argument("log must be sorted by timestamp");
        }
    }

    std::set<std::string> workers;
    std::vector<size_t> honest_rows;
    for (size_t i = 0; i < log.size(); ++i) {
        if (log[i].fraud) {
            if (log[i].worker_id.empty()) {
                throw std::invalid_argument("fraud row without worker id");
            }
            workers.insert(log[i].worker_id);
        } else {
            honest_rows.push_back(i);
        }
    }
    if (workers.size() < 2 || honest_rows.empty()) {
        throw std::invalid_argument(
            "leave-one-worker-out replay needs >= 2 workers and honest rows");
    }

    // One deterministic pass extracts every row's features; scores depend
    // on the fold model but features do not.
    std::vector<LabeledExample> examples = extract_log_features(log, cfg);

    SimReport report;
    report.honest_rows = honest_rows.size();
    report.cv = cross_validate(examples, cfg.cv_folds,
                               std::min(cfg.knn_k, examples.size()), cfg.seed);

    size_t total_real = 0;
    double total_ratio = 0;
    size_t claim2_violations = 0;

    size_t fold_index = 0;
    for (const auto& worker : workers) {
        // Training set: every other worker's rows plus a sampled honest
        // subset; the rest of the honest rows are this fold's negatives.
        std::mt19937_64 rng(cfg.seed + 101 * (fold_index + 1));
        std::vector<size_t> shuffled = honest_rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        size_t take = std::min(cfg.honest_train_per_fold,
                               std::max<size_t>(1, shuffled.size() / 2));
        std::set<size_t> honest_training(shuffled.begin(),
                                         shuffled.begin() + static_cast<long>(take));

        std::vector<LabeledExample> train;
        for (size_t i = 0; i < log.size(); ++i) {
            if (log[i].fraud && log[i].worker_id != worker) {
                train.push_back(examples[i]);
            } else if (!log[i].fraud && honest_training.contains(i)) {
                train.push_back(examples[i]);
            }
        }
        KnnModel model = KnnModel::train(train, std::min(cfg.knn_k, train.size()));

        FoldOutcome outcome;
        run_fold(log, cfg, model, worker, honest_training, report, outcome);

        CvMetrics& m = outcome.metrics;
        size_t total = m.tp + m.tn + m.fp + m.fn;
        m.fpr = (m.fp + m.tn) ? static_cast<double>(m.fp) / (m.fp + m.tn) : 0;
        m.fnr = (m.fn + m.tp) ? static_cast<double>(m.fn) / (m.fn + m.tp) : 0;
        m.accuracy = total ? static_cast<double>(m.tp + m.tn) / total : 0;
        report.fold_metrics.push_back(m);

        claim2_violations += outcome.claim2_violations;
        total_real += outcome.real_solves;
        total_ratio += outcome.real_ratio_sum;
        ++fold_index;
    }

    report.claim2_violations = claim2_violations;
    report.claim2_ok = claim2_violations == 0;
    report.real_solves = total_real;
    report.real_solve_ratio = total_real ? total_ratio / static_cast<double>(total_real) : 0;
    if (report.fraud_rows > 0) {
        report.avg_fraud_penalty_h /= static_cast<double>(report.fraud_rows);
    }
    if (!report.honest_penalties_s.empty()) {
        report.avg_honest_penalty_s =
            std::accumulate(report.honest_penalties_s.begin(),
                            report.honest_penalties_s.end(), 0.0) /
            static_cast<double>(report.honest_penalties_s.size());
    }

    // Stable ordering for byte-identical bundles.
    std::sort(report.worker_daily.begin(), report.worker_daily.end(),
              [](const DayPenalty& a, const DayPenalty& b) {
                  return std::tie(a.worker_id, a.date) < std::tie(b.worker_id, b.date);
              });
    std::sort(report.rank_penalties.begin(), report.rank_penalties.end(),
              [](const RankPenalty& a, const RankPenalty& b) { return a.rank < b.rank; });
    std::sort(report.honest_penalties_s.begin(), report.honest_penalties_s.end());

    if (!model_out.empty()) {
        KnnModel full = KnnModel::train(examples, std::min(cfg.knn_k, examples.size()));
        full.save_file(model_out);
    }

    // Fingerprint over the serialized series.
    std::string serial = summarize(report);
    {
        std::ostringstream all;
        for (const auto& d : report.worker_daily) {
            all << d.worker_id << d.date << d.penalty_h << '\n';
        }
        for (const auto& rp : report.rank_penalties) {
            all << rp.rank << ',' << rp.median_h << '\n';
        }
        for (double v : report.honest_penalties_s) all << v << '\n';
        all << serial;
        report.fingerprint = to_hex(Sha256::hash(as_bytes_span(all.str())));
    }
    return report;
}

PayoutTable payout_compare(double avg_fraud_penalty_h, double price_per_fraud_usd,
                           double mining_usd_per_day) {
    if (!(avg_fraud_penalty_h > 0)) {
        throw std::invalid_argument("average penalty must be positive");
    }
    PayoutTable t;
    double per_day = 24.0 / avg_fraud_penalty_h;
    t.rows.push_back({"fraud", per_day, per_day * price_per_fraud_usd});
    t.rows.push_back({"mining", 0, mining_usd_per_day});
    t.fraud_pays_less = t.rows[0].usd_per_day < mining_usd_per_day;
    return t;
}

std::string payout_csv(const PayoutTable& t) {
    std::ostringstream out;
    out << "scenario,activities_per_day,usd_per_day\n";
    out.precision(10);
    for (const auto& r : t.rows) {
        out << r.scenario << ',' << r.activities_per_day << ',' << r.usd_per_day << '\n';
    }
    return out.str();
}

// ------------------------------------------------------------ reports --

std::string summarize(const SimReport& r) {
    std::ostringstream out;
    out.precision(6);
    out << "activities: " << (r.fraud_rows + r.honest_rows) << " (" << r.fraud_rows
        << " fraud tested, " << r.honest_rows << " honest)\n";
    out << "pooled cv: accuracy " << std::fixed << r.cv.accuracy << " fpr " << r.cv.fpr
        << " fnr " << r.cv.fnr << '\n';
    out << "avg fraud penalty: " << r.avg_fraud_penalty_h << " h\n";
    out << "avg honest penalty: " << r.avg_honest_penalty_s << " s\n";
    out << "accepted fraud activities: " << r.accepted_fraud << '\n';
    out << "serialization bound: " << (r.claim2_ok ? "ok" : "VIOLATED") << " ("
        << r.claim2_violations << " violations)\n";
    if (r.real_solves > 0) {
        out << "real-solve ratio: " << r.real_solve_ratio << " over " << r.real_solves
            << " puzzles\n";
    }
    return out.str();
}

void write_report(const SimReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "worker_daily.csv");
        out << "worker_id,date,penalty_hours\n";
        out.precision(10);
        for (const auto& d : r.worker_daily) {
            out << d.worker_id << ',' << d.date << ',' << d.penalty_h << '\n';
        }
    }
    {
        std::ofstream out(dir / "rank_penalties.csv");
        out << "rank,n,mean_h,q1_h,median_h,q3_h\n";
        out.precision(10);
        for (const auto& rp : r.rank_penalties) {
            out << rp.rank << ',' << rp.n << ',' << rp.mean_h << ',' << rp.q1_h << ','
                << rp.median_h << ',' << rp.q3_h << '\n';
        }
    }
    {
        std::ofstream out(dir / "honest_penalties.csv");
        out << "penalty_s\n";
        out.precision(10);
        for (double v : r.honest_penalties_s) out << v << '\n';
    }
    json folds = json::array();
    for (const auto& m : r.fold_metrics) {
        folds.push_back({{"fpr", m.fpr},
                         {"fnr", m.fnr},
                         {"accuracy", m.accuracy},
                         {"tp", m.tp},
                         {"tn", m.tn},
                         {"fp", m.fp},
                         {"fn", m.fn}});
    }
    json summary{{"avg_fraud_penalty_h", r.avg_fraud_penalty_h},
                 {"avg_honest_penalty_s", r.avg_honest_penalty_s},
                 {"accepted_fraud", r.accepted_fraud},
                 {"fraud_rows", r.fraud_rows},
                 {"honest_rows", r.honest_rows},
                 {"cv", {{"fpr", r.cv.fpr},
                         {"fnr", r.cv.fnr},
                         {"accuracy", r.cv.accuracy},
                         {"tp", r.cv.tp},
                         {"tn", r.cv.tn},
                         {"fp", r.cv.fp},
                         {"fn", r.cv.fn}}},
                 {"fold_metrics", folds},
                 {"claim2_ok", r.claim2_ok},
                 {"claim2_violations", r.claim2_violations},
                 {"real_solve_ratio", r.real_solve_ratio},
                 {"real_solves", r.real_solves},
                 {"fingerprint", r.fingerprint}};
    {
        std::ofstream out(dir / "summary.json");
        out << summary.dump(2) << '\n';
    }
    {
        std::ofstream out(dir / "summary.txt");
        out << summarize(r);
    }
}

SimReport read_report(const std::filesystem::path& dir) {
    SimReport r;
    std::ifstream sj(dir / "summary.json");
    if (!sj) throw std::runtime_error("no summary.json under " + dir.string());
    json summary = json::parse(sj);
    r.avg_fraud_penalty_h = summary.at("avg_fraud_penalty_h");
    r.avg_honest_penalty_s = summary.at("avg_honest_penalty_s");
    r.accepted_fraud = summary.at("accepted_fraud");
    r.fraud_rows = summary.at("fraud_rows");
    r.honest_rows = summary.at("honest_rows");
    r.cv.fpr = summary.at("cv").at("fpr");
    r.cv.fnr = summary.at("cv").at("fnr");
    r.cv.accuracy = summary.at("cv").at("accuracy");
    r.claim2_ok = summary.at("claim2_ok");
    r.claim2_violations = summary.at("claim2_violations");
    r.real_solve_ratio = summary.at("real_solve_ratio");
    r.real_solves = summary.at("real_solves");
    r.fingerprint = summary.at("fingerprint");
    for (const auto& m : summary.at("fold_metrics")) {
        CvMetrics cm;
        cm.fpr = m.at("fpr");
        cm.fnr = m.at("fnr");
        cm.accuracy = m.at("accuracy");
        r.fold_metrics.push_back(cm);
    }

    auto read_csv = [&](const char* name, auto fn) {
        std::ifstream in(dir / name);
        if (!in) return;
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line)) {
            if (!line.empty()) fn(line);
        }
    };
    read_csv("worker_daily.csv", [&](const std::string& line) {
        std::istringstream ls(line);
        DayPenalty d;
        std::string h;
        std::getline(ls, d.worker_id, ',');
        std::getline(ls, d.date, ',');
        std::getline(ls, h);
        d.penalty_h = std::stod(h);
        r.worker_daily.push_back(d);
    });
    read_csv("rank_penalties.csv", [&](const std::string& line) {
        std::istringstream ls(line);
        std::string f;
        RankPenalty rp;
        std::getline(ls, f, ',');
        rp.rank = std::stoul(f);
        std::getline(ls, f, ',');
        rp.n = std::stoul(f);
        std::getline(ls, f, ',');
        rp.mean_h = std::stod(f);
        std::getline(ls, f, ',');
        rp.q1_h = std::stod(f);
        std::getline(ls, f, ',');
        rp.median_h = std::stod(f);
        std::getline(ls, f, ',');
        rp.q3_h = std::stod(f);
        r.rank_penalties.push_back(rp);
    });
    read_csv("honest_penalties.csv", [&](const std::string& line) {
        r.honest_penalties_s.push_back(std::stod(line));
    });
    return r;
}

} // namespace fraudsys
