#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraudsys/cookie.hpp"
#include "fraudsys/graph.hpp"
#include "fraudsys/hashrate.hpp"
#include "fraudsys/penalty.hpp"

namespace fraudsys {

// Millisecond wall clock, injectable for tests and the replay simulator.
using Clock = std::function<int64_t()>;
Clock system_clock_ms();

// Maps an extracted feature vector to a fraud score in [0,1].
using Scorer = std::function<double(const FeatureVector&)>;

class StoreError : public std::runtime_error {
public:
    enum class Code { conflict, not_found, invalid, retry_later };

    StoreError(Code code, std::string msg, int64_t retry_after_ms = 0)
        : std::runtime_error(std::move(msg)), code_(code), retry_after_ms_(retry_after_ms) {}

    Code code() const { return code_; }
    int64_t retry_after_ms() const { return retry_after_ms_; }

private:
    Code code_;
    int64_t retry_after_ms_;
};

struct StoreConfig {
    ServiceKey key{};
    uint32_t shares_required = 4; // q
    double theta = 0.5;           // min-cut density stop
    double eta_min_hps = kDefaultEtaMinHps;
    PenaltyParams penalty;
    // A stored timeout this far past now is treated as clock skew.
    int64_t max_timeout_ahead_ms = 365ll * 86400000ll;
    // Unsolved activities are reclaimed maxf + grace after issuance.
    int64_t pending_grace_ms = 3600000;
    // Degraded-feature mode for services without activity timestamps:
    // zeroes the account-based features.
    bool drop_account_features = false;
    // Directory for the append-only log and snapshots; empty = in-memory.
    std::string data_dir;
};

struct UserRecord {
    std::string user_id;
    int64_t creation_time_ms = 0;
    std::vector<DeviceRecord> devices;
    int64_t timeout_ms = 0;
    std::optional<std::string> cluster_id;
};

struct FraudsterCluster {
    std::string cluster_id;
    std::vector<std::string> member_user_ids;
    int64_t timeout_ms = 0;
};

struct IssuedPuzzle {
    Puzzle puzzle;
    Digest32 activity_digest{};
    int64_t issued_at_ms = 0;
    double fraud_score = 0;
    int64_t penalty_ms = 0;
    FeatureVector features; // surfaced for the simulator and stats
};

struct PendingActivity {
    std::string user_id;
    std::string device_id;
    std::string subject_id;
    std::string category;
    Digest32 digest{};
    int64_t issued_at_ms = 0;
    int64_t expires_at_ms = 0;
    std::optional<int64_t> post_at_ms; // set once a solution is accepted
};

struct StoreStats {
    size_t users = 0;
    size_t clusters = 0;
    size_t subjects = 0;
    size_t activities = 0;
    size_t pending_unsolved = 0;
    size_t accepted = 0;
};

// The FraudSys provider state: per-user records with devices and a single
// accumulating timeout, per-subject co-activity graphs, fraudster
// clusters, and the pending-publication buffer. No per-puzzle state is
// ever stored; solution verification needs only the key and the submitted
// fields.
class ServiceStore {
public:
    explicit ServiceStore(StoreConfig cfg, Clock clock = system_clock_ms());
    ~ServiceStore();

    ServiceStore(const ServiceStore&) = delete;
    ServiceStore& operator=(const ServiceStore&) = delete;

    void set_scorer(Scorer scorer);
    void set_profile_table(ProfileTable table);

    UserRecord register_user(const std::string& user_id,
                             std::optional<int64_t> creation_time_ms = std::nullopt);
    DeviceRecord register_device(const std::string& user_id, const std::string& device_id,
                                 const std::string& model_name,
                                 const std::string& cpu_class);

    IssuedPuzzle submit_activity(const std::string& user_id, const std::string& device_id,
                                 const std::string& subject_id, const std::string& category,
                                 const std::string& payload);

    Verdict submit_solution(const std::string& user_id, const std::string& device_id,
                            const std::string& subject_id, const Digest32& activity_digest,
                            int64_t timeout_ms, const Difficulty& difficulty,
                            const PuzzleCookie& cookie, std::span<const Share> shares,
                            int64_t issued_at_ms);

    FraudsterCluster assign_cluster(const std::string& cluster_id,
                                    const std::vector<std::string>& user_ids);

    std::optional<UserRecord> user(const std::string& user_id) const;
    std::optional<FraudsterCluster> cluster(const std::string& cluster_id) const;
    std::optional<PendingActivity> pending(const Digest32& digest) const;
    // Digests of the subject's activities whose post time has arrived.
    std::vector<PendingActivity> published_feed(const std::string& subject_id) const;
    StoreStats stats() const;

    // Drops unsolved activities past their expiry. Returns the count.
    size_t expire_pending();

    // Writes a full snapshot and truncates the event log.
    void snapshot();

    const StoreConfig& config() const { return cfg_; }

private:
    struct UserState {
        mutable std::mutex mu;
        UserRecord rec;
    };
    struct ClusterState {
        mutable std::mutex mu;
        FraudsterCluster rec;
    };
    struct SubjectState {
        mutable std::mutex mu;
        CoActivityGraph graph;
    };
    struct StoredActivity {
        std::string user_id;
        std::string device_id;
        std::string subject_id;
        std::string category;
        int64_t timestamp_ms = 0;
    };

    std::shared_ptr<UserState> find_user(const std::string& user_id) const;
    std::shared_ptr<SubjectState> subject_state(const std::string& subject_id);
    void append_event(const std::string& line);
    void load();
    void replay_event(const std::string& line);
    void apply_activity_state(const StoredActivity& act, const Digest32& digest,
                              int64_t new_timeout_ms, const std::string& entity,
                              int64_t expires_at_ms);
    std::string snapshot_json() const;

    StoreConfig cfg_;
    Clock clock_;

    mutable std::shared_mutex registry_mu_; // users_, clusters_, subjects_ maps
    std::map<std::string, std::shared_ptr<UserState>> users_;
    std::map<std::string, std::shared_ptr<ClusterState>> clusters_;
    std::map<std::string, std::shared_ptr<SubjectState>> subjects_;

    mutable std::shared_mutex history_mu_;
    ActivityHistory history_;
    std::vector<StoredActivity> activity_log_;

    mutable std::mutex pending_mu_;
    std::unordered_map<std::string, PendingActivity> pending_; // key: digest hex
    size_t accepted_count_ = 0;

    mutable std::mutex scorer_mu_;
    Scorer scorer_;
    ProfileTable profiles_;

    std::mutex log_mu_;
    std::unique_ptr<std::ofstream> log_out_;
    bool loading_ = false;
};

} // namespace fraudsys
