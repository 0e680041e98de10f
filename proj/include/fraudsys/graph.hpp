#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fraudsys {

struct ActivityRecord {
    std::string subject_id;
    int64_t timestamp_ms = 0;
    std::string category;
};

// Per-user ordered activity histories plus the distinct-subject sets the
// co-activity edge weights are computed from.
class ActivityHistory {
public:
    // Timestamps must be non-decreasing per user.
    void record(const std::string& user_id, const ActivityRecord& rec);

    // Distinct subjects both users have acted on. A pair that co-reviewed
    // one subject several times still counts it once.
    int64_t common_subject_count(const std::string& u, const std::string& v) const;

    const std::vector<ActivityRecord>* records(const std::string& user_id) const;
    size_t count_before(const std::string& user_id, int64_t t_ms) const;
    size_t expertise(const std::string& user_id, const std::string& category,
                     int64_t before_ms) const;
    bool has_acted_on(const std::string& user_id, const std::string& subject_id) const;

private:
    std::unordered_map<std::string, std::vector<ActivityRecord>> per_user_;
    std::unordered_map<std::string, std::unordered_set<std::string>> subjects_;
};

// Weighted undirected co-activity graph of one subject: nodes are accounts
// that acted on the subject, edge weights count common past subjects.
// No self loops; weights >= 1.
class CoActivityGraph {
public:
    CoActivityGraph() = default;
    explicit CoActivityGraph(std::string subject_id) : subject_id_(std::move(subject_id)) {}

    const std::string& subject_id() const { return subject_id_; }
    size_t node_count() const { return adj_.size(); }
    bool has_node(const std::string& u) const { return adj_.contains(u); }
    int64_t weight(const std::string& u, const std::string& v) const;
    size_t edge_count() const;

    // Sorted adjacency; iteration order is deterministic.
    const std::map<std::string, std::map<std::string, int64_t>>& adjacency() const {
        return adj_;
    }

    // Adds u (idempotent on nodes) and (re)computes its incident edges
    // from the current histories.
    void update(const std::string& u, const ActivityHistory& history);

    // Removes a node and its incident edges.
    void erase(const std::string& u);

    // Builds a graph with explicit edge weights. Validates symmetry, no
    // self-loops and weights >= 1.
    static CoActivityGraph from_adjacency(
        std::string subject_id, std::map<std::string, std::map<std::string, int64_t>> adj);

private:
    std::string subject_id_;
    std::map<std::string, std::map<std::string, int64_t>> adj_;
};

struct ConnectivityFeatures {
    double pct_connected = 0;
    double avg_weight_to_u = 0;
    double weight_ratio = 0;
    double triangle_count = 0;
    double triangle_avg_weight = 0;
};

// Features of u against the whole graph (u must be a node). The
// weight_ratio denominator averages over the pre-existing edges, i.e.
// edges not incident to u.
ConnectivityFeatures connectivity_features(const CoActivityGraph& g, const std::string& u);

struct MinCut {
    int64_t weight = 0;
    // side1 holds the lexicographically smallest node id.
    std::vector<std::string> side1;
    std::vector<std::string> side2;
};

// Deterministic global minimum weighted cut (Stoer-Wagner with fixed
// tie-breaking). Requires at least two nodes.
std::optional<MinCut> global_min_cut(const CoActivityGraph& g);

// Recursive min-cut partition with a conductance stop: a component is left
// whole once cut_weight / min(vol(side1), vol(side2)) exceeds theta, or it
// has fewer than three nodes. Zero-weight cuts (disconnected components)
// always split. Components are sorted internally and by smallest member.
std::vector<std::vector<std::string>> min_cut_partition(const CoActivityGraph& g,
                                                        double theta);

// Connectivity features of u restricted to the best-fit component of the
// partition of g without u: maximize pct_connected, tie-break on
// avg_weight_to_u, then component size, then smallest member id.
ConnectivityFeatures best_fit_features(const CoActivityGraph& g, const std::string& u,
                                       double theta);

struct AccountFeatures {
    double n_prior_activities = 0;
    double account_age_s = 0;
    double expertise = 0;
};

AccountFeatures account_features(const ActivityHistory& history, const std::string& u,
                                 const std::string& subject_category, int64_t at_time_ms,
                                 int64_t creation_time_ms);

// Assembled per-activity feature vector, in fixed dimension order.
struct FeatureVector {
    ConnectivityFeatures whole;
    ConnectivityFeatures best_fit;
    AccountFeatures account;

    static constexpr size_t kDims = 13;

    static FeatureVector from_array(const std::array<double, kDims>& a) {
        FeatureVector f;
        f.whole = {a[0], a[1], a[2], a[3], a[4]};
        f.best_fit = {a[5], a[6], a[7], a[8], a[9]};
        f.account = {a[10], a[11], a[12]};
        return f;
    }

    std::array<double, kDims> as_array() const {
        return {whole.pct_connected, whole.avg_weight_to_u, whole.weight_ratio,
                whole.triangle_count, whole.triangle_avg_weight, best_fit.pct_connected,
                best_fit.avg_weight_to_u, best_fit.weight_ratio, best_fit.triangle_count,
                best_fit.triangle_avg_weight, account.n_prior_activities,
                account.account_age_s, account.expertise};
    }
};

// Features for u acting on g's subject at at_time. Call after
// g.update(u, history) and before recording the activity into the
// history.
FeatureVector extract_features(const CoActivityGraph& g, const std::string& u,
                               const ActivityHistory& history,
                               const std::string& subject_category, int64_t at_time_ms,
                               int64_t creation_time_ms, double theta);

} // namespace fraudsys
