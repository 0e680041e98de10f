#include "fraudsys/store.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fraudsys/hex.hpp"

namespace fraudsys {

using nlohmann::json;

Clock system_clock_ms() {
    return [] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
    };
}

ServiceStore::ServiceStore(StoreConfig cfg, Clock clock)
    : cfg_(std::move(cfg)), clock_(std::move(clock)),
      profiles_(ProfileTable::builtin_defaults()) {
    cfg_.penalty.validate();
    if (cfg_.shares_required < 1) throw std::invalid_argument("q must be >= 1");
    if (!cfg_.data_dir.empty()) {
        std::filesystem::create_directories(cfg_.data_dir);
        load();
        auto path = std::filesystem::path(cfg_.data_dir) / "events.log";
        log_out_ = std::make_unique<std::ofstream>(path, std::ios::app);
        if (!*log_out_) throw std::runtime_error("cannot open event log " + path.string());
    }
}

ServiceStore::~ServiceStore() {
    if (log_out_) log_out_->flush();
}

void ServiceStore::set_scorer(Scorer scorer) {
    std::lock_guard lock(scorer_mu_);
    scorer_ = std::move(scorer);
}

void ServiceStore::set_profile_table(ProfileTable table) {
    std::lock_guard lock(scorer_mu_);
    profiles_ = std::move(table);
}

std::shared_ptr<ServiceStore::UserState> ServiceStore::find_user(
    const std::string& user_id) const {
    std::shared_lock lock(registry_mu_);
    auto it = users_.find(user_id);
    return it == users_.end() ? nullptr : it->second;
}

std::shared_ptr<ServiceStore::SubjectState> ServiceStore::subject_state(
    const std::string& subject_id) {
    {
        std::shared_lock lock(registry_mu_);
        auto it = subjects_.find(subject_id);
        if (it != subjects_.end()) return it->second;
    }
    std::unique_lock lock(registry_mu_);
    auto [it, _] = subjects_.try_emplace(subject_id, nullptr);
    if (!it->second) {
        it->second = std::make_shared<SubjectState>();
        it->second->graph = CoActivityGraph(subject_id);
    }
    return it->second;
}

UserRecord ServiceStore::register_user(const std::string& user_id,
                                       std::optional<int64_t> creation_time_ms) {
    if (user_id.empty()) throw StoreError(StoreError::Code::invalid, "empty user id");
    int64_t created = creation_time_ms.value_or(clock_());
    {
        std::unique_lock lock(registry_mu_);
        if (users_.contains(user_id)) {
            throw StoreError(StoreError::Code::conflict, "user exists: " + user_id);
        }
        auto state = std::make_shared<UserState>();
        state->rec.user_id = user_id;
        state->rec.creation_time_ms = created;
        state->rec.timeout_ms = clock_();
        users_[user_id] = state;
    }
    UserRecord rec = *user(user_id);
    append_event(json{{"op", "user"},
                      {"id", user_id},
                      {"created", created},
                      {"timeout", rec.timeout_ms}}
                     .dump());
    return rec;
}

DeviceRecord ServiceStore::register_device(const std::string& user_id,
                                           const std::string& device_id,
                                           const std::string& model_name,
                                           const std::string& cpu_class) {
    if (device_id.empty()) throw StoreError(StoreError::Code::invalid, "empty device id");
    auto state = find_user(user_id);
    if (!state) throw StoreError(StoreError::Code::not_found, "unknown user: " + user_id);

    double rate;
    {
        std::lock_guard lock(scorer_mu_);
        rate = profiles_.initial_hashrate(model_name, cpu_class);
    }
    DeviceRecord rec{device_id, rate, clock_()};
    {
        std::lock_guard lock(state->mu);
        for (const auto& d : state->rec.devices) {
            if (d.device_id == device_id) {
                throw StoreError(StoreError::Code::conflict, "device exists: " + device_id);
            }
        }
        state->rec.devices.push_back(rec);
    }
    append_event(json{{"op", "dev"},
                      {"user", user_id},
                      {"id", device_id},
                      {"rate", rate},
                      {"updated", rec.last_updated_ms}}
                     .dump());
    return rec;
}

void ServiceStore::apply_activity_state(const StoredActivity& act, const Digest32& digest,
                                        int64_t new_timeout_ms, const std::string& entity,
                                        int64_t expires_at_ms) {
    auto subj = subject_state(act.subject_id);
    {
        std::lock_guard slock(subj->mu);
        std::shared_lock hlock(history_mu_);
        subj->graph.update(act.user_id, history_);
    }
    if (entity.starts_with("c:")) {
        std::shared_lock rlock(registry_mu_);
        auto it = clusters_.find(entity.substr(2));
        if (it != clusters_.end()) {
            std::lock_guard clock(it->second->mu);
            it->second->rec.timeout_ms = new_timeout_ms;
        }
    } else {
        auto ustate = find_user(act.user_id);
        if (ustate) {
            std::lock_guard ulock(ustate->mu);
            ustate->rec.timeout_ms = new_timeout_ms;
        }
    }
    {
        std::unique_lock hlock(history_mu_);
        history_.record(act.user_id, {act.subject_id, act.timestamp_ms, act.category});
        activity_log_.push_back(act);
    }
    {
        std::lock_guard plock(pending_mu_);
        PendingActivity p;
        p.user_id = act.user_id;
        p.device_id = act.device_id;
        p.subject_id = act.subject_id;
        p.category = act.category;
        p.digest = digest;
        p.issued_at_ms = act.timestamp_ms;
        p.expires_at_ms = expires_at_ms;
        pending_[to_hex(digest)] = std::move(p);
    }
}

IssuedPuzzle ServiceStore::submit_activity(const std::string& user_id,
                                           const std::string& device_id,
                                           const std::string& subject_id,
                                           const std::string& category,
                                           const std::string& payload) {
    if (user_id.empty() || device_id.empty() || subject_id.empty()) {
        throw StoreError(StoreError::Code::invalid, "empty principal or subject id");
    }
    if (payload.empty()) throw StoreError(StoreError::Code::invalid, "empty payload");

    auto ustate = find_user(user_id);
    if (!ustate) throw StoreError(StoreError::Code::not_found, "unknown user: " + user_id);

    double hashrate = 0;
    int64_t creation_time = 0;
    std::optional<std::string> cluster_id;
    {
        std::lock_guard lock(ustate->mu);
        creation_time = ustate->rec.creation_time_ms;
        cluster_id = ustate->rec.cluster_id;
        for (const auto& d : ustate->rec.devices) {
            if (d.device_id == device_id) hashrate = d.hashrate_hps;
        }
    }
    if (hashrate <= 0) {
        throw StoreError(StoreError::Code::not_found,
                         "device not registered: " + device_id);
    }

    const int64_t now = clock_();
    Digest32 digest = double_sha256(as_bytes_span(payload));

    // Graph update and feature extraction on the subject's graph.
    auto subj = subject_state(subject_id);
    FeatureVector features;
    {
        std::lock_guard slock(subj->mu);
        std::shared_lock hlock(history_mu_);
        subj->graph.update(user_id, history_);
        features = extract_features(subj->graph, user_id, history_, category, now,
                                    creation_time, cfg_.theta);
    }
    if (cfg_.drop_account_features) features.account = AccountFeatures{};

    double score = 0;
    {
        std::lock_guard lock(scorer_mu_);
        if (scorer_) score = scorer_(features);
    }
    double penalty_s = fraud_to_penalty(score, cfg_.penalty);

    // Timeout accumulation on the user or, for known fraudsters, the
    // shared cluster account.
    ActivityDescriptor desc{user_id, device_id, subject_id, digest, now};
    PuzzleBuildInputs inputs;
    inputs.hashrate_hps = hashrate;
    inputs.penalty_s = penalty_s;
    inputs.now_ms = now;
    inputs.shares_required = cfg_.shares_required;

    PuzzleBuild build;
    std::string entity;
    std::shared_ptr<ClusterState> cstate;
    if (cluster_id) {
        std::shared_lock rlock(registry_mu_);
        auto it = clusters_.find(*cluster_id);
        if (it != clusters_.end()) cstate = it->second;
    }
    auto issue_with = [&](int64_t stored_timeout) {
        if (stored_timeout - now > cfg_.max_timeout_ahead_ms) {
            throw StoreError(StoreError::Code::retry_later, "timeout too far ahead",
                             stored_timeout - cfg_.max_timeout_ahead_ms - now);
        }
        inputs.stored_timeout_ms = stored_timeout;
        return build_puzzle(cfg_.key, desc, inputs);
    };
    if (cstate) {
        std::lock_guard clock_lock(cstate->mu);
        build = issue_with(cstate->rec.timeout_ms);
        cstate->rec.timeout_ms = build.new_timeout_ms;
        entity = "c:" + *cluster_id;
    } else {
        std::lock_guard ulock(ustate->mu);
        build = issue_with(ustate->rec.timeout_ms);
        ustate->rec.timeout_ms = build.new_timeout_ms;
        entity = "u:" + user_id;
    }

    // The activity joins the history only after feature extraction.
    StoredActivity act{user_id, device_id, subject_id, category, now};
    int64_t expires =
        now + static_cast<int64_t>(cfg_.penalty.maxf_s * 1000.0) + cfg_.pending_grace_ms;
    try {
        std::unique_lock hlock(history_mu_);
        history_.record(user_id, {subject_id, now, category});
        activity_log_.push_back(act);
    } catch (const std::invalid_argument& e) {
        throw StoreError(StoreError::Code::invalid, e.what());
    }
    {
        std::lock_guard plock(pending_mu_);
        PendingActivity p;
        p.user_id = user_id;
        p.device_id = device_id;
        p.subject_id = subject_id;
        p.category = category;
        p.digest = digest;
        p.issued_at_ms = now;
        p.expires_at_ms = expires;
        pending_[to_hex(digest)] = std::move(p);
    }

    append_event(json{{"op", "act"},
                      {"user", user_id},
                      {"dev", device_id},
                      {"subject", subject_id},
                      {"cat", category},
                      {"digest", to_hex(digest)},
                      {"ts", now},
                      {"timeout", build.new_timeout_ms},
                      {"entity", entity},
                      {"expires", expires},
                      {"score", score},
                      {"tau_ms", build.penalty_ms},
                      {"diff", build.puzzle.difficulty.value.to_dec()}}
                     .dump());

    IssuedPuzzle out;
    out.puzzle = build.puzzle;
    out.activity_digest = digest;
    out.issued_at_ms = now;
    out.fraud_score = score;
    out.penalty_ms = build.penalty_ms;
    out.features = features;
    return out;
}

Verdict ServiceStore::submit_solution(const std::string& user_id,
                                      const std::string& device_id,
                                      const std::string& subject_id,
                                      const Digest32& activity_digest, int64_t timeout_ms,
                                      const Difficulty& difficulty,
                                      const PuzzleCookie& cookie,
                                      std::span<const Share> shares, int64_t issued_at_ms) {
    const int64_t now = clock_();
    ActivityDescriptor desc{user_id, device_id, subject_id, activity_digest, issued_at_ms};
    Verdict v = verify_solution(cfg_.key, desc, timeout_ms, difficulty, cookie, shares,
                                cfg_.shares_required, now);
    if (v.status != VerdictStatus::accepted) return v;

    {
        std::lock_guard plock(pending_mu_);
        auto [it, inserted] = pending_.try_emplace(to_hex(activity_digest));
        if (inserted) {
            // Verification is stateless: a valid solution posts even if
            // the pending record was lost or expired.
            it->second.user_id = user_id;
            it->second.device_id = device_id;
            it->second.subject_id = subject_id;
            it->second.digest = activity_digest;
            it->second.issued_at_ms = issued_at_ms;
            it->second.expires_at_ms = *v.post_at_ms;
        }
        it->second.post_at_ms = v.post_at_ms;
        ++accepted_count_;
    }

    // Adaptive hashrate correction from the measured solve time.
    double new_rate = 0;
    double solve_s = static_cast<double>(now - issued_at_ms) / 1000.0;
    if (auto ustate = find_user(user_id); ustate && solve_s > 0) {
        std::lock_guard ulock(ustate->mu);
        for (auto& d : ustate->rec.devices) {
            if (d.device_id != device_id) continue;
            HashrateUpdate u =
                correct_hashrate(d, difficulty, cfg_.shares_required, solve_s,
                                 cfg_.eta_min_hps);
            if (u.applied) {
                d.hashrate_hps = u.hashrate_hps;
                d.last_updated_ms = now;
                new_rate = u.hashrate_hps;
                v.updated_hashrate_hps = u.hashrate_hps;
            }
            break;
        }
    }

    append_event(json{{"op", "sol"},
                      {"digest", to_hex(activity_digest)},
                      {"post_at", *v.post_at_ms},
                      {"user", user_id},
                      {"dev", device_id},
                      {"rate", new_rate},
                      {"ts", now}}
                     .dump());
    return v;
}

FraudsterCluster ServiceStore::assign_cluster(const std::string& cluster_id,
                                              const std::vector<std::string>& user_ids) {
    if (cluster_id.empty() || user_ids.empty()) {
        throw StoreError(StoreError::Code::invalid, "cluster id and members required");
    }
    FraudsterCluster rec;
    {
        std::unique_lock lock(registry_mu_);
        if (clusters_.contains(cluster_id)) {
            throw StoreError(StoreError::Code::conflict, "cluster exists: " + cluster_id);
        }
        std::vector<std::shared_ptr<UserState>> members;
        for (const auto& uid : user_ids) {
            auto it = users_.find(uid);
            if (it == users_.end()) {
                throw StoreError(StoreError::Code::not_found, "unknown user: " + uid);
            }
            members.push_back(it->second);
        }
        int64_t timeout = 0;
        for (auto& m : members) {
            std::lock_guard mlock(m->mu);
            if (m->rec.cluster_id) {
                throw StoreError(StoreError::Code::conflict,
                                 "user already clustered: " + m->rec.user_id);
            }
            timeout = std::max(timeout, m->rec.timeout_ms);
        }
        for (auto& m : members) {
            std::lock_guard mlock(m->mu);
            m->rec.cluster_id = cluster_id;
        }
        auto state = std::make_shared<ClusterState>();
        state->rec.cluster_id = cluster_id;
        state->rec.member_user_ids = user_ids;
        state->rec.timeout_ms = timeout;
        clusters_[cluster_id] = state;
        rec = state->rec;
    }
    append_event(json{{"op", "cluster"},
                      {"id", cluster_id},
                      {"members", user_ids},
                      {"timeout", rec.timeout_ms}}
                     .dump());
    return rec;
}

std::optional<UserRecord> ServiceStore::user(const std::string& user_id) const {
    auto state = find_user(user_id);
    if (!state) return std::nullopt;
    std::lock_guard lock(state->mu);
    return state->rec;
}

std::optional<FraudsterCluster> ServiceStore::cluster(const std::string& cluster_id) const {
    std::shared_lock lock(registry_mu_);
    auto it = clusters_.find(cluster_id);
    if (it == clusters_.end()) return std::nullopt;
    std::lock_guard clock(it->second->mu);
    return it->second->rec;
}

std::optional<PendingActivity> ServiceStore::pending(const Digest32& digest) const {
    std::lock_guard lock(pending_mu_);
    auto it = pending_.find(to_hex(digest));
    if (it == pending_.end()) return std::nullopt;
    return it->second;
}

std::vector<PendingActivity> ServiceStore::published_feed(
    const std::string& subject_id) const {
    const int64_t now = clock_();
    std::vector<PendingActivity> out;
    {
        std::lock_guard lock(pending_mu_);
        for (const auto& [_, p] : pending_) {
            if (p.subject_id == subject_id && p.post_at_ms && *p.post_at_ms <= now) {
                out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return *a.post_at_ms < *b.post_at_ms;
    });
    return out;
}

StoreStats ServiceStore::stats() const {
    StoreStats s;
    {
        std::shared_lock lock(registry_mu_);
        s.users = users_.size();
        s.clusters = clusters_.size();
        s.subjects = subjects_.size();
    }
    {
        std::shared_lock lock(history_mu_);
        s.activities = activity_log_.size();
    }
    {
        std::lock_guard lock(pending_mu_);
        s.accepted = accepted_count_;
        for (const auto& [_, p] : pending_) {
            if (!p.post_at_ms) ++s.pending_unsolved;
        }
    }
    return s;
}

size_t ServiceStore::expire_pending() {
    const int64_t now = clock_();
    size_t dropped = 0;
    std::lock_guard lock(pending_mu_);
    for (auto it = pending_.begin(); it != pending_.end();) {
        if (!it->second.post_at_ms && it->second.expires_at_ms < now) {
            it = pending_.erase(it);
            ++dropped;
        } else {
            ++it;
        }
    }
    return dropped;
}

void ServiceStore::append_event(const std::string& line) {
    if (loading_ || !log_out_) return;
    std::lock_guard lock(log_mu_);
    *log_out_ << line << '\n';
    log_out_->flush();
}

std::string ServiceStore::snapshot_json() const {
    json snap;
    {
        std::shared_lock lock(registry_mu_);
        json users = json::array();
        for (const auto& [id, state] : users_) {
            std::lock_guard ulock(state->mu);
            json devices = json::array();
            for (const auto& d : state->rec.devices) {
                devices.push_back({{"id", d.device_id},
                                   {"rate", d.hashrate_hps},
                                   {"updated", d.last_updated_ms}});
            }
            json u = {{"id", id},
                      {"created", state->rec.creation_time_ms},
                      {"timeout", state->rec.timeout_ms},
                      {"devices", devices}};
            if (state->rec.cluster_id) u["cluster"] = *state->rec.cluster_id;
            users.push_back(u);
        }
        snap["users"] = users;
        json clusters = json::array();
        for (const auto& [id, state] : clusters_) {
            std::lock_guard clock(state->mu);
            clusters.push_back({{"id", id},
                                {"members", state->rec.member_user_ids},
                                {"timeout", state->rec.timeout_ms}});
        }
        snap["clusters"] = clusters;
    }
    {
        std::shared_lock lock(history_mu_);
        json acts = json::array();
        for (const auto& a : activity_log_) {
            acts.push_back({{"user", a.user_id},
                            {"dev", a.device_id},
                            {"subject", a.subject_id},
                            {"cat", a.category},
                            {"ts", a.timestamp_ms}});
        }
        snap["activities"] = acts;
    }
    {
        std::lock_guard lock(pending_mu_);
        json pend = json::array();
        for (const auto& [hex, p] : pending_) {
            json e = {{"user", p.user_id},     {"dev", p.device_id},
                      {"subject", p.subject_id}, {"cat", p.category},
                      {"digest", hex},         {"issued", p.issued_at_ms},
                      {"expires", p.expires_at_ms}};
            if (p.post_at_ms) e["post_at"] = *p.post_at_ms;
            pend.push_back(e);
        }
        snap["pending"] = pend;
        snap["accepted"] = accepted_count_;
    }
    return snap.dump();
}

void ServiceStore::snapshot() {
    if (cfg_.data_dir.empty()) return;
    auto dir = std::filesystem::path(cfg_.data_dir);
    auto tmp = dir / "snapshot.json.tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write snapshot");
        out << snapshot_json();
    }
    std::filesystem::rename(tmp, dir / "snapshot.json");
    std::lock_guard lock(log_mu_);
    if (log_out_) {
        log_out_->close();
        log_out_ = std::make_unique<std::ofstream>(dir / "events.log", std::ios::trunc);
    }
}

void ServiceStore::load() {
    loading_ = true;
    auto dir = std::filesystem::path(cfg_.data_dir);

    auto snap_path = dir / "snapshot.json";
    if (std::filesystem::exists(snap_path)) {
        std::ifstream in(snap_path);
        json snap = json::parse(in);
        for (const auto& u : snap.value("users", json::array())) {
            auto state = std::make_shared<UserState>();
            state->rec.user_id = u.at("id");
            state->rec.creation_time_ms = u.at("created");
            state->rec.timeout_ms = u.at("timeout");
            if (u.contains("cluster")) state->rec.cluster_id = u.at("cluster");
            for (const auto& d : u.value("devices", json::array())) {
                state->rec.devices.push_back(
                    {d.at("id"), d.at("rate"), d.at("updated")});
            }
            users_[state->rec.user_id] = state;
        }
        for (const auto& c : snap.value("clusters", json::array())) {
            auto state = std::make_shared<ClusterState>();
            state->rec.cluster_id = c.at("id");
            state->rec.member_user_ids =
                c.at("members").get<std::vector<std::string>>();
            state->rec.timeout_ms = c.at("timeout");
            clusters_[state->rec.cluster_id] = state;
        }
        // Rebuild graphs by replaying activities in arrival order.
        for (const auto& a : snap.value("activities", json::array())) {
            StoredActivity act{a.at("user"), a.at("dev"), a.at("subject"), a.at("cat"),
                               a.at("ts")};
            auto subj = subject_state(act.subject_id);
            subj->graph.update(act.user_id, history_);
            history_.record(act.user_id,
                            {act.subject_id, act.timestamp_ms, act.category});
            activity_log_.push_back(act);
        }
        for (const auto& p : snap.value("pending", json::array())) {
            PendingActivity e;
            e.user_id = p.at("user");
            e.device_id = p.at("dev");
            e.subject_id = p.at("subject");
            e.category = p.at("cat");
            auto bytes = from_hex(p.at("digest").get<std::string>());
            if (!bytes || bytes->size() != 32) throw std::runtime_error("corrupt digest");
            std::copy(bytes->begin(), bytes->end(), e.digest.begin());
            e.issued_at_ms = p.at("issued");
            e.expires_at_ms = p.at("expires");
            if (p.contains("post_at")) e.post_at_ms = p.at("post_at").get<int64_t>();
            pending_[p.at("digest").get<std::string>()] = std::move(e);
        }
        accepted_count_ = snap.value("accepted", 0u);
    }

    auto log_path = dir / "events.log";
    if (std::filesystem::exists(log_path)) {
        std::ifstream in(log_path);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) replay_event(line);
        }
    }
    loading_ = false;
}

void ServiceStore::replay_event(const std::string& line) {
    json e = json::parse(line);
    std::string op = e.at("op");
    if (op == "user") {
        auto state = std::make_shared<UserState>();
        state->rec.user_id = e.at("id");
        state->rec.creation_time_ms = e.at("created");
        state->rec.timeout_ms = e.at("timeout");
        users_[state->rec.user_id] = state;
    } else if (op == "dev") {
        auto it = users_.find(e.at("user"));
        if (it == users_.end()) throw std::runtime_error("log device before user");
        it->second->rec.devices.push_back({e.at("id"), e.at("rate"), e.at("updated")});
    } else if (op == "act") {
        auto bytes = from_hex(e.at("digest").get<std::string>());
        if (!bytes || bytes->size() != 32) throw std::runtime_error("corrupt digest");
        Digest32 digest;
        std::copy(bytes->begin(), bytes->end(), digest.begin());
        StoredActivity act{e.at("user"), e.at("dev"), e.at("subject"), e.at("cat"),
                           e.at("ts")};
        apply_activity_state(act, digest, e.at("timeout"), e.at("entity"),
                             e.at("expires"));
    } else if (op == "sol") {
        std::string dhex = e.at("digest");
        auto [it, inserted] = pending_.try_emplace(dhex);
        if (inserted) {
            auto bytes = from_hex(dhex);
            std::copy(bytes->begin(), bytes->end(), it->second.digest.begin());
            it->second.user_id = e.at("user");
            it->second.device_id = e.at("dev");
        }
        it->second.post_at_ms = e.at("post_at").get<int64_t>();
        ++accepted_count_;
        double rate = e.at("rate");
        if (rate > 0) {
            auto uit = users_.find(e.at("user"));
            if (uit != users_.end()) {
                for (auto& d : uit->second->rec.devices) {
                    if (d.device_id == e.at("dev")) {
                        d.hashrate_hps = rate;
                        d.last_updated_ms = e.at("ts");
                    }
                }
            }
        }
    } else if (op == "cluster") {
        auto state = std::make_shared<ClusterState>();
        state->rec.cluster_id = e.at("id");
        state->rec.member_user_ids = e.at("members").get<std::vector<std::string>>();
        state->rec.timeout_ms = e.at("timeout");
        clusters_[state->rec.cluster_id] = state;
        for (const auto& m : state->rec.member_user_ids) {
            auto it = users_.find(m);
            if (it != users_.end()) it->second->rec.cluster_id = state->rec.cluster_id;
        }
    } else {
        throw std::runtime_error("unknown log op: " + op);
    }
}

} // namespace fraudsys
