#include "fraudsys/service.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fraudsys/hex.hpp"

namespace fraudsys {

using nlohmann::json;

struct Service::Impl {
    ServiceStore& store;
    httplib::Server server;
    std::thread worker;
    int port = 0;

    explicit Impl(ServiceStore& s) : store(s) {}
};

namespace {

int status_for(StoreError::Code code) {
    switch (code) {
        case StoreError::Code::conflict: return 409;
        case StoreError::Code::not_found: return 404;
        case StoreError::Code::invalid: return 400;
        case StoreError::Code::retry_later: return 429;
    }
    return 500;
}

void reply_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

// Wraps a handler with JSON parsing and store-error mapping.
template <typename Fn>
auto wrap(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            json body = req.body.empty() ? json::object() : json::parse(req.body);
            fn(body, res);
        } catch (const StoreError& e) {
            json err{{"error", e.what()}};
            if (e.code() == StoreError::Code::retry_later) {
                err["retry_after_ms"] = e.retry_after_ms();
            }
            reply_json(res, status_for(e.code()), err);
        } catch (const json::exception& e) {
            reply_json(res, 400, json{{"error", std::string("bad request: ") + e.what()}});
        } catch (const std::invalid_argument& e) {
            reply_json(res, 400, json{{"error", e.what()}});
        } catch (const std::exception& e) {
            reply_json(res, 500, json{{"error", e.what()}});
        }
    };
}

Digest32 digest_from_hex(const std::string& hex) {
    auto bytes = from_hex(hex);
    if (!bytes || bytes->size() != 32) {
        throw std::invalid_argument("expected 64 hex characters");
    }
    Digest32 d;
    std::copy(bytes->begin(), bytes->end(), d.begin());
    return d;
}

} // namespace

Service::Service(ServiceStore& store) : impl_(std::make_unique<Impl>(store)) {
    auto& server = impl_->server;
    ServiceStore& st = impl_->store;

    server.Post("/register_user", wrap([&st](const json& body, httplib::Response& res) {
        std::optional<int64_t> created;
        if (body.contains("creation_time_ms")) {
            created = body.at("creation_time_ms").get<int64_t>();
        }
        UserRecord rec = st.register_user(body.at("user_id"), created);
        reply_json(res, 200,
                   json{{"user_id", rec.user_id},
                        {"creation_time_ms", rec.creation_time_ms},
                        {"timeout_ms", rec.timeout_ms}});
    }));

    server.Post("/register_device", wrap([&st](const json& body, httplib::Response& res) {
        DeviceRecord rec = st.register_device(body.at("user_id"), body.at("device_id"),
                                              body.at("model"), body.at("cpu_class"));
        reply_json(res, 200,
                   json{{"device_id", rec.device_id},
                        {"hashrate_hps", rec.hashrate_hps}});
    }));

    server.Post("/submit_activity", wrap([&st](const json& body, httplib::Response& res) {
        IssuedPuzzle p = st.submit_activity(body.at("user_id"), body.at("device_id"),
                                            body.at("subject_id"),
                                            body.value("category", ""),
                                            body.at("content"));
        reply_json(res, 200,
                   json{{"puzzle",
                         {{"cookie", to_hex(p.puzzle.cookie.gamma)},
                          {"difficulty", p.puzzle.difficulty.value.to_dec()},
                          {"timeout_ms", p.puzzle.timeout_ms},
                          {"shares_required", p.puzzle.shares_required}}},
                        {"activity_digest", to_hex(p.activity_digest)},
                        {"issued_at_ms", p.issued_at_ms}});
    }));

    server.Post("/submit_solution", wrap([&st](const json& body, httplib::Response& res) {
        auto difficulty = U256::from_dec(body.at("difficulty").get<std::string>());
        if (!difficulty) throw std::invalid_argument("bad difficulty");
        PuzzleCookie cookie{digest_from_hex(body.at("cookie"))};
        std::vector<Share> shares;
        for (const auto& s : body.at("shares")) {
            shares.push_back(Share{digest_from_hex(s.get<std::string>())});
        }
        Verdict v = st.submit_solution(
            body.at("user_id"), body.at("device_id"), body.at("subject_id"),
            digest_from_hex(body.at("activity_digest")),
            body.at("timeout_ms").get<int64_t>(), Difficulty{*difficulty}, cookie, shares,
            body.at("issued_at_ms").get<int64_t>());
        json out{{"status", to_string(v.status)}};
        if (v.post_at_ms) out["post_at_ms"] = *v.post_at_ms;
        if (v.updated_hashrate_hps) out["updated_hashrate_hps"] = *v.updated_hashrate_hps;
        reply_json(res, 200, out);
    }));

    server.Post("/assign_cluster", wrap([&st](const json& body, httplib::Response& res) {
        FraudsterCluster c = st.assign_cluster(
            body.at("cluster_id"), body.at("user_ids").get<std::vector<std::string>>());
        reply_json(res, 200,
                   json{{"cluster_id", c.cluster_id},
                        {"members", c.member_user_ids},
                        {"timeout_ms", c.timeout_ms}});
    }));

    server.Get("/stats", [&st](const httplib::Request&, httplib::Response& res) {
        st.expire_pending();
        StoreStats s = st.stats();
        reply_json(res, 200,
                   json{{"users", s.users},
                        {"clusters", s.clusters},
                        {"subjects", s.subjects},
                        {"activities", s.activities},
                        {"pending_unsolved", s.pending_unsolved},
                        {"accepted", s.accepted}});
    });
}

Service::~Service() { stop(); }

int Service::start(const std::string& host, int port) {
    if (port == 0) {
        impl_->port = impl_->server.bind_to_any_port(host);
    } else {
        if (!impl_->server.bind_to_port(host, port)) {
            throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
        }
        impl_->port = port;
    }
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return impl_->port;
}

void Service::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
    if (impl_ && impl_->worker.joinable()) impl_->worker.join();
}

} // namespace fraudsys
