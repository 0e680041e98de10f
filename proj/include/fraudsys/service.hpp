#pragma once

#include <memory>
#include <string>

#include "fraudsys/store.hpp"

namespace fraudsys {

// HTTP/JSON front end over a ServiceStore. Endpoints (all bodies JSON,
// binary fields hex-encoded):
//   POST /register_user    {user_id, creation_time_ms?}
//   POST /register_device  {user_id, device_id, model, cpu_class}
//   POST /submit_activity  {user_id, device_id, subject_id, category?, content}
//   POST /submit_solution  {user_id, device_id, subject_id, activity_digest,
//                           timeout_ms, difficulty, cookie, shares[], issued_at_ms}
//   POST /assign_cluster   {cluster_id, user_ids[]}
//   GET  /stats
// Store errors map to 400/404/409/429 with {"error": "..."} bodies.
class Service {
public:
    explicit Service(ServiceStore& store);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Binds and serves on a background thread. Port 0 picks a free port;
    // the chosen port is returned and stays valid until stop().
    int start(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace fraudsys
