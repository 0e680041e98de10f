#include "fraudsys/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fraudsys {

void ActivityHistory::record(const std::string& user_id, const ActivityRecord& rec) {
    auto& recs = per_user_[user_id];
    if (!recs.empty() && rec.timestamp_ms < recs.back().timestamp_ms) {
        throw std::invalid_argument("activity timestamps must be non-decreasing per user");
    }
    recs.push_back(rec);
    subjects_[user_id].insert(rec.subject_id);
}

int64_t ActivityHistory::common_subject_count(const std::string& u,
                                              const std::string& v) const {
    auto iu = subjects_.find(u);
    auto iv = subjects_.find(v);
    if (iu == subjects_.end() || iv == subjects_.end()) return 0;
    const auto* small = &iu->second;
    const auto* large = &iv->second;
    if (small->size() > large->size()) std::swap(small, large);
    int64_t n = 0;
    for (const auto& s : *small) {
        if (large->contains(s)) ++n;
    }
    return n;
}

const std::vector<ActivityRecord>* ActivityHistory::records(const std::string& user_id) const {
    auto it = per_user_.find(user_id);
    return it == per_user_.end() ? nullptr : &it->second;
}

size_t ActivityHistory::count_before(const std::string& user_id, int64_t t_ms) const {
    const auto* recs = records(user_id);
    if (!recs) return 0;
    size_t n = 0;
    for (const auto& r : *recs) {
        if (r.timestamp_ms < t_ms) ++n;
    }
    return n;
}

size_t ActivityHistory::expertise(const std::string& user_id, const std::string& category,
                                  int64_t before_ms) const {
    const auto* recs = records(user_id);
    if (!recs) return 0;
    size_t n = 0;
    for (const auto& r : *recs) {
        if (r.timestamp_ms < before_ms && r.category == category) ++n;
    }
    return n;
}

bool ActivityHistory::has_acted_on(const std::string& user_id,
                                   const std::string& subject_id) const {
    auto it = subjects_.find(user_id);
    return it != subjects_.end() && it->second.contains(subject_id);
}

int64_t CoActivityGraph::weight(const std::string& u, const std::string& v) const {
    auto it = adj_.find(u);
    if (it == adj_.end()) return 0;
    auto jt = it->second.find(v);
    return jt == it->second.end() ? 0 : jt->second;
}

size_t CoActivityGraph::edge_count() const {
    size_t n = 0;
    for (const auto& [_, nbrs] : adj_) n += nbrs.size();
    return n / 2;
}

void CoActivityGraph::update(const std::string& u, const ActivityHistory& history) {
    if (adj_.contains(u)) erase(u);
    auto& u_nbrs = adj_[u]; // insert node
    for (auto& [v, v_nbrs] : adj_) {
        if (v == u) continue;
        int64_t w = history.common_subject_count(u, v);
        if (w >= 1) {
            u_nbrs[v] = w;
            v_nbrs[u] = w;
        }
    }
}

void CoActivityGraph::erase(const std::string& u) {
    auto it = adj_.find(u);
    if (it == adj_.end()) return;
    for (const auto& [v, _] : it->second) adj_[v].erase(u);
    adj_.erase(it);
}

CoActivityGraph CoActivityGraph::from_adjacency(
    std::string subject_id, std::map<std::string, std::map<std::string, int64_t>> adj) {
    for (const auto& [v, nbrs] : adj) {
        for (const auto& [x, wt] : nbrs) {
            if (x == v) throw std::invalid_argument("self loop on " + v);
            if (wt < 1) throw std::invalid_argument("edge weight below 1");
            auto it = adj.find(x);
            if (it == adj.end() || it->second.find(v) == it->second.end() ||
                it->second.at(v) != wt) {
                throw std::invalid_argument("asymmetric adjacency");
            }
        }
    }
    CoActivityGraph g(std::move(subject_id));
    g.adj_ = std::move(adj);
    return g;
}

namespace {

// Triangle features of u against a candidate neighbour set. Each triangle
// contributes the mean of its three edge weights; the feature averages
// over triangles.
struct TriangleStats {
    int64_t count = 0;
    double avg_weight = 0;
};

TriangleStats triangles_of(const CoActivityGraph& g, const std::string& u,
                           const std::vector<std::pair<std::string, int64_t>>& nbrs) {
    TriangleStats t;
    double total = 0;
    for (size_t i = 0; i < nbrs.size(); ++i) {
        for (size_t j = i + 1; j < nbrs.size(); ++j) {
            int64_t w_vw = g.weight(nbrs[i].first, nbrs[j].first);
            if (w_vw >= 1) {
                ++t.count;
                total += static_cast<double>(nbrs[i].second + nbrs[j].second + w_vw) / 3.0;
            }
        }
    }
    if (t.count > 0) t.avg_weight = total / static_cast<double>(t.count);
    return t;
}

} // namespace

ConnectivityFeatures connectivity_features(const CoActivityGraph& g, const std::string& u) {
    ConnectivityFeatures f;
    if (!g.has_node(u)) throw std::invalid_argument("node not in graph: " + u);
    size_t others = g.node_count() - 1;
    if (others == 0) return f;

    const auto& u_nbrs = g.adjacency().at(u);
    f.pct_connected = static_cast<double>(u_nbrs.size()) / static_cast<double>(others);

    if (!u_nbrs.empty()) {
        int64_t wsum = 0;
        for (const auto& [_, w] : u_nbrs) wsum += w;
        f.avg_weight_to_u = static_cast<double>(wsum) / static_cast<double>(u_nbrs.size());
    }

    // Average weight over the pre-existing edges (those not incident to u).
    int64_t pre_sum = 0;
    size_t pre_cnt = 0;
    for (const auto& [v, nbrs] : g.adjacency()) {
        if (v == u) continue;
        for (const auto& [w, wt] : nbrs) {
            if (w == u || w < v) continue; // count each edge once
            pre_sum += wt;
            ++pre_cnt;
        }
    }
    if (pre_cnt > 0 && f.avg_weight_to_u > 0) {
        f.weight_ratio = f.avg_weight_to_u /
                         (static_cast<double>(pre_sum) / static_cast<double>(pre_cnt));
    }

    std::vector<std::pair<std::string, int64_t>> nbrs(u_nbrs.begin(), u_nbrs.end());
    TriangleStats t = triangles_of(g, u, nbrs);
    f.triangle_count = static_cast<double>(t.count);
    f.triangle_avg_weight = t.avg_weight;
    return f;
}

namespace {

// Stoer-Wagner over a dense weight matrix with deterministic tie-breaking
// (first index in scan order wins; the first phase cut achieving the
// minimum is kept).
struct StoerWagner {
    std::vector<std::string> ids;                 // index -> node id
    std::vector<std::vector<int64_t>> w;          // weight matrix
    std::vector<std::vector<int>> groups;         // merged original indices

    explicit StoerWagner(const CoActivityGraph& g) {
        ids.reserve(g.node_count());
        for (const auto& [v, _] : g.adjacency()) ids.push_back(v);
        size_t n = ids.size();
        w.assign(n, std::vector<int64_t>(n, 0));
        std::unordered_map<std::string, size_t> index;
        for (size_t i = 0; i < n; ++i) index[ids[i]] = i;
        for (const auto& [v, nbrs] : g.adjacency()) {
            for (const auto& [x, wt] : nbrs) w[index[v]][index[x]] = wt;
        }
        groups.resize(n);
        for (size_t i = 0; i < n; ++i) groups[i] = {static_cast<int>(i)};
    }

    // Returns (cut weight, original indices of one side).
    std::pair<int64_t, std::vector<int>> run() {
        size_t n = ids.size();
        std::vector<int> active(n);
        for (size_t i = 0; i < n; ++i) active[i] = static_cast<int>(i);

        int64_t best = std::numeric_limits<int64_t>::max();
        std::vector<int> best_side;

        while (active.size() > 1) {
            // Maximum adjacency order starting from active[0].
            std::vector<int64_t> conn(active.size(), 0);
            std::vector<bool> added(active.size(), false);
            added[0] = true;
            for (size_t i = 1; i < active.size(); ++i) {
                conn[i] = w[active[0]][active[i]];
            }
            int prev = 0, last = 0;
            for (size_t step = 1; step < active.size(); ++step) {
                int pick = -1;
                int64_t pick_conn = -1;
                for (size_t i = 1; i < active.size(); ++i) {
                    if (!added[i] && conn[i] > pick_conn) {
                        pick_conn = conn[i];
                        pick = static_cast<int>(i);
                    }
                }
                added[pick] = true;
                prev = last;
                last = pick;
                for (size_t i = 1; i < active.size(); ++i) {
                    if (!added[i]) conn[i] += w[active[pick]][active[i]];
                }
            }

            int64_t phase_cut = conn[last];
            if (phase_cut < best) {
                best = phase_cut;
                best_side = groups[active[last]];
            }

            // Merge last into prev.
            int s = active[prev], t = active[last];
            for (int v : active) {
                if (v == s || v == t) continue;
                w[s][v] += w[t][v];
                w[v][s] += w[v][t];
            }
            auto& gs = groups[s];
            gs.insert(gs.end(), groups[t].begin(), groups[t].end());
            active.erase(active.begin() + last);
        }
        return {best, best_side};
    }
};

} // namespace

std::optional<MinCut> global_min_cut(const CoActivityGraph& g) {
    if (g.node_count() < 2) return std::nullopt;
    StoerWagner sw(g);
    auto [weight, side] = sw.run();

    std::vector<bool> in_side(sw.ids.size(), false);
    for (int i : side) in_side[static_cast<size_t>(i)] = true;

    MinCut cut;
    cut.weight = weight;
    for (size_t i = 0; i < sw.ids.size(); ++i) {
        (in_side[i] ? cut.side1 : cut.side2).push_back(sw.ids[i]);
    }
    // ids come from a sorted map, so both sides are sorted; put the
    // lexicographically smallest node in side1.
    if (cut.side2.front() < cut.side1.front()) std::swap(cut.side1, cut.side2);
    return cut;
}

std::vector<std::vector<std::string>> min_cut_partition(const CoActivityGraph& g,
                                                        double theta) {
    std::vector<std::vector<std::string>> out;
    if (g.node_count() == 0) return out;

    struct Frame {
        std::vector<std::string> nodes;
    };
    std::vector<std::string> all;
    for (const auto& [v, _] : g.adjacency()) all.push_back(v);

    auto weight_in = [&](const std::string& a, const std::string& b) {
        return g.weight(a, b);
    };

    std::vector<Frame> stack{{all}};
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        if (fr.nodes.size() < 3) {
            out.push_back(std::move(fr.nodes));
            continue;
        }

        // Induced subgraph for Stoer-Wagner.
        std::map<std::string, std::map<std::string, int64_t>> adj;
        for (const auto& a : fr.nodes) adj[a];
        for (size_t i = 0; i < fr.nodes.size(); ++i) {
            for (size_t j = i + 1; j < fr.nodes.size(); ++j) {
                int64_t wt = weight_in(fr.nodes[i], fr.nodes[j]);
                if (wt >= 1) {
                    adj[fr.nodes[i]][fr.nodes[j]] = wt;
                    adj[fr.nodes[j]][fr.nodes[i]] = wt;
                }
            }
        }
        CoActivityGraph sub = CoActivityGraph::from_adjacency(g.subject_id(), std::move(adj));

        auto cut = global_min_cut(sub);
        if (!cut) {
            out.push_back(std::move(fr.nodes));
            continue;
        }

        bool split = true;
        if (cut->weight > 0) {
            // Conductance of the cut inside this component.
            auto volume = [&](const std::vector<std::string>& side) {
                int64_t vol = 0;
                for (const auto& a : side) {
                    for (const auto& b : fr.nodes) {
                        if (a != b) vol += weight_in(a, b);
                    }
                }
                return vol;
            };
            int64_t v1 = volume(cut->side1), v2 = volume(cut->side2);
            int64_t vmin = std::min(v1, v2);
            if (vmin <= 0 ||
                static_cast<double>(cut->weight) / static_cast<double>(vmin) > theta) {
                split = false; // densely connected, stop here
            }
        }

        if (!split) {
            out.push_back(std::move(fr.nodes));
        } else {
            stack.push_back(Frame{std::move(cut->side2)});
            stack.push_back(Frame{std::move(cut->side1)});
        }
    }

    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

namespace {

ConnectivityFeatures features_against_component(const CoActivityGraph& g,
                                                const std::string& u,
                                                const std::vector<std::string>& comp) {
    ConnectivityFeatures f;
    if (comp.empty()) return f;

    std::vector<std::pair<std::string, int64_t>> nbrs;
    int64_t wsum = 0;
    for (const auto& v : comp) {
        int64_t wt = g.weight(u, v);
        if (wt >= 1) {
            nbrs.emplace_back(v, wt);
            wsum += wt;
        }
    }
    f.pct_connected = static_cast<double>(nbrs.size()) / static_cast<double>(comp.size());
    if (!nbrs.empty()) {
        f.avg_weight_to_u = static_cast<double>(wsum) / static_cast<double>(nbrs.size());
    }

    int64_t in_sum = 0;
    size_t in_cnt = 0;
    for (size_t i = 0; i < comp.size(); ++i) {
        for (size_t j = i + 1; j < comp.size(); ++j) {
            int64_t wt = g.weight(comp[i], comp[j]);
            if (wt >= 1) {
                in_sum += wt;
                ++in_cnt;
            }
        }
    }
    if (in_cnt > 0 && f.avg_weight_to_u > 0) {
        f.weight_ratio =
            f.avg_weight_to_u / (static_cast<double>(in_sum) / static_cast<double>(in_cnt));
    }

    TriangleStats t = triangles_of(g, u, nbrs);
    f.triangle_count = static_cast<double>(t.count);
    f.triangle_avg_weight = t.avg_weight;
    return f;
}

} // namespace

ConnectivityFeatures best_fit_features(const CoActivityGraph& g, const std::string& u,
                                       double theta) {
    if (!g.has_node(u)) throw std::invalid_argument("node not in graph: " + u);

    // Partition the graph as it was before u joined.
    CoActivityGraph without = g;
    without.erase(u);
    auto components = min_cut_partition(without, theta);
    if (components.empty()) return {};

    ConnectivityFeatures best{};
    const std::vector<std::string>* best_comp = nullptr;
    for (const auto& comp : components) {
        ConnectivityFeatures f = features_against_component(g, u, comp);
        bool better = false;
        if (!best_comp) {
            better = true;
        } else if (f.pct_connected != best.pct_connected) {
            better = f.pct_connected > best.pct_connected;
        } else if (f.avg_weight_to_u != best.avg_weight_to_u) {
            better = f.avg_weight_to_u > best.avg_weight_to_u;
        } else if (comp.size() != best_comp->size()) {
            better = comp.size() > best_comp->size();
        } // else: keep the earlier (smallest-member) component
        if (better) {
            best = f;
            best_comp = &comp;
        }
    }
    return best;
}

AccountFeatures account_features(const ActivityHistory& history, const std::string& u,
                                 const std::string& subject_category, int64_t at_time_ms,
                                 int64_t creation_time_ms) {
    AccountFeatures f;
    f.n_prior_activities = static_cast<double>(history.count_before(u, at_time_ms));
    f.account_age_s =
        static_cast<double>(std::max<int64_t>(0, at_time_ms - creation_time_ms)) / 1000.0;
    f.expertise = static_cast<double>(history.expertise(u, subject_category, at_time_ms));
    return f;
}

FeatureVector extract_features(const CoActivityGraph& g, const std::string& u,
                               const ActivityHistory& history,
                               const std::string& subject_category, int64_t at_time_ms,
                               int64_t creation_time_ms, double theta) {
    FeatureVector f;
    f.whole = connectivity_features(g, u);
    f.best_fit = best_fit_features(g, u, theta);
    f.account = account_features(history, u, subject_category, at_time_ms, creation_time_ms);
    return f;
}

} // namespace fraudsys
