#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fraudsys/graph.hpp"

using namespace fraudsys;

namespace {

using Adjacency = std::map<std::string, std::map<std::string, int64_t>>;

CoActivityGraph graph_from_edges(
    std::vector<std::tuple<std::string, std::string, int64_t>> edges,
    std::vector<std::string> extra_nodes = {}) {
    Adjacency adj;
    for (auto& [a, b, w] : edges) {
        adj[a][b] = w;
        adj[b][a] = w;
    }
    for (auto& n : extra_nodes) adj[n];
    return CoActivityGraph::from_adjacency("s", std::move(adj));
}

// Exhaustive minimum bipartition cut for graphs of up to ~20 nodes.
int64_t brute_force_min_cut(const CoActivityGraph& g) {
    std::vector<std::string> nodes;
    for (const auto& [v, _] : g.adjacency()) nodes.push_back(v);
    size_t n = nodes.size();
    REQUIRE(n >= 2);
    int64_t best = INT64_MAX;
    for (uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        // Node 0 is always on side 0; mask assigns the rest.
        int64_t cut = 0;
        for (size_t i = 0; i < n; ++i) {
            bool side_i = i > 0 && ((mask >> (i - 1)) & 1);
            for (size_t j = i + 1; j < n; ++j) {
                bool side_j = j > 0 && ((mask >> (j - 1)) & 1);
                if (side_i != side_j) cut += g.weight(nodes[i], nodes[j]);
            }
        }
        best = std::min(best, cut);
    }
    return best;
}

// O(n^3) triangle oracle for triangles containing u.
int64_t brute_force_triangles_of(const CoActivityGraph& g, const std::string& u) {
    std::vector<std::string> nodes;
    for (const auto& [v, _] : g.adjacency()) {
        if (v != u) nodes.push_back(v);
    }
    int64_t count = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            if (g.weight(u, nodes[i]) >= 1 && g.weight(u, nodes[j]) >= 1 &&
                g.weight(nodes[i], nodes[j]) >= 1) {
                ++count;
            }
        }
    }
    return count;
}

CoActivityGraph random_graph(std::mt19937_64& rng, size_t n, double edge_prob,
                             int64_t max_w) {
    Adjacency adj;
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
    for (auto& name : names) adj[name];
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (std::uniform_real_distribution<>(0, 1)(rng) < edge_prob) {
                int64_t w = 1 + static_cast<int64_t>(rng() % max_w);
                adj[names[i]][names[j]] = w;
                adj[names[j]][names[i]] = w;
            }
        }
    }
    return CoActivityGraph::from_adjacency("s", std::move(adj));
}

} // namespace

TEST_CASE("history records and common subject counts") {
    ActivityHistory h;
    h.record("u", {"s1", 100, "games"});
    h.record("u", {"s2", 200, "games"});
    h.record("u", {"s3", 300, "tools"});
    h.record("v", {"s1", 150, "games"});
    h.record("v", {"s3", 250, "tools"});
    h.record("v", {"s3", 350, "tools"}); // repeat counts once
    h.record("w", {"s9", 100, "games"});

    CHECK(h.common_subject_count("u", "v") == 2);
    CHECK(h.common_subject_count("u", "w") == 0);
    CHECK(h.common_subject_count("u", "missing") == 0);
    CHECK(h.count_before("u", 250) == 2);
    CHECK(h.expertise("u", "games", 1000) == 2);
    CHECK(h.has_acted_on("v", "s3"));
    CHECK_THROWS_AS(h.record("u", {"s4", 10, "games"}), std::invalid_argument);
}

TEST_CASE("graph update from history") {
    ActivityHistory h;
    // u and v share three past subjects; w shares none with u.
    for (auto s : {"a", "b", "c"}) {
        h.record("u", {s, 10, "x"});
        h.record("v", {s, 11, "x"});
    }
    h.record("w", {"zz", 12, "x"});

    CoActivityGraph g("subj");
    SUBCASE("first reviewer yields a single node without edges") {
        g.update("v", h);
        CHECK(g.node_count() == 1);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("edges weighted by common past subjects") {
        g.update("v", h);
        g.update("w", h);
        g.update("u", h);
        CHECK(g.node_count() == 3);
        CHECK(g.weight("u", "v") == 3);
        CHECK(g.weight("u", "w") == 0);
        CHECK(g.weight("v", "w") == 0);
        CHECK(g.edge_count() == 1);
    }
    SUBCASE("updating the same user twice is idempotent on nodes") {
        g.update("v", h);
        g.update("u", h);
        g.update("u", h);
        CHECK(g.node_count() == 2);
        CHECK(g.weight("u", "v") == 3);
    }
}

TEST_CASE("connectivity features on the worked example") {
    // V = {a,b,c} with E = {(a,b,2),(b,c,4)}; u joins connected to a (2)
    // and b (6).
    CoActivityGraph g = graph_from_edges(
        {{"a", "b", 2}, {"b", "c", 4}, {"u", "a", 2}, {"u", "b", 6}});
    ConnectivityFeatures f = connectivity_features(g, "u");
    CHECK(f.pct_connected == doctest::Approx(2.0 / 3.0));
    CHECK(f.avg_weight_to_u == doctest::Approx(4.0));
    CHECK(f.weight_ratio == doctest::Approx(4.0 / 3.0));
    CHECK(f.triangle_count == 1);
    CHECK(f.triangle_avg_weight == doctest::Approx(10.0 / 3.0));
}

TEST_CASE("connectivity features edge cases") {
    SUBCASE("isolated node gives zeros") {
        CoActivityGraph g = graph_from_edges({{"a", "b", 2}}, {"u"});
        ConnectivityFeatures f = connectivity_features(g, "u");
        CHECK(f.pct_connected == 0);
        CHECK(f.avg_weight_to_u == 0);
        CHECK(f.weight_ratio == 0);
        CHECK(f.triangle_count == 0);
        CHECK(f.triangle_avg_weight == 0);
    }
    SUBCASE("single node graph gives zeros by convention") {
        CoActivityGraph g = graph_from_edges({}, {"u"});
        ConnectivityFeatures f = connectivity_features(g, "u");
        CHECK(f.pct_connected == 0);
    }
    SUBCASE("uniform clique gives pct 1 and ratio 1") {
        CoActivityGraph g = graph_from_edges({{"a", "b", 7},
                                              {"a", "c", 7},
                                              {"b", "c", 7},
                                              {"u", "a", 7},
                                              {"u", "b", 7},
                                              {"u", "c", 7}});
        ConnectivityFeatures f = connectivity_features(g, "u");
        CHECK(f.pct_connected == doctest::Approx(1.0));
        CHECK(f.weight_ratio == doctest::Approx(1.0));
    }
    SUBCASE("unknown node throws") {
        CoActivityGraph g = graph_from_edges({{"a", "b", 2}});
        CHECK_THROWS_AS(connectivity_features(g, "zz"), std::invalid_argument);
    }
}

TEST_CASE("pct_connected never decreases when u gains an edge") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 30; ++iter) {
        CoActivityGraph g = random_graph(rng, 6 + rng() % 5, 0.4, 5);
        // Pick u and a node it is not connected to.
        std::vector<std::string> nodes;
        for (const auto& [v, _] : g.adjacency()) nodes.push_back(v);
        const std::string& u = nodes[rng() % nodes.size()];
        std::string stranger;
        for (const auto& v : nodes) {
            if (v != u && g.weight(u, v) == 0) {
                stranger = v;
                break;
            }
        }
        if (stranger.empty()) continue;
        double before = connectivity_features(g, u).pct_connected;

        Adjacency adj = g.adjacency();
        adj[u][stranger] = 1;
        adj[stranger][u] = 1;
        CoActivityGraph g2 = CoActivityGraph::from_adjacency("s", std::move(adj));
        double after = connectivity_features(g2, u).pct_connected;
        CHECK(after >= before);
    }
}

TEST_CASE("triangle count matches the enumeration oracle") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        size_t n = 5 + rng() % 46; // up to 50 nodes
        CoActivityGraph g = random_graph(rng, n, 0.15, 4);
        for (const auto& [u, _] : g.adjacency()) {
            ConnectivityFeatures f = connectivity_features(g, u);
            CHECK(f.triangle_count == static_cast<double>(brute_force_triangles_of(g, u)));
        }
    }
}

TEST_CASE("global min cut equals the exhaustive bipartition minimum") {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 60; ++iter) {
        size_t n = 2 + rng() % 7; // up to 8 nodes
        CoActivityGraph g = random_graph(rng, n, 0.5, 10);
        auto cut = global_min_cut(g);
        REQUIRE(cut.has_value());
        CHECK(cut->weight == brute_force_min_cut(g));
        CHECK(cut->side1.size() + cut->side2.size() == n);
        CHECK(!cut->side1.empty());
        CHECK(!cut->side2.empty());
        // Tie-break orientation: smallest id on side 1.
        CHECK(cut->side1.front() < cut->side2.front());
    }
}

TEST_CASE("min cut separates two cliques joined by a weak bridge") {
    // Two 3-cliques with intra-weight 5, bridged by weight 1.
    CoActivityGraph g = graph_from_edges({{"a1", "a2", 5},
                                          {"a1", "a3", 5},
                                          {"a2", "a3", 5},
                                          {"b1", "b2", 5},
                                          {"b1", "b3", 5},
                                          {"b2", "b3", 5},
                                          {"a3", "b1", 1}});
    auto cut = global_min_cut(g);
    REQUIRE(cut.has_value());
    CHECK(cut->weight == 1);

    auto parts = min_cut_partition(g, 0.5);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == std::vector<std::string>{"a1", "a2", "a3"});
    CHECK(parts[1] == std::vector<std::string>{"b1", "b2", "b3"});
}

TEST_CASE("a single clique does not split") {
    CoActivityGraph g = graph_from_edges({{"a", "b", 5},
                                          {"a", "c", 5},
                                          {"a", "d", 5},
                                          {"b", "c", 5},
                                          {"b", "d", 5},
                                          {"c", "d", 5}});
    auto parts = min_cut_partition(g, 0.5);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].size() == 4);
}

TEST_CASE("disconnected graphs always split into their components") {
    CoActivityGraph g = graph_from_edges(
        {{"a", "b", 3}, {"c", "d", 3}, {"e", "f", 3}});
    auto parts = min_cut_partition(g, 0.5);
    CHECK(parts.size() == 3);
}

TEST_CASE("two dense clusters with a sparse bridge partition into the clusters") {
    // Synthetic analogue of two fraudster-controlled account groups.
    std::vector<std::tuple<std::string, std::string, int64_t>> edges;
    std::vector<std::string> left, right;
    for (int i = 0; i < 5; ++i) left.push_back("L" + std::to_string(i));
    for (int i = 0; i < 6; ++i) right.push_back("R" + std::to_string(i));
    for (size_t i = 0; i < left.size(); ++i) {
        for (size_t j = i + 1; j < left.size(); ++j) {
            edges.push_back({left[i], left[j], 8});
        }
    }
    for (size_t i = 0; i < right.size(); ++i) {
        for (size_t j = i + 1; j < right.size(); ++j) {
            edges.push_back({right[i], right[j], 6});
        }
    }
    edges.push_back({"L0", "R0", 1});
    edges.push_back({"L3", "R4", 1});
    CoActivityGraph g = graph_from_edges(edges);

    auto parts = min_cut_partition(g, 0.5);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 5);
    CHECK(parts[1].size() == 6);
}

TEST_CASE("best fit features select the better-connected component") {
    // u has 4 edges into cluster A, 1 into cluster B.
    CoActivityGraph g = graph_from_edges({{"a1", "a2", 5},
                                          {"a1", "a3", 5},
                                          {"a2", "a3", 5},
                                          {"a1", "a4", 5},
                                          {"a2", "a4", 5},
                                          {"a3", "a4", 5},
                                          {"b1", "b2", 5},
                                          {"b1", "b3", 5},
                                          {"b2", "b3", 5},
                                          {"u", "a1", 3},
                                          {"u", "a2", 3},
                                          {"u", "a3", 3},
                                          {"u", "a4", 3},
                                          {"u", "b1", 2}});
    ConnectivityFeatures f = best_fit_features(g, "u", 0.5);
    CHECK(f.pct_connected == doctest::Approx(1.0)); // all of A
    CHECK(f.avg_weight_to_u == doctest::Approx(3.0));
}

TEST_CASE("best fit equals plain features on a single dense component") {
    CoActivityGraph g = graph_from_edges({{"a", "b", 4},
                                          {"a", "c", 4},
                                          {"b", "c", 4},
                                          {"u", "a", 2},
                                          {"u", "b", 6}});
    ConnectivityFeatures plain = connectivity_features(g, "u");
    ConnectivityFeatures bf = best_fit_features(g, "u", 0.5);
    CHECK(bf.pct_connected == doctest::Approx(plain.pct_connected));
    CHECK(bf.avg_weight_to_u == doctest::Approx(plain.avg_weight_to_u));
    CHECK(bf.weight_ratio == doctest::Approx(plain.weight_ratio));
    CHECK(bf.triangle_count == plain.triangle_count);
    CHECK(bf.triangle_avg_weight == doctest::Approx(plain.triangle_avg_weight));
}

TEST_CASE("best fit satisfies the argmax property") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 25; ++iter) {
        CoActivityGraph g = random_graph(rng, 6 + rng() % 6, 0.35, 6);
        std::vector<std::string> nodes;
        for (const auto& [v, _] : g.adjacency()) nodes.push_back(v);
        const std::string u = nodes[rng() % nodes.size()];

        CoActivityGraph without = g;
        without.erase(u);
        if (without.node_count() == 0) continue;
        auto comps = min_cut_partition(without, 0.5);

        // Independent recomputation of pct against each component.
        double best_pct = -1;
        for (const auto& comp : comps) {
            size_t linked = 0;
            for (const auto& v : comp) {
                if (g.weight(u, v) >= 1) ++linked;
            }
            best_pct = std::max(best_pct,
                                static_cast<double>(linked) / static_cast<double>(comp.size()));
        }
        ConnectivityFeatures f = best_fit_features(g, u, 0.5);
        CHECK(f.pct_connected == doctest::Approx(best_pct));
    }
}

TEST_CASE("best fit on an empty remainder gives zeros") {
    CoActivityGraph g = graph_from_edges({}, {"u"});
    ConnectivityFeatures f = best_fit_features(g, "u", 0.5);
    CHECK(f.pct_connected == 0);
    CHECK(f.triangle_count == 0);
}

TEST_CASE("account features") {
    ActivityHistory h;
    SUBCASE("brand-new account") {
        AccountFeatures f = account_features(h, "new", "games", 5000, 5000);
        CHECK(f.n_prior_activities == 0);
        CHECK(f.account_age_s == 0);
        CHECK(f.expertise == 0);
    }
    SUBCASE("ten-day-old account with history") {
        const int64_t day_ms = 86400000;
        int64_t created = 1000000;
        int64_t now = created + 10 * day_ms;
        int64_t t = created;
        for (int i = 0; i < 7; ++i) {
            t += day_ms;
            h.record("u", {"s" + std::to_string(i), t, i < 3 ? "games" : "tools"});
        }
        AccountFeatures f = account_features(h, "u", "games", now, created);
        CHECK(f.n_prior_activities == 7);
        CHECK(f.account_age_s == doctest::Approx(864000.0));
        CHECK(f.expertise == 3);
    }
    SUBCASE("expertise never exceeds prior activity count") {
        std::mt19937_64 rng(55);
        int64_t t = 0;
        for (int i = 0; i < 50; ++i) {
            t += static_cast<int64_t>(rng() % 1000);
            h.record("u", {"s" + std::to_string(rng() % 10), t,
                           rng() % 2 ? "games" : "tools"});
        }
        AccountFeatures f = account_features(h, "u", "games", t + 1, 0);
        CHECK(f.expertise <= f.n_prior_activities);
    }
}

TEST_CASE("from_adjacency validates invariants") {
    Adjacency self = {{"a", {{"a", 1}}}};
    CHECK_THROWS_AS(CoActivityGraph::from_adjacency("s", self), std::invalid_argument);
    Adjacency asym = {{"a", {{"b", 1}}}, {"b", {}}};
    CHECK_THROWS_AS(CoActivityGraph::from_adjacency("s", asym), std::invalid_argument);
    Adjacency zero = {{"a", {{"b", 0}}}, {"b", {{"a", 0}}}};
    CHECK_THROWS_AS(CoActivityGraph::from_adjacency("s", zero), std::invalid_argument);
}

TEST_CASE("feature vector dimension order is stable") {
    FeatureVector f;
    f.whole.pct_connected = 1;
    f.best_fit.pct_connected = 2;
    f.account.n_prior_activities = 3;
    auto a = f.as_array();
    CHECK(a[0] == 1);
    CHECK(a[5] == 2);
    CHECK(a[10] == 3);
    CHECK(FeatureVector::kDims == 13);
}
