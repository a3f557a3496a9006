#include <doctest.h>

#include "helpers.hpp"
#include "hpdraw/generators.hpp"
#include "hpdraw/layout.hpp"
#include "hpdraw/oracle.hpp"

using namespace hpdraw;
using namespace hpdraw::testing;

TEST_CASE("single leaf instance: one rectangle, one point") {
    Reconciliation rec = make_rec("h;", "p;", {{"p", "h"}}, {});
    HPLayout L = planar_draw(rec);
    CHECK(L.points[0] == GridPoint{1, 1});
    CHECK(L.rects[0].x_left == 0);
    CHECK(L.rects[0].x_right == 2);
    CHECK(L.rects[0].y_bottom == 0);
    CHECK(L.rects[0].y_top == 2);
    CHECK(L.routes.empty());
    CHECK(L.crossing_count == 0);
    CHECK(L.downward);
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("cherry cospeciation: planar and downward") {
    Reconciliation rec = make_rec("(a,b)r;", "(x,y)q;", {{"x", "a"}, {"y", "b"}}, {{"q", "r"}});
    HPLayout L = planar_draw(rec);
    CHECK(L.crossing_count == 0);
    CHECK(L.downward);
    NodeId q = rec.parasite->require("q");
    // q sits in r's rectangle, above both leaves.
    CHECK(L.points[q].y > L.points[rec.parasite->require("x")].y);
    CHECK(L.points[q].y > L.points[rec.parasite->require("y")].y);
    const Rect& rr = L.rects[rec.host->require("r")];
    CHECK(L.points[q].x > rr.x_left);
    CHECK(L.points[q].x < rr.x_right);
    CHECK(L.points[q].y > rr.y_bottom);
    CHECK(L.points[q].y < rr.y_top);
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("crossed cherry still planar via flip") {
    Reconciliation rec = make_rec("(a,b)r;", "(x,y)q;", {{"x", "b"}, {"y", "a"}}, {{"q", "r"}});
    HPLayout L = planar_draw(rec);
    CHECK(L.crossing_count == 0);
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("count_crossings examples") {
    SUBCASE("two disjoint arcs") {
        std::vector<Route> routes;
        routes.push_back({0, 1, false, {{1, 5}, {1, 1}}});
        routes.push_back({2, 3, false, {{7, 5}, {7, 1}}});
        CHECK(count_crossings(routes, nullptr, nullptr) == 0);
    }
    SUBCASE("L-shapes crossing once") {
        // a: (1,5)->(7,1), b: (5,7)->(3,1); a's horizontal crosses b's vertical.
        std::vector<Route> routes;
        routes.push_back({0, 1, false, {{1, 5}, {7, 5}, {7, 1}}});
        routes.push_back({2, 3, false, {{5, 7}, {3, 7}, {3, 1}}});
        std::vector<CrossingRecord> rec;
        CHECK(count_crossings(routes, &rec, nullptr) == 1);
        REQUIRE(rec.size() == 1);
        CHECK(rec[0].at == GridPoint{3, 5});
        CHECK_FALSE(rec[0].overlap);
    }
    SUBCASE("shared parent endpoint does not count") {
        std::vector<Route> routes;
        routes.push_back({0, 1, false, {{3, 5}, {1, 5}, {1, 1}}});
        routes.push_back({0, 2, false, {{3, 5}, {5, 5}, {5, 1}}});
        CHECK(count_crossings(routes, nullptr, nullptr) == 0);
    }
    SUBCASE("collinear overlap counts once with a warning") {
        std::vector<Route> routes;
        routes.push_back({0, 1, false, {{1, 9}, {1, 1}}});
        routes.push_back({2, 3, false, {{1, 7}, {1, 3}}});
        std::vector<std::string> warnings;
        CHECK(count_crossings(routes, nullptr, &warnings) == 1);
        CHECK(warnings.size() == 1);
    }
    SUBCASE("touching a foreign endpoint counts") {
        std::vector<Route> routes;
        routes.push_back({0, 1, false, {{1, 5}, {1, 1}}});
        routes.push_back({2, 3, false, {{0, 3}, {2, 3}}});  // passes through (1,3)
        CHECK(count_crossings(routes, nullptr, nullptr) == 1);
    }
    SUBCASE("symmetric in arc order and translation invariant") {
        std::vector<Route> a;
        a.push_back({0, 1, false, {{1, 5}, {7, 5}, {7, 1}}});
        a.push_back({2, 3, false, {{5, 7}, {3, 7}, {3, 1}}});
        std::vector<Route> b{a[1], a[0]};
        CHECK(count_crossings(a, nullptr, nullptr) == count_crossings(b, nullptr, nullptr));
        for (Route& r : a)
            for (GridPoint& p : r.pts) {
                p.x += 4;
                p.y += 6;
            }
        CHECK(count_crossings(a, nullptr, nullptr) == 1);
    }
}

TEST_CASE("crossing counter agrees with the rasterizing oracle on random layouts") {
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        CophyInstance inst = gen_random_instance(6, 7, 0.5, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        HPLayout L = shorten_host_switch(rec);
        CHECK(count_crossings(L.routes, nullptr, nullptr) == brute_force_crossings(L.routes));
    }
}

TEST_CASE("planar_draw on every planar time-consistent random instance is planar downward") {
    int planar_seen = 0;
    for (uint64_t seed = 1; seed <= 80; ++seed) {
        CophyInstance inst = gen_random_instance(6, 6, 0.3, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        if (!is_planar_instance(*inst.host, *inst.parasite, inst.phi)) continue;
        ++planar_seen;
        HPLayout L = planar_draw(rec);
        CHECK(L.crossing_count == 0);
        CHECK(L.downward);
        auto rep = check_layout(L, rec);
        if (!rep.ok()) {
            for (auto& v : rep.violations) MESSAGE(v);
        }
        CHECK(rep.ok());
    }
    CHECK(planar_seen > 10);
}

TEST_CASE("planar_draw rejects non-planar and time-inconsistent inputs") {
    Reconciliation nonplanar = lca_rec("(a,b)r;", "((u1,u2)s,(v1,v2)t)q;",
                                       {{"u1", "a"}, {"u2", "b"}, {"v1", "a"}, {"v2", "b"}});
    CHECK_THROWS_AS(planar_draw(nonplanar), not_planar_error);

    Reconciliation cyc = make_rec("((h1,h2)m1,(h3,h4)m2)r;", "(l1,(l3,(l4,l5)c)b)a;",
                                  {{"l1", "h1"}, {"l3", "h3"}, {"l4", "h1"}, {"l5", "h2"}},
                                  {{"a", "h1"}, {"b", "m2"}, {"c", "m1"}});
    CHECK_THROWS_AS(planar_draw(cyc), time_inconsistent_error);
}

TEST_CASE("explicit pi and sigma overload matches the pipeline") {
    Reconciliation rec = make_rec("((a,b)x,c)r;", "((u,v)p,w)q;",
                                  {{"u", "a"}, {"v", "b"}, {"w", "c"}}, {{"p", "x"}, {"q", "r"}});
    auto pi = check_time_consistency(rec);
    REQUIRE(pi.has_value());
    UnionGraph g = build_union_graph(*rec.host, *rec.parasite, rec.phi);
    auto emb = test_planarity(g);
    REQUIRE(emb.has_value());
    auto sigma = leaf_order_from_embedding(*emb, g, *rec.host, *rec.parasite);
    HPLayout L = planar_draw(rec, *pi, sigma);
    CHECK(L.crossing_count == 0);
    CHECK(L.downward);
    CHECK(check_layout(L, rec).ok());

    SUBCASE("invalid pi is rejected") {
        std::vector<NodeId> bad = *pi;
        std::reverse(bad.begin(), bad.end());
        CHECK_THROWS_AS(planar_draw(rec, bad, sigma), time_inconsistent_error);
    }
}

TEST_CASE("losses appear as markers inside the skipped hosts") {
    Reconciliation rec = make_rec("(((a,b)y,c)x,d)r;", "(u,v)q;", {{"u", "a"}, {"v", "d"}},
                                  {{"q", "r"}});
    HPLayout L = planar_draw(rec);
    // Arc q->u skips x and y.
    CHECK(L.dummies.size() == 2);
    for (const auto& d : L.dummies) {
        const Rect& r = L.rects[d.host];
        CHECK(d.at.x > r.x_left);
        CHECK(d.at.x < r.x_right);
        CHECK(d.at.y > r.y_bottom);
        CHECK(d.at.y < r.y_top);
    }
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("check_layout flags corrupted layouts") {
    Reconciliation rec = make_rec("(a,b)r;", "(x,y)q;", {{"x", "a"}, {"y", "b"}}, {{"q", "r"}});
    HPLayout L = planar_draw(rec);
    SUBCASE("parity violation") {
        L.points[rec.parasite->require("x")].x += 1;
        CHECK_FALSE(check_layout(L, rec).ok());
    }
    SUBCASE("tiling violation") {
        L.rects[rec.host->require("a")].x_right += 2;
        CHECK_FALSE(check_layout(L, rec).ok());
    }
    SUBCASE("containment violation") {
        L.points[rec.parasite->require("q")].y = L.rects[rec.host->require("r")].y_top + 1;
        CHECK_FALSE(check_layout(L, rec).ok());
    }
}

TEST_CASE("empty hosts get thin rectangles and tiling still holds") {
    // Host d never carries a parasite.
    Reconciliation rec = lca_rec("((a,b)x,(c,d)y)r;", "((u,v)p,w)q;",
                                 {{"u", "a"}, {"v", "b"}, {"w", "c"}});
    HPLayout L = planar_draw(rec);
    CHECK(check_layout(L, rec).ok());
    const Rect& rd = L.rects[rec.host->require("d")];
    CHECK(rd.x_right - rd.x_left == 2);
}

TEST_CASE("compact y keeps invariants and downwardness") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        CophyInstance inst = gen_random_instance(6, 6, 0.3, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        LayoutOptions opts;
        opts.compact_y = true;
        HPLayout L = shorten_host_switch(rec, opts);
        CHECK(L.downward);
        auto rep = check_layout(L, rec);
        if (!rep.ok())
            for (auto& v : rep.violations) MESSAGE(v);
        CHECK(rep.ok());
        // Compaction never increases the drawing height.
        HPLayout base = shorten_host_switch(rec);
        CHECK(L.top <= base.top);
    }
}

TEST_CASE("deep empty host subtrees collapse to legal zero-height bands") {
    // The tower under d2 holds no parasites; its rectangles are squeezed
    // between the bottom line and the low content elsewhere.
    Reconciliation rec = lca_rec("((((e1,e2)d1,e3)d2,a)m,b)r;", "(x,y)q;",
                                 {{"x", "a"}, {"y", "b"}});
    HPLayout L = planar_draw(rec);
    auto rep = check_layout(L, rec);
    for (auto& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok());
    CHECK(L.crossing_count == 0);
    const Rect& d1 = L.rects[rec.host->require("d1")];
    CHECK(d1.y_top == d1.y_bottom);  // forced degenerate band
    const Rect& d2 = L.rects[rec.host->require("d2")];
    CHECK(d2.y_top > d2.y_bottom);
}

TEST_CASE("compact y preserves crossing-freeness of the planar construction") {
    LayoutOptions opts;
    opts.compact_y = true;
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        CophyInstance inst = gen_random_instance(6, 6, 0.3, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        if (!is_planar_instance(*inst.host, *inst.parasite, inst.phi)) continue;
        HPLayout L = planar_draw(rec, opts);
        CHECK(L.crossing_count == 0);
        CHECK(L.downward);
        CHECK(check_layout(L, rec).ok());
    }
}

TEST_CASE("single parasite leaf layouts work for every producer") {
    Reconciliation rec = lca_rec("((a,b)x,(c,d)y)r;", "p;", {{"p", "c"}});
    for (int algo = 0; algo < 3; ++algo) {
        HPLayout L = algo == 0   ? planar_draw(rec)
                     : algo == 1 ? shorten_host_switch(rec)
                                 : search_maximal_planar(rec);
        CHECK(L.crossing_count == 0);
        CHECK(check_layout(L, rec).ok());
    }
}

TEST_CASE("shorten_host_switch on planar no-switch instances gives zero crossings") {
    Reconciliation rec = make_rec("(a,b)r;", "(x,y)q;", {{"x", "b"}, {"y", "a"}}, {{"q", "r"}});
    HPLayout L = shorten_host_switch(rec);
    CHECK(L.crossing_count == 0);
    CHECK(L.downward);
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("shorten_host_switch flips to shorten a long switch") {
    // Host: ((a,b)x,(c,d)y)r. A switch from subtree(a-side) to c wants b and c
    // adjacent. With parse order, a,b | c,d: switch from b to c is short if x
    // keeps (a,b) and y keeps (c,d).
    Reconciliation rec = make_rec("((a,b)x,(c,d)y)r;", "((u,(s1,s2)m)p,(v,w)n)q;",
                                  {{"u", "a"}, {"s1", "b"}, {"s2", "c"}, {"v", "c"}, {"w", "d"}},
                                  {{"m", "b"}, {"p", "x"}, {"n", "y"}, {"q", "r"}});
    REQUIRE(validate(rec).ok());
    EventReport er = classify_events(rec);
    CHECK(er.host_switches == 1);  // m switches s2 to c
    HPLayout L = shorten_host_switch(rec);
    CHECK(check_layout(L, rec).ok());
    // b must remain the right child of x so the switch from b reaches toward c.
    const Rect& rb = L.rects[rec.host->require("b")];
    const Rect& ra = L.rects[rec.host->require("a")];
    CHECK(ra.x_left < rb.x_left);
}

TEST_CASE("search_maximal_planar equals planar_draw on planar instances") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        CophyInstance inst = gen_random_instance(6, 6, 0.3, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        if (!is_planar_instance(*inst.host, *inst.parasite, inst.phi)) continue;
        HPLayout L = search_maximal_planar(rec);
        CHECK(L.crossing_count == 0);
        CHECK(L.downward);
        CHECK(check_layout(L, rec).ok());
    }
}

TEST_CASE("search_maximal_planar on a non-planar instance has crossings but stays valid") {
    Reconciliation rec = lca_rec("(a,b)r;", "((u1,u2)s,(v1,v2)t)q;",
                                 {{"u1", "a"}, {"u2", "b"}, {"v1", "a"}, {"v2", "b"}});
    HPLayout L = search_maximal_planar(rec);
    CHECK(L.crossing_count >= 1);
    CHECK(L.downward);
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("hp_to_tanglegram mirrors a planar drawing") {
    Reconciliation rec = make_rec("((a,b)x,c)r;", "((u,v)p,w)q;",
                                  {{"u", "a"}, {"v", "b"}, {"w", "c"}}, {{"p", "x"}, {"q", "r"}});
    HPLayout L = planar_draw(rec);
    TanglegramDrawing t = hp_to_tanglegram(L, rec);
    CHECK(t.tangles_planar);
    CHECK(t.tangles.size() == 3);
    // Parasite leaf order equals the x-order of the layout.
    std::vector<NodeId> sigma;
    {
        std::vector<std::pair<long, NodeId>> xs;
        for (NodeId p : rec.parasite->leaves()) xs.emplace_back(L.points[p].x, p);
        std::sort(xs.begin(), xs.end());
        for (auto& [x, p] : xs) sigma.push_back(p);
    }
    CHECK(t.parasite_leaf_order == sigma);
    // Mirrored points sit below the line.
    for (NodeId p = 0; p < rec.parasite->node_count(); ++p)
        CHECK(t.parasite_pos[p].y == -L.points[p].y);

    SUBCASE("single leaf instance is trivially planar") {
        Reconciliation one = make_rec("h;", "p;", {{"p", "h"}}, {});
        TanglegramDrawing t1 = hp_to_tanglegram(planar_draw(one), one);
        CHECK(t1.tangles_planar);
        CHECK(t1.tangles.size() == 1);
    }
    SUBCASE("layouts with crossings are rejected") {
        Reconciliation bad = lca_rec("(a,b)r;", "((u1,u2)s,(v1,v2)t)q;",
                                     {{"u1", "a"}, {"u2", "b"}, {"v1", "a"}, {"v2", "b"}});
        HPLayout nb = search_maximal_planar(bad);
        CHECK_THROWS_AS(hp_to_tanglegram(nb, bad), error);
    }
}

TEST_CASE("tanglegram mirror stays planar over random planar instances") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        CophyInstance inst = gen_random_instance(5, 6, 0.2, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        if (!is_planar_instance(*inst.host, *inst.parasite, inst.phi)) continue;
        TanglegramDrawing t = hp_to_tanglegram(planar_draw(rec), rec);
        CHECK(t.tangles_planar);
    }
}

TEST_CASE("matched caterpillars at 13-host/19-parasite scale stay planar") {
    // Shape-level reproduction of a known planar pairing: host caterpillar
    // with 13 nodes, parasite caterpillar with 19, leaves associated in
    // left-to-right order (several parasite leaves per host leaf).
    std::string host = "((((((a,b)i1,c)i2,d)i3,e)i4,f)i5,g)i6;";
    std::string para =
        "(((((((((p1,p2)q1,p3)q2,p4)q3,p5)q4,p6)q5,p7)q6,p8)q7,p9)q8,p10)q9;";
    const char* targets[] = {"a", "a", "b", "c", "d", "d", "e", "f", "g", "g"};
    std::vector<std::pair<std::string, std::string>> phi;
    for (int i = 0; i < 10; ++i) phi.emplace_back("p" + std::to_string(i + 1), targets[i]);
    Reconciliation rec = lca_rec(host, para, phi);
    CHECK(rec.host->node_count() == 13);
    CHECK(rec.parasite->node_count() == 19);
    CHECK(is_planar_instance(*rec.host, *rec.parasite, rec.phi));
    HPLayout L = planar_draw(rec);
    CHECK(L.crossing_count == 0);
    CHECK(check_layout(L, rec).ok());
}

TEST_CASE("15-host/19-parasite random family reaches small crossing counts") {
    int best = 1 << 30;
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        CophyInstance inst = gen_random_instance(8, 10, 0.3, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        best = std::min(best, shorten_host_switch(rec).crossing_count);
    }
    CHECK(best <= 5);  // deterministic corpus; observed minimum 4
}

TEST_CASE("all producers keep every invariant on random instances") {
    for (uint64_t seed = 100; seed < 160; ++seed) {
        CophyInstance inst = gen_random_instance(7, 7, 0.4, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        HPLayout shs = shorten_host_switch(rec);
        CHECK(check_layout(shs, rec).ok());
        CHECK(shs.downward);
        HPLayout smp = search_maximal_planar(rec);
        CHECK(check_layout(smp, rec).ok());
        CHECK(smp.downward);
    }
}
