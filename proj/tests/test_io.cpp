#include <doctest.h>

#include "helpers.hpp"
#include "hpdraw/document.hpp"
#include "hpdraw/generators.hpp"
#include "hpdraw/svg.hpp"

using namespace hpdraw;
using namespace hpdraw::testing;

static const char* kMinimal = "#HOST\nh;\n#PARASITE\np;\n#LEAFMAP\np h\n";

TEST_CASE("minimal instance file parses") {
    CophyInstance inst = parse_instance(kMinimal);
    CHECK(inst.host->node_count() == 1);
    CHECK(inst.parasite->node_count() == 1);
    CHECK(inst.gammas.empty());
    CHECK(inst.phi[0] == 0);
}

TEST_CASE("gamma sections are optional and named") {
    std::string text =
        "#HOST\n(a,b)r;\n#PARASITE\n(x,y)q;\n#LEAFMAP\nx a\ny b\n#GAMMA g1\nq r\n#GAMMA g2\nq a\n";
    CophyInstance inst = parse_instance(text);
    REQUIRE(inst.gammas.size() == 2);
    CHECK(inst.gammas[0].first == "g1");
    Reconciliation rec = inst.reconciliation("g2");
    CHECK(rec.gamma[inst.parasite->require("q")] == inst.host->require("a"));
    CHECK(validate(inst.reconciliation("g1")).ok());
}

TEST_CASE("instance format errors") {
    CHECK_THROWS_AS(parse_instance("#HOST\n(a,b)r;\n#LEAFMAP\n"), parse_error);  // no parasite
    CHECK_THROWS_AS(parse_instance("#HOST\n(a,b)r;\n#PARASITE\np;\n#LEAFMAP\np r\n"),
                    parse_error);  // phi to internal host
    CHECK_THROWS_AS(parse_instance("#HOST\n(a,b)r;\n#PARASITE\np;\n#LEAFMAP\np zz\n"),
                    unknown_node_error);
    CHECK_THROWS_AS(parse_instance("#HOST\n(a,b)r;\n#PARASITE\n(x,y)q;\n#LEAFMAP\nx a\n"),
                    parse_error);  // missing leaf map entry
    CHECK_THROWS_AS(
        parse_instance("#HOST\n(a,b)r;\n#PARASITE\n(x,y)q;\n#LEAFMAP\nx a\ny b\n#GAMMA g\n"),
        parse_error);  // gamma missing internal node
}

TEST_CASE("write then parse is the identity") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        CophyInstance inst = gen_random_instance(5, 6, 0.4, seed);
        std::string text = write_instance(inst);
        CophyInstance back = parse_instance(text);
        CHECK(write_instance(back) == text);
    }
}

TEST_CASE("gamma file appends to an instance") {
    CophyInstance inst = parse_instance("#HOST\n(a,b)r;\n#PARASITE\n(x,y)q;\n#LEAFMAP\nx a\ny b\n");
    append_gamma_file(inst, "#GAMMA extra\nq r\n");
    CHECK(inst.gammas.size() == 1);
    CHECK(validate(inst.reconciliation("extra")).ok());
    CHECK_THROWS_AS(append_gamma_file(inst, "#GAMMA extra\nq a\n"), parse_error);  // dup name
}

TEST_CASE("json emission is canonical and round-trips") {
    Reconciliation rec = make_rec("((a,b)x,c)r;", "((u,v)p,w)q;",
                                  {{"u", "a"}, {"v", "b"}, {"w", "c"}}, {{"p", "x"}, {"q", "r"}});
    HPLayout L = planar_draw(rec);
    LayoutDocument doc = make_document(rec, "planar", "g1", L, false, 12.5);

    std::string j1 = emit_json(doc);
    std::string j2 = emit_json(doc);
    CHECK(j1 == j2);
    CHECK(j1.find("timing_ms") == std::string::npos);  // volatile field off by default
    CHECK(emit_json(doc, true).find("timing_ms") != std::string::npos);

    LayoutDocument back = parse_document_json(j1);
    CHECK(emit_json(back) == j1);
    CHECK(back.layout.crossing_count == L.crossing_count);
    CHECK(check_layout(back.layout, rec).ok());

    // Coordinates are serialized as integers.
    CHECK(j1.find(".0") == std::string::npos);
}

TEST_CASE("emitted documents pass check_layout on re-parse across producers") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        CophyInstance inst = gen_random_instance(6, 6, 0.4, seed);
        Reconciliation rec = inst.reconciliation(size_t{0});
        if (!check_time_consistency(rec)) continue;
        for (int algo = 0; algo < 2; ++algo) {
            HPLayout L = algo == 0 ? shorten_host_switch(rec) : search_maximal_planar(rec);
            LayoutDocument doc = make_document(rec, algo == 0 ? "shs" : "smp", "g1", L, false, 0);
            LayoutDocument back = parse_document_json(emit_json(doc));
            CHECK(check_layout(back.layout, rec).ok());
            CHECK(back.layout.crossing_count == count_crossings(back.layout.routes, nullptr, nullptr));
        }
    }
}

TEST_CASE("single-leaf document round-trips") {
    Reconciliation rec = make_rec("h;", "p;", {{"p", "h"}}, {});
    LayoutDocument doc = make_document(rec, "planar", "lca", planar_draw(rec), false, 0);
    std::string j = emit_json(doc);
    CHECK(emit_json(parse_document_json(j)) == j);
    CHECK(emit_svg(doc).find("<svg") == 0);
}

TEST_CASE("svg emission") {
    Reconciliation rec = make_rec("((a,b)x,c)r;", "((u,v)p,w)q;",
                                  {{"u", "a"}, {"v", "b"}, {"w", "c"}}, {{"p", "x"}, {"q", "r"}});
    HPLayout L = planar_draw(rec);
    LayoutDocument doc = make_document(rec, "planar", "g1", L, false, 0);

    SUBCASE("no crossing glyphs on a planar drawing") {
        std::string svg = emit_svg(doc);
        CHECK(svg.find("class=\"crossing\"") == std::string::npos);
        CHECK(svg.find("<svg") == 0);
    }
    SUBCASE("crossing glyphs appear when crossings exist") {
        Reconciliation bad = lca_rec("(a,b)r;", "((u1,u2)s,(v1,v2)t)q;",
                                     {{"u1", "a"}, {"u2", "b"}, {"v1", "a"}, {"v2", "b"}});
        HPLayout nb = search_maximal_planar(bad);
        LayoutDocument nd = make_document(bad, "smp", "g1", nb, false, 0);
        CHECK(emit_svg(nd).find("class=\"crossing\"") != std::string::npos);
    }
    SUBCASE("plain style drops the slant but keeps coordinates") {
        std::string slanted = emit_svg(doc, SvgStyle::named("default"));
        std::string plain = emit_svg(doc, SvgStyle::named("plain"));
        CHECK(slanted != plain);
        CHECK(plain.find("<polygon") != std::string::npos);
    }
    SUBCASE("byte identical for fixed input and style") {
        CHECK(emit_svg(doc) == emit_svg(doc));
    }
    SUBCASE("unknown style rejected") {
        CHECK_THROWS_AS(SvgStyle::named("nope"), error);
    }
}

TEST_CASE("auto internal labels flag flows through instance parsing") {
    std::string text = "#HOST\n(a,b);\n#PARASITE\n(x,y)q;\n#LEAFMAP\nx a\ny b\n";
    CHECK_THROWS_AS(parse_instance(text), parse_error);
    CophyInstance inst = parse_instance(text, true);
    CHECK(inst.host->is_synthetic_label(inst.host->root()));
    // Synthetic labels surface in emitted documents and survive round-trips.
    Reconciliation rec = inst.lca_reconciliation();
    LayoutDocument doc = make_document(rec, "planar", "lca", planar_draw(rec), false, 0);
    REQUIRE(doc.host_synthetic.size() == 1);
    std::string j = emit_json(doc);
    CHECK(j.find("synthetic_labels") != std::string::npos);
    LayoutDocument back = parse_document_json(j);
    CHECK(back.host_synthetic == doc.host_synthetic);
    CHECK(emit_json(back) == j);
}
