#include "hpdraw/document.hpp"

#include <algorithm>

namespace hpdraw {

using nlohmann::json;

LayoutDocument make_document(const Reconciliation& rec, const std::string& algorithm,
                             const std::string& gamma_name, const HPLayout& layout,
                             bool compact_y, double timing_ms) {
    LayoutDocument doc;
    doc.algorithm = algorithm;
    doc.gamma_name = gamma_name;
    doc.compact_y = compact_y;
    doc.host_newick = rec.host->to_newick();
    doc.parasite_newick = rec.parasite->to_newick();
    for (NodeId v = 0; v < rec.host->node_count(); ++v)
        if (rec.host->is_synthetic_label(v)) doc.host_synthetic.push_back(rec.host->label(v));
    for (NodeId v = 0; v < rec.parasite->node_count(); ++v)
        if (rec.parasite->is_synthetic_label(v))
            doc.parasite_synthetic.push_back(rec.parasite->label(v));
    std::sort(doc.host_synthetic.begin(), doc.host_synthetic.end());
    std::sort(doc.parasite_synthetic.begin(), doc.parasite_synthetic.end());
    doc.layout = layout;
    doc.events = classify_events_lenient(rec);
    doc.timing_ms = timing_ms;
    return doc;
}

json document_to_json(const LayoutDocument& doc, bool include_timing) {
    // Trees re-parsed for label lookup; newicks are the source of truth.
    PhyloTree H = PhyloTree::from_newick(doc.host_newick);
    PhyloTree P = PhyloTree::from_newick(doc.parasite_newick);
    const HPLayout& L = doc.layout;

    json j;
    j["algorithm"] = doc.algorithm;
    j["gamma"] = doc.gamma_name;
    j["compact_y"] = doc.compact_y;
    j["instance"] = {{"host", doc.host_newick},
                     {"parasite", doc.parasite_newick},
                     {"host_leaves", H.leaf_count()},
                     {"host_nodes", H.node_count()},
                     {"parasite_leaves", P.leaf_count()},
                     {"parasite_nodes", P.node_count()},
                     {"synthetic_labels",
                      {{"host", doc.host_synthetic}, {"parasite", doc.parasite_synthetic}}}};

    json rects = json::object();
    for (NodeId h = 0; h < H.node_count(); ++h) {
        const Rect& r = L.rects[h];
        rects[H.label(h)] = {{"x_left", r.x_left},
                             {"x_right", r.x_right},
                             {"y_bottom", r.y_bottom},
                             {"y_top", r.y_top}};
    }
    json points = json::object();
    for (NodeId p = 0; p < P.node_count(); ++p)
        points[P.label(p)] = {L.points[p].x, L.points[p].y};

    json losses = json::array();
    for (const auto& d : L.dummies)
        losses.push_back({{"arc", {P.label(d.arc_parent), P.label(d.arc_child)}},
                          {"host", H.label(d.host)},
                          {"x", d.at.x},
                          {"y", d.at.y}});

    std::vector<const Route*> sorted_routes;
    for (const Route& r : L.routes) sorted_routes.push_back(&r);
    std::sort(sorted_routes.begin(), sorted_routes.end(), [&](const Route* a, const Route* b) {
        return std::make_pair(P.label(a->parent), P.label(a->child)) <
               std::make_pair(P.label(b->parent), P.label(b->child));
    });
    json routes = json::array();
    for (const Route* r : sorted_routes) {
        json pts = json::array();
        for (const GridPoint& p : r->pts) pts.push_back({p.x, p.y});
        routes.push_back({{"from", P.label(r->parent)},
                          {"to", P.label(r->child)},
                          {"switch", r->is_switch},
                          {"points", pts}});
    }

    json pairs = json::array();
    for (const CrossingRecord& c : L.crossings) {
        const Route& a = L.routes[c.arc_a];
        const Route& b = L.routes[c.arc_b];
        pairs.push_back({{"a", {P.label(a.parent), P.label(a.child)}},
                         {"b", {P.label(b.parent), P.label(b.child)}},
                         {"at", {c.at.x, c.at.y}},
                         {"overlap", c.overlap}});
    }

    j["layout"] = {{"top", L.top},
                   {"right", L.right},
                   {"downward", L.downward},
                   {"rects", rects},
                   {"points", points},
                   {"losses", losses},
                   {"routes", routes},
                   {"crossings", {{"count", L.crossing_count}, {"pairs", pairs}}},
                   {"warnings", L.warnings}};
    j["crossing_count"] = L.crossing_count;

    json per_node = json::object();
    for (NodeId p : P.internal_nodes())
        if (doc.events.event[p]) per_node[P.label(p)] = to_string(*doc.events.event[p]);
    json arc_losses = json::object();
    json switch_arcs = json::array();
    for (const Route* r : sorted_routes) {
        arc_losses[P.label(r->parent) + ">" + P.label(r->child)] = doc.events.losses[r->child];
        if (doc.events.switch_arc[r->child])
            switch_arcs.push_back(P.label(r->parent) + ">" + P.label(r->child));
    }
    j["events"] = {{"cospeciations", doc.events.cospeciations},
                   {"duplications", doc.events.duplications},
                   {"host_switches", doc.events.host_switches},
                   {"total_losses", doc.events.total_losses},
                   {"unclassified", doc.events.unclassified},
                   {"per_node", per_node},
                   {"arc_losses", arc_losses},
                   {"switch_arcs", switch_arcs}};
    if (include_timing) j["timing_ms"] = doc.timing_ms;
    return j;
}

std::string emit_json(const LayoutDocument& doc, bool include_timing) {
    return document_to_json(doc, include_timing).dump(2) + "\n";
}

LayoutDocument parse_document_json(const std::string& text) {
    json j = json::parse(text);
    LayoutDocument doc;
    doc.algorithm = j.at("algorithm").get<std::string>();
    doc.gamma_name = j.at("gamma").get<std::string>();
    doc.compact_y = j.at("compact_y").get<bool>();
    doc.host_newick = j.at("instance").at("host").get<std::string>();
    doc.parasite_newick = j.at("instance").at("parasite").get<std::string>();
    const json& syn = j.at("instance").at("synthetic_labels");
    doc.host_synthetic = syn.at("host").get<std::vector<std::string>>();
    doc.parasite_synthetic = syn.at("parasite").get<std::vector<std::string>>();

    PhyloTree H = PhyloTree::from_newick(doc.host_newick);
    PhyloTree P = PhyloTree::from_newick(doc.parasite_newick);
    const json& l = j.at("layout");
    HPLayout& L = doc.layout;
    L.top = l.at("top").get<long>();
    L.right = l.at("right").get<long>();
    L.downward = l.at("downward").get<bool>();
    L.rects.resize(H.node_count());
    for (auto& [label, r] : l.at("rects").items()) {
        NodeId h = H.require(label);
        L.rects[h] = {r.at("x_left").get<long>(), r.at("x_right").get<long>(),
                      r.at("y_bottom").get<long>(), r.at("y_top").get<long>()};
    }
    L.points.resize(P.node_count());
    for (auto& [label, p] : l.at("points").items())
        L.points[P.require(label)] = {p.at(0).get<long>(), p.at(1).get<long>()};
    for (const json& d : l.at("losses"))
        L.dummies.push_back({P.require(d.at("arc").at(0).get<std::string>()),
                             P.require(d.at("arc").at(1).get<std::string>()),
                             H.require(d.at("host").get<std::string>()),
                             {d.at("x").get<long>(), d.at("y").get<long>()}});

    // Routes rebuilt in child-id order regardless of serialized order.
    std::vector<Route> routes(P.node_count());
    std::vector<char> have(P.node_count(), 0);
    for (const json& r : l.at("routes")) {
        Route route;
        route.parent = P.require(r.at("from").get<std::string>());
        route.child = P.require(r.at("to").get<std::string>());
        route.is_switch = r.at("switch").get<bool>();
        for (const json& p : r.at("points"))
            route.pts.push_back({p.at(0).get<long>(), p.at(1).get<long>()});
        have[route.child] = 1;
        routes[route.child] = std::move(route);
    }
    for (NodeId c = 0; c < P.node_count(); ++c)
        if (have[c]) L.routes.push_back(std::move(routes[c]));

    L.crossing_count = l.at("crossings").at("count").get<int>();
    auto route_index = [&](const json& arc) {
        NodeId parent = P.require(arc.at(0).get<std::string>());
        NodeId child = P.require(arc.at(1).get<std::string>());
        for (size_t i = 0; i < L.routes.size(); ++i)
            if (L.routes[i].parent == parent && L.routes[i].child == child) return static_cast<int>(i);
        throw parse_error("crossing references an unknown arc");
    };
    for (const json& c : l.at("crossings").at("pairs"))
        L.crossings.push_back({route_index(c.at("a")), route_index(c.at("b")),
                               {c.at("at").at(0).get<long>(), c.at("at").at(1).get<long>()},
                               c.at("overlap").get<bool>()});
    for (const json& w : l.at("warnings")) L.warnings.push_back(w.get<std::string>());

    const json& ev = j.at("events");
    doc.events.event.assign(P.node_count(), std::nullopt);
    doc.events.losses.assign(P.node_count(), 0);
    doc.events.switch_arc.assign(P.node_count(), 0);
    doc.events.cospeciations = ev.at("cospeciations").get<int>();
    doc.events.duplications = ev.at("duplications").get<int>();
    doc.events.host_switches = ev.at("host_switches").get<int>();
    doc.events.total_losses = ev.at("total_losses").get<int>();
    doc.events.unclassified = ev.at("unclassified").get<int>();
    for (auto& [label, name] : ev.at("per_node").items()) {
        std::string s = name.get<std::string>();
        EventType e = s == "cospeciation" ? EventType::CoSpeciation
                      : s == "duplication" ? EventType::Duplication
                                           : EventType::HostSwitch;
        doc.events.event[P.require(label)] = e;
    }
    for (auto& [key, v] : ev.at("arc_losses").items()) {
        std::string child = key.substr(key.find('>') + 1);
        doc.events.losses[P.require(child)] = v.get<int>();
    }
    for (const json& s : ev.at("switch_arcs")) {
        std::string key = s.get<std::string>();
        doc.events.switch_arc[P.require(key.substr(key.find('>') + 1))] = 1;
    }
    if (j.contains("timing_ms")) doc.timing_ms = j.at("timing_ms").get<double>();
    return doc;
}

}  // namespace hpdraw
