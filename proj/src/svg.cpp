#include "hpdraw/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

namespace hpdraw {

using nlohmann::json;

SvgStyle SvgStyle::named(const std::string& name) {
    SvgStyle s;
    if (name == "default" || name == "slanted") return s;
    if (name == "plain") {
        s.slanted = false;
        return s;
    }
    throw error("unknown style '" + name + "' (use default or plain)");
}

void SvgStyle::apply_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open style file " + path);
    json j = json::parse(in);
    for (auto& [key, v] : j.items()) {
        if (key == "scale") scale = v.get<int>();
        else if (key == "slant") slant = v.get<double>();
        else if (key == "slanted") slanted = v.get<bool>();
        else if (key == "midpoint_x") midpoint_x = v.get<bool>();
        else if (key == "bend_radius") bend_radius = v.get<double>();
        else if (key == "host_fill") host_fill = v.get<std::string>();
        else if (key == "host_stroke") host_stroke = v.get<std::string>();
        else if (key == "parasite_color") parasite_color = v.get<std::string>();
        else if (key == "switch_color") switch_color = v.get<std::string>();
        else if (key == "loss_color") loss_color = v.get<std::string>();
        else if (key == "crossing_color") crossing_color = v.get<std::string>();
        else if (key == "labels") labels = v.get<bool>();
        else if (key == "font_size") font_size = v.get<int>();
        else throw error("unknown style key '" + key + "'");
    }
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string emit_svg(const LayoutDocument& doc, const SvgStyle& style) {
    PhyloTree H = PhyloTree::from_newick(doc.host_newick);
    PhyloTree P = PhyloTree::from_newick(doc.parasite_newick);
    const HPLayout& L = doc.layout;
    const double s = style.scale;
    const double margin = 1.5 * s;
    const double width = L.right * s + 2 * margin;
    const double height = L.top * s + 2 * margin;

    // Grid to image: y grows downward in SVG, the bottom line sits low.
    auto X = [&](double x) { return margin + x * s; };
    auto Y = [&](double y) { return margin + (L.top - y) * s; };

    // Rendered parasite x: midpoint refinement applied here only.
    std::vector<double> rx(P.node_count());
    for (NodeId p = 0; p < P.node_count(); ++p) rx[p] = static_cast<double>(L.points[p].x);
    if (style.midpoint_x) {
        for (NodeId p : P.postorder()) {
            if (P.is_leaf(p)) continue;
            auto [a, b] = P.children(p);
            bool sa = false, sb = false;
            for (const Route& r : L.routes) {
                if (r.child == a) sa = r.is_switch;
                if (r.child == b) sb = r.is_switch;
            }
            if (sa && !sb)
                rx[p] = rx[b];
            else if (sb && !sa)
                rx[p] = rx[a];
            else
                rx[p] = (rx[a] + rx[b]) / 2.0;
        }
    }

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Host icicle. Children are recognizable by the slanted inner top corner.
    out += "<g stroke=\"" + style.host_stroke + "\" stroke-width=\"1\" fill=\"" + style.host_fill +
           "\">\n";
    for (NodeId h = 0; h < H.node_count(); ++h) {
        const Rect& r = L.rects[h];
        double drop_left = 0, drop_right = 0;
        if (style.slanted && h != H.root()) {
            NodeId parent = H.parent(h);
            NodeId sib = H.children(parent)[0] == h ? H.children(parent)[1] : H.children(parent)[0];
            bool is_left = L.rects[h].x_left < L.rects[sib].x_left;
            double d = std::min(style.slant, (r.y_top - r.y_bottom) / 2.0);
            (is_left ? drop_right : drop_left) = d;
        }
        out += "<polygon points=\"" + num(X(r.x_left)) + "," + num(Y(r.y_top - drop_left)) + " " +
               num(X(r.x_right)) + "," + num(Y(r.y_top - drop_right)) + " " + num(X(r.x_right)) +
               "," + num(Y(r.y_bottom)) + " " + num(X(r.x_left)) + "," + num(Y(r.y_bottom)) +
               "\"/>\n";
    }
    out += "</g>\n";
    if (style.labels) {
        out += "<g font-family=\"sans-serif\" font-size=\"" + std::to_string(style.font_size) +
               "\" fill=\"" + style.host_stroke + "\">\n";
        for (NodeId h = 0; h < H.node_count(); ++h) {
            const Rect& r = L.rects[h];
            out += "<text x=\"" + num(X(r.x_left) + 2) + "\" y=\"" + num(Y(r.y_top) + style.font_size + 1) +
                   "\">" + H.label(h) + "</text>\n";
        }
        out += "</g>\n";
    }

    // Parasite arcs: rounded L-routes, host-switch arcs dashed and tinted.
    out += "<g fill=\"none\" stroke-width=\"1.6\">\n";
    for (const Route& r : L.routes) {
        double x1 = rx[r.parent], y1 = static_cast<double>(L.points[r.parent].y);
        double x2 = rx[r.child], y2 = static_cast<double>(L.points[r.child].y);
        std::string color = r.is_switch ? style.switch_color : style.parasite_color;
        std::string dash = r.is_switch ? " stroke-dasharray=\"5,3\"" : "";
        std::string d;
        if (x1 == x2) {
            d = "M " + num(X(x1)) + " " + num(Y(y1)) + " L " + num(X(x2)) + " " + num(Y(y2));
        } else {
            double rad = std::min({style.bend_radius, std::abs(x2 - x1) / 2.0, (y1 - y2) / 2.0});
            double dir = x2 > x1 ? 1.0 : -1.0;
            d = "M " + num(X(x1)) + " " + num(Y(y1)) + " L " + num(X(x2 - dir * rad)) + " " +
                num(Y(y1)) + " Q " + num(X(x2)) + " " + num(Y(y1)) + " " + num(X(x2)) + " " +
                num(Y(y1 - rad)) + " L " + num(X(x2)) + " " + num(Y(y2));
        }
        out += "<path d=\"" + d + "\" stroke=\"" + color + "\"" + dash + "/>\n";
    }
    out += "</g>\n";

    // Loss markers (hexagon-ish diamonds) on the expanded arcs.
    for (const auto& dmy : L.dummies) {
        double cx = X(rx[dmy.arc_child]), cy = Y(dmy.at.y);
        double r = 0.18 * s;
        out += "<polygon points=\"" + num(cx - r) + "," + num(cy) + " " + num(cx) + "," + num(cy - r) +
               " " + num(cx + r) + "," + num(cy) + " " + num(cx) + "," + num(cy + r) +
               "\" fill=\"white\" stroke=\"" + style.loss_color + "\"/>\n";
    }

    // Parasite nodes.
    out += "<g fill=\"" + style.parasite_color + "\">\n";
    for (NodeId p = 0; p < P.node_count(); ++p)
        out += "<circle cx=\"" + num(X(rx[p])) + "\" cy=\"" + num(Y(L.points[p].y)) +
               "\" r=\"2.6\"/>\n";
    out += "</g>\n";
    if (style.labels) {
        out += "<g font-family=\"sans-serif\" font-size=\"" + std::to_string(style.font_size) +
               "\" fill=\"" + style.parasite_color + "\">\n";
        for (NodeId p = 0; p < P.node_count(); ++p)
            out += "<text x=\"" + num(X(rx[p]) + 3) + "\" y=\"" + num(Y(L.points[p].y) - 3) + "\">" +
                   P.label(p) + "</text>\n";
        out += "</g>\n";
    }

    // Crossing glyphs at the canonical intersection points.
    for (const CrossingRecord& c : L.crossings)
        out += "<circle cx=\"" + num(X(c.at.x)) + "\" cy=\"" + num(Y(c.at.y)) +
               "\" r=\"4\" fill=\"none\" stroke=\"" + style.crossing_color +
               "\" stroke-width=\"1.4\" class=\"crossing\"/>\n";

    out += "</svg>\n";
    return out;
}

}  // namespace hpdraw
