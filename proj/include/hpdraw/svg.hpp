#pragma once

#include <string>

#include "hpdraw/document.hpp"

namespace hpdraw {

struct SvgStyle {
    int scale = 16;        // pixels per grid unit
    double slant = 0.4;    // drop of the inner top corner, grid units
    bool slanted = true;   // "plain" disables the slant
    bool midpoint_x = true;  // parent between children when neither is a switch
    double bend_radius = 0.45;
    std::string host_fill = "#dbe8f4";
    std::string host_stroke = "#5b87a6";
    std::string parasite_color = "#222222";
    std::string switch_color = "#c03a2b";
    std::string loss_color = "#7a5ca8";
    std::string crossing_color = "#e0301e";
    bool labels = true;
    int font_size = 10;

    static SvgStyle named(const std::string& name);  // "default" | "plain"
    // Overrides from a JSON file; unknown keys rejected.
    void apply_file(const std::string& path);
};

std::string emit_svg(const LayoutDocument& doc, const SvgStyle& style = {});

}  // namespace hpdraw
