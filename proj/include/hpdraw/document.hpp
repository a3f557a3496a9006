#pragma once

#include <string>

#include <json.hpp>

#include "hpdraw/instance.hpp"
#include "hpdraw/layout.hpp"

namespace hpdraw {

// Everything one layout run produces, ready for emission. The timing field
// is volatile and therefore only serialized on request, keeping default
// outputs byte-reproducible.
struct LayoutDocument {
    std::string algorithm;  // planar | shs | smp | oracle
    std::string gamma_name;
    bool compact_y = false;
    std::string host_newick;
    std::string parasite_newick;
    std::vector<std::string> host_synthetic;      // generated host labels
    std::vector<std::string> parasite_synthetic;  // generated parasite labels
    HPLayout layout;
    EventReport events;
    double timing_ms = 0.0;
};

LayoutDocument make_document(const Reconciliation& rec, const std::string& algorithm,
                             const std::string& gamma_name, const HPLayout& layout,
                             bool compact_y, double timing_ms);

nlohmann::json document_to_json(const LayoutDocument& doc, bool include_timing = false);

// Canonical serialization: sorted keys, integer coordinates, 2-space indent,
// trailing newline. Byte-identical for identical inputs.
std::string emit_json(const LayoutDocument& doc, bool include_timing = false);

// Inverse of emit_json (timing restored only if present).
LayoutDocument parse_document_json(const std::string& text);

}  // namespace hpdraw
