#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hpdraw/document.hpp"
#include "hpdraw/generators.hpp"
#include "hpdraw/oracle.hpp"
#include "hpdraw/svg.hpp"

namespace py = pybind11;
using namespace hpdraw;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

struct PyInstance {
    CophyInstance inst;

    Reconciliation pick(const std::string& gamma, bool lca) const {
        if (lca) return inst.lca_reconciliation();
        if (!gamma.empty()) return inst.reconciliation(gamma);
        if (inst.gammas.size() == 1) return inst.reconciliation(size_t{0});
        if (inst.gammas.empty())
            throw error("instance has no gamma; pass lca=True");
        throw error("instance has several gammas; name one");
    }

    std::string pick_name(const std::string& gamma, bool lca) const {
        if (lca) return "lca";
        if (!gamma.empty()) return gamma;
        if (inst.gammas.size() == 1) return inst.gammas[0].first;
        return "";
    }
};

LayoutDocument run_document(const PyInstance& self, const std::string& algo,
                            const std::string& gamma, bool lca, bool compact_y) {
    Reconciliation rec = self.pick(gamma, lca);
    LayoutOptions opts;
    opts.compact_y = compact_y;
    HPLayout L;
    if (algo == "planar")
        L = planar_draw(rec, opts);
    else if (algo == "shs")
        L = shorten_host_switch(rec, opts);
    else if (algo == "smp")
        L = search_maximal_planar(rec, opts);
    else
        throw error("unknown algorithm '" + algo + "' (planar | shs | smp)");
    return make_document(rec, algo, self.pick_name(gamma, lca), L, compact_y, 0.0);
}

}  // namespace

PYBIND11_MODULE(_hpdraw, m) {
    m.doc() = "Host/parasite reconciliation layouts: validation, planarity, "
              "HP-drawings, crossing oracle and instance generators.";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<unknown_node_error>(m, "UnknownNodeError", PyExc_KeyError);
    py::register_exception<not_planar_error>(m, "NotPlanarError", PyExc_ValueError);
    py::register_exception<time_inconsistent_error>(m, "TimeInconsistentError", PyExc_ValueError);
    py::register_exception<limits_exceeded_error>(m, "LimitsExceededError", PyExc_ValueError);
    py::register_exception<event_classification_error>(m, "EventClassificationError",
                                                       PyExc_ValueError);

    m.def(
        "parse_newick",
        [](const std::string& text, bool auto_labels) {
            return PhyloTree::from_newick(text, auto_labels).to_newick();
        },
        py::arg("text"), py::arg("auto_labels") = false,
        "Parse a Newick string and return its canonical form.");

    py::class_<PyInstance>(m, "Instance")
        .def_static(
            "parse",
            [](const std::string& text, bool auto_labels) {
                return PyInstance{parse_instance(text, auto_labels)};
            },
            py::arg("text"), py::arg("auto_labels") = false)
        .def_property_readonly("host_newick",
                               [](const PyInstance& s) { return s.inst.host->to_newick(); })
        .def_property_readonly("parasite_newick",
                               [](const PyInstance& s) { return s.inst.parasite->to_newick(); })
        .def_property_readonly("gamma_names",
                               [](const PyInstance& s) {
                                   std::vector<std::string> names;
                                   for (const auto& [n, g] : s.inst.gammas) names.push_back(n);
                                   return names;
                               })
        .def("write", [](const PyInstance& s) { return write_instance(s.inst); })
        .def(
            "validate",
            [](const PyInstance& s, const std::string& gamma, bool lca) {
                std::vector<std::string> out;
                for (const auto& v : validate(s.pick(gamma, lca)).violations)
                    out.push_back(v.message);
                return out;
            },
            py::arg("gamma") = "", py::arg("lca") = false,
            "List of violated reconciliation conditions; empty means valid.")
        .def(
            "events",
            [](const PyInstance& s, const std::string& gamma, bool lca) {
                Reconciliation rec = s.pick(gamma, lca);
                EventReport er = classify_events(rec);
                py::dict out;
                out["cospeciations"] = er.cospeciations;
                out["duplications"] = er.duplications;
                out["host_switches"] = er.host_switches;
                out["total_losses"] = er.total_losses;
                py::dict per;
                for (NodeId p : rec.parasite->internal_nodes())
                    per[py::str(rec.parasite->label(p))] = to_string(*er.event[p]);
                out["per_node"] = per;
                return out;
            },
            py::arg("gamma") = "", py::arg("lca") = false)
        .def(
            "score",
            [](const PyInstance& s, const std::string& gamma, bool lca,
               std::tuple<int, int, int, int> costs) {
                CostVector cv{std::get<0>(costs), std::get<1>(costs), std::get<2>(costs),
                              std::get<3>(costs)};
                return score(s.pick(gamma, lca), cv);
            },
            py::arg("gamma") = "", py::arg("lca") = false,
            py::arg("costs") = std::make_tuple(0, 2, 1, 3))
        .def(
            "time_order",
            [](const PyInstance& s, const std::string& gamma, bool lca) -> py::object {
                Reconciliation rec = s.pick(gamma, lca);
                auto order = check_time_consistency(rec);
                if (!order) return py::none();
                py::list out;
                for (NodeId v : *order) out.append(rec.parasite->label(v));
                return out;
            },
            py::arg("gamma") = "", py::arg("lca") = false,
            "Temporal ordering of the parasite nodes, or None.")
        .def("is_planar",
             [](const PyInstance& s) {
                 return is_planar_instance(*s.inst.host, *s.inst.parasite, s.inst.phi);
             })
        .def(
            "layout",
            [](const PyInstance& s, const std::string& algo, const std::string& gamma, bool lca,
               bool compact_y) {
                return json_to_py(document_to_json(run_document(s, algo, gamma, lca, compact_y)));
            },
            py::arg("algo") = "planar", py::arg("gamma") = "", py::arg("lca") = false,
            py::arg("compact_y") = false, "Layout document as a dict.")
        .def(
            "layout_json",
            [](const PyInstance& s, const std::string& algo, const std::string& gamma, bool lca,
               bool compact_y) {
                return emit_json(run_document(s, algo, gamma, lca, compact_y));
            },
            py::arg("algo") = "planar", py::arg("gamma") = "", py::arg("lca") = false,
            py::arg("compact_y") = false, "Canonical JSON text of the layout document.")
        .def(
            "layout_svg",
            [](const PyInstance& s, const std::string& algo, const std::string& gamma, bool lca,
               bool compact_y, const std::string& style) {
                return emit_svg(run_document(s, algo, gamma, lca, compact_y),
                                SvgStyle::named(style));
            },
            py::arg("algo") = "planar", py::arg("gamma") = "", py::arg("lca") = false,
            py::arg("compact_y") = false, py::arg("style") = "default")
        .def(
            "oracle",
            [](const PyInstance& s, const std::string& gamma, bool lca, long max_states) {
                Reconciliation rec = s.pick(gamma, lca);
                OracleLimits limits;
                limits.max_states = max_states;
                OracleResult r = brute_force_min_crossings(rec, limits);
                py::dict out;
                out["min_crossings"] = r.min_crossings;
                out["states"] = r.states;
                out["witness"] = json_to_py(document_to_json(
                    make_document(rec, "oracle", s.pick_name(gamma, lca), r.witness, false, 0)));
                return out;
            },
            py::arg("gamma") = "", py::arg("lca") = false,
            py::arg("max_states") = OracleLimits{}.max_states,
            "Brute-force minimum crossings over the canonical layout family.");

    m.def(
        "gen_random",
        [](int host_leaves, int parasite_leaves, double switch_rate, uint64_t seed) {
            return PyInstance{gen_random_instance(host_leaves, parasite_leaves, switch_rate, seed)};
        },
        py::arg("host_leaves"), py::arg("parasite_leaves"), py::arg("switch_rate") = 0.2,
        py::arg("seed") = 1);

    m.def(
        "gen_sewing", [](int size) { return PyInstance{gen_sewing_instance(size)}; },
        py::arg("size"));

    m.def(
        "gen_ttcm",
        [](int height, int k, uint64_t seed, bool identity) {
            PhyloTree t1 = gen_complete_tree(height, "u");
            PhyloTree t2 = gen_complete_tree(height, "w");
            std::vector<NodeId> perm(t2.leaves());
            if (!identity) {
                Rng rng(seed);
                for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            }
            std::vector<std::pair<NodeId, NodeId>> psi;
            for (size_t i = 0; i < perm.size(); ++i) psi.emplace_back(t1.leaves()[i], perm[i]);
            TtcmReduction red = gen_ttcm_reduction(t1, t2, psi, k);
            return py::make_tuple(PyInstance{red.instance}, red.k_prime, red.time_consistent);
        },
        py::arg("height"), py::arg("k") = 0, py::arg("seed") = 1, py::arg("identity") = false,
        "Hardness-gadget instance; returns (instance, k_prime, time_consistent).");
}
