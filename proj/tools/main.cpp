#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hpdraw/document.hpp"
#include "hpdraw/generators.hpp"
#include "hpdraw/oracle.hpp"
#include "hpdraw/svg.hpp"

using namespace hpdraw;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    out << content;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Selection {
    std::vector<std::pair<std::string, Reconciliation>> recs;
};

Selection select_recs(const CophyInstance& inst, const std::string& gamma_name, bool use_lca,
                      bool need_any) {
    Selection sel;
    if (use_lca) {
        sel.recs.emplace_back("lca", inst.lca_reconciliation());
        return sel;
    }
    if (!gamma_name.empty()) {
        sel.recs.emplace_back(gamma_name, inst.reconciliation(gamma_name));
        return sel;
    }
    for (const auto& [name, gamma] : inst.gammas)
        sel.recs.emplace_back(name, Reconciliation{inst.host, inst.parasite, inst.phi, gamma});
    if (sel.recs.empty() && need_any)
        throw error("instance has no #GAMMA section; pass --lca or --gamma-file");
    return sel;
}

std::string with_suffix(const std::string& path, const std::string& tag) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos || dot == 0) return path + "." + tag;
    return path.substr(0, dot) + "." + tag + path.substr(dot);
}

HPLayout run_algo(const std::string& algo, const Reconciliation& rec, const LayoutOptions& opts) {
    if (algo == "planar") return planar_draw(rec, opts);
    if (algo == "shs") return shorten_host_switch(rec, opts);
    if (algo == "smp") return search_maximal_planar(rec, opts);
    throw error("unknown algorithm '" + algo + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hpdraw: layouts of host/parasite tree reconciliations"};
    app.require_subcommand(1);
    bool auto_labels = false;
    app.add_flag("--auto-internal-labels", auto_labels,
                 "generate names for unlabelled internal Newick nodes");

    std::string file, gamma_name, gamma_file;
    bool use_lca = false;

    auto add_common = [&](CLI::App* cmd, bool with_gamma = true) {
        cmd->add_option("file", file, "instance file")->required();
        if (with_gamma) {
            cmd->add_option("--gamma", gamma_name, "use one named gamma");
            cmd->add_flag("--lca", use_lca, "use the lca reconciliation instead of file gammas");
            cmd->add_option("--gamma-file", gamma_file, "extra #GAMMA sections to load");
        }
    };

    auto* c_validate = app.add_subcommand("validate", "check reconciliation conditions");
    add_common(c_validate);

    auto* c_events = app.add_subcommand("events", "classify co-evolution events and score");
    add_common(c_events);
    std::vector<int> cost_values;
    c_events->add_option("--costs", cost_values,
                         "cospeciation,duplication,loss,hostswitch costs (default 0 2 1 3)")
        ->expected(4)
        ->delimiter(',');

    auto* c_timecheck = app.add_subcommand("timecheck", "temporal ordering or INCONSISTENT");
    add_common(c_timecheck);

    auto* c_planar = app.add_subcommand("planar", "decide drawable planarity of the instance");
    add_common(c_planar, false);

    auto* c_layout = app.add_subcommand("layout", "compute an HP-drawing");
    add_common(c_layout);
    std::string algo = "planar", svg_path, json_path, style_name = "default", style_file;
    bool compact_y = false, with_timing = false;
    c_layout->add_option("--algo", algo, "planar | shs | smp")
        ->check(CLI::IsMember({"planar", "shs", "smp"}));
    c_layout->add_flag("--compact-y", compact_y, "compact the y axis");
    c_layout->add_option("--svg", svg_path, "write SVG here");
    c_layout->add_option("--json", json_path, "write the layout document here");
    c_layout->add_option("--style", style_name, "default | plain");
    c_layout->add_option("--style-file", style_file, "JSON style overrides");
    c_layout->add_flag("--timing", with_timing, "include wall-clock timing in JSON output");

    auto* c_oracle = app.add_subcommand("oracle", "brute-force minimum crossings (small instances)");
    add_common(c_oracle);
    long max_states = OracleLimits{}.max_states;
    int max_leaves = OracleLimits{}.max_host_leaves;
    std::string oracle_json;
    c_oracle->add_option("--max-states", max_states, "search state budget");
    c_oracle->add_option("--max-leaves", max_leaves, "host/parasite leaf cap");
    c_oracle->add_option("--json", oracle_json, "write the witness layout here");

    auto* c_stats = app.add_subcommand("stats", "crossing statistics over all gammas in a file");
    add_common(c_stats);
    std::vector<std::string> algos{"shs", "smp"};
    c_stats->add_option("--algos", algos, "algorithms to tabulate")->delimiter(',');
    bool stats_compact = false;
    c_stats->add_flag("--compact-y", stats_compact, "compact the y axis");

    auto* c_gen = app.add_subcommand("gen", "instance generators");
    c_gen->require_subcommand(1);
    std::string out_path;

    auto* g_random = c_gen->add_subcommand("random", "seeded random instance");
    int host_leaves = 8, parasite_leaves = 8;
    double switch_rate = 0.2;
    uint64_t seed = 1;
    g_random->add_option("--host-leaves", host_leaves)->required();
    g_random->add_option("--parasite-leaves", parasite_leaves)->required();
    g_random->add_option("--switch-rate", switch_rate);
    g_random->add_option("--seed", seed);
    g_random->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* g_ttcm = c_gen->add_subcommand("ttcm", "crossing-minimization hardness gadget");
    int height = 1, k = 0;
    uint64_t psi_seed = 1;
    bool identity_psi = false;
    g_ttcm->add_option("--height", height)->required();
    g_ttcm->add_option("--k", k);
    g_ttcm->add_option("--seed", psi_seed, "seed for the random leaf matching");
    g_ttcm->add_flag("--identity", identity_psi, "use the identity matching");
    g_ttcm->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* g_sewing = c_gen->add_subcommand("sewing", "sewing-tree gadget instance");
    int sewing_size = 3;
    g_sewing->add_option("--size", sewing_size)->required();
    g_sewing->add_option("-o,--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        auto load = [&]() {
            CophyInstance inst = parse_instance(slurp(file), auto_labels);
            if (!gamma_file.empty()) append_gamma_file(inst, slurp(gamma_file));
            int synthetic = 0;
            for (NodeId v = 0; v < inst.host->node_count(); ++v)
                synthetic += inst.host->is_synthetic_label(v);
            for (NodeId v = 0; v < inst.parasite->node_count(); ++v)
                synthetic += inst.parasite->is_synthetic_label(v);
            if (synthetic > 0)
                std::cerr << "note: " << synthetic
                          << " internal label(s) were generated and are synthetic\n";
            return inst;
        };

        if (*c_validate) {
            CophyInstance inst = load();
            Selection sel = select_recs(inst, gamma_name, use_lca, false);
            if (sel.recs.empty()) sel.recs.emplace_back("lca", inst.lca_reconciliation());
            bool all_ok = true;
            for (const auto& [name, rec] : sel.recs) {
                ValidationReport rep = validate(rec);
                if (rep.ok()) {
                    std::cout << name << ": valid\n";
                } else {
                    all_ok = false;
                    std::cout << name << ": INVALID\n";
                    for (const auto& v : rep.violations) std::cout << "  " << v.message << "\n";
                }
            }
            return all_ok ? 0 : 1;
        }

        if (*c_events) {
            CostVector costs;
            if (!cost_values.empty()) {
                costs = {cost_values[0], cost_values[1], cost_values[2], cost_values[3]};
            }
            CophyInstance inst = load();
            for (const auto& [name, rec] : select_recs(inst, gamma_name, use_lca, true).recs) {
                ValidationReport rep = validate(rec);
                if (!rep.ok()) {
                    std::cout << name << ": INVALID (" << rep.violations.front().message << ")\n";
                    return 1;
                }
                EventReport er = classify_events(rec);
                std::cout << name << ":\n";
                for (NodeId p : rec.parasite->internal_nodes())
                    std::cout << "  " << rec.parasite->label(p) << " " << to_string(*er.event[p])
                              << "\n";
                for (NodeId c = 0; c < rec.parasite->node_count(); ++c)
                    if (c != rec.parasite->root() && er.losses[c] > 0)
                        std::cout << "  arc " << rec.parasite->label(rec.parasite->parent(c)) << ">"
                                  << rec.parasite->label(c) << " losses " << er.losses[c] << "\n";
                std::cout << "  cospeciations " << er.cospeciations << ", duplications "
                          << er.duplications << ", host-switches " << er.host_switches
                          << ", losses " << er.total_losses << ", score " << score(rec, costs)
                          << "\n";
            }
            return 0;
        }

        if (*c_timecheck) {
            CophyInstance inst = load();
            bool all_ok = true;
            for (const auto& [name, rec] : select_recs(inst, gamma_name, use_lca, true).recs) {
                auto order = check_time_consistency(rec);
                if (!order) {
                    all_ok = false;
                    std::cout << name << ": INCONSISTENT\n";
                } else {
                    std::cout << name << ":";
                    for (NodeId v : *order) std::cout << " " << rec.parasite->label(v);
                    std::cout << "\n";
                }
            }
            return all_ok ? 0 : 1;
        }

        if (*c_planar) {
            CophyInstance inst = load();
            bool planar = is_planar_instance(*inst.host, *inst.parasite, inst.phi);
            std::cout << "planar: " << (planar ? "yes" : "no") << "\n";
            return planar ? 0 : 1;
        }

        if (*c_layout) {
            CophyInstance inst = load();
            SvgStyle style = SvgStyle::named(style_name);
            if (const char* env = std::getenv("HPDRAW_STYLE")) style.apply_file(env);
            if (!style_file.empty()) style.apply_file(style_file);
            LayoutOptions opts;
            opts.compact_y = compact_y;
            Selection sel = select_recs(inst, gamma_name, use_lca, true);
            bool many = sel.recs.size() > 1;
            for (const auto& [name, rec] : sel.recs) {
                double t0 = now_ms();
                HPLayout L = run_algo(algo, rec, opts);
                double elapsed = now_ms() - t0;
                LayoutDocument doc = make_document(rec, algo, name, L, compact_y, elapsed);
                if (!json_path.empty())
                    spit(many ? with_suffix(json_path, name) : json_path,
                         emit_json(doc, with_timing));
                if (!svg_path.empty())
                    spit(many ? with_suffix(svg_path, name) : svg_path, emit_svg(doc, style));
                std::cout << name << ": algo " << algo << ", crossings " << L.crossing_count
                          << ", downward " << (L.downward ? "yes" : "no") << ", " << elapsed
                          << " ms\n";
            }
            return 0;
        }

        if (*c_oracle) {
            CophyInstance inst = load();
            OracleLimits limits;
            limits.max_states = max_states;
            limits.max_host_leaves = limits.max_parasite_leaves = max_leaves;
            for (const auto& [name, rec] : select_recs(inst, gamma_name, use_lca, true).recs) {
                OracleResult r = brute_force_min_crossings(rec, limits);
                std::cout << name << ": min crossings " << r.min_crossings << " (" << r.states
                          << " states)\n";
                if (!oracle_json.empty()) {
                    LayoutDocument doc = make_document(rec, "oracle", name, r.witness, false, 0);
                    spit(oracle_json, emit_json(doc));
                }
            }
            return 0;
        }

        if (*c_stats) {
            CophyInstance inst = load();
            Selection sel = select_recs(inst, gamma_name, use_lca, true);
            LayoutOptions opts;
            opts.compact_y = stats_compact;
            std::cout << "instance #rec algo max min avg avg_ms\n";
            for (const std::string& a : algos) {
                struct Row {
                    int crossings;
                    double ms;
                };
                std::vector<std::future<Row>> futs;
                for (const auto& [name, rec] : sel.recs) {
                    const Reconciliation* r = &rec;
                    futs.push_back(std::async(std::launch::async, [a, r, opts]() {
                        double t0 = now_ms();
                        HPLayout L = run_algo(a, *r, opts);
                        return Row{L.crossing_count, now_ms() - t0};
                    }));
                }
                int mx = 0, mn = std::numeric_limits<int>::max();
                double sum = 0, ms = 0;
                for (auto& f : futs) {
                    Row row = f.get();
                    mx = std::max(mx, row.crossings);
                    mn = std::min(mn, row.crossings);
                    sum += row.crossings;
                    ms += row.ms;
                }
                size_t n = sel.recs.size();
                std::cout << file << " " << n << " " << a << " " << mx << " " << mn << " "
                          << (sum / n) << " " << (ms / n) << "\n";
            }
            return 0;
        }

        if (*g_random) {
            CophyInstance inst =
                gen_random_instance(host_leaves, parasite_leaves, switch_rate, seed);
            std::string text = write_instance(inst);
            out_path.empty() ? (void)(std::cout << text) : spit(out_path, text);
            return 0;
        }

        if (*g_ttcm) {
            PhyloTree t1 = gen_complete_tree(height, "u");
            PhyloTree t2 = gen_complete_tree(height, "w");
            std::vector<NodeId> perm(t2.leaves());
            if (!identity_psi) {
                Rng rng(psi_seed);
                for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            }
            std::vector<std::pair<NodeId, NodeId>> psi;
            for (size_t i = 0; i < perm.size(); ++i) psi.emplace_back(t1.leaves()[i], perm[i]);
            TtcmReduction red = gen_ttcm_reduction(t1, t2, psi, k);
            std::string text = write_instance(red.instance);
            out_path.empty() ? (void)(std::cout << text) : spit(out_path, text);
            std::cerr << "k' = " << red.k_prime
                      << (red.time_consistent ? " (time-consistent)" : " (NOT time-consistent)")
                      << "\n";
            return 0;
        }

        if (*g_sewing) {
            std::string text = write_instance(gen_sewing_instance(sewing_size));
            out_path.empty() ? (void)(std::cout << text) : spit(out_path, text);
            return 0;
        }
    } catch (const not_planar_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const time_inconsistent_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unknown_node_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
