// geotri command-line front end.
//
// Every JSON output carries a "manifest" object recording the command, its
// inputs and parameters, the seed and the tool version; CSV outputs carry it
// as a leading comment line. Exit codes: 0 success, 1 invariant or
// verification failure, 2 input error, 3 resource cap.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geotri/bounds.hpp"
#include "geotri/errors.hpp"
#include "geotri/geometry.hpp"
#include "geotri/intersect.hpp"
#include "geotri/io.hpp"
#include "geotri/pachner.hpp"
#include "geotri/reduction.hpp"
#include "geotri/shelling.hpp"
#include "geotri/subdivision.hpp"

using namespace geotri;

namespace {

struct RunManifest {
    std::string command;
    Json inputs = Json::object();
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    Json outputs = Json::object();

    Json to_json() const {
        return {{"command", command}, {"inputs", inputs},   {"parameters", parameters},
                {"seed", seed},       {"outputs", outputs}, {"tool_version", GEOTRI_VERSION}};
    }
};

struct Common {
    std::string output;
    std::uint64_t seed = 0;
    int jobs = 1;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("-o,--output", c.output, "Output file (default: standard output)");
    app->add_option("--seed", c.seed, "Seed for every random choice")->default_val(0);
    app->add_option("--jobs", c.jobs, "Worker threads (recorded; computations are sequential)")->default_val(1);
}

RunManifest manifest_for(const std::string& command, const Common& c) {
    RunManifest m;
    m.command = command;
    m.seed = c.seed;
    m.parameters["jobs"] = c.jobs;
    if (!c.output.empty()) m.outputs["main"] = c.output;
    return m;
}

void emit_json(const Common& c, const RunManifest& m, Json body) {
    Json out;
    out["manifest"] = m.to_json();
    for (auto& [key, value] : body.items()) out[key] = std::move(value);
    if (c.output.empty()) {
        std::cout << out.dump(2) << '\n';
    } else {
        write_json_file(c.output, out);
    }
}

void emit_text(const Common& c, const RunManifest& m, const std::string& text) {
    const std::string header = "# manifest: " + m.to_json().dump() + '\n';
    if (c.output.empty()) {
        std::cout << header << text;
    } else {
        std::ofstream f(c.output);
        if (!f) throw InputError("cannot write " + c.output);
        f << header << text;
    }
}

void write_side(const std::string& path, RunManifest& m, const std::string& role, const Json& j) {
    if (path.empty()) return;
    m.outputs[role] = path;
    write_json_file(path, j);
}

Json load(RunManifest& m, const std::string& role, const std::string& path) {
    m.inputs[role] = path;
    return read_json_file(path);
}

// A sequence file may hold the sequence itself or an object with a "sequence" field.
MoveSequence load_sequence(const Json& j) {
    if (j.contains("sequence")) return sequence_from_json(j.at("sequence"));
    return sequence_from_json(j);
}

Json shelling_json(const Shelling& s) {
    Json steps = Json::array();
    for (const auto& st : s.steps) steps.push_back({{"A", to_json(st.A)}, {"B", to_json(st.B)}});
    return {{"steps", std::move(steps)}, {"last", to_json(s.last)}};
}

std::vector<GeometryTag> parse_tags(const std::string& name) {
    if (name == "all") return {GeometryTag::euclidean, GeometryTag::spherical, GeometryTag::hyperbolic};
    return {parse_geometry_tag(name)};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::pair<std::string, int> parse_mode(const std::string& mode) {
    const auto colon = mode.find(':');
    if (colon == std::string::npos) return {mode, 0};
    const std::string name = mode.substr(0, colon);
    const std::string value = mode.substr(colon + 1);
    std::size_t used = 0;
    int k = 0;
    try {
        k = std::stoi(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.empty()) throw InputError("bad mode parameter in \"" + mode + "\"");
    return {name, k};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pachner moves between geometric triangulations"};
    app.set_version_flag("--version", GEOTRI_VERSION);
    app.require_subcommand(1);
    std::function<void()> action;

    // subdivide
    Common subdivide_c;
    std::string subdivide_input, subdivide_mode = "bary";
    auto* subdivide = app.add_subcommand("subdivide", "Barycentric, partial, iterated or geometric subdivision");
    subdivide->add_option("-i,--input", subdivide_input, "Complex JSON (geometric complex for geometric:m)")->required();
    subdivide->add_option("--mode", subdivide_mode, "bary | partial:r | iterated:m | geometric:m")->default_val("bary");
    add_common(subdivide, subdivide_c);
    subdivide->callback([&] {
        action = [&] {
            auto m = manifest_for("subdivide", subdivide_c);
            const Json in = load(m, "input", subdivide_input);
            m.parameters["mode"] = subdivide_mode;
            const auto [mode, k] = parse_mode(subdivide_mode);
            if (mode == "geometric") {
                const auto g = geom_complex_from_json(in);
                const auto s = geometric_barycentric(g, k);
                Json body = to_json(s.geom);
                body["parent"] = to_json(s.sub.parent);
                body["carrier"] = to_json(s.sub)["carrier"];
                emit_json(subdivide_c, m, body);
                return;
            }
            const Complex c = complex_from_json(in);
            SubdividedComplex s;
            if (mode == "bary") s = barycentric(c);
            else if (mode == "partial") s = partial_relative(c, SubdividedComplex::identity(c), k);
            else if (mode == "iterated") s = iterated_barycentric(c, k);
            else throw InputError("unknown mode \"" + subdivide_mode + "\"");
            emit_json(subdivide_c, m, to_json(s));
        };
    });

    // pachner
    auto* pachner = app.add_subcommand("pachner", "Enumerate, apply or search Pachner moves");
    pachner->require_subcommand(1);
    Common pe_c, pa_c, pb_c;
    std::string pe_input, pa_input, pa_moves, pb_input, pb_target;
    bool pa_check_pm = false;
    BfsOptions bfs;
    auto* p_enum = pachner->add_subcommand("enumerate", "List every applicable move");
    p_enum->add_option("-i,--input", pe_input, "Complex JSON")->required();
    add_common(p_enum, pe_c);
    p_enum->callback([&] {
        action = [&] {
            auto m = manifest_for("pachner enumerate", pe_c);
            const Complex k = complex_from_json(load(m, "input", pe_input));
            Json moves = Json::array();
            for (const auto& mv : enumerate_moves(k)) moves.push_back(to_json(mv));
            emit_json(pe_c, m, {{"digest", digest(k)}, {"count", moves.size()}, {"moves", moves}});
        };
    });
    auto* p_apply = pachner->add_subcommand("apply", "Apply a move or a sequence");
    p_apply->add_option("-i,--input", pa_input, "Complex JSON")->required();
    p_apply->add_option("--moves", pa_moves, "Move JSON or sequence JSON")->required();
    p_apply->add_flag("--check-pm", pa_check_pm, "Check the pseudomanifold condition after every move");
    add_common(p_apply, pa_c);
    p_apply->callback([&] {
        action = [&] {
            auto m = manifest_for("pachner apply", pa_c);
            m.parameters["check_pm"] = pa_check_pm;
            const Complex k = complex_from_json(load(m, "input", pa_input));
            const Json mj = load(m, "moves", pa_moves);
            MoveSequence seq;
            bool checked = true;
            if (mj.contains("moves") || mj.contains("sequence")) {
                seq = load_sequence(mj);
            } else {
                seq.moves.push_back(move_from_json(mj));
                checked = false;
            }
            ReplayOptions o;
            o.check_digests = checked;
            o.check_pseudomanifold = pa_check_pm;
            Complex out;
            try {
                out = apply_sequence(k, seq, o);
            } catch (const InvariantError& e) {
                if (seq.size() == 1 && !checked) throw InputError(e.what());
                throw;
            }
            Json body = to_json(out);
            body["digest"] = digest(out);
            emit_json(pa_c, m, body);
        };
    });
    auto* p_bfs = pachner->add_subcommand("bfs", "Shortest sequence to a complex isomorphic to the target");
    p_bfs->add_option("-i,--input", pb_input, "Start complex JSON")->required();
    p_bfs->add_option("--target", pb_target, "Target complex JSON")->required();
    p_bfs->add_option("--max-depth", bfs.max_depth)->default_val(4);
    p_bfs->add_option("--max-states", bfs.max_states)->default_val(200000);
    add_common(p_bfs, pb_c);
    p_bfs->callback([&] {
        action = [&] {
            auto m = manifest_for("pachner bfs", pb_c);
            m.parameters["max_depth"] = bfs.max_depth;
            m.parameters["max_states"] = bfs.max_states;
            const Complex k = complex_from_json(load(m, "input", pb_input));
            const Complex l = complex_from_json(load(m, "target", pb_target));
            const auto r = bfs_equivalence(k, l, bfs);
            Json body{{"found", r.has_value()}};
            if (r) {
                body["sequence"] = to_json(r->sequence);
                body["visited"] = r->visited;
                Json iso = Json::array();
                for (const auto& [a, b] : r->to_target.vertex_map) iso.push_back({a, b});
                body["isomorphism"] = std::move(iso);
            }
            emit_json(pb_c, m, body);
        };
    });

    // shell
    auto* shell = app.add_subcommand("shell", "Shelling search and starring");
    shell->require_subcommand(1);
    Common sf_c, ss_c;
    std::string sf_input, ss_ambient, ss_ball;
    bool sf_sphere = false;
    ShellingOptions sf_opts, ss_opts;
    std::optional<VertexId> ss_apex;
    auto* s_find = shell->add_subcommand("find", "Find a shelling of a ball (or a sphere with --sphere)");
    s_find->add_option("-i,--input", sf_input, "Complex JSON")->required();
    s_find->add_flag("--sphere", sf_sphere, "Shell a sphere: remove one top simplex first");
    s_find->add_option("--max-nodes", sf_opts.max_nodes)->default_val(2000000);
    add_common(s_find, sf_c);
    s_find->callback([&] {
        action = [&] {
            auto m = manifest_for("shell find", sf_c);
            m.parameters["sphere"] = sf_sphere;
            m.parameters["max_nodes"] = sf_opts.max_nodes;
            const Complex k = complex_from_json(load(m, "input", sf_input));
            Json body;
            SearchStatus status;
            if (sf_sphere) {
                const auto r = find_sphere_shelling(k, sf_opts);
                status = r.status;
                body = {{"status", to_string(r.status)}, {"nodes", r.nodes}};
                if (r.removed) body["removed"] = to_json(*r.removed);
                if (r.shelling) body["shelling"] = shelling_json(*r.shelling);
            } else {
                const auto r = find_shelling(k, sf_opts);
                status = r.status;
                body = {{"status", to_string(r.status)}, {"nodes", r.nodes}};
                if (r.shelling) body["shelling"] = shelling_json(*r.shelling);
            }
            emit_json(sf_c, m, body);
            if (status == SearchStatus::cap_reached) throw ResourceCapError("shelling search cap reached");
        };
    });
    auto* s_star = shell->add_subcommand("star", "Replace a ball by the cone over its boundary");
    s_star->add_option("--ambient", ss_ambient, "Ambient complex JSON")->required();
    s_star->add_option("--ball", ss_ball, "Ball complex JSON (a subcomplex of the ambient)")->required();
    s_star->add_option("--apex", ss_apex, "Apex label (default: fresh)");
    s_star->add_option("--max-nodes", ss_opts.max_nodes)->default_val(2000000);
    add_common(s_star, ss_c);
    s_star->callback([&] {
        action = [&] {
            auto m = manifest_for("shell star", ss_c);
            if (ss_apex) m.parameters["apex"] = *ss_apex;
            m.parameters["max_nodes"] = ss_opts.max_nodes;
            const Complex amb = complex_from_json(load(m, "ambient", ss_ambient));
            const Complex ball = complex_from_json(load(m, "ball", ss_ball));
            const auto r = star_via_shelling(amb, ball, ss_apex, ss_opts);
            emit_json(ss_c, m,
                      {{"apex", r.apex}, {"shelling", shelling_json(r.shelling)}, {"sequence", to_json(r.sequence)},
                       {"result", to_json(r.result)}});
        };
    });

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Move sequences between subdivisions");
    reduce->require_subcommand(1);
    Common ra_c, rb_c, rr_c;
    std::string ra_input, ra_alpha, rb_input, rb_kprime, rr_k1, rr_k2;
    std::string seq_out, start_out, end_out;
    ReductionOptions red;
    RelateOptions rel;
    auto add_side_outputs = [&](CLI::App* a) {
        a->add_option("--sequence-out", seq_out, "Also write the bare move sequence here");
        a->add_option("--start-out", start_out, "Also write the start complex here");
        a->add_option("--end-out", end_out, "Also write the end complex here");
        a->add_flag("--check-pm", red.check_pseudomanifold, "Local pseudomanifold check after every move");
        a->add_option("--max-nodes", red.shelling.max_nodes, "Shelling search cap per ball")->default_val(2000000);
    };
    auto emit_reduction = [&](const Common& c, RunManifest& m, const MoveSequence& seq, const Complex& start,
                              const Complex& end, Json report) {
        write_side(seq_out, m, "sequence", to_json(seq));
        write_side(start_out, m, "start", to_json(start));
        write_side(end_out, m, "end", to_json(end));
        m.parameters["check_pm"] = red.check_pseudomanifold;
        m.parameters["max_nodes"] = red.shelling.max_nodes;
        emit_json(c, m, {{"report", std::move(report)}, {"sequence", to_json(seq)}, {"start", to_json(start)}, {"end", to_json(end)}});
    };
    auto* r_ab = reduce->add_subcommand("alpha2beta", "From a subdivision alpha K to beta K");
    r_ab->add_option("-i,--input", ra_input, "Complex K")->required();
    r_ab->add_option("--alpha", ra_alpha, "Subdivision of K (default: K itself)");
    add_side_outputs(r_ab);
    add_common(r_ab, ra_c);
    r_ab->callback([&] {
        action = [&] {
            auto m = manifest_for("reduce alpha2beta", ra_c);
            const Complex k = complex_from_json(load(m, "input", ra_input));
            const SubdividedComplex alpha =
                ra_alpha.empty() ? SubdividedComplex::identity(k) : subdivision_from_json(load(m, "alpha", ra_alpha));
            const auto r = alpha_to_beta(k, alpha, red);
            std::cerr << format_trace(r.trace);
            emit_reduction(ra_c, m, r.sequence, r.start, r.end, to_json(r.trace));
        };
    });
    auto* r_br = reduce->add_subcommand("bridge", "From the second derived subdivision of K' to beta K");
    r_br->add_option("-i,--input", rb_input, "Complex K")->required();
    r_br->add_option("--kprime", rb_kprime, "Subdivision K' of K")->required();
    add_side_outputs(r_br);
    add_common(r_br, rb_c);
    r_br->callback([&] {
        action = [&] {
            auto m = manifest_for("reduce bridge", rb_c);
            const Complex k = complex_from_json(load(m, "input", rb_input));
            const SubdividedComplex kp = subdivision_from_json(load(m, "kprime", rb_kprime));
            const auto r = beta2_bridge(k, kp, red);
            std::cerr << format_trace(r.trace);
            emit_reduction(rb_c, m, r.sequence, r.start, r.end, to_json(r.trace));
        };
    });
    auto* r_rel = reduce->add_subcommand("relate", "From beta K1 to beta K2 for two flat-torus triangulations");
    r_rel->add_option("--k1", rr_k1, "First flat-torus complex")->required();
    r_rel->add_option("--k2", rr_k2, "Second flat-torus complex")->required();
    r_rel->add_option("--full-check-every", rel.full_check_every, "Full pseudomanifold check interval during replay")
        ->default_val(2000);
    add_side_outputs(r_rel);
    add_common(r_rel, rr_c);
    r_rel->callback([&] {
        action = [&] {
            auto m = manifest_for("reduce relate", rr_c);
            m.parameters["full_check_every"] = rel.full_check_every;
            const auto k1 = torus_complex_from_json(load(m, "k1", rr_k1));
            const auto k2 = torus_complex_from_json(load(m, "k2", rr_k2));
            rel.reduction = red;
            const auto r = relate_torus(k1, k2, rel);
            std::cerr << "length " << r.sequence.size() << " < bound " << r.bound.str() << '\n';
            emit_reduction(rr_c, m, r.sequence, r.start, r.end, to_json(r));
        };
    });

    // intersect
    auto* inter = app.add_subcommand("intersect", "Common subdivision of two triangulations");
    inter->require_subcommand(1);
    Common il_c, it_c;
    std::string il_k1, il_k2, it_k1, it_k2;
    bool no_cells = false;
    auto emit_common = [&](const Common& c, RunManifest& m, const PolytopalComplex& p) {
        const auto cs = barycentric_polytopal(p);
        const auto counts = commonsub_count_check(cs);
        Json body{{"subdivision", to_json(cs)}, {"counts", to_json(counts)},
                  {"measure", {{"cells", p.total_measure()}, {"k1", p.region_measure1}, {"k2", p.region_measure2}}},
                  {"log", p.log}};
        if (!no_cells) body["cells"] = to_json(p);
        m.parameters["cells"] = !no_cells;
        emit_json(c, m, body);
    };
    auto* i_lin = inter->add_subcommand("linear", "Two geometric complexes over one chart region");
    i_lin->add_option("--k1", il_k1, "First geometric complex")->required();
    i_lin->add_option("--k2", il_k2, "Second geometric complex")->required();
    i_lin->add_flag("--no-cells", no_cells, "Omit the polytopal cells from the output");
    add_common(i_lin, il_c);
    i_lin->callback([&] {
        action = [&] {
            auto m = manifest_for("intersect linear", il_c);
            const auto k1 = geom_complex_from_json(load(m, "k1", il_k1));
            const auto k2 = geom_complex_from_json(load(m, "k2", il_k2));
            emit_common(il_c, m, intersect_linear(k1, k2));
        };
    });
    auto* i_tor = inter->add_subcommand("torus", "Two flat-torus triangulations");
    i_tor->add_option("--k1", it_k1, "First flat-torus complex")->required();
    i_tor->add_option("--k2", it_k2, "Second flat-torus complex")->required();
    i_tor->add_flag("--no-cells", no_cells, "Omit the polytopal cells from the output");
    add_common(i_tor, it_c);
    i_tor->callback([&] {
        action = [&] {
            auto m = manifest_for("intersect torus", it_c);
            const auto k1 = torus_complex_from_json(load(m, "k1", it_k1));
            const auto k2 = torus_complex_from_json(load(m, "k2", it_k2));
            emit_common(it_c, m, torus_intersect(k1, k2));
        };
    });

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate the move-count bounds");
    bound->require_subcommand(1);
    Common bc_c;
    std::string bc_input;
    auto* b_comp = bound->add_subcommand("compute", "Bound report for manifold data");
    b_comp->add_option("-i,--input", bc_input, "ManifoldData JSON")->required();
    add_common(b_comp, bc_c);
    b_comp->callback([&] {
        action = [&] {
            auto m = manifest_for("bound compute", bc_c);
            const auto data = manifold_data_from_json(load(m, "input", bc_input));
            const auto r = compute_report(data);
            if (bc_c.output.empty()) std::cerr << format_report(r);
            else std::cout << format_report(r);
            emit_json(bc_c, m, {{"report", to_json(r)}});
        };
    });

    // geom
    auto* geom = app.add_subcommand("geom", "Constant-curvature geometry tables (CSV)");
    geom->require_subcommand(1);
    Common gk_c, gs_c, gc_c;
    std::string gk_tag = "all", gs_tag = "all", gc_tag = "all";
    std::vector<int> gk_n{2, 3};
    std::vector<double> gk_lambda{0.25, 0.5, 1.0, 1.5};
    int gs_n = 2, gs_m = 3, gs_samples = 20, gc_n = 2, gc_samples = 20;
    double gs_lambda = 1.0, gc_lambda = 1.0;
    auto* g_kappa = geom->add_subcommand("kappa", "Contraction factor table");
    g_kappa->add_option("--geometry", gk_tag, "euclidean | spherical | hyperbolic | all")->default_val("all");
    g_kappa->add_option("--n", gk_n, "Dimensions")->default_str("2 3");
    g_kappa->add_option("--Lambda", gk_lambda, "Edge-length bounds")->default_str("0.25 0.5 1 1.5");
    add_common(g_kappa, gk_c);
    g_kappa->callback([&] {
        action = [&] {
            auto m = manifest_for("geom kappa", gk_c);
            m.parameters["geometry"] = gk_tag;
            m.parameters["n"] = gk_n;
            m.parameters["Lambda"] = gk_lambda;
            std::ostringstream os;
            os << "geometry,n,Lambda,mu,kappa\n";
            for (auto tag : parse_tags(gk_tag))
                for (int n : gk_n)
                    for (double L : gk_lambda) {
                        if (tag == GeometryTag::spherical && L > 1.5707963267948966) continue;
                        os << to_string(tag) << ',' << n << ',' << fmt(L) << ',' << to_decimal(mu(tag, n, Real(L)), 20)
                           << ',' << fmt(kappa(tag, n, L)) << '\n';
                    }
            emit_text(gk_c, m, os.str());
        };
    });
    auto* g_scale = geom->add_subcommand("scaling-table", "Longest edge of iterated subdivisions against kappa^m Lambda");
    g_scale->add_option("--geometry", gs_tag)->default_val("all");
    g_scale->add_option("--n", gs_n)->default_val(2);
    g_scale->add_option("--m", gs_m, "Subdivision depth")->default_val(3);
    g_scale->add_option("--Lambda", gs_lambda)->default_val(1.0);
    g_scale->add_option("--samples", gs_samples)->default_val(20);
    add_common(g_scale, gs_c);
    g_scale->callback([&] {
        action = [&] {
            auto m = manifest_for("geom scaling-table", gs_c);
            m.parameters["geometry"] = gs_tag;
            m.parameters["n"] = gs_n;
            m.parameters["m"] = gs_m;
            m.parameters["Lambda"] = gs_lambda;
            m.parameters["samples"] = gs_samples;
            std::mt19937_64 rng(gs_c.seed);
            std::ostringstream os;
            os << "geometry,n,sample,level,max_edge,bound,ratio,ok\n";
            bool all_ok = true;
            for (auto tag : parse_tags(gs_tag)) {
                const double k = kappa(tag, gs_n, gs_lambda);
                for (int i = 0; i < gs_samples; ++i) {
                    const auto s = random_simplex(tag, gs_n, gs_lambda, rng);
                    const double L = s.max_edge();
                    const auto maxima = subdivision_edge_maxima(s, gs_m);
                    for (int level = 1; level <= gs_m; ++level) {
                        const double e = maxima[static_cast<std::size_t>(level - 1)];
                        const double b = std::pow(k, level) * L;
                        const bool ok = e <= b + kGeomTolerance;
                        all_ok = all_ok && ok;
                        os << to_string(tag) << ',' << gs_n << ',' << i << ',' << level << ',' << fmt(e) << ',' << fmt(b)
                           << ',' << fmt(e / b) << ',' << (ok ? 1 : 0) << '\n';
                    }
                }
            }
            emit_text(gs_c, m, os.str());
            if (!all_ok) throw InvariantError("some subdivision edge exceeds kappa^m Lambda");
        };
    });
    auto* g_cent = geom->add_subcommand("centroid-check", "Centroid ratios and medial residuals");
    g_cent->add_option("--geometry", gc_tag)->default_val("all");
    g_cent->add_option("--n", gc_n)->default_val(2);
    g_cent->add_option("--Lambda", gc_lambda)->default_val(1.0);
    g_cent->add_option("--samples", gc_samples)->default_val(20);
    add_common(g_cent, gc_c);
    g_cent->callback([&] {
        action = [&] {
            auto m = manifest_for("geom centroid-check", gc_c);
            m.parameters["geometry"] = gc_tag;
            m.parameters["n"] = gc_n;
            m.parameters["Lambda"] = gc_lambda;
            m.parameters["samples"] = gc_samples;
            std::mt19937_64 rng(gc_c.seed);
            std::ostringstream os;
            os << "geometry,n,sample,vertex,ratio,lower,upper,medial_residual,ok\n";
            bool all_ok = true;
            for (auto tag : parse_tags(gc_tag)) {
                for (int i = 0; i < gc_samples; ++i) {
                    const auto s = random_simplex(tag, gc_n, gc_lambda, rng);
                    const double residual = medial_residual(s);
                    const double L = s.max_edge();
                    for (std::size_t v = 0; v < s.vertices().size(); ++v) {
                        const double r = centroid_ratio(s, v);
                        double lo = gc_n, hi = gc_n;
                        if (tag == GeometryTag::hyperbolic) lo = 1, hi = gc_n * std::pow(std::cosh(L), gc_n - 1);
                        if (tag == GeometryTag::spherical) lo = 0;
                        const double tol = tag == GeometryTag::euclidean ? 1e-12 * gc_n : kGeomTolerance;
                        const bool ok = r >= lo - tol && r <= hi + tol && residual <= kGeomTolerance;
                        all_ok = all_ok && ok;
                        os << to_string(tag) << ',' << gc_n << ',' << i << ',' << v << ',' << fmt(r) << ',' << fmt(lo)
                           << ',' << fmt(hi) << ',' << fmt(residual) << ',' << (ok ? 1 : 0) << '\n';
                    }
                }
            }
            emit_text(gc_c, m, os.str());
            if (!all_ok) throw InvariantError("a centroid ratio or medial residual is out of range");
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Independent checks of produced artifacts");
    verify->require_subcommand(1);
    Common vr_c;
    std::string vr_seq, vr_start, vr_expect;
    bool vr_iso = false, vr_pm = false;
    std::size_t vr_every = 0;
    auto* v_rep = verify->add_subcommand("replay", "Replay a sequence and compare with the expected end");
    v_rep->add_option("--sequence", vr_seq, "Sequence JSON (or an output holding a \"sequence\" field)")->required();
    v_rep->add_option("--start", vr_start, "Start complex JSON")->required();
    v_rep->add_option("--expect", vr_expect, "Expected end complex JSON")->required();
    v_rep->add_flag("--up-to-iso", vr_iso, "Accept an end complex isomorphic to the expected one");
    v_rep->add_flag("--check-pm", vr_pm, "Pseudomanifold checks during the replay");
    v_rep->add_option("--full-check-every", vr_every, "Full pseudomanifold check interval")->default_val(0);
    add_common(v_rep, vr_c);
    v_rep->callback([&] {
        action = [&] {
            auto m = manifest_for("verify replay", vr_c);
            m.parameters["up_to_iso"] = vr_iso;
            m.parameters["check_pm"] = vr_pm;
            m.parameters["full_check_every"] = vr_every;
            const auto seq = load_sequence(load(m, "sequence", vr_seq));
            const Complex start = complex_from_json(load(m, "start", vr_start));
            const Complex expect = complex_from_json(load(m, "expect", vr_expect));
            ReplayOptions o;
            o.check_pseudomanifold = vr_pm;
            o.full_check_every = vr_every;
            const Complex end = apply_sequence(start, seq, o);
            bool match = end == expect;
            if (!match && vr_iso) match = find_isomorphism(end, expect).has_value();
            emit_json(vr_c, m,
                      {{"moves", seq.size()}, {"end_digest", digest(end)}, {"expected_digest", digest(expect)},
                       {"match", match}});
            if (!match) throw InvariantError("replayed complex differs from the expected complex");
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (action) action();
        return 0;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return 1;
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
