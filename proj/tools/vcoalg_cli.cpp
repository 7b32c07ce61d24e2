// vcoalg: exact engine for Vietoris-polynomial coalgebras over finite
// topological spaces, plus the hybrid bouncing-ball layer.
//
// JSON in, JSON out; identical invocations on identical inputs produce
// byte-identical reports. Exit codes: 0 success (witness commands: the
// counterexample reproduced), 1 a checked property failed, 2 bad input.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcoalg/coalg.hpp"
#include "vcoalg/hybrid.hpp"
#include "vcoalg/io.hpp"

namespace {

using namespace vcoalg;

constexpr const char* kVersion = "0.1.0";

struct Config {
    std::size_t max_points = 16;

    Limits limits() const { return Limits{max_points}; }

    std::string digest() const {
        std::string payload = "max_points=" + std::to_string(max_points) + ";";
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : payload) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

// Running digest over the raw bytes of every input file, reported in the
// RunReport so identical runs are auditable.
struct InputDigest {
    std::uint64_t h = 0xcbf29ce484222325ull;
    void add(const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

InputDigest g_inputs;
std::string g_command;

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    g_inputs.add(text);
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw BadInput(path + ": invalid JSON: " + e.what());
    }
}

FinSpace load_space(const std::string& path, const Limits& lim) {
    try {
        return space_from_json(load_json_file(path), lim, path);
    } catch (const SizeCapExceeded&) {
        throw;
    } catch (const NotATopology& e) {
        throw BadInput(path + ": not a topology: " + e.what());
    }
}

Env load_env(const std::vector<std::string>& bindings, const Limits& lim) {
    Env env;
    for (const std::string& b : bindings) {
        auto eq = b.find('=');
        if (eq == std::string::npos)
            throw BadInput("--env expects name=path, got \"" + b + "\"");
        env.emplace(b.substr(0, eq), load_space(b.substr(eq + 1), lim));
    }
    return env;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw BadInput("cannot write file: " + out_path);
        out << payload;
    }
}

void emit_json(const Json& j, const std::string& out_path) {
    emit(j.dump(2) + "\n", out_path);
}

// Ball reports carry floats; they are rendered manually so every number
// goes through fmt9 (9 significant digits).
std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

/// RunReport: command echo, inputs digest, result payload. With --out the
/// payload goes to the file bare (so exported spaces stay loadable) and the
/// report on stdout records the path instead.
void emit_report(const Json& payload, const std::string& out_path) {
    Json wrapper;
    wrapper["command"] = g_command;
    wrapper["inputs_digest"] = g_inputs.hex();
    if (out_path.empty()) {
        wrapper["report"] = payload;
    } else {
        emit_json(payload, out_path);
        wrapper["out_file"] = out_path;
    }
    std::cout << wrapper.dump(2) << "\n";
}

/// Same shape for the ball reports, whose floats are pre-rendered with
/// fmt9; the payload is spliced in verbatim.
void emit_report_manual(const std::string& payload, const std::string& out_path) {
    if (!out_path.empty()) {
        emit(payload, out_path);
        Json wrapper;
        wrapper["command"] = g_command;
        wrapper["inputs_digest"] = g_inputs.hex();
        wrapper["out_file"] = out_path;
        std::cout << wrapper.dump(2) << "\n";
        return;
    }
    std::string indented;
    for (std::size_t i = 0; i < payload.size(); ++i) {
        indented += payload[i];
        if (payload[i] == '\n' && i + 1 < payload.size()) indented += "  ";
    }
    std::string out = "{\n  \"command\": " + json_str(g_command);
    out += ",\n  \"inputs_digest\": \"" + g_inputs.hex() + "\"";
    out += ",\n  \"report\": " + indented;
    out += "}\n";
    std::cout << out;
}

Json functor_ast_json(const FunctorExpr& e) {
    switch (e.kind) {
    case FKind::Id: return Json{{"kind", "id"}};
    case FKind::VLower: return Json{{"kind", "v-lower"}};
    case FKind::VCompact: return Json{{"kind", "v-compact"}};
    case FKind::VCompactNonempty: return Json{{"kind", "v-compact-nonempty"}};
    case FKind::VCompactConnected: return Json{{"kind", "v-compact-connected"}};
    case FKind::Const: return Json{{"kind", "const"}, {"name", e.name}};
    case FKind::Sum:
        return Json{{"kind", "sum"}, {"lhs", functor_ast_json(*e.lhs)}, {"rhs", functor_ast_json(*e.rhs)}};
    case FKind::Prod:
        return Json{{"kind", "prod"}, {"lhs", functor_ast_json(*e.lhs)}, {"rhs", functor_ast_json(*e.rhs)}};
    case FKind::Comp:
        return Json{{"kind", "comp"}, {"outer", functor_ast_json(*e.lhs)}, {"inner", functor_ast_json(*e.rhs)}};
    }
    return Json();
}

Json subsets_json(const FinSpace& base, const std::vector<Bitset>& subsets, const Bitset& which) {
    Json arr = Json::array();
    for (int k : which.elements()) arr.push_back(subset_name(base, subsets[static_cast<std::size_t>(k)]));
    return arr;
}

int run(int argc, char** argv) {
    CLI::App app{"Vietoris coalgebras over finite topological spaces"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    Config cfg;
    std::string config_path, out_path;
    bool show_config = false, show_version = false;
    app.add_option("--config", config_path, "JSON config file ({\"max_points\": n})");
    app.add_option("--max-points", cfg.max_points, "point cap for constructed spaces");
    app.add_option("--out", out_path, "write the report to a file instead of stdout");
    app.add_flag("--show-config", show_config, "print the effective config and exit");
    app.add_flag("--version", show_version, "print version and config digest");

    // --- space check ---
    auto* sp = app.add_subcommand("space", "finite-space operations");
    auto* sp_check = sp->add_subcommand("check", "validate a space file and report separation");
    std::string sp_in;
    sp_check->add_option("--in", sp_in, "space JSON file")->required();

    // --- functor parse/apply ---
    auto* fu = app.add_subcommand("functor", "functor-expression operations");
    auto* fu_parse = fu->add_subcommand("parse", "parse an expression and print its AST");
    std::string fu_expr;
    fu_parse->add_option("--expr", fu_expr, "functor expression")->required();
    auto* fu_apply = fu->add_subcommand("apply", "apply an expression to a space");
    std::string fa_expr, fa_space;
    std::vector<std::string> fa_env;
    fu_apply->add_option("--expr", fa_expr, "functor expression")->required();
    fu_apply->add_option("--space", fa_space, "space JSON file")->required();
    fu_apply->add_option("--env", fa_env, "constant binding name=path (repeatable)");

    // --- vietoris build ---
    auto* vi = app.add_subcommand("vietoris", "hyperspace constructions");
    auto* vi_build = vi->add_subcommand("build", "build a hyperspace and export it as a space");
    std::string vb_space, vb_variant = "compact";
    vi_build->add_option("--space", vb_space, "space JSON file")->required();
    vi_build->add_option("--variant", vb_variant, "lower|compact|compact-nonempty|compact-connected");

    // --- witnesses ---
    auto* wi = app.add_subcommand("witness", "reproduce the counterexamples");
    auto* wi_classic = wi->add_subcommand("classic-vietoris", "classic construction is not a functor");
    auto* wi_mono = wi->add_subcommand("monocone", "Vietoris functors do not preserve monocones");
    std::string wm_space;
    wi_mono->add_option("--space", wm_space, "discrete space JSON file")->required();

    // --- terminal sequence ---
    auto* ts = app.add_subcommand("terminal-seq", "terminal sequence 1 <- F1 <- FF1 <- ...");
    std::string ts_functor;
    int ts_steps = 0;
    std::vector<std::string> ts_env;
    ts->add_option("--functor", ts_functor, "functor expression")->required();
    ts->add_option("--steps", ts_steps, "number of levels past 1")->required();
    ts->add_option("--env", ts_env, "constant binding name=path (repeatable)");

    // --- behaviour ---
    auto* be = app.add_subcommand("behaviour", "depth-n behaviour map and partition");
    std::string be_coalg;
    int be_depth = 0;
    std::vector<std::string> be_env;
    be->add_option("--coalg", be_coalg, "coalgebra JSON file")->required();
    be->add_option("--depth", be_depth, "unfolding depth")->required();
    be->add_option("--env", be_env, "constant binding name=path (repeatable)");

    // --- equalizer ---
    auto* eq = app.add_subcommand("equalizer", "equalizer of two parallel homomorphisms");
    std::string eq_h1, eq_h2;
    std::vector<std::string> eq_env;
    eq->add_option("--h1", eq_h1, "hom JSON file")->required();
    eq->add_option("--h2", eq_h2, "hom JSON file")->required();
    eq->add_option("--env", eq_env, "constant binding name=path (repeatable)");

    // --- coreflect ---
    auto* co = app.add_subcommand("coreflect", "coreflection along a subfunctor inclusion");
    std::string co_sigma, co_coalg;
    std::vector<std::string> co_env;
    co->add_option("--sigma", co_sigma, "v+|vc")->required();
    co->add_option("--coalg", co_coalg, "V-coalgebra JSON file")->required();
    co->add_option("--env", co_env, "constant binding name=path (repeatable)");

    // --- ball ---
    auto* ball = app.add_subcommand("ball", "bouncing-ball simulation");
    auto* bs = ball->add_subcommand("simulate", "deterministic trajectory export");
    double bs_p = 0, bs_v = 0, bs_g = 9.8, bs_factor = 0.5, bs_step = 0.1;
    int bs_bounces = 1;
    std::string bs_out;
    bs->add_option("--p", bs_p, "initial height (m)")->required();
    bs->add_option("--v", bs_v, "initial velocity (m/s)")->required();
    bs->add_option("--bounces", bs_bounces, "number of flight segments")->required();
    bs->add_option("--g", bs_g, "gravity magnitude (m/s^2)");
    bs->add_option("--factor", bs_factor, "restitution factor in (0,1)");
    bs->add_option("--step", bs_step, "sampling step (s)");
    bs->add_option("--out", bs_out, "trajectory file, .csv or .svg")->required();

    auto* bn = ball->add_subcommand("nondet", "nondeterministic behaviour tree");
    double bn_p = 0, bn_v = 0, bn_g = 9.8, bn_lo = 0.5, bn_hi = 0.7;
    int bn_depth = 2, bn_samples = 0;
    bn->add_option("--p", bn_p, "initial height (m)")->required();
    bn->add_option("--v", bn_v, "initial velocity (m/s)")->required();
    bn->add_option("--depth", bn_depth, "tree depth")->required();
    bn->add_option("--samples", bn_samples, "interior restitution samples per node");
    bn->add_option("--lo", bn_lo, "restitution interval lower endpoint");
    bn->add_option("--hi", bn_hi, "restitution interval upper endpoint");
    bn->add_option("--g", bn_g, "gravity magnitude (m/s^2)");

    auto* bst = ball->add_subcommand("stability", "stability falsifier");
    double bst_p = 0, bst_v = 0, bst_delta = 1e-3, bst_horizon = 1.1, bst_g = 9.8, bst_factor = 0.5;
    double bst_jump_at = 5.0, bst_factor_high = 0.9;
    int bst_n = 64;
    bool bst_counter = false;
    bst->add_option("--p", bst_p, "initial height (m)")->required();
    bst->add_option("--v", bst_v, "initial velocity (m/s)")->required();
    bst->add_option("--delta", bst_delta, "perturbation radius (max norm)");
    bst->add_option("--horizon", bst_horizon, "time horizon (s)");
    bst->add_option("--n", bst_n, "number of perturbations");
    bst->add_option("--g", bst_g, "gravity magnitude (m/s^2)");
    bst->add_option("--factor", bst_factor, "restitution factor");
    bst->add_flag("--counterexample", bst_counter, "probe the shipped discontinuous system");
    bst->add_option("--jump-at", bst_jump_at, "threshold height of the discontinuous system");
    bst->add_option("--factor-high", bst_factor_high, "factor above the threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    {
        std::string cmd;
        for (int i = 1; i < argc; ++i) {
            if (i > 1) cmd += " ";
            cmd += argv[i];
        }
        g_command = cmd;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    try {
        if (!config_path.empty()) {
            Json j = load_json_file(config_path);
            detail::reject_unknown_fields(j, {"max_points"}, config_path);
            // flags override the file
            if (app.count("--max-points") == 0 && j.contains("max_points"))
                cfg.max_points = j["max_points"].get<std::size_t>();
        }
        const Limits lim = cfg.limits();

        if (show_version) {
            emit(std::string("vcoalg ") + kVersion + " (config " + cfg.digest() + ")\n", out_path);
            return 0;
        }
        if (show_config) {
            Json j{{"max_points", cfg.max_points}, {"digest", cfg.digest()}};
            emit_report(j, out_path);
            return 0;
        }

        if (sp_check->parsed()) {
            FinSpace x = load_space(sp_in, lim);
            SeparationReport sep = separation(x);
            Json j = space_to_json(x);
            j["separation"] = Json{{"is_T0", sep.is_t0},
                                   {"is_T2", sep.is_t2},
                                   {"is_discrete", sep.is_discrete},
                                   {"is_stably_compact_finite", sep.is_stably_compact_finite}};
            emit_report(j, out_path);
        } else if (fu_parse->parsed()) {
            FunctorPtr f = parse_functor(fu_expr);
            Json j{{"expr", print_functor(f)}, {"ast", functor_ast_json(*f)}};
            emit_report(j, out_path);
        } else if (fu_apply->parsed()) {
            FunctorPtr f = parse_functor(fa_expr);
            Env env = load_env(fa_env, lim);
            Applied a = apply_functor(f, load_space(fa_space, lim), env, lim);
            emit_report(space_to_json(a.space()), out_path);
        } else if (vi_build->parsed()) {
            VietorisVariant v;
            if (vb_variant == "lower") v = VietorisVariant::Lower;
            else if (vb_variant == "compact") v = VietorisVariant::Compact;
            else if (vb_variant == "compact-nonempty") v = VietorisVariant::CompactNonempty;
            else if (vb_variant == "compact-connected") v = VietorisVariant::CompactConnected;
            else throw BadInput("unknown variant: " + vb_variant);
            Hyperspace h = make_hyperspace(load_space(vb_space, lim), v, lim);
            emit_report(space_to_json(h.space), out_path);
        } else if (wi_classic->parsed()) {
            ClassicWitnessReport r = classic_nonfunctoriality_witness();
            Json j;
            j["ambient"] = space_to_json(r.ambient);
            Json closed = Json::array();
            for (const auto& s : r.ambient_closed) closed.push_back(subset_name(r.ambient, s));
            j["ambient_closed"] = std::move(closed);
            j["subspace"] = space_to_json(r.sub);
            Json subc = Json::array();
            for (const auto& s : r.sub_closed) subc.push_back(subset_name(r.sub, s));
            j["sub_closed"] = std::move(subc);
            j["box_12"] = subsets_json(r.ambient, r.ambient_closed, r.box12);
            j["preimage_of_box_12"] = subsets_json(r.sub, r.sub_closed, r.preimage);
            j["preimage_open"] = r.preimage_open;
            j["min_nbhd_of_{1}"] = subsets_json(r.sub, r.sub_closed, r.min_nbhd_of_1);
            j["min_nbhd_contains_{1,2}"] = r.min_nbhd_contains_12;
            j["reproduced"] = r.reproduced;
            emit_report(j, out_path);
            exit_code = r.reproduced ? 0 : 1;
        } else if (wi_mono->parsed()) {
            MonoconeWitnessReport r = monocone_failure_witness(load_space(wm_space, lim));
            Json j;
            j["space"] = space_to_json(r.base);
            j["square"] = space_to_json(r.square);
            j["diagonal"] = subset_to_json(r.square, r.diagonal);
            j["full"] = subset_to_json(r.square, r.full);
            j["images"] = Json{{"v_pi1_diagonal", subset_to_json(r.base, r.v_pi1_diag)},
                               {"v_pi1_full", subset_to_json(r.base, r.v_pi1_full)},
                               {"v_pi2_diagonal", subset_to_json(r.base, r.v_pi2_diag)},
                               {"v_pi2_full", subset_to_json(r.base, r.v_pi2_full)}};
            j["images_all_equal_space"] = r.images_all_equal_base;
            j["diagonal_differs_from_full"] = r.diagonal_differs;
            j["reproduced"] = r.reproduced;
            emit_report(j, out_path);
            exit_code = r.reproduced ? 0 : 1;
        } else if (ts->parsed()) {
            FunctorPtr f = parse_functor(ts_functor);
            Env env = load_env(ts_env, lim);
            TerminalSequence seq = terminal_sequence(f, env, ts_steps, lim);
            Json j;
            j["functor"] = print_functor(f);
            j["steps"] = ts_steps;
            Json levels = Json::array();
            for (std::size_t k = 0; k < seq.levels.size(); ++k) {
                Json l{{"index", k}, {"size", seq.levels[k].size()}};
                Json pts = Json::array();
                for (int i = 0; i < seq.levels[k].size(); ++i) pts.push_back(seq.levels[k].name(i));
                l["points"] = std::move(pts);
                levels.push_back(std::move(l));
            }
            j["levels"] = std::move(levels);
            j["stabilized_at"] = seq.stabilized_at ? Json(*seq.stabilized_at) : Json(nullptr);
            emit_report(j, out_path);
        } else if (be->parsed()) {
            Env env = load_env(be_env, lim);
            Coalgebra c = coalgebra_from_json(load_json_file(be_coalg), env, lim, be_coalg);
            BehaviourResult br = behaviour_maps(c, be_depth, lim);
            Partition part = behavioural_partition(c, be_depth, lim);
            Json j;
            j["functor"] = print_functor(c.functor());
            j["depth"] = be_depth;
            Json bmap = Json::object();
            const ContMap& bn_map = br.maps.back();
            for (int i = 0; i < c.carrier().size(); ++i)
                bmap[c.carrier().name(i)] = bn_map.cod().name(bn_map(i));
            j["behaviour"] = std::move(bmap);
            Json blocks = Json::array();
            for (const auto& blk : part.blocks) {
                Json b = Json::array();
                for (int i : blk) b.push_back(c.carrier().name(i));
                blocks.push_back(std::move(b));
            }
            j["partition"] = std::move(blocks);
            j["partition_stabilized_at"] = part.stabilized_at ? Json(*part.stabilized_at) : Json(nullptr);
            emit_report(j, out_path);
        } else if (eq->parsed()) {
            Env env = load_env(eq_env, lim);
            CoalgHom h1 = hom_from_json(load_json_file(eq_h1), env, lim, eq_h1);
            CoalgHom h2 = hom_from_json(load_json_file(eq_h2), env, lim, eq_h2);
            for (const auto* h : {&h1, &h2}) {
                HomCheck hc = is_coalg_hom(*h);
                if (!hc.ok) throw BadInput("input is not a homomorphism: " + hc.witness);
            }
            SubcoalgResult r = coalg_equalizer(h1, h2);
            Json j;
            j["carrier"] = subset_to_json(h1.src.carrier(), r.carrier_set);
            j["coalgebra"] = coalgebra_to_json(r.sub);
            j["embedding_is_hom"] = is_coalg_hom(r.embedding).ok;
            emit_report(j, out_path);
        } else if (co->parsed()) {
            Env env = load_env(co_env, lim);
            SubfunctorInclusion sigma;
            if (co_sigma == "v+") sigma = sigma_nonempty();
            else if (co_sigma == "vc") sigma = sigma_connected();
            else throw BadInput("unknown sigma: " + co_sigma + " (expected v+ or vc)");
            Coalgebra g = coalgebra_from_json(load_json_file(co_coalg), env, lim, co_coalg);
            CoreflectResult r = coreflect(sigma, g);
            Json j;
            j["sigma"] = sigma.name;
            j["carrier"] = subset_to_json(g.carrier(), r.carrier_set);
            j["coalgebra"] = coalgebra_to_json(r.fcoalg);
            j["counit_is_hom"] = is_coalg_hom(r.counit).ok;
            emit_report(j, out_path);
        } else if (bs->parsed()) {
            Trajectory traj = unfold_ball(BallState{bs_p, bs_v}, bs_bounces, bs_g, bs_factor);
            std::string payload;
            if (bs_out.size() > 4 && bs_out.substr(bs_out.size() - 4) == ".csv")
                payload = export_trajectory_csv(traj, bs_step);
            else if (bs_out.size() > 4 && bs_out.substr(bs_out.size() - 4) == ".svg")
                payload = export_trajectory_svg(traj, bs_step);
            else throw UnsupportedFormat("trajectory file must end in .csv or .svg");
            emit(payload, bs_out);
            std::string rep = "{\n  \"segments\": " + std::to_string(traj.segments.size());
            rep += ",\n  \"durations\": [";
            for (std::size_t i = 0; i < traj.segments.size(); ++i)
                rep += (i ? ", " : "") + fmt9(traj.segments[i].evo.duration);
            rep += "],\n  \"rebound_speeds\": [";
            for (std::size_t i = 0; i < traj.segments.size(); ++i)
                rep += (i ? ", " : "") + fmt9(std::abs(traj.segments[i].evo.a1));
            rep += "],\n  \"horizon\": " + fmt9(traj.horizon);
            rep += ",\n  \"file\": " + json_str(bs_out) + "\n}\n";
            emit_report_manual(rep, out_path);
        } else if (bn->parsed()) {
            BallParams params{bn_g, bn_lo, bn_hi};
            NondetTree tree = unfold_nondet(BallState{bn_p, bn_v}, bn_depth, bn_samples, params);
            std::function<std::string(const BehaviourNode&, std::string)> node_json =
                [&](const BehaviourNode& node, std::string indent) -> std::string {
                std::string s = "{\n" + indent + "  \"state\": {\"p\": " + fmt9(node.state.p) +
                                ", \"v\": " + fmt9(node.state.v) + "}";
                s += ",\n" + indent + "  \"duration\": " + fmt9(node.evo.duration);
                if (node.factor_from_parent != 0)
                    s += ",\n" + indent + "  \"factor\": " + fmt9(node.factor_from_parent);
                if (!node.children.empty()) {
                    s += ",\n" + indent + "  \"children\": [";
                    for (std::size_t i = 0; i < node.children.size(); ++i) {
                        if (i) s += ", ";
                        s += node_json(node.children[i], indent + "    ");
                    }
                    s += "]";
                }
                return s + "\n" + indent + "}";
            };
            std::string rep = "{\n  \"impact_speed\": " +
                              fmt9(nondet_ball_step(BallState{bn_p, bn_v}, params).impact_speed);
            rep += ",\n  \"envelopes\": [";
            for (std::size_t l = 0; l < tree.envelopes.size(); ++l) {
                const auto& e = tree.envelopes[l];
                if (l) rep += ", ";
                rep += "{\"level\": " + std::to_string(l + 1) + ", \"speed\": [" + fmt9(e.speed_min) +
                       ", " + fmt9(e.speed_max) + "], \"apex\": [" + fmt9(e.apex_min) + ", " +
                       fmt9(e.apex_max) + "]}";
            }
            rep += "],\n  \"tree\": " + node_json(tree.root, "  ") + "\n}\n";
            emit_report_manual(rep, out_path);
        } else if (bst->parsed()) {
            BallSystem sys = bst_counter
                                 ? discontinuous_system(bst_g, bst_factor, bst_factor_high, bst_jump_at)
                                 : deterministic_system(bst_g, bst_factor);
            StabilityReport r =
                stability_probe(sys, BallState{bst_p, bst_v}, bst_delta, bst_horizon, bst_n);
            std::string rep = "{\n  \"max_duration_dev\": " + fmt9(r.max_duration_dev);
            rep += ",\n  \"max_sup_dev\": " + fmt9(r.max_sup_dev);
            rep += ",\n  \"segments_compared\": " + std::to_string(r.segments_compared);
            rep += ",\n  \"samples\": " + std::to_string(r.samples) + "\n}\n";
            emit_report_manual(rep, out_path);
        } else {
            std::cerr << app.help() << "\n";
            return 2;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "elapsed_ms "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
    return exit_code;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
