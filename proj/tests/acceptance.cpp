// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "support/enumerate.hpp"
#include "support/golden_cases.hpp"
#include "vcoalg/coalg.hpp"
#include "vcoalg/hybrid.hpp"
#include "vcoalg/io.hpp"

using namespace vcoalg;
using namespace vctest;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string title;
    double time_budget_s; // 0 = unbounded
    std::function<bool(std::string&)> run;
};

bool check(bool cond, std::string& detail, const std::string& msg) {
    if (!cond && detail.empty()) detail = msg;
    return cond;
}

std::string tmp_dir;

// --- criterion 1 ------------------------------------------------------------

bool crit_classic(std::string& detail) {
    ClassicWitnessReport r = classic_nonfunctoriality_witness();
    bool ok = true;
    ok &= check(r.ambient_closed.size() == 5, detail, "expected five closed sets in the ambient space");
    std::vector<std::string> names;
    for (const auto& s : r.ambient_closed) names.push_back(subset_name(r.ambient, s));
    ok &= check(names == std::vector<std::string>{"{}", "{1}", "{3}", "{1,3}", "{1,2,3}"}, detail,
                "closed sets of the ambient space differ");
    std::vector<std::string> pre;
    for (int k : r.preimage.elements())
        pre.push_back(subset_name(r.sub, r.sub_closed[static_cast<std::size_t>(k)]));
    ok &= check(pre == std::vector<std::string>{"{}", "{1}"}, detail, "preimage of the box differs");
    ok &= check(!r.preimage_open, detail, "the preimage must not be open");
    ok &= check(r.min_nbhd_contains_12, detail, "every open around {1} must contain {1,2}");
    ok &= check(r.reproduced, detail, "witness not reproduced");
    RunResult cli = run_cli("witness classic-vietoris", tmp_dir);
    ok &= check(cli.exit_code == 0, detail, "CLI witness exited nonzero");
    return ok;
}

// --- criterion 2 ------------------------------------------------------------

bool crit_monocone(std::string& detail) {
    MonoconeWitnessReport r = monocone_failure_witness(FinSpace::discrete({"a", "b"}));
    Bitset full = Bitset::full(2);
    bool ok = true;
    ok &= check(r.v_pi1_diag == full && r.v_pi1_full == full && r.v_pi2_diag == full &&
                    r.v_pi2_full == full,
                detail, "projection images must all equal the base");
    ok &= check(!(r.diagonal == r.full), detail, "diagonal must differ from the full square");
    ok &= check(r.reproduced, detail, "witness not reproduced");
    RunResult cli = run_cli("witness monocone --space {SRC}/samples/discrete2.json", tmp_dir);
    ok &= check(cli.exit_code == 0, detail, "CLI witness exited nonzero");
    return ok;
}

// --- criterion 3 ------------------------------------------------------------

bool crit_hyperspace_oracle(std::string& detail) {
    bool ok = true;
    for (const FinSpace& x : spaces_up_to(4)) {
        for (VietorisVariant v : {VietorisVariant::Lower, VietorisVariant::Compact}) {
            Hyperspace h = make_hyperspace(x, v, Limits{64});
            FinSpace oracle = hyperspace_by_subbase(x, v, Limits{64});
            ok &= check(h.space == oracle, detail,
                        std::string("preorder mismatch for ") + variant_name(v) + " on a " +
                            std::to_string(x.size()) + "-point space");
        }
    }
    return ok;
}

// --- criterion 4 ------------------------------------------------------------

bool crit_separation(std::string& detail) {
    bool ok = true;
    for (const FinSpace& x : spaces_up_to(4)) {
        ok &= check(make_hyperspace(x, VietorisVariant::Lower, Limits{64}).space.is_t0(), detail,
                    "lower hyperspace must be T0");
        if (x.is_discrete())
            ok &= check(make_hyperspace(x, VietorisVariant::Compact, Limits{64}).space.is_discrete(),
                        detail, "compact hyperspace of a discrete space must be discrete");
    }
    return ok;
}

// --- criterion 5 ------------------------------------------------------------

bool crit_functor_laws(std::string& detail) {
    Env env{{"two", FinSpace::discrete({"a", "b"})}};
    auto spaces = spaces_up_to(3);
    bool ok = true;
    for (const char* expr : {"Id", "C(two)", "Id + Id", "Id * Id", "V", "Vl", "V+", "Vc"}) {
        ExprFunctor f(parse_functor(expr), env);
        LawReport rep = check_functor_laws(f, spaces, Limits{64});
        ok &= check(rep.pass, detail, std::string(expr) + ": " + rep.witness);
    }
    return ok;
}

// --- criterion 6 ------------------------------------------------------------

bool crit_terminal_sequence(std::string& detail) {
    Env env{{"two", FinSpace::discrete({"a", "b"})}};
    bool ok = true;
    FinalCoalgebraResult r = final_coalgebra_if_stabilized(parse_functor("C(two)"), env, 4);
    ok &= check(r.seq.stabilized_at && *r.seq.stabilized_at == 1, detail,
                "C(A) must stabilize at level 1");
    ok &= check(r.final_coalg.has_value(), detail, "C(A) must yield a final coalgebra");
    if (r.final_coalg) {
        ok &= check(r.final_coalg->structure_map().table() == std::vector<int>{0, 1}, detail,
                    "the final C(A)-coalgebra must be (A, id)");
        FinalityCheck fc = verify_finality(*r.final_coalg, spaces_up_to(4), Limits{16});
        ok &= check(fc.ok, detail, "finality check failed: " + fc.witness);
    }
    TerminalSequence seq = terminal_sequence(parse_functor("Vl"), {}, 5);
    std::vector<int> sizes;
    for (const auto& l : seq.levels) sizes.push_back(l.size());
    ok &= check(sizes == std::vector<int>{1, 2, 3, 4, 5, 6}, detail, "Vl level sizes differ");
    ok &= check(!seq.stabilized_at.has_value(), detail, "Vl must not stabilize");
    return ok;
}

// --- criterion 7 ------------------------------------------------------------

bool crit_equalizer_oracle(std::string& detail) {
    Rng rng(0x61636331);
    Env env{{"two", FinSpace::discrete({"a", "b"})}};
    // systems are drawn across several transition types
    std::vector<FunctorPtr> functors{parse_functor("V"), parse_functor("Vl"), parse_functor("V+"),
                                     parse_functor("C(two) * Id")};
    bool ok = true;
    int done = 0;
    while (done < 200 && ok) {
        const FunctorPtr& f = functors[static_cast<std::size_t>(done) % functors.size()];
        Coalgebra src = random_coalgebra(rng, f, env, 5, Limits{64});
        Coalgebra dst = rng.below(2) == 0 ? src : random_coalgebra(rng, f, env, 5, Limits{64});
        auto homs = enumerate_homs(src, dst);
        if (homs.empty()) continue;
        const ContMap& h1 = homs[rng.below(homs.size())];
        const ContMap& h2 = homs[rng.below(homs.size())];
        SubcoalgResult eq = coalg_equalizer({src, dst, h1}, {src, dst, h2});
        Bitset agree(static_cast<std::size_t>(src.carrier().size()));
        for (int i = 0; i < src.carrier().size(); ++i)
            if (h1(i) == h2(i)) agree.set(static_cast<std::size_t>(i));
        ok &= check(eq.carrier_set == brute_force_largest_subcoalgebra(src, agree), detail,
                    "equalizer disagrees with the brute-force oracle at run " + std::to_string(done));
        ok &= check(is_coalg_hom(eq.embedding).ok, detail, "equalizer embedding is not a hom");
        ++done;
    }
    return ok && done >= 200;
}

// --- criterion 8 ------------------------------------------------------------

bool crit_coreflection_oracle(std::string& detail) {
    Rng rng(0x61636332);
    FunctorPtr v = parse_functor("V");
    bool ok = true;
    for (const SubfunctorInclusion& sigma : {sigma_nonempty(), sigma_connected()}) {
        for (int done = 0; done < 200 && ok; ++done) {
            Coalgebra g = random_vleaf_coalgebra(rng, v, VietorisVariant::Compact, 5, Limits{64});
            CoreflectResult r = coreflect(sigma, g);
            ok &= check(r.carrier_set == brute_force_largest_variant_subcoalgebra(g, sigma.from),
                        detail, sigma.name + ": coreflection disagrees with the brute-force oracle");
            ok &= check(is_coalg_hom(r.counit).ok, detail, sigma.name + ": counit is not a G-hom");
        }
    }
    return ok;
}

// --- criterion 9 ------------------------------------------------------------

bool crit_taut(std::string& detail) {
    bool ok = true;
    for (int k = 0; k <= 4 && ok; ++k)
        for (int n = k; n <= 4 && ok; ++n) {
            FinSpace w = FinSpace::discrete(default_names(k));
            FinSpace z = FinSpace::discrete(default_names(n));
            for (const ContMap& m : all_embeddings(w, z))
                ok &= check(taut_check(sigma_nonempty(), m, Limits{64}), detail,
                            "V+ inclusion must be taut on discrete embeddings");
        }
    for (const FinSpace& x : spaces_up_to(3, false)) {
        ok &= check(taut_check(sigma_nonempty(), ContMap::identity(x), Limits{64}), detail,
                    "identity square must be a pullback for V+");
        ok &= check(taut_check(sigma_connected(), ContMap::identity(x), Limits{64}), detail,
                    "identity square must be a pullback for Vc");
    }
    return ok;
}

// --- criterion 10 -----------------------------------------------------------

bool crit_strength(std::string& detail) {
    auto spaces = spaces_up_to(3);
    const std::size_t n = spaces.size();
    const Limits lim{1024};
    std::vector<std::vector<Strength>> st(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) st[i].push_back(strength_tau(spaces[i], spaces[j], lim));

    bool ok = true;

    // both preimage identities, for all rectangles and all two-rectangle unions
    for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
            const Strength& s = st[i][j];
            auto us = spaces[i].opens();
            auto vs = spaces[j].opens();
            std::vector<std::pair<Bitset, Bitset>> rects;
            for (const auto& u : us)
                for (const auto& v : vs) rects.emplace_back(u, v);
            for (const auto& r : rects) {
                ok &= check(strength_diamond_identity(s, {r}), detail, "diamond identity failed");
                ok &= check(strength_box_identity(s, {r}), detail, "box identity failed");
                if (!ok) break;
            }
            for (std::size_t a = 0; a < rects.size() && ok; ++a)
                for (std::size_t b = a; b < rects.size() && ok; ++b) {
                    ok &= check(strength_diamond_identity(s, {rects[a], rects[b]}), detail,
                                "diamond identity failed on a union");
                    ok &= check(strength_box_identity(s, {rects[a], rects[b]}), detail,
                                "box identity failed on a union");
                }
        }

    // naturality, separately in each argument (squares compose)
    auto tau_image = [](const Strength& s, int k, int y) {
        return tau_point(s.xy, s.vx.subsets[static_cast<std::size_t>(k)], y);
    };
    for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t i2 = 0; i2 < n && ok; ++i2)
            for (const ContMap& f : enumerate_continuous_maps(spaces[i], spaces[i2]))
                for (std::size_t j = 0; j < n && ok; ++j) {
                    const Strength& sd = st[i][j];
                    const Strength& sc = st[i2][j];
                    for (int k = 0; k < sd.vx.space.size() && ok; ++k)
                        for (int y = 0; y < spaces[j].size(); ++y) {
                            Bitset lhs(static_cast<std::size_t>(sc.xy.space.size()));
                            for (int e : tau_image(sd, k, y).elements())
                                lhs.set(static_cast<std::size_t>(
                                    sc.xy.pair_index(f(sd.xy.pi1(e)), sd.xy.pi2(e))));
                            Bitset rhs = tau_point(
                                sc.xy, f.image(sd.vx.subsets[static_cast<std::size_t>(k)]), y);
                            ok &= check(lhs == rhs, detail, "naturality in the first argument failed");
                            if (!ok) break;
                        }
                }
    for (std::size_t j = 0; j < n && ok; ++j)
        for (std::size_t j2 = 0; j2 < n && ok; ++j2)
            for (const ContMap& g : enumerate_continuous_maps(spaces[j], spaces[j2]))
                for (std::size_t i = 0; i < n && ok; ++i) {
                    const Strength& sd = st[i][j];
                    const Strength& sc = st[i][j2];
                    for (int k = 0; k < sd.vx.space.size() && ok; ++k)
                        for (int y = 0; y < spaces[j].size(); ++y) {
                            Bitset lhs(static_cast<std::size_t>(sc.xy.space.size()));
                            for (int e : tau_image(sd, k, y).elements())
                                lhs.set(static_cast<std::size_t>(
                                    sc.xy.pair_index(sd.xy.pi1(e), g(sd.xy.pi2(e)))));
                            Bitset rhs = tau_point(
                                sc.xy, sd.vx.subsets[static_cast<std::size_t>(k)], g(y));
                            ok &= check(lhs == rhs, detail, "naturality in the second argument failed");
                            if (!ok) break;
                        }
                }
    return ok;
}

// --- criterion 11 -----------------------------------------------------------

bool crit_ball_numerics(std::string& detail) {
    bool ok = true;
    StepResult up = ball_step(BallState{0, 5}, 9.8, 0.5);
    ok &= check(std::abs(up.out.duration - 10.0 / 9.8) <= 1e-9 * (10.0 / 9.8), detail,
                "duration from (0,5) must be 10/9.8");
    ok &= check(std::abs(up.next.v - 2.5) <= 1e-9 * 2.5, detail, "rebound from (0,5) must be 2.5");

    StepResult drop = ball_step(BallState{5, 0}, 9.8, 0.5);
    double d_expected = std::sqrt(98.0) / 9.8;
    ok &= check(std::abs(drop.out.duration - d_expected) <= 1e-9 * d_expected, detail,
                "duration from (5,0) must be sqrt(98)/9.8");
    ok &= check(std::abs(drop.next.v - 4.949747468) <= 1e-9 * 4.949747468, detail,
                "rebound from (5,0) must be 4.949747468");

    Trajectory t = unfold_ball(BallState{0, 5}, 3, 9.8, 0.5);
    ok &= check(t.segments[0].evo.a1 == 5.0 && t.segments[1].evo.a1 == 2.5 &&
                    t.segments[2].evo.a1 == 1.25,
                detail, "rebound speeds must be exactly 5, 2.5, 1.25");
    for (const auto& seg : t.segments)
        ok &= check(std::abs(seg.evo.eval(seg.evo.duration)) <= 1e-9, detail,
                    "every segment must land at the ground");
    return ok;
}

// --- criterion 12 -----------------------------------------------------------

bool crit_nondeterminism(std::string& detail) {
    bool ok = true;
    BallParams p{9.8, 0.5, 0.7};
    NondetTree t = unfold_nondet(BallState{5, 0}, 2, 0, p);
    ok &= check(t.root.children.size() == 2, detail, "endpoint expansion must give two children");
    ok &= check(std::abs(t.root.children[0].state.v - 4.949747) <= 1e-6, detail,
                "lower endpoint rebound speed");
    ok &= check(std::abs(t.root.children[1].state.v - 6.929646) <= 1e-6, detail,
                "upper endpoint rebound speed");

    // a degenerate interval reproduces the deterministic trajectory
    // bit-for-bit in the exported CSV
    BallParams degenerate{9.8, 0.5, 0.5};
    NondetTree chain = unfold_nondet(BallState{0, 5}, 4, 0, degenerate);
    Trajectory viaTree;
    double at = 0;
    for (const BehaviourNode* node = &chain.root;;) {
        viaTree.segments.push_back(Segment{node->evo, at});
        at += node->evo.duration;
        if (node->children.empty()) break;
        node = &node->children[0];
    }
    viaTree.horizon = at;
    Trajectory direct = unfold_ball(BallState{0, 5}, 4, 9.8, 0.5);
    ok &= check(export_trajectory_csv(viaTree, 0.1) == export_trajectory_csv(direct, 0.1), detail,
                "degenerate-interval CSV must match the deterministic CSV byte for byte");
    return ok;
}

// --- criterion 13 -----------------------------------------------------------

bool crit_stability(std::string& detail) {
    bool ok = true;
    StabilityReport smooth =
        stability_probe(deterministic_system(9.8, 0.5), BallState{5, 0}, 1e-3, 1.0, 64);
    ok &= check(smooth.segments_compared == 1, detail, "expected exactly the first segment");
    ok &= check(smooth.max_duration_dev <= 2e-4, detail,
                "first-segment duration deviation exceeds 2e-4: " + fmt9(smooth.max_duration_dev));

    StabilityReport flagged =
        stability_probe(discontinuous_system(9.8, 0.5, 0.9, 5.0), BallState{5, 0}, 1e-3, 2.5, 64);
    ok &= check(flagged.max_duration_dev >= 0.1, detail,
                "the discontinuous system must be flagged with deviation >= 0.1");
    return ok;
}

// --- criterion 14 -----------------------------------------------------------

bool crit_determinism(std::string& detail) {
    bool ok = true;
    for (const GoldenCase& gc : golden_cases()) {
        RunResult first = run_cli(gc.args, tmp_dir);
        std::string file_first =
            gc.out_file.empty() ? std::string() : read_file(tmp_dir + "/" + gc.out_file);
        RunResult second = run_cli(gc.args, tmp_dir);
        std::string file_second =
            gc.out_file.empty() ? std::string() : read_file(tmp_dir + "/" + gc.out_file);
        ok &= check(first.exit_code == second.exit_code && first.out == second.out &&
                        file_first == file_second,
                    detail, gc.name + ": consecutive runs differ");
    }
    return ok;
}

} // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "classic-Vietoris non-functoriality witness (exact)", 1.0, crit_classic},
        {2, "monocone failure witness on the discrete pair (exact)", 1.0, crit_monocone},
        {3, "hyperspace preorders equal the subbase oracle, <= 4 points", 60.0, crit_hyperspace_oracle},
        {4, "lower Vietoris is T0; compact Vietoris preserves discreteness", 0, crit_separation},
        {5, "functor laws for Id, C(A), +, x, V, Vl, V+, Vc, <= 3 points", 120.0, crit_functor_laws},
        {6, "terminal sequence: C(A) stabilizes with (A,id); Vl grows 1..6", 0, crit_terminal_sequence},
        {7, "equalizer equals the brute-force oracle on 200 random systems", 120.0, crit_equalizer_oracle},
        {8, "coreflection equals the brute-force oracle for V+ and Vc", 0, crit_coreflection_oracle},
        {9, "taut naturality squares for the shipped inclusions", 0, crit_taut},
        {10, "strength: naturality and both preimage identities, <= 3 points", 0, crit_strength},
        {11, "ball numerics: closed-form durations and rebounds to 1e-9", 1.0, crit_ball_numerics},
        {12, "nondeterministic endpoints and degenerate-interval round trip", 0, crit_nondeterminism},
        {13, "stability probe: smooth bound and discontinuity flag", 0, crit_stability},
        {14, "CLI determinism: consecutive runs byte-match", 0, crit_determinism},
    };

    std::string tmpl = (fs::temp_directory_path() / "vcoalg-acceptance-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) {
        std::fprintf(stderr, "cannot create temp dir\n");
        return 2;
    }
    tmp_dir = buf.data();

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(t1 - t0).count();
        if (pass && c.time_budget_s > 0 && secs > c.time_budget_s) {
            pass = false;
            detail = "time budget exceeded";
        }
        if (!pass) ++failures;
        std::printf("[%2d] %s  %s (%.2f s)%s%s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                    secs, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(tmp_dir);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
