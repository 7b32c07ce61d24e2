#ifndef VCOALG_HYBRID_HPP
#define VCOALG_HYBRID_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcoalg/errors.hpp"

namespace vcoalg {

/// Format a floating value with 9 significant digits, always keeping a
/// decimal point so columns stay visibly real-valued.
inline std::string fmt9(double v) {
    if (v == 0.0) return "0.0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

inline constexpr double kDurationInf = std::numeric_limits<double>::infinity();

/// A duration-truncated quadratic evolution: t |-> a0 + a1 t + a2 t^2
/// evaluated at min(t, duration). The truncation is the defining equation
/// of the continuous-evolution space (f after min(_, d) equals f).
struct Evolution {
    double a0 = 0, a1 = 0, a2 = 0;
    double duration = 0; // >= 0, may be infinite

    double eval(double t) const {
        double u = t < duration ? t : duration;
        return a0 + a1 * u + a2 * u * u;
    }

    /// The raw quadratic without truncation; exists so the membership
    /// probe can exhibit a non-member.
    double eval_raw(double t) const { return a0 + a1 * t + a2 * t * t; }
};

/// Membership probe for the truncation equation: checks f(t) = f(min(t,d))
/// on the grid. Library-built evolutions satisfy it by construction; a raw
/// quadratic with finite d fails once the grid passes d.
inline bool h_member(const std::function<double(double)>& f, double d,
                     std::span<const double> grid, double tol = 0.0) {
    for (double t : grid) {
        if (t < 0) throw Error("h_member grid values must be nonnegative");
        double u = t < d ? t : d;
        if (std::abs(f(t) - f(u)) > tol) return false;
    }
    return true;
}

struct BallState {
    double p = 0; // height, m
    double v = 0; // velocity, m/s (positive = upwards)
};

/// Gravity magnitude and the restitution factor interval (magnitudes in
/// (0,1); lo == hi is the deterministic ball).
struct BallParams {
    double g_mag = 9.8;
    double lo = 0.5;
    double hi = 0.5;

    void validate() const {
        if (!(g_mag > 0)) throw InvalidState("gravity magnitude must be positive");
        if (!(lo > 0 && hi < 1 && lo <= hi))
            throw InvalidState("restitution interval must satisfy 0 < lo <= hi < 1");
    }
};

struct StepResult {
    BallState next;
    Evolution out;
    double impact_speed = 0;
};

/// One flight segment: the ball moves along p + v t - (g/2) t^2 until it
/// reaches the ground after d = (v + sqrt(v^2 + 2 g p)) / g, then rebounds
/// with the impact speed scaled by the restitution factor. The impact
/// speed is computed in closed form as sqrt(v^2 + 2 g p), which keeps the
/// rebound recurrence exact in floating point.
inline StepResult ball_step(const BallState& s, double g_mag, double factor) {
    if (s.p < 0) throw InvalidState("ball height must be nonnegative");
    if (!(g_mag > 0)) throw InvalidState("gravity magnitude must be positive");
    StepResult r;
    if (s.p == 0 && s.v == 0) {
        r.next = BallState{0, 0};
        r.out = Evolution{0, 0, 0, 0};
        r.impact_speed = 0;
        return r;
    }
    double speed = std::sqrt(s.v * s.v + 2 * g_mag * s.p);
    double d = (s.v + speed) / g_mag;
    r.impact_speed = speed;
    r.next = BallState{0, factor * speed};
    r.out = Evolution{s.p, s.v, -g_mag / 2, d};
    return r;
}

struct Segment {
    Evolution evo;
    double start = 0; // cumulative time offset of the segment
};

struct Trajectory {
    std::vector<Segment> segments;
    double horizon = 0; // end time of the last segment

    /// Position at absolute time t: the active segment's evolution at
    /// local time (clamped past the end).
    double position_at(double t) const {
        if (segments.empty()) return 0;
        std::size_t k = 0;
        while (k + 1 < segments.size() && t >= segments[k + 1].start) ++k;
        return segments[k].evo.eval(t - segments[k].start);
    }
};

/// Unfold the deterministic ball for n_bounces flight segments.
inline Trajectory unfold_ball(const BallState& s0, int n_bounces, double g_mag, double factor) {
    if (n_bounces < 1) throw InvalidState("need at least one segment");
    Trajectory traj;
    BallState s = s0;
    double t = 0;
    for (int k = 0; k < n_bounces; ++k) {
        StepResult r = ball_step(s, g_mag, factor);
        traj.segments.push_back(Segment{r.out, t});
        t += r.out.duration;
        s = r.next;
    }
    traj.horizon = t;
    return traj;
}

struct NondetStep {
    Evolution out;
    double impact_speed = 0;
    BallState next_lo, next_hi; // endpoints of the rebound-state interval
};

/// The non-deterministic step: same flight, rebound velocity anywhere in
/// [lo, hi] * impact speed; the set is represented by its endpoints.
inline NondetStep nondet_ball_step(const BallState& s, const BallParams& p) {
    p.validate();
    StepResult base = ball_step(s, p.g_mag, p.lo);
    NondetStep r;
    r.out = base.out;
    r.impact_speed = base.impact_speed;
    r.next_lo = BallState{0, p.lo * base.impact_speed};
    r.next_hi = BallState{0, p.hi * base.impact_speed};
    return r;
}

/// The paper's strength decomposition of the nondeterministic step,
/// specialised to the interval endpoints as the finite stand-in for the
/// compact branching set: pair the state set f(s) = {0} x {lo,hi} with the
/// continuation g(s) via the strength, then evaluate. Must agree exactly
/// with nondet_ball_step's endpoints.
inline std::pair<BallState, BallState> strength_decomposed_next(const BallState& s,
                                                                const BallParams& p) {
    p.validate();
    if (s.p < 0) throw InvalidState("ball height must be nonnegative");
    double speed = std::sqrt(s.v * s.v + 2 * p.g_mag * s.p);
    // f(s) = {0} x [lo, hi] (endpoints), g(s)(x, y) = (0, y * impact speed);
    // tau pairs each element of f(s) with g(s), V(ev) evaluates.
    std::vector<std::pair<BallState, std::function<BallState(BallState)>>> paired;
    for (double y : {p.lo, p.hi}) {
        BallState member{0, y};
        auto g = [speed](BallState m) { return BallState{0, m.v * speed}; };
        paired.emplace_back(member, g);
    }
    BallState a = paired[0].second(paired[0].first);
    BallState b = paired[1].second(paired[1].first);
    return {a, b};
}

/// A node of the compactly-branching behaviour tree: the flight segment
/// from this state plus lazily expanded children at sampled restitution
/// factors (endpoints first, then k interior equispaced samples).
struct BehaviourNode {
    BallState state;
    Evolution evo;
    double factor_from_parent = 0; // 0 at the root
    std::vector<BehaviourNode> children;
};

struct LevelEnvelope {
    double speed_min = 0, speed_max = 0; // rebound speeds entering this level
    double apex_min = 0, apex_max = 0;   // peak heights of this level's flights
};

struct NondetTree {
    BehaviourNode root;
    std::vector<LevelEnvelope> envelopes; // per level, root = level 1
};

namespace detail {
inline double flight_apex(const BallState& s, double g_mag) {
    if (s.v <= 0) return s.p;
    return s.p + s.v * s.v / (2 * g_mag);
}

inline void expand_node(BehaviourNode& node, int remaining, int k_samples, const BallParams& p) {
    if (remaining <= 1) return;
    std::vector<double> factors{p.lo, p.hi};
    if (p.hi == p.lo) factors.pop_back();
    for (int i = 1; i <= k_samples; ++i)
        factors.push_back(p.lo + (p.hi - p.lo) * i / (k_samples + 1));
    StepResult base = ball_step(node.state, p.g_mag, p.lo);
    for (double f : factors) {
        BehaviourNode child;
        child.state = BallState{0, f * base.impact_speed};
        child.factor_from_parent = f;
        child.evo = ball_step(child.state, p.g_mag, f).out;
        expand_node(child, remaining - 1, k_samples, p);
        node.children.push_back(std::move(child));
    }
}

inline void collect_envelope(const BehaviourNode& node, int level, double g_mag,
                             std::vector<LevelEnvelope>& env) {
    if (static_cast<int>(env.size()) < level) env.resize(static_cast<std::size_t>(level));
    LevelEnvelope& e = env[static_cast<std::size_t>(level - 1)];
    double speed = std::abs(node.state.v);
    double apex = flight_apex(node.state, g_mag);
    if (e.speed_min == 0 && e.speed_max == 0 && e.apex_min == 0 && e.apex_max == 0) {
        e = LevelEnvelope{speed, speed, apex, apex};
    } else {
        e.speed_min = std::min(e.speed_min, speed);
        e.speed_max = std::max(e.speed_max, speed);
        e.apex_min = std::min(e.apex_min, apex);
        e.apex_max = std::max(e.apex_max, apex);
    }
    for (const auto& c : node.children) collect_envelope(c, level + 1, g_mag, env);
}
} // namespace detail

/// Unfold the nondeterministic ball to the given depth. Children are
/// expanded at the interval endpoints plus k interior samples; rebound
/// speed is strictly monotone in the factor, so the endpoint children
/// bracket every sampled one (asserted by the test suite).
inline NondetTree unfold_nondet(const BallState& s0, int depth, int k_samples,
                                const BallParams& p) {
    if (depth < 1) throw InvalidState("tree depth must be >= 1");
    if (k_samples < 0) throw InvalidState("sample count must be >= 0");
    p.validate();
    NondetTree t;
    t.root.state = s0;
    t.root.evo = ball_step(s0, p.g_mag, p.lo).out;
    detail::expand_node(t.root, depth, k_samples, p);
    detail::collect_envelope(t.root, 1, p.g_mag, t.envelopes);
    return t;
}

/// A deterministic hybrid system for the stability probe: one observable
/// step from a state.
using BallSystem = std::function<StepResult(const BallState&)>;

inline BallSystem deterministic_system(double g_mag, double factor) {
    return [g_mag, factor](const BallState& s) { return ball_step(s, g_mag, factor); };
}

/// A deliberately discontinuous system: the restitution factor jumps when
/// the segment starts at or above the threshold height. Used to show the
/// stability probe flags discontinuous dynamics.
inline BallSystem discontinuous_system(double g_mag, double low_factor, double high_factor,
                                       double threshold_p) {
    return [=](const BallState& s) {
        return ball_step(s, g_mag, s.p >= threshold_p ? high_factor : low_factor);
    };
}

struct StabilityReport {
    double max_duration_dev = 0;
    double max_sup_dev = 0; // max over segments of sup |pos - pos'|
    int segments_compared = 0;
    int samples = 0;
};

namespace detail {
inline Trajectory unfold_system(const BallSystem& sys, BallState s, double horizon) {
    Trajectory traj;
    double t = 0;
    for (int k = 0; k < 64 && t < horizon; ++k) {
        StepResult r = sys(s);
        traj.segments.push_back(Segment{r.out, t});
        if (r.out.duration <= 0) break; // at rest
        t += r.out.duration;
        s = r.next;
    }
    traj.horizon = t;
    return traj;
}

/// Exact sup of |(a - b)(t)| over [0, T] for quadratics: endpoints plus
/// the interior critical point of the difference.
inline double quad_sup_dev(const Evolution& a, const Evolution& b, double tmax) {
    double d2 = a.a2 - b.a2, d1 = a.a1 - b.a1, d0 = a.a0 - b.a0;
    double best = std::max(std::abs(d0), std::abs(d0 + d1 * tmax + d2 * tmax * tmax));
    if (d2 != 0) {
        double tc = -d1 / (2 * d2);
        if (tc > 0 && tc < tmax) best = std::max(best, std::abs(d0 + d1 * tc + d2 * tc * tc));
    }
    return best;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Uniform in [-1, 1], reproducible across platforms.
inline double unit_noise(std::uint64_t& state) {
    return (static_cast<double>(splitmix64(state) >> 11) / 9007199254740992.0) * 2.0 - 1.0;
}
} // namespace detail

inline constexpr std::uint64_t kStabilitySeed = 0x76636f616c672d31ull;

/// Falsifier for coalgebraic stability: perturb the initial state within
/// delta (max norm), unfold nominal and perturbed trajectories over the
/// horizon, report worst index-aligned segment deviations. The first four
/// samples are the axis extremes, the rest seeded-uniform in the box. A
/// large report flags a discontinuity; a small one proves nothing.
inline StabilityReport stability_probe(const BallSystem& sys, const BallState& s0, double delta,
                                       double horizon, int n_perturbations,
                                       std::uint64_t seed = kStabilitySeed) {
    if (delta < 0) throw InvalidState("delta must be nonnegative");
    if (s0.p < 0) throw InvalidState("ball height must be nonnegative");
    StabilityReport rep;
    Trajectory nominal = detail::unfold_system(sys, s0, horizon);
    std::uint64_t rng = seed;
    for (int k = 0; k < n_perturbations; ++k) {
        double dp = 0, dv = 0;
        switch (k) {
        case 0: dp = delta; break;
        case 1: dp = -delta; break;
        case 2: dv = delta; break;
        case 3: dv = -delta; break;
        default:
            dp = delta * detail::unit_noise(rng);
            dv = delta * detail::unit_noise(rng);
        }
        BallState s{std::max(0.0, s0.p + dp), s0.v + dv};
        Trajectory pert = detail::unfold_system(sys, s, horizon);
        std::size_t m = std::min(nominal.segments.size(), pert.segments.size());
        for (std::size_t i = 0; i < m; ++i) {
            const Evolution& a = nominal.segments[i].evo;
            const Evolution& b = pert.segments[i].evo;
            rep.max_duration_dev = std::max(rep.max_duration_dev, std::abs(a.duration - b.duration));
            double tmax = std::min(a.duration, b.duration);
            rep.max_sup_dev = std::max(rep.max_sup_dev, detail::quad_sup_dev(a, b, tmax));
        }
        rep.segments_compared = std::max(rep.segments_compared, static_cast<int>(m));
        ++rep.samples;
    }
    return rep;
}

/// CSV export: header "t,position", fixed sampling step over the whole
/// horizon, values printed with 9 significant digits. Byte-deterministic.
inline std::string export_trajectory_csv(const Trajectory& traj, double step) {
    if (!(step > 0)) throw UnsupportedFormat("sampling step must be positive");
    std::string out = "t,position\n";
    if (traj.segments.empty()) return out;
    for (int k = 0;; ++k) {
        double t = k * step;
        if (t > traj.horizon + 1e-12) break;
        out += fmt9(t);
        out += ",";
        out += fmt9(traj.position_at(t));
        out += "\n";
    }
    return out;
}

/// SVG export: one polyline per segment on a fixed viewport, sampled at
/// the given step. Byte-deterministic.
inline std::string export_trajectory_svg(const Trajectory& traj, double step) {
    if (!(step > 0)) throw UnsupportedFormat("sampling step must be positive");
    const double width = 640, height = 360, margin = 20;
    double pmax = 1e-9;
    for (const auto& seg : traj.segments) {
        for (double t = 0; t <= seg.evo.duration + 1e-12; t += step)
            pmax = std::max(pmax, seg.evo.eval(t));
    }
    double tmax = std::max(traj.horizon, 1e-9);
    auto sx = [&](double t) { return margin + (width - 2 * margin) * t / tmax; };
    auto sy = [&](double p) { return height - margin - (height - 2 * margin) * p / pmax; };
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" "
           "viewBox=\"0 0 640 360\">\n";
    out += "<rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
    for (const auto& seg : traj.segments) {
        out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        bool first = true;
        for (int k = 0;; ++k) {
            double t = k * step;
            if (t > seg.evo.duration + 1e-12) break;
            if (!first) out += " ";
            out += fmt9(sx(seg.start + t));
            out += ",";
            out += fmt9(sy(seg.evo.eval(t)));
            first = false;
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace vcoalg

#endif
