#ifndef VCOALG_COALG_HPP
#define VCOALG_COALG_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vcoalg/apply.hpp"
#include "vcoalg/finspace.hpp"
#include "vcoalg/functor.hpp"
#include "vcoalg/vietoris.hpp"

namespace vcoalg {

/// A coalgebra for a grammar functor: a carrier space plus a continuous
/// structure map carrier -> F(carrier). Immutable; copies share storage.
class Coalgebra {
public:
    Coalgebra() = default;

    Coalgebra(FunctorPtr f, Env env, FinSpace carrier, std::vector<int> structure,
              const Limits& lim = {}) {
        auto d = std::make_shared<Data>();
        d->f = std::move(f);
        d->env = std::move(env);
        d->carrier = std::move(carrier);
        d->lim = lim;
        d->applied = std::make_shared<Applied>(apply_functor(d->f, d->carrier, d->env, lim));
        d->structure_map =
            ContMap(d->carrier, d->applied->space(), std::move(structure)); // validates continuity
        d_ = std::move(d);
    }

    const FunctorPtr& functor() const { return d_->f; }
    const Env& env() const { return d_->env; }
    const FinSpace& carrier() const { return d_->carrier; }
    const Applied& applied() const { return *d_->applied; }
    const Limits& limits() const { return d_->lim; }
    const ContMap& structure_map() const { return d_->structure_map; }
    int structure(int i) const { return d_->structure_map(i); }
    FValue structure_value(int i) const { return d_->applied->value_of(structure(i)); }

    friend bool operator==(const Coalgebra& a, const Coalgebra& b) {
        if (a.d_ == b.d_) return true;
        return functor_equal(*a.d_->f, *b.d_->f) && a.d_->carrier == b.d_->carrier &&
               a.d_->structure_map.table() == b.d_->structure_map.table();
    }
    friend bool operator!=(const Coalgebra& a, const Coalgebra& b) { return !(a == b); }

private:
    struct Data {
        FunctorPtr f;
        Env env;
        FinSpace carrier;
        Limits lim;
        std::shared_ptr<const Applied> applied;
        ContMap structure_map;
    };
    std::shared_ptr<const Data> d_;
};

struct CoalgHom {
    Coalgebra src, dst;
    ContMap map;
};

struct HomCheck {
    bool ok = true;
    std::string witness;
};

/// Continuity of the point map plus pointwise commutation of the defining
/// square F(h) . c_src = c_dst . h; reports a witness point on failure.
inline HomCheck is_coalg_hom(const CoalgHom& h) {
    if (!functor_equal(*h.src.functor(), *h.dst.functor()))
        throw FunctorMismatch("homomorphism between coalgebras of different functors");
    HomCheck out;
    if (h.map.dom() != h.src.carrier() || h.map.cod() != h.dst.carrier()) {
        out.ok = false;
        out.witness = "map does not connect the carriers";
        return out;
    }
    if (!h.map.is_monotone()) {
        out.ok = false;
        out.witness = "map is not continuous";
        return out;
    }
    std::vector<int> fh = h.src.applied().act(h.dst.applied(), h.map.table());
    for (int x = 0; x < h.src.carrier().size(); ++x) {
        int lhs = fh[static_cast<std::size_t>(h.src.structure(x))];
        int rhs = h.dst.structure(h.map(x));
        if (lhs != rhs) {
            out.ok = false;
            out.witness = "square fails at " + h.src.carrier().name(x) + ": F(h)(c(x)) = " +
                          h.dst.applied().space().name(lhs) + " but c(h(x)) = " +
                          h.dst.applied().space().name(rhs);
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Terminal sequence 1 <- F1 <- FF1 <- ...
// ---------------------------------------------------------------------------

struct TerminalSequence {
    FunctorPtr functor;
    std::vector<FinSpace> levels;    // levels[0] is the terminal space
    std::vector<ContMap> connectors; // connectors[k] : levels[k+1] -> levels[k]
    std::optional<int> stabilized_at; // least k with connectors[k] an isomorphism
};

namespace detail {
struct SequenceBuilder {
    FunctorPtr f;
    const Env* env;
    Limits lim;
    TerminalSequence seq;
    std::vector<std::shared_ptr<Applied>> applieds; // applieds[k] = F at levels[k]

    explicit SequenceBuilder(FunctorPtr f_, const Env& e, const Limits& l) : f(std::move(f_)), env(&e), lim(l) {
        seq.functor = f;
        seq.levels.push_back(FinSpace::point());
    }

    /// Extend so that levels[k] exists; returns false if it already did.
    void extend_to(int k) {
        while (static_cast<int>(seq.levels.size()) <= k) {
            int have = static_cast<int>(seq.levels.size()) - 1;
            try {
                applieds.push_back(
                    std::make_shared<Applied>(apply_functor(f, seq.levels[static_cast<std::size_t>(have)], *env, lim)));
            } catch (const SizeCapExceeded& e) {
                throw SizeCapExceeded("terminal sequence stopped at level " + std::to_string(have) +
                                          ": " + e.what(),
                                      e.requested, e.cap);
            }
            seq.levels.push_back(applieds.back()->space());
            if (have == 0) {
                seq.connectors.push_back(
                    ContMap::constant(seq.levels[1], seq.levels[0], 0)); // the unique map F(1) -> 1
            } else {
                // connectors[k] = F(connectors[k-1])
                const ContMap& prev = seq.connectors[static_cast<std::size_t>(have - 1)];
                std::vector<int> t = applieds[static_cast<std::size_t>(have)]->act(
                    *applieds[static_cast<std::size_t>(have - 1)], prev.table());
                seq.connectors.push_back(ContMap(seq.levels[static_cast<std::size_t>(have + 1)],
                                                 seq.levels[static_cast<std::size_t>(have)],
                                                 std::move(t)));
            }
            int k_new = static_cast<int>(seq.connectors.size()) - 1;
            if (!seq.stabilized_at && seq.connectors[static_cast<std::size_t>(k_new)].is_iso())
                seq.stabilized_at = k_new;
        }
    }
};
} // namespace detail

/// Levels F^0(1) .. F^n(1) with their connectors; stabilized_at is the
/// least k <= n-1 whose connector is an isomorphism (bijective and
/// continuous both ways).
inline TerminalSequence terminal_sequence(const FunctorPtr& f, const Env& env, int n,
                                          const Limits& lim = {}) {
    if (n < 0) throw Error("terminal_sequence requires n >= 0");
    detail::SequenceBuilder b(f, env, lim);
    b.extend_to(n);
    return std::move(b.seq);
}

struct FinalCoalgebraResult {
    TerminalSequence seq;
    std::optional<Coalgebra> final_coalg; // (F^k(1), inverse of connector k) when stabilized
};

/// Runs the terminal sequence up to max_n; if some connector becomes an
/// isomorphism, returns the induced final coalgebra.
inline FinalCoalgebraResult final_coalgebra_if_stabilized(const FunctorPtr& f, const Env& env,
                                                          int max_n, const Limits& lim = {}) {
    FinalCoalgebraResult out;
    out.seq = terminal_sequence(f, env, max_n, lim);
    if (out.seq.stabilized_at) {
        int k = *out.seq.stabilized_at;
        ContMap inv = out.seq.connectors[static_cast<std::size_t>(k)].inverse();
        out.final_coalg = Coalgebra(f, env, out.seq.levels[static_cast<std::size_t>(k)],
                                    inv.table(), lim);
    }
    return out;
}

/// All coalgebras (X, c) of F over the given carrier; exponential, meant
/// for exhaustive finality checks over tiny carriers.
inline std::vector<Coalgebra> enumerate_coalgebras(const FunctorPtr& f, const Env& env,
                                                   const FinSpace& x, const Limits& lim = {}) {
    Applied fx = apply_functor(f, x, env, lim);
    std::vector<Coalgebra> out;
    for (const ContMap& c : enumerate_continuous_maps(x, fx.space()))
        out.push_back(Coalgebra(f, env, x, c.table(), lim));
    return out;
}

/// All homomorphisms between two coalgebras of one functor (brute force).
inline std::vector<ContMap> enumerate_homs(const Coalgebra& a, const Coalgebra& b) {
    std::vector<ContMap> out;
    for (const ContMap& h : enumerate_continuous_maps(a.carrier(), b.carrier())) {
        if (is_coalg_hom(CoalgHom{a, b, h}).ok) out.push_back(h);
    }
    return out;
}

struct FinalityCheck {
    bool ok = true;
    long coalgebras_tested = 0;
    std::string witness;
};

/// Verifies that exactly one homomorphism exists from every coalgebra
/// over the supplied carriers into the candidate.
inline FinalityCheck verify_finality(const Coalgebra& candidate,
                                     const std::vector<FinSpace>& carriers,
                                     const Limits& lim = {}) {
    FinalityCheck out;
    for (const FinSpace& x : carriers) {
        for (const Coalgebra& c : enumerate_coalgebras(candidate.functor(), candidate.env(), x, lim)) {
            ++out.coalgebras_tested;
            std::size_t homs = enumerate_homs(c, candidate).size();
            if (homs != 1) {
                out.ok = false;
                out.witness = "coalgebra over a " + std::to_string(x.size()) +
                              "-point carrier has " + std::to_string(homs) + " homomorphisms";
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Behaviour maps and behavioural equivalence
// ---------------------------------------------------------------------------

struct BehaviourResult {
    TerminalSequence seq;
    std::vector<ContMap> maps; // maps[k] : carrier -> levels[k], the canonical cone
};

/// The canonical cone legs b_0 .. b_n: b_0 the unique map to 1,
/// b_{k+1} = F(b_k) . c. Verifies connector_k . b_{k+1} = b_k.
inline BehaviourResult behaviour_maps(const Coalgebra& c, int n, const Limits& lim = {}) {
    if (n < 0) throw Error("behaviour depth must be >= 0");
    detail::SequenceBuilder b(c.functor(), c.env(), lim);
    BehaviourResult out;
    out.maps.push_back(ContMap::constant(c.carrier(), FinSpace::point(), 0));
    for (int k = 1; k <= n; ++k) {
        b.extend_to(k);
        // F(b_{k-1}) : F(X) -> F(levels[k-1]) = levels[k]
        std::vector<int> t =
            c.applied().act(*b.applieds[static_cast<std::size_t>(k - 1)], out.maps.back().table());
        std::vector<int> bk(static_cast<std::size_t>(c.carrier().size()));
        for (int x = 0; x < c.carrier().size(); ++x)
            bk[static_cast<std::size_t>(x)] = t[static_cast<std::size_t>(c.structure(x))];
        out.maps.push_back(
            ContMap(c.carrier(), b.seq.levels[static_cast<std::size_t>(k)], std::move(bk)));
        const ContMap& conn = b.seq.connectors[static_cast<std::size_t>(k - 1)];
        for (int x = 0; x < c.carrier().size(); ++x)
            if (conn(out.maps[static_cast<std::size_t>(k)](x)) !=
                out.maps[static_cast<std::size_t>(k - 1)](x))
                throw Error("behaviour map does not commute with the connector at depth " +
                            std::to_string(k));
    }
    out.seq = std::move(b.seq);
    return out;
}

inline ContMap behaviour_map(const Coalgebra& c, int n, const Limits& lim = {}) {
    return behaviour_maps(c, n, lim).maps.back();
}

struct Partition {
    std::vector<std::vector<int>> blocks; // blocks ordered by least member
    std::optional<int> stabilized_at;     // least observed d with kernel(d) == kernel(d+1)
    int depth = 0;                        // depth the blocks were taken at
};

namespace detail {
inline std::vector<int> kernel_ids(const std::vector<int>& table) {
    std::vector<int> ids(table.size(), -1);
    std::unordered_map<int, int> seen;
    int next = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto [it, fresh] = seen.emplace(table[i], next);
        if (fresh) ++next;
        ids[i] = it->second;
    }
    return ids;
}
} // namespace detail

/// Kernel of the depth-n behaviour map. Consecutive kernels refine, and
/// once two agree they agree forever, so the iteration stops early at
/// stabilization; the partition is unchanged past that depth.
inline Partition behavioural_partition(const Coalgebra& c, int n, const Limits& lim = {}) {
    if (n < 0) throw Error("behaviour depth must be >= 0");
    detail::SequenceBuilder b(c.functor(), c.env(), lim);
    Partition out;
    std::vector<int> prev(static_cast<std::size_t>(c.carrier().size()), 0); // kernel of b_0
    std::vector<ContMap> maps;
    maps.push_back(ContMap::constant(c.carrier(), FinSpace::point(), 0));
    int reached = 0;
    for (int k = 1; k <= n; ++k) {
        b.extend_to(k);
        std::vector<int> t =
            c.applied().act(*b.applieds[static_cast<std::size_t>(k - 1)], maps.back().table());
        std::vector<int> bk(static_cast<std::size_t>(c.carrier().size()));
        for (int x = 0; x < c.carrier().size(); ++x)
            bk[static_cast<std::size_t>(x)] = t[static_cast<std::size_t>(c.structure(x))];
        maps.push_back(ContMap(c.carrier(), b.seq.levels[static_cast<std::size_t>(k)], bk, false));
        std::vector<int> cur = detail::kernel_ids(bk);
        reached = k;
        if (cur == prev) {
            out.stabilized_at = k - 1;
            break;
        }
        prev = std::move(cur);
    }
    out.depth = out.stabilized_at ? *out.stabilized_at : reached;
    std::vector<std::vector<int>> blocks;
    std::unordered_map<int, std::size_t> where;
    for (std::size_t i = 0; i < prev.size(); ++i) {
        auto [it, fresh] = where.emplace(prev[i], blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(static_cast<int>(i));
    }
    out.blocks = std::move(blocks);
    return out;
}

// ---------------------------------------------------------------------------
// Largest subcoalgebras, equalizers
// ---------------------------------------------------------------------------

struct SubcoalgResult {
    Coalgebra sub;
    CoalgHom embedding;
    Bitset carrier_set;
};

/// Greatest fixpoint of S_{k+1} = { x in S_k | c(x) lies in the image of
/// F(S_k -> X) }; the result is the largest subset of S carrying a
/// subcoalgebra with the subspace topology, and the inclusion is a
/// coalgebra homomorphism.
inline SubcoalgResult largest_subcoalgebra(const Coalgebra& c, Bitset s) {
    const FinSpace& x = c.carrier();
    if (s.universe() != static_cast<std::size_t>(x.size()))
        throw Error("subset over the wrong carrier");
    Subspace w = subspace(x, s);
    Applied aw = apply_functor(c.functor(), w.space, c.env(), c.limits());
    std::unordered_map<int, int> into; // F(X) point -> F(W) point, on the image
    while (true) {
        std::vector<int> fe = aw.act(c.applied(), w.embed.table());
        into.clear();
        for (std::size_t k = 0; k < fe.size(); ++k) into.emplace(fe[k], static_cast<int>(k));
        Bitset next(s.universe());
        for (int i : s.elements())
            if (into.count(c.structure(i))) next.set(static_cast<std::size_t>(i));
        if (next == s) break;
        s = std::move(next);
        w = subspace(x, s);
        aw = apply_functor(c.functor(), w.space, c.env(), c.limits());
    }
    std::vector<int> structure(static_cast<std::size_t>(w.space.size()));
    for (int j = 0; j < w.space.size(); ++j)
        structure[static_cast<std::size_t>(j)] = into.at(c.structure(w.embed(j)));
    Coalgebra sub(c.functor(), c.env(), w.space, std::move(structure), c.limits());
    return SubcoalgResult{sub, CoalgHom{sub, c, w.embed}, s};
}

/// Equalizer in CoAlg(F): the Top-equalizer of the point maps, then the
/// largest subcoalgebra it contains.
inline SubcoalgResult coalg_equalizer(const CoalgHom& h1, const CoalgHom& h2) {
    if (h1.src != h2.src || h1.dst != h2.dst)
        throw NotParallel("coalgebra equalizer of a non-parallel pair");
    Bitset agree(static_cast<std::size_t>(h1.src.carrier().size()));
    for (int i = 0; i < h1.src.carrier().size(); ++i)
        if (h1.map(i) == h2.map(i)) agree.set(static_cast<std::size_t>(i));
    return largest_subcoalgebra(h1.src, agree);
}

// ---------------------------------------------------------------------------
// Subfunctor inclusions, the induced functor and the coreflection
// ---------------------------------------------------------------------------

/// A mono natural transformation sigma: F -> G between shipped functors;
/// concretely the inclusion of a compact-Vietoris subfunctor variant.
struct SubfunctorInclusion {
    VietorisVariant from = VietorisVariant::CompactNonempty;
    FunctorPtr src_functor;
    FunctorPtr dst_functor;
    bool mono = true;
    std::string name;

    ContMap component(const FinSpace& x, const Limits& lim = {}) const {
        Hyperspace sub = make_hyperspace(x, from, lim);
        Hyperspace compact = make_hyperspace(x, VietorisVariant::Compact, lim);
        return variant_inclusion(sub, compact);
    }
};

inline SubfunctorInclusion sigma_nonempty() {
    return SubfunctorInclusion{VietorisVariant::CompactNonempty,
                               FunctorExpr::leaf(FKind::VCompactNonempty),
                               FunctorExpr::leaf(FKind::VCompact), true, "v+"};
}

inline SubfunctorInclusion sigma_connected() {
    return SubfunctorInclusion{VietorisVariant::CompactConnected,
                               FunctorExpr::leaf(FKind::VCompactConnected),
                               FunctorExpr::leaf(FKind::VCompact), true, "vc"};
}

/// I(X, c) = (X, sigma_X . c); homomorphisms are carried over verbatim.
inline Coalgebra induced_functor_I(const SubfunctorInclusion& sigma, const Coalgebra& c) {
    if (!functor_equal(*c.functor(), *sigma.src_functor))
        throw ComponentUndefined("induced functor applied to a coalgebra of the wrong functor");
    ContMap inc = sigma.component(c.carrier(), c.limits());
    std::vector<int> structure(static_cast<std::size_t>(c.carrier().size()));
    for (int i = 0; i < c.carrier().size(); ++i)
        structure[static_cast<std::size_t>(i)] = inc(c.structure(i));
    return Coalgebra(sigma.dst_functor, c.env(), c.carrier(), std::move(structure), c.limits());
}

/// Elementwise pullback test of the naturality square of sigma at an
/// embedding m: unique fill-ins for every agreeing pair, plus
/// order-reflection of the induced comparison map.
inline bool taut_check(const SubfunctorInclusion& sigma, const ContMap& m, const Limits& lim = {}) {
    if (!m.is_embedding()) throw ComponentUndefined("taut_check expects a subspace embedding");
    Hyperspace fdomH = make_hyperspace(m.dom(), sigma.from, lim);
    Hyperspace fcodH = make_hyperspace(m.cod(), sigma.from, lim);
    Hyperspace gdomH = make_hyperspace(m.dom(), VietorisVariant::Compact, lim);
    Hyperspace gcodH = make_hyperspace(m.cod(), VietorisVariant::Compact, lim);
    ContMap fm = hyperspace_map(fdomH, fcodH, m);
    ContMap gm = hyperspace_map(gdomH, gcodH, m);
    ContMap sdom = variant_inclusion(fdomH, gdomH);
    ContMap scod = variant_inclusion(fcodH, gcodH);
    // commutation of the square
    for (int k = 0; k < fdomH.space.size(); ++k)
        if (scod(fm(k)) != gm(sdom(k))) return false;
    // pullback condition, elementwise
    for (int a = 0; a < fcodH.space.size(); ++a)
        for (int b = 0; b < gdomH.space.size(); ++b) {
            if (scod(a) != gm(b)) continue;
            int found = -1, count = 0;
            for (int x = 0; x < fdomH.space.size(); ++x)
                if (fm(x) == a && sdom(x) == b) {
                    found = x;
                    ++count;
                }
            (void)found;
            if (count != 1) return false;
        }
    // initiality of the comparison map <F m, sigma_dom>
    for (int x = 0; x < fdomH.space.size(); ++x)
        for (int y = 0; y < fdomH.space.size(); ++y) {
            bool below = fcodH.space.leq(fm(x), fm(y)) && gdomH.space.leq(sdom(x), sdom(y));
            if (below && !fdomH.space.leq(x, y)) return false;
        }
    return true;
}

struct CoreflectResult {
    Coalgebra fcoalg;    // the coreflection, a coalgebra of sigma's source functor
    Coalgebra g_sub;     // the same carrier viewed as a G-subcoalgebra of the input
    CoalgHom counit;     // embedding I(fcoalg) -> (Y, d), a G-homomorphism
    Bitset carrier_set;  // as a subset of the input carrier
};

/// Coreflection of a G-coalgebra along a mono, taut sigma: pull the
/// structure back along sigma where possible (the pullback set S), take
/// the largest subcoalgebra inside S, then re-read the structure through
/// the inverse of sigma's component.
inline CoreflectResult coreflect(const SubfunctorInclusion& sigma, const Coalgebra& g) {
    if (!sigma.mono) throw NotMono("coreflection requires a mono natural transformation");
    if (!functor_equal(*g.functor(), *sigma.dst_functor))
        throw ComponentUndefined("coreflect applied to a coalgebra of the wrong functor");
    const Hyperspace* gh = g.applied().hyperspace();
    if (!gh) throw ComponentUndefined("coreflect expects a Vietoris-leaf coalgebra");
    Hyperspace varY = make_hyperspace(g.carrier(), sigma.from, g.limits());
    Bitset s(static_cast<std::size_t>(g.carrier().size()));
    for (int y = 0; y < g.carrier().size(); ++y)
        if (varY.index_of(gh->subsets[static_cast<std::size_t>(g.structure(y))]) >= 0)
            s.set(static_cast<std::size_t>(y));
    SubcoalgResult inner = largest_subcoalgebra(g, s);

    const Hyperspace* subH = inner.sub.applied().hyperspace();
    Hyperspace varW = make_hyperspace(inner.sub.carrier(), sigma.from, g.limits());
    std::vector<int> fstruct(static_cast<std::size_t>(inner.sub.carrier().size()));
    for (int w = 0; w < inner.sub.carrier().size(); ++w) {
        const Bitset& val = subH->subsets[static_cast<std::size_t>(inner.sub.structure(w))];
        int idx = varW.index_of(val);
        if (idx < 0)
            throw Error("structure value escapes the subfunctor; sigma is not taut here");
        fstruct[static_cast<std::size_t>(w)] = idx;
    }
    Coalgebra fcoalg(sigma.src_functor, g.env(), inner.sub.carrier(), std::move(fstruct),
                     g.limits());
    CoalgHom counit{induced_functor_I(sigma, fcoalg), g, inner.embedding.map};
    return CoreflectResult{fcoalg, inner.sub, counit, inner.carrier_set};
}

} // namespace vcoalg

#endif
