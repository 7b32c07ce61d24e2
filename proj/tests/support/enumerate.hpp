#ifndef VCOALG_TESTS_ENUMERATE_HPP
#define VCOALG_TESTS_ENUMERATE_HPP

// Shared test utilities: exhaustive enumeration of small finite spaces and
// maps, seeded random generators, and brute-force oracles that deliberately
// avoid the library's fixpoint code paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "vcoalg/apply.hpp"
#include "vcoalg/coalg.hpp"
#include "vcoalg/finspace.hpp"
#include "vcoalg/vietoris.hpp"

namespace vctest {

using namespace vcoalg;

inline std::vector<std::string> default_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    return names;
}

/// All preorders on n labeled points (reflexive-transitive relations).
inline std::vector<FinSpace> all_preorders(int n) {
    std::vector<FinSpace> out;
    const int offdiag = n * (n - 1);
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) cells.emplace_back(i, j);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << offdiag); ++m) {
        std::vector<bool> leq(static_cast<std::size_t>(n * n), false);
        for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i * n + i)] = true;
        for (int c = 0; c < offdiag; ++c)
            if ((m >> c) & 1u)
                leq[static_cast<std::size_t>(cells[static_cast<std::size_t>(c)].first * n +
                                             cells[static_cast<std::size_t>(c)].second)] = true;
        bool trans = true;
        for (int i = 0; i < n && trans; ++i)
            for (int j = 0; j < n && trans; ++j)
                if (leq[static_cast<std::size_t>(i * n + j)])
                    for (int k = 0; k < n; ++k)
                        if (leq[static_cast<std::size_t>(j * n + k)] &&
                            !leq[static_cast<std::size_t>(i * n + k)]) {
                            trans = false;
                            break;
                        }
        if (trans) out.push_back(FinSpace(default_names(n), std::move(leq)));
    }
    return out;
}

inline std::string canonical_form(const FinSpace& x) {
    const int n = x.size();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string s;
        s.reserve(static_cast<std::size_t>(n * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s += x.leq(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) ? '1' : '0';
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// One representative per homeomorphism class of spaces with exactly n points.
inline std::vector<FinSpace> preorder_classes(int n) {
    if (n == 0) return {FinSpace()};
    std::map<std::string, FinSpace> reps;
    for (auto& x : all_preorders(n)) reps.emplace(canonical_form(x), x);
    std::vector<FinSpace> out;
    for (auto& [k, v] : reps) out.push_back(v);
    return out;
}

/// Representatives of every class with 0..max_n points (empty space included).
inline std::vector<FinSpace> spaces_up_to(int max_n, bool include_empty = true) {
    std::vector<FinSpace> out;
    for (int n = include_empty ? 0 : 1; n <= max_n; ++n)
        for (auto& x : preorder_classes(n)) out.push_back(std::move(x));
    return out;
}

/// All total functions dom -> cod as tables (not necessarily continuous).
inline std::vector<std::vector<int>> all_functions(int nx, int ny) {
    std::vector<std::vector<int>> out;
    if (nx == 0) {
        out.push_back({});
        return out;
    }
    if (ny == 0) return out;
    std::vector<int> t(static_cast<std::size_t>(nx), 0);
    while (true) {
        out.push_back(t);
        int i = nx - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == ny - 1) {
            t[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++t[static_cast<std::size_t>(i)];
    }
    return out;
}

/// All subspace embeddings dom -> cod.
inline std::vector<ContMap> all_embeddings(const FinSpace& dom, const FinSpace& cod) {
    std::vector<ContMap> out;
    for (const auto& t : all_functions(dom.size(), cod.size())) {
        ContMap f(dom, cod, t, false);
        if (f.is_embedding()) out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seeded deterministic RNG (splitmix64), kept independent of <random> so
// frozen expectations survive standard-library changes.
// ---------------------------------------------------------------------------

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
};

inline FinSpace random_preorder(Rng& rng, int n) {
    std::vector<std::pair<std::string, std::string>> pairs;
    auto names = default_names(n);
    int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    for (int k = 0; k < extra; ++k) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        pairs.emplace_back(names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]);
    }
    return FinSpace::from_leq_pairs(names, pairs);
}

/// Random coalgebra of an arbitrary grammar functor over a random small
/// carrier; retries until the structure map is continuous.
inline Coalgebra random_coalgebra(Rng& rng, const FunctorPtr& f, const Env& env, int max_states,
                                  const Limits& lim) {
    for (;;) {
        int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_states)));
        FinSpace x = rng.below(2) ? FinSpace::discrete(default_names(n)) : random_preorder(rng, n);
        Applied a = apply_functor(f, x, env, lim);
        if (a.space().size() == 0) continue;
        std::vector<int> structure(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            structure[static_cast<std::size_t>(i)] =
                static_cast<int>(rng.below(static_cast<std::uint64_t>(a.space().size())));
        try {
            return Coalgebra(f, env, x, std::move(structure), lim);
        } catch (const Error&) {
            continue; // discontinuous draw; resample
        }
    }
}

/// Random coalgebra of a Vietoris-leaf functor over a random small carrier;
/// retries until the structure map is continuous.
inline Coalgebra random_vleaf_coalgebra(Rng& rng, const FunctorPtr& f, VietorisVariant variant,
                                        int max_states, const Limits& lim) {
    (void)variant;
    return random_coalgebra(rng, f, {}, max_states, lim);
}

// ---------------------------------------------------------------------------
// Brute-force oracles (independent of the library's fixpoint iterations)
// ---------------------------------------------------------------------------

/// Whether the subset T carries a subcoalgebra: every structure value of a
/// T-point lies in the image of F(T -> X).
inline bool carries_subcoalgebra(const Coalgebra& c, const Bitset& t) {
    Subspace w = subspace(c.carrier(), t);
    Applied aw = apply_functor(c.functor(), w.space, c.env(), c.limits());
    std::vector<int> fe = aw.act(c.applied(), w.embed.table());
    for (int i : t.elements()) {
        bool hit = false;
        for (int v : fe)
            if (v == c.structure(i)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

/// Largest subcoalgebra inside S, by direct maximization over all subsets.
inline Bitset brute_force_largest_subcoalgebra(const Coalgebra& c, const Bitset& s) {
    const std::size_t n = s.universe();
    Bitset best(n);
    auto elems = s.elements();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << elems.size()); ++m) {
        Bitset t(n);
        for (std::size_t b = 0; b < elems.size(); ++b)
            if ((m >> b) & 1u) t.set(static_cast<std::size_t>(elems[b]));
        if (t.count() <= best.count() && m != 0) continue;
        if (carries_subcoalgebra(c, t)) best = t;
    }
    return best;
}

/// Largest subset of the carrier of a V-leaf coalgebra that carries a
/// coalgebra of the given subfunctor variant, computed directly on subsets.
inline Bitset brute_force_largest_variant_subcoalgebra(const Coalgebra& g, VietorisVariant variant) {
    const Hyperspace* gh = g.applied().hyperspace();
    const int n = g.carrier().size();
    Bitset best(static_cast<std::size_t>(n));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        Bitset t = Bitset::from_mask(static_cast<std::size_t>(n), m);
        if (t.count() <= best.count() && m != 0) continue;
        bool ok = true;
        for (int y : t.elements()) {
            const Bitset& val = gh->subsets[static_cast<std::size_t>(g.structure(y))];
            if (!val.is_subset_of(t)) {
                ok = false;
                break;
            }
            // the value, read inside the subspace, must be in the variant family
            if (variant == VietorisVariant::CompactNonempty && !val.any()) {
                ok = false;
                break;
            }
            if (variant == VietorisVariant::CompactConnected && !g.carrier().is_connected(val)) {
                ok = false;
                break;
            }
        }
        if (ok) best = t;
    }
    return best;
}

} // namespace vctest

#endif
