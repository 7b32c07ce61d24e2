#ifndef VCOALG_FINSPACE_HPP
#define VCOALG_FINSPACE_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vcoalg/bitset.hpp"
#include "vcoalg/errors.hpp"

namespace vcoalg {

/// Size budget for space-producing operations. Hyperspace and functor
/// application exponentiate, so constructions fail hard once a result
/// would exceed max_points. 16 is the default ingestion cap; callers
/// that knowingly build large intermediate spaces pass a bigger budget.
struct Limits {
    std::size_t max_points = 16;
};

/// Absolute bound on the carrier of any FinSpace; the preorder is stored
/// as a dense n*n matrix, so this caps memory at a few MB.
inline constexpr std::size_t kHardMaxPoints = 4096;

namespace detail {
struct SpaceData {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::vector<bool> leq; // row-major: leq[i*n+j] == (i <= j)
};
} // namespace detail

/// A finite topological space, stored as its specialization preorder
/// (x <= y iff every open containing x contains y). Finite spaces are
/// Alexandrov, so the preorder is a lossless encoding: the opens are
/// exactly the up-sets, closure is down-closure, and continuity of point
/// maps is monotonicity. Immutable; copies share storage.
class FinSpace {
public:
    /// The empty space.
    FinSpace() : d_(std::make_shared<detail::SpaceData>()) {}

    /// Build from point names and the full preorder matrix. Validates the
    /// preorder axioms (reflexivity and transitivity) and name uniqueness.
    FinSpace(std::vector<std::string> names, std::vector<bool> leq) {
        const std::size_t n = names.size();
        if (n > kHardMaxPoints)
            throw SizeCapExceeded("space exceeds the hard point bound", n, kHardMaxPoints);
        if (leq.size() != n * n) throw Error("leq matrix has wrong shape");
        auto d = std::make_shared<detail::SpaceData>();
        d->names = std::move(names);
        for (std::size_t i = 0; i < n; ++i) {
            if (!d->index.emplace(d->names[i], static_cast<int>(i)).second)
                throw Error("duplicate point name: " + d->names[i]);
        }
        d->leq = std::move(leq);
        for (std::size_t i = 0; i < n; ++i)
            if (!d->leq[i * n + i])
                throw Error("preorder not reflexive at " + d->names[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d->leq[i * n + j])
                    for (std::size_t k = 0; k < n; ++k)
                        if (d->leq[j * n + k] && !d->leq[i * n + k])
                            throw Error("preorder not transitive via " + d->names[j]);
        d_ = std::move(d);
    }

    /// Build from generator pairs (x <= y); takes the reflexive-transitive
    /// closure, so any relation is accepted.
    static FinSpace from_leq_pairs(std::vector<std::string> names,
                                   const std::vector<std::pair<std::string, std::string>>& pairs) {
        const std::size_t n = names.size();
        std::unordered_map<std::string, int> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (!idx.emplace(names[i], static_cast<int>(i)).second)
                throw Error("duplicate point name: " + names[i]);
        std::vector<bool> m(n * n, false);
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] = true;
        for (const auto& [a, b] : pairs) {
            auto ia = idx.find(a), ib = idx.find(b);
            if (ia == idx.end()) throw Error("unknown point in leq: " + a);
            if (ib == idx.end()) throw Error("unknown point in leq: " + b);
            m[static_cast<std::size_t>(ia->second) * n + static_cast<std::size_t>(ib->second)] = true;
        }
        // Floyd-Warshall closure.
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (m[i * n + k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (m[k * n + j]) m[i * n + j] = true;
        return FinSpace(std::move(names), std::move(m));
    }

    static FinSpace discrete(std::vector<std::string> names) {
        const std::size_t n = names.size();
        std::vector<bool> m(n * n, false);
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] = true;
        return FinSpace(std::move(names), std::move(m));
    }

    static FinSpace indiscrete(std::vector<std::string> names) {
        const std::size_t n = names.size();
        return FinSpace(std::move(names), std::vector<bool>(n * n, true));
    }

    /// Chain p0 <= p1 <= ... <= p(k-1).
    static FinSpace chain(std::vector<std::string> names) {
        const std::size_t n = names.size();
        std::vector<bool> m(n * n, false);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m[i * n + j] = true;
        return FinSpace(std::move(names), std::move(m));
    }

    /// Sierpinski space: 0 <= 1, the open point being "1".
    static FinSpace sierpinski() { return chain({"0", "1"}); }

    /// The terminal space.
    static FinSpace point() { return discrete({"*"}); }

    int size() const { return static_cast<int>(d_->names.size()); }
    const std::string& name(int i) const { return d_->names[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return d_->names; }

    int index_of(const std::string& name) const {
        auto it = d_->index.find(name);
        return it == d_->index.end() ? -1 : it->second;
    }

    bool leq(int i, int j) const {
        return d_->leq[static_cast<std::size_t>(i) * d_->names.size() + static_cast<std::size_t>(j)];
    }

    /// Minimal open neighbourhood of i: all j with i <= j.
    Bitset up(int i) const {
        Bitset b(static_cast<std::size_t>(size()));
        for (int j = 0; j < size(); ++j)
            if (leq(i, j)) b.set(static_cast<std::size_t>(j));
        return b;
    }

    /// Point closure of i: all j with j <= i.
    Bitset down(int i) const {
        Bitset b(static_cast<std::size_t>(size()));
        for (int j = 0; j < size(); ++j)
            if (leq(j, i)) b.set(static_cast<std::size_t>(j));
        return b;
    }

    bool is_open(const Bitset& s) const {
        assert(s.universe() == static_cast<std::size_t>(size()));
        for (int i = 0; i < size(); ++i)
            if (s.test(static_cast<std::size_t>(i)) && !up(i).is_subset_of(s)) return false;
        return true;
    }

    bool is_closed(const Bitset& s) const { return is_open(s.complement()); }

    /// Down-closure of a subset.
    Bitset closure(const Bitset& s) const {
        Bitset b(static_cast<std::size_t>(size()));
        for (int i = 0; i < size(); ++i)
            if (s.test(static_cast<std::size_t>(i))) b |= down(i);
        return b;
    }

    /// Up-closure (saturation) of a subset.
    Bitset saturation(const Bitset& s) const {
        Bitset b(static_cast<std::size_t>(size()));
        for (int i = 0; i < size(); ++i)
            if (s.test(static_cast<std::size_t>(i))) b |= up(i);
        return b;
    }

    /// Subspace connectedness: nonempty and the comparability graph
    /// restricted to s is connected (clopen pieces of a finite subspace
    /// are unions of comparability components).
    bool is_connected(const Bitset& s) const {
        auto elems = s.elements();
        if (elems.empty()) return false;
        std::vector<int> comp(elems.size(), -1);
        std::vector<std::size_t> stack{0};
        comp[0] = 0;
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < elems.size(); ++b) {
                if (comp[b] != -1) continue;
                if (leq(elems[a], elems[b]) || leq(elems[b], elems[a])) {
                    comp[b] = 0;
                    stack.push_back(b);
                }
            }
        }
        return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
    }

    /// All opens (up-sets), in ascending characteristic-vector order.
    /// Enumerates the full powerset, so only usable on small spaces.
    std::vector<Bitset> opens() const {
        if (size() > 24)
            throw SizeCapExceeded("open-set enumeration on a space this large",
                                  static_cast<std::size_t>(size()), 24);
        std::vector<Bitset> out;
        const std::uint64_t total = std::uint64_t{1} << size();
        for (std::uint64_t m = 0; m < total; ++m) {
            Bitset s = Bitset::from_mask(static_cast<std::size_t>(size()), m);
            if (is_open(s)) out.push_back(std::move(s));
        }
        return out;
    }

    /// All down-closed subsets, ascending.
    std::vector<Bitset> down_sets() const {
        if (size() > 24)
            throw SizeCapExceeded("down-set enumeration on a space this large",
                                  static_cast<std::size_t>(size()), 24);
        std::vector<Bitset> out;
        const std::uint64_t total = std::uint64_t{1} << size();
        for (std::uint64_t m = 0; m < total; ++m) {
            Bitset s = Bitset::from_mask(static_cast<std::size_t>(size()), m);
            if (is_closed(s)) out.push_back(std::move(s));
        }
        return out;
    }

    /// All subsets, ascending.
    std::vector<Bitset> all_subsets() const {
        if (size() > 24)
            throw SizeCapExceeded("powerset enumeration on a space this large",
                                  static_cast<std::size_t>(size()), 24);
        std::vector<Bitset> out;
        const std::uint64_t total = std::uint64_t{1} << size();
        for (std::uint64_t m = 0; m < total; ++m)
            out.push_back(Bitset::from_mask(static_cast<std::size_t>(size()), m));
        return out;
    }

    bool is_t0() const {
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (i != j && leq(i, j) && leq(j, i)) return false;
        return true;
    }

    bool is_discrete() const {
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (i != j && leq(i, j)) return false;
        return true;
    }

    /// Structural equality: same names in the same order, same preorder.
    friend bool operator==(const FinSpace& a, const FinSpace& b) {
        return a.d_ == b.d_ || (a.d_->names == b.d_->names && a.d_->leq == b.d_->leq);
    }
    friend bool operator!=(const FinSpace& a, const FinSpace& b) { return !(a == b); }

private:
    std::shared_ptr<const detail::SpaceData> d_;
};

struct SeparationReport {
    bool is_t0 = false;
    bool is_t2 = false;
    bool is_discrete = false;
    bool is_stably_compact_finite = false;
};

/// T2 for finite spaces is discreteness; stable compactness reduces to T0
/// (a finite space is compact, locally compact and well-filtered outright,
/// and finite intersections of compacts are compact).
inline SeparationReport separation(const FinSpace& x) {
    SeparationReport r;
    r.is_t0 = x.is_t0();
    r.is_discrete = x.is_discrete();
    r.is_t2 = r.is_discrete;
    r.is_stably_compact_finite = r.is_t0;
    return r;
}

/// Topology generated by a subbasis: x <= y iff every subbasic set
/// containing x contains y (equivalently y lies in the minimal
/// neighbourhood of x).
inline FinSpace generate_topology(std::vector<std::string> points,
                                  const std::vector<Bitset>& subbasis,
                                  const Limits& lim = {}) {
    const std::size_t n = points.size();
    if (n > lim.max_points)
        throw SizeCapExceeded("generate_topology point set exceeds the cap", n, lim.max_points);
    std::vector<bool> m(n * n, true);
    for (const auto& s : subbasis) {
        if (s.universe() != n) throw Error("subbasic set over the wrong universe");
        for (std::size_t i = 0; i < n; ++i) {
            if (!s.test(i)) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!s.test(j)) m[i * n + j] = false;
        }
    }
    return FinSpace(std::move(points), std::move(m));
}

/// Validate an explicitly listed open family and return the space it
/// determines. The family must contain the empty set and the whole point
/// set and be closed under binary union and intersection (for a finite
/// family this is full closure). Throws NotATopology with a witness pair.
inline FinSpace space_from_opens(std::vector<std::string> points,
                                 const std::vector<Bitset>& opens,
                                 const Limits& lim = {}) {
    const std::size_t n = points.size();
    if (n > lim.max_points)
        throw SizeCapExceeded("space_from_opens point set exceeds the cap", n, lim.max_points);
    auto show = [&](const Bitset& s) {
        std::string out = "{";
        bool first = true;
        for (int i : s.elements()) {
            if (!first) out += ",";
            out += points[static_cast<std::size_t>(i)];
            first = false;
        }
        return out + "}";
    };
    std::vector<Bitset> fam = opens;
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    auto contains = [&](const Bitset& s) {
        return std::binary_search(fam.begin(), fam.end(), s);
    };
    for (const auto& s : fam)
        if (s.universe() != n) throw Error("open set over the wrong universe");
    if (!contains(Bitset(n)))
        throw NotATopology("open family does not contain the empty set", "{}", "{}");
    if (!contains(Bitset::full(n)))
        throw NotATopology("open family does not contain the whole point set",
                           show(Bitset::full(n)), show(Bitset::full(n)));
    for (const auto& a : fam)
        for (const auto& b : fam) {
            if (!contains(a | b))
                throw NotATopology("open family not closed under union of " + show(a) + " and " + show(b),
                                   show(a), show(b));
            if (!contains(a & b))
                throw NotATopology("open family not closed under intersection of " + show(a) + " and " + show(b),
                                   show(a), show(b));
        }
    return generate_topology(std::move(points), fam, lim);
}

/// A point function between finite spaces; continuity (= monotonicity)
/// is validated at construction unless explicitly deferred.
class ContMap {
public:
    ContMap() = default;

    ContMap(FinSpace dom, FinSpace cod, std::vector<int> map, bool require_continuous = true)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
        if (map_.size() != static_cast<std::size_t>(dom_.size()))
            throw Error("map is not total on the domain");
        for (int v : map_)
            if (v < 0 || v >= cod_.size()) throw Error("map value out of range");
        if (require_continuous && !is_monotone())
            throw Error("map is not continuous (not monotone)");
    }

    static ContMap identity(const FinSpace& x) {
        std::vector<int> m(static_cast<std::size_t>(x.size()));
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<int>(i);
        return ContMap(x, x, std::move(m));
    }

    static ContMap constant(const FinSpace& dom, const FinSpace& cod, int value) {
        return ContMap(dom, cod, std::vector<int>(static_cast<std::size_t>(dom.size()), value));
    }

    const FinSpace& dom() const { return dom_; }
    const FinSpace& cod() const { return cod_; }
    int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& table() const { return map_; }

    bool is_monotone() const {
        for (int i = 0; i < dom_.size(); ++i)
            for (int j = 0; j < dom_.size(); ++j)
                if (dom_.leq(i, j) && !cod_.leq((*this)(i), (*this)(j))) return false;
        return true;
    }

    /// A pair witnessing non-monotonicity, if any. The preimage of the
    /// minimal open around f(second) then fails to be open.
    std::optional<std::pair<int, int>> monotonicity_witness() const {
        for (int i = 0; i < dom_.size(); ++i)
            for (int j = 0; j < dom_.size(); ++j)
                if (dom_.leq(i, j) && !cod_.leq((*this)(i), (*this)(j)))
                    return std::make_pair(i, j);
        return std::nullopt;
    }

    /// The open-preimage continuity test; agrees with is_monotone on
    /// finite spaces (both are implemented so tests can cross-check).
    bool preimages_of_opens_open() const {
        for (const auto& u : cod_.opens())
            if (!dom_.is_open(preimage(u))) return false;
        return true;
    }

    Bitset image(const Bitset& s) const {
        assert(s.universe() == static_cast<std::size_t>(dom_.size()));
        Bitset b(static_cast<std::size_t>(cod_.size()));
        for (int i : s.elements()) b.set(static_cast<std::size_t>((*this)(i)));
        return b;
    }

    Bitset preimage(const Bitset& s) const {
        assert(s.universe() == static_cast<std::size_t>(cod_.size()));
        Bitset b(static_cast<std::size_t>(dom_.size()));
        for (int i = 0; i < dom_.size(); ++i)
            if (s.test(static_cast<std::size_t>((*this)(i)))) b.set(static_cast<std::size_t>(i));
        return b;
    }

    bool is_injective() const {
        std::vector<bool> seen(static_cast<std::size_t>(cod_.size()), false);
        for (int v : map_) {
            if (seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        return true;
    }

    bool is_surjective() const {
        std::vector<bool> seen(static_cast<std::size_t>(cod_.size()), false);
        for (int v : map_) seen[static_cast<std::size_t>(v)] = true;
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    /// Subspace embedding: injective and order-reflecting.
    bool is_embedding() const {
        if (!is_injective() || !is_monotone()) return false;
        for (int i = 0; i < dom_.size(); ++i)
            for (int j = 0; j < dom_.size(); ++j)
                if (cod_.leq((*this)(i), (*this)(j)) && !dom_.leq(i, j)) return false;
        return true;
    }

    bool is_iso() const { return is_embedding() && is_surjective(); }

    friend ContMap compose(const ContMap& g, const ContMap& f) {
        if (f.cod() != g.dom()) throw Error("compose: domain/codomain mismatch");
        std::vector<int> m(f.map_.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = g.map_[static_cast<std::size_t>(f.map_[i])];
        return ContMap(f.dom_, g.cod_, std::move(m), false);
    }

    ContMap inverse() const {
        if (!is_iso()) throw Error("inverse of a non-isomorphism");
        std::vector<int> m(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i)
            m[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
        return ContMap(cod_, dom_, std::move(m), false);
    }

    friend bool operator==(const ContMap& a, const ContMap& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.map_ == b.map_;
    }

private:
    FinSpace dom_, cod_;
    std::vector<int> map_;
};

inline bool is_continuous(const ContMap& f) { return f.is_monotone(); }

struct ProductSpace {
    FinSpace space;
    ContMap pi1, pi2;
    int n2 = 0; // pair (i,j) sits at index i*n2+j

    int pair_index(int i, int j) const { return i * n2 + j; }
};

/// Binary product: pairs ordered componentwise, points named "(x,y)" in
/// lexicographic (first-factor-major) order.
inline ProductSpace product(const FinSpace& x, const FinSpace& y) {
    const int nx = x.size(), ny = y.size();
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(nx * ny));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) names.push_back("(" + x.name(i) + "," + y.name(j) + ")");
    const std::size_t n = names.size();
    std::vector<bool> m(n * n, false);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nx; ++k)
                for (int l = 0; l < ny; ++l)
                    if (x.leq(i, k) && y.leq(j, l))
                        m[static_cast<std::size_t>(i * ny + j) * n +
                          static_cast<std::size_t>(k * ny + l)] = true;
    FinSpace p(std::move(names), std::move(m));
    std::vector<int> t1(n), t2(n);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            t1[static_cast<std::size_t>(i * ny + j)] = i;
            t2[static_cast<std::size_t>(i * ny + j)] = j;
        }
    ProductSpace out{p, ContMap(p, x, std::move(t1), false), ContMap(p, y, std::move(t2), false), ny};
    return out;
}

struct CoproductSpace {
    FinSpace space;
    ContMap in1, in2;
    int n1 = 0; // left points at 0..n1-1, right points shifted by n1
};

/// Binary coproduct: disjoint union of points and preorders; points named
/// "inl(x)" / "inr(y)". Both injections are open embeddings.
inline CoproductSpace coproduct(const FinSpace& x, const FinSpace& y) {
    const int nx = x.size(), ny = y.size();
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(nx + ny));
    for (int i = 0; i < nx; ++i) names.push_back("inl(" + x.name(i) + ")");
    for (int j = 0; j < ny; ++j) names.push_back("inr(" + y.name(j) + ")");
    const std::size_t n = names.size();
    std::vector<bool> m(n * n, false);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j)
            if (x.leq(i, j)) m[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = true;
    for (int i = 0; i < ny; ++i)
        for (int j = 0; j < ny; ++j)
            if (y.leq(i, j))
                m[static_cast<std::size_t>(nx + i) * n + static_cast<std::size_t>(nx + j)] = true;
    FinSpace s(std::move(names), std::move(m));
    std::vector<int> t1(static_cast<std::size_t>(nx)), t2(static_cast<std::size_t>(ny));
    for (int i = 0; i < nx; ++i) t1[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < ny; ++j) t2[static_cast<std::size_t>(j)] = nx + j;
    return CoproductSpace{s, ContMap(x, s, std::move(t1), false), ContMap(y, s, std::move(t2), false), nx};
}

/// Subspace on a subset, with the restricted preorder; returns the space
/// and the (initial, mono) inclusion.
struct Subspace {
    FinSpace space;
    ContMap embed;
};

inline Subspace subspace(const FinSpace& x, const Bitset& carrier) {
    auto elems = carrier.elements();
    std::vector<std::string> names;
    names.reserve(elems.size());
    for (int i : elems) names.push_back(x.name(i));
    const std::size_t n = elems.size();
    std::vector<bool> m(n * n, false);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (x.leq(elems[a], elems[b])) m[a * n + b] = true;
    FinSpace s(std::move(names), std::move(m));
    std::vector<int> t(elems.begin(), elems.end());
    return Subspace{s, ContMap(s, x, std::move(t), false)};
}

/// Equalizer of a parallel pair: the subspace where f and g agree.
inline Subspace equalizer(const ContMap& f, const ContMap& g) {
    if (f.dom() != g.dom() || f.cod() != g.cod())
        throw NotParallel("equalizer of a non-parallel pair");
    Bitset car(static_cast<std::size_t>(f.dom().size()));
    for (int i = 0; i < f.dom().size(); ++i)
        if (f(i) == g(i)) car.set(static_cast<std::size_t>(i));
    return subspace(f.dom(), car);
}

/// A cone leg for initial_topology: a bare point function into a space
/// (continuity is what the initial topology will create).
struct SetMapLeg {
    FinSpace cod;
    std::vector<int> map;
};

/// Initial topology of a cone of set-maps: generated by preimages of the
/// codomains' opens. Minimal neighbourhoods form a basis of each finite
/// codomain, so their preimages suffice as the subbasis.
inline FinSpace initial_topology(std::vector<std::string> points,
                                 const std::vector<SetMapLeg>& cone,
                                 const Limits& lim = {}) {
    const std::size_t n = points.size();
    std::vector<Bitset> subbasis;
    for (const auto& leg : cone) {
        if (leg.map.size() != n) throw Error("cone leg is not total on the point set");
        for (int y = 0; y < leg.cod.size(); ++y) {
            Bitset u = leg.cod.up(y);
            Bitset pre(n);
            for (std::size_t i = 0; i < n; ++i)
                if (u.test(static_cast<std::size_t>(leg.map[i]))) pre.set(i);
            subbasis.push_back(std::move(pre));
        }
    }
    return generate_topology(std::move(points), subbasis, lim);
}

/// All continuous (= monotone) maps X -> Y, in lexicographic table order.
/// Exponential; intended for exhaustive checks on small spaces.
inline std::vector<ContMap> enumerate_continuous_maps(const FinSpace& x, const FinSpace& y) {
    std::vector<ContMap> out;
    const int nx = x.size(), ny = y.size();
    if (nx == 0) {
        out.push_back(ContMap(x, y, {}, false));
        return out;
    }
    if (ny == 0) return out; // no maps from a nonempty space into the empty one
    double total = 1;
    for (int i = 0; i < nx; ++i) total *= ny;
    if (total > 2e6) throw SizeCapExceeded("map enumeration too large", static_cast<std::size_t>(total), 2000000);
    std::vector<int> t(static_cast<std::size_t>(nx), 0);
    while (true) {
        ContMap f(x, y, t, false);
        if (f.is_monotone()) out.push_back(f);
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

/// Patch topology of a finite T0 space: generated by the opens together
/// with complements of saturated (= up-closed) sets. On a finite T0 space
/// the result is discrete, which is asserted.
inline FinSpace patch_topology(const FinSpace& x, const Limits& lim = {}) {
    if (!x.is_t0()) throw NotT0("patch topology requires a T0 space");
    std::vector<Bitset> subbasis;
    for (int i = 0; i < x.size(); ++i) {
        subbasis.push_back(x.up(i));
        subbasis.push_back(x.up(i).complement()); // complement of a compact saturated set
    }
    Limits l = lim;
    l.max_points = std::max<std::size_t>(l.max_points, static_cast<std::size_t>(x.size()));
    FinSpace p = generate_topology(x.names(), subbasis, l);
    if (!p.is_discrete()) throw Error("patch topology of a finite T0 space must be discrete");
    return p;
}

} // namespace vcoalg

#endif
