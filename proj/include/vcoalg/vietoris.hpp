#ifndef VCOALG_VIETORIS_HPP
#define VCOALG_VIETORIS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "vcoalg/finspace.hpp"

namespace vcoalg {

enum class VietorisVariant { Lower, Compact, CompactNonempty, CompactConnected };

inline const char* variant_name(VietorisVariant v) {
    switch (v) {
    case VietorisVariant::Lower: return "lower";
    case VietorisVariant::Compact: return "compact";
    case VietorisVariant::CompactNonempty: return "compact-nonempty";
    case VietorisVariant::CompactConnected: return "compact-connected";
    }
    return "?";
}

/// Canonical name of a subset: "{a,b,c}" with members in point order.
inline std::string subset_name(const FinSpace& base, const Bitset& s) {
    std::string out = "{";
    bool first = true;
    for (int i : s.elements()) {
        if (!first) out += ",";
        out += base.name(i);
        first = false;
    }
    return out + "}";
}

/// The carrier family of each hyperspace variant, ascending. Every subset
/// of a finite space is compact; the lower variant keeps the closed
/// (= down-closed) subsets; the connected variant drops the empty set
/// (by convention the empty space is not connected).
inline std::vector<Bitset> hyperspace_family(const FinSpace& x, VietorisVariant v) {
    switch (v) {
    case VietorisVariant::Lower: return x.down_sets();
    case VietorisVariant::Compact: return x.all_subsets();
    case VietorisVariant::CompactNonempty: {
        std::vector<Bitset> out;
        for (auto& s : x.all_subsets())
            if (s.any()) out.push_back(std::move(s));
        return out;
    }
    case VietorisVariant::CompactConnected: {
        std::vector<Bitset> out;
        for (auto& s : x.all_subsets())
            if (x.is_connected(s)) out.push_back(std::move(s));
        return out;
    }
    }
    return {};
}

/// Order-theoretic description of the hyperspace preorder at finite scale:
/// inclusion for the lower variant, the Egli-Milner preorder for the
/// compact ones. This shortcut is proven equal to the subbase-generated
/// preorder (hyperspace_by_subbase) exhaustively in the test suite.
inline bool hyperspace_leq(const FinSpace& x, VietorisVariant v, const Bitset& a, const Bitset& b) {
    if (v == VietorisVariant::Lower) return a.is_subset_of(b);
    return a.is_subset_of(x.closure(b)) && b.is_subset_of(x.saturation(a));
}

struct Hyperspace {
    FinSpace base;
    VietorisVariant variant = VietorisVariant::Compact;
    FinSpace space;               // points named by subset_name
    std::vector<Bitset> subsets;  // per point, over base
    std::unordered_map<Bitset, int, Bitset::Hash> index;

    int index_of(const Bitset& s) const {
        auto it = index.find(s);
        return it == index.end() ? -1 : it->second;
    }
};

namespace detail {
inline Hyperspace assemble_hyperspace(const FinSpace& x, VietorisVariant v, FinSpace space,
                                      std::vector<Bitset> family) {
    Hyperspace h;
    h.base = x;
    h.variant = v;
    h.space = std::move(space);
    h.subsets = std::move(family);
    for (std::size_t k = 0; k < h.subsets.size(); ++k)
        h.index.emplace(h.subsets[k], static_cast<int>(k));
    return h;
}

inline void check_hyperspace_feasible(const FinSpace& x, const Limits& lim) {
    if (x.size() > 20)
        throw SizeCapExceeded("hyperspace of a space this large", static_cast<std::size_t>(x.size()), 20);
    (void)lim;
}
} // namespace detail

inline Hyperspace make_hyperspace(const FinSpace& x, VietorisVariant v, const Limits& lim = {}) {
    detail::check_hyperspace_feasible(x, lim);
    std::vector<Bitset> family = hyperspace_family(x, v);
    const std::size_t cap = std::min(lim.max_points, kHardMaxPoints);
    if (family.size() > cap)
        throw SizeCapExceeded("hyperspace exceeds the point cap", family.size(), cap);
    std::vector<std::string> names;
    names.reserve(family.size());
    for (const auto& s : family) names.push_back(subset_name(x, s));
    const std::size_t n = family.size();
    std::vector<bool> m(n * n, false);
    if (v == VietorisVariant::Lower) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (family[i].is_subset_of(family[j])) m[i * n + j] = true;
    } else {
        std::vector<Bitset> cl, sat;
        cl.reserve(n);
        sat.reserve(n);
        for (const auto& s : family) {
            cl.push_back(x.closure(s));
            sat.push_back(x.saturation(s));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (family[i].is_subset_of(cl[j]) && family[j].is_subset_of(sat[i]))
                    m[i * n + j] = true;
    }
    return detail::assemble_hyperspace(x, v, FinSpace(std::move(names), std::move(m)), std::move(family));
}

/// Brute-force oracle: the same carrier family, with the specialization
/// preorder generated from the defining subbasis (hit sets U-diamond for
/// every open U; additionally miss sets U-box for the compact variants).
inline FinSpace hyperspace_by_subbase(const FinSpace& x, VietorisVariant v, const Limits& lim = {}) {
    detail::check_hyperspace_feasible(x, lim);
    std::vector<Bitset> family = hyperspace_family(x, v);
    if (family.size() > lim.max_points)
        throw SizeCapExceeded("hyperspace exceeds the point cap", family.size(), lim.max_points);
    std::vector<std::string> names;
    for (const auto& s : family) names.push_back(subset_name(x, s));
    std::vector<Bitset> subbasis;
    for (const auto& u : x.opens()) {
        Bitset diamond(family.size());
        for (std::size_t k = 0; k < family.size(); ++k)
            if (family[k].intersects(u)) diamond.set(k);
        subbasis.push_back(std::move(diamond));
        if (v != VietorisVariant::Lower) {
            Bitset box(family.size());
            for (std::size_t k = 0; k < family.size(); ++k)
                if (family[k].is_subset_of(u)) box.set(k);
            subbasis.push_back(std::move(box));
        }
    }
    Limits l = lim;
    l.max_points = std::max(l.max_points, family.size());
    return generate_topology(std::move(names), subbasis, l);
}

/// U-diamond: the hyperspace points whose subset hits the open U.
inline Bitset hit(const Hyperspace& h, const Bitset& u) {
    if (!h.base.is_open(u)) throw NotOpen("hit generator requires an open set");
    Bitset out(h.subsets.size());
    for (std::size_t k = 0; k < h.subsets.size(); ++k)
        if (h.subsets[k].intersects(u)) out.set(k);
    return out;
}

/// U-box: the hyperspace points whose subset misses the complement of U.
inline Bitset miss_box(const Hyperspace& h, const Bitset& u) {
    if (!h.base.is_open(u)) throw NotOpen("miss generator requires an open set");
    Bitset out(h.subsets.size());
    for (std::size_t k = 0; k < h.subsets.size(); ++k)
        if (h.subsets[k].is_subset_of(u)) out.set(k);
    return out;
}

/// Raw table of the hyperspace action on a continuous map: direct image
/// for the compact variants, down-closure of the image for the lower one.
inline std::vector<int> hyperspace_map_table(const Hyperspace& a, const Hyperspace& b,
                                             const ContMap& f) {
    if (f.dom() != a.base || f.cod() != b.base)
        throw Error("hyperspace_map: map does not connect the base spaces");
    std::vector<int> table(a.subsets.size());
    for (std::size_t k = 0; k < a.subsets.size(); ++k) {
        Bitset img = f.image(a.subsets[k]);
        if (a.variant == VietorisVariant::Lower) img = b.base.closure(img);
        int j = b.index_of(img);
        if (j < 0) throw Error("hyperspace_map: image left the carrier family");
        table[k] = j;
    }
    return table;
}

inline ContMap hyperspace_map(const Hyperspace& a, const Hyperspace& b, const ContMap& f) {
    return ContMap(a.space, b.space, hyperspace_map_table(a, b, f));
}

/// The inclusion of a subfunctor variant into the compact hyperspace;
/// an embedding, used as the component of the mono natural transformations.
inline ContMap variant_inclusion(const Hyperspace& sub, const Hyperspace& compact) {
    if (sub.base != compact.base || compact.variant != VietorisVariant::Compact)
        throw Error("variant_inclusion expects a sub-variant and the compact hyperspace on one base");
    std::vector<int> table(sub.subsets.size());
    for (std::size_t k = 0; k < sub.subsets.size(); ++k) {
        int j = compact.index_of(sub.subsets[k]);
        if (j < 0) throw Error("variant carrier not contained in the compact one");
        table[k] = j;
    }
    return ContMap(sub.space, compact.space, std::move(table));
}

// ---------------------------------------------------------------------------
// Checker-facing functor abstraction. The law checker and the embedding-
// preservation probe work against this interface so that the deliberately
// broken classic construction can be examined without ever becoming a
// composable grammar leaf.
// ---------------------------------------------------------------------------

class SpaceFunctor {
public:
    virtual ~SpaceFunctor() = default;
    virtual std::string describe() const = 0;
    virtual FinSpace apply_space(const FinSpace& x, const Limits& lim) const = 0;
    /// Raw point table of the action on f; continuity is NOT enforced here
    /// (checking it is the law checker's job).
    virtual std::vector<int> apply_map_table(const ContMap& f, const Limits& lim) const = 0;
};

class VariantFunctor final : public SpaceFunctor {
public:
    explicit VariantFunctor(VietorisVariant v) : v_(v) {}
    std::string describe() const override { return std::string("vietoris:") + variant_name(v_); }
    FinSpace apply_space(const FinSpace& x, const Limits& lim) const override {
        return make_hyperspace(x, v_, lim).space;
    }
    std::vector<int> apply_map_table(const ContMap& f, const Limits& lim) const override {
        Hyperspace a = make_hyperspace(f.dom(), v_, lim);
        Hyperspace b = make_hyperspace(f.cod(), v_, lim);
        return hyperspace_map_table(a, b, f);
    }

private:
    VietorisVariant v_;
};

/// The classic Vietoris construction: closed sets, hit-and-miss subbasis,
/// action A -> closure f[A]. Not a functor on Top (the action need not be
/// continuous); only the checker and the witness below may build it.
struct ClassicHyper {
    FinSpace base;
    FinSpace space;
    std::vector<Bitset> subsets; // the closed sets, ascending
    std::unordered_map<Bitset, int, Bitset::Hash> index;

    int index_of(const Bitset& s) const {
        auto it = index.find(s);
        return it == index.end() ? -1 : it->second;
    }
};

inline ClassicHyper classic_hyperspace(const FinSpace& x, const Limits& lim = {}) {
    detail::check_hyperspace_feasible(x, lim);
    std::vector<Bitset> family = x.down_sets();
    if (family.size() > lim.max_points)
        throw SizeCapExceeded("classic hyperspace exceeds the point cap", family.size(), lim.max_points);
    std::vector<std::string> names;
    for (const auto& s : family) names.push_back(subset_name(x, s));
    std::vector<Bitset> subbasis;
    for (const auto& u : x.opens()) {
        Bitset diamond(family.size()), box(family.size());
        for (std::size_t k = 0; k < family.size(); ++k) {
            if (family[k].intersects(u)) diamond.set(k);
            if (family[k].is_subset_of(u)) box.set(k);
        }
        subbasis.push_back(std::move(diamond));
        subbasis.push_back(std::move(box));
    }
    Limits l = lim;
    l.max_points = std::max(l.max_points, family.size());
    FinSpace space = generate_topology(std::move(names), subbasis, l);
    ClassicHyper h;
    h.base = x;
    h.space = std::move(space);
    h.subsets = std::move(family);
    for (std::size_t k = 0; k < h.subsets.size(); ++k)
        h.index.emplace(h.subsets[k], static_cast<int>(k));
    return h;
}

class ClassicVietorisFunctor final : public SpaceFunctor {
public:
    std::string describe() const override { return "vietoris:classic(closed,box+diamond)"; }
    FinSpace apply_space(const FinSpace& x, const Limits& lim) const override {
        return classic_hyperspace(x, lim).space;
    }
    std::vector<int> apply_map_table(const ContMap& f, const Limits& lim) const override {
        ClassicHyper a = classic_hyperspace(f.dom(), lim);
        ClassicHyper b = classic_hyperspace(f.cod(), lim);
        std::vector<int> table(a.subsets.size());
        for (std::size_t k = 0; k < a.subsets.size(); ++k) {
            Bitset img = b.base.closure(f.image(a.subsets[k]));
            int j = b.index_of(img);
            if (j < 0) throw Error("classic action left the closed-set family");
            table[k] = j;
        }
        return table;
    }
};

/// True iff F sends the subspace embedding m to a subspace embedding
/// (injective, monotone and order-reflecting).
inline bool preserves_embedding(const SpaceFunctor& f, const ContMap& m, const Limits& lim = {}) {
    if (!m.is_embedding()) throw Error("preserves_embedding expects an embedding");
    FinSpace fd = f.apply_space(m.dom(), lim);
    FinSpace fc = f.apply_space(m.cod(), lim);
    std::vector<int> table = f.apply_map_table(m, lim);
    ContMap fm(fd, fc, std::move(table), false);
    return fm.is_embedding();
}

// ---------------------------------------------------------------------------
// Executable counterexamples
// ---------------------------------------------------------------------------

/// The classic construction is not a functor on Top: on the 3-point space
/// generated by {1,2} and {2,3}, the action of the subspace embedding
/// {1,2} -> {1,2,3} pulls {1,2}-box back to a non-open set.
struct ClassicWitnessReport {
    FinSpace ambient;                  // {1,2,3}, topology generated by {1,2},{2,3}
    std::vector<Bitset> ambient_closed;
    FinSpace sub;                      // subspace {1,2}
    std::vector<Bitset> sub_closed;
    std::vector<int> embedding_action; // classic V(i) as a table over sub_closed
    Bitset box12;                      // {1,2}-box over ambient_closed
    Bitset preimage;                   // (Vi)^{-1}[box12] over sub_closed
    Bitset min_nbhd_of_1;              // minimal open nbhd of {1} in classic V(sub)
    bool preimage_open = false;
    bool min_nbhd_contains_12 = false;
    bool reproduced = false;
};

inline ClassicWitnessReport classic_nonfunctoriality_witness() {
    ClassicWitnessReport r;
    Bitset s12 = Bitset::from_mask(3, 0b011); // {1,2}
    Bitset s23 = Bitset::from_mask(3, 0b110); // {2,3}
    r.ambient = generate_topology({"1", "2", "3"}, {s12, s23});
    ClassicHyper vx = classic_hyperspace(r.ambient);
    r.ambient_closed = vx.subsets;

    Bitset carrier = Bitset::from_mask(3, 0b011);
    Subspace sub = subspace(r.ambient, carrier);
    r.sub = sub.space;
    ClassicHyper vsub = classic_hyperspace(r.sub);
    r.sub_closed = vsub.subsets;

    ClassicVietorisFunctor classic;
    r.embedding_action = classic.apply_map_table(sub.embed, Limits{});

    // {1,2}-box: closed subsets of the ambient space contained in {1,2}.
    r.box12 = Bitset(vx.subsets.size());
    for (std::size_t k = 0; k < vx.subsets.size(); ++k)
        if (vx.subsets[k].is_subset_of(s12)) r.box12.set(k);

    r.preimage = Bitset(vsub.subsets.size());
    for (std::size_t k = 0; k < vsub.subsets.size(); ++k)
        if (r.box12.test(static_cast<std::size_t>(r.embedding_action[k]))) r.preimage.set(k);

    r.preimage_open = vsub.space.is_open(r.preimage);

    int one = vsub.index_of(Bitset::from_mask(2, 0b01)); // the closed set {1}
    r.min_nbhd_of_1 = vsub.space.up(one);
    int twelve = vsub.index_of(Bitset::from_mask(2, 0b11)); // the closed set {1,2}
    r.min_nbhd_contains_12 = r.min_nbhd_of_1.test(static_cast<std::size_t>(twelve));

    // Expected data: closed sets of the ambient space are
    // {},{1},{3},{1,3},{1,2,3}; the preimage is {{},{1}} and is not open.
    bool closed_ok = vx.subsets.size() == 5 && vsub.subsets.size() == 3;
    Bitset expected_pre(vsub.subsets.size());
    expected_pre.set(static_cast<std::size_t>(vsub.index_of(Bitset::from_mask(2, 0b00))));
    expected_pre.set(static_cast<std::size_t>(vsub.index_of(Bitset::from_mask(2, 0b01))));
    r.reproduced = closed_ok && r.preimage == expected_pre && !r.preimage_open &&
                   r.min_nbhd_contains_12;
    return r;
}

/// Neither Vietoris functor preserves monocones: on a discrete space X
/// with two or more points, the diagonal and the full square of X x X have
/// identical images under both V(projection) maps.
struct MonoconeWitnessReport {
    FinSpace base;
    FinSpace square;
    Bitset diagonal; // subset of X x X
    Bitset full;
    Bitset v_pi1_diag, v_pi1_full, v_pi2_diag, v_pi2_full; // subsets of X
    bool images_all_equal_base = false;
    bool diagonal_differs = false;
    bool reproduced = false;
};

inline MonoconeWitnessReport monocone_failure_witness(const FinSpace& x) {
    if (x.size() < 2) throw TooSmall("monocone witness needs at least two points");
    if (!x.is_discrete()) throw Error("monocone witness requires a discrete (finite Hausdorff) space");
    MonoconeWitnessReport r;
    r.base = x;
    ProductSpace p = product(x, x);
    r.square = p.space;
    r.diagonal = Bitset(static_cast<std::size_t>(p.space.size()));
    for (int i = 0; i < x.size(); ++i)
        r.diagonal.set(static_cast<std::size_t>(p.pair_index(i, i)));
    r.full = Bitset::full(static_cast<std::size_t>(p.space.size()));
    r.v_pi1_diag = p.pi1.image(r.diagonal);
    r.v_pi1_full = p.pi1.image(r.full);
    r.v_pi2_diag = p.pi2.image(r.diagonal);
    r.v_pi2_full = p.pi2.image(r.full);
    Bitset all = Bitset::full(static_cast<std::size_t>(x.size()));
    r.images_all_equal_base = r.v_pi1_diag == all && r.v_pi1_full == all &&
                              r.v_pi2_diag == all && r.v_pi2_full == all;
    r.diagonal_differs = !(r.diagonal == r.full);
    r.reproduced = r.images_all_equal_base && r.diagonal_differs;
    return r;
}

// ---------------------------------------------------------------------------
// The strength of the compact Vietoris functor
// ---------------------------------------------------------------------------

struct Strength {
    FinSpace x, y;
    Hyperspace vx;
    ProductSpace vx_y; // V(X) x Y
    ProductSpace xy;   // X x Y
    Hyperspace vxy;    // V(X x Y)
    ContMap map;       // tau: V(X) x Y -> V(X x Y)
};

/// tau(S, y) = S x {y}, as a subset of X x Y.
inline Bitset tau_point(const ProductSpace& xy, const Bitset& s, int y) {
    Bitset out(static_cast<std::size_t>(xy.space.size()));
    for (int i : s.elements()) out.set(static_cast<std::size_t>(xy.pair_index(i, y)));
    return out;
}

inline Strength strength_tau(const FinSpace& x, const FinSpace& y, const Limits& lim = {}) {
    Strength s;
    s.x = x;
    s.y = y;
    s.vx = make_hyperspace(x, VietorisVariant::Compact, lim);
    s.vx_y = product(s.vx.space, y);
    s.xy = product(x, y);
    s.vxy = make_hyperspace(s.xy.space, VietorisVariant::Compact, lim);
    std::vector<int> table(static_cast<std::size_t>(s.vx_y.space.size()));
    for (int k = 0; k < s.vx.space.size(); ++k)
        for (int j = 0; j < y.size(); ++j) {
            Bitset img = tau_point(s.xy, s.vx.subsets[static_cast<std::size_t>(k)], j);
            table[static_cast<std::size_t>(s.vx_y.pair_index(k, j))] = s.vxy.index_of(img);
        }
    s.map = ContMap(s.vx_y.space, s.vxy.space, std::move(table));
    return s;
}

/// tau^{-1}[(U1xV1 cup ... cup UkxVk)-diamond] == cup_i (Ui-diamond x Vi).
inline bool strength_diamond_identity(const Strength& s,
                                      const std::vector<std::pair<Bitset, Bitset>>& rectangles) {
    Bitset un(static_cast<std::size_t>(s.xy.space.size()));
    for (const auto& [u, v] : rectangles) {
        if (!s.x.is_open(u) || !s.y.is_open(v)) throw NotOpen("rectangle sides must be open");
        for (int i : u.elements())
            for (int j : v.elements()) un.set(static_cast<std::size_t>(s.xy.pair_index(i, j)));
    }
    Bitset lhs = s.map.preimage(hit(s.vxy, un));
    Bitset rhs(static_cast<std::size_t>(s.vx_y.space.size()));
    for (const auto& [u, v] : rectangles) {
        Bitset du = hit(s.vx, u);
        for (int k : du.elements())
            for (int j : v.elements()) rhs.set(static_cast<std::size_t>(s.vx_y.pair_index(k, j)));
    }
    return lhs == rhs;
}

/// tau^{-1}[(cup_i UixVi)-box] == cup over F subseteq I of
/// ((cup_{i in F} Ui)-box x cap_{i in F} Vi).
inline bool strength_box_identity(const Strength& s,
                                  const std::vector<std::pair<Bitset, Bitset>>& rectangles) {
    Bitset un(static_cast<std::size_t>(s.xy.space.size()));
    for (const auto& [u, v] : rectangles) {
        if (!s.x.is_open(u) || !s.y.is_open(v)) throw NotOpen("rectangle sides must be open");
        for (int i : u.elements())
            for (int j : v.elements()) un.set(static_cast<std::size_t>(s.xy.pair_index(i, j)));
    }
    Bitset lhs = s.map.preimage(miss_box(s.vxy, un));
    Bitset rhs(static_cast<std::size_t>(s.vx_y.space.size()));
    const std::size_t nrect = rectangles.size();
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << nrect); ++f) {
        Bitset u_union(static_cast<std::size_t>(s.x.size()));
        Bitset v_inter = Bitset::full(static_cast<std::size_t>(s.y.size()));
        for (std::size_t i = 0; i < nrect; ++i)
            if ((f >> i) & 1u) {
                u_union |= rectangles[i].first;
                v_inter &= rectangles[i].second;
            }
        Bitset bu = miss_box(s.vx, u_union);
        for (int k : bu.elements())
            for (int j : v_inter.elements()) rhs.set(static_cast<std::size_t>(s.vx_y.pair_index(k, j)));
    }
    return lhs == rhs;
}

/// Naturality of tau in both arguments: V(f x g) . tau_{X,Y} equals
/// tau_{X',Y'} . (V(f) x g), checked pointwise.
inline bool strength_naturality_commutes(const ContMap& f, const ContMap& g, const Limits& lim = {}) {
    Strength sd = strength_tau(f.dom(), g.dom(), lim);
    Strength sc = strength_tau(f.cod(), g.cod(), lim);
    for (int k = 0; k < sd.vx.space.size(); ++k)
        for (int j = 0; j < g.dom().size(); ++j) {
            const Bitset& s = sd.vx.subsets[static_cast<std::size_t>(k)];
            // down the left leg: tau then V(f x g)
            Bitset sxj = tau_point(sd.xy, s, j);
            Bitset img(static_cast<std::size_t>(sc.xy.space.size()));
            for (int e : sxj.elements()) {
                int i = sd.xy.pi1(e), jj = sd.xy.pi2(e);
                img.set(static_cast<std::size_t>(sc.xy.pair_index(f(i), g(jj))));
            }
            // down the right leg: V(f) x g then tau
            Bitset fs = f.image(s);
            Bitset expected = tau_point(sc.xy, fs, g(j));
            if (img != expected) return false;
        }
    return true;
}

} // namespace vcoalg

#endif
