#ifndef VCOALG_APPLY_HPP
#define VCOALG_APPLY_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vcoalg/finspace.hpp"
#include "vcoalg/functor.hpp"
#include "vcoalg/vietoris.hpp"

namespace vcoalg {

/// Environment binding constant names to spaces.
using Env = std::map<std::string, FinSpace>;

/// A structured element of F(X): the canonical point encoding used for
/// I/O. Serialization is deterministic prefix notation; set children are
/// kept in the inner space's point order.
struct FValue {
    enum class Kind { Pt, ConstPt, Pair, Inl, Inr, SetOf };
    Kind kind = Kind::Pt;
    std::string atom;             // Pt / ConstPt: point name
    std::vector<FValue> children; // Pair (2), Inl/Inr (1), SetOf (any)

    static FValue pt(std::string name) { return FValue{Kind::Pt, std::move(name), {}}; }
    static FValue constpt(std::string name) { return FValue{Kind::ConstPt, std::move(name), {}}; }
    static FValue pair(FValue a, FValue b) {
        return FValue{Kind::Pair, "", {std::move(a), std::move(b)}};
    }
    static FValue inl(FValue v) { return FValue{Kind::Inl, "", {std::move(v)}}; }
    static FValue inr(FValue v) { return FValue{Kind::Inr, "", {std::move(v)}}; }
    static FValue set(std::vector<FValue> vs) { return FValue{Kind::SetOf, "", std::move(vs)}; }

    friend bool operator==(const FValue& a, const FValue& b) {
        return a.kind == b.kind && a.atom == b.atom && a.children == b.children;
    }

    std::string serialize() const {
        switch (kind) {
        case Kind::Pt:
        case Kind::ConstPt: return atom;
        case Kind::Pair: return "(" + children[0].serialize() + "," + children[1].serialize() + ")";
        case Kind::Inl: return "inl(" + children[0].serialize() + ")";
        case Kind::Inr: return "inr(" + children[0].serialize() + ")";
        case Kind::SetOf: {
            std::string out = "{";
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i) out += ",";
                out += children[i].serialize();
            }
            return out + "}";
        }
        }
        return "";
    }
};

/// The result of applying a functor expression to a space: the space F(X)
/// whose point names are canonical FValue serializations, together with
/// enough structure to act on maps and to translate points to/from FValues.
class Applied {
public:
    const FunctorExpr& expr() const { return *f_; }
    const FinSpace& base() const { return base_; }
    const FinSpace& space() const { return space_; }

    /// Hyperspace payload when the expression is a Vietoris leaf; null otherwise.
    const Hyperspace* hyperspace() const { return hyper_.get(); }

    /// Point table of F(f) given the table of f on base points; `cod` must
    /// be the same expression applied to f's codomain.
    std::vector<int> act(const Applied& cod, const std::vector<int>& base_map) const {
        switch (f_->kind) {
        case FKind::Id: return base_map;
        case FKind::Const: {
            std::vector<int> t(static_cast<std::size_t>(space_.size()));
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
            return t;
        }
        case FKind::Sum: {
            std::vector<int> l = a_->act(*cod.a_, base_map);
            std::vector<int> r = b_->act(*cod.b_, base_map);
            std::vector<int> t;
            t.reserve(l.size() + r.size());
            for (int v : l) t.push_back(v);
            for (int v : r) t.push_back(v + cod.a_->space().size());
            return t;
        }
        case FKind::Prod: {
            std::vector<int> l = a_->act(*cod.a_, base_map);
            std::vector<int> r = b_->act(*cod.b_, base_map);
            const int nb = b_->space().size(), cnb = cod.b_->space().size();
            std::vector<int> t(static_cast<std::size_t>(space_.size()));
            for (int i = 0; i < a_->space().size(); ++i)
                for (int j = 0; j < nb; ++j)
                    t[static_cast<std::size_t>(i * nb + j)] =
                        l[static_cast<std::size_t>(i)] * cnb + r[static_cast<std::size_t>(j)];
            return t;
        }
        case FKind::Comp: {
            std::vector<int> inner = a_->act(*cod.a_, base_map);
            return b_->act(*cod.b_, inner);
        }
        default: { // Vietoris leaves
            std::vector<int> t(hyper_->subsets.size());
            for (std::size_t k = 0; k < hyper_->subsets.size(); ++k) {
                Bitset img(static_cast<std::size_t>(cod.base_.size()));
                for (int i : hyper_->subsets[k].elements())
                    img.set(static_cast<std::size_t>(base_map[static_cast<std::size_t>(i)]));
                if (hyper_->variant == VietorisVariant::Lower) img = cod.base_.closure(img);
                int j = cod.hyper_->index_of(img);
                if (j < 0) throw Error("functor action left the hyperspace carrier");
                t[k] = j;
            }
            return t;
        }
        }
    }

    using LeafValue = std::function<FValue(int)>;

    /// Deep FValue of a point, expanding through composition layers down
    /// to base points of the original space.
    FValue value_of(int k) const {
        return value_rec(k, [this](int i) { return FValue::pt(base_.name(i)); });
    }

    using LeafResolve = std::function<int(const FValue&)>;

    /// Inverse of value_of, with validation; throws BadInput on malformed
    /// or invariant-violating values.
    int resolve(const FValue& v) const {
        return resolve_rec(v, [this](const FValue& leaf) {
            if (leaf.kind != FValue::Kind::Pt)
                throw BadInput("expected {\"pt\": ...} at an Id position, got " + leaf.serialize());
            int i = base_.index_of(leaf.atom);
            if (i < 0) throw BadInput("unknown carrier point: " + leaf.atom);
            return i;
        });
    }

    FValue value_rec(int k, const LeafValue& leaf) const {
        switch (f_->kind) {
        case FKind::Id: return leaf(k);
        case FKind::Const: return FValue::constpt(space_.name(k));
        case FKind::Sum: {
            const int n1 = a_->space().size();
            if (k < n1) return FValue::inl(a_->value_rec(k, leaf));
            return FValue::inr(b_->value_rec(k - n1, leaf));
        }
        case FKind::Prod: {
            const int nb = b_->space().size();
            return FValue::pair(a_->value_rec(k / nb, leaf), b_->value_rec(k % nb, leaf));
        }
        case FKind::Comp:
            return b_->value_rec(k, [&](int j) { return a_->value_rec(j, leaf); });
        default: {
            std::vector<FValue> kids;
            for (int i : hyper_->subsets[static_cast<std::size_t>(k)].elements())
                kids.push_back(leaf(i));
            return FValue::set(std::move(kids));
        }
        }
    }

    int resolve_rec(const FValue& v, const LeafResolve& leaf) const {
        switch (f_->kind) {
        case FKind::Id: return leaf(v);
        case FKind::Const: {
            if (v.kind != FValue::Kind::ConstPt)
                throw BadInput("expected {\"const\": ...} at a constant position, got " + v.serialize());
            int i = space_.index_of(v.atom);
            if (i < 0) throw BadInput("unknown constant point: " + v.atom);
            return i;
        }
        case FKind::Sum: {
            if (v.kind == FValue::Kind::Inl) return a_->resolve_rec(v.children[0], leaf);
            if (v.kind == FValue::Kind::Inr)
                return a_->space().size() + b_->resolve_rec(v.children[0], leaf);
            throw BadInput("expected inl/inr at a sum position, got " + v.serialize());
        }
        case FKind::Prod: {
            if (v.kind != FValue::Kind::Pair)
                throw BadInput("expected a pair at a product position, got " + v.serialize());
            return a_->resolve_rec(v.children[0], leaf) * b_->space().size() +
                   b_->resolve_rec(v.children[1], leaf);
        }
        case FKind::Comp:
            return b_->resolve_rec(
                v, [&](const FValue& inner) { return a_->resolve_rec(inner, leaf); });
        default: {
            if (v.kind != FValue::Kind::SetOf)
                throw BadInput("expected a set at a Vietoris position, got " + v.serialize());
            Bitset mask(static_cast<std::size_t>(base_.size()));
            for (const auto& child : v.children) {
                int i = leaf(child);
                if (mask.test(static_cast<std::size_t>(i)))
                    throw BadInput("set value lists " + child.serialize() + " twice");
                mask.set(static_cast<std::size_t>(i));
            }
            int k = hyper_->index_of(mask);
            if (k < 0)
                throw BadInput("set value " + v.serialize() + " is not a " +
                               std::string(variant_name(hyper_->variant)) + " hyperspace point");
            return k;
        }
        }
    }

    friend Applied apply_functor(const FunctorPtr&, const FinSpace&, const Env&, const Limits&);

private:
    FunctorPtr f_;
    FinSpace base_;
    FinSpace space_;
    std::shared_ptr<const Applied> a_, b_; // Sum/Prod: children; Comp: a_=inner, b_=outer
    std::shared_ptr<const Hyperspace> hyper_;
};

/// Evaluate F at X. Point names of the result are canonical FValue
/// serializations; throws UnboundConstant / SizeCapExceeded.
inline Applied apply_functor(const FunctorPtr& f, const FinSpace& x, const Env& env,
                             const Limits& lim = {}) {
    Applied out;
    out.f_ = f;
    out.base_ = x;
    switch (f->kind) {
    case FKind::Id: out.space_ = x; break;
    case FKind::Const: {
        auto it = env.find(f->name);
        if (it == env.end()) throw UnboundConstant("unbound constant space: " + f->name);
        out.space_ = it->second;
        break;
    }
    case FKind::Sum: {
        out.a_ = std::make_shared<Applied>(apply_functor(f->lhs, x, env, lim));
        out.b_ = std::make_shared<Applied>(apply_functor(f->rhs, x, env, lim));
        out.space_ = coproduct(out.a_->space(), out.b_->space()).space;
        break;
    }
    case FKind::Prod: {
        out.a_ = std::make_shared<Applied>(apply_functor(f->lhs, x, env, lim));
        out.b_ = std::make_shared<Applied>(apply_functor(f->rhs, x, env, lim));
        out.space_ = product(out.a_->space(), out.b_->space()).space;
        break;
    }
    case FKind::Comp: {
        out.a_ = std::make_shared<Applied>(apply_functor(f->rhs, x, env, lim));
        out.b_ = std::make_shared<Applied>(apply_functor(f->lhs, out.a_->space(), env, lim));
        out.space_ = out.b_->space();
        break;
    }
    case FKind::VLower:
        out.hyper_ = std::make_shared<Hyperspace>(make_hyperspace(x, VietorisVariant::Lower, lim));
        out.space_ = out.hyper_->space;
        break;
    case FKind::VCompact:
        out.hyper_ = std::make_shared<Hyperspace>(make_hyperspace(x, VietorisVariant::Compact, lim));
        out.space_ = out.hyper_->space;
        break;
    case FKind::VCompactNonempty:
        out.hyper_ =
            std::make_shared<Hyperspace>(make_hyperspace(x, VietorisVariant::CompactNonempty, lim));
        out.space_ = out.hyper_->space;
        break;
    case FKind::VCompactConnected:
        out.hyper_ =
            std::make_shared<Hyperspace>(make_hyperspace(x, VietorisVariant::CompactConnected, lim));
        out.space_ = out.hyper_->space;
        break;
    }
    if (static_cast<std::size_t>(out.space_.size()) > lim.max_points)
        throw SizeCapExceeded("functor application exceeds the point cap for " + print_functor(f),
                              static_cast<std::size_t>(out.space_.size()), lim.max_points);
    return out;
}

/// F(f), acting structurally; continuous by construction for every
/// grammar functor (validated).
inline ContMap apply_functor_map(const Applied& fdom, const Applied& fcod, const ContMap& f) {
    if (f.dom() != fdom.base() || f.cod() != fcod.base())
        throw Error("apply_functor_map: map does not connect the applied bases");
    if (!functor_equal(fdom.expr(), fcod.expr()))
        throw Error("apply_functor_map: mismatched functor expressions");
    return ContMap(fdom.space(), fcod.space(), fdom.act(fcod, f.table()));
}

inline ContMap apply_functor_map(const FunctorPtr& fexpr, const ContMap& f, const Env& env,
                                 const Limits& lim = {}) {
    Applied fdom = apply_functor(fexpr, f.dom(), env, lim);
    Applied fcod = apply_functor(fexpr, f.cod(), env, lim);
    return apply_functor_map(fdom, fcod, f);
}

/// Grammar functors seen through the checker-facing interface.
class ExprFunctor final : public SpaceFunctor {
public:
    ExprFunctor(FunctorPtr f, Env env) : f_(std::move(f)), env_(std::move(env)) {}
    std::string describe() const override { return print_functor(f_); }
    FinSpace apply_space(const FinSpace& x, const Limits& lim) const override {
        return apply_functor(f_, x, env_, lim).space();
    }
    std::vector<int> apply_map_table(const ContMap& f, const Limits& lim) const override {
        Applied a = apply_functor(f_, f.dom(), env_, lim);
        Applied b = apply_functor(f_, f.cod(), env_, lim);
        return a.act(b, f.table());
    }

private:
    FunctorPtr f_;
    Env env_;
};

struct LawReport {
    bool pass = true;
    std::string witness;
    long identity_checks = 0;
    long continuity_checks = 0;
    long composition_checks = 0;
};

/// Property harness for functoriality: F(id) = id, continuity of every
/// F(f), and F(g.f) = F(g).F(f), over all continuous maps between the
/// supplied spaces. Stops at the first failure and reports a witness.
inline LawReport check_functor_laws(const SpaceFunctor& f, const std::vector<FinSpace>& spaces,
                                    const Limits& lim = {}) {
    LawReport rep;
    const std::size_t n = spaces.size();
    std::vector<FinSpace> applied;
    applied.reserve(n);
    for (const auto& x : spaces) applied.push_back(f.apply_space(x, lim));

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> t = f.apply_map_table(ContMap::identity(spaces[i]), lim);
        ++rep.identity_checks;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (t[k] != static_cast<int>(k)) {
                rep.pass = false;
                rep.witness = f.describe() + " breaks F(id)=id on space #" + std::to_string(i) +
                              " at point " + applied[i].name(static_cast<int>(k));
                return rep;
            }
    }

    // Enumerate test maps and tabulate the functor's action once per map.
    std::vector<std::vector<std::vector<ContMap>>> maps(n);
    std::vector<std::vector<std::vector<std::vector<int>>>> tables(n);
    std::vector<std::vector<std::unordered_map<std::string, int>>> index(n);
    auto key_of = [](const std::vector<int>& t) {
        std::string k;
        for (int v : t) {
            k += std::to_string(v);
            k += ',';
        }
        return k;
    };
    for (std::size_t i = 0; i < n; ++i) {
        maps[i].resize(n);
        tables[i].resize(n);
        index[i].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            maps[i][j] = enumerate_continuous_maps(spaces[i], spaces[j]);
            for (std::size_t m = 0; m < maps[i][j].size(); ++m) {
                std::vector<int> t = f.apply_map_table(maps[i][j][m], lim);
                ContMap ff(applied[i], applied[j], t, false);
                ++rep.continuity_checks;
                if (!ff.is_monotone()) {
                    rep.pass = false;
                    rep.witness = f.describe() + " produces a discontinuous action on a map space#" +
                                  std::to_string(i) + " -> space#" + std::to_string(j);
                    return rep;
                }
                index[i][j].emplace(key_of(maps[i][j][m].table()), static_cast<int>(m));
                tables[i][j].push_back(std::move(t));
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t mf = 0; mf < maps[i][j].size(); ++mf)
                    for (std::size_t mg = 0; mg < maps[j][k].size(); ++mg) {
                        const auto& ft = maps[i][j][mf].table();
                        const auto& gt = maps[j][k][mg].table();
                        std::vector<int> gof(ft.size());
                        for (std::size_t p = 0; p < ft.size(); ++p)
                            gof[p] = gt[static_cast<std::size_t>(ft[p])];
                        int idx = index[i][k].at(key_of(gof));
                        const auto& expected = tables[i][k][static_cast<std::size_t>(idx)];
                        const auto& fft = tables[i][j][mf];
                        const auto& fgt = tables[j][k][mg];
                        ++rep.composition_checks;
                        for (std::size_t p = 0; p < fft.size(); ++p)
                            if (fgt[static_cast<std::size_t>(fft[p])] != expected[p]) {
                                rep.pass = false;
                                rep.witness = f.describe() + " breaks F(g.f)=F(g).F(f) between spaces #" +
                                              std::to_string(i) + "," + std::to_string(j) + "," +
                                              std::to_string(k);
                                return rep;
                            }
                    }
    return rep;
}

} // namespace vcoalg

#endif
