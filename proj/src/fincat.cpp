#include "tdlab/fincat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace tdlab {

const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::MissingComposite: return "MissingComposite";
        case ErrKind::AssociativityViolation: return "AssociativityViolation";
        case ErrKind::IdentityViolation: return "IdentityViolation";
        case ErrKind::SizeGuardExceeded: return "SizeGuardExceeded";
        case ErrKind::ParseError: return "ParseError";
        case ErrKind::NotALattice: return "NotALattice";
        case ErrKind::AdjunctionViolation: return "AdjunctionViolation";
        case ErrKind::NotJoinDense: return "NotJoinDense";
        case ErrKind::NotFullyFaithful: return "NotFullyFaithful";
        case ErrKind::VerificationFailure: return "VerificationFailure";
        case ErrKind::InterpolationFailure: return "InterpolationFailure";
        case ErrKind::InternalInconsistency: return "InternalInconsistency";
        case ErrKind::InvalidInput: return "InvalidInput";
    }
    return "Error";
}

//----------------------------------------------------------------------------
// FinSet

Idx FinSet::index_of(const std::string& e) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), e);
    if (it == elements.end() || *it != e)
        throw Error(ErrKind::InvalidInput, "no element '" + e + "' in set " + label);
    return (Idx)(it - elements.begin());
}

FinSet make_finset(std::string label, std::vector<std::string> elements) {
    std::sort(elements.begin(), elements.end());
    for (std::size_t i = 1; i < elements.size(); ++i)
        if (elements[i] == elements[i - 1])
            throw Error(ErrKind::InvalidInput,
                        "duplicate element '" + elements[i] + "' in set " + label);
    return FinSet{std::move(label), std::move(elements)};
}

//----------------------------------------------------------------------------
// FinCategory

Idx FinCategory::object_id(const std::string& name) const {
    auto it = std::lower_bound(objects.begin(), objects.end(), name);
    if (it == objects.end() || *it != name)
        throw Error(ErrKind::InvalidInput, "unknown object '" + name + "'");
    return (Idx)(it - objects.begin());
}

Idx FinCategory::arrow_id(const std::string& name) const {
    for (Idx a = 0; a < n_arrows(); ++a)
        if (arrows[a].name == name) return a;
    throw Error(ErrKind::InvalidInput, "unknown arrow '" + name + "'");
}

Idx FinCategory::compose(Idx g, Idx f) const {
    Idx h = comp[g][f];
    if (h < 0)
        throw Error(ErrKind::InternalInconsistency,
                    "compose(" + arrows[g].name + ", " + arrows[f].name + ") undefined");
    return h;
}

std::vector<Idx> FinCategory::hom(Idx x, Idx y) const {
    std::vector<Idx> r;
    for (Idx a = 0; a < n_arrows(); ++a)
        if (arrows[a].src == x && arrows[a].tgt == y) r.push_back(a);
    return r;
}

namespace {

// sort objects and arrows into the canonical interned order and rebuild tables
FinCategory canonicalize(std::vector<std::string> objects,
                         std::vector<FinCategory::Arrow> arrows,
                         std::vector<Idx> identity,
                         const std::vector<std::vector<Idx>>& comp) {
    int no = (int)objects.size(), na = (int)arrows.size();
    std::vector<Idx> operm(no), aperm(na);
    std::iota(operm.begin(), operm.end(), 0);
    std::iota(aperm.begin(), aperm.end(), 0);
    std::sort(operm.begin(), operm.end(),
              [&](Idx a, Idx b) { return objects[a] < objects[b]; });
    std::sort(aperm.begin(), aperm.end(),
              [&](Idx a, Idx b) { return arrows[a].name < arrows[b].name; });
    std::vector<Idx> oinv(no), ainv(na);
    for (int i = 0; i < no; ++i) oinv[operm[i]] = i;
    for (int i = 0; i < na; ++i) ainv[aperm[i]] = i;

    FinCategory c;
    c.objects.resize(no);
    for (int i = 0; i < no; ++i) c.objects[i] = objects[operm[i]];
    c.arrows.resize(na);
    for (int i = 0; i < na; ++i) {
        const auto& a = arrows[aperm[i]];
        c.arrows[i] = {a.name, oinv[a.src], oinv[a.tgt]};
    }
    c.identity.resize(no);
    for (int i = 0; i < no; ++i) c.identity[i] = ainv[identity[operm[i]]];
    c.comp.assign(na, std::vector<Idx>(na, -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) {
            Idx h = comp[aperm[g]][aperm[f]];
            c.comp[g][f] = h < 0 ? -1 : ainv[h];
        }
    return c;
}

} // namespace

void check_category(const FinCategory& c, const Limits& lim) {
    if (c.n_objects() > lim.max_objects)
        throw Error(ErrKind::SizeGuardExceeded,
                    std::to_string(c.n_objects()) + " objects > " +
                        std::to_string(lim.max_objects));
    if (c.n_arrows() > lim.max_arrows)
        throw Error(ErrKind::SizeGuardExceeded,
                    std::to_string(c.n_arrows()) + " arrows > " + std::to_string(lim.max_arrows));

    int na = c.n_arrows();
    for (Idx x = 0; x < c.n_objects(); ++x) {
        Idx e = c.identity[x];
        if (e < 0 || e >= na || c.src(e) != x || c.tgt(e) != x)
            throw Error(ErrKind::IdentityViolation, "identity of " + c.objects[x] + " malformed");
    }
    for (Idx g = 0; g < na; ++g)
        for (Idx f = 0; f < na; ++f) {
            Idx h = c.comp[g][f];
            bool composable = c.tgt(f) == c.src(g);
            if (!composable) {
                if (h >= 0)
                    throw Error(ErrKind::InternalInconsistency,
                                "composite defined on non-composable pair " +
                                    c.arrows[g].name + " . " + c.arrows[f].name);
                continue;
            }
            if (h < 0)
                throw Error(ErrKind::MissingComposite,
                            c.arrows[g].name + " . " + c.arrows[f].name);
            if (c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g))
                throw Error(ErrKind::InternalInconsistency,
                            "composite " + c.arrows[h].name + " has wrong endpoints");
        }
    for (Idx f = 0; f < na; ++f) {
        if (c.comp[c.identity[c.tgt(f)]][f] != f || c.comp[f][c.identity[c.src(f)]] != f)
            throw Error(ErrKind::IdentityViolation, "identity law fails at " + c.arrows[f].name);
    }
    // exhaustive associativity check over composable triples
    for (Idx h = 0; h < na; ++h)
        for (Idx g = 0; g < na; ++g) {
            if (c.tgt(g) != c.src(h)) continue;
            Idx hg = c.comp[h][g];
            for (Idx f = 0; f < na; ++f) {
                if (c.tgt(f) != c.src(g)) continue;
                if (c.comp[h][c.comp[g][f]] != c.comp[hg][f])
                    throw Error(ErrKind::AssociativityViolation,
                                "(" + c.arrows[h].name + ", " + c.arrows[g].name + ", " +
                                    c.arrows[f].name + ")");
            }
        }
}

FinCategory validate_category(const RawCategory& raw, const Limits& lim) {
    std::vector<std::string> objects = raw.objects;
    std::sort(objects.begin(), objects.end());
    for (std::size_t i = 1; i < objects.size(); ++i)
        if (objects[i] == objects[i - 1])
            throw Error(ErrKind::InvalidInput, "duplicate object '" + objects[i] + "'");
    auto oid = [&](const std::string& s) -> Idx {
        auto it = std::lower_bound(objects.begin(), objects.end(), s);
        if (it == objects.end() || *it != s)
            throw Error(ErrKind::InvalidInput, "unknown object '" + s + "'");
        return (Idx)(it - objects.begin());
    };

    std::vector<FinCategory::Arrow> arrows;
    for (const auto& a : raw.raw_arrows)
        arrows.push_back({a.name, oid(a.src), oid(a.tgt)});
    // synthesize identities
    std::vector<Idx> identity(objects.size());
    for (Idx x = 0; x < (Idx)objects.size(); ++x) {
        std::string idname = "id_" + objects[x];
        for (const auto& a : arrows)
            if (a.name == idname)
                throw Error(ErrKind::InvalidInput,
                            "arrow name '" + idname + "' collides with the synthesized identity");
        identity[x] = (Idx)arrows.size();
        arrows.push_back({idname, x, x});
    }
    std::map<std::string, Idx> aid;
    for (Idx a = 0; a < (Idx)arrows.size(); ++a) {
        if (aid.count(arrows[a].name))
            throw Error(ErrKind::InvalidInput, "duplicate arrow '" + arrows[a].name + "'");
        aid[arrows[a].name] = a;
    }
    auto arrow_of = [&](const std::string& s) -> Idx {
        auto it = aid.find(s);
        if (it == aid.end()) throw Error(ErrKind::InvalidInput, "unknown arrow '" + s + "'");
        return it->second;
    };

    int na = (int)arrows.size();
    std::vector<std::vector<Idx>> comp(na, std::vector<Idx>(na, -1));
    // identity composites are forced
    for (Idx f = 0; f < na; ++f) {
        comp[identity[arrows[f].tgt]][f] = f;
        comp[f][identity[arrows[f].src]] = f;
    }
    for (const auto& e : raw.composites) {
        Idx g = arrow_of(e.g), f = arrow_of(e.f), h = arrow_of(e.h);
        if (arrows[f].tgt != arrows[g].src)
            throw Error(ErrKind::InvalidInput,
                        "compose " + e.g + " . " + e.f + ": pair not composable");
        if (arrows[h].src != arrows[f].src || arrows[h].tgt != arrows[g].tgt)
            throw Error(ErrKind::InvalidInput,
                        "compose " + e.g + " . " + e.f + " = " + e.h + ": endpoints mismatch");
        if (comp[g][f] >= 0 && comp[g][f] != h)
            throw Error(ErrKind::InvalidInput,
                        "conflicting composites for " + e.g + " . " + e.f);
        comp[g][f] = h;
    }

    FinCategory c = canonicalize(std::move(objects), std::move(arrows), std::move(identity), comp);
    check_category(c, lim);
    return c;
}

FinCategory opposite(const FinCategory& c) {
    FinCategory o = c;
    for (auto& a : o.arrows) std::swap(a.src, a.tgt);
    int na = c.n_arrows();
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) o.comp[g][f] = c.comp[f][g];
    return o;
}

bool same_category(const FinCategory& a, const FinCategory& b) {
    if (&a == &b) return true;
    if (a.objects != b.objects || a.identity != b.identity || a.comp != b.comp) return false;
    if (a.arrows.size() != b.arrows.size()) return false;
    for (std::size_t i = 0; i < a.arrows.size(); ++i)
        if (a.arrows[i].name != b.arrows[i].name || a.arrows[i].src != b.arrows[i].src ||
            a.arrows[i].tgt != b.arrows[i].tgt)
            return false;
    return true;
}

//----------------------------------------------------------------------------
// FinPoset

Idx FinPoset::index_of(const std::string& e) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), e);
    if (it == elems.end() || *it != e)
        throw Error(ErrKind::InvalidInput, "unknown element '" + e + "'");
    return (Idx)(it - elems.begin());
}

std::optional<Idx> FinPoset::minimum_of(const Bits& s) const {
    for (int i = 0; i < size(); ++i)
        if (s.test(i) && s.subset_of(above[i])) return i;
    return std::nullopt;
}

std::optional<Idx> FinPoset::maximum_of(const Bits& s) const {
    for (int i = 0; i < size(); ++i)
        if (s.test(i) && s.subset_of(below[i])) return i;
    return std::nullopt;
}

std::optional<Idx> FinPoset::join_of(const Bits& s) const {
    Bits ub(size());
    for (int i = 0; i < size(); ++i) {
        bool is_ub = true;
        for (int j = 0; j < size() && is_ub; ++j)
            if (s.test(j) && !leq(j, i)) is_ub = false;
        if (is_ub) ub.set(i);
    }
    return minimum_of(ub);
}

std::optional<Idx> FinPoset::meet_of(const Bits& s) const {
    Bits lb(size());
    for (int i = 0; i < size(); ++i) {
        bool is_lb = true;
        for (int j = 0; j < size() && is_lb; ++j)
            if (s.test(j) && !leq(i, j)) is_lb = false;
        if (is_lb) lb.set(i);
    }
    return maximum_of(lb);
}

bool FinPoset::is_downset(const Bits& s) const {
    for (int i = 0; i < size(); ++i)
        if (s.test(i) && !below[i].subset_of(s)) return false;
    return true;
}

bool FinPoset::is_upset(const Bits& s) const {
    for (int i = 0; i < size(); ++i)
        if (s.test(i) && !above[i].subset_of(s)) return false;
    return true;
}

bool FinPoset::is_directed(const Bits& s) const {
    if (!s.any()) return false;
    for (int i = 0; i < size(); ++i) {
        if (!s.test(i)) continue;
        for (int j = i; j < size(); ++j) {
            if (!s.test(j)) continue;
            if (!(above[i] & above[j] & s).any()) return false;
        }
    }
    return true;
}

FinPoset make_poset_from_relation(std::vector<std::string> elems,
                                  const std::vector<Bits>& below_closed) {
    if (!std::is_sorted(elems.begin(), elems.end()))
        throw Error(ErrKind::InternalInconsistency, "poset labels must arrive sorted");
    FinPoset p;
    p.elems = std::move(elems);
    p.below = below_closed;
    int n = p.size();
    p.above.assign(n, Bits(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p.below[i].test(j)) p.above[j].set(i);
    // sanity: reflexive + antisymmetric + transitive
    for (int i = 0; i < n; ++i) {
        if (!p.below[i].test(i))
            throw Error(ErrKind::InternalInconsistency, "relation not reflexive");
        for (int j = 0; j < n; ++j) {
            if (i != j && p.leq(i, j) && p.leq(j, i))
                throw Error(ErrKind::InvalidInput,
                            "antisymmetry fails: " + p.elems[i] + " ~ " + p.elems[j]);
            if (p.leq(j, i) && !p.below[j].subset_of(p.below[i]))
                throw Error(ErrKind::InternalInconsistency, "relation not transitive");
        }
    }
    return p;
}

FinPoset make_poset(std::vector<std::string> elems,
                    const std::vector<std::pair<std::string, std::string>>& le) {
    std::sort(elems.begin(), elems.end());
    for (std::size_t i = 1; i < elems.size(); ++i)
        if (elems[i] == elems[i - 1])
            throw Error(ErrKind::InvalidInput, "duplicate element '" + elems[i] + "'");
    int n = (int)elems.size();
    auto eid = [&](const std::string& s) -> Idx {
        auto it = std::lower_bound(elems.begin(), elems.end(), s);
        if (it == elems.end() || *it != s)
            throw Error(ErrKind::InvalidInput, "unknown element '" + s + "'");
        return (Idx)(it - elems.begin());
    };
    std::vector<Bits> below(n, Bits(n));
    for (int i = 0; i < n; ++i) below[i].set(i);
    for (const auto& [a, b] : le) below[eid(b)].set(eid(a));
    // transitive closure (Warshall over bit rows: below[i] = union of below[j] for j <= i)
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (below[i].test(j) && !below[j].subset_of(below[i])) {
                    below[i] |= below[j];
                    changed = true;
                }
    }
    return make_poset_from_relation(std::move(elems), below);
}

bool is_monotone(const FinPoset& dom, const FinPoset& cod, const std::vector<Idx>& map) {
    for (int x = 0; x < dom.size(); ++x)
        for (int y = 0; y < dom.size(); ++y)
            if (dom.leq(x, y) && !cod.leq(map[x], map[y])) return false;
    return true;
}

MonotoneMap make_monotone(PosetPtr dom, PosetPtr cod, std::vector<Idx> map) {
    if ((int)map.size() != dom->size())
        throw Error(ErrKind::InvalidInput, "monotone map has wrong arity");
    if (!is_monotone(*dom, *cod, map))
        throw Error(ErrKind::InvalidInput, "map is not monotone");
    return MonotoneMap{std::move(dom), std::move(cod), std::move(map)};
}

bool is_order_embedding(const MonotoneMap& f) {
    for (int x = 0; x < f.dom->size(); ++x)
        for (int y = 0; y < f.dom->size(); ++y)
            if (f.cod->leq(f.map[x], f.map[y]) != f.dom->leq(x, y)) return false;
    return true;
}

FinCategory poset_as_category(const FinPoset& p) {
    std::vector<std::string> objects = p.elems;
    std::vector<FinCategory::Arrow> arrows;
    std::vector<std::vector<Idx>> arrow_at(p.size(), std::vector<Idx>(p.size(), -1));
    std::vector<Idx> identity(p.size());
    for (Idx x = 0; x < p.size(); ++x)
        for (Idx y = 0; y < p.size(); ++y)
            if (p.leq(x, y)) {
                arrow_at[x][y] = (Idx)arrows.size();
                std::string nm = x == y ? "id_" + p.elems[x]
                                        : "le_" + p.elems[x] + "_" + p.elems[y];
                arrows.push_back({nm, x, y});
                if (x == y) identity[x] = arrow_at[x][y];
            }
    int na = (int)arrows.size();
    std::vector<std::vector<Idx>> comp(na, std::vector<Idx>(na, -1));
    for (Idx g = 0; g < na; ++g)
        for (Idx f = 0; f < na; ++f)
            if (arrows[f].tgt == arrows[g].src)
                comp[g][f] = arrow_at[arrows[f].src][arrows[g].tgt];
    FinCategory c = canonicalize(std::move(objects), std::move(arrows), std::move(identity), comp);
    check_category(c);
    return c;
}

bool is_thin(const FinCategory& c) {
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx y = 0; y < c.n_objects(); ++y)
            if (c.hom(x, y).size() > 1) return false;
    return true;
}

FinPoset underlying_poset(const FinCategory& c) {
    if (!is_thin(c))
        throw Error(ErrKind::InvalidInput, "category is not thin");
    int n = c.n_objects();
    std::vector<Bits> below(n, Bits(n));
    for (Idx x = 0; x < n; ++x)
        for (Idx y = 0; y < n; ++y)
            if (!c.hom(x, y).empty()) below[y].set(x);
    return make_poset_from_relation(c.objects, below);  // antisymmetry check = skeletality
}

//----------------------------------------------------------------------------
// functors

FinFunctor make_functor(CategoryPtr dom, CategoryPtr cod,
                        std::vector<Idx> on_obj, std::vector<Idx> on_arrow) {
    FinFunctor f{std::move(dom), std::move(cod), std::move(on_obj), std::move(on_arrow)};
    const auto& D = *f.dom;
    const auto& C = *f.cod;
    if ((int)f.on_obj.size() != D.n_objects() || (int)f.on_arrow.size() != D.n_arrows())
        throw Error(ErrKind::InvalidInput, "functor tables have wrong arity");
    for (Idx a = 0; a < D.n_arrows(); ++a) {
        Idx fa = f.on_arrow[a];
        if (C.src(fa) != f.on_obj[D.src(a)] || C.tgt(fa) != f.on_obj[D.tgt(a)])
            throw Error(ErrKind::InvalidInput,
                        "functor breaks src/tgt at " + D.arrows[a].name);
    }
    for (Idx x = 0; x < D.n_objects(); ++x)
        if (f.on_arrow[D.identity[x]] != C.identity[f.on_obj[x]])
            throw Error(ErrKind::InvalidInput, "functor breaks identity at " + D.objects[x]);
    for (Idx g = 0; g < D.n_arrows(); ++g)
        for (Idx fa = 0; fa < D.n_arrows(); ++fa)
            if (D.tgt(fa) == D.src(g) &&
                f.on_arrow[D.comp[g][fa]] != C.comp[f.on_arrow[g]][f.on_arrow[fa]])
                throw Error(ErrKind::InvalidInput,
                            "functor breaks composition at " + D.arrows[g].name + " . " +
                                D.arrows[fa].name);
    return f;
}

bool is_fully_faithful(const FinFunctor& f) {
    const auto& D = *f.dom;
    const auto& C = *f.cod;
    for (Idx x = 0; x < D.n_objects(); ++x)
        for (Idx y = 0; y < D.n_objects(); ++y) {
            auto hd = D.hom(x, y);
            auto hc = C.hom(f.on_obj[x], f.on_obj[y]);
            if (hd.size() != hc.size()) return false;
            std::set<Idx> image;
            for (Idx a : hd) image.insert(f.on_arrow[a]);
            if (image.size() != hd.size()) return false;
        }
    return true;
}

FinFunctor identity_functor(CategoryPtr c) {
    std::vector<Idx> oo(c->n_objects()), aa(c->n_arrows());
    std::iota(oo.begin(), oo.end(), 0);
    std::iota(aa.begin(), aa.end(), 0);
    return make_functor(c, c, std::move(oo), std::move(aa));
}

std::pair<FinCategory, FinFunctor> full_subcategory(CategoryPtr c, const std::vector<Idx>& objs) {
    std::vector<std::string> onames;
    for (Idx x : objs) onames.push_back(c->objects[x]);
    std::vector<FinCategory::Arrow> arrows;
    std::vector<Idx> big_arrow;  // id in c per small arrow
    std::vector<Idx> small_of_big(c->n_arrows(), -1);
    std::sort(onames.begin(), onames.end());
    std::vector<Idx> big_obj;  // id in c per small object (sorted order)
    for (const auto& nm : onames) big_obj.push_back(c->object_id(nm));
    auto small_obj_of = [&](Idx big) -> Idx {
        for (Idx i = 0; i < (Idx)big_obj.size(); ++i)
            if (big_obj[i] == big) return i;
        return -1;
    };
    std::vector<Idx> identity(onames.size(), -1);
    for (Idx a = 0; a < c->n_arrows(); ++a) {
        Idx sx = small_obj_of(c->src(a)), sy = small_obj_of(c->tgt(a));
        if (sx < 0 || sy < 0) continue;
        small_of_big[a] = (Idx)arrows.size();
        big_arrow.push_back(a);
        arrows.push_back({c->arrows[a].name, sx, sy});
        if (c->is_identity(a)) identity[sx] = small_of_big[a];
    }
    int na = (int)arrows.size();
    std::vector<std::vector<Idx>> comp(na, std::vector<Idx>(na, -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f)
            if (arrows[f].tgt == arrows[g].src)
                comp[g][f] = small_of_big[c->comp[big_arrow[g]][big_arrow[f]]];
    FinCategory sub = canonicalize(onames, std::move(arrows), std::move(identity), comp);
    check_category(sub);
    auto subp = std::make_shared<const FinCategory>(std::move(sub));
    // build the inclusion against the canonicalized order
    std::vector<Idx> on_obj(subp->n_objects()), on_arrow(subp->n_arrows());
    for (Idx x = 0; x < subp->n_objects(); ++x) on_obj[x] = c->object_id(subp->objects[x]);
    for (Idx a = 0; a < subp->n_arrows(); ++a) on_arrow[a] = c->arrow_id(subp->arrows[a].name);
    FinFunctor inc = make_functor(subp, c, std::move(on_obj), std::move(on_arrow));
    return {*subp, std::move(inc)};
}

//----------------------------------------------------------------------------
// built-ins

long long count_monotone_maps(int j, int k) {
    // C(j+k+1, j+1)
    long long r = 1;
    for (int i = 1; i <= j + 1; ++i) r = r * (k + 1 + i - 1) / i;
    return r;
}

namespace {

FinCategory build_simplex(int n, const Limits& lim) {
    // objects [0]..[n]; arrows all monotone maps, named by their value tuple
    std::vector<std::string> objects;
    for (int k = 0; k <= n; ++k) objects.push_back("[" + std::to_string(k) + "]");
    long long total = 0;
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) total += count_monotone_maps(j, k);
    if (total > lim.max_arrows)
        throw Error(ErrKind::SizeGuardExceeded,
                    "simplex(" + std::to_string(n) + ") has " + std::to_string(total) +
                        " arrows > " + std::to_string(lim.max_arrows));

    struct M {
        int j, k;
        std::vector<int> v;
    };
    std::vector<M> maps;
    std::map<std::vector<int>, Idx> key_to_id;  // keyed by {j,k,values...}
    std::vector<FinCategory::Arrow> arrows;
    auto name_of = [&](const M& m) {
        if (m.j == m.k) {
            bool is_id = true;
            for (int x = 0; x <= m.j; ++x)
                if (m.v[x] != x) is_id = false;
            if (is_id) return "id_[" + std::to_string(m.j) + "]";
        }
        std::string s = "m" + std::to_string(m.j) + "_" + std::to_string(m.k) + "_";
        for (int x : m.v) s += std::to_string(x);
        return s;
    };
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            std::vector<int> v(j + 1, 0);
            while (true) {
                M m{j, k, v};
                std::vector<int> key = {j, k};
                key.insert(key.end(), v.begin(), v.end());
                key_to_id[key] = (Idx)maps.size();
                maps.push_back(m);
                arrows.push_back({name_of(m), j, k});
                // next nondecreasing tuple with entries in [0,k]
                int i = j;
                while (i >= 0 && v[i] == k) --i;
                if (i < 0) break;
                int nv = v[i] + 1;
                for (int t = i; t <= j; ++t) v[t] = nv;
            }
        }
    auto id_key = [&](int j) {
        std::vector<int> key = {j, j};
        for (int t = 0; t <= j; ++t) key.push_back(t);
        return key;
    };
    std::vector<Idx> identity;
    for (int j = 0; j <= n; ++j) identity.push_back(key_to_id[id_key(j)]);
    int na = (int)arrows.size();
    std::vector<std::vector<Idx>> comp(na, std::vector<Idx>(na, -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) {
            if (maps[f].k != maps[g].j) continue;
            std::vector<int> key = {maps[f].j, maps[g].k};
            for (int x : maps[f].v) key.push_back(maps[g].v[x]);
            comp[g][f] = key_to_id.at(key);
        }
    FinCategory c = canonicalize(std::move(objects), std::move(arrows), std::move(identity), comp);
    check_category(c, lim);
    return c;
}

// Reflexive globe truncated at n. Generators s_k, t_k : g_k -> g_{k+1}
// (cosource/cotarget) and i_k : g_{k+1} -> g_k (coreflexivity), subject to
//   x_{k+1} . s_k = y_{k+1} . s_k   for x,y in {s,t}   (coglobular)
//   i_k . s_k = i_k . t_k = id
// Normal form of an arrow j -> k: lower j -> m by i's, then raise m -> k by
// a word whose composite only remembers its first letter. Encodes as
// (j, k, m, eps) with m <= min(j,k) and eps in {s,t} iff m < k.
FinCategory build_globe(int n, const Limits& lim) {
    struct G {
        int j, k, m, eps;  // eps: 0 = none, 1 = s, 2 = t
    };
    std::vector<std::string> objects;
    for (int k = 0; k <= n; ++k) objects.push_back("g" + std::to_string(k));
    std::vector<G> gs;
    std::map<std::tuple<int, int, int, int>, Idx> arrow_code;
    std::vector<FinCategory::Arrow> arrows;
    auto name_of = [&](const G& a) -> std::string {
        if (a.j == a.k && a.m == a.j) return "id_g" + std::to_string(a.j);
        std::string s;
        // raising word, outermost first: s_{k-1} ... s_{m+1} eps_m
        for (int t = a.k - 1; t > a.m; --t) s += "s" + std::to_string(t) + ".";
        if (a.m < a.k) s += (a.eps == 1 ? "s" : "t") + std::to_string(a.m) + ".";
        for (int t = a.m; t < a.j; ++t) s += "i" + std::to_string(t) + ".";
        s.pop_back();
        return s;
    };
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
            for (int m = 0; m <= std::min(j, k); ++m) {
                if (m < k) {
                    for (int e = 1; e <= 2; ++e) {
                        G a{j, k, m, e};
                        arrow_code[{j, k, m, e}] = (Idx)gs.size();
                        gs.push_back(a);
                        arrows.push_back({name_of(a), j, k});
                    }
                } else {
                    G a{j, k, m, 0};
                    arrow_code[{j, k, m, 0}] = (Idx)gs.size();
                    gs.push_back(a);
                    arrows.push_back({name_of(a), j, k});
                }
            }
    if ((int)arrows.size() > lim.max_arrows)
        throw Error(ErrKind::SizeGuardExceeded,
                    "globe(" + std::to_string(n) + ") exceeds the arrow guard");
    std::vector<Idx> identity;
    for (int j = 0; j <= n; ++j) identity.push_back(arrow_code.at({j, j, j, 0}));
    int na = (int)arrows.size();
    std::vector<std::vector<Idx>> comp(na, std::vector<Idx>(na, -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) {
            const G& a = gs[f];  // j -> k, valley at a.m
            const G& b = gs[g];  // k -> i, valley at b.m
            if (a.k != b.j) continue;
            // lowering k -> b.m cancels raises back to max(a.m, b.m); the
            // surviving first letter is a.eps when any of f's raise survives
            int eps2;
            if (b.m >= a.m)
                eps2 = b.m > a.m ? a.eps : (b.k > b.m ? b.eps : 0);
            else
                eps2 = b.k > b.m ? b.eps : 0;
            int valley = std::min(a.m, b.m);
            comp[g][f] = arrow_code.at({a.j, b.k, valley, b.k > valley ? eps2 : 0});
        }
    FinCategory c = canonicalize(std::move(objects), std::move(arrows), std::move(identity), comp);
    check_category(c, lim);
    return c;
}

FinCategory build_monoid_table(int n, const Limits& lim) {
    // cyclic monoid of order n on a single object: e_i . e_j = e_{(i+j) mod n}
    if (n < 1) throw Error(ErrKind::InvalidInput, "monoid-table needs n >= 1");
    if (n > lim.max_arrows)
        throw Error(ErrKind::SizeGuardExceeded, "monoid-table(" + std::to_string(n) + ")");
    std::vector<std::string> objects = {"m"};
    std::vector<FinCategory::Arrow> arrows;
    for (int i = 0; i < n; ++i)
        arrows.push_back({i == 0 ? "id_m" : "e" + std::to_string(i), 0, 0});
    std::vector<Idx> identity = {0};
    std::vector<std::vector<Idx>> comp(n, std::vector<Idx>(n, -1));
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) comp[g][f] = (g + f) % n;
    FinCategory c = canonicalize(std::move(objects), std::move(arrows), std::move(identity), comp);
    check_category(c, lim);
    return c;
}

} // namespace

FinCategory builtin_category(const std::string& name, int n, const Limits& lim) {
    if (n < 0) throw Error(ErrKind::InvalidInput, "builtin parameter must be >= 0");
    if (name == "simplex") return build_simplex(n, lim);
    if (name == "globe") return build_globe(n, lim);
    if (name == "chain") return poset_as_category(builtin_poset("chain", n));
    if (name == "monoid-table") return build_monoid_table(n, lim);
    if (name == "terminal") return build_monoid_table(1, lim);
    if (name == "discrete") {
        std::vector<std::string> elems;
        for (int i = 0; i < n; ++i) elems.push_back("d" + std::to_string(i));
        return poset_as_category(make_poset(std::move(elems), {}));
    }
    throw Error(ErrKind::InvalidInput, "unknown builtin category '" + name + "'");
}

FinPoset builtin_poset(const std::string& name, int n) {
    if (name == "chain") {
        std::vector<std::string> elems;
        std::vector<std::pair<std::string, std::string>> le;
        for (int i = 0; i <= n; ++i) elems.push_back("c" + std::to_string(i));
        for (int i = 0; i < n; ++i) le.push_back({elems[i], elems[i + 1]});
        return make_poset(std::move(elems), le);
    }
    if (name == "antichain") {
        std::vector<std::string> elems;
        for (int i = 0; i < n; ++i) elems.push_back("a" + std::to_string(i));
        return make_poset(std::move(elems), {});
    }
    if (name == "boolean") {
        if (n > 5) throw Error(ErrKind::SizeGuardExceeded, "boolean(" + std::to_string(n) + ")");
        int sz = 1 << n;
        std::vector<std::string> elems;
        for (int m = 0; m < sz; ++m) {
            std::string s = "b";
            for (int i = 0; i < n; ++i) s += (m >> i) & 1 ? '1' : '0';
            elems.push_back(s);
        }
        std::vector<std::pair<std::string, std::string>> le;
        for (int a = 0; a < sz; ++a)
            for (int b = 0; b < sz; ++b)
                if ((a & b) == a) le.push_back({elems[a], elems[b]});
        return make_poset(std::move(elems), le);
    }
    if (name == "diamond") {  // M3: 0 < a,b,c < 1
        return make_poset({"bot", "x", "y", "z", "top"},
                          {{"bot", "x"}, {"bot", "y"}, {"bot", "z"},
                           {"x", "top"}, {"y", "top"}, {"z", "top"}});
    }
    if (name == "pentagon") {  // N5
        return make_poset({"bot", "a", "b", "c", "top"},
                          {{"bot", "a"}, {"a", "top"}, {"bot", "b"}, {"b", "c"}, {"c", "top"}});
    }
    throw Error(ErrKind::InvalidInput, "unknown builtin poset '" + name + "'");
}

std::optional<int> builtin_object_dimension(const std::string& label) {
    std::string digits;
    for (char ch : label)
        if (ch >= '0' && ch <= '9') digits += ch;
    if (digits.empty()) return std::nullopt;
    return std::stoi(digits);
}

} // namespace tdlab
