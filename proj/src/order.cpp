#include "tdlab/order.hpp"

#include <algorithm>
#include <map>

namespace tdlab::order {

namespace {

// all down-closed subsets, in canonical (popcount, numeric) order
std::vector<Bits> enumerate_downsets(const FinPoset& p, const Limits& lim) {
    if (p.size() > lim.max_poset_for_downsets)
        throw Error(ErrKind::SizeGuardExceeded,
                    "down-set enumeration over " + std::to_string(p.size()) + " elements");
    std::vector<Bits> sets = {Bits(p.size())};
    // process elements in a linear extension, minimal elements first
    std::vector<Idx> order(p.size());
    for (int i = 0; i < p.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](Idx a, Idx b) { return p.below[a].count() < p.below[b].count(); });
    for (Idx e : order) {
        Bits strictly_below = p.below[e];
        strictly_below.reset(e);
        std::size_t cur = sets.size();
        for (std::size_t i = 0; i < cur; ++i) {
            if (strictly_below.subset_of(sets[i])) {
                Bits d = sets[i];
                d.set(e);
                sets.push_back(d);
                if ((long long)sets.size() > lim.max_downsets)
                    throw Error(ErrKind::SizeGuardExceeded, "too many down-sets");
            }
        }
    }
    std::sort(sets.begin(), sets.end(), [](const Bits& a, const Bits& b) {
        int ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return sets;
}

// subsets-of-a-poset poset: the given masks ordered by inclusion. Inclusion
// on distinct masks is a partial order by construction, so the expensive
// closure re-checks are skipped (the lattice can run to thousands of sets).
FinPoset inclusion_poset(const std::vector<Bits>& sets, const std::string& prefix) {
    int n = (int)sets.size();
    int width = 1;
    for (int t = n - 1; t >= 10; t /= 10) ++width;
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        std::string num = std::to_string(i);
        labels[i] = prefix + std::string(width - (int)num.size(), '0') + num;
    }
    FinPoset p;
    p.elems = std::move(labels);
    p.below.assign(n, Bits(n));
    p.above.assign(n, Bits(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sets[j].subset_of(sets[i])) {
                p.below[i].set(j);
                p.above[j].set(i);
            }
    return p;
}

} // namespace

Idx DownSetLattice::index_of_set(const Bits& s) const {
    for (Idx i = 0; i < (Idx)sets.size(); ++i)
        if (sets[i] == s) return i;
    throw Error(ErrKind::InternalInconsistency, "down-set not found");
}

DownSetLattice down_set_lattice(const FinPoset& base, const Limits& lim) {
    DownSetLattice d;
    d.base = std::make_shared<const FinPoset>(base);
    d.sets = enumerate_downsets(base, lim);
    d.lattice = std::make_shared<const FinPoset>(inclusion_poset(d.sets, "D"));
    std::vector<Idx> emb(base.size());
    for (Idx x = 0; x < base.size(); ++x) emb[x] = d.index_of_set(base.below[x]);
    d.embed = make_monotone(d.base, d.lattice, std::move(emb));
    return d;
}

Idx IdealCompletion::index_of_ideal(const Bits& s) const {
    for (Idx i = 0; i < (Idx)ideals.size(); ++i)
        if (ideals[i] == s) return i;
    throw Error(ErrKind::InternalInconsistency, "ideal not found");
}

IdealCompletion ideal_completion(const FinPoset& base, const Limits& lim) {
    IdealCompletion c;
    c.base = std::make_shared<const FinPoset>(base);
    for (const Bits& s : enumerate_downsets(base, lim))
        if (base.is_directed(s)) c.ideals.push_back(s);
    c.lattice = std::make_shared<const FinPoset>(inclusion_poset(c.ideals, "I"));
    std::vector<Idx> emb(base.size());
    for (Idx x = 0; x < base.size(); ++x) emb[x] = c.index_of_ideal(base.below[x]);
    c.embed = make_monotone(c.base, c.lattice, std::move(emb));
    return c;
}

//----------------------------------------------------------------------------
// adjoint solving

AdjointResult left_adjoint(const MonotoneMap& f) {
    const FinPoset& a = *f.dom;
    const FinPoset& b = *f.cod;
    std::vector<Idx> g(b.size());
    for (Idx x = 0; x < b.size(); ++x) {
        Bits candidates(a.size());
        for (Idx y = 0; y < a.size(); ++y)
            if (b.leq(x, f.map[y])) candidates.set(y);
        auto m = a.minimum_of(candidates);
        if (!m) return {std::nullopt, x};
        g[x] = *m;
    }
    if (!is_monotone(b, a, g))
        throw Error(ErrKind::InternalInconsistency, "candidate left adjoint not monotone");
    // unit/counit inequalities: x <= f(g(x)) and g(f(y)) <= y
    for (Idx x = 0; x < b.size(); ++x)
        if (!b.leq(x, f.map[g[x]]))
            throw Error(ErrKind::InternalInconsistency, "left adjoint unit fails");
    for (Idx y = 0; y < a.size(); ++y)
        if (!a.leq(g[f.map[y]], y))
            throw Error(ErrKind::InternalInconsistency, "left adjoint counit fails");
    return {make_monotone(f.cod, f.dom, std::move(g)), std::nullopt};
}

AdjointResult right_adjoint(const MonotoneMap& f) {
    const FinPoset& a = *f.dom;
    const FinPoset& b = *f.cod;
    std::vector<Idx> g(b.size());
    for (Idx x = 0; x < b.size(); ++x) {
        Bits candidates(a.size());
        for (Idx y = 0; y < a.size(); ++y)
            if (b.leq(f.map[y], x)) candidates.set(y);
        auto m = a.maximum_of(candidates);
        if (!m) return {std::nullopt, x};
        g[x] = *m;
    }
    if (!is_monotone(b, a, g))
        throw Error(ErrKind::InternalInconsistency, "candidate right adjoint not monotone");
    for (Idx x = 0; x < b.size(); ++x)
        if (!b.leq(f.map[g[x]], x))
            throw Error(ErrKind::InternalInconsistency, "right adjoint counit fails");
    for (Idx y = 0; y < a.size(); ++y)
        if (!a.leq(y, g[f.map[y]]))
            throw Error(ErrKind::InternalInconsistency, "right adjoint unit fails");
    return {make_monotone(f.cod, f.dom, std::move(g)), std::nullopt};
}

//----------------------------------------------------------------------------
// ccd

CcdReport ccd_check(const FinPoset& p, const Limits& lim) {
    CcdReport r;
    r.dn = down_set_lattice(p, lim);
    AdjointResult join = left_adjoint(r.dn.embed);
    r.complete = join.exists();
    if (!r.complete) {
        r.witness = join.failure_witness;
        return r;
    }
    r.join = join.map;
    AdjointResult tdown = left_adjoint(*r.join);
    r.ccd = tdown.exists();
    if (!r.ccd) {
        r.witness = tdown.failure_witness;
        return r;
    }
    r.totally_below = tdown.map;

    // lex: tdown preserves binary meets and the top (the empty meet).
    // meets exist since ccd implies complete; meet in Dn is intersection.
    const auto& dn = r.dn;
    const auto& td = *r.totally_below;
    Bits whole(p.size());
    for (int i = 0; i < p.size(); ++i) whole.set(i);
    Idx top = *p.maximum_of(whole);
    r.lex_ccd = dn.sets[td.map[top]] == whole;
    for (Idx x = 0; x < p.size() && r.lex_ccd; ++x)
        for (Idx y = 0; y < p.size() && r.lex_ccd; ++y) {
            Idx m = *p.meet_of([&] {
                Bits s(p.size());
                s.set(x);
                s.set(y);
                return s;
            }());
            if ((dn.sets[td.map[x]] & dn.sets[td.map[y]]) != dn.sets[td.map[m]])
                r.lex_ccd = false;
        }
    return r;
}

bool is_lattice(const FinPoset& p, std::string* witness_pair) {
    if (p.size() == 0) {
        if (witness_pair) *witness_pair = "(empty poset)";
        return false;
    }
    for (Idx x = 0; x < p.size(); ++x)
        for (Idx y = x; y < p.size(); ++y) {
            Bits s(p.size());
            s.set(x);
            s.set(y);
            if (!p.join_of(s) || !p.meet_of(s)) {
                if (witness_pair) *witness_pair = "(" + p.elems[x] + ", " + p.elems[y] + ")";
                return false;
            }
        }
    return true;
}

DistributivityResult distributivity_oracle(const FinPoset& p) {
    std::string w;
    if (!is_lattice(p, &w))
        throw Error(ErrKind::NotALattice, w + " lacks a meet or join");
    auto meet2 = [&](Idx x, Idx y) {
        Bits s(p.size());
        s.set(x);
        s.set(y);
        return *p.meet_of(s);
    };
    auto join2 = [&](Idx x, Idx y) {
        Bits s(p.size());
        s.set(x);
        s.set(y);
        return *p.join_of(s);
    };
    for (Idx x = 0; x < p.size(); ++x)
        for (Idx y = 0; y < p.size(); ++y)
            for (Idx z = 0; z < p.size(); ++z)
                if (meet2(x, join2(y, z)) != join2(meet2(x, y), meet2(x, z)))
                    return {false, std::array<Idx, 3>{x, y, z}};
    return {true, std::nullopt};
}

//----------------------------------------------------------------------------
// way-below / continuity

WayBelowResult way_below(const FinPoset& p, const Limits& lim) {
    IdealCompletion idl = ideal_completion(p, lim);
    std::vector<Idx> joins(idl.ideals.size());
    for (std::size_t i = 0; i < idl.ideals.size(); ++i) {
        auto j = p.join_of(idl.ideals[i]);
        if (!j) throw Error(ErrKind::InternalInconsistency, "directed set without a join");
        joins[i] = *j;
    }
    WayBelowResult r;
    r.rel.assign(p.size(), Bits(p.size()));
    for (Idx y = 0; y < p.size(); ++y)
        for (Idx x = 0; x < p.size(); ++x) {
            bool wb = true;
            for (std::size_t i = 0; i < idl.ideals.size() && wb; ++i)
                if (p.leq(y, joins[i]) && !idl.ideals[i].test(x)) wb = false;
            if (wb) r.rel[y].set(x);
        }
    r.equals_leq = true;
    for (Idx y = 0; y < p.size() && r.equals_leq; ++y)
        if (r.rel[y] != p.below[y]) r.equals_leq = false;
    return r;
}

ContinuityResult continuity_check(const FinPoset& p, const Limits& lim) {
    ContinuityResult r;
    r.idl = ideal_completion(p, lim);
    AdjointResult join = left_adjoint(r.idl.embed);
    if (!join.exists()) return r;  // not even a dcpo-with-joins presentation
    r.join = join.map;
    AdjointResult tdown = left_adjoint(*r.join);
    r.continuous = tdown.exists();
    if (!r.continuous) return r;
    r.totally_below = tdown.map;
    WayBelowResult wb = way_below(p, lim);
    r.agrees_with_way_below = true;
    for (Idx y = 0; y < p.size(); ++y)
        if (r.idl.ideals[r.totally_below->map[y]] != wb.rel[y]) r.agrees_with_way_below = false;
    return r;
}

//----------------------------------------------------------------------------
// Scott opens / duality

Idx ScottFrame::index_of_open(const Bits& s) const {
    for (Idx i = 0; i < (Idx)opens.size(); ++i)
        if (opens[i] == s) return i;
    throw Error(ErrKind::InternalInconsistency, "open not found");
}

Idx ScottFrame::meet(Idx a, Idx b) const { return index_of_open(opens[a] & opens[b]); }

Idx ScottFrame::join(const std::vector<Idx>& xs) const {
    Bits u(base->size());
    for (Idx x : xs) u |= opens[x];
    return index_of_open(u);
}

Idx ScottFrame::top() const {
    Bits whole(base->size());
    for (int i = 0; i < base->size(); ++i) whole.set(i);
    return index_of_open(whole);
}

Idx ScottFrame::bottom() const { return index_of_open(Bits(base->size())); }

ScottFrame scott_opens(const FinPoset& p, const Limits& lim) {
    // up-sets of p = down-sets of p^op; reuse the enumerator on the dual
    FinPoset dual;
    dual.elems = p.elems;
    dual.below = p.above;
    dual.above = p.below;
    ScottFrame f;
    f.base = std::make_shared<const FinPoset>(p);
    f.opens = enumerate_downsets(dual, lim);
    f.lattice = std::make_shared<const FinPoset>(inclusion_poset(f.opens, "U"));
    return f;
}

std::vector<Idx> frame_points(const ScottFrame& f) {
    // A map p : opens -> 2 preserving finite meets (including the empty one)
    // has p^{-1}(1) a filter, principal in a finite lattice, so p = [a <= -];
    // preservation of all joins then says exactly that `a` is join-prime.
    const FinPoset& lat = *f.lattice;
    std::vector<Idx> points;
    Idx bot = f.bottom();
    for (Idx a = 0; a < lat.size(); ++a) {
        if (a == bot) continue;  // empty join
        bool prime = true;
        for (Idx x = 0; x < lat.size() && prime; ++x)
            for (Idx y = 0; y < lat.size() && prime; ++y) {
                Bits u = f.opens[x] | f.opens[y];
                if (f.opens[a].subset_of(u) && !f.opens[a].subset_of(f.opens[x]) &&
                    !f.opens[a].subset_of(f.opens[y]))
                    prime = false;
            }
        if (prime) points.push_back(a);
    }
    return points;
}

DualityReport duality_check(const FinPoset& p, const Limits& lim) {
    DualityReport rep;
    ScottFrame f = scott_opens(p, lim);
    // the opens lattice can exceed the element guard meant for user posets;
    // the down-set count guard still protects the inner check
    Limits inner = lim;
    inner.max_poset_for_downsets = std::max(inner.max_poset_for_downsets, f.lattice->size());
    CcdReport cc = ccd_check(*f.lattice, inner);
    rep.opens_ccd = cc.ccd;
    if (!rep.opens_ccd) rep.counterexamples.push_back("opens fail ccd");

    std::vector<Idx> pts = frame_points(f);
    rep.n_points = (int)pts.size();
    // canonical comparison x |-> point with filter { U : x in U } = [up(x) <= -]
    std::vector<Idx> canon(p.size(), -1);
    bool ok = (int)pts.size() == p.size();
    for (Idx x = 0; x < p.size(); ++x) {
        Idx ux = f.index_of_open(p.above[x]);
        bool found = false;
        for (Idx a : pts)
            if (a == ux) found = true;
        if (!found) {
            ok = false;
            rep.counterexamples.push_back("element " + p.elems[x] + " is not a frame point");
        }
        canon[x] = ux;
    }
    // injectivity and order agreement: point order is pointwise, i.e.
    // [a <= -] <= [b <= -] iff b <= a in the frame
    for (Idx x = 0; x < p.size() && ok; ++x)
        for (Idx y = 0; y < p.size() && ok; ++y) {
            bool pointwise = f.opens[canon[y]].subset_of(f.opens[canon[x]]);
            if (pointwise != p.leq(x, y)) {
                ok = false;
                rep.counterexamples.push_back("order mismatch at (" + p.elems[x] + ", " +
                                              p.elems[y] + ")");
            }
        }
    if ((int)pts.size() != p.size()) {
        ok = false;
        rep.counterexamples.push_back("point count " + std::to_string(pts.size()) +
                                      " != " + std::to_string(p.size()));
    }
    rep.points_iso = ok;
    return rep;
}

//----------------------------------------------------------------------------
// transfer

namespace {

bool same_poset(const FinPoset& a, const FinPoset& b) {
    if (&a == &b) return true;
    if (a.elems != b.elems) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a.below[i] != b.below[i]) return false;
    return true;
}

void require_adjoint_pair(const MonotoneMap& l, const MonotoneMap& r, const std::string& label) {
    // l -| r with l : B -> A, r : A -> B
    const FinPoset& a = *l.cod;
    const FinPoset& b = *l.dom;
    for (Idx x = 0; x < b.size(); ++x)
        for (Idx y = 0; y < a.size(); ++y) {
            bool lhs = a.leq(l.map[x], y);
            bool rhs = b.leq(x, r.map[y]);
            if (lhs != rhs)
                throw Error(ErrKind::AdjunctionViolation,
                            label + " fails at (" + b.elems[x] + ", " + a.elems[y] + ")");
        }
}

} // namespace

TransferReport transfer_ccd(const MonotoneMap& q, const MonotoneMap& r, const MonotoneMap& s,
                            const Limits& lim) {
    if (!same_poset(*q.dom, *s.dom) || !same_poset(*q.cod, *s.cod) ||
        !same_poset(*r.dom, *q.cod) || !same_poset(*r.cod, *q.dom))
        throw Error(ErrKind::InvalidInput, "triple endpoints do not line up as D <-> E");
    require_adjoint_pair(q, r, "q -| r");
    require_adjoint_pair(r, s, "r -| s");
    if (!is_order_embedding(q))
        throw Error(ErrKind::AdjunctionViolation, "q is not an order-embedding");
    if (!is_order_embedding(s))
        throw Error(ErrKind::AdjunctionViolation, "s is not an order-embedding");
    TransferReport rep;
    rep.cod_report = ccd_check(*q.cod, lim);
    rep.dom_report = ccd_check(*q.dom, lim);
    rep.implication_holds = !rep.cod_report.ccd || rep.dom_report.ccd;
    return rep;
}

//----------------------------------------------------------------------------
// generator restriction

GeneratorRestriction generator_restriction(const FinPoset& e, const Bits& generators,
                                           const Limits& lim) {
    auto ep = std::make_shared<const FinPoset>(e);
    // join-density: v = join of the generators below v
    for (Idx v = 0; v < e.size(); ++v) {
        Bits below_gen = e.below[v] & generators;
        auto j = e.join_of(below_gen);
        if (!j || *j != v)
            throw Error(ErrKind::NotJoinDense, "element " + e.elems[v]);
    }
    // the sub-poset on the generators
    std::vector<Idx> gen = generators.members();
    std::vector<std::string> glabels;
    for (Idx g : gen) glabels.push_back(e.elems[g]);
    int ng = (int)gen.size();
    std::vector<Bits> below(ng, Bits(ng));
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < ng; ++j)
            if (e.leq(gen[j], gen[i])) below[i].set(j);
    FinPoset gposet = make_poset_from_relation(std::move(glabels), below);

    GeneratorRestriction res;
    res.dn_g = down_set_lattice(gposet, lim);
    const auto& dn = res.dn_g;

    auto restrict_to_g = [&](const Bits& subset_of_e) {
        Bits s(ng);
        for (int i = 0; i < ng; ++i)
            if (subset_of_e.test(gen[i])) s.set(i);
        return s;
    };

    // y'(v) = down(v) ∩ G
    std::vector<Idx> yprime(e.size());
    for (Idx v = 0; v < e.size(); ++v)
        yprime[v] = dn.index_of_set(restrict_to_g(e.below[v]));
    res.y_prime = make_monotone(ep, dn.lattice, std::move(yprime));

    // c'(D) = join of D in E
    std::vector<Idx> cprime(dn.sets.size());
    bool c_total = true;
    for (std::size_t d = 0; d < dn.sets.size(); ++d) {
        Bits in_e(e.size());
        for (int i = 0; i < ng; ++i)
            if (dn.sets[d].test(i)) in_e.set(gen[i]);
        auto j = e.join_of(in_e);
        if (!j) {
            c_total = false;
            break;
        }
        cprime[d] = *j;
    }
    CcdReport cc = ccd_check(e, lim);
    res.base_ccd = cc.ccd;
    if (!c_total) return res;
    res.c_prime = make_monotone(dn.lattice, ep, std::move(cprime));

    // c' -| y' holds whenever c' is total: verify exhaustively
    res.c_adj_y = true;
    for (Idx d = 0; d < dn.lattice->size(); ++d)
        for (Idx v = 0; v < e.size(); ++v)
            if (e.leq(res.c_prime->map[d], v) != dn.lattice->leq(d, res.y_prime.map[v]))
                res.c_adj_y = false;

    // t' two ways: adjoint solver against c', and the tdown-restriction formula
    AdjointResult t = left_adjoint(*res.c_prime);
    if (t.exists()) res.t_prime = t.map;
    if (cc.ccd) {
        std::vector<Idx> tform(e.size());
        bool formula_ok = true;
        for (Idx v = 0; v < e.size(); ++v) {
            Bits restricted = restrict_to_g(cc.dn.sets[cc.totally_below->map[v]]);
            bool found = false;
            for (Idx d = 0; d < (Idx)dn.sets.size(); ++d)
                if (dn.sets[d] == restricted) {
                    tform[v] = d;
                    found = true;
                    break;
                }
            if (!found) formula_ok = false;
        }
        if (formula_ok)
            res.t_from_tdown = make_monotone(ep, dn.lattice, std::move(tform));
    }
    if (res.t_prime) {
        res.t_adj_c = true;
        for (Idx v = 0; v < e.size(); ++v)
            for (Idx d = 0; d < dn.lattice->size(); ++d)
                if (dn.lattice->leq(res.t_prime->map[v], d) != e.leq(v, res.c_prime->map[d]))
                    res.t_adj_c = false;
    }
    res.routes_agree = res.t_prime && res.t_from_tdown && res.t_prime->map == res.t_from_tdown->map;
    return res;
}

} // namespace tdlab::order
