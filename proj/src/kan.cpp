#include "tdlab/kan.hpp"

#include <algorithm>

#include "tdlab/order.hpp"

namespace tdlab::kan {

using psh::NatTrans;
using psh::Presheaf;

namespace {

std::string pad_label(const char* prefix, int i, int total) {
    int width = 1;
    for (int t = total - 1; t >= 10; t /= 10) ++width;
    std::string num = std::to_string(i);
    return prefix + std::string(std::max(0, width - (int)num.size()), '0') + num;
}

// position of the identity of z inside the values of yoneda(c, z) at z
Idx identity_position(const FinCategory& c, const Presheaf& yz, Idx z) {
    const std::string& idname = c.arrows[c.identity[z]].name;
    for (Idx i = 0; i < yz.size_at(z); ++i)
        if (yz.at[z][i] == idname) return i;
    throw Error(ErrKind::InternalInconsistency, "identity missing from representable");
}

// the natural transformation y(src f) -> y(tgt f) given by postcomposition
NatTrans postcompose_nat(const FinCategory& c, Idx f, const Presheaf& ysrc,
                         const Presheaf& ytgt) {
    NatTrans t;
    t.comp.resize(c.n_objects());
    for (Idx z = 0; z < c.n_objects(); ++z) {
        auto hom_tgt = c.hom(z, c.tgt(f));
        for (Idx i = 0; i < ysrc.size_at(z); ++i) {
            Idx h = c.arrow_id(ysrc.at[z][i]);
            Idx fh = c.comp[f][h];
            Idx pos = -1;
            for (std::size_t k = 0; k < hom_tgt.size(); ++k)
                if (hom_tgt[k] == fh) pos = (Idx)k;
            if (pos < 0) throw Error(ErrKind::InternalInconsistency, "postcompose escaped hom");
            t.comp[z].push_back(pos);
        }
    }
    if (!is_natural(ysrc, ytgt, t))
        throw Error(ErrKind::InternalInconsistency, "postcomposition not natural");
    return t;
}

} // namespace

//----------------------------------------------------------------------------
// formal colimits

void check_formal_colimit(const FormalColimit& x) {
    const FinCategory& s = *x.shape;
    if ((int)x.vertex.size() != s.n_objects() || (int)x.edge.size() != s.n_arrows())
        throw Error(ErrKind::InvalidInput, "formal colimit tables have wrong arity");
    for (const Presheaf& p : x.vertex)
        if (!same_category(*p.base, *x.base))
            throw Error(ErrKind::InvalidInput, "vertex presheaf over the wrong base");
    for (Idx a = 0; a < s.n_arrows(); ++a)
        if (!is_natural(x.vertex[s.src(a)], x.vertex[s.tgt(a)], x.edge[a]))
            throw Error(ErrKind::InvalidInput, "formal colimit edge is not natural");
    for (Idx v = 0; v < s.n_objects(); ++v)
        if (!psh::nat_equal(x.edge[s.identity[v]], psh::identity_nat(x.vertex[v])))
            throw Error(ErrKind::InvalidInput, "formal colimit identity edge is not identity");
    for (Idx g = 0; g < s.n_arrows(); ++g)
        for (Idx f = 0; f < s.n_arrows(); ++f)
            if (s.tgt(f) == s.src(g) &&
                !psh::nat_equal(x.edge[s.comp[g][f]],
                                psh::vertical_compose(x.edge[g], x.edge[f])))
                throw Error(ErrKind::InvalidInput, "formal colimit diagram not functorial");
}

FormalColimit big_representable(const Presheaf& f) {
    FormalColimit x;
    x.base = f.base;
    x.shape = std::make_shared<const FinCategory>(builtin_category("terminal", 0));
    x.vertex = {f};
    x.edge = {psh::identity_nat(f)};
    x.name = "y[" + f.name + "]";
    check_formal_colimit(x);
    return x;
}

FormalColimit empty_colimit(CategoryPtr base) {
    FormalColimit x;
    x.base = base;
    RawCategory raw;
    x.shape = std::make_shared<const FinCategory>(validate_category(raw));
    x.name = "initial";
    check_formal_colimit(x);
    return x;
}

FormalColimit coproduct_colimit(const Presheaf& f, const Presheaf& g) {
    FormalColimit x;
    x.base = f.base;
    x.shape = std::make_shared<const FinCategory>(builtin_category("discrete", 2));
    x.vertex = {f, g};
    x.edge.resize(2);
    x.edge[x.shape->identity[0]] = psh::identity_nat(x.vertex[0]);
    x.edge[x.shape->identity[1]] = psh::identity_nat(x.vertex[1]);
    x.name = "y[" + f.name + "]+y[" + g.name + "]";
    check_formal_colimit(x);
    return x;
}

//----------------------------------------------------------------------------
// restriction and right Kan extension

Presheaf restrict_presheaf(const FinFunctor& i, const Presheaf& f) {
    if (!same_category(*i.cod, *f.base))
        throw Error(ErrKind::InvalidInput, "restriction along a functor into another base");
    Presheaf r;
    r.base = i.dom;
    r.name = f.name + "|";
    r.at.resize(i.dom->n_objects());
    for (Idx g = 0; g < i.dom->n_objects(); ++g) r.at[g] = f.at[i.ob(g)];
    r.act.resize(i.dom->n_arrows());
    for (Idx a = 0; a < i.dom->n_arrows(); ++a) r.act[a] = f.act[i.mor(a)];
    psh::check_presheaf(r);
    return r;
}

RanResult ran(const FinFunctor& i, const Presheaf& p, const Limits& lim) {
    if (!same_category(*i.dom, *p.base))
        throw Error(ErrKind::InvalidInput, "ran of a presheaf over the wrong base");
    if (!is_fully_faithful(i))
        throw Error(ErrKind::NotFullyFaithful, "ran requires a fully faithful functor");
    const FinCategory& e = *i.cod;

    std::vector<Presheaf> restricted;  // restrict(i, y(e)) per object e
    std::vector<std::vector<NatTrans>> nats;
    for (Idx obj = 0; obj < e.n_objects(); ++obj) {
        restricted.push_back(restrict_presheaf(i, psh::yoneda(i.cod, obj)));
        nats.push_back(psh::nat_trans_set(restricted.back(), p, lim));
    }
    Presheaf r;
    r.base = i.cod;
    r.name = "ran(" + p.name + ")";
    r.at.resize(e.n_objects());
    for (Idx obj = 0; obj < e.n_objects(); ++obj)
        for (std::size_t k = 0; k < nats[obj].size(); ++k)
            r.at[obj].push_back(pad_label("t", (int)k, (int)nats[obj].size()));
    r.act.resize(e.n_arrows());
    for (Idx f = 0; f < e.n_arrows(); ++f) {
        Idx es = e.src(f), et = e.tgt(f);
        NatTrans post = postcompose_nat(e, f, psh::yoneda(i.cod, es), psh::yoneda(i.cod, et));
        // restrict the postcomposition to the subcategory
        NatTrans post_r;
        post_r.comp.resize(i.dom->n_objects());
        for (Idx g = 0; g < i.dom->n_objects(); ++g) post_r.comp[g] = post.comp[i.ob(g)];
        for (const NatTrans& alpha : nats[et])
            r.act[f].push_back(psh::nat_index_in(nats[es], psh::vertical_compose(alpha, post_r)));
    }
    psh::check_presheaf(r);

    // counit: restrict(i, ran P)(g) -> P(g), alpha |-> alpha_g(id at i(g))
    bool iso = true;
    for (Idx g = 0; g < i.dom->n_objects(); ++g) {
        Idx ig = i.ob(g);
        // position of id_{i g} inside restricted[ig].at[g] = hom(i g, i g)
        Idx pos = -1;
        const std::string& idname = e.arrows[e.identity[ig]].name;
        for (Idx k = 0; k < restricted[ig].size_at(g); ++k)
            if (restricted[ig].at[g][k] == idname) pos = k;
        if (pos < 0) throw Error(ErrKind::InternalInconsistency, "identity missing");
        std::vector<bool> hit(p.size_at(g), false);
        if ((int)nats[ig].size() != p.size_at(g)) iso = false;
        for (const NatTrans& alpha : nats[ig]) {
            Idx v = alpha.comp[g][pos];
            if (v < 0 || v >= p.size_at(g) || hit[v]) {
                iso = false;
                break;
            }
            hit[v] = true;
        }
    }
    return {std::move(r), iso};
}

//----------------------------------------------------------------------------
// lan along yoneda

FormalColimit lan_along_yoneda(const Presheaf& e) {
    psh::ElementsCategory el = psh::elements_category(e);
    const FinCategory& c = *e.base;
    FormalColimit x;
    x.base = e.base;
    x.shape = std::make_shared<const FinCategory>(el.cat);
    x.name = "lan[" + e.name + "]";
    std::vector<Presheaf> reps;
    for (Idx z = 0; z < c.n_objects(); ++z) reps.push_back(psh::yoneda(e.base, z));
    for (Idx v = 0; v < x.shape->n_objects(); ++v) x.vertex.push_back(reps[el.vertex[v].first]);
    for (Idx a = 0; a < x.shape->n_arrows(); ++a) {
        Idx vs = x.shape->src(a), vt = x.shape->tgt(a);
        Idx zs = el.vertex[vs].first, zt = el.vertex[vt].first;
        if (x.shape->is_identity(a)) {
            x.edge.push_back(psh::identity_nat(reps[zs]));
            continue;
        }
        // the underlying base arrow: the element-category arrow label is
        // "<arrow>@<element>"
        const std::string& nm = x.shape->arrows[a].name;
        std::string base_arrow = nm.substr(0, nm.find('@'));
        Idx f = c.arrow_id(base_arrow);
        x.edge.push_back(postcompose_nat(c, f, reps[zs], reps[zt]));
    }
    check_formal_colimit(x);
    return x;
}

//----------------------------------------------------------------------------
// pointwise colimits

Idx ColimitResult::class_of(Idx obj, Idx vtx, Idx elem) const {
    auto it = cls[obj].find({vtx, elem});
    if (it == cls[obj].end())
        throw Error(ErrKind::InternalInconsistency, "pair not in colimit table");
    return it->second;
}

ColimitResult colimit_of(const FormalColimit& x) {
    const FinCategory& c = *x.base;
    const FinCategory& s = *x.shape;
    ColimitResult out;
    out.colim.base = x.base;
    out.colim.name = "c[" + x.name + "]";
    out.colim.at.resize(c.n_objects());
    out.reps.resize(c.n_objects());
    out.cls.resize(c.n_objects());

    for (Idx z = 0; z < c.n_objects(); ++z) {
        std::vector<std::pair<Idx, Idx>> items;
        std::map<std::pair<Idx, Idx>, int> pos;
        for (Idx v = 0; v < s.n_objects(); ++v)
            for (Idx i = 0; i < x.vertex[v].size_at(z); ++i) {
                pos[{v, i}] = (int)items.size();
                items.push_back({v, i});
            }
        UnionFind uf((int)items.size());
        for (Idx a = 0; a < s.n_arrows(); ++a) {
            Idx vs = s.src(a), vt = s.tgt(a);
            for (Idx i = 0; i < x.vertex[vs].size_at(z); ++i)
                uf.unite(pos.at({vs, i}), pos.at({vt, x.edge[a].comp[z][i]}));
        }
        std::vector<Idx> cls_of(items.size(), -1);
        for (int k = 0; k < (int)items.size(); ++k) {
            int root = uf.find(k);
            if (cls_of[root] < 0) {
                cls_of[root] = (Idx)out.reps[z].size();
                out.reps[z].push_back(items[root]);
            }
            out.cls[z][items[k]] = cls_of[root];
        }
        int ncl = (int)out.reps[z].size();
        for (int k = 0; k < ncl; ++k) out.colim.at[z].push_back(pad_label("q", k, ncl));
    }
    out.colim.act.resize(c.n_arrows());
    for (Idx f = 0; f < c.n_arrows(); ++f) {
        Idx zs = c.src(f), zt = c.tgt(f);
        for (const auto& [v, i] : out.reps[zt])
            out.colim.act[f].push_back(out.class_of(zs, v, x.vertex[v].act[f][i]));
        // well-definedness across whole classes
        for (const auto& [key, k] : out.cls[zt]) {
            auto [v, i] = key;
            if (out.class_of(zs, v, x.vertex[v].act[f][i]) != out.colim.act[f][k])
                throw Error(ErrKind::InternalInconsistency, "colimit action ill-defined");
        }
    }
    psh::check_presheaf(out.colim);
    for (Idx v = 0; v < s.n_objects(); ++v) {
        NatTrans inj;
        inj.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z)
            for (Idx i = 0; i < x.vertex[v].size_at(z); ++i)
                inj.comp[z].push_back(out.class_of(z, v, i));
        if (!is_natural(x.vertex[v], out.colim, inj))
            throw Error(ErrKind::InternalInconsistency, "colimit injection not natural");
        out.inj.push_back(std::move(inj));
    }
    return out;
}

//----------------------------------------------------------------------------
// big homs

Idx BigHomCtx::class_of(Idx i, Idx j, Idx nat_index) const {
    auto it = cls[i].find({j, nat_index});
    if (it == cls[i].end())
        throw Error(ErrKind::InternalInconsistency, "transformation not in big-hom table");
    return it->second;
}

Idx BigHomCtx::element_index(const std::vector<Idx>& family) const {
    for (Idx k = 0; k < (Idx)elements.size(); ++k)
        if (elements[k] == family) return k;
    throw Error(ErrKind::InternalInconsistency, "family not in the enumerated hom-set");
}

BigHomCtx big_hom(const FormalColimit& x, const FormalColimit& y, const Limits& lim) {
    if (!same_category(*x.base, *y.base))
        throw Error(ErrKind::InvalidInput, "big hom across bases");
    BigHomCtx ctx;
    ctx.x = x;
    ctx.y = y;
    const FinCategory& sx = *x.shape;
    const FinCategory& sy = *y.shape;
    int nx = sx.n_objects(), ny = sy.n_objects();

    ctx.nat_sets.assign(nx, {});
    ctx.reps.resize(nx);
    ctx.cls.resize(nx);
    for (Idx i = 0; i < nx; ++i) {
        ctx.nat_sets[i].resize(ny);
        std::vector<std::pair<Idx, Idx>> items;
        std::map<std::pair<Idx, Idx>, int> pos;
        for (Idx j = 0; j < ny; ++j) {
            ctx.nat_sets[i][j] = psh::nat_trans_set(x.vertex[i], y.vertex[j], lim);
            for (Idx k = 0; k < (Idx)ctx.nat_sets[i][j].size(); ++k) {
                pos[{j, k}] = (int)items.size();
                items.push_back({j, k});
            }
        }
        // colimit over the target shape: alpha ~ edge . alpha
        UnionFind uf((int)items.size());
        for (Idx a = 0; a < sy.n_arrows(); ++a) {
            Idx js = sy.src(a), jt = sy.tgt(a);
            for (Idx k = 0; k < (Idx)ctx.nat_sets[i][js].size(); ++k) {
                NatTrans pushed = psh::vertical_compose(y.edge[a], ctx.nat_sets[i][js][k]);
                Idx k2 = psh::nat_index_in(ctx.nat_sets[i][jt], pushed);
                uf.unite(pos.at({js, k}), pos.at({jt, k2}));
            }
        }
        std::vector<Idx> cls_of(items.size(), -1);
        for (int k = 0; k < (int)items.size(); ++k) {
            int root = uf.find(k);
            if (cls_of[root] < 0) {
                cls_of[root] = (Idx)ctx.reps[i].size();
                ctx.reps[i].push_back(items[root]);
            }
            ctx.cls[i][items[k]] = cls_of[root];
        }
    }

    // transfer along a source-shape arrow d : i -> i': precompose the edge
    std::vector<std::vector<Idx>> transfer(sx.n_arrows());
    for (Idx d = 0; d < sx.n_arrows(); ++d) {
        Idx is = sx.src(d), it = sx.tgt(d);
        for (std::size_t k = 0; k < ctx.reps[it].size(); ++k) {
            auto [j, ni] = ctx.reps[it][k];
            NatTrans pulled = psh::vertical_compose(ctx.nat_sets[it][j][ni], x.edge[d]);
            transfer[d].push_back(ctx.class_of(is, j, psh::nat_index_in(ctx.nat_sets[is][j], pulled)));
        }
        // well-definedness on every member
        for (const auto& [key, k] : ctx.cls[it]) {
            auto [j, ni] = key;
            NatTrans pulled = psh::vertical_compose(ctx.nat_sets[it][j][ni], x.edge[d]);
            if (ctx.class_of(is, j, psh::nat_index_in(ctx.nat_sets[is][j], pulled)) !=
                transfer[d][k])
                throw Error(ErrKind::InternalInconsistency, "big-hom transfer ill-defined");
        }
    }

    // guard on the family space
    long long space = 1;
    for (Idx i = 0; i < nx; ++i) {
        space = ctx.reps[i].empty() ? 0 : space * (long long)ctx.reps[i].size();
        if (space > lim.max_families)
            throw Error(ErrKind::SizeGuardExceeded, "big-hom family space");
        if (space == 0) break;
    }

    // choose a processing order that makes forced vertices cheap: a vertex
    // with an arrow into an already-processed one is determined by it
    std::vector<Idx> order;
    std::vector<std::pair<Idx, Idx>> forced_by(nx, {-1, -1});  // (arrow, position of target)
    std::vector<bool> done(nx, false);
    for (int step = 0; step < nx; ++step) {
        Idx pick = -1;
        for (Idx v = 0; v < nx && pick < 0; ++v) {
            if (done[v]) continue;
            for (Idx d = 0; d < sx.n_arrows() && pick < 0; ++d)
                if (sx.src(d) == v && done[sx.tgt(d)]) {
                    pick = v;
                    forced_by[v] = {d, sx.tgt(d)};
                }
        }
        if (pick < 0) {
            std::size_t best = SIZE_MAX;
            for (Idx v = 0; v < nx; ++v)
                if (!done[v] && ctx.reps[v].size() < best) {
                    best = ctx.reps[v].size();
                    pick = v;
                }
        }
        done[pick] = true;
        order.push_back(pick);
    }
    std::vector<int> pos_in_order(nx);
    for (int k = 0; k < nx; ++k) pos_in_order[order[k]] = k;
    // constraints checked as soon as both endpoints are assigned
    std::vector<std::vector<Idx>> check_at(nx);
    for (Idx d = 0; d < sx.n_arrows(); ++d) {
        int at = std::max(pos_in_order[sx.src(d)], pos_in_order[sx.tgt(d)]);
        check_at[at].push_back(d);
    }

    std::vector<Idx> family(nx, -1);
    std::function<void(int)> rec = [&](int step) {
        if (step == nx) {
            ctx.elements.push_back(family);
            return;
        }
        Idx v = order[step];
        auto try_value = [&](Idx val) {
            family[v] = val;
            for (Idx d : check_at[step])
                if (family[sx.src(d)] != transfer[d][family[sx.tgt(d)]]) return;
            rec(step + 1);
        };
        if (forced_by[v].first >= 0) {
            try_value(transfer[forced_by[v].first][family[forced_by[v].second]]);
        } else {
            for (Idx val = 0; val < (Idx)ctx.reps[v].size(); ++val) try_value(val);
        }
        family[v] = -1;
    };
    if (nx == 0)
        ctx.elements.push_back({});
    else
        rec(0);
    return ctx;
}

//----------------------------------------------------------------------------
// logs

void VerificationLog::add(std::string check, bool ok, std::string detail) {
    entries.push_back({std::move(check), ok, std::move(detail)});
}

bool VerificationLog::all_ok() const {
    for (const auto& e : entries)
        if (!e.ok) return false;
    return true;
}

std::string VerificationLog::first_failure() const {
    for (const auto& e : entries)
        if (!e.ok) return e.check + (e.detail.empty() ? "" : " (" + e.detail + ")");
    return "";
}

//----------------------------------------------------------------------------
// the totally distributive witness

TdWitness td_witness(CategoryPtr base, const std::vector<Presheaf>& user_samples,
                     const Limits& lim, bool throw_on_failure) {
    TdWitness out;
    out.witness.subject = "presheaves over a category with " +
                          std::to_string(base->n_objects()) + " objects";
    VerificationLog& log = out.witness.log;

    std::vector<Presheaf> samples = psh::standard_presheaf_samples(base);
    for (const Presheaf& u : user_samples) {
        psh::check_presheaf(u);
        samples.push_back(u);
    }

    out.t = [](const Presheaf& e) { return lan_along_yoneda(e); };
    out.c = [](const FormalColimit& y) { return colimit_of(y).colim; };
    out.y = [](const Presheaf& f) { return big_representable(f); };

    std::vector<FormalColimit> formal;
    for (const Presheaf& f : samples) formal.push_back(big_representable(f));
    formal.push_back(empty_colimit(base));
    formal.push_back(coproduct_colimit(samples[0], samples[0]));

    const FinCategory& c = *base;
    std::vector<Presheaf> reps;
    for (Idx z = 0; z < c.n_objects(); ++z) reps.push_back(psh::yoneda(base, z));
    std::vector<Idx> idpos(c.n_objects());
    for (Idx z = 0; z < c.n_objects(); ++z) idpos[z] = identity_position(c, reps[z], z);

    // canonical map big_hom(t E, Y) -> Nat(E, c Y), via Yoneda at each vertex
    auto to_nat = [&](const BigHomCtx& ctx, const Presheaf& e, const psh::ElementsCategory& el,
                      const ColimitResult& cy, const std::vector<Idx>& family) {
        NatTrans out_nat;
        out_nat.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z) {
            for (Idx xi = 0; xi < e.size_at(z); ++xi) {
                Idx v = el.vertex_id(z, xi);
                auto [j, ni] = ctx.reps[v][family[v]];
                const NatTrans& alpha = ctx.nat_sets[v][j][ni];
                Idx q = alpha.comp[z][idpos[z]];
                out_nat.comp[z].push_back(cy.class_of(z, j, q));
            }
        }
        return out_nat;
    };

    // unit of t -| c at E: E -> c(t E)
    auto unit_tc = [&](const Presheaf& e, const psh::ElementsCategory& el,
                      const ColimitResult& cte) {
        NatTrans t;
        t.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z)
            for (Idx xi = 0; xi < e.size_at(z); ++xi)
                t.comp[z].push_back(cte.class_of(z, el.vertex_id(z, xi), idpos[z]));
        return t;
    };

    // counit of t -| c at a formal colimit Y: the preimage of the identity
    // under the canonical bijection big_hom(t(c Y), Y) -> Nat(c Y, c Y)
    auto counit_tc = [&](const FormalColimit& y, const ColimitResult& cy)
        -> std::pair<BigHomCtx, std::optional<std::vector<Idx>>> {
        FormalColimit tcy = lan_along_yoneda(cy.colim);
        psh::ElementsCategory el = psh::elements_category(cy.colim);
        BigHomCtx ctx = big_hom(tcy, y, lim);
        NatTrans id = psh::identity_nat(cy.colim);
        for (const auto& fam : ctx.elements)
            if (psh::nat_equal(to_nat(ctx, cy.colim, el, cy, fam), id))
                return {std::move(ctx), fam};
        return {std::move(ctx), std::nullopt};
    };

    // compose big homs through representatives
    auto compose_bighom = [&](const BigHomCtx& cxy, const std::vector<Idx>& f,
                              const BigHomCtx& cyz, const std::vector<Idx>& g,
                              const BigHomCtx& cxz) {
        std::vector<Idx> out_fam;
        for (Idx i = 0; i < (Idx)cxy.reps.size(); ++i) {
            auto [j, ni] = cxy.reps[i][f[i]];
            const NatTrans& alpha = cxy.nat_sets[i][j][ni];
            auto [k, mi] = cyz.reps[j][g[j]];
            const NatTrans& beta = cyz.nat_sets[j][k][mi];
            NatTrans comp = psh::vertical_compose(beta, alpha);
            out_fam.push_back(cxz.class_of(i, k, psh::nat_index_in(cxz.nat_sets[i][k], comp)));
        }
        return out_fam;
    };

    auto identity_family = [&](const BigHomCtx& cxx) {
        std::vector<Idx> fam;
        for (Idx i = 0; i < (Idx)cxx.reps.size(); ++i) {
            NatTrans id = psh::identity_nat(cxx.x.vertex[i]);
            fam.push_back(cxx.class_of(i, i, psh::nat_index_in(cxx.nat_sets[i][i], id)));
        }
        return fam;
    };

    // c on big homs
    auto apply_c = [&](const BigHomCtx& ctx, const std::vector<Idx>& fam,
                       const ColimitResult& cx, const ColimitResult& cy) {
        NatTrans t;
        t.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z)
            for (const auto& [v, p] : cx.reps[z]) {
                auto [j, ni] = ctx.reps[v][fam[v]];
                const NatTrans& alpha = ctx.nat_sets[v][j][ni];
                t.comp[z].push_back(cy.class_of(z, j, alpha.comp[z][p]));
            }
        return t;
    };

    //------------------------------------------------------------------
    // (i) adjunction bijection big_hom(t E, Y) = Nat(E, c Y)
    for (const Presheaf& e : samples) {
        FormalColimit te = lan_along_yoneda(e);
        psh::ElementsCategory el = psh::elements_category(e);
        for (const FormalColimit& y : formal) {
            ColimitResult cy = colimit_of(y);
            BigHomCtx ctx = big_hom(te, y, lim);
            auto nats = psh::nat_trans_set(e, cy.colim, lim);
            bool ok = true;
            std::vector<bool> hit(nats.size(), false);
            for (const auto& fam : ctx.elements) {
                NatTrans img = to_nat(ctx, e, el, cy, fam);
                if (!psh::is_natural(e, cy.colim, img)) {
                    ok = false;
                    break;
                }
                Idx k = psh::nat_index_in(nats, img);
                if (hit[k]) {
                    ok = false;
                    break;
                }
                hit[k] = true;
            }
            if (ctx.elements.size() != nats.size()) ok = false;
            log.add("t-c bijection [" + e.name + " ; " + y.name + "]", ok,
                    std::to_string(ctx.elements.size()) + " vs " + std::to_string(nats.size()));
        }
    }

    //------------------------------------------------------------------
    // (i') adjunction bijection Nat(c Y, F) = big_hom(Y, y F)
    for (const FormalColimit& y : formal) {
        ColimitResult cy = colimit_of(y);
        for (const Presheaf& f : samples) {
            FormalColimit yf = big_representable(f);
            BigHomCtx ctx = big_hom(y, yf, lim);
            auto nats = psh::nat_trans_set(cy.colim, f, lim);
            bool ok = true;
            std::vector<bool> hit(ctx.elements.size(), false);
            for (const NatTrans& alpha : nats) {
                std::vector<Idx> fam;
                for (Idx j = 0; j < (Idx)ctx.reps.size(); ++j) {
                    NatTrans comp = psh::vertical_compose(alpha, cy.inj[j]);
                    fam.push_back(
                        ctx.class_of(j, 0, psh::nat_index_in(ctx.nat_sets[j][0], comp)));
                }
                Idx k = ctx.element_index(fam);
                if (hit[k]) {
                    ok = false;
                    break;
                }
                hit[k] = true;
            }
            if (ctx.elements.size() != nats.size()) ok = false;
            log.add("c-y bijection [" + y.name + " ; " + f.name + "]", ok,
                    std::to_string(nats.size()) + " vs " + std::to_string(ctx.elements.size()));
        }
    }

    //------------------------------------------------------------------
    // (ii) triangle identities for t -| c
    for (const Presheaf& e : samples) {
        FormalColimit te = lan_along_yoneda(e);
        psh::ElementsCategory el = psh::elements_category(e);
        ColimitResult cte = colimit_of(te);
        NatTrans eta = unit_tc(e, el, cte);
        bool natural = psh::is_natural(e, cte.colim, eta);

        // t(eta) : t E -> t(c t E)
        FormalColimit tcte = lan_along_yoneda(cte.colim);
        psh::ElementsCategory el2 = psh::elements_category(cte.colim);
        BigHomCtx c_te_tcte = big_hom(te, tcte, lim);
        std::vector<Idx> t_eta;
        for (Idx v = 0; v < te.shape->n_objects(); ++v) {
            auto [z, xi] = el.vertex[v];
            Idx v2 = el2.vertex_id(z, eta.comp[z][xi]);
            NatTrans id = psh::identity_nat(reps[z]);
            t_eta.push_back(
                c_te_tcte.class_of(v, v2, psh::nat_index_in(c_te_tcte.nat_sets[v][v2], id)));
        }
        auto [c_tcte_te, eps] = counit_tc(te, cte);
        bool tri1 = natural && eps.has_value();
        if (tri1) {
            BigHomCtx c_te_te = big_hom(te, te, lim);
            std::vector<Idx> comp = compose_bighom(c_te_tcte, t_eta, c_tcte_te, *eps, c_te_te);
            tri1 = comp == identity_family(c_te_te);
        }
        log.add("triangle t-side [" + e.name + "]", tri1);
    }
    for (const FormalColimit& y : formal) {
        ColimitResult cy = colimit_of(y);
        auto [ctx, eps] = counit_tc(y, cy);
        bool tri2 = eps.has_value();
        if (tri2) {
            FormalColimit tcy = ctx.x;  // lan of c(Y), rebuilt inside counit_tc
            psh::ElementsCategory el = psh::elements_category(cy.colim);
            ColimitResult ctcy = colimit_of(tcy);
            NatTrans eta_cy = unit_tc(cy.colim, el, ctcy);
            NatTrans c_eps = apply_c(ctx, *eps, ctcy, cy);
            tri2 = psh::nat_equal(psh::vertical_compose(c_eps, eta_cy),
                                  psh::identity_nat(cy.colim));
        }
        log.add("triangle c-side [" + y.name + "]", tri2);
    }

    //------------------------------------------------------------------
    // (iii) triangle identities for c -| y and the evaluation law c(y F) = F
    for (const Presheaf& f : samples) {
        FormalColimit yf = big_representable(f);
        ColimitResult cyf = colimit_of(yf);
        // evaluation law: the counit c(y F) -> F  is [(*, xi)] -> xi
        NatTrans eps;
        eps.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z)
            for (const auto& [v, xi] : cyf.reps[z]) eps.comp[z].push_back(xi);
        bool eval_law = psh::is_natural(cyf.colim, f, eps) && psh::nat_is_iso(cyf.colim, f, eps);
        log.add("evaluation law c(y F) iso F [" + f.name + "]", eval_law);

        // y-side triangle: y(eps) . eta'_{y F} = id
        FormalColimit ycyf = big_representable(cyf.colim);
        BigHomCtx c_yf_ycyf = big_hom(yf, ycyf, lim);
        std::vector<Idx> eta_fam = {
            c_yf_ycyf.class_of(0, 0, psh::nat_index_in(c_yf_ycyf.nat_sets[0][0], cyf.inj[0]))};
        BigHomCtx c_ycyf_yf = big_hom(ycyf, yf, lim);
        std::vector<Idx> yeps_fam = {
            c_ycyf_yf.class_of(0, 0, psh::nat_index_in(c_ycyf_yf.nat_sets[0][0], eps))};
        BigHomCtx c_yf_yf = big_hom(yf, yf, lim);
        std::vector<Idx> comp =
            compose_bighom(c_yf_ycyf, eta_fam, c_ycyf_yf, yeps_fam, c_yf_yf);
        log.add("triangle y-side [" + f.name + "]", comp == identity_family(c_yf_yf));
    }
    for (const FormalColimit& y : formal) {
        ColimitResult cy = colimit_of(y);
        FormalColimit ycy = big_representable(cy.colim);
        BigHomCtx ctx = big_hom(y, ycy, lim);
        std::vector<Idx> eta_fam;
        for (Idx j = 0; j < (Idx)ctx.reps.size(); ++j)
            eta_fam.push_back(
                ctx.class_of(j, 0, psh::nat_index_in(ctx.nat_sets[j][0], cy.inj[j])));
        bool valid = true;
        try {
            ctx.element_index(eta_fam);  // the unit family must be compatible
        } catch (const Error&) {
            valid = false;
        }
        ColimitResult cycy = colimit_of(ycy);
        // eps'_{c Y} : c(y(c Y)) -> c Y
        NatTrans eps2;
        eps2.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z)
            for (const auto& [v, xi] : cycy.reps[z]) eps2.comp[z].push_back(xi);
        NatTrans c_eta = apply_c(ctx, eta_fam, cy, cycy);
        bool tri = valid && psh::nat_equal(psh::vertical_compose(eps2, c_eta),
                                           psh::identity_nat(cy.colim));
        log.add("triangle c-side of c -| y [" + y.name + "]", tri);
    }

    //------------------------------------------------------------------
    // poset shadow cross-check: a thin skeletal base mirrors the down-set triple
    if (is_thin(c)) {
        try {
            FinPoset p = underlying_poset(c);
            order::DownSetLattice dn = order::down_set_lattice(p, lim);
            Limits inner = lim;
            inner.max_poset_for_downsets =
                std::max(inner.max_poset_for_downsets, dn.lattice->size());
            bool ccd = order::ccd_check(*dn.lattice, inner).ccd;
            log.add("down-set shadow is ccd", ccd);
        } catch (const Error& err) {
            log.add("down-set shadow is ccd", false, err.what());
        }
    }

    if (throw_on_failure && !log.all_ok())
        throw Error(ErrKind::VerificationFailure, log.first_failure());
    return out;
}

//----------------------------------------------------------------------------
// sampled categories and the comonad triple

SampledCategory poset_sampled_category(PosetPtr p, std::string name) {
    SampledCategory sc;
    sc.name = std::move(name);
    sc.n_objects = p->size();
    sc.obj_label = [p](int a) { return p->elems[a]; };
    sc.hom = [p](int a, int b) {
        return p->leq(a, b) ? std::vector<std::string>{"le"} : std::vector<std::string>{};
    };
    sc.compose = [](int, int, int, const std::string&, const std::string&) {
        return std::string("le");
    };
    sc.id = [](int) { return std::string("le"); };
    return sc;
}

SampledFunctor monotone_sampled_functor(const MonotoneMap& f) {
    SampledFunctor sf;
    auto map = f.map;
    sf.on_obj = [map](int a) { return map[a]; };
    sf.on_mor = [](int, int, const std::string&) { return std::string("le"); };
    return sf;
}

ComonadTriple triple_from_comonad(const ComonadTripleInput& in, bool throw_on_failure) {
    ComonadTriple out;
    out.witness.subject = in.cat_c.name + " into " + in.cat_d.name;
    VerificationLog& log = out.witness.log;
    const SampledCategory& C = in.cat_c;
    const SampledCategory& D = in.cat_d;

    auto mor_equal = [](const std::string& a, const std::string& b) { return a == b; };

    // i fully faithful on the samples
    {
        bool ok = true;
        for (int a = 0; a < C.n_objects && ok; ++a)
            for (int b = 0; b < C.n_objects && ok; ++b) {
                auto hc = C.hom(a, b);
                auto hd = D.hom(in.i.on_obj(a), in.i.on_obj(b));
                if (hc.size() != hd.size()) {
                    ok = false;
                    break;
                }
                std::vector<std::string> image;
                for (const auto& m : hc) image.push_back(in.i.on_mor(a, b, m));
                std::sort(image.begin(), image.end());
                if (std::adjacent_find(image.begin(), image.end()) != image.end()) ok = false;
                for (const auto& m : image)
                    if (std::find(hd.begin(), hd.end(), m) == hd.end()) ok = false;
            }
        log.add("i fully faithful", ok);
    }

    // i -| r: triangles and the hom bijection phi |-> r(phi) . eta_c
    {
        bool ok = true;
        for (int cobj = 0; cobj < C.n_objects && ok; ++cobj) {
            int ic = in.i.on_obj(cobj);
            int ric = in.r.on_obj(ic);
            // eps_{i c} . i(eta_c) = id
            std::string ieta = in.i.on_mor(cobj, ric, in.unit_ir(cobj));
            std::string eps = in.counit_ir(ic);
            std::string comp = D.compose(ic, in.i.on_obj(ric), ic, eps, ieta);
            if (!mor_equal(comp, D.id(ic))) ok = false;
        }
        for (int d = 0; d < D.n_objects && ok; ++d) {
            int rd = in.r.on_obj(d);
            // r(eps_d) . eta_{r d} = id
            std::string reps = in.r.on_mor(in.i.on_obj(rd), d, in.counit_ir(d));
            std::string comp = C.compose(rd, in.r.on_obj(in.i.on_obj(rd)), rd, reps,
                                         in.unit_ir(rd));
            if (!mor_equal(comp, C.id(rd))) ok = false;
        }
        for (int cobj = 0; cobj < C.n_objects && ok; ++cobj)
            for (int d = 0; d < D.n_objects && ok; ++d) {
                int ic = in.i.on_obj(cobj);
                int rd = in.r.on_obj(d);
                std::vector<std::string> image;
                for (const auto& phi : D.hom(ic, d)) {
                    std::string rphi = in.r.on_mor(ic, d, phi);
                    image.push_back(
                        C.compose(cobj, in.r.on_obj(ic), rd, rphi, in.unit_ir(cobj)));
                }
                std::sort(image.begin(), image.end());
                std::vector<std::string> target = C.hom(cobj, rd);
                std::sort(target.begin(), target.end());
                if (image != target) ok = false;
            }
        log.add("i -| r verified", ok);
    }

    // T = i.r -| n
    auto T_obj = [&](int d) { return in.i.on_obj(in.r.on_obj(d)); };
    auto T_mor = [&](int a, int b, const std::string& m) {
        return in.i.on_mor(in.r.on_obj(a), in.r.on_obj(b), in.r.on_mor(a, b, m));
    };
    {
        bool ok = true;
        for (int d = 0; d < D.n_objects && ok; ++d) {
            // eps^n_{T d} . T(eta^n_d) = id_{T d}
            std::string teta = T_mor(d, in.n.on_obj(T_obj(d)), in.unit_n(d));
            std::string eps = in.counit_n(T_obj(d));
            std::string comp =
                D.compose(T_obj(d), T_obj(in.n.on_obj(T_obj(d))), T_obj(d), eps, teta);
            if (!mor_equal(comp, D.id(T_obj(d)))) ok = false;
            // n(eps^n_d) . eta^n_{n d} = id_{n d}
            int nd = in.n.on_obj(d);
            std::string neps = in.n.on_mor(T_obj(nd), d, in.counit_n(d));
            std::string comp2 =
                D.compose(nd, in.n.on_obj(T_obj(nd)), nd, neps, in.unit_n(nd));
            if (!mor_equal(comp2, D.id(nd))) ok = false;
        }
        for (int d = 0; d < D.n_objects && ok; ++d)
            for (int d2 = 0; d2 < D.n_objects && ok; ++d2) {
                auto from = D.hom(T_obj(d), d2);
                auto to = D.hom(d, in.n.on_obj(d2));
                std::vector<std::string> image;
                for (const auto& phi : from) {
                    std::string nphi = in.n.on_mor(T_obj(d), d2, phi);
                    image.push_back(D.compose(d, in.n.on_obj(T_obj(d)), in.n.on_obj(d2), nphi,
                                              in.unit_n(d)));
                }
                std::sort(image.begin(), image.end());
                std::vector<std::string> target = to;
                std::sort(target.begin(), target.end());
                if (image != target) ok = false;
            }
        log.add("i.r -| n verified", ok);
    }

    // s = n . i ; verify r -| s by the chain C(r d, c) = D(d, s c)
    out.s.on_obj = [&in](int cobj) { return in.n.on_obj(in.i.on_obj(cobj)); };
    out.s.on_mor = [&in](int a, int b, const std::string& m) {
        return in.n.on_mor(in.i.on_obj(a), in.i.on_obj(b), in.i.on_mor(a, b, m));
    };
    auto s_obj = out.s.on_obj;
    auto psi = [&](int d, int cobj, const std::string& alpha) {
        // alpha : r d -> c in C;  psi(alpha) = n(i alpha) . eta^n_d : d -> s c
        int rd = in.r.on_obj(d);
        std::string ialpha = in.i.on_mor(rd, cobj, alpha);
        std::string nialpha = in.n.on_mor(T_obj(d), in.i.on_obj(cobj), ialpha);
        return D.compose(d, in.n.on_obj(T_obj(d)), s_obj(cobj), nialpha, in.unit_n(d));
    };
    {
        bool ok = true;
        for (int d = 0; d < D.n_objects && ok; ++d)
            for (int cobj = 0; cobj < C.n_objects && ok; ++cobj) {
                auto from = C.hom(in.r.on_obj(d), cobj);
                auto to = D.hom(d, s_obj(cobj));
                std::vector<std::string> image;
                for (const auto& alpha : from) image.push_back(psi(d, cobj, alpha));
                std::sort(image.begin(), image.end());
                std::vector<std::string> target = to;
                std::sort(target.begin(), target.end());
                if (image != target) ok = false;
            }
        log.add("r -| s bijection", ok);

        // derived unit/counit triangles for r -| s
        bool tri = true;
        for (int cobj = 0; cobj < C.n_objects && tri; ++cobj) {
            int sc = s_obj(cobj);
            // counit eps_c : r(s c) -> c with psi(eps_c) = id_{s c}
            std::string found;
            int hits = 0;
            for (const auto& alpha : C.hom(in.r.on_obj(sc), cobj))
                if (mor_equal(psi(sc, cobj, alpha), D.id(sc))) {
                    found = alpha;
                    ++hits;
                }
            if (hits != 1) {
                tri = false;
                break;
            }
            // s(eps_c) . eta_{s c} = id_{s c}
            std::string eta_sc = psi(sc, in.r.on_obj(sc), C.id(in.r.on_obj(sc)));
            std::string seps = out.s.on_mor(in.r.on_obj(sc), cobj, found);
            std::string comp = D.compose(sc, s_obj(in.r.on_obj(sc)), s_obj(cobj), seps, eta_sc);
            if (!mor_equal(comp, D.id(sc))) tri = false;
        }
        for (int d = 0; d < D.n_objects && tri; ++d) {
            // eps_{r d} . r(eta_d) = id_{r d}
            int rd = in.r.on_obj(d);
            std::string eta = psi(d, rd, C.id(rd));
            std::string reta = in.r.on_mor(d, s_obj(rd), eta);
            std::string found;
            int hits = 0;
            for (const auto& alpha : C.hom(in.r.on_obj(s_obj(rd)), rd))
                if (mor_equal(psi(s_obj(rd), rd, alpha), D.id(s_obj(rd)))) {
                    found = alpha;
                    ++hits;
                }
            if (hits != 1) {
                tri = false;
                break;
            }
            std::string comp =
                C.compose(rd, in.r.on_obj(s_obj(rd)), rd, found, reta);
            if (!mor_equal(comp, C.id(rd))) tri = false;
        }
        log.add("r -| s triangle identities", tri);
    }

    if (throw_on_failure && !log.all_ok())
        throw Error(ErrKind::VerificationFailure, log.first_failure());
    return out;
}

} // namespace tdlab::kan
