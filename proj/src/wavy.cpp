#include "tdlab/wavy.hpp"

#include <algorithm>
#include <map>

namespace tdlab::wavy {

using psh::Copresheaf;
using psh::NatTrans;
using psh::Presheaf;

WavyProfunctor wavy_profunctor(const FinPoset& a, const Limits& lim) {
    WavyProfunctor w;
    w.base = std::make_shared<const FinPoset>(a);
    w.base_cat = std::make_shared<const FinCategory>(poset_as_category(a));
    const FinCategory& c = *w.base_cat;
    order::WayBelowResult wb = order::way_below(a, lim);

    // element ids of the poset vs object ids of the category coincide: both
    // are the sorted labels
    auto way_below_rel = [&](Idx x, Idx y) { return wb.rel[y].test(x); };

    w.v.dom = w.base_cat;
    w.v.cod = w.base_cat;
    int n = c.n_objects();
    w.v.at.assign(n, std::vector<std::vector<std::string>>(n));
    for (Idx x = 0; x < n; ++x)
        for (Idx y = 0; y < n; ++y)
            if (way_below_rel(x, y)) w.v.at[x][y] = {"w"};
    w.v.lact.assign(c.n_arrows(), std::vector<std::vector<Idx>>(n));
    w.v.ract.assign(c.n_arrows(), std::vector<std::vector<Idx>>(n));
    for (Idx u = 0; u < c.n_arrows(); ++u) {
        Idx us = c.src(u), ut = c.tgt(u);
        for (Idx y = 0; y < n; ++y)
            if (way_below_rel(ut, y)) {
                if (!way_below_rel(us, y))
                    throw Error(ErrKind::InternalInconsistency,
                                "way-below is not down-closed on the left");
                w.v.lact[u][y] = {0};
            }
        for (Idx x = 0; x < n; ++x)
            if (way_below_rel(x, us)) {
                if (!way_below_rel(x, ut))
                    throw Error(ErrKind::InternalInconsistency,
                                "way-below is not up-closed on the right");
                w.v.ract[u][x] = {0};
            }
    }
    check_profunctor(w.v);

    // counit: wavy arrows sit inside the order
    w.counit_in_hom = true;
    for (Idx x = 0; x < n; ++x)
        for (Idx y = 0; y < n; ++y)
            if (way_below_rel(x, y) && !a.leq(x, y)) w.counit_in_hom = false;

    // comultiplication: the least interpolant x << z << y
    w.interpolant.assign(n, std::vector<Idx>(n, -1));
    for (Idx x = 0; x < n; ++x)
        for (Idx y = 0; y < n; ++y) {
            if (!way_below_rel(x, y)) continue;
            for (Idx z = 0; z < n; ++z)
                if (way_below_rel(x, z) && way_below_rel(z, y)) {
                    w.interpolant[x][y] = z;
                    break;
                }
            if (w.interpolant[x][y] < 0)
                throw Error(ErrKind::InterpolationFailure,
                            "no interpolant between " + a.elems[x] + " and " + a.elems[y]);
        }

    // idempotency: the composition-induced comparison V.V -> V is bijective
    ProfComposite vv = compose_profunctors(w.v, w.v);
    ProfMap cmp;
    cmp.comp.assign(n, std::vector<std::vector<Idx>>(n));
    w.idempotent = true;
    for (Idx x = 0; x < n; ++x)
        for (Idx y = 0; y < n; ++y) {
            for (std::size_t k = 0; k < vv.reps[x][y].size(); ++k) cmp.comp[x][y].push_back(0);
            if ((int)vv.reps[x][y].size() != w.v.size_at(x, y)) w.idempotent = false;
        }
    if (w.idempotent) w.idempotent = is_profunctor_iso(vv.prof, w.v, cmp);

    w.columns_flat = true;
    for (Idx y = 0; y < n; ++y)
        if (!psh::flat_check(wavy_column(w, y)).flat) w.columns_flat = false;
    return w;
}

psh::Presheaf wavy_column(const WavyProfunctor& w, Idx y) {
    const FinCategory& c = *w.base_cat;
    Presheaf col;
    col.base = w.base_cat;
    col.name = "V(-," + c.objects[y] + ")";
    col.at.resize(c.n_objects());
    for (Idx x = 0; x < c.n_objects(); ++x) col.at[x] = w.v.at[x][y];
    col.act.resize(c.n_arrows());
    for (Idx u = 0; u < c.n_arrows(); ++u) col.act[u] = w.v.lact[u][y];
    psh::check_presheaf(col);
    return col;
}

ComonadApplication induced_comonad(const Profunctor& v, const Copresheaf& f) {
    const FinCategory& c = *v.dom;
    if (!same_category(*v.dom, *v.cod))
        throw Error(ErrKind::InvalidInput, "the comonad needs an endo-profunctor");
    ComonadApplication out;
    out.app = psh::apply_profunctor(v, f);
    // counit [(m in V(x,d), xi in F(x))] -> F(u)(xi) along the unique u : x -> d
    out.counit.comp.resize(c.n_objects());
    for (Idx d = 0; d < c.n_objects(); ++d) {
        for (const auto& [x, mi, fi] : out.app.reps[d]) {
            (void)mi;
            auto hom = c.hom(x, d);
            if (hom.empty())
                throw Error(ErrKind::InvalidInput,
                            "profunctor value outside the order: no counit");
            out.counit.comp[d].push_back(f.act[hom[0]][fi]);
        }
        // well-definedness across each class
        for (const auto& [key, cl] : out.app.cls[d]) {
            auto [x, mi, fi] = key;
            (void)mi;
            auto hom = c.hom(x, d);
            if (hom.empty() || f.act[hom[0]][fi] != out.counit.comp[d][cl])
                throw Error(ErrKind::InternalInconsistency, "comonad counit ill-defined");
        }
    }
    if (!psh::is_natural(out.app.result, f, out.counit))
        throw Error(ErrKind::InternalInconsistency, "comonad counit not natural");
    return out;
}

CartesianReport cartesian_spot_check(const Profunctor& v, const Copresheaf& f,
                                     const Copresheaf& g) {
    const FinCategory& c = *v.dom;
    CartesianReport rep;

    Copresheaf fg = psh::product(f, g);
    psh::ProfApplication vfg = psh::apply_profunctor(v, fg);
    psh::ProfApplication vf = psh::apply_profunctor(v, f);
    psh::ProfApplication vg = psh::apply_profunctor(v, g);

    rep.binary_ok = true;
    for (Idx d = 0; d < c.n_objects() && rep.binary_ok; ++d) {
        // comparison V(F x G) -> V(F) x V(G) on classes
        std::vector<std::pair<Idx, Idx>> image;
        for (const auto& [x, mi, pi] : vfg.reps[d]) {
            Idx fi = pi / std::max(1, g.size_at(x));
            Idx gi = pi % std::max(1, g.size_at(x));
            image.push_back({vf.class_of(d, x, mi, fi), vg.class_of(d, x, mi, gi)});
        }
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
            rep.binary_ok = false;
            rep.binary_witness = "comparison not injective at " + c.objects[d];
            break;
        }
        long long target = (long long)vf.reps[d].size() * (long long)vg.reps[d].size();
        if ((long long)image.size() != target) {
            rep.binary_ok = false;
            rep.binary_witness = "cardinality " + std::to_string(image.size()) + " vs " +
                                 std::to_string(target) + " at " + c.objects[d];
        }
    }

    auto op = std::make_shared<const FinCategory>(opposite(c));
    Copresheaf one = psh::terminal_presheaf(op);
    psh::ProfApplication v1 = psh::apply_profunctor(v, one);
    rep.nullary_ok = true;
    for (Idx d = 0; d < c.n_objects(); ++d)
        if ((int)v1.reps[d].size() != 1) {
            rep.nullary_ok = false;
            rep.nullary_witness = "V(1) has " + std::to_string(v1.reps[d].size()) +
                                  " points at " + c.objects[d];
            break;
        }
    return rep;
}

//----------------------------------------------------------------------------
// fixed points and the induced triple

namespace {

// registry of copresheaves with memoized hom-sets, backing the sampled
// categories handed to the triple verifier
struct Registry {
    std::vector<Copresheaf> items;
    std::map<std::pair<int, int>, std::vector<NatTrans>> homs;
    Limits lim;

    int intern(const Copresheaf& f) {
        for (int i = 0; i < (int)items.size(); ++i)
            if (items[i].at == f.at && items[i].act == f.act) return i;
        items.push_back(f);
        return (int)items.size() - 1;
    }
    const std::vector<NatTrans>& hom(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = homs.find(key);
        if (it == homs.end())
            it = homs.emplace(key, psh::nat_trans_set(items[a], items[b], lim)).first;
        return it->second;
    }
    std::vector<std::string> hom_labels(int a, int b) {
        std::vector<std::string> out;
        for (std::size_t k = 0; k < hom(a, b).size(); ++k)
            out.push_back("t" + std::to_string(k));
        return out;
    }
    std::string label_of(int a, int b, const NatTrans& t) {
        return "t" + std::to_string(psh::nat_index_in(hom(a, b), t));
    }
    const NatTrans& decode(int a, int b, const std::string& label) {
        return hom(a, b)[std::stoi(label.substr(1))];
    }
};

} // namespace

FixedPointReport fixed_points(const WavyProfunctor& w, const std::vector<Copresheaf>& samples,
                              const Limits& lim) {
    const FinCategory& c = *w.base_cat;
    auto op = std::make_shared<const FinCategory>(opposite(c));
    FixedPointReport rep;

    auto reg = std::make_shared<Registry>();
    reg->lim = lim;
    const Profunctor& v = w.v;

    // memoized application of the endofunctor, keyed by registry id
    auto app_cache = std::make_shared<std::map<int, psh::ProfApplication>>();
    auto v_app = [reg, app_cache, &v](int a) -> const psh::ProfApplication& {
        auto it = app_cache->find(a);
        if (it == app_cache->end())
            it = app_cache->emplace(a, psh::apply_profunctor(v, reg->items[a])).first;
        return it->second;
    };
    auto r_obj = [reg, v_app](int a) { return reg->intern(v_app(a).result); };

    // co-representables, their images, and the per-arrow precomposition maps
    std::vector<Copresheaf> corep;
    std::vector<psh::ProfApplication> v_corep;
    std::vector<int> vy(c.n_objects());
    for (Idx z = 0; z < c.n_objects(); ++z) {
        corep.push_back(psh::yoneda(op, z));
        v_corep.push_back(psh::apply_profunctor(v, corep[z]));
        vy[z] = reg->intern(v_corep[z].result);
    }
    std::vector<NatTrans> vtheta(op->n_arrows());  // V applied to y_src -> y_tgt in op
    for (Idx gar = 0; gar < op->n_arrows(); ++gar) {
        NatTrans theta = psh::yoneda_postcompose(op, gar);
        vtheta[gar] = psh::apply_profunctor_to_nat(v, corep[op->src(gar)],
                                                   corep[op->tgt(gar)], theta,
                                                   v_corep[op->src(gar)],
                                                   v_corep[op->tgt(gar)]);
    }

    // n(F)(z) = Nat(V(y_z), F); elements index the memoized hom-set from vy[z]
    std::map<int, int> n_ids;
    std::function<int(int)> n_of = [&](int fid) -> int {
        auto it = n_ids.find(fid);
        if (it != n_ids.end()) return it->second;
        Copresheaf nf;
        nf.base = op;
        nf.name = "n(" + reg->items[fid].name + ")";
        nf.at.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z) nf.at[z] = reg->hom_labels(vy[z], fid);
        nf.act.resize(op->n_arrows());
        for (Idx gar = 0; gar < op->n_arrows(); ++gar) {
            Idx a_obj = op->tgt(gar), b_obj = op->src(gar);
            for (const NatTrans& alpha : reg->hom(vy[a_obj], fid))
                nf.act[gar].push_back(psh::nat_index_in(
                    reg->hom(vy[b_obj], fid),
                    psh::vertical_compose(alpha, vtheta[gar])));
        }
        psh::check_presheaf(nf);
        int id = reg->intern(nf);
        n_ids[fid] = id;
        return id;
    };

    // the transpose Nat(V G, F) -> Nat(G, n F) through co-Yoneda mates
    auto transpose = [&](int gid, int fid, const NatTrans& alpha) {
        const Copresheaf& g = reg->items[gid];
        NatTrans bar;
        bar.comp.resize(c.n_objects());
        for (Idx a_obj = 0; a_obj < c.n_objects(); ++a_obj) {
            for (Idx xi = 0; xi < g.size_at(a_obj); ++xi) {
                NatTrans mate;  // y_a -> G sending h to G(h)(xi)
                mate.comp.resize(c.n_objects());
                for (Idx z = 0; z < c.n_objects(); ++z)
                    for (const std::string& hname : corep[a_obj].at[z])
                        mate.comp[z].push_back(g.act[op->arrow_id(hname)][xi]);
                NatTrans vmate = psh::apply_profunctor_to_nat(v, corep[a_obj], g, mate,
                                                              v_corep[a_obj], v_app(gid));
                bar.comp[a_obj].push_back(psh::nat_index_in(
                    reg->hom(vy[a_obj], fid), psh::vertical_compose(alpha, vmate)));
            }
        }
        return bar;
    };

    // intern the fixed images first so they occupy the registry prefix, then
    // the raw samples
    std::vector<int> image_ids, sample_ids;
    for (const Copresheaf& f : samples) {
        int fid = reg->intern(f);
        image_ids.push_back(r_obj(fid));
    }
    int n_c_objects = (int)reg->items.size();
    for (const Copresheaf& f : samples) sample_ids.push_back(reg->intern(f));
    int n_d_objects = (int)reg->items.size();

    // classify samples and probe the right adjoint
    for (std::size_t k = 0; k < samples.size(); ++k) {
        FixedPointReport::SampleEntry entry;
        entry.name = samples[k].name;
        int fid = sample_ids[k];
        ComonadApplication capp = induced_comonad(v, reg->items[fid]);
        entry.fixed = psh::nat_is_iso(capp.app.result, reg->items[fid], capp.counit);
        ComonadApplication twice = induced_comonad(v, capp.app.result);
        entry.image_fixed = psh::nat_is_iso(twice.app.result, capp.app.result, twice.counit);

        int nfid = n_of(fid);
        entry.right_adjoint_ok = true;
        for (std::size_t k2 = 0; k2 < samples.size() && entry.right_adjoint_ok; ++k2) {
            int gid = sample_ids[k2];
            int vgid = r_obj(gid);
            const auto& from = reg->hom(vgid, fid);
            const auto& to = reg->hom(gid, nfid);
            if (from.size() != to.size()) {
                entry.right_adjoint_ok = false;
                break;
            }
            std::vector<bool> hit(to.size(), false);
            for (const NatTrans& alpha : from) {
                NatTrans bar = transpose(gid, fid, alpha);
                if (!psh::is_natural(reg->items[gid], reg->items[nfid], bar)) {
                    entry.right_adjoint_ok = false;
                    break;
                }
                Idx pos = psh::nat_index_in(to, bar);
                if (hit[pos]) {
                    entry.right_adjoint_ok = false;
                    break;
                }
                hit[pos] = true;
            }
        }
        rep.samples.push_back(entry);
    }

    // sampled categories over the registry
    kan::SampledCategory cat_c, cat_d;
    cat_c.name = "fixed copresheaves";
    cat_d.name = "copresheaves";
    cat_c.n_objects = n_c_objects;
    cat_d.n_objects = n_d_objects;
    auto obj_label = [reg](int a) { return reg->items[a].name; };
    auto hom_cb = [reg](int a, int b) { return reg->hom_labels(a, b); };
    auto compose_cb = [reg](int a, int b, int c2, const std::string& g2,
                            const std::string& f2) {
        return reg->label_of(a, c2, psh::vertical_compose(reg->decode(b, c2, g2),
                                                          reg->decode(a, b, f2)));
    };
    auto id_cb = [reg](int a) {
        return reg->label_of(a, a, psh::identity_nat(reg->items[a]));
    };
    for (auto* sc : {&cat_c, &cat_d}) {
        sc->obj_label = obj_label;
        sc->hom = hom_cb;
        sc->compose = compose_cb;
        sc->id = id_cb;
    }

    kan::SampledFunctor i_f, r_f, n_f;
    i_f.on_obj = [](int a) { return a; };
    i_f.on_mor = [](int, int, const std::string& m) { return m; };
    r_f.on_obj = r_obj;
    r_f.on_mor = [reg, r_obj, v_app, &v](int a, int b, const std::string& m) {
        int ra = r_obj(a), rb = r_obj(b);
        NatTrans t = psh::apply_profunctor_to_nat(v, reg->items[a], reg->items[b],
                                                  reg->decode(a, b, m), v_app(a), v_app(b));
        return reg->label_of(ra, rb, t);
    };
    n_f.on_obj = [&n_of](int a) { return n_of(a); };
    n_f.on_mor = [reg, &n_of, vy, &c](int a, int b, const std::string& m) {
        int na = n_of(a), nb = n_of(b);
        const NatTrans& alpha = reg->decode(a, b, m);
        NatTrans t;
        t.comp.resize(c.n_objects());
        for (Idx z = 0; z < c.n_objects(); ++z)
            for (const NatTrans& beta : reg->hom(vy[z], a))
                t.comp[z].push_back(psh::nat_index_in(
                    reg->hom(vy[z], b), psh::vertical_compose(alpha, beta)));
        return reg->label_of(na, nb, t);
    };

    // adjunction data
    auto counit_ir = [reg, r_obj, &v](int d) {
        ComonadApplication capp = induced_comonad(v, reg->items[d]);
        return reg->label_of(r_obj(d), d, capp.counit);
    };
    auto unit_ir = [reg, r_obj, &v](int cobj) {
        // inverse of the counit at a fixed object
        ComonadApplication capp = induced_comonad(v, reg->items[cobj]);
        const Copresheaf& g = reg->items[cobj];
        int rc = r_obj(cobj);
        NatTrans inv;
        inv.comp.resize(g.at.size());
        for (std::size_t z = 0; z < g.at.size(); ++z) {
            inv.comp[z].assign(g.at[z].size(), -1);
            for (Idx k = 0; k < (Idx)capp.counit.comp[z].size(); ++k) {
                Idx img = capp.counit.comp[z][k];
                if (inv.comp[z][img] != -1)
                    throw Error(ErrKind::VerificationFailure,
                                "counit not injective at a supposedly fixed object");
                inv.comp[z][img] = k;
            }
            for (Idx k = 0; k < (Idx)inv.comp[z].size(); ++k)
                if (inv.comp[z][k] < 0)
                    throw Error(ErrKind::VerificationFailure,
                                "counit not surjective at a supposedly fixed object");
        }
        return reg->label_of(cobj, rc, inv);
    };
    auto unit_n = [reg, r_obj, &n_of, &transpose](int d) {
        int td = r_obj(d);
        NatTrans bar = transpose(d, td, psh::identity_nat(reg->items[td]));
        return reg->label_of(d, n_of(td), bar);
    };
    auto counit_n = [reg, r_obj, &n_of, &transpose](int d) {
        int nd = n_of(d);
        int tnd = r_obj(nd);
        // the unique alpha : T(n d) -> d whose transpose is the identity
        NatTrans want = psh::identity_nat(reg->items[nd]);
        std::optional<NatTrans> found;
        for (const NatTrans& alpha : reg->hom(tnd, d))
            if (psh::nat_equal(transpose(nd, d, alpha), want)) {
                if (found)
                    throw Error(ErrKind::VerificationFailure, "comonad counit not unique");
                found = alpha;
            }
        if (!found)
            throw Error(ErrKind::VerificationFailure, "no transpose preimage of the identity");
        return reg->label_of(tnd, d, *found);
    };

    kan::ComonadTripleInput input{cat_c, cat_d, i_f, r_f, n_f,
                                  unit_ir, counit_ir, unit_n, counit_n};
    kan::ComonadTriple triple = kan::triple_from_comonad(input, false);
    rep.triple = triple.witness;

    rep.all_ok = rep.triple.ok();
    for (const auto& e : rep.samples)
        if (!e.image_fixed || !e.right_adjoint_ok) rep.all_ok = false;
    return rep;
}

} // namespace tdlab::wavy
