#include "tdlab/presheaf.hpp"

#include <algorithm>
#include <functional>

namespace tdlab::psh {

namespace {

std::string pad_label(const char* prefix, int i, int total) {
    int width = 1;
    for (int t = total - 1; t >= 10; t /= 10) ++width;
    std::string num = std::to_string(i);
    return prefix + std::string(std::max(0, width - (int)num.size()), '0') + num;
}

} // namespace

long long Presheaf::total_elements() const {
    long long n = 0;
    for (const auto& v : at) n += (long long)v.size();
    return n;
}

void check_presheaf(const Presheaf& f) {
    const FinCategory& c = *f.base;
    if ((int)f.at.size() != c.n_objects() || (int)f.act.size() != c.n_arrows())
        throw Error(ErrKind::InvalidInput, "presheaf tables have wrong arity");
    for (Idx a = 0; a < c.n_arrows(); ++a) {
        if ((int)f.act[a].size() != f.size_at(c.tgt(a)))
            throw Error(ErrKind::InvalidInput,
                        "presheaf action at " + c.arrows[a].name + " has wrong arity");
        for (Idx i : f.act[a])
            if (i < 0 || i >= f.size_at(c.src(a)))
                throw Error(ErrKind::InvalidInput,
                            "presheaf action at " + c.arrows[a].name + " out of range");
    }
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx i = 0; i < f.size_at(x); ++i)
            if (f.act[c.identity[x]][i] != i)
                throw Error(ErrKind::InvalidInput, "identity does not act as identity");
    for (Idx g = 0; g < c.n_arrows(); ++g)
        for (Idx a = 0; a < c.n_arrows(); ++a) {
            if (c.tgt(a) != c.src(g)) continue;
            Idx ga = c.comp[g][a];
            for (Idx i = 0; i < f.size_at(c.tgt(g)); ++i)
                if (f.act[ga][i] != f.act[a][f.act[g][i]])
                    throw Error(ErrKind::InvalidInput,
                                "contravariant functoriality fails at " + c.arrows[g].name +
                                    " . " + c.arrows[a].name);
        }
}

Presheaf yoneda(CategoryPtr cp, Idx obj) {
    const FinCategory& c = *cp;
    Presheaf f;
    f.base = cp;
    f.name = "y(" + c.objects[obj] + ")";
    f.at.resize(c.n_objects());
    std::vector<std::vector<Idx>> hom_to(c.n_objects());
    std::vector<Idx> pos(c.n_arrows(), -1);
    for (Idx x = 0; x < c.n_objects(); ++x) {
        hom_to[x] = c.hom(x, obj);
        for (std::size_t i = 0; i < hom_to[x].size(); ++i) {
            pos[hom_to[x][i]] = (Idx)i;
            f.at[x].push_back(c.arrows[hom_to[x][i]].name);
        }
    }
    f.act.resize(c.n_arrows());
    for (Idx a = 0; a < c.n_arrows(); ++a)
        for (Idx h : hom_to[c.tgt(a)]) f.act[a].push_back(pos[c.comp[h][a]]);
    check_presheaf(f);
    return f;
}

Presheaf terminal_presheaf(CategoryPtr cp) {
    Presheaf f;
    f.base = cp;
    f.name = "terminal";
    f.at.assign(cp->n_objects(), {"*"});
    f.act.assign(cp->n_arrows(), {0});
    check_presheaf(f);
    return f;
}

Presheaf empty_presheaf(CategoryPtr cp) {
    Presheaf f;
    f.base = cp;
    f.name = "empty";
    f.at.assign(cp->n_objects(), {});
    f.act.assign(cp->n_arrows(), {});
    check_presheaf(f);
    return f;
}

Presheaf coproduct(const Presheaf& f, const Presheaf& g) {
    if (!same_category(*f.base, *g.base))
        throw Error(ErrKind::InvalidInput, "coproduct needs a shared base");
    Presheaf h;
    h.base = f.base;
    h.name = f.name + "+" + g.name;
    h.at.resize(f.base->n_objects());
    for (Idx x = 0; x < f.base->n_objects(); ++x) {
        for (const auto& e : f.at[x]) h.at[x].push_back("l:" + e);
        for (const auto& e : g.at[x]) h.at[x].push_back("r:" + e);
    }
    h.act.resize(f.base->n_arrows());
    for (Idx a = 0; a < f.base->n_arrows(); ++a) {
        Idx off = f.size_at(f.base->src(a));
        for (Idx i : f.act[a]) h.act[a].push_back(i);
        for (Idx i : g.act[a]) h.act[a].push_back(off + i);
    }
    check_presheaf(h);
    return h;
}

Presheaf product(const Presheaf& f, const Presheaf& g) {
    if (!same_category(*f.base, *g.base))
        throw Error(ErrKind::InvalidInput, "product needs a shared base");
    Presheaf h;
    h.base = f.base;
    h.name = f.name + "*" + g.name;
    h.at.resize(f.base->n_objects());
    for (Idx x = 0; x < f.base->n_objects(); ++x)
        for (const auto& e1 : f.at[x])
            for (const auto& e2 : g.at[x]) h.at[x].push_back("(" + e1 + "," + e2 + ")");
    h.act.resize(f.base->n_arrows());
    for (Idx a = 0; a < f.base->n_arrows(); ++a) {
        Idx xs = f.base->src(a), xt = f.base->tgt(a);
        for (Idx i = 0; i < f.size_at(xt); ++i)
            for (Idx j = 0; j < g.size_at(xt); ++j)
                h.act[a].push_back(f.act[a][i] * g.size_at(xs) + g.act[a][j]);
    }
    check_presheaf(h);
    return h;
}

std::vector<std::vector<Idx>> product_proj_left(const Presheaf& f, const Presheaf& g) {
    std::vector<std::vector<Idx>> p(f.base->n_objects());
    for (Idx x = 0; x < f.base->n_objects(); ++x)
        for (Idx i = 0; i < f.size_at(x); ++i)
            for (Idx j = 0; j < g.size_at(x); ++j) p[x].push_back(i);
    return p;
}

std::vector<std::vector<Idx>> product_proj_right(const Presheaf& f, const Presheaf& g) {
    std::vector<std::vector<Idx>> p(f.base->n_objects());
    for (Idx x = 0; x < f.base->n_objects(); ++x)
        for (Idx i = 0; i < f.size_at(x); ++i)
            for (Idx j = 0; j < g.size_at(x); ++j) p[x].push_back(j);
    return p;
}

//----------------------------------------------------------------------------
// natural transformations

bool is_natural(const Presheaf& f, const Presheaf& g, const NatTrans& t) {
    const FinCategory& c = *f.base;
    for (Idx a = 0; a < c.n_arrows(); ++a) {
        Idx xs = c.src(a), xt = c.tgt(a);
        for (Idx i = 0; i < f.size_at(xt); ++i)
            if (t.comp[xs][f.act[a][i]] != g.act[a][t.comp[xt][i]]) return false;
    }
    return true;
}

NatTrans identity_nat(const Presheaf& f) {
    NatTrans t;
    t.comp.resize(f.base->n_objects());
    for (Idx x = 0; x < f.base->n_objects(); ++x) {
        t.comp[x].resize(f.size_at(x));
        for (Idx i = 0; i < f.size_at(x); ++i) t.comp[x][i] = i;
    }
    return t;
}

NatTrans vertical_compose(const NatTrans& b, const NatTrans& a) {
    NatTrans t;
    t.comp.resize(a.comp.size());
    for (std::size_t x = 0; x < a.comp.size(); ++x) {
        t.comp[x].reserve(a.comp[x].size());
        for (Idx i : a.comp[x]) t.comp[x].push_back(b.comp[x][i]);
    }
    return t;
}

bool nat_equal(const NatTrans& a, const NatTrans& b) { return a.comp == b.comp; }

bool nat_is_iso(const Presheaf& f, const Presheaf& g, const NatTrans& t) {
    for (Idx x = 0; x < f.base->n_objects(); ++x) {
        if (f.size_at(x) != g.size_at(x)) return false;
        std::vector<bool> hit(g.size_at(x), false);
        for (Idx i = 0; i < f.size_at(x); ++i) {
            Idx j = t.comp[x][i];
            if (j < 0 || j >= g.size_at(x) || hit[j]) return false;
            hit[j] = true;
        }
    }
    return true;
}

std::vector<NatTrans> nat_trans_set(const Presheaf& f, const Presheaf& g, const Limits& lim) {
    if (!same_category(*f.base, *g.base))
        throw Error(ErrKind::InvalidInput, "nat_trans_set needs a shared base");
    const FinCategory& c = *f.base;
    int no = c.n_objects();

    // guard on the unfiltered family count
    long long families = 1;
    for (Idx x = 0; x < no; ++x) {
        long long per = 1;
        for (Idx i = 0; i < f.size_at(x); ++i) {
            per *= g.size_at(x);
            if (per > lim.max_families) break;
        }
        if (f.size_at(x) > 0 && g.size_at(x) == 0) per = 0;
        families = per == 0 ? 0 : families * per;
        if (families > lim.max_families)
            throw Error(ErrKind::SizeGuardExceeded, "natural-transformation family count");
        if (families == 0) break;
    }

    // arrows checkable once all objects up to x are assigned
    std::vector<std::vector<Idx>> ready(no);
    for (Idx a = 0; a < c.n_arrows(); ++a)
        ready[std::max(c.src(a), c.tgt(a))].push_back(a);

    std::vector<NatTrans> out;
    NatTrans cur;
    cur.comp.assign(no, {});

    std::function<void(Idx)> rec = [&](Idx x) {
        if (x == no) {
            out.push_back(cur);
            return;
        }
        int fx = f.size_at(x), gx = g.size_at(x);
        if (fx > 0 && gx == 0) return;
        std::vector<Idx> comp(fx, 0);
        while (true) {
            cur.comp[x] = comp;
            bool ok = true;
            for (Idx a : ready[x]) {
                Idx xs = c.src(a), xt = c.tgt(a);
                for (Idx i = 0; i < f.size_at(xt) && ok; ++i)
                    if (cur.comp[xs][f.act[a][i]] != g.act[a][cur.comp[xt][i]]) ok = false;
                if (!ok) break;
            }
            if (ok) rec(x + 1);
            // next function in lexicographic order
            int k = fx - 1;
            while (k >= 0 && comp[k] == gx - 1) --k;
            if (k < 0) break;
            ++comp[k];
            for (int t = k + 1; t < fx; ++t) comp[t] = 0;
        }
        cur.comp[x].clear();
    };
    rec(0);
    return out;
}

Idx nat_index_in(const std::vector<NatTrans>& all, const NatTrans& t) {
    for (Idx i = 0; i < (Idx)all.size(); ++i)
        if (nat_equal(all[i], t)) return i;
    throw Error(ErrKind::InternalInconsistency, "transformation missing from enumeration");
}

NatTrans yoneda_postcompose(CategoryPtr cp, Idx f) {
    const FinCategory& c = *cp;
    Presheaf ysrc = yoneda(cp, c.src(f));
    Presheaf ytgt = yoneda(cp, c.tgt(f));
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
            if (pos < 0)
                throw Error(ErrKind::InternalInconsistency, "postcompose escaped hom");
            t.comp[z].push_back(pos);
        }
    }
    if (!is_natural(ysrc, ytgt, t))
        throw Error(ErrKind::InternalInconsistency, "postcomposition not natural");
    return t;
}

//----------------------------------------------------------------------------
// coends and ends

void check_bifunctor(const Bifunctor& h) {
    if (!same_category(*h.dom, *h.cod))
        throw Error(ErrKind::InvalidInput, "bifunctor needs equal domain and codomain");
    check_profunctor(h);
}

Coend coend(const Bifunctor& h) {
    const FinCategory& c = *h.dom;
    int no = c.n_objects();
    std::vector<int> offset(no + 1, 0);
    for (Idx x = 0; x < no; ++x) offset[x + 1] = offset[x] + h.size_at(x, x);
    UnionFind uf(offset[no]);
    // H(f,id)(x) ~ H(id,f)(x) for f : a -> b, x in H(b,a)
    for (Idx f = 0; f < c.n_arrows(); ++f) {
        Idx a = c.src(f), b = c.tgt(f);
        for (Idx i = 0; i < h.size_at(b, a); ++i)
            uf.unite(offset[a] + h.lact[f][a][i], offset[b] + h.ract[f][b][i]);
    }
    Coend out;
    out.inj.resize(no);
    std::vector<Idx> cls_of(offset[no], -1);
    for (Idx x = 0; x < no; ++x)
        for (Idx i = 0; i < h.size_at(x, x); ++i) {
            int root = uf.find(offset[x] + i);
            if (cls_of[root] < 0) {
                cls_of[root] = (Idx)out.reps.size();
                int rx = 0;
                while (offset[rx + 1] <= root) ++rx;
                out.reps.push_back({rx, root - offset[rx]});
            }
            out.inj[x].push_back(cls_of[root]);
        }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < out.reps.size(); ++i)
        labels.push_back(pad_label("k", (int)i, (int)out.reps.size()));
    out.classes = make_finset("coend", labels);
    return out;
}

End end(const Bifunctor& h, const Limits& lim) {
    const FinCategory& c = *h.dom;
    int no = c.n_objects();
    long long count = 1;
    for (Idx x = 0; x < no; ++x) {
        count = h.size_at(x, x) == 0 ? 0 : count * h.size_at(x, x);
        if (count > lim.max_families)
            throw Error(ErrKind::SizeGuardExceeded, "end family count");
        if (count == 0) break;
    }
    std::vector<std::vector<Idx>> ready(no);
    for (Idx a = 0; a < c.n_arrows(); ++a)
        ready[std::max(c.src(a), c.tgt(a))].push_back(a);

    End out;
    std::vector<Idx> cur(no, -1);
    std::function<void(Idx)> rec = [&](Idx x) {
        if (x == no) {
            out.families.push_back(cur);
            return;
        }
        if (h.size_at(x, x) == 0) return;
        for (Idx v = 0; v < h.size_at(x, x); ++v) {
            cur[x] = v;
            bool ok = true;
            for (Idx a : ready[x]) {
                Idx s = c.src(a), t = c.tgt(a);
                // compatible family: ract[a](x_s) == lact[a](x_t) in H(s,t)
                if (h.ract[a][s][cur[s]] != h.lact[a][t][cur[t]]) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(x + 1);
        }
        cur[x] = -1;
    };
    rec(0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < out.families.size(); ++i)
        labels.push_back(pad_label("t", (int)i, (int)out.families.size()));
    out.elements = make_finset("end", labels);
    return out;
}

//----------------------------------------------------------------------------
// induced cocontinuous functor of a profunctor

Idx ProfApplication::class_of(Idx d, Idx c, Idx mi, Idx fi) const {
    auto it = cls[d].find({c, mi, fi});
    if (it == cls[d].end())
        throw Error(ErrKind::InternalInconsistency, "pair not in application table");
    return it->second;
}

ProfApplication apply_profunctor(const Profunctor& m, const Copresheaf& f) {
    const FinCategory& c = *m.dom;
    const FinCategory& d = *m.cod;
    FinCategory cop = opposite(c);
    if (!same_category(*f.base, cop))
        throw Error(ErrKind::InvalidInput, "copresheaf base must be the opposite of dom");

    ProfApplication out;
    out.result.base = std::make_shared<const FinCategory>(opposite(d));
    out.result.name = "M(" + f.name + ")";
    int nd = d.n_objects();
    out.result.at.resize(nd);
    out.reps.resize(nd);
    out.cls.resize(nd);

    for (Idx y = 0; y < nd; ++y) {
        std::vector<std::tuple<Idx, Idx, Idx>> pairs;
        std::map<std::tuple<Idx, Idx, Idx>, int> pos;
        for (Idx x = 0; x < c.n_objects(); ++x)
            for (Idx mi = 0; mi < m.size_at(x, y); ++mi)
                for (Idx fi = 0; fi < f.size_at(x); ++fi) {
                    pos[{x, mi, fi}] = (int)pairs.size();
                    pairs.push_back({x, mi, fi});
                }
        UnionFind uf((int)pairs.size());
        // (m.u, xi) ~ (m, u.xi) for u : x -> x' in C
        for (Idx u = 0; u < c.n_arrows(); ++u) {
            Idx xs = c.src(u), xt = c.tgt(u);
            for (Idx mi = 0; mi < m.size_at(xt, y); ++mi)
                for (Idx fi = 0; fi < f.size_at(xs); ++fi)
                    uf.unite(pos.at({xs, m.lact[u][y][mi], fi}),
                             pos.at({xt, mi, f.act[u][fi]}));
        }
        std::vector<Idx> cls_of(pairs.size(), -1);
        for (int i = 0; i < (int)pairs.size(); ++i) {
            int root = uf.find(i);
            if (cls_of[root] < 0) {
                cls_of[root] = (Idx)out.reps[y].size();
                out.reps[y].push_back(pairs[root]);
            }
            out.cls[y][pairs[i]] = cls_of[root];
        }
        int ncl = (int)out.reps[y].size();
        for (int i = 0; i < ncl; ++i) out.result.at[y].push_back(pad_label("k", i, ncl));
    }

    // covariant action: g : y -> y' in D sends [(m, xi)] to [(m.g, xi)]
    out.result.act.resize(d.n_arrows());
    for (Idx g = 0; g < d.n_arrows(); ++g) {
        Idx ys = d.src(g), yt = d.tgt(g);
        for (const auto& [x, mi, fi] : out.reps[ys])
            out.result.act[g].push_back(out.class_of(yt, x, m.ract[g][x][mi], fi));
        // well-definedness over the whole class
        for (const auto& [key, cl] : out.cls[ys]) {
            auto [x, mi, fi] = key;
            if (out.class_of(yt, x, m.ract[g][x][mi], fi) != out.result.act[g][cl])
                throw Error(ErrKind::InternalInconsistency, "induced action ill-defined");
        }
    }
    check_presheaf(out.result);
    return out;
}

NatTrans apply_profunctor_to_nat(const Profunctor& m, const Copresheaf& f, const Copresheaf& g,
                                 const NatTrans& t, const ProfApplication& mf,
                                 const ProfApplication& mg) {
    (void)m;
    (void)g;
    NatTrans r;
    int nd = (int)mf.reps.size();
    r.comp.resize(nd);
    for (Idx y = 0; y < nd; ++y)
        for (const auto& [x, mi, fi] : mf.reps[y])
            r.comp[y].push_back(mg.class_of(y, x, mi, t.comp[x][fi]));
    (void)f;
    return r;
}

//----------------------------------------------------------------------------
// elements and flatness

Idx ElementsCategory::vertex_id(Idx obj, Idx elem) const {
    for (Idx v = 0; v < (Idx)vertex.size(); ++v)
        if (vertex[v] == std::make_pair(obj, elem)) return v;
    throw Error(ErrKind::InternalInconsistency, "missing vertex in elements category");
}

ElementsCategory elements_category(const Presheaf& f) {
    const FinCategory& c = *f.base;
    RawCategory raw;
    std::vector<std::pair<Idx, Idx>> vertex;
    auto vname = [&](Idx x, Idx i) { return c.objects[x] + ":" + f.at[x][i]; };
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx i = 0; i < f.size_at(x); ++i) {
            raw.objects.push_back(vname(x, i));
            vertex.push_back({x, i});
        }
    // one arrow (x, act_a(j)) -> (x', j) per non-identity a : x -> x', j in F(x')
    auto aname = [&](Idx a, Idx j) {
        return c.arrows[a].name + "@" + f.at[c.tgt(a)][j];
    };
    for (Idx a = 0; a < c.n_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        Idx xs = c.src(a), xt = c.tgt(a);
        for (Idx j = 0; j < f.size_at(xt); ++j)
            raw.raw_arrows.push_back({aname(a, j), vname(xs, f.act[a][j]), vname(xt, j)});
    }
    for (Idx a = 0; a < c.n_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        for (Idx b = 0; b < c.n_arrows(); ++b) {
            if (c.is_identity(b) || c.tgt(a) != c.src(b)) continue;
            Idx ba = c.comp[b][a];
            for (Idx j = 0; j < f.size_at(c.tgt(b)); ++j) {
                std::string h = c.is_identity(ba)
                                    ? "id_" + vname(c.src(a), f.act[ba][j])
                                    : aname(ba, j);
                raw.composites.push_back({aname(b, j), aname(a, f.act[b][j]), h});
            }
        }
    }
    Limits wide;  // elements categories of sample presheaves may pass 64 objects
    wide.max_objects = 4096;
    ElementsCategory out;
    out.cat = validate_category(raw, wide);
    // remap vertices to the canonical object order
    out.vertex.resize(vertex.size());
    for (std::size_t v = 0; v < vertex.size(); ++v) {
        auto [x, i] = vertex[v];
        out.vertex[out.cat.object_id(vname(x, i))] = {x, i};
    }
    return out;
}

FlatReport flat_check(const Presheaf& f) {
    // The elements category here points along restrictions, so flatness is
    // its filteredness; in the opposite orientation this is the usual
    // cofilteredness with source cones.
    ElementsCategory el = elements_category(f);
    const FinCategory& e = el.cat;
    if (e.n_objects() == 0) return {false, "category of elements is empty"};
    // every pair admits a cone: an object receiving a map from each
    for (Idx p = 0; p < e.n_objects(); ++p)
        for (Idx q = p; q < e.n_objects(); ++q) {
            bool cone = false;
            for (Idx w = 0; w < e.n_objects() && !cone; ++w)
                if (!e.hom(p, w).empty() && !e.hom(q, w).empty()) cone = true;
            if (!cone)
                return {false, "no cone over (" + e.objects[p] + ", " + e.objects[q] + ")"};
        }
    // every parallel pair is equalized by some arrow out of its target
    for (Idx p = 0; p < e.n_objects(); ++p)
        for (Idx q = 0; q < e.n_objects(); ++q) {
            auto par = e.hom(p, q);
            for (std::size_t i = 0; i < par.size(); ++i)
                for (std::size_t j = i + 1; j < par.size(); ++j) {
                    bool eq = false;
                    for (Idx w = 0; w < e.n_objects() && !eq; ++w)
                        for (Idx h : e.hom(q, w))
                            if (e.comp[h][par[i]] == e.comp[h][par[j]]) {
                                eq = true;
                                break;
                            }
                    if (!eq)
                        return {false, "parallel pair (" + e.arrows[par[i]].name + ", " +
                                           e.arrows[par[j]].name + ") not equalized"};
                }
        }
    return {true, ""};
}

//----------------------------------------------------------------------------
// sample suites

std::vector<Presheaf> standard_presheaf_samples(CategoryPtr c) {
    std::vector<Presheaf> s;
    for (Idx x = 0; x < c->n_objects(); ++x) s.push_back(yoneda(c, x));
    int nr = c->n_objects();
    for (Idx x = 0; x < nr; ++x)
        for (Idx y = x; y < nr; ++y) s.push_back(coproduct(yoneda(c, x), yoneda(c, y)));
    s.push_back(terminal_presheaf(c));
    s.push_back(empty_presheaf(c));
    return s;
}

std::vector<Copresheaf> standard_copresheaf_samples(CategoryPtr a) {
    auto op = std::make_shared<const FinCategory>(opposite(*a));
    return standard_presheaf_samples(op);
}

} // namespace tdlab::psh
