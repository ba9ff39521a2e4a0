#include "tdlab/profunctor.hpp"

#include <algorithm>

namespace tdlab {

namespace {

std::string pad_label(const char* prefix, int i, int total) {
    int width = 1;
    for (int t = total - 1; t >= 10; t /= 10) ++width;
    std::string num = std::to_string(i);
    return prefix + std::string(std::max(0, width - (int)num.size()), '0') + num;
}

} // namespace

void check_profunctor(const Profunctor& m) {
    const FinCategory& c = *m.dom;
    const FinCategory& d = *m.cod;
    auto bad = [](const std::string& what) { throw Error(ErrKind::InvalidInput, what); };

    if ((int)m.at.size() != c.n_objects()) bad("profunctor value table arity");
    for (Idx x = 0; x < c.n_objects(); ++x)
        if ((int)m.at[x].size() != d.n_objects()) bad("profunctor value table arity");

    // identity actions
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx y = 0; y < d.n_objects(); ++y) {
            const auto& l = m.lact[c.identity[x]][y];
            const auto& r = m.ract[d.identity[y]][x];
            for (Idx i = 0; i < m.size_at(x, y); ++i)
                if (l[i] != i || r[i] != i) bad("identity action is not the identity");
        }
    // left functoriality: lact[u2 . u1] = lact[u1] after lact[u2]
    for (Idx u2 = 0; u2 < c.n_arrows(); ++u2)
        for (Idx u1 = 0; u1 < c.n_arrows(); ++u1) {
            if (c.tgt(u1) != c.src(u2)) continue;
            Idx u = c.comp[u2][u1];
            for (Idx y = 0; y < d.n_objects(); ++y)
                for (Idx i = 0; i < m.size_at(c.tgt(u2), y); ++i)
                    if (m.lact[u][y][i] != m.lact[u1][y][m.lact[u2][y][i]])
                        bad("left action breaks composition at " + c.arrows[u2].name + " . " +
                            c.arrows[u1].name);
        }
    // right functoriality: ract[v2 . v1] = ract[v2] after ract[v1]
    for (Idx v2 = 0; v2 < d.n_arrows(); ++v2)
        for (Idx v1 = 0; v1 < d.n_arrows(); ++v1) {
            if (d.tgt(v1) != d.src(v2)) continue;
            Idx v = d.comp[v2][v1];
            for (Idx x = 0; x < c.n_objects(); ++x)
                for (Idx i = 0; i < m.size_at(x, d.src(v1)); ++i)
                    if (m.ract[v][x][i] != m.ract[v2][x][m.ract[v1][x][i]])
                        bad("right action breaks composition at " + d.arrows[v2].name + " . " +
                            d.arrows[v1].name);
        }
    // the two actions commute
    for (Idx u = 0; u < c.n_arrows(); ++u)
        for (Idx v = 0; v < d.n_arrows(); ++v)
            for (Idx i = 0; i < m.size_at(c.tgt(u), d.src(v)); ++i)
                if (m.ract[v][c.src(u)][m.lact[u][d.src(v)][i]] !=
                    m.lact[u][d.tgt(v)][m.ract[v][c.tgt(u)][i]])
                    bad("left and right actions do not commute at " + c.arrows[u].name + ", " +
                        d.arrows[v].name);
}

Profunctor hom_profunctor(CategoryPtr cp) {
    const FinCategory& c = *cp;
    Profunctor m;
    m.dom = cp;
    m.cod = cp;
    int no = c.n_objects(), na = c.n_arrows();
    m.at.assign(no, std::vector<std::vector<std::string>>(no));
    std::vector<std::vector<std::vector<Idx>>> hom_ids(no, std::vector<std::vector<Idx>>(no));
    std::vector<Idx> pos_in_hom(na);
    for (Idx x = 0; x < no; ++x)
        for (Idx y = 0; y < no; ++y) {
            hom_ids[x][y] = c.hom(x, y);
            for (std::size_t i = 0; i < hom_ids[x][y].size(); ++i) {
                pos_in_hom[hom_ids[x][y][i]] = (Idx)i;
                m.at[x][y].push_back(c.arrows[hom_ids[x][y][i]].name);
            }
        }
    m.lact.assign(na, std::vector<std::vector<Idx>>(no));
    m.ract.assign(na, std::vector<std::vector<Idx>>(no));
    for (Idx u = 0; u < na; ++u) {
        for (Idx y = 0; y < no; ++y) {
            // precompose u : c -> c' with h in Hom(c', y)
            auto& tab = m.lact[u][y];
            for (Idx h : hom_ids[c.tgt(u)][y]) tab.push_back(pos_in_hom[c.comp[h][u]]);
        }
        for (Idx x = 0; x < no; ++x) {
            // postcompose u : d -> d' onto h in Hom(x, d)
            auto& tab = m.ract[u][x];
            for (Idx h : hom_ids[x][c.src(u)]) tab.push_back(pos_in_hom[c.comp[u][h]]);
        }
    }
    check_profunctor(m);
    return m;
}

Idx ProfComposite::class_of(Idx c, Idx e, Idx d, Idx mi, Idx ni) const {
    auto it = cls[c][e].find({d, mi, ni});
    if (it == cls[c][e].end())
        throw Error(ErrKind::InternalInconsistency, "pair not in coend table");
    return it->second;
}

ProfComposite compose_profunctors(const Profunctor& m, const Profunctor& n) {
    if (!same_category(*m.cod, *n.dom))
        throw Error(ErrKind::InvalidInput, "profunctors are not composable");
    const FinCategory& c = *m.dom;
    const FinCategory& d = *m.cod;
    const FinCategory& e = *n.cod;

    ProfComposite out;
    out.prof.dom = m.dom;
    out.prof.cod = n.cod;
    int nc = c.n_objects(), nd = d.n_objects(), ne = e.n_objects();
    out.prof.at.assign(nc, std::vector<std::vector<std::string>>(ne));
    out.reps.assign(nc, std::vector<std::vector<std::tuple<Idx, Idx, Idx>>>(ne));
    out.cls.assign(nc, std::vector<std::map<std::tuple<Idx, Idx, Idx>, Idx>>(ne));

    for (Idx x = 0; x < nc; ++x)
        for (Idx z = 0; z < ne; ++z) {
            // disjoint union of M(x,d) x N(d,z) over middle objects d
            std::vector<std::tuple<Idx, Idx, Idx>> pairs;
            std::map<std::tuple<Idx, Idx, Idx>, int> pos;
            for (Idx y = 0; y < nd; ++y)
                for (Idx mi = 0; mi < m.size_at(x, y); ++mi)
                    for (Idx ni = 0; ni < n.size_at(y, z); ++ni) {
                        pos[{y, mi, ni}] = (int)pairs.size();
                        pairs.push_back({y, mi, ni});
                    }
            UnionFind uf((int)pairs.size());
            // (m.v, n') ~ (m, v.n') along every middle arrow v : y -> y'
            for (Idx v = 0; v < d.n_arrows(); ++v) {
                Idx y = d.src(v), y2 = d.tgt(v);
                for (Idx mi = 0; mi < m.size_at(x, y); ++mi)
                    for (Idx ni = 0; ni < n.size_at(y2, z); ++ni)
                        uf.unite(pos.at({y2, m.ract[v][x][mi], ni}),
                                 pos.at({y, mi, n.lact[v][z][ni]}));
            }
            std::vector<Idx> cls_of(pairs.size(), -1);
            for (int i = 0; i < (int)pairs.size(); ++i) {
                int root = uf.find(i);
                if (cls_of[root] < 0) {
                    cls_of[root] = (Idx)out.reps[x][z].size();
                    out.reps[x][z].push_back(pairs[root]);
                }
                cls_of[i] = cls_of[root];
                out.cls[x][z][pairs[i]] = cls_of[i];
            }
            int ncl = (int)out.reps[x][z].size();
            for (int i = 0; i < ncl; ++i)
                out.prof.at[x][z].push_back(pad_label("k", i, ncl));
        }

    // induced actions, computed on representatives
    out.prof.lact.assign(c.n_arrows(), std::vector<std::vector<Idx>>(ne));
    out.prof.ract.assign(e.n_arrows(), std::vector<std::vector<Idx>>(nc));
    for (Idx u = 0; u < c.n_arrows(); ++u)
        for (Idx z = 0; z < ne; ++z) {
            Idx xs = c.src(u), xt = c.tgt(u);
            auto& tab = out.prof.lact[u][z];
            for (const auto& [y, mi, ni] : out.reps[xt][z])
                tab.push_back(out.class_of(xs, z, y, m.lact[u][y][mi], ni));
        }
    for (Idx w = 0; w < e.n_arrows(); ++w)
        for (Idx x = 0; x < nc; ++x) {
            Idx zs = e.src(w), zt = e.tgt(w);
            auto& tab = out.prof.ract[w][x];
            for (const auto& [y, mi, ni] : out.reps[x][zs])
                tab.push_back(out.class_of(x, zt, y, mi, n.ract[w][y][ni]));
        }

    // well-definedness: every member of a class maps into the same class
    for (Idx u = 0; u < c.n_arrows(); ++u)
        for (Idx z = 0; z < ne; ++z)
            for (const auto& [key, cl] : out.cls[c.tgt(u)][z]) {
                auto [y, mi, ni] = key;
                Idx img = out.class_of(c.src(u), z, y, m.lact[u][y][mi], ni);
                if (img != out.prof.lact[u][z][cl])
                    throw Error(ErrKind::InternalInconsistency, "coend left action ill-defined");
            }
    for (Idx w = 0; w < e.n_arrows(); ++w)
        for (Idx x = 0; x < nc; ++x)
            for (const auto& [key, cl] : out.cls[x][e.src(w)]) {
                auto [y, mi, ni] = key;
                Idx img = out.class_of(x, e.tgt(w), y, mi, n.ract[w][y][ni]);
                if (img != out.prof.ract[w][x][cl])
                    throw Error(ErrKind::InternalInconsistency, "coend right action ill-defined");
            }
    check_profunctor(out.prof);
    return out;
}

bool is_profunctor_iso(const Profunctor& m, const Profunctor& n, const ProfMap& f) {
    const FinCategory& c = *m.dom;
    const FinCategory& d = *m.cod;
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx y = 0; y < d.n_objects(); ++y) {
            if (m.size_at(x, y) != n.size_at(x, y)) return false;
            std::vector<bool> hit(n.size_at(x, y), false);
            for (Idx i = 0; i < m.size_at(x, y); ++i) {
                Idx j = f.comp[x][y][i];
                if (j < 0 || j >= n.size_at(x, y) || hit[j]) return false;
                hit[j] = true;
            }
        }
    for (Idx u = 0; u < c.n_arrows(); ++u)
        for (Idx y = 0; y < d.n_objects(); ++y)
            for (Idx i = 0; i < m.size_at(c.tgt(u), y); ++i)
                if (f.comp[c.src(u)][y][m.lact[u][y][i]] !=
                    n.lact[u][y][f.comp[c.tgt(u)][y][i]])
                    return false;
    for (Idx v = 0; v < d.n_arrows(); ++v)
        for (Idx x = 0; x < c.n_objects(); ++x)
            for (Idx i = 0; i < m.size_at(x, d.src(v)); ++i)
                if (f.comp[x][d.tgt(v)][m.ract[v][x][i]] !=
                    n.ract[v][x][f.comp[x][d.src(v)][i]])
                    return false;
    return true;
}

ProfMap left_unit_comparison(const ProfComposite& hm, const Profunctor& m) {
    // [(h : c -> c1, m in M(c1,d))] |-> h . m  via the left action
    const FinCategory& c = *m.dom;
    const FinCategory& d = *m.cod;
    ProfMap f;
    f.comp.assign(c.n_objects(), std::vector<std::vector<Idx>>(d.n_objects()));
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx y = 0; y < d.n_objects(); ++y)
            for (const auto& [c1, hi, mi] : hm.reps[x][y]) {
                Idx h = c.hom(x, c1)[hi];
                f.comp[x][y].push_back(m.lact[h][y][mi]);
            }
    return f;
}

ProfMap right_unit_comparison(const ProfComposite& mh, const Profunctor& m) {
    // [(m in M(c,d1), v : d1 -> d)] |-> m . v  via the right action
    const FinCategory& c = *m.dom;
    const FinCategory& d = *m.cod;
    ProfMap f;
    f.comp.assign(c.n_objects(), std::vector<std::vector<Idx>>(d.n_objects()));
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx y = 0; y < d.n_objects(); ++y)
            for (const auto& [d1, mi, vi] : mh.reps[x][y]) {
                Idx v = d.hom(d1, y)[vi];
                f.comp[x][y].push_back(m.ract[v][x][mi]);
            }
    return f;
}

} // namespace tdlab
