#include <doctest.h>

#include "tdlab/presheaf.hpp"

using namespace tdlab;
using namespace tdlab::psh;

namespace {

CategoryPtr cat(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

std::vector<CategoryPtr> small_bases() {
    return {cat(builtin_category("terminal", 0)), cat(builtin_category("chain", 1)),
            cat(builtin_category("chain", 2)), cat(builtin_category("discrete", 2)),
            cat(builtin_category("simplex", 1)), cat(builtin_category("monoid-table", 2))};
}

// hom bifunctor of a category, for coend/end checks
Bifunctor hom_bifunctor(CategoryPtr c) { return hom_profunctor(c); }

} // namespace

TEST_CASE("yoneda: values and restrictions") {
    // terminal category: constant singleton
    auto t = cat(builtin_category("terminal", 0));
    Presheaf yt = yoneda(t, 0);
    CHECK(yt.at[0].size() == 1);

    // walking arrow, representable at the target
    auto c = cat(builtin_category("chain", 1));
    Idx c0 = c->object_id("c0"), c1 = c->object_id("c1");
    Presheaf y1 = yoneda(c, c1);
    CHECK(y1.size_at(c0) == 1);  // the arrow c0 -> c1
    CHECK(y1.size_at(c1) == 1);  // the identity
    Idx f = c->arrow_id("le_c0_c1");
    CHECK(y1.act[f][0] == 0);  // restriction precomposes

    // 3-chain, representable at the top: singleton everywhere
    auto c3 = cat(builtin_category("chain", 2));
    Presheaf ytop = yoneda(c3, c3->object_id("c2"));
    for (Idx x = 0; x < c3->n_objects(); ++x) CHECK(ytop.size_at(x) == 1);
}

TEST_CASE("nat_trans_set: Yoneda bijection on the sample suite") {
    for (auto c : small_bases()) {
        auto suite = standard_presheaf_samples(c);
        for (Idx x = 0; x < c->n_objects(); ++x) {
            Presheaf yx = yoneda(c, x);
            for (const Presheaf& f : suite) {
                auto nats = nat_trans_set(yx, f);
                CHECK((int)nats.size() == f.size_at(x));
                // the canonical map evaluates at the identity; it must be a bijection
                std::vector<bool> hit(f.size_at(x), false);
                Idx id_pos = -1;
                for (std::size_t i = 0; i < yx.at[x].size(); ++i)
                    if (yx.at[x][i] == c->arrows[c->identity[x]].name) id_pos = (Idx)i;
                REQUIRE(id_pos >= 0);
                for (const NatTrans& t : nats) {
                    Idx v = t.comp[x][id_pos];
                    CHECK_FALSE(hit[v]);
                    hit[v] = true;
                }
            }
        }
    }
}

TEST_CASE("nat_trans_set: terminal target and empty edge cases") {
    auto c = cat(builtin_category("chain", 1));
    Presheaf term = terminal_presheaf(c);
    Presheaf e = empty_presheaf(c);
    CHECK(nat_trans_set(coproduct(yoneda(c, 0), yoneda(c, 1)), term).size() == 1);
    CHECK(nat_trans_set(e, e).size() == 1);       // the empty family
    CHECK(nat_trans_set(term, e).size() == 0);    // nothing maps a point into nothing
    CHECK(nat_trans_set(e, term).size() == 1);
}

TEST_CASE("nat_trans_set guard") {
    auto c = cat(builtin_category("discrete", 2));
    Presheaf big = terminal_presheaf(c);
    for (int k = 0; k < 5; ++k) big = coproduct(big, big);  // 32 points per object
    Limits tight;
    tight.max_families = 1000;
    CHECK_THROWS_AS(nat_trans_set(big, big, tight), Error);
}

TEST_CASE("coend of the hom bifunctor on the terminal category is a point") {
    auto t = cat(builtin_category("terminal", 0));
    Coend ce = coend(hom_bifunctor(t));
    CHECK(ce.classes.size() == 1);
}

TEST_CASE("coend: constant singleton over the 2-discrete category has two classes") {
    auto d = cat(builtin_category("discrete", 2));
    Bifunctor h = hom_bifunctor(d);
    // overwrite with a constant singleton in every slot
    for (Idx x = 0; x < 2; ++x)
        for (Idx y = 0; y < 2; ++y) h.at[x][y] = {"*"};
    for (Idx a = 0; a < d->n_arrows(); ++a)
        for (Idx o = 0; o < 2; ++o) {
            h.lact[a][o] = {0};
            h.ract[a][o] = {0};
        }
    check_profunctor(h);
    CHECK(coend(h).classes.size() == 2);
}

TEST_CASE("co-Yoneda: the coend reconstruction is isomorphic to F") {
    for (auto c : small_bases()) {
        for (const Presheaf& f : standard_presheaf_samples(c)) {
            // H(a,b) = F(a) x Hom(x, b) for each probe object x, coend over the base
            for (Idx x = 0; x < c->n_objects(); ++x) {
                Bifunctor h;
                h.dom = c;
                h.cod = c;
                int no = c->n_objects();
                Profunctor hom = hom_profunctor(c);
                h.at.assign(no, std::vector<std::vector<std::string>>(no));
                for (Idx a = 0; a < no; ++a)
                    for (Idx b = 0; b < no; ++b)
                        for (const auto& fe : f.at[a])
                            for (const auto& he : hom.at[x][b])
                                h.at[a][b].push_back(fe + "|" + he);
                h.lact.assign(c->n_arrows(), std::vector<std::vector<Idx>>(no));
                h.ract.assign(c->n_arrows(), std::vector<std::vector<Idx>>(no));
                for (Idx u = 0; u < c->n_arrows(); ++u) {
                    Idx us = c->src(u), ut = c->tgt(u);
                    for (Idx b = 0; b < no; ++b) {
                        int hb = (int)hom.at[x][b].size();
                        for (Idx i = 0; i < f.size_at(ut); ++i)
                            for (Idx j = 0; j < hb; ++j)
                                h.lact[u][b].push_back(f.act[u][i] * hb + j);
                    }
                    for (Idx a = 0; a < no; ++a) {
                        int hs = (int)hom.at[x][us].size();
                        int ht = (int)hom.at[x][ut].size();
                        (void)hs;
                        for (Idx i = 0; i < f.size_at(a); ++i)
                            for (Idx j = 0; j < (Idx)hom.at[x][us].size(); ++j)
                                h.ract[u][a].push_back(i * ht + hom.ract[u][x][j]);
                    }
                }
                check_profunctor(h);
                Coend ce = coend(h);
                // canonical comparison [(xi in F(a), h : x -> a)] -> F(h)(xi)
                std::vector<Idx> to_f(ce.classes.size(), -1);
                bool well_defined = true;
                for (Idx a = 0; a < no; ++a) {
                    auto homxa = c->hom(x, a);
                    for (Idx i = 0; i < f.size_at(a); ++i)
                        for (Idx j = 0; j < (Idx)homxa.size(); ++j) {
                            Idx cls = ce.inj[a][i * (Idx)homxa.size() + j];
                            Idx val = f.act[homxa[j]][i];
                            if (to_f[cls] < 0) to_f[cls] = val;
                            else if (to_f[cls] != val) well_defined = false;
                        }
                }
                CHECK(well_defined);
                CHECK((int)ce.classes.size() == f.size_at(x));
                std::vector<bool> hit(f.size_at(x), false);
                for (Idx v : to_f) {
                    REQUIRE(v >= 0);
                    CHECK_FALSE(hit[v]);
                    hit[v] = true;
                }
            }
        }
    }
}

TEST_CASE("end: terminal category, discrete product, and agreement with nat_trans_set") {
    auto t = cat(builtin_category("terminal", 0));
    CHECK(end(hom_bifunctor(t)).families.size() == 1);

    auto d = cat(builtin_category("discrete", 2));
    Bifunctor h = hom_bifunctor(d);
    for (Idx x = 0; x < 2; ++x)
        for (Idx y = 0; y < 2; ++y) h.at[x][y] = {"a", "b"};
    for (Idx a = 0; a < d->n_arrows(); ++a)
        for (Idx o = 0; o < 2; ++o) {
            h.lact[a][o] = {0, 1};
            h.ract[a][o] = {0, 1};
        }
    check_profunctor(h);
    CHECK(end(h).families.size() == 4);  // full product over the discrete base
}

TEST_CASE("end of the mapping bifunctor equals nat_trans_set") {
    for (auto c : small_bases()) {
        auto suite = standard_presheaf_samples(c);
        // keep the sweep tame: representables and terminal/empty against each other
        for (const Presheaf& f : suite) {
            for (const Presheaf& g : suite) {
                if (f.total_elements() > 6 || g.total_elements() > 6) continue;
                // B(a,b) = Set(F(b), G(a))
                Bifunctor h;
                h.dom = c;
                h.cod = c;
                int no = c->n_objects();
                h.at.assign(no, std::vector<std::vector<std::string>>(no));
                auto fun_count = [&](Idx b, Idx a) {
                    long long k = 1;
                    for (int i = 0; i < f.size_at(b); ++i) k *= g.size_at(a);
                    return f.size_at(b) > 0 && g.size_at(a) == 0 ? 0 : k;
                };
                // encode a function F(b) -> G(a) as digits base |G(a)|
                for (Idx a = 0; a < no; ++a)
                    for (Idx b = 0; b < no; ++b)
                        for (long long k = 0; k < fun_count(b, a); ++k)
                            h.at[a][b].push_back("f" + std::to_string(k));
                auto decode = [&](Idx a, Idx b, long long code) {
                    std::vector<Idx> fn(f.size_at(b));
                    for (int i = 0; i < f.size_at(b); ++i) {
                        fn[i] = code % std::max(1, g.size_at(a));
                        code /= std::max(1, g.size_at(a));
                    }
                    return fn;
                };
                auto encode = [&](Idx a, const std::vector<Idx>& fn) {
                    long long code = 0;
                    for (int i = (int)fn.size() - 1; i >= 0; --i)
                        code = code * g.size_at(a) + fn[i];
                    return code;
                };
                h.lact.assign(c->n_arrows(), std::vector<std::vector<Idx>>(no));
                h.ract.assign(c->n_arrows(), std::vector<std::vector<Idx>>(no));
                for (Idx u = 0; u < c->n_arrows(); ++u) {
                    Idx us = c->src(u), ut = c->tgt(u);
                    // lact: postcompose G(u): B(ut, b) -> B(us, b)
                    for (Idx b = 0; b < no; ++b)
                        for (long long k = 0; k < fun_count(b, ut); ++k) {
                            auto fn = decode(ut, b, k);
                            std::vector<Idx> gn(fn.size());
                            for (std::size_t i = 0; i < fn.size(); ++i)
                                gn[i] = g.act[u][fn[i]];
                            h.lact[u][b].push_back((Idx)encode(us, gn));
                        }
                    // ract: precompose F(u): B(a, us) -> B(a, ut)
                    for (Idx a = 0; a < no; ++a)
                        for (long long k = 0; k < fun_count(us, a); ++k) {
                            auto fn = decode(a, us, k);
                            std::vector<Idx> gn(f.size_at(ut));
                            for (Idx i = 0; i < f.size_at(ut); ++i) gn[i] = fn[f.act[u][i]];
                            h.ract[u][a].push_back((Idx)encode(a, gn));
                        }
                }
                check_profunctor(h);
                End e = end(h);
                auto nats = nat_trans_set(f, g);
                CHECK(e.families.size() == nats.size());
            }
        }
    }
}

TEST_CASE("apply_profunctor: hom acts as the identity") {
    for (auto a : {cat(builtin_category("chain", 1)), cat(builtin_category("simplex", 1))}) {
        Profunctor hom = hom_profunctor(a);
        for (const Copresheaf& f : standard_copresheaf_samples(a)) {
            ProfApplication mf = apply_profunctor(hom, f);
            // canonical iso [(u : a' -> a, xi in F(a'))] -> F(u)(xi)
            NatTrans t;
            t.comp.resize(a->n_objects());
            bool ok = true;
            for (Idx y = 0; y < a->n_objects(); ++y) {
                for (const auto& [x, mi, fi] : mf.reps[y]) {
                    Idx u = a->hom(x, y)[mi];
                    t.comp[y].push_back(f.act[u][fi]);
                }
            }
            CHECK(ok);
            CHECK(is_natural(mf.result, f, t));
            CHECK(nat_is_iso(mf.result, f, t));
        }
    }
}

TEST_CASE("apply_profunctor on the 2-chain merges along the order") {
    auto a = cat(builtin_category("chain", 1));
    Profunctor leq = hom_profunctor(a);
    // copresheaf on the chain: F(c0) = {x}, F(c1) = {y}, the arrow maps x to y
    Copresheaf f = empty_presheaf(cat(opposite(*a)));
    f.name = "two-point";
    Idx c0 = f.base->object_id("c0"), c1 = f.base->object_id("c1");
    f.at[c0] = {"x"};
    f.at[c1] = {"y"};
    f.act[f.base->identity[c0]] = {0};
    f.act[f.base->identity[c1]] = {0};
    Idx arr = f.base->arrow_id("le_c0_c1");
    f.act[arr] = {0};
    check_presheaf(f);
    ProfApplication mf = apply_profunctor(leq, f);
    CHECK(mf.result.size_at(c1) == 1);  // (le, x) and (id, y) in one class
    CHECK(mf.result.size_at(c0) == 1);

    // empty copresheaf stays empty
    Copresheaf e = empty_presheaf(cat(opposite(*a)));
    ProfApplication me = apply_profunctor(leq, e);
    CHECK(me.result.total_elements() == 0);
}

TEST_CASE("apply_profunctor preserves binary coproducts of copresheaves") {
    for (auto a : {cat(builtin_category("chain", 2)), cat(builtin_category("simplex", 1))}) {
        Profunctor m = hom_profunctor(a);
        auto samples = standard_copresheaf_samples(a);
        for (std::size_t i = 0; i < samples.size(); i += 3)
            for (std::size_t j = 0; j < samples.size(); j += 4) {
                const Copresheaf& f = samples[i];
                const Copresheaf& g = samples[j];
                Copresheaf fg = coproduct(f, g);
                ProfApplication mfg = apply_profunctor(m, fg);
                ProfApplication mf = apply_profunctor(m, f);
                ProfApplication mg = apply_profunctor(m, g);
                // canonical comparison M(F)+M(G) -> M(F+G): classwise injections
                for (Idx d = 0; d < a->n_objects(); ++d) {
                    CHECK(mfg.reps[d].size() == mf.reps[d].size() + mg.reps[d].size());
                    std::vector<bool> hit(mfg.reps[d].size(), false);
                    Idx off = f.size_at(0);
                    (void)off;
                    for (const auto& [x, mi, fi] : mf.reps[d]) {
                        Idx cls = mfg.class_of(d, x, mi, fi);  // left injection
                        CHECK_FALSE(hit[cls]);
                        hit[cls] = true;
                    }
                    for (const auto& [x, mi, gi] : mg.reps[d]) {
                        Idx cls = mfg.class_of(d, x, mi, f.size_at(x) + gi);
                        CHECK_FALSE(hit[cls]);
                        hit[cls] = true;
                    }
                }
            }
    }
}

TEST_CASE("flat_check: representables are flat, split coproducts are not") {
    auto c = cat(builtin_category("chain", 1));
    CHECK(flat_check(yoneda(c, 0)).flat);
    CHECK(flat_check(yoneda(c, 1)).flat);

    FlatReport co = flat_check(coproduct(yoneda(c, 0), yoneda(c, 1)));
    CHECK_FALSE(co.flat);
    CHECK(co.witness.find("no cone") != std::string::npos);

    FlatReport em = flat_check(empty_presheaf(c));
    CHECK_FALSE(em.flat);
    CHECK(em.witness.find("empty") != std::string::npos);
}

TEST_CASE("product presheaf and projections") {
    auto c = cat(builtin_category("chain", 1));
    Presheaf f = coproduct(yoneda(c, 0), yoneda(c, 1));
    Presheaf g = yoneda(c, 1);
    Presheaf p = product(f, g);
    check_presheaf(p);
    for (Idx x = 0; x < c->n_objects(); ++x)
        CHECK(p.size_at(x) == f.size_at(x) * g.size_at(x));
    auto pl = product_proj_left(f, g);
    auto pr = product_proj_right(f, g);
    NatTrans tl{pl}, tr{pr};
    CHECK(is_natural(p, f, tl));
    CHECK(is_natural(p, g, tr));
}
