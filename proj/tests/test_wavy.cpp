#include <doctest.h>

#include "tdlab/enumerate.hpp"
#include "tdlab/wavy.hpp"

using namespace tdlab;
using namespace tdlab::wavy;
using psh::Copresheaf;
using psh::NatTrans;

namespace {

CategoryPtr cat(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

} // namespace

TEST_CASE("wavy profunctor on the singleton is the hom profunctor") {
    WavyProfunctor w = wavy_profunctor(builtin_poset("chain", 0));
    CHECK(w.idempotent);
    CHECK(w.counit_in_hom);
    CHECK(w.columns_flat);
    CHECK(w.v.size_at(0, 0) == 1);
    CHECK(w.interpolant[0][0] == 0);
}

TEST_CASE("wavy profunctor on the 2-chain: wavy arrows match the order") {
    FinPoset p = builtin_poset("chain", 1);
    WavyProfunctor w = wavy_profunctor(p);
    CHECK(w.idempotent);
    CHECK(w.counit_in_hom);
    CHECK(w.columns_flat);
    for (Idx x = 0; x < p.size(); ++x)
        for (Idx y = 0; y < p.size(); ++y)
            CHECK((w.v.size_at(x, y) == 1) == p.leq(x, y));
}

TEST_CASE("wavy profunctor on the antichain: diagonal with flat columns") {
    WavyProfunctor w = wavy_profunctor(builtin_poset("antichain", 2));
    CHECK(w.idempotent);
    CHECK(w.columns_flat);
    CHECK(w.v.size_at(0, 0) == 1);
    CHECK(w.v.size_at(0, 1) == 0);
}

TEST_CASE("wavy invariants across all small posets") {
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(4)) {
        if (p.size() == 0) continue;
        WavyProfunctor w = wavy_profunctor(p);
        CHECK(w.idempotent);
        CHECK(w.counit_in_hom);
        CHECK(w.columns_flat);
    }
}

TEST_CASE("induced comonad: hom profunctor acts as the identity") {
    FinPoset p = builtin_poset("chain", 1);
    WavyProfunctor w = wavy_profunctor(p);
    for (const Copresheaf& f : psh::standard_copresheaf_samples(w.base_cat)) {
        ComonadApplication a = induced_comonad(w.v, f);
        CHECK(psh::nat_is_iso(a.app.result, f, a.counit));  // V = hom on finite posets
    }
}

TEST_CASE("induced comonad is idempotent on samples") {
    FinPoset p = builtin_poset("chain", 2);
    WavyProfunctor w = wavy_profunctor(p);
    for (const Copresheaf& f : psh::standard_copresheaf_samples(w.base_cat)) {
        ComonadApplication once = induced_comonad(w.v, f);
        ComonadApplication twice = induced_comonad(w.v, once.app.result);
        CHECK(psh::nat_is_iso(twice.app.result, once.app.result, twice.counit));
    }
}

TEST_CASE("induced comonad on the explicit two-point copresheaf") {
    FinPoset p = builtin_poset("chain", 1);
    WavyProfunctor w = wavy_profunctor(p);
    auto op = std::make_shared<const FinCategory>(opposite(*w.base_cat));
    Copresheaf f = psh::empty_presheaf(op);
    f.name = "two-over-one";
    Idx c0 = op->object_id("c0"), c1 = op->object_id("c1");
    f.at[c0] = {"x", "y"};
    f.at[c1] = {"z"};
    f.act[op->identity[c0]] = {0, 1};
    f.act[op->identity[c1]] = {0};
    f.act[op->arrow_id("le_c0_c1")] = {0, 0};
    psh::check_presheaf(f);
    ComonadApplication a = induced_comonad(w.v, f);
    CHECK(a.app.result.size_at(c0) == 2);
    CHECK(a.app.result.size_at(c1) == 1);
    CHECK(psh::nat_is_iso(a.app.result, f, a.counit));

    // empty copresheaf is fixed
    Copresheaf e = psh::empty_presheaf(op);
    ComonadApplication ae = induced_comonad(w.v, e);
    CHECK(psh::nat_is_iso(ae.app.result, e, ae.counit));
}

TEST_CASE("cartesian spot check passes for the way-below comonad") {
    FinPoset p = builtin_poset("chain", 2);
    WavyProfunctor w = wavy_profunctor(p);
    auto samples = psh::standard_copresheaf_samples(w.base_cat);
    CartesianReport r = cartesian_spot_check(w.v, samples[0], samples[1]);
    CHECK(r.ok());
    CartesianReport r2 = cartesian_spot_check(w.v, samples[2], samples[2]);
    CHECK(r2.ok());
}

TEST_CASE("cartesian spot check flags a profunctor with an empty column") {
    // diagonal profunctor on a 3-antichain whose third column is empty
    FinPoset p = builtin_poset("antichain", 3);
    auto pc = cat(poset_as_category(p));
    Profunctor v = hom_profunctor(pc);
    Idx a2 = pc->object_id("a2");
    v.at[a2][a2].clear();
    v.lact[pc->identity[a2]][a2].clear();
    v.ract[pc->identity[a2]][a2].clear();
    check_profunctor(v);

    auto op = std::make_shared<const FinCategory>(opposite(*pc));
    Copresheaf one = psh::terminal_presheaf(op);
    CartesianReport r = cartesian_spot_check(v, one, one);
    CHECK_FALSE(r.nullary_ok);
    CHECK(r.nullary_witness.find("a2") != std::string::npos);
}

TEST_CASE("fixed points and the adjoint triple on chains") {
    for (int n = 0; n <= 2; ++n) {
        FinPoset p = builtin_poset("chain", n);
        WavyProfunctor w = wavy_profunctor(p);
        auto samples = psh::standard_copresheaf_samples(w.base_cat);
        FixedPointReport rep = fixed_points(w, samples);
        CHECK(rep.all_ok);
        for (const auto& e : rep.samples) {
            CHECK(e.fixed);  // V = hom on a finite poset: everything is fixed
            CHECK(e.image_fixed);
            CHECK(e.right_adjoint_ok);
        }
        CHECK(rep.triple.ok());
    }
}

TEST_CASE("fixed points on the 2-antichain") {
    FinPoset p = builtin_poset("antichain", 2);
    WavyProfunctor w = wavy_profunctor(p);
    auto samples = psh::standard_copresheaf_samples(w.base_cat);
    FixedPointReport rep = fixed_points(w, samples);
    CHECK(rep.all_ok);
}
