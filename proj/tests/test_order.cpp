#include <doctest.h>

#include <algorithm>
#include <random>

#include "tdlab/enumerate.hpp"
#include "tdlab/order.hpp"

using namespace tdlab;
using namespace tdlab::order;

namespace {

PosetPtr ptr(FinPoset p) { return std::make_shared<const FinPoset>(std::move(p)); }

// brute-force least-upper-bound of a subset, as an independent oracle
std::optional<Idx> brute_join(const FinPoset& p, const Bits& s) {
    std::vector<Idx> ubs;
    for (Idx u = 0; u < p.size(); ++u) {
        bool ub = true;
        for (Idx x = 0; x < p.size() && ub; ++x)
            if (s.test(x) && !p.leq(x, u)) ub = false;
        if (ub) ubs.push_back(u);
    }
    for (Idx u : ubs) {
        bool least = true;
        for (Idx v : ubs)
            if (!p.leq(u, v)) least = false;
        if (least) return u;
    }
    return std::nullopt;
}

// brute-force minimum down-set with join above v (nullopt when no minimum)
std::optional<Bits> brute_tdown(const FinPoset& p, const DownSetLattice& dn, Idx v) {
    std::vector<Bits> candidates;
    for (const Bits& d : dn.sets) {
        auto j = brute_join(p, d);
        if (j && p.leq(v, *j)) candidates.push_back(d);
    }
    for (const Bits& c : candidates) {
        bool least = true;
        for (const Bits& d : candidates)
            if (!c.subset_of(d)) least = false;
        if (least) return c;
    }
    return std::nullopt;
}

Bits mask_of(const FinPoset& p, std::initializer_list<const char*> names) {
    Bits b(p.size());
    for (const char* n : names) b.set(p.index_of(n));
    return b;
}

} // namespace

TEST_CASE("left_adjoint of the identity is the identity") {
    auto p = ptr(builtin_poset("diamond", 0));
    std::vector<Idx> id(p->size());
    for (Idx i = 0; i < p->size(); ++i) id[i] = i;
    AdjointResult r = left_adjoint(make_monotone(p, p, id));
    REQUIRE(r.exists());
    CHECK(r.map->map == id);
}

TEST_CASE("left_adjoint of the down-set embedding is the join, on the Boolean square") {
    FinPoset p = builtin_poset("boolean", 2);
    DownSetLattice dn = down_set_lattice(p);
    AdjointResult r = left_adjoint(dn.embed);
    REQUIRE(r.exists());
    for (Idx d = 0; d < (Idx)dn.sets.size(); ++d) {
        auto j = brute_join(p, dn.sets[d]);
        REQUIRE(j.has_value());
        CHECK(r.map->map[d] == *j);
    }
}

TEST_CASE("left_adjoint absence on the diamond M3: no minimum candidate at the top") {
    FinPoset p = builtin_poset("diamond", 0);
    DownSetLattice dn = down_set_lattice(p);
    AdjointResult join = left_adjoint(dn.embed);
    REQUIRE(join.exists());
    AdjointResult tdown = left_adjoint(*join.map);
    CHECK_FALSE(tdown.exists());
    REQUIRE(tdown.failure_witness.has_value());
    CHECK(p.elems[*tdown.failure_witness] == "top");
    CHECK_FALSE(brute_tdown(p, dn, p.index_of("top")).has_value());
}

TEST_CASE("ccd_check on the 3-chain: ccd and lex, with the oracle's tdown values") {
    FinPoset p = builtin_poset("chain", 2);
    CcdReport r = ccd_check(p);
    CHECK(r.complete);
    CHECK(r.ccd);
    CHECK(r.lex_ccd);
    // oracle values: the minimum down-set with join >= v; the empty down-set
    // has join bottom, so tdown(bottom) is empty
    for (Idx v = 0; v < p.size(); ++v) {
        auto expect = brute_tdown(p, r.dn, v);
        REQUIRE(expect.has_value());
        CHECK(r.dn.sets[r.totally_below->map[v]] == *expect);
    }
    CHECK(r.dn.sets[r.totally_below->map[p.index_of("c0")]] == Bits(3));
    CHECK(r.dn.sets[r.totally_below->map[p.index_of("c1")]] == mask_of(p, {"c0", "c1"}));
    CHECK(r.dn.sets[r.totally_below->map[p.index_of("c2")]] == mask_of(p, {"c0", "c1", "c2"}));
}

TEST_CASE("ccd_check on the Boolean square: ccd but not lex") {
    FinPoset p = builtin_poset("boolean", 2);
    CcdReport r = ccd_check(p);
    CHECK(r.ccd);
    CHECK_FALSE(r.lex_ccd);
    // tdown(top) = the three lower elements, not the whole square
    Bits expected = mask_of(p, {"b00", "b01", "b10"});
    CHECK(r.dn.sets[r.totally_below->map[p.index_of("b11")]] == expected);
}

TEST_CASE("ccd_check on M3: complete but not ccd") {
    CcdReport r = ccd_check(builtin_poset("diamond", 0));
    CHECK(r.complete);
    CHECK_FALSE(r.ccd);
    CHECK_FALSE(r.lex_ccd);
}

TEST_CASE("distributivity oracle") {
    CHECK(distributivity_oracle(builtin_poset("chain", 3)).distributive);

    DistributivityResult m3 = distributivity_oracle(builtin_poset("diamond", 0));
    CHECK_FALSE(m3.distributive);
    REQUIRE(m3.witness.has_value());

    DistributivityResult n5 = distributivity_oracle(builtin_poset("pentagon", 0));
    CHECK_FALSE(n5.distributive);

    try {
        distributivity_oracle(builtin_poset("antichain", 2));
        FAIL("expected NotALattice");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::NotALattice);
        CHECK(std::string(e.what()).find("a0") != std::string::npos);
    }
}

TEST_CASE("ccd agrees with distributivity on all small lattices") {
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(5)) {
        if (!is_lattice(p)) continue;
        CHECK(ccd_check(p).ccd == distributivity_oracle(p).distributive);
    }
}

TEST_CASE("empty poset conventions") {
    FinPoset e = make_poset({}, {});
    DownSetLattice dn = down_set_lattice(e);
    CHECK(dn.sets.size() == 1);  // only the empty down-set
    CcdReport r = ccd_check(e);
    CHECK_FALSE(r.complete);  // no top
    IdealCompletion idl = ideal_completion(e);
    CHECK(idl.ideals.empty());
    ContinuityResult c = continuity_check(e);
    CHECK(c.continuous);  // vacuously
    CHECK(c.agrees_with_way_below);
}

TEST_CASE("way_below on the 2-chain, against the explicit two-ideal enumeration") {
    FinPoset p = builtin_poset("chain", 1);
    IdealCompletion idl = ideal_completion(p);
    REQUIRE(idl.ideals.size() == 2);  // the two principal ideals
    WayBelowResult wb = way_below(p);
    CHECK(wb.equals_leq);
    CHECK(wb.rel[p.index_of("c1")] == mask_of(p, {"c0", "c1"}));
}

TEST_CASE("way-below equals leq and interpolates on all small posets") {
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(4)) {
        WayBelowResult wb = way_below(p);
        CHECK(wb.equals_leq);
        // idempotency of the relation: rel o rel == rel
        for (Idx y = 0; y < p.size(); ++y) {
            Bits composed(p.size());
            for (Idx z = 0; z < p.size(); ++z)
                if (wb.rel[y].test(z)) composed |= wb.rel[z];
            CHECK(composed == wb.rel[y]);
        }
    }
}

TEST_CASE("continuity holds for every small poset and matches way-below") {
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(4)) {
        ContinuityResult r = continuity_check(p);
        CHECK(r.continuous);
        CHECK(r.agrees_with_way_below);
    }
    // chain 0<1<2: tdown at the top is the whole chain inside Idl
    FinPoset p = builtin_poset("chain", 2);
    ContinuityResult r = continuity_check(p);
    CHECK(r.idl.ideals[r.totally_below->map[p.index_of("c2")]] ==
          mask_of(p, {"c0", "c1", "c2"}));
}

TEST_CASE("scott_opens: counts on the spot examples") {
    CHECK(scott_opens(builtin_poset("chain", 0)).opens.size() == 2);
    CHECK(scott_opens(builtin_poset("antichain", 2)).opens.size() == 4);
    CHECK(scott_opens(builtin_poset("chain", 1)).opens.size() == 3);
    ScottFrame f = scott_opens(builtin_poset("antichain", 2));
    CHECK(enumerate::posets_isomorphic(*f.lattice, builtin_poset("boolean", 2)));
}

TEST_CASE("scott frame designated meets and joins") {
    ScottFrame f = scott_opens(builtin_poset("chain", 1));
    Idx top = f.top(), bot = f.bottom();
    CHECK(f.meet(top, bot) == bot);
    CHECK(f.join({}) == bot);
    CHECK(f.join({top, bot}) == top);
}

TEST_CASE("frame points against the brute-force map enumeration") {
    // independent oracle: every function opens -> 2 preserving top/bottom and
    // binary meets/joins, which in a finite frame is all finite meets and all
    // joins
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(3)) {
        ScottFrame f = scott_opens(p);
        int n = (int)f.opens.size();
        if (n > 12) continue;
        std::vector<std::vector<bool>> brute;
        for (std::uint64_t m = 0; m < (1ull << n); ++m) {
            std::vector<bool> fn(n);
            for (int i = 0; i < n; ++i) fn[i] = (m >> i) & 1;
            if (!fn[f.top()] || fn[f.bottom()]) continue;
            bool ok = true;
            for (Idx a = 0; a < n && ok; ++a)
                for (Idx b = 0; b < n && ok; ++b) {
                    if (fn[f.meet(a, b)] != (fn[a] && fn[b])) ok = false;
                    if (fn[f.join({a, b})] != (fn[a] || fn[b])) ok = false;
                }
            if (ok) brute.push_back(fn);
        }
        std::vector<Idx> pts = frame_points(f);
        CHECK(brute.size() == pts.size());
        for (Idx a : pts) {
            std::vector<bool> fn(n);
            for (Idx u = 0; u < n; ++u) fn[u] = f.opens[a].subset_of(f.opens[u]);
            CHECK(std::find(brute.begin(), brute.end(), fn) != brute.end());
        }
    }
}

TEST_CASE("duality spot checks") {
    DualityReport r1 = duality_check(builtin_poset("chain", 1));
    CHECK(r1.ok());
    CHECK(r1.n_points == 2);

    DualityReport r2 = duality_check(builtin_poset("antichain", 2));
    CHECK(r2.ok());
    CHECK(r2.n_points == 2);

    DualityReport r3 = duality_check(make_poset({}, {}));
    CHECK(r3.ok());
    CHECK(r3.n_points == 0);
}

TEST_CASE("scott opens always pass ccd") {
    Limits lim;
    lim.max_poset_for_downsets = 40;
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(4)) {
        ScottFrame f = scott_opens(p);
        CHECK(ccd_check(*f.lattice, lim).ccd);
    }
}

TEST_CASE("left adjoints are unique and satisfy the inequalities") {
    auto posets = enumerate::all_posets_up_to_iso(3);
    for (const FinPoset& a : posets) {
        for (const FinPoset& b : posets) {
            if (a.size() == 0 || b.size() == 0) continue;
            auto pa = ptr(a), pb = ptr(b);
            for (const auto& m : enumerate::monotone_maps(a, b)) {
                MonotoneMap f = make_monotone(pa, pb, m);
                AdjointResult g = left_adjoint(f);
                if (!g.exists()) continue;
                for (Idx x = 0; x < b.size(); ++x) CHECK(b.leq(x, f.map[g.map->map[x]]));
                for (Idx y = 0; y < a.size(); ++y) CHECK(a.leq(g.map->map[f.map[y]], y));
                // uniqueness among all monotone candidates
                for (const auto& h : enumerate::monotone_maps(b, a)) {
                    bool adj = true;
                    for (Idx x = 0; x < b.size() && adj; ++x)
                        for (Idx y = 0; y < a.size() && adj; ++y)
                            if (a.leq(h[x], y) != b.leq(x, f.map[y])) adj = false;
                    if (adj) CHECK(h == g.map->map);
                }
            }
        }
    }
}

TEST_CASE("transfer: identity triple and the chain retraction") {
    auto e3 = ptr(builtin_poset("chain", 2));
    auto d2 = ptr(builtin_poset("chain", 1));
    std::vector<Idx> id3 = {0, 1, 2};
    MonotoneMap idm = make_monotone(e3, e3, id3);
    TransferReport t0 = transfer_ccd(idm, idm, idm);
    CHECK(t0.implication_holds);

    // q, s the two end-embeddings of the 2-chain into the 3-chain, r the retraction
    MonotoneMap q = make_monotone(d2, e3, {0, 1});
    MonotoneMap r = make_monotone(e3, d2, {0, 1, 1});
    MonotoneMap s = make_monotone(d2, e3, {0, 2});
    TransferReport t = transfer_ccd(q, r, s);
    CHECK(t.cod_report.ccd);
    CHECK(t.dom_report.ccd);
    CHECK(t.implication_holds);
}

TEST_CASE("transfer violations are reported with a witness") {
    auto e3 = ptr(builtin_poset("chain", 2));
    auto d2 = ptr(builtin_poset("chain", 1));
    MonotoneMap q = make_monotone(d2, e3, {0, 1});
    MonotoneMap r = make_monotone(e3, d2, {0, 1, 1});
    MonotoneMap bad_s = make_monotone(d2, e3, {0, 1});  // r -| s fails
    try {
        transfer_ccd(q, r, bad_s);
        FAIL("expected AdjunctionViolation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::AdjunctionViolation);
    }
}

TEST_CASE("transfer: random valid triples never break the implication") {
    std::mt19937 rng(7);
    int found = 0;
    for (int round = 0; round < 4000 && found < 60; ++round) {
        FinPoset e = enumerate::random_poset(rng, 4);
        FinPoset d = enumerate::random_poset(rng, 3);
        auto pe = ptr(e), pd = ptr(d);
        auto maps = enumerate::monotone_maps(e, d);
        std::shuffle(maps.begin(), maps.end(), rng);
        for (const auto& rm : maps) {
            MonotoneMap r = make_monotone(pe, pd, rm);
            AdjointResult q = left_adjoint(r), s = right_adjoint(r);
            if (!q.exists() || !s.exists()) continue;
            if (!is_order_embedding(*q.map) || !is_order_embedding(*s.map)) continue;
            TransferReport t = transfer_ccd(*q.map, r, *s.map);
            CHECK(t.implication_holds);
            ++found;
            break;
        }
    }
    CHECK(found >= 60);
}

TEST_CASE("generator restriction: G = E reduces to the ccd triple") {
    FinPoset p = builtin_poset("boolean", 2);
    Bits all(p.size());
    for (int i = 0; i < p.size(); ++i) all.set(i);
    GeneratorRestriction g = generator_restriction(p, all);
    CHECK(g.c_adj_y);
    CHECK(g.t_adj_c);
    CHECK(g.routes_agree);
    CcdReport cc = ccd_check(p);
    for (Idx v = 0; v < p.size(); ++v)
        CHECK(g.dn_g.sets[g.t_prime->map[v]] == cc.dn.sets[cc.totally_below->map[v]]);
}

TEST_CASE("generator restriction on the Boolean square with the three lower elements") {
    FinPoset p = builtin_poset("boolean", 2);
    GeneratorRestriction g = generator_restriction(p, mask_of(p, {"b00", "b01", "b10"}));
    CHECK(g.base_ccd);
    CHECK(g.c_adj_y);
    REQUIRE(g.t_prime.has_value());
    CHECK(g.t_adj_c);
    CHECK(g.routes_agree);
}

TEST_CASE("generator restriction on M3: c' -| y' holds but no t' exists") {
    FinPoset p = builtin_poset("diamond", 0);
    GeneratorRestriction g = generator_restriction(p, mask_of(p, {"bot", "x", "y", "z"}));
    CHECK_FALSE(g.base_ccd);
    CHECK(g.c_adj_y);
    CHECK_FALSE(g.t_prime.has_value());
    CHECK_FALSE(g.t_adj_c);
}

TEST_CASE("generator restriction rejects non-dense subsets") {
    FinPoset p = builtin_poset("boolean", 2);
    try {
        generator_restriction(p, mask_of(p, {"b00", "b01"}));
        FAIL("expected NotJoinDense");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::NotJoinDense);
        CHECK(std::string(e.what()).find("b1") != std::string::npos);
    }
}
