#include <doctest.h>

#include <map>
#include <set>

#include "tdlab/ideals.hpp"

using namespace tdlab;
using namespace tdlab::ideals;

namespace {

CategoryPtr cat(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

// Independent oracle: two-sided ideals are exactly the down-sets of the
// factors-through preorder f <= g iff f = h.g.k. Enumerate by quotienting to
// the poset of equivalence classes and scanning all subsets of classes.
struct IdealOracle {
    long long all_ideals = 0;
    long long idempotent_ideals = 0;
    std::set<std::vector<int>> idempotent_sets;  // sorted member lists
};

IdealOracle oracle_enumerate(const FinCategory& c) {
    int na = c.n_arrows();
    std::vector<std::vector<bool>> factors(na, std::vector<bool>(na, false));
    for (Idx f = 0; f < na; ++f)
        for (Idx g = 0; g < na; ++g) {
            // f = h . g . k ?
            bool found = false;
            for (Idx k = 0; k < na && !found; ++k) {
                if (c.src(k) != c.src(f) || c.tgt(k) != c.src(g)) continue;
                Idx gk = c.comp[g][k];
                for (Idx h : c.hom(c.tgt(g), c.tgt(f)))
                    if (c.comp[h][gk] == f) {
                        found = true;
                        break;
                    }
            }
            factors[f][g] = found;
        }
    // equivalence classes under mutual factorization
    std::vector<int> cls(na, -1);
    int nc = 0;
    for (Idx f = 0; f < na; ++f) {
        if (cls[f] >= 0) continue;
        cls[f] = nc;
        for (Idx g = f + 1; g < na; ++g)
            if (cls[g] < 0 && factors[f][g] && factors[g][f]) cls[g] = nc;
        ++nc;
    }
    REQUIRE(nc <= 20);
    IdealOracle out;
    for (std::uint64_t m = 0; m < (1ull << nc); ++m) {
        // down-closed in the class preorder?
        bool down = true;
        for (Idx f = 0; f < na && down; ++f)
            for (Idx g = 0; g < na && down; ++g)
                if (factors[f][g] && ((m >> cls[g]) & 1) && !((m >> cls[f]) & 1)) down = false;
        if (!down) continue;
        ++out.all_ideals;
        Bits members(na);
        for (Idx f = 0; f < na; ++f)
            if ((m >> cls[f]) & 1) members.set(f);
        ArrowIdeal ideal{std::make_shared<const FinCategory>(c), members};
        REQUIRE(is_two_sided(c, members));
        if (is_idempotent(ideal).idempotent) {
            ++out.idempotent_ideals;
            std::vector<int> lst;
            for (Idx f : members.members()) lst.push_back(f);
            out.idempotent_sets.insert(lst);
        }
    }
    return out;
}

} // namespace

TEST_CASE("ideal_closure basics") {
    auto t = cat(builtin_category("terminal", 0));
    CHECK(ideal_closure(t, {}).size() == 0);
    CHECK(ideal_closure(t, {0}).size() == 1);

    auto wa = cat(builtin_category("chain", 1));
    Idx f = wa->arrow_id("le_c0_c1");
    ArrowIdeal just_f = ideal_closure(wa, {f});
    CHECK(just_f.size() == 1);
    CHECK(just_f.members.test(f));
}

TEST_CASE("is_idempotent: empty, everything, and the bare arrow") {
    auto wa = cat(builtin_category("chain", 1));
    Bits empty(wa->n_arrows());
    CHECK(is_idempotent({wa, empty}).idempotent);

    Bits all(wa->n_arrows());
    for (int i = 0; i < wa->n_arrows(); ++i) all.set(i);
    CHECK(is_idempotent({wa, all}).idempotent);

    Idx f = wa->arrow_id("le_c0_c1");
    ArrowIdeal just_f = ideal_closure(wa, {f});
    IdempotencyReport rep = is_idempotent(just_f);
    CHECK_FALSE(rep.idempotent);
    CHECK(rep.failing_member == f);
}

TEST_CASE("terminal category: exactly the empty and full ideals, a 2-chain") {
    IdealLattice l = enumerate_idempotent_ideals(cat(builtin_category("terminal", 0)));
    CHECK(l.ideals.size() == 2);
    CHECK(l.all_ideal_count == 2);
    CHECK(l.is_chain);
}

TEST_CASE("walking arrow: the enumerator is the ground truth, cross-checked") {
    auto wa = cat(builtin_category("chain", 1));
    IdealLattice l = enumerate_idempotent_ideals(wa);
    IdealOracle o = oracle_enumerate(*wa);
    CHECK(l.all_ideal_count == o.all_ideals);
    CHECK((long long)l.ideals.size() == o.idempotent_ideals);
    // five two-sided ideals, of which the bare arrow is the only
    // non-idempotent one; the two middle ideals are incomparable
    CHECK(l.all_ideal_count == 5);
    CHECK(l.ideals.size() == 4);
    CHECK_FALSE(l.is_chain);
    // lattice structure: meet of the two 2-element ideals is the empty ideal,
    // join is everything
    Idx a = -1, b = -1;
    for (Idx i = 0; i < (Idx)l.ideals.size(); ++i)
        if (l.ideals[i].size() == 2) (a < 0 ? a : b) = i;
    REQUIRE(b >= 0);
    CHECK(l.ideals[l.meet[a][b]].size() == 0);
    CHECK(l.ideals[l.join[a][b]].size() == 3);
}

TEST_CASE("simplex(1): a chain of three idempotent ideals") {
    auto s1 = cat(builtin_category("simplex", 1));
    IdealLattice l = enumerate_idempotent_ideals(s1);
    IdealOracle o = oracle_enumerate(*s1);
    CHECK((long long)l.ideals.size() == o.idempotent_ideals);
    CHECK(l.ideals.size() == 3);
    CHECK(l.is_chain);
    std::vector<int> sizes;
    for (const auto& i : l.ideals) sizes.push_back(i.size());
    CHECK(sizes == std::vector<int>{0, 6, 7});
}

TEST_CASE("simplex(2): sizes, chain shape, oracle agreement") {
    auto s2 = cat(builtin_category("simplex", 2));
    IdealLattice l = enumerate_idempotent_ideals(s2);
    IdealOracle o = oracle_enumerate(*s2);
    CHECK(l.all_ideal_count == o.all_ideals);
    CHECK((long long)l.ideals.size() == o.idempotent_ideals);
    CHECK(l.ideals.size() == 4);
    CHECK(l.is_chain);
}

TEST_CASE("globe(1) and globe(2): dimension chains") {
    auto g1 = cat(builtin_category("globe", 1));
    IdealLattice l1 = enumerate_idempotent_ideals(g1);
    IdealOracle o1 = oracle_enumerate(*g1);
    CHECK((long long)l1.ideals.size() == o1.idempotent_ideals);
    CHECK(l1.ideals.size() == 3);
    CHECK(l1.is_chain);

    auto g2 = cat(builtin_category("globe", 2));
    IdealLattice l2 = enumerate_idempotent_ideals(g2);
    CHECK(l2.ideals.size() == 4);
    CHECK(l2.is_chain);
}

TEST_CASE("dimension ideals land inside the enumeration") {
    auto s2 = cat(builtin_category("simplex", 2));
    IdealLattice l = enumerate_idempotent_ideals(s2);
    for (int d = 0; d <= 2; ++d) {
        ArrowIdeal ideal = dimension_ideal(s2, d);
        CHECK(l.index_of(ideal.members).has_value());
    }
    CHECK(dimension_ideal(s2, 2).size() == s2->n_arrows());

    // simplex(1), d = 0: the six maps routed through [0]
    auto s1 = cat(builtin_category("simplex", 1));
    CHECK(dimension_ideal(s1, 0).size() == 6);

    // globe(1), d = 0: everything except the top identity
    auto g1 = cat(builtin_category("globe", 1));
    CHECK(dimension_ideal(g1, 0).size() == 6);
}

TEST_CASE("every enumerated ideal passes the two-sided and composition sanity checks") {
    for (const char* nm : {"chain", "simplex", "globe"}) {
        auto c = cat(builtin_category(nm, 2));
        IdealLattice l = enumerate_idempotent_ideals(c);
        for (const ArrowIdeal& ideal : l.ideals) {
            CHECK(is_two_sided(*c, ideal.members));
            // I.I is contained in I
            for (Idx g = 0; g < c->n_arrows(); ++g)
                for (Idx f = 0; f < c->n_arrows(); ++f)
                    if (ideal.members.test(g) && ideal.members.test(f) &&
                        c->tgt(f) == c->src(g))
                        CHECK(ideal.members.test(c->comp[g][f]));
        }
    }
}

TEST_CASE("a cyclic group has only the trivial ideals") {
    for (int n : {2, 3}) {
        auto g = cat(builtin_category("monoid-table", n));
        IdealLattice l = enumerate_idempotent_ideals(g);
        CHECK(l.all_ideal_count == 2);  // invertibility collapses every seed to everything
        CHECK(l.ideals.size() == 2);
        CHECK(l.is_chain);
    }
}

TEST_CASE("globe(3): the dimension filtration, sizes pinned from the enumerator") {
    auto g3 = cat(builtin_category("globe", 3));
    IdealLattice l = enumerate_idempotent_ideals(g3);
    CHECK(l.is_chain);
    std::vector<int> sizes;
    for (const auto& i : l.ideals) sizes.push_back(i.size());
    CHECK(sizes == std::vector<int>{0, 28, 43, 49, 50});
    for (int d = 0; d <= 3; ++d)
        CHECK(l.index_of(dimension_ideal(g3, d).members).has_value());
}

TEST_CASE("ideal enumeration size guard") {
    Limits tight;
    tight.max_ideals = 2;
    try {
        enumerate_idempotent_ideals(cat(builtin_category("simplex", 1)), tight);
        FAIL("expected SizeGuardExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::SizeGuardExceeded);
    }
}
