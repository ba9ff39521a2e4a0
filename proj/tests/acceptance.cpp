// Acceptance suite: every criterion prints exactly one PASS/FAIL line and the
// binary exits nonzero if any fail. Runtime budgets are asserted alongside
// the mathematical content.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

#include "tdlab/enumerate.hpp"
#include "tdlab/ideals.hpp"
#include "tdlab/kan.hpp"
#include "tdlab/order.hpp"
#include "tdlab/wavy.hpp"

using namespace tdlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

CategoryPtr cat(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }
PosetPtr ptr(FinPoset p) { return std::make_shared<const FinPoset>(std::move(p)); }

//----------------------------------------------------------------------------
// 1. ccd agrees with the distributivity oracle

Outcome criterion_ccd_vs_distributivity() {
    Outcome out;
    int exhaustive = 0;
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(5)) {
        if (!order::is_lattice(p)) continue;
        ++exhaustive;
        bool ccd = order::ccd_check(p).ccd;
        bool dist = order::distributivity_oracle(p).distributive;
        out.require(ccd == dist, "mismatch on a lattice with " + std::to_string(p.size()) +
                                     " elements");
    }
    out.require(exhaustive >= 10, "exhaustive sweep too small");

    std::mt19937 rng(424242);
    int random_checked = 0;
    for (int round = 0; random_checked < 500 && round < 100000; ++round) {
        int n = 6 + round % 3;
        FinPoset p = enumerate::random_lattice(rng, n);
        bool ccd = order::ccd_check(p).ccd;
        bool dist = order::distributivity_oracle(p).distributive;
        out.require(ccd == dist, "mismatch on a random lattice with " + std::to_string(n) +
                                     " elements");
        ++random_checked;
    }
    out.require(random_checked >= 500, "random sweep too small");
    return out;
}

//----------------------------------------------------------------------------
// 2. way-below degeneracy, continuity, and wavy idempotency

Outcome criterion_way_below() {
    Outcome out;
    int count = 0;
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(6)) {
        ++count;
        order::WayBelowResult wb = order::way_below(p);
        out.require(wb.equals_leq, "way-below differs from the order");
        order::ContinuityResult c = order::continuity_check(p);
        out.require(c.continuous, "continuity fails");
        out.require(c.agrees_with_way_below, "continuity witness disagrees");
        if (p.size() == 0) continue;
        wavy::WavyProfunctor w = wavy::wavy_profunctor(p);
        out.require(w.idempotent, "wavy profunctor not idempotent");
        out.require(w.counit_in_hom, "wavy counit escapes the order");
    }
    out.require(count >= 400, "poset sweep too small");
    return out;
}

//----------------------------------------------------------------------------
// 3. duality spot-check

Outcome criterion_duality() {
    Outcome out;
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(5)) {
        order::DualityReport rep = order::duality_check(p);
        out.require(rep.opens_ccd,
                    "opens fail ccd on " + std::to_string(p.size()) + " elements");
        out.require(rep.points_iso,
                    "points mismatch on " + std::to_string(p.size()) + " elements");
    }
    return out;
}

//----------------------------------------------------------------------------
// 4. idempotent arrow ideals: counts, chains, and dimension ideals

// independent oracle: ideals are the down-sets of the factors-through
// preorder; enumerated through its class poset
std::pair<long long, long long> oracle_ideal_counts(const FinCategory& c) {
    int na = c.n_arrows();
    std::vector<std::vector<std::vector<Idx>>> hom(c.n_objects(),
                                                   std::vector<std::vector<Idx>>(c.n_objects()));
    for (Idx x = 0; x < c.n_objects(); ++x)
        for (Idx y = 0; y < c.n_objects(); ++y) hom[x][y] = c.hom(x, y);
    std::vector<std::vector<bool>> factors(na, std::vector<bool>(na, false));
    for (Idx f = 0; f < na; ++f)
        for (Idx g = 0; g < na; ++g) {
            bool found = false;
            for (Idx k : hom[c.src(f)][c.src(g)]) {
                Idx gk = c.comp[g][k];
                for (Idx h : hom[c.tgt(g)][c.tgt(f)])
                    if (c.comp[h][gk] == f) {
                        found = true;
                        break;
                    }
                if (found) break;
            }
            factors[f][g] = found;
        }
    std::vector<int> cls(na, -1);
    int nc = 0;
    for (Idx f = 0; f < na; ++f) {
        if (cls[f] >= 0) continue;
        cls[f] = nc;
        for (Idx g = f + 1; g < na; ++g)
            if (cls[g] < 0 && factors[f][g] && factors[g][f]) cls[g] = nc;
        ++nc;
    }
    long long all = 0, idem = 0;
    auto cp = std::make_shared<const FinCategory>(c);
    for (std::uint64_t m = 0; m < (1ull << nc); ++m) {
        bool down = true;
        for (Idx f = 0; f < na && down; ++f)
            for (Idx g = 0; g < na && down; ++g)
                if (factors[f][g] && ((m >> cls[g]) & 1) && !((m >> cls[f]) & 1)) down = false;
        if (!down) continue;
        ++all;
        Bits members(na);
        for (Idx f = 0; f < na; ++f)
            if ((m >> cls[f]) & 1) members.set(f);
        if (ideals::is_idempotent({cp, members}).idempotent) ++idem;
    }
    return {all, idem};
}

Outcome criterion_ideals() {
    Outcome out;
    ideals::IdealLattice terminal =
        ideals::enumerate_idempotent_ideals(cat(builtin_category("terminal", 0)));
    out.require(terminal.ideals.size() == 2, "terminal category must have 2 ideals");

    // expected idempotent-ideal counts for the truncated simplex categories,
    // frozen from the factors-through oracle: one level per dimension plus
    // the empty ideal
    const long long expected[] = {0, 3, 4, 5};
    for (int k = 1; k <= 3; ++k) {
        auto s = cat(builtin_category("simplex", k));
        ideals::IdealLattice l = ideals::enumerate_idempotent_ideals(s);
        out.require((long long)l.ideals.size() == expected[k],
                    "simplex(" + std::to_string(k) + ") count");
        out.require(l.is_chain, "simplex(" + std::to_string(k) + ") ideals not a chain");
        for (int d = 0; d <= k; ++d) {
            ideals::ArrowIdeal ideal = ideals::dimension_ideal(s, d);
            out.require(l.index_of(ideal.members).has_value(),
                        "dimension ideal missing for simplex(" + std::to_string(k) + ")");
            out.require(ideals::is_idempotent(ideal).idempotent,
                        "dimension ideal not idempotent");
        }
        auto [all, idem] = oracle_ideal_counts(*s);
        out.require(all == l.all_ideal_count,
                    "oracle disagrees on the two-sided ideal count for simplex(" +
                        std::to_string(k) + ")");
        out.require(idem == (long long)l.ideals.size(),
                    "oracle disagrees on the idempotent count for simplex(" +
                        std::to_string(k) + ")");
    }
    return out;
}

//----------------------------------------------------------------------------
// 5. the totally distributive witness over four presheaf bases

Outcome criterion_td_witness() {
    Outcome out;
    for (const char* spec : {"terminal:0", "chain:1", "chain:2", "simplex:1"}) {
        std::string s(spec);
        auto colon = s.find(':');
        std::string name = s.substr(0, colon);
        int n = std::stoi(s.substr(colon + 1));
        kan::TdWitness w = kan::td_witness(cat(builtin_category(name, n)), {},
                                           default_limits(), false);
        out.require(w.witness.ok(),
                    name + "(" + std::to_string(n) + "): " + w.witness.log.first_failure());
    }
    return out;
}

//----------------------------------------------------------------------------
// 6. ccd transfers along generated adjoint triples

Outcome criterion_transfer() {
    Outcome out;
    // ccd posets up to 5 elements as codomains
    std::vector<FinPoset> ccd_pool;
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(5))
        if (p.size() > 0 && order::ccd_check(p).ccd) ccd_pool.push_back(p);
    out.require(ccd_pool.size() >= 8, "ccd pool too small");

    std::mt19937 rng(31415926);
    int verified = 0;
    for (int round = 0; verified < 1000 && round < 200000; ++round) {
        const FinPoset& e = ccd_pool[rng() % ccd_pool.size()];
        FinPoset d = enumerate::random_poset(rng, 1 + (int)(rng() % 5));
        auto pe = ptr(e), pd = ptr(d);
        auto maps = enumerate::monotone_maps(e, d);
        std::shuffle(maps.begin(), maps.end(), rng);
        for (const auto& rm : maps) {
            MonotoneMap r = make_monotone(pe, pd, rm);
            order::AdjointResult q = order::left_adjoint(r);
            order::AdjointResult s = order::right_adjoint(r);
            if (!q.exists() || !s.exists()) continue;
            if (!is_order_embedding(*q.map) || !is_order_embedding(*s.map)) continue;
            order::TransferReport t = order::transfer_ccd(*q.map, r, *s.map);
            out.require(t.cod_report.ccd, "codomain lost ccd");
            out.require(t.dom_report.ccd, "ccd failed to transfer");
            ++verified;
            break;
        }
    }
    out.require(verified >= 1000,
                "only " + std::to_string(verified) + " valid triples generated");
    return out;
}

//----------------------------------------------------------------------------
// 7. generator restriction across all dense subsets

Outcome criterion_generator_restriction() {
    Outcome out;
    int dense_checked = 0, non_ccd_checked = 0;
    for (const FinPoset& p : enumerate::all_posets_up_to_iso(5)) {
        if (p.size() == 0 || !order::is_lattice(p)) continue;
        bool ccd = order::ccd_check(p).ccd;
        for (const Bits& g : enumerate::all_subsets(p.size())) {
            bool dense = true;
            for (Idx v = 0; v < p.size() && dense; ++v) {
                auto j = p.join_of(p.below[v] & g);
                if (!j || *j != v) dense = false;
            }
            if (!dense) continue;
            order::GeneratorRestriction gr = order::generator_restriction(p, g);
            out.require(gr.c_adj_y, "restricted adjunction failed");
            if (ccd) {
                ++dense_checked;
                out.require(gr.t_prime.has_value(), "extra left adjoint missing on a ccd base");
                out.require(gr.t_adj_c, "extra left adjoint fails its adjunction");
                out.require(gr.routes_agree, "solver and formula routes disagree");
            } else {
                ++non_ccd_checked;
                out.require(!gr.t_prime.has_value(),
                            "extra left adjoint appeared on a non-ccd lattice");
            }
        }
    }
    out.require(dense_checked >= 20, "dense sweep too small");
    out.require(non_ccd_checked >= 2, "non-ccd sweep too small");
    return out;
}

//----------------------------------------------------------------------------
// 8. comonad fixed points and the induced triple on chains

Outcome criterion_fixed_points() {
    Outcome out;
    for (int n = 0; n <= 3; ++n) {
        FinPoset p = builtin_poset("chain", n);
        wavy::WavyProfunctor w = wavy::wavy_profunctor(p);
        auto samples = psh::standard_copresheaf_samples(w.base_cat);
        wavy::FixedPointReport rep = wavy::fixed_points(w, samples);
        out.require(rep.triple.ok(), "triple verification failed on the " +
                                         std::to_string(n + 1) + "-chain: " +
                                         rep.triple.log.first_failure());
        for (const auto& s : rep.samples) {
            out.require(s.fixed, "sample '" + s.name + "' not fixed");
            out.require(s.image_fixed, "image of '" + s.name + "' not fixed");
            out.require(s.right_adjoint_ok, "right adjoint failed on '" + s.name + "'");
        }
    }
    return out;
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "ccd matches complete distributivity on small and random lattices", 60,
         criterion_ccd_vs_distributivity},
        {2, "way-below degenerates to the order and interpolates", 60, criterion_way_below},
        {3, "scott-open duality reconstructs every small poset", 120, criterion_duality},
        {4, "idempotent arrow ideals classify the simplex truncations", 600, criterion_ideals},
        {5, "adjoint-triple witness over four presheaf bases", 300, criterion_td_witness},
        {6, "ccd transfers along a thousand generated triples", 120, criterion_transfer},
        {7, "generator restriction matches ccd across dense subsets", 120,
         criterion_generator_restriction},
        {8, "comonad fixed points give the adjoint triple on chains", 60,
         criterion_fixed_points},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) {
            out.ok = false;
            out.detail = "over the " + std::to_string((int)c.limit_seconds) + " s budget";
        }
        std::printf("[criterion %d] %s: %s (%.1f s)%s\n", c.id, c.title,
                    out.ok ? "PASS" : "FAIL", secs,
                    out.ok ? "" : ("  -- " + out.detail).c_str());
        if (!out.ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
