#include "tdlab/ideals.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace tdlab::ideals {

bool is_two_sided(const FinCategory& c, const Bits& members) {
    for (Idx f = 0; f < c.n_arrows(); ++f) {
        if (!members.test(f)) continue;
        for (Idx g = 0; g < c.n_arrows(); ++g) {
            if (c.src(g) == c.tgt(f) && !members.test(c.comp[g][f])) return false;
            if (c.tgt(g) == c.src(f) && !members.test(c.comp[f][g])) return false;
        }
    }
    return true;
}

ArrowIdeal ideal_closure(CategoryPtr cp, const std::vector<Idx>& seeds) {
    const FinCategory& c = *cp;
    Bits members(c.n_arrows());
    std::deque<Idx> work;
    for (Idx s : seeds)
        if (!members.test(s)) {
            members.set(s);
            work.push_back(s);
        }
    while (!work.empty()) {
        Idx f = work.front();
        work.pop_front();
        for (Idx g = 0; g < c.n_arrows(); ++g) {
            if (c.src(g) == c.tgt(f)) {
                Idx h = c.comp[g][f];
                if (!members.test(h)) {
                    members.set(h);
                    work.push_back(h);
                }
            }
            if (c.tgt(g) == c.src(f)) {
                Idx h = c.comp[f][g];
                if (!members.test(h)) {
                    members.set(h);
                    work.push_back(h);
                }
            }
        }
    }
    ArrowIdeal out{cp, members};
    if (!is_two_sided(c, members))
        throw Error(ErrKind::InternalInconsistency, "closure is not two-sided");
    return out;
}

IdempotencyReport is_idempotent(const ArrowIdeal& ideal) {
    const FinCategory& c = *ideal.base;
    IdempotencyReport rep;
    rep.idempotent = true;
    rep.factorization.assign(c.n_arrows(), std::nullopt);
    for (Idx f = 0; f < c.n_arrows(); ++f) {
        if (!ideal.members.test(f)) continue;
        bool found = false;
        for (Idx g = 0; g < c.n_arrows() && !found; ++g) {
            if (!ideal.members.test(g) || c.tgt(g) != c.tgt(f)) continue;
            for (Idx h = 0; h < c.n_arrows() && !found; ++h) {
                if (!ideal.members.test(h) || c.src(h) != c.src(f)) continue;
                if (c.tgt(h) == c.src(g) && c.comp[g][h] == f) {
                    rep.factorization[f] = {g, h};
                    found = true;
                }
            }
        }
        if (!found) {
            rep.idempotent = false;
            if (!rep.failing_member) rep.failing_member = f;
        }
    }
    return rep;
}

std::optional<Idx> IdealLattice::index_of(const Bits& members) const {
    for (Idx i = 0; i < (Idx)ideals.size(); ++i)
        if (ideals[i].members == members) return i;
    return std::nullopt;
}

IdealLattice enumerate_idempotent_ideals(CategoryPtr cp, const Limits& lim) {
    const FinCategory& c = *cp;
    IdealLattice out;
    out.base = cp;

    // principal ideals; every two-sided ideal is a union of them
    std::vector<Bits> principal;
    for (Idx f = 0; f < c.n_arrows(); ++f) {
        Bits p = ideal_closure(cp, {f}).members;
        if (std::find(principal.begin(), principal.end(), p) == principal.end())
            principal.push_back(p);
    }

    std::map<std::uint64_t, std::vector<Bits>> seen;  // fingerprint -> members
    std::deque<Bits> queue;
    auto insert = [&](const Bits& b) {
        auto& bucket = seen[b.hash()];
        for (const Bits& x : bucket)
            if (x == b) return false;
        bucket.push_back(b);
        queue.push_back(b);
        return true;
    };
    insert(Bits(c.n_arrows()));
    long long count = 0;
    while (!queue.empty()) {
        Bits cur = queue.front();
        queue.pop_front();
        ++count;
        if (count > lim.max_ideals)
            throw Error(ErrKind::SizeGuardExceeded,
                        "more than " + std::to_string(lim.max_ideals) + " arrow ideals");
        for (const Bits& p : principal) insert(cur | p);
    }
    out.all_ideal_count = count;

    std::vector<Bits> idem;
    for (const auto& [_, bucket] : seen)
        for (const Bits& b : bucket) {
            if (!is_two_sided(c, b))
                throw Error(ErrKind::InternalInconsistency, "enumerated set not two-sided");
            if (is_idempotent(ArrowIdeal{cp, b}).idempotent) idem.push_back(b);
        }
    std::sort(idem.begin(), idem.end(), [](const Bits& a, const Bits& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    for (const Bits& b : idem) out.ideals.push_back(ArrowIdeal{cp, b});

    int n = (int)out.ideals.size();
    out.meet.assign(n, std::vector<Idx>(n, -1));
    out.join.assign(n, std::vector<Idx>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Bits inter = out.ideals[i].members & out.ideals[j].members;
            // meet: union of all enumerated idempotent ideals inside the
            // intersection (idempotent ideals are closed under union, so this
            // is the largest one); assert it is enumerated
            Bits m(c.n_arrows());
            for (const auto& cand : out.ideals)
                if (cand.members.subset_of(inter)) m |= cand.members;
            auto mi = out.index_of(m);
            if (!mi)
                throw Error(ErrKind::InternalInconsistency, "meet escaped the enumeration");
            out.meet[i][j] = *mi;

            Bits u = out.ideals[i].members | out.ideals[j].members;
            if (!is_idempotent(ArrowIdeal{cp, u}).idempotent) {
                // escalate to the least enumerated upper bound
                std::optional<Idx> best;
                for (Idx k = 0; k < n; ++k)
                    if (u.subset_of(out.ideals[k].members) &&
                        (!best || out.ideals[k].members.subset_of(out.ideals[*best].members)))
                        best = k;
                if (!best)
                    throw Error(ErrKind::InternalInconsistency, "join escaped the enumeration");
                out.join[i][j] = *best;
            } else {
                auto ji = out.index_of(u);
                if (!ji)
                    throw Error(ErrKind::InternalInconsistency, "join escaped the enumeration");
                out.join[i][j] = *ji;
            }
        }

    out.is_chain = true;
    for (int i = 0; i < n && out.is_chain; ++i)
        for (int j = 0; j < n && out.is_chain; ++j)
            if (!out.ideals[i].members.subset_of(out.ideals[j].members) &&
                !out.ideals[j].members.subset_of(out.ideals[i].members))
                out.is_chain = false;
    return out;
}

ArrowIdeal factoring_ideal(CategoryPtr cp, const Bits& through_objects) {
    const FinCategory& c = *cp;
    Bits members(c.n_arrows());
    for (Idx f = 0; f < c.n_arrows(); ++f) {
        bool factors = false;
        for (Idx o = 0; o < c.n_objects() && !factors; ++o) {
            if (!through_objects.test(o)) continue;
            for (Idx k = 0; k < c.n_arrows() && !factors; ++k) {
                if (c.src(k) != c.src(f) || c.tgt(k) != o) continue;
                for (Idx h : c.hom(o, c.tgt(f)))
                    if (c.comp[h][k] == f) {
                        factors = true;
                        break;
                    }
            }
        }
        if (factors) members.set(f);
    }
    ArrowIdeal out{cp, members};
    if (!is_two_sided(c, members))
        throw Error(ErrKind::InternalInconsistency, "factoring ideal is not two-sided");
    return out;
}

ArrowIdeal dimension_ideal(CategoryPtr cp, int d) {
    const FinCategory& c = *cp;
    Bits objs(c.n_objects());
    bool any = false;
    for (Idx o = 0; o < c.n_objects(); ++o) {
        auto dim = builtin_object_dimension(c.objects[o]);
        if (!dim)
            throw Error(ErrKind::InvalidInput,
                        "object '" + c.objects[o] + "' carries no dimension");
        if (*dim <= d) {
            objs.set(o);
            any = true;
        }
    }
    if (!any)
        throw Error(ErrKind::InvalidInput, "no object of dimension <= " + std::to_string(d));
    ArrowIdeal ideal = factoring_ideal(cp, objs);
    IdempotencyReport rep = is_idempotent(ideal);
    if (!rep.idempotent)
        throw Error(ErrKind::InternalInconsistency,
                    "dimension ideal fails idempotency at arrow " +
                        c.arrows[*rep.failing_member].name);
    return ideal;
}

std::string ideal_to_string(const ArrowIdeal& ideal) {
    std::string s = "{";
    bool first = true;
    for (Idx f : ideal.members.members()) {
        if (!first) s += ", ";
        s += ideal.base->arrows[f].name;
        first = false;
    }
    return s + "}";
}

} // namespace tdlab::ideals
