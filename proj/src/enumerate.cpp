#include "tdlab/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tdlab::enumerate {

namespace {

// canonical form: the minimum, over all permutations, of the strict-order
// bit matrix read row-major
std::uint64_t canonical_code(const std::vector<Bits>& below, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~0ull;
    do {
        std::uint64_t code = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                code <<= 1;
                if (i != j && below[perm[j]].test(perm[i])) code |= 1;
            }
        best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

FinPoset poset_from_strict_upper(int n, const std::vector<Bits>& strict) {
    std::vector<std::string> elems;
    for (int i = 0; i < n; ++i) elems.push_back("p" + std::to_string(i));
    std::vector<Bits> below(n, Bits(n));
    for (int i = 0; i < n; ++i) {
        below[i] = strict[i];
        below[i].set(i);
    }
    return make_poset_from_relation(std::move(elems), below);
}

} // namespace

std::vector<FinPoset> posets_up_to_iso(int n) {
    if (n == 0) return {make_poset({}, {})};
    if (n > 7)
        throw Error(ErrKind::SizeGuardExceeded, "poset enumeration beyond 7 elements");
    // strict relations contained in the natural order: subsets of the pairs
    // (i,j) with i < j, filtered for transitivity; every iso class has at
    // least one representative labeled along a linear extension
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
    std::vector<FinPoset> out;
    std::set<std::uint64_t> seen;
    for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
        std::vector<Bits> below(n, Bits(n));  // strict part, below[j] = {i : i < j}
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((mask >> s) & 1) below[slots[s].second].set(slots[s].first);
        bool transitive = true;
        for (int k = 0; k < n && transitive; ++k)
            for (int j = 0; j < n && transitive; ++j)
                if (below[j].test(k) && !below[k].subset_of(below[j])) transitive = false;
        if (!transitive) continue;
        std::uint64_t code = canonical_code(below, n);
        if (seen.insert(code).second) out.push_back(poset_from_strict_upper(n, below));
    }
    return out;
}

std::vector<FinPoset> all_posets_up_to_iso(int max_n) {
    std::vector<FinPoset> out;
    for (int n = 0; n <= max_n; ++n) {
        auto batch = posets_up_to_iso(n);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

bool posets_isomorphic(const FinPoset& a, const FinPoset& b) {
    if (a.size() != b.size()) return false;
    int n = a.size();
    std::vector<Bits> sa(n, Bits(n)), sb(n, Bits(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && a.leq(j, i)) sa[i].set(j);
            if (i != j && b.leq(j, i)) sb[i].set(j);
        }
    return canonical_code(sa, n) == canonical_code(sb, n);
}

FinPoset random_poset(std::mt19937& rng, int n, double density) {
    std::bernoulli_distribution flip(density);
    std::vector<Bits> strict(n, Bits(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (flip(rng)) strict[j].set(i);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (strict[j].test(i) && !strict[i].subset_of(strict[j])) {
                    strict[j] |= strict[i];
                    changed = true;
                }
    }
    return poset_from_strict_upper(n, strict);
}

FinPoset random_lattice(std::mt19937& rng, int n, int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        FinPoset p = random_poset(rng, n);
        bool lattice = n > 0;
        for (Idx x = 0; x < n && lattice; ++x)
            for (Idx y = x; y < n && lattice; ++y) {
                Bits s(n);
                s.set(x);
                s.set(y);
                if (!p.join_of(s) || !p.meet_of(s)) lattice = false;
            }
        if (lattice) return p;
    }
    throw Error(ErrKind::InternalInconsistency, "random lattice sampling did not converge");
}

std::vector<std::vector<Idx>> monotone_maps(const FinPoset& dom, const FinPoset& cod) {
    std::vector<std::vector<Idx>> out;
    if (dom.size() == 0) {
        out.push_back({});
        return out;
    }
    if (cod.size() == 0) return out;
    std::vector<Idx> cur(dom.size(), 0);
    while (true) {
        if (is_monotone(dom, cod, cur)) out.push_back(cur);
        int k = dom.size() - 1;
        while (k >= 0 && cur[k] == cod.size() - 1) --k;
        if (k < 0) break;
        ++cur[k];
        for (int t = k + 1; t < dom.size(); ++t) cur[t] = 0;
    }
    return out;
}

std::vector<Bits> all_subsets(int n) {
    std::vector<Bits> out;
    for (std::uint64_t m = 0; m < (1ull << n); ++m) {
        Bits b(n);
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1) b.set(i);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    return out;
}

} // namespace tdlab::enumerate
