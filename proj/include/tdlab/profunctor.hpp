#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tdlab/fincat.hpp"

namespace tdlab {

// plain union-find with path halving; canonical representative = least index
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent_[b] = a;  // keep the least index as root
        else parent_[a] = b;
    }

private:
    std::vector<int> parent_;
};

//----------------------------------------------------------------------------
// profunctors M : C -|-> D, i.e. functors C^op x D -> Set

struct Profunctor {
    CategoryPtr dom;  // C
    CategoryPtr cod;  // D
    // at[c][d]: element labels of M(c,d), canonical index order
    std::vector<std::vector<std::vector<std::string>>> at;
    // lact[u][d] for a C-arrow u : c -> c': M(c',d) -> M(c,d)
    std::vector<std::vector<std::vector<Idx>>> lact;
    // ract[v][c] for a D-arrow v : d -> d': M(c,d) -> M(c,d')
    std::vector<std::vector<std::vector<Idx>>> ract;

    int size_at(Idx c, Idx d) const { return (int)at[c][d].size(); }
};

// identity actions, functoriality of both actions, and commutation of the
// two actions; throws InvalidInput naming the failing arrow pair
void check_profunctor(const Profunctor& m);

Profunctor hom_profunctor(CategoryPtr c);

// composite along the middle category, computed as a coend by union-find
struct ProfComposite {
    Profunctor prof;  // (N after M) : C -|-> E  with M : C -|-> D, N : D -|-> E
    // per (c,e): representative (d, m_idx, n_idx) of each class, class-indexed
    std::vector<std::vector<std::vector<std::tuple<Idx, Idx, Idx>>>> reps;
    // class lookup per (c,e)
    std::vector<std::vector<std::map<std::tuple<Idx, Idx, Idx>, Idx>>> cls;

    Idx class_of(Idx c, Idx e, Idx d, Idx mi, Idx ni) const;
};

ProfComposite compose_profunctors(const Profunctor& m, const Profunctor& n);

// a componentwise map of profunctors; used for canonical isomorphisms
struct ProfMap {
    std::vector<std::vector<std::vector<Idx>>> comp;  // comp[c][d]: M(c,d) -> N(c,d)
};

// bijective in every component and equivariant for both actions
bool is_profunctor_iso(const Profunctor& m, const Profunctor& n, const ProfMap& f);

// canonical unit comparisons (both are checked isomorphisms on valid input)
ProfMap left_unit_comparison(const ProfComposite& hom_then_m, const Profunctor& m);
ProfMap right_unit_comparison(const ProfComposite& m_then_hom, const Profunctor& m);

} // namespace tdlab
