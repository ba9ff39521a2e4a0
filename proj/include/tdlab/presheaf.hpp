#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdlab/fincat.hpp"
#include "tdlab/profunctor.hpp"

namespace tdlab::psh {

//----------------------------------------------------------------------------
// presheaves (contravariant set-valued functors)
//
// A copresheaf on A is represented as a presheaf on opposite(A); the
// restriction tables then read as the covariant actions.

struct Presheaf {
    CategoryPtr base;
    std::string name;
    std::vector<std::vector<std::string>> at;  // element labels per object
    std::vector<std::vector<Idx>> act;         // act[f] : F(tgt f) -> F(src f)

    int size_at(Idx x) const { return (int)at[x].size(); }
    long long total_elements() const;
};

using Copresheaf = Presheaf;

void check_presheaf(const Presheaf& f);

Presheaf yoneda(CategoryPtr c, Idx obj);
Presheaf terminal_presheaf(CategoryPtr c);
Presheaf empty_presheaf(CategoryPtr c);
Presheaf coproduct(const Presheaf& f, const Presheaf& g);
Presheaf product(const Presheaf& f, const Presheaf& g);

// projections for `product`, as component tables
std::vector<std::vector<Idx>> product_proj_left(const Presheaf& f, const Presheaf& g);
std::vector<std::vector<Idx>> product_proj_right(const Presheaf& f, const Presheaf& g);

//----------------------------------------------------------------------------
// natural transformations

struct NatTrans {
    std::vector<std::vector<Idx>> comp;  // comp[x] : F(x) -> G(x)
};

bool is_natural(const Presheaf& f, const Presheaf& g, const NatTrans& t);
NatTrans identity_nat(const Presheaf& f);
// (b after a) with a : F -> G, b : G -> H
NatTrans vertical_compose(const NatTrans& b, const NatTrans& a);
bool nat_equal(const NatTrans& a, const NatTrans& b);
bool nat_is_iso(const Presheaf& f, const Presheaf& g, const NatTrans& t);

// all natural transformations F -> G in canonical (lexicographic) order;
// guard on the unfiltered family count
std::vector<NatTrans> nat_trans_set(const Presheaf& f, const Presheaf& g,
                                    const Limits& lim = default_limits());

// position of t in the canonical enumeration
Idx nat_index_in(const std::vector<NatTrans>& all, const NatTrans& t);

// the transformation y(src f) -> y(tgt f) given by postcomposition with f
NatTrans yoneda_postcompose(CategoryPtr c, Idx f);

//----------------------------------------------------------------------------
// coends and ends of bifunctors C^op x C -> Set
//
// A bifunctor is a profunctor with equal domain and codomain.

using Bifunctor = Profunctor;

void check_bifunctor(const Bifunctor& h);

struct Coend {
    FinSet classes;                         // canonical labels k0, k1, ...
    std::vector<std::vector<Idx>> inj;      // inj[c][i] = class of i in H(c,c)
    std::vector<std::pair<Idx, Idx>> reps;  // least (object, element) per class
};

Coend coend(const Bifunctor& h);

struct End {
    FinSet elements;
    std::vector<std::vector<Idx>> families;  // families[k][c] in H(c,c)
};

End end(const Bifunctor& h, const Limits& lim = default_limits());

//----------------------------------------------------------------------------
// the cocontinuous functor induced by a profunctor
//
// M : C -|-> D acts on copresheaves: (M F)(d) = coend over c of M(c,d) x F(c).

struct ProfApplication {
    Copresheaf result;  // copresheaf on D (presheaf on opposite(D))
    // per object d: representative (c, m_idx, f_idx) of each class
    std::vector<std::vector<std::tuple<Idx, Idx, Idx>>> reps;
    // class lookup per object d
    std::vector<std::map<std::tuple<Idx, Idx, Idx>, Idx>> cls;

    Idx class_of(Idx d, Idx c, Idx mi, Idx fi) const;
};

ProfApplication apply_profunctor(const Profunctor& m, const Copresheaf& f);

// functorial action on a morphism of copresheaves
NatTrans apply_profunctor_to_nat(const Profunctor& m, const Copresheaf& f, const Copresheaf& g,
                                 const NatTrans& t, const ProfApplication& mf,
                                 const ProfApplication& mg);

//----------------------------------------------------------------------------
// category of elements and flatness

struct ElementsCategory {
    FinCategory cat;
    std::vector<std::pair<Idx, Idx>> vertex;  // per object: (base object, element index)
    Idx vertex_id(Idx obj, Idx elem) const;
};

ElementsCategory elements_category(const Presheaf& f);

struct FlatReport {
    bool flat = false;
    std::string witness;  // first failing condition
};

// cofilteredness of the category of elements: nonempty, every pair of
// elements admits a cone, every parallel pair is equalized into the pair
FlatReport flat_check(const Presheaf& f);

//----------------------------------------------------------------------------
// sample suites used across the verification operations

std::vector<Presheaf> standard_presheaf_samples(CategoryPtr c);
// covariant duals, as presheaves on opposite(a)
std::vector<Copresheaf> standard_copresheaf_samples(CategoryPtr a);

} // namespace tdlab::psh
