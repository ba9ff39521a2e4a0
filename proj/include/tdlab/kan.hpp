#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdlab/presheaf.hpp"

namespace tdlab::kan {

//----------------------------------------------------------------------------
// formal colimits of big representables
//
// An object of the (large) presheaf category over C-hat is kept in normal
// form: a finite shape whose vertices are presheaves on C and whose edges
// are natural transformations. The colimit itself is never materialized.

struct FormalColimit {
    CategoryPtr base;   // C
    CategoryPtr shape;
    std::vector<psh::Presheaf> vertex;  // per shape object
    std::vector<psh::NatTrans> edge;    // per shape arrow

    std::string name;
};

// functoriality of the diagram: identities map to identities, composites to
// composites, and every edge is natural
void check_formal_colimit(const FormalColimit& x);

FormalColimit big_representable(const psh::Presheaf& f);
FormalColimit empty_colimit(CategoryPtr base);
FormalColimit coproduct_colimit(const psh::Presheaf& f, const psh::Presheaf& g);

//----------------------------------------------------------------------------
// restriction and right Kan extension along a fully faithful functor

psh::Presheaf restrict_presheaf(const FinFunctor& i, const psh::Presheaf& f);

struct RanResult {
    psh::Presheaf presheaf;   // on the codomain of i
    bool counit_iso = false;  // restrict(ran P) is isomorphic to P
};

// pointwise formula: (ran P)(e) = Nat(restrict(i, y(e)), P); requires i
// fully faithful (NotFullyFaithful otherwise)
RanResult ran(const FinFunctor& i, const psh::Presheaf& p, const Limits& lim = default_limits());

//----------------------------------------------------------------------------
// left Kan extension along the Yoneda embedding, in normal form

// the formal colimit over the category of elements of E, with every vertex
// the representable at the element's object
FormalColimit lan_along_yoneda(const psh::Presheaf& e);

//----------------------------------------------------------------------------
// the pointwise colimit (the counit-side evaluator on formal colimits)

struct ColimitResult {
    psh::Presheaf colim;
    std::vector<psh::NatTrans> inj;                   // per vertex
    std::vector<std::vector<std::pair<Idx, Idx>>> reps;  // per base object: (vertex, elem)
    std::vector<std::map<std::pair<Idx, Idx>, Idx>> cls;

    Idx class_of(Idx obj, Idx vtx, Idx elem) const;
};

ColimitResult colimit_of(const FormalColimit& x);

//----------------------------------------------------------------------------
// hom-sets between formal colimits: limit over the source shape of the
// colimit over the target shape of presheaf-level hom-sets

struct BigHomCtx {
    FormalColimit x, y;
    // per source vertex i and target vertex j: Nat(P_i, Q_j)
    std::vector<std::vector<std::vector<psh::NatTrans>>> nat_sets;
    // colimit classes of the disjoint union over j, per source vertex i
    std::vector<std::vector<std::pair<Idx, Idx>>> reps;  // [i][class] = (j, nat index)
    std::vector<std::map<std::pair<Idx, Idx>, Idx>> cls;
    // the hom-set: compatible families of classes, one entry per source vertex
    std::vector<std::vector<Idx>> elements;

    Idx class_of(Idx i, Idx j, Idx nat_index) const;
    Idx element_index(const std::vector<Idx>& family) const;
};

BigHomCtx big_hom(const FormalColimit& x, const FormalColimit& y,
                  const Limits& lim = default_limits());

//----------------------------------------------------------------------------
// verification logs

struct VerificationLog {
    struct Entry {
        std::string check;
        bool ok;
        std::string detail;
    };
    std::vector<Entry> entries;

    void add(std::string check, bool ok, std::string detail = "");
    bool all_ok() const;
    std::string first_failure() const;
};

struct AdjointTripleWitness {
    std::string subject;
    VerificationLog log;
    bool ok() const { return log.all_ok(); }
};

//----------------------------------------------------------------------------
// the totally-distributive triple over a presheaf category, verified on the
// standard sample suite

struct TdWitness {
    AdjointTripleWitness witness;
    std::function<FormalColimit(const psh::Presheaf&)> t;
    std::function<psh::Presheaf(const FormalColimit&)> c;
    std::function<FormalColimit(const psh::Presheaf&)> y;
};

TdWitness td_witness(CategoryPtr base, const std::vector<psh::Presheaf>& user_samples = {},
                     const Limits& lim = default_limits(), bool throw_on_failure = true);

//----------------------------------------------------------------------------
// adjoint triples from an idempotent comonad with a right adjoint
//
// sample-level categories: objects are indices into a caller-managed
// registry, morphisms are labels unique within their hom-set

struct SampledCategory {
    std::string name;
    int n_objects = 0;
    std::function<std::string(int)> obj_label;
    std::function<std::vector<std::string>(int, int)> hom;
    // compose(a, b, c, g, f) with f : a -> b, g : b -> c
    std::function<std::string(int, int, int, const std::string&, const std::string&)> compose;
    std::function<std::string(int)> id;
};

struct SampledFunctor {
    std::function<int(int)> on_obj;
    // on_mor(a, b, f) with f : a -> b in the domain
    std::function<std::string(int, int, const std::string&)> on_mor;
};

struct ComonadTripleInput {
    SampledCategory cat_c;  // the coreflective subcategory
    SampledCategory cat_d;  // the ambient category
    SampledFunctor i;       // C -> D, fully faithful
    SampledFunctor r;       // D -> C, right adjoint to i
    SampledFunctor n;       // D -> D, right adjoint to the comonad i.r
    std::function<std::string(int)> unit_ir;    // c -> r(i(c))      in C
    std::function<std::string(int)> counit_ir;  // i(r(d)) -> d      in D
    std::function<std::string(int)> unit_n;     // d -> n(i(r(d)))   in D
    std::function<std::string(int)> counit_n;   // i(r(n(d))) -> d   in D
};

struct ComonadTriple {
    AdjointTripleWitness witness;
    SampledFunctor s;  // n . i, right adjoint to r on the samples
};

// verifies i fully faithful, the two given adjunctions, and then r -| s for
// s = n.i via the hom-bijection chain; throws VerificationFailure when a
// check fails unless throw_on_failure is cleared
ComonadTriple triple_from_comonad(const ComonadTripleInput& in, bool throw_on_failure = true);

// the sampled category of a finite poset (morphism label "le")
SampledCategory poset_sampled_category(PosetPtr p, std::string name);
SampledFunctor monotone_sampled_functor(const MonotoneMap& f);

} // namespace tdlab::kan
