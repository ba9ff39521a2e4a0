#pragma once

#include <string>
#include <vector>

#include "tdlab/kan.hpp"
#include "tdlab/order.hpp"
#include "tdlab/presheaf.hpp"

namespace tdlab::wavy {

//----------------------------------------------------------------------------
// the way-below profunctor of a finite poset as an idempotent comonad
//
// V(x,y) is a singleton exactly when x is way-below y; the counit embeds V
// into the hom profunctor, and the comultiplication picks the least
// interpolant in canonical element order.

struct WavyProfunctor {
    PosetPtr base;
    CategoryPtr base_cat;  // the poset as a thin category
    Profunctor v;
    std::vector<std::vector<Idx>> interpolant;  // per (x,y): least z with x<<z<<y, or -1
    bool idempotent = false;                    // V.V isomorphic to V
    bool counit_in_hom = false;                 // << contained in <=
    bool columns_flat = false;                  // each V(-,y) has cofiltered elements
};

WavyProfunctor wavy_profunctor(const FinPoset& a, const Limits& lim = default_limits());

// the presheaf V(-, y) on the base category
psh::Presheaf wavy_column(const WavyProfunctor& w, Idx y);

//----------------------------------------------------------------------------
// the induced endofunctor on copresheaves, with its counit

struct ComonadApplication {
    psh::ProfApplication app;  // result copresheaf and class tables
    psh::NatTrans counit;      // app.result -> F
};

// pre: nonempty V(x,y) requires x <= y in the base (so the counit exists);
// accepts raw profunctors over thin bases for counterexample probing
ComonadApplication induced_comonad(const Profunctor& v, const psh::Copresheaf& f);

//----------------------------------------------------------------------------
// cartesianness spot-check: does the endofunctor preserve binary products
// and the terminal object on the given samples?

struct CartesianReport {
    bool binary_ok = false;
    std::string binary_witness;
    bool nullary_ok = false;
    std::string nullary_witness;

    bool ok() const { return binary_ok && nullary_ok; }
};

CartesianReport cartesian_spot_check(const Profunctor& v, const psh::Copresheaf& f,
                                     const psh::Copresheaf& g);

//----------------------------------------------------------------------------
// fixed points of the comonad and the induced adjoint triple on samples

struct FixedPointReport {
    struct SampleEntry {
        std::string name;
        bool fixed = false;                 // counit is an isomorphism
        bool image_fixed = false;           // counit at the image is an isomorphism
        bool right_adjoint_ok = false;      // the transpose bijection held
    };
    std::vector<SampleEntry> samples;
    kan::AdjointTripleWitness triple;       // i -| r -| s on the samples
    bool all_ok = false;
};

FixedPointReport fixed_points(const WavyProfunctor& w,
                              const std::vector<psh::Copresheaf>& samples,
                              const Limits& lim = default_limits());

} // namespace tdlab::wavy
