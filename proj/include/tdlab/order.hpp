#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tdlab/fincat.hpp"

namespace tdlab::order {

//----------------------------------------------------------------------------
// down-sets and ideals

// All down-closed subsets of a base poset, materialized as bitmasks in
// canonical order (popcount, then numeric), together with the inclusion
// order as a FinPoset and the principal-down-set embedding.
struct DownSetLattice {
    PosetPtr base;
    std::vector<Bits> sets;      // canonical order; index = element id in `lattice`
    PosetPtr lattice;            // sets ordered by inclusion
    MonotoneMap embed;           // x -> { u : u <= x }

    Idx index_of_set(const Bits& s) const;
};

DownSetLattice down_set_lattice(const FinPoset& base, const Limits& lim = default_limits());

// Nonempty directed down-closed subsets ordered by inclusion.
struct IdealCompletion {
    PosetPtr base;
    std::vector<Bits> ideals;
    PosetPtr lattice;
    MonotoneMap embed;  // principal ideals

    Idx index_of_ideal(const Bits& s) const;
};

IdealCompletion ideal_completion(const FinPoset& base, const Limits& lim = default_limits());

//----------------------------------------------------------------------------
// adjoint solving

struct AdjointResult {
    std::optional<MonotoneMap> map;
    std::optional<Idx> failure_witness;  // cod element whose candidate set has no extremum

    bool exists() const { return map.has_value(); }
};

// g with g -| f, where g(x) = minimum of { y : x <= f(y) }; absent (with a
// witness) when some minimum does not exist. The unit/counit inequalities
// are verified before returning.
AdjointResult left_adjoint(const MonotoneMap& f);
// dual: g with f -| g, g(x) = maximum of { y : f(y) <= x }
AdjointResult right_adjoint(const MonotoneMap& f);

//----------------------------------------------------------------------------
// ccd / lex-ccd

struct CcdReport {
    bool complete = false;  // the join map Dn(P) -> P exists
    bool ccd = false;
    bool lex_ccd = false;
    DownSetLattice dn;
    std::optional<MonotoneMap> join;           // v : Dn(P) -> P
    std::optional<MonotoneMap> totally_below;  // tdown : P -> Dn(P)
    std::optional<Idx> witness;                // down-set id or element id blocking the adjoint
};

CcdReport ccd_check(const FinPoset& p, const Limits& lim = default_limits());

struct DistributivityResult {
    bool distributive = false;
    std::optional<std::array<Idx, 3>> witness;  // (x,y,z) with x^(yvz) != (x^y)v(x^z)
};

// brute-force distributive-law scan; requires a lattice (errors NotALattice
// naming the pair lacking a meet or join); independent oracle for ccd_check
DistributivityResult distributivity_oracle(const FinPoset& p);
bool is_lattice(const FinPoset& p, std::string* witness_pair = nullptr);

//----------------------------------------------------------------------------
// way-below and continuity

struct WayBelowResult {
    std::vector<Bits> rel;  // rel[y] = { x : x way-below y }
    bool equals_leq = false;
};

// x << y iff every ideal whose join dominates y contains x; computed from
// the full ideal enumeration, not from the finite-poset shortcut
WayBelowResult way_below(const FinPoset& p, const Limits& lim = default_limits());

struct ContinuityResult {
    bool continuous = false;
    IdealCompletion idl;
    std::optional<MonotoneMap> join;           // Idl(P) -> P
    std::optional<MonotoneMap> totally_below;  // P -> Idl(P)
    bool agrees_with_way_below = false;
};

ContinuityResult continuity_check(const FinPoset& p, const Limits& lim = default_limits());

//----------------------------------------------------------------------------
// Scott opens and duality

struct ScottFrame {
    PosetPtr base;
    std::vector<Bits> opens;  // up-sets in canonical order
    PosetPtr lattice;         // opens ordered by inclusion

    Idx index_of_open(const Bits& s) const;
    Idx meet(Idx a, Idx b) const;                // intersection
    Idx join(const std::vector<Idx>& xs) const;  // union (empty join = bottom)
    Idx top() const;
    Idx bottom() const;
};

// for a finite poset the Scott opens are exactly the up-closed subsets
ScottFrame scott_opens(const FinPoset& p, const Limits& lim = default_limits());

struct DualityReport {
    bool opens_ccd = false;
    bool points_iso = false;  // frame points, pointwise order, iso to base
    int n_points = 0;
    std::vector<std::string> counterexamples;

    bool ok() const { return opens_ccd && points_iso; }
};

DualityReport duality_check(const FinPoset& p, const Limits& lim = default_limits());

// the frame points of `f`: maps to the 2-chain preserving finite meets and
// arbitrary joins, enumerated via their (completely prime) filters; returns
// the open index `a` representing each point U |-> [a <= U]
std::vector<Idx> frame_points(const ScottFrame& f);

//----------------------------------------------------------------------------
// transfer along an adjoint triple (q -| r -| s poset retracts)

struct TransferReport {
    CcdReport cod_report;            // E
    CcdReport dom_report;            // D
    bool implication_holds = false;  // E ccd => D ccd
};

// pre: q -| r -| s with q,s order-embeddings D -> E; violations are errors
// naming the failing inequality
TransferReport transfer_ccd(const MonotoneMap& q, const MonotoneMap& r, const MonotoneMap& s,
                            const Limits& lim = default_limits());

//----------------------------------------------------------------------------
// restriction of the adjoint triple to a join-dense generator

struct GeneratorRestriction {
    DownSetLattice dn_g;                 // Dn(G)
    MonotoneMap y_prime;                 // v -> down(v) ∩ G
    std::optional<MonotoneMap> c_prime;  // D -> join(D); absent if some join is missing
    bool c_adj_y = false;                // c' -| y'
    std::optional<MonotoneMap> t_prime;       // left adjoint of c' (solver route)
    std::optional<MonotoneMap> t_from_tdown;  // v -> tdown(v) ∩ G, when E is ccd
    bool t_adj_c = false;                // t' -| c'
    bool routes_agree = false;           // both t' routes defined and equal
    bool base_ccd = false;
};

// pre: every v in E is the join of the generators below it (NotJoinDense
// with a witness element otherwise); subset given by element ids of E
GeneratorRestriction generator_restriction(const FinPoset& e, const Bits& generators,
                                           const Limits& lim = default_limits());

} // namespace tdlab::order
