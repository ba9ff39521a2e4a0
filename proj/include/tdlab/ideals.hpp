#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdlab/fincat.hpp"

namespace tdlab::ideals {

// a two-sided ideal of arrows: f in I implies h.f.k in I for all composable h, k
struct ArrowIdeal {
    CategoryPtr base;
    Bits members;

    int size() const { return members.count(); }
};

bool is_two_sided(const FinCategory& c, const Bits& members);

// least two-sided ideal containing the seeds, by saturation to a fixpoint
ArrowIdeal ideal_closure(CategoryPtr c, const std::vector<Idx>& seeds);

struct IdempotencyReport {
    bool idempotent = false;
    // per member arrow id, a factorization f = g.h with g,h in the ideal
    std::vector<std::optional<std::pair<Idx, Idx>>> factorization;
    std::optional<Idx> failing_member;  // first member with no such factorization
};

// I is idempotent iff I = I.I; since I.I is always contained in I, the check
// is that every member factors through two members
IdempotencyReport is_idempotent(const ArrowIdeal& ideal);

struct IdealLattice {
    CategoryPtr base;
    std::vector<ArrowIdeal> ideals;        // idempotent ideals, canonical order
    long long all_ideal_count = 0;         // two-sided ideals before the filter
    std::vector<std::vector<Idx>> meet;    // largest idempotent ideal inside the intersection
    std::vector<std::vector<Idx>> join;    // the union (verified idempotent)
    bool is_chain = false;

    std::optional<Idx> index_of(const Bits& members) const;
};

// enumerates every two-sided ideal as a union of principal ideals (BFS over
// the union closure, deduplicated by fingerprint), filters by idempotency,
// and computes the meet/join tables
IdealLattice enumerate_idempotent_ideals(CategoryPtr c, const Limits& lim = default_limits());

// ideal of arrows factoring through one of the given objects
ArrowIdeal factoring_ideal(CategoryPtr c, const Bits& through_objects);

// for builtin simplex/globe truncations: arrows factoring through an object
// of dimension <= d (dimension parsed from the object label)
ArrowIdeal dimension_ideal(CategoryPtr c, int d);

std::string ideal_to_string(const ArrowIdeal& ideal);

} // namespace tdlab::ideals
