#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tdlab/fincat.hpp"

namespace tdlab::enumerate {

// all posets on n labeled elements whose natural labeling is a linear
// extension, reduced to one representative per isomorphism class
std::vector<FinPoset> posets_up_to_iso(int n);

// all posets with between 0 and n elements, one per isomorphism class
std::vector<FinPoset> all_posets_up_to_iso(int max_n);

bool posets_isomorphic(const FinPoset& a, const FinPoset& b);

// a uniform-ish random poset: random upper-triangular strict relation at the
// given density, transitively closed
FinPoset random_poset(std::mt19937& rng, int n, double density = 0.35);

// rejection-samples random_poset until the result is a lattice
FinPoset random_lattice(std::mt19937& rng, int n, int max_tries = 10000);

// all monotone maps dom -> cod in lexicographic order
std::vector<std::vector<Idx>> monotone_maps(const FinPoset& dom, const FinPoset& cod);

// all subsets of {0..n-1} as masks, in (popcount, numeric) order
std::vector<Bits> all_subsets(int n);

} // namespace tdlab::enumerate
