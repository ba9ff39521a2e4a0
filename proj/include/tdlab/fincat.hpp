#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tdlab/bits.hpp"
#include "tdlab/error.hpp"

namespace tdlab {

using Idx = int;

// A finite set with distinct, canonically (lexicographically) ordered labels.
struct FinSet {
    std::string label;
    std::vector<std::string> elements;

    int size() const { return (int)elements.size(); }
    Idx index_of(const std::string& e) const;
};

FinSet make_finset(std::string label, std::vector<std::string> elements);

//----------------------------------------------------------------------------
// finite categories

struct FinCategory {
    struct Arrow {
        std::string name;
        Idx src = -1, tgt = -1;
    };

    std::vector<std::string> objects;  // sorted, interned to dense ids
    std::vector<Arrow> arrows;         // sorted by name, interned to dense ids
    std::vector<Idx> identity;         // per object
    std::vector<std::vector<Idx>> comp;  // comp[g][f] = g.f, -1 where not composable

    int n_objects() const { return (int)objects.size(); }
    int n_arrows() const { return (int)arrows.size(); }

    Idx object_id(const std::string& name) const;
    Idx arrow_id(const std::string& name) const;
    Idx src(Idx a) const { return arrows[a].src; }
    Idx tgt(Idx a) const { return arrows[a].tgt; }
    bool is_identity(Idx a) const { return identity[arrows[a].src] == a && arrows[a].src == arrows[a].tgt; }

    // g.f with tgt(f) = src(g); throws InternalInconsistency on a non-composable pair
    Idx compose(Idx g, Idx f) const;

    std::vector<Idx> hom(Idx x, Idx y) const;  // arrow ids in canonical order
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

// raw tables prior to validation; identities are synthesized, not listed
struct RawCategory {
    std::vector<std::string> objects;
    std::vector<FinCategory::Arrow> arrows;  // src/tgt as indices into objects? no: names resolved by caller
    struct RawArrow {
        std::string name, src, tgt;
    };
    std::vector<RawArrow> raw_arrows;
    struct Composite {
        std::string g, f, h;  // g . f = h
    };
    std::vector<Composite> composites;
};

// Checks totality of the composition table on composable pairs, the identity
// laws, and associativity on every composable triple. Errors name the witness.
FinCategory validate_category(const RawCategory& raw, const Limits& lim = default_limits());

// re-checks an already-built category (used on every programmatic constructor)
void check_category(const FinCategory& c, const Limits& lim = default_limits());

FinCategory opposite(const FinCategory& c);

bool same_category(const FinCategory& a, const FinCategory& b);

//----------------------------------------------------------------------------
// finite posets and monotone maps

struct FinPoset {
    std::vector<std::string> elems;  // sorted, interned
    std::vector<Bits> below;         // below[i] = { j : j <= i }
    std::vector<Bits> above;         // above[i] = { j : i <= j }

    int size() const { return (int)elems.size(); }
    bool leq(Idx a, Idx b) const { return below[b].test(a); }
    Idx index_of(const std::string& e) const;

    // least element of S, if S has one inside itself
    std::optional<Idx> minimum_of(const Bits& s) const;
    std::optional<Idx> maximum_of(const Bits& s) const;
    // least upper bound / greatest lower bound of S within the whole poset
    std::optional<Idx> join_of(const Bits& s) const;
    std::optional<Idx> meet_of(const Bits& s) const;

    bool is_downset(const Bits& s) const;
    bool is_upset(const Bits& s) const;
    bool is_directed(const Bits& s) const;  // nonempty, pairwise upper bounds inside s
};

using PosetPtr = std::shared_ptr<const FinPoset>;

// builds from element labels and <= pairs; reflexive/transitive closure is
// applied, antisymmetry violations are an error naming the cycle pair
FinPoset make_poset(std::vector<std::string> elems,
                    const std::vector<std::pair<std::string, std::string>>& le);

// internal variant taking an already-closed relation matrix (index-based)
FinPoset make_poset_from_relation(std::vector<std::string> elems,
                                  const std::vector<Bits>& below_closed);

struct MonotoneMap {
    PosetPtr dom, cod;
    std::vector<Idx> map;

    Idx operator()(Idx x) const { return map[x]; }
};

MonotoneMap make_monotone(PosetPtr dom, PosetPtr cod, std::vector<Idx> map);
bool is_monotone(const FinPoset& dom, const FinPoset& cod, const std::vector<Idx>& map);
bool is_order_embedding(const MonotoneMap& f);

FinCategory poset_as_category(const FinPoset& p);

// inverse of poset_as_category on thin skeletal categories
bool is_thin(const FinCategory& c);
FinPoset underlying_poset(const FinCategory& c);  // requires thin + skeletal

//----------------------------------------------------------------------------
// functors

struct FinFunctor {
    CategoryPtr dom, cod;
    std::vector<Idx> on_obj;
    std::vector<Idx> on_arrow;

    Idx ob(Idx x) const { return on_obj[x]; }
    Idx mor(Idx a) const { return on_arrow[a]; }
};

FinFunctor make_functor(CategoryPtr dom, CategoryPtr cod,
                        std::vector<Idx> on_obj, std::vector<Idx> on_arrow);
bool is_fully_faithful(const FinFunctor& f);
FinFunctor identity_functor(CategoryPtr c);
// inclusion of the full subcategory spanned by the given objects
std::pair<FinCategory, FinFunctor> full_subcategory(CategoryPtr c, const std::vector<Idx>& objs);

//----------------------------------------------------------------------------
// built-in categories

// name in { simplex, globe, chain, monoid-table, discrete, terminal };
// terminal ignores n. simplex(n): objects [0]..[n], arrows all monotone maps.
// globe(n): reflexive globe truncated at n. chain(n): (n+1)-chain as a thin
// category. monoid-table(n): cyclic monoid of order n on one object.
FinCategory builtin_category(const std::string& name, int n,
                             const Limits& lim = default_limits());

// built-in posets for demos and tests:
// chain(n): n+1 elements; antichain(n): n elements; boolean(n): subsets of n;
// diamond: M3; pentagon: N5.
FinPoset builtin_poset(const std::string& name, int n);

// number of monotone maps [j] -> [k] (chains with j+1 and k+1 elements)
long long count_monotone_maps(int j, int k);

// dimension of a builtin simplex/globe object parsed from its label
// ("[2]" -> 2, "g3" -> 3); nullopt when the label carries no dimension
std::optional<int> builtin_object_dimension(const std::string& label);

} // namespace tdlab
