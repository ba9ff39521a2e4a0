#pragma once

#include <string>
#include <vector>

#include "tdlab/fincat.hpp"
#include "tdlab/ideals.hpp"
#include "tdlab/presheaf.hpp"

namespace tdlab::io {

// Category text format, line-based, '#' starts a comment:
//   object <id>
//   arrow <id> : <src> -> <tgt>
//   compose <g> . <f> = <h>
// Identities are implicit and synthesized as id_<object>; compose lines list
// only non-identity pairs.
RawCategory parse_category_text(const std::string& text);
FinCategory parse_category(const std::string& text, const Limits& lim = default_limits());
std::string print_category(const FinCategory& c);

// Poset format:
//   element <id>
//   le <a> <b>
// Reflexive/transitive closure is applied; antisymmetry is checked.
FinPoset parse_poset(const std::string& text);
std::string print_poset(const FinPoset& p);

// Samples format, one or more blocks over a given base:
//   presheaf <name>          (or: copresheaf <name>)
//   at <object> = { e1 e2 ... }
//   map <arrow> : <e> -> <e'>
//   end
// For a presheaf the map line reads contravariantly (e in F(tgt), e' in
// F(src)); for a copresheaf covariantly. A leading `category <path>` line is
// accepted and ignored. Copresheaves come back as presheaves on the
// opposite of `base`.
struct SampleBlocks {
    std::vector<psh::Presheaf> presheaves;
    std::vector<psh::Copresheaf> copresheaves;
};
SampleBlocks parse_samples(const std::string& text, CategoryPtr base);

// Transfer triple format: three sections
//   dom / <poset lines> / cod / <poset lines> / maps /
//   q <dom-elem> <cod-elem>
//   r <cod-elem> <dom-elem>
//   s <dom-elem> <cod-elem>
struct TripleFile {
    PosetPtr dom, cod;
    MonotoneMap q, r, s;
};
TripleFile parse_triple(const std::string& text);

// reads a whole file; ParseError when missing
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// DOT rendering of an ideal lattice: nodes carry cardinalities, edges are
// covering relations of inclusion
std::string ideal_lattice_dot(const ideals::IdealLattice& l);

} // namespace tdlab::io
