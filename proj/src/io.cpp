#include "tdlab/io.hpp"

#include <fstream>
#include <sstream>

namespace tdlab::io {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw Error(ErrKind::ParseError, "line " + std::to_string(line) + ": " + what);
}


} // namespace

RawCategory parse_category_text(const std::string& text) {
    RawCategory raw;
    for (const Line& l : tokenize(text)) {
        const auto& t = l.tokens;
        if (t[0] == "object") {
            if (t.size() != 2) fail(l.number, "object <id>");
            raw.objects.push_back(t[1]);
        } else if (t[0] == "arrow") {
            // arrow f : a -> b
            if (t.size() != 6 || t[2] != ":" || t[4] != "->")
                fail(l.number, "arrow <id> : <src> -> <tgt>");
            raw.raw_arrows.push_back({t[1], t[3], t[5]});
        } else if (t[0] == "compose") {
            // compose g . f = h
            if (t.size() != 6 || t[2] != "." || t[4] != "=")
                fail(l.number, "compose <g> . <f> = <h>");
            raw.composites.push_back({t[1], t[3], t[5]});
        } else {
            fail(l.number, "unknown directive '" + t[0] + "'");
        }
    }
    return raw;
}

FinCategory parse_category(const std::string& text, const Limits& lim) {
    return validate_category(parse_category_text(text), lim);
}

std::string print_category(const FinCategory& c) {
    std::ostringstream out;
    for (const auto& o : c.objects) out << "object " << o << "\n";
    for (Idx a = 0; a < c.n_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        out << "arrow " << c.arrows[a].name << " : " << c.objects[c.src(a)] << " -> "
            << c.objects[c.tgt(a)] << "\n";
    }
    for (Idx g = 0; g < c.n_arrows(); ++g)
        for (Idx f = 0; f < c.n_arrows(); ++f) {
            if (c.is_identity(g) || c.is_identity(f)) continue;
            if (c.tgt(f) != c.src(g)) continue;
            out << "compose " << c.arrows[g].name << " . " << c.arrows[f].name << " = "
                << c.arrows[c.comp[g][f]].name << "\n";
        }
    return out.str();
}

FinPoset parse_poset(const std::string& text) {
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> le;
    for (const Line& l : tokenize(text)) {
        const auto& t = l.tokens;
        if (t[0] == "element") {
            if (t.size() != 2) fail(l.number, "element <id>");
            elems.push_back(t[1]);
        } else if (t[0] == "le") {
            if (t.size() != 3) fail(l.number, "le <a> <b>");
            le.push_back({t[1], t[2]});
        } else {
            fail(l.number, "unknown directive '" + t[0] + "'");
        }
    }
    try {
        return make_poset(std::move(elems), le);
    } catch (const Error& e) {
        throw Error(ErrKind::ParseError, e.what());
    }
}

std::string print_poset(const FinPoset& p) {
    std::ostringstream out;
    for (const auto& e : p.elems) out << "element " << e << "\n";
    for (Idx a = 0; a < p.size(); ++a)
        for (Idx b = 0; b < p.size(); ++b)
            if (a != b && p.leq(a, b)) out << "le " << p.elems[a] << " " << p.elems[b] << "\n";
    return out.str();
}

namespace {

psh::Presheaf finish_block(CategoryPtr base, bool covariant, const std::string& name,
                           std::vector<std::vector<std::string>> at,
                           const std::vector<std::tuple<int, std::string, std::string,
                                                        std::string>>& maps) {
    // the copresheaf case lives over the opposite category; arrow and object
    // ids agree across the two orientations
    CategoryPtr store_base =
        covariant ? std::make_shared<const FinCategory>(opposite(*base)) : base;
    const FinCategory& c = *base;
    psh::Presheaf f;
    f.base = store_base;
    f.name = name;
    for (auto& v : at) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw Error(ErrKind::ParseError, "block '" + name + "': duplicate element");
    }
    f.at = std::move(at);
    f.act.assign(c.n_arrows(), {});
    auto elem_index = [&](Idx obj, const std::string& e, int line) -> Idx {
        for (Idx i = 0; i < (Idx)f.at[obj].size(); ++i)
            if (f.at[obj][i] == e) return i;
        fail(line, "element '" + e + "' not declared at " + c.objects[obj]);
    };
    // identity actions; user maps fill the rest
    std::vector<std::vector<Idx>> act(c.n_arrows());
    for (Idx a = 0; a < c.n_arrows(); ++a) {
        Idx from = covariant ? c.src(a) : c.tgt(a);
        act[a].assign(f.at[from].size(), -1);
        if (c.is_identity(a))
            for (Idx i = 0; i < (Idx)act[a].size(); ++i) act[a][i] = i;
    }
    for (const auto& [line, arrow, e_from, e_to] : maps) {
        Idx a;
        try {
            a = c.arrow_id(arrow);
        } catch (const Error&) {
            fail(line, "unknown arrow '" + arrow + "'");
        }
        Idx from = covariant ? c.src(a) : c.tgt(a);
        Idx to = covariant ? c.tgt(a) : c.src(a);
        act[a][elem_index(from, e_from, line)] = elem_index(to, e_to, line);
    }
    for (Idx a = 0; a < c.n_arrows(); ++a)
        for (Idx i = 0; i < (Idx)act[a].size(); ++i)
            if (act[a][i] < 0) {
                Idx from = covariant ? c.src(a) : c.tgt(a);
                throw Error(ErrKind::ParseError,
                            "block '" + name + "': no map entry for arrow " +
                                c.arrows[a].name + " at element " + f.at[from][i]);
            }
    f.act = std::move(act);
    try {
        psh::check_presheaf(f);
    } catch (const Error& e) {
        throw Error(ErrKind::ParseError, "block '" + name + "': " + e.what());
    }
    return f;
}

} // namespace

SampleBlocks parse_samples(const std::string& text, CategoryPtr base) {
    SampleBlocks out;
    const FinCategory& c = *base;
    bool in_block = false, covariant = false;
    std::string name;
    std::vector<std::vector<std::string>> at;
    std::vector<std::tuple<int, std::string, std::string, std::string>> maps;
    for (const Line& l : tokenize(text)) {
        const auto& t = l.tokens;
        if (!in_block && t[0] == "category") continue;  // informational reference
        if (t[0] == "presheaf" || t[0] == "copresheaf") {
            if (in_block) fail(l.number, "nested block");
            if (t.size() != 2) fail(l.number, "presheaf <name>");
            in_block = true;
            covariant = t[0] == "copresheaf";
            name = t[1];
            at.assign(c.n_objects(), {});
            maps.clear();
        } else if (t[0] == "at") {
            // at <object> = { e1 e2 ... }   (commas between elements allowed)
            if (!in_block) fail(l.number, "'at' outside a block");
            if (t.size() < 4 || t[2] != "=" || t[3] != "{" || t.back() != "}")
                fail(l.number, "at <object> = { e1 e2 ... }");
            Idx obj;
            try {
                obj = c.object_id(t[1]);
            } catch (const Error&) {
                fail(l.number, "unknown object '" + t[1] + "'");
            }
            for (std::size_t k = 4; k + 1 < t.size(); ++k) {
                std::string tok = t[k];
                std::string piece;
                for (char ch : tok + ",") {
                    if (ch == ',') {
                        if (!piece.empty()) at[obj].push_back(piece);
                        piece.clear();
                    } else {
                        piece += ch;
                    }
                }
            }
        } else if (t[0] == "map") {
            // map <arrow> : <e> -> <e'>
            if (!in_block) fail(l.number, "'map' outside a block");
            if (t.size() != 6 || t[2] != ":" || t[4] != "->")
                fail(l.number, "map <arrow> : <e> -> <e'>");
            maps.push_back({l.number, t[1], t[3], t[5]});
        } else if (t[0] == "end") {
            if (!in_block) fail(l.number, "'end' outside a block");
            psh::Presheaf f = finish_block(base, covariant, name, at, maps);
            if (covariant) out.copresheaves.push_back(std::move(f));
            else out.presheaves.push_back(std::move(f));
            in_block = false;
        } else {
            fail(l.number, "unknown directive '" + t[0] + "'");
        }
    }
    if (in_block) throw Error(ErrKind::ParseError, "unterminated block '" + name + "'");
    return out;
}

TripleFile parse_triple(const std::string& text) {
    enum class Section { None, Dom, Cod, Maps } section = Section::None;
    std::vector<std::string> delems, celems;
    std::vector<std::pair<std::string, std::string>> dle, cle;
    std::vector<std::tuple<int, char, std::string, std::string>> maps;
    for (const Line& l : tokenize(text)) {
        const auto& t = l.tokens;
        if (t[0] == "dom" && t.size() == 1) {
            section = Section::Dom;
        } else if (t[0] == "cod" && t.size() == 1) {
            section = Section::Cod;
        } else if (t[0] == "maps" && t.size() == 1) {
            section = Section::Maps;
        } else if (t[0] == "element" && t.size() == 2) {
            if (section == Section::Dom) delems.push_back(t[1]);
            else if (section == Section::Cod) celems.push_back(t[1]);
            else fail(l.number, "'element' outside dom/cod");
        } else if (t[0] == "le" && t.size() == 3) {
            if (section == Section::Dom) dle.push_back({t[1], t[2]});
            else if (section == Section::Cod) cle.push_back({t[1], t[2]});
            else fail(l.number, "'le' outside dom/cod");
        } else if ((t[0] == "q" || t[0] == "r" || t[0] == "s") && t.size() == 3) {
            if (section != Section::Maps) fail(l.number, "map line outside 'maps'");
            maps.push_back({l.number, t[0][0], t[1], t[2]});
        } else {
            fail(l.number, "unknown directive '" + t[0] + "'");
        }
    }
    TripleFile out;
    out.dom = std::make_shared<const FinPoset>(make_poset(std::move(delems), dle));
    out.cod = std::make_shared<const FinPoset>(make_poset(std::move(celems), cle));
    std::vector<Idx> qm(out.dom->size(), -1), rm(out.cod->size(), -1), sm(out.dom->size(), -1);
    for (const auto& [line, kind, from, to] : maps) {
        try {
            if (kind == 'q') qm[out.dom->index_of(from)] = out.cod->index_of(to);
            else if (kind == 'r') rm[out.cod->index_of(from)] = out.dom->index_of(to);
            else sm[out.dom->index_of(from)] = out.cod->index_of(to);
        } catch (const Error& e) {
            fail(line, e.what());
        }
    }
    auto require_total = [](const std::vector<Idx>& m, const char* nm) {
        for (Idx v : m)
            if (v < 0)
                throw Error(ErrKind::ParseError, std::string("map ") + nm + " is not total");
    };
    require_total(qm, "q");
    require_total(rm, "r");
    require_total(sm, "s");
    try {
        out.q = make_monotone(out.dom, out.cod, std::move(qm));
        out.r = make_monotone(out.cod, out.dom, std::move(rm));
        out.s = make_monotone(out.dom, out.cod, std::move(sm));
    } catch (const Error& e) {
        throw Error(ErrKind::ParseError, e.what());
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrKind::ParseError, "cannot write '" + path + "'");
    out << content;
}

std::string ideal_lattice_dot(const ideals::IdealLattice& l) {
    std::ostringstream out;
    out << "digraph ideals {\n  rankdir=BT;\n  node [shape=box];\n";
    int n = (int)l.ideals.size();
    for (int i = 0; i < n; ++i)
        out << "  i" << i << " [label=\"|I| = " << l.ideals[i].size() << "\"];\n";
    // covering relations of inclusion
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !l.ideals[i].members.subset_of(l.ideals[j].members)) continue;
            bool covering = true;
            for (int k = 0; k < n && covering; ++k)
                if (k != i && k != j && l.ideals[i].members.subset_of(l.ideals[k].members) &&
                    l.ideals[k].members.subset_of(l.ideals[j].members))
                    covering = false;
            if (covering) out << "  i" << i << " -> i" << j << ";\n";
        }
    out << "}\n";
    return out.str();
}

} // namespace tdlab::io
