#pragma once

// JSON reports and DOT lattice diagrams. Rationals are serialized as strings.

#include <synclat/synchrony.hpp>
#include <synclat/verify.hpp>

#include <json.hpp>

#include <sstream>
#include <string>

namespace synclat {

inline nlohmann::json rational_rows(const QSubspace& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < s.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < s.ambient_dim(); ++j) row.push_back(to_string(s.basis()(r, j)));
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::json poly_json(const RationalPoly& p) {
    nlohmann::json c = nlohmann::json::array();
    for (std::size_t i = 0; i <= static_cast<std::size_t>(p.degree()); ++i) c.push_back(to_string(p.coeff(i)));
    return {{"text", p.to_string("t")}, {"coefficients", c}};
}

inline nlohmann::json components_json(const std::vector<SpectralComponent>& comps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : comps) {
        nlohmann::json dims = nlohmann::json::array();
        for (const auto& k : c.kernel_chain) dims.push_back(k.dim());
        arr.push_back({{"factor", c.factor.to_string("t")},
                       {"degree", c.degree()},
                       {"multiplicity", c.multiplicity},
                       {"order", c.order},
                       {"kernel_chain_dims", dims},
                       {"jordan_blocks", jordan_structure(c)},
                       {"valency", c.is_valency}});
    }
    return arr;
}

inline nlohmann::json special_list_json(const std::vector<SpecialJordan>& specials) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : specials)
        arr.push_back({{"component", s.component},
                       {"dim", s.dim},
                       {"weight", s.weight},
                       {"p_partition", s.p_partition.to_string()},
                       {"label", s.p_partition.cycle_label()},
                       {"fully_synchronous", s.is_fully_synchronous},
                       {"family_dim", s.family.dim()},
                       {"representative_of_family", !s.unique()},
                       {"hull", rational_rows(s.hull)}});
    return arr;
}

inline nlohmann::json lattice_json(const SynchronyLattice& lat) {
    nlohmann::json elems = nlohmann::json::array();
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const auto& e = lat[i];
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : e.decomposition) {
            nlohmann::json mj{{"special", m.special}, {"representative", m.representative}};
            if (!m.representative) mj["hull"] = rational_rows(m.hull);
            members.push_back(mj);
        }
        elems.push_back({{"index", i},
                         {"partition", e.partition.to_string()},
                         {"label", e.partition.cycle_label()},
                         {"dim", e.dim},
                         {"trivial", e.trivial},
                         {"join_irreducible", lat.is_join_irreducible(i)},
                         {"decomposition", members}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (auto [lo, hi] : lat.hasse_edges()) edges.push_back({lo, hi});
    nlohmann::json pentagons = nlohmann::json::array();
    for (const auto& p : find_N5(lat)) pentagons.push_back({p.bottom, p.a, p.b, p.c, p.top});
    return {{"elements", elems},
            {"hasse_edges", edges},
            {"join_irreducible_count", lat.join_irreducibles().size()},
            {"pentagons", pentagons}};
}

inline nlohmann::json analysis_report(const Analysis& an, const std::vector<CheckResult>& checks) {
    nlohmann::json cn = nlohmann::json::array();
    for (const auto& s : an.cn_decomposition)
        cn.push_back({{"component", s.component}, {"dim", s.dim}, {"p_partition", s.p_partition.to_string()},
                      {"hull", rational_rows(s.hull)}});
    nlohmann::json verification = nlohmann::json::array();
    for (const auto& c : checks) verification.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    std::size_t nontrivial = 0;
    for (const auto& e : an.lattice.elements()) nontrivial += !e.trivial;
    const auto ji = an.lattice.join_irreducibles().size();
    const auto sc = special_count(an.specials);
    return {{"network", network_to_json(an.net)},
            {"valency", an.net.valency()},
            {"characteristic_polynomial", poly_json(char_poly(an.net))},
            {"components", components_json(an.components)},
            {"special_jordans", special_list_json(an.specials)},
            {"special_jordan_count", sc},
            {"full_space_decomposition", cn},
            {"synchrony_count", an.lattice.size()},
            {"nontrivial_synchrony_count", nontrivial},
            {"lattice", lattice_json(an.lattice)},
            {"join_irreducible_equals_special_count", ji == sc},
            {"verification", verification}};
}

/// Hasse diagram, drawn bottom-up, nodes labeled in cycle notation.
inline std::string lattice_dot(const SynchronyLattice& lat) {
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < lat.size(); ++i)
        out << "  n" << i << " [label=\"" << lat[i].partition.cycle_label() << "\"];\n";
    for (auto [lo, hi] : lat.hasse_edges()) out << "  n" << lo << " -> n" << hi << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace synclat
