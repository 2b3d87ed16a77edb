#pragma once

#include <json.hpp>

#include "sflow/contflow.hpp"
#include "sflow/graph.hpp"
#include "sflow/statebox.hpp"

namespace sflow {

using Json = nlohmann::json;

namespace detail {

inline Json scalar_to_json(const FieldValue& v) {
    if (v.field().kind == FieldKind::Q) {
        const BigRat& r = v.rat();
        return Json::array({numerator(r).str(), denominator(r).str()});
    }
    return v.str();
}

inline FieldValue scalar_from_json(const Field& f, const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw Error("scalar entry must be [num, den] or a string");
        return parse_scalar(f, j[0].get<std::string>() + "/" + j[1].get<std::string>());
    }
    if (j.is_number_integer()) return FieldValue::from_int(f, j.get<long long>());
    return parse_scalar(f, j.get<std::string>());
}

inline Json entries_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void entries_from_json(Matrix& m, const Json& rows) {
    if (!rows.is_array() || rows.size() != m.rows())
        throw Error("matrix entries must hold one array per row");
    for (size_t i = 0; i < m.rows(); ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || row.size() != m.cols())
            throw Error("matrix row has the wrong width");
        for (size_t j = 0; j < m.cols(); ++j)
            m.at(i, j) = scalar_from_json(m.field(), row[j]);
    }
}

} // namespace detail

inline Json matrix_to_json(const Matrix& m) {
    return Json{{"field", m.field().name()},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", detail::entries_to_json(m)}};
}

inline Matrix matrix_from_json(const Json& j) {
    Field f = Field::parse(j.at("field").get<std::string>());
    Matrix m(f, j.at("rows").get<size_t>(), j.at("cols").get<size_t>());
    detail::entries_from_json(m, j.at("entries"));
    return m;
}

inline Json rel_to_json(const LinRel& r) {
    return Json{{"field", r.field().name()},
                {"dom", r.dom()},
                {"cod", r.cod()},
                {"basis", detail::entries_to_json(r.basis())}};
}

inline LinRel rel_from_json(const Json& j) {
    Field f = Field::parse(j.at("field").get<std::string>());
    size_t dom = j.at("dom").get<size_t>(), cod = j.at("cod").get<size_t>();
    const Json& basis = j.at("basis");
    Matrix rows(f, basis.size(), dom + cod);
    detail::entries_from_json(rows, basis);
    return LinRel::from_span(dom, cod, rows); // re-canonicalizes defensively
}

inline Json stateful_to_json(const StatefulMorphism& s) {
    return Json{{"m", s.m},           {"n", s.n},
                {"p", s.p},           {"A", matrix_to_json(s.A)},
                {"B", matrix_to_json(s.B)}, {"C", matrix_to_json(s.C)},
                {"D", matrix_to_json(s.D)}};
}

inline StatefulMorphism stateful_from_json(const Json& j) {
    StatefulMorphism s = st_new(matrix_from_json(j.at("A")), matrix_from_json(j.at("B")),
                                matrix_from_json(j.at("C")), matrix_from_json(j.at("D")));
    if ((j.contains("m") && j.at("m").get<size_t>() != s.m) ||
        (j.contains("n") && j.at("n").get<size_t>() != s.n) ||
        (j.contains("p") && j.at("p").get<size_t>() != s.p))
        throw DimensionMismatch("declared sizes disagree with the blocks");
    return s;
}

namespace detail {

inline const char* gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::Add: return "add";
        case GenKind::Zero: return "zero";
        case GenKind::Dup: return "dup";
        case GenKind::Del: return "del";
        case GenKind::Scale: return "scale";
        case GenKind::Cup: return "cup";
        case GenKind::Cap: return "cap";
        case GenKind::Int: return "int";
    }
    return "?";
}

inline GenKind gen_kind_parse(const std::string& s) {
    for (GenKind k : {GenKind::Add, GenKind::Zero, GenKind::Dup, GenKind::Del, GenKind::Scale,
                      GenKind::Cup, GenKind::Cap, GenKind::Int})
        if (s == gen_kind_name(k)) return k;
    throw UnknownGenerator(s);
}

} // namespace detail

// Wiring graph as ports-on-wires: each wire lists its two endpoints, an
// endpoint being "in:<i>", "out:<i>", or "node:<id>:in|out:<slot>".
inline Json graph_to_json(const PortGraph& g) {
    std::vector<std::vector<std::string>> wires(g.wire_count);
    auto port = [&](size_t w, std::string p) { wires[w].push_back(std::move(p)); };
    for (size_t i = 0; i < g.boundary_in.size(); ++i)
        port(g.boundary_in[i], "in:" + std::to_string(i));
    for (size_t i = 0; i < g.boundary_out.size(); ++i)
        port(g.boundary_out[i], "out:" + std::to_string(i));
    for (size_t n = 0; n < g.nodes.size(); ++n) {
        for (size_t s = 0; s < g.node_ins[n].size(); ++s)
            port(g.node_ins[n][s], "node:" + std::to_string(n) + ":in:" + std::to_string(s));
        for (size_t s = 0; s < g.node_outs[n].size(); ++s)
            port(g.node_outs[n][s], "node:" + std::to_string(n) + ":out:" + std::to_string(s));
    }
    Json nodes = Json::array();
    for (const GenLabel& lab : g.nodes) {
        Json n{{"kind", detail::gen_kind_name(lab.kind)}, {"dagger", lab.daggered}};
        if (lab.c) n["c"] = detail::scalar_to_json(*lab.c);
        nodes.push_back(std::move(n));
    }
    return Json{{"nodes", std::move(nodes)},
                {"wires", wires},
                {"boundaryIn", g.boundary_in},
                {"boundaryOut", g.boundary_out},
                {"intOrder", g.int_order}};
}

inline PortGraph graph_from_json(const Json& j, const Field& f) {
    PortGraph g;
    for (const Json& n : j.at("nodes")) {
        GenKind k = detail::gen_kind_parse(n.at("kind").get<std::string>());
        std::optional<FieldValue> c;
        if (n.contains("c")) c = detail::scalar_from_json(f, n.at("c"));
        g.nodes.push_back(GenLabel(k, n.at("dagger").get<bool>(), c));
        g.node_ins.emplace_back();
        g.node_outs.emplace_back();
    }
    const Json& wires = j.at("wires");
    g.wire_count = wires.size();
    auto place = [&](size_t w, const std::string& p) {
        if (p.rfind("in:", 0) == 0) {
            size_t i = std::stoull(p.substr(3));
            if (g.boundary_in.size() <= i) g.boundary_in.resize(i + 1, SIZE_MAX);
            g.boundary_in[i] = w;
        } else if (p.rfind("out:", 0) == 0) {
            size_t i = std::stoull(p.substr(4));
            if (g.boundary_out.size() <= i) g.boundary_out.resize(i + 1, SIZE_MAX);
            g.boundary_out[i] = w;
        } else if (p.rfind("node:", 0) == 0) {
            size_t c1 = p.find(':', 5);
            size_t c2 = p.find(':', c1 + 1);
            size_t node = std::stoull(p.substr(5, c1 - 5));
            std::string side = p.substr(c1 + 1, c2 - c1 - 1);
            size_t slot = std::stoull(p.substr(c2 + 1));
            auto& ports = side == "in" ? g.node_ins.at(node) : g.node_outs.at(node);
            if (ports.size() <= slot) ports.resize(slot + 1, SIZE_MAX);
            ports[slot] = w;
        } else {
            throw Error("bad port: " + p);
        }
    };
    for (size_t w = 0; w < wires.size(); ++w)
        for (const Json& p : wires[w]) place(w, p.get<std::string>());
    g.int_order = j.at("intOrder").get<std::vector<size_t>>();
    return g;
}

inline Json extraction_to_json(const Extraction& e) {
    Json j{{"integrators", e.n},
           {"inputs", e.m},
           {"outputs", e.p},
           {"relations",
            Json{{"A", rel_to_json(e.relA)},
                 {"B", rel_to_json(e.relB)},
                 {"C", rel_to_json(e.relC)},
                 {"D", rel_to_json(e.relD)}}},
           {"maps", Json{{"A", e.a_map}, {"B", e.b_map}, {"C", e.c_map}, {"D", e.d_map}}}};
    if (e.all_maps())
        j["matrices"] = Json{{"A", matrix_to_json(rel_matrix(e.relA))},
                             {"B", matrix_to_json(rel_matrix(e.relB))},
                             {"C", matrix_to_json(rel_matrix(e.relC))},
                             {"D", matrix_to_json(rel_matrix(e.relD))}};
    return j;
}

inline Extraction extraction_from_json(const Json& j) {
    Extraction e;
    e.n = j.at("integrators").get<size_t>();
    e.m = j.at("inputs").get<size_t>();
    e.p = j.at("outputs").get<size_t>();
    const Json& r = j.at("relations");
    e.relA = rel_from_json(r.at("A"));
    e.relB = rel_from_json(r.at("B"));
    e.relC = rel_from_json(r.at("C"));
    e.relD = rel_from_json(r.at("D"));
    e.a_map = rel_is_map(e.relA);
    e.b_map = rel_is_map(e.relB);
    e.c_map = rel_is_map(e.relC);
    e.d_map = rel_is_map(e.relD);
    return e;
}

} // namespace sflow
