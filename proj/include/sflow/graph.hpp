#pragma once

#include <numeric>
#include <vector>

#include "sflow/term.hpp"

namespace sflow {

// Wiring graph of a diagram: generator instances with their ports resolved
// to wire ids. Every port lies on exactly one wire; a wire has exactly two
// endpoints (node ports and boundary positions both count).
struct PortGraph {
    std::vector<GenLabel> nodes;
    std::vector<std::vector<size_t>> node_ins;  // wire ids, one list per node
    std::vector<std::vector<size_t>> node_outs;
    std::vector<size_t> boundary_in;  // wire ids of the m input positions
    std::vector<size_t> boundary_out; // wire ids of the p output positions
    std::vector<size_t> int_order;    // integrator node ids, traversal order
    size_t wire_count = 0;
};

namespace detail {

struct GraphBuilder {
    std::vector<GenLabel> nodes;
    std::vector<std::vector<size_t>> node_ins, node_outs;
    std::vector<size_t> parent; // union-find over provisional wire ids

    size_t fresh() {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }

    struct Ports {
        std::vector<size_t> ins, outs;
    };

    Ports build(const TermPtr& t) {
        switch (t->kind) {
            case Term::Kind::Gen: {
                Ports p;
                for (size_t i = 0; i < t->gen->dom(); ++i) p.ins.push_back(fresh());
                for (size_t i = 0; i < t->gen->cod(); ++i) p.outs.push_back(fresh());
                nodes.push_back(*t->gen);
                node_ins.push_back(p.ins);
                node_outs.push_back(p.outs);
                return p;
            }
            case Term::Kind::Id: {
                Ports p;
                for (size_t i = 0; i < t->n; ++i) {
                    size_t w = fresh();
                    p.ins.push_back(w);
                    p.outs.push_back(w);
                }
                return p;
            }
            case Term::Kind::Swap: {
                size_t a = fresh(), b = fresh();
                return {{a, b}, {b, a}};
            }
            case Term::Kind::Compose: {
                Ports f = build(t->a), g = build(t->b);
                for (size_t i = 0; i < f.outs.size(); ++i) unite(f.outs[i], g.ins[i]);
                return {f.ins, g.outs};
            }
            case Term::Kind::Tensor: {
                Ports f = build(t->a), g = build(t->b);
                f.ins.insert(f.ins.end(), g.ins.begin(), g.ins.end());
                f.outs.insert(f.outs.end(), g.outs.begin(), g.outs.end());
                return f;
            }
        }
        return {};
    }
};

} // namespace detail

inline PortGraph to_graph(const TermPtr& t) {
    detail::GraphBuilder b;
    detail::GraphBuilder::Ports p = b.build(t);

    // renumber union-find classes to dense wire ids
    std::vector<size_t> id(b.parent.size(), SIZE_MAX);
    PortGraph g;
    auto wire = [&](size_t raw) {
        size_t r = b.find(raw);
        if (id[r] == SIZE_MAX) id[r] = g.wire_count++;
        return id[r];
    };
    for (size_t w : p.ins) g.boundary_in.push_back(wire(w));
    for (size_t w : p.outs) g.boundary_out.push_back(wire(w));
    g.nodes = b.nodes;
    g.node_ins.resize(g.nodes.size());
    g.node_outs.resize(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        for (size_t w : b.node_ins[i]) g.node_ins[i].push_back(wire(w));
        for (size_t w : b.node_outs[i]) g.node_outs[i].push_back(wire(w));
        if (g.nodes[i].kind == GenKind::Int) g.int_order.push_back(i);
    }
    return g;
}

} // namespace sflow
