#pragma once

#include <string>
#include <utility>

#include "sflow/blackbox.hpp"
#include "sflow/statebox.hpp"

namespace sflow {

// The four relations read off a diagram by opening its integrators: with
// R: m+n -> p+n the opened relation, restrict/corestrict to the state and
// boundary blocks. For a diagram drawn from a state-space system these are
// exactly the graphs of its four matrices.
struct Extraction {
    size_t m = 0, p = 0, n = 0;
    LinRel relA, relB, relC, relD; // n->n, m->n, n->p, m->p
    bool a_map = false, b_map = false, c_map = false, d_map = false;

    bool all_maps() const { return a_map && b_map && c_map && d_map; }
};

namespace detail {

inline Extraction extraction_of(const LinRel& R, size_t n) {
    const Field f = R.field();
    if (R.dom() < n || R.cod() < n) throw ArityError("opened relation narrower than its state");
    size_t m = R.dom() - n, p = R.cod() - n;
    LinRel zero_in = rel_direct_sum(rel_zero_n(f, m), rel_identity(f, n));   // n -> m+n
    LinRel keep_in = rel_direct_sum(rel_identity(f, m), rel_zero_n(f, n));   // m -> m+n
    LinRel drop_out = rel_direct_sum(rel_del_n(f, p), rel_identity(f, n));   // p+n -> n
    LinRel keep_out = rel_direct_sum(rel_identity(f, p), rel_del_n(f, n));   // p+n -> p
    Extraction e;
    e.m = m;
    e.p = p;
    e.n = n;
    e.relA = rel_compose(rel_compose(zero_in, R), drop_out);
    e.relB = rel_compose(rel_compose(keep_in, R), drop_out);
    e.relC = rel_compose(rel_compose(zero_in, R), keep_out);
    e.relD = rel_compose(rel_compose(keep_in, R), keep_out);
    e.a_map = rel_is_map(e.relA);
    e.b_map = rel_is_map(e.relB);
    e.c_map = rel_is_map(e.relC);
    e.d_map = rel_is_map(e.relD);
    return e;
}

} // namespace detail

inline Extraction extract(const TermPtr& t, const Field& f) {
    auto [R, n] = open_blackbox(t, f);
    return detail::extraction_of(R, n);
}

inline Extraction extract(const TermPtr& t) {
    auto [R, n] = open_blackbox(t);
    return detail::extraction_of(R, n);
}

// Independent oracle: perform the surgeries on the wiring graph itself —
// cut wires become boundary, suppressed boundary gets zero sources or
// discard sinks, integrators become scale-by-zero — and black-box each of
// the four modified graphs separately.
inline Extraction extract_surgical(const TermPtr& t, const Field& f) {
    PortGraph g = to_graph(t);
    size_t n = g.int_order.size();
    size_t m = g.boundary_in.size(), p = g.boundary_out.size();

    // base-orientation state wires, in integrator traversal order
    std::vector<size_t> leaving, entering;
    for (size_t nid : g.int_order) {
        leaving.push_back(g.nodes[nid].daggered ? g.node_ins[nid][0] : g.node_outs[nid][0]);
        entering.push_back(g.nodes[nid].daggered ? g.node_outs[nid][0] : g.node_ins[nid][0]);
    }

    // the common core: integrator nodes removed
    PortGraph core;
    core.wire_count = g.wire_count;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i].kind == GenKind::Int) continue;
        core.nodes.push_back(g.nodes[i]);
        core.node_ins.push_back(g.node_ins[i]);
        core.node_outs.push_back(g.node_outs[i]);
    }

    auto force_zero = [](PortGraph& h, size_t w) {
        h.nodes.push_back(GenLabel(GenKind::Zero));
        h.node_ins.push_back({});
        h.node_outs.push_back({w});
    };
    auto discard = [](PortGraph& h, size_t w) {
        h.nodes.push_back(GenLabel(GenKind::Del));
        h.node_ins.push_back({w});
        h.node_outs.push_back({});
    };

    Extraction e;
    e.m = m;
    e.p = p;
    e.n = n;

    { // A: states in, states out; original boundary silenced
        PortGraph h = core;
        h.boundary_in = leaving;
        h.boundary_out = entering;
        for (size_t w : g.boundary_in) force_zero(h, w);
        for (size_t w : g.boundary_out) discard(h, w);
        e.relA = blackbox(h, f, IntegratorMode::Zeroed);
    }
    { // B: inputs in, states out; state sources silenced, outputs dropped
        PortGraph h = core;
        h.boundary_in = g.boundary_in;
        h.boundary_out = entering;
        for (size_t w : leaving) force_zero(h, w);
        for (size_t w : g.boundary_out) discard(h, w);
        e.relB = blackbox(h, f, IntegratorMode::Zeroed);
    }
    { // C: states in, outputs out; inputs silenced, state sinks dropped
        PortGraph h = core;
        h.boundary_in = leaving;
        h.boundary_out = g.boundary_out;
        for (size_t w : g.boundary_in) force_zero(h, w);
        for (size_t w : entering) discard(h, w);
        e.relC = blackbox(h, f, IntegratorMode::Zeroed);
    }
    { // D: every integrator becomes scaling by zero
        PortGraph h = g;
        for (size_t nid : h.int_order)
            h.nodes[nid] = GenLabel(GenKind::Scale, h.nodes[nid].daggered,
                                    FieldValue::zero(f));
        h.int_order.clear();
        e.relD = blackbox(h, f, IntegratorMode::Zeroed);
    }

    e.a_map = rel_is_map(e.relA);
    e.b_map = rel_is_map(e.relB);
    e.c_map = rel_is_map(e.relC);
    e.d_map = rel_is_map(e.relD);
    return e;
}

inline bool is_contflow(const TermPtr& t, const Field& f) {
    return extract(t, f).all_maps();
}
inline bool is_contflow(const TermPtr& t) { return extract(t).all_maps(); }

namespace detail {

inline std::string map_failure(const LinRel& r, const char* which) {
    std::string why = rel_dom_rank(r) < r.dom() ? "not total" : "not single-valued";
    return std::string(which) + " relation is " + why;
}

inline void require_maps(const Extraction& e) {
    if (!e.a_map) throw NotContFlow(map_failure(e.relA, "state"));
    if (!e.b_map) throw NotContFlow(map_failure(e.relB, "input"));
    if (!e.c_map) throw NotContFlow(map_failure(e.relC, "output"));
    if (!e.d_map) throw NotContFlow(map_failure(e.relD, "feedthrough"));
}

} // namespace detail

// The state-space system a diagram denotes, when its four extracted
// relations are all linear maps.
inline StatefulMorphism lozenge(const TermPtr& t, const Field& f) {
    Extraction e = extract(t, f);
    detail::require_maps(e);
    return st_new(rel_matrix(e.relA), rel_matrix(e.relB), rel_matrix(e.relC),
                  rel_matrix(e.relD));
}

inline StatefulMorphism lozenge(const TermPtr& t) { return lozenge(t, Field::q()); }

// Black-boxing a diagram with symbolic integrators agrees with the
// transfer matrix of its extracted state-space system.
inline bool verify_square(const TermPtr& t) {
    StatefulMorphism s = lozenge(t, Field::q());
    return blackbox(t, Field::qs(), IntegratorMode::Symbolic) ==
           rel_graph(st_transfer(s));
}

// Extraction commutes with the star duality: the star diagram's blocks are
// the transposes, with the input and output roles exchanged.
inline bool star_duality_check(const TermPtr& t, const Field& f) {
    Extraction e = extract(t, f);
    detail::require_maps(e);
    Extraction s = extract(star_term(t, f), f);
    if (!s.all_maps()) return false;
    return rel_matrix(s.relA) == rel_matrix(e.relA).transpose() &&
           rel_matrix(s.relB) == rel_matrix(e.relC).transpose() &&
           rel_matrix(s.relC) == rel_matrix(e.relB).transpose() &&
           rel_matrix(s.relD) == rel_matrix(e.relD).transpose();
}

inline bool star_duality_check(const TermPtr& t) {
    return star_duality_check(t, Field::q());
}

} // namespace sflow
