#pragma once

#include <vector>

#include "sflow/graph.hpp"
#include "sflow/linrel.hpp"
#include "sflow/term.hpp"

namespace sflow {

// How an `int` node is interpreted: multiplication by 1/s over the rational
// functions, scaling by zero, or cut open so its wires become extra boundary.
enum class IntegratorMode { Symbolic, Zeroed, Cut };

namespace detail {

inline FieldValue value_in_field(const FieldValue& c, const Field& f) {
    if (c.field() == f) return c;
    if (f.kind == FieldKind::QS && c.field().kind == FieldKind::Q) return c.to_qs();
    throw FieldMismatch("scalar over " + c.field().name() + " used in " + f.name());
}

} // namespace detail

// Primary evaluator: one field variable per wire, one linear constraint row
// per node equation, then project the solution space onto the boundary.
inline LinRel blackbox(const PortGraph& g, const Field& f, IntegratorMode mode) {
    if (mode == IntegratorMode::Symbolic && f.kind != FieldKind::QS)
        throw FieldModeMismatch("symbolic integrators need the rational-function field");

    size_t W = g.wire_count;
    std::vector<std::vector<FieldValue>> rows;
    auto row = [&]() { return std::vector<FieldValue>(W, FieldValue::zero(f)); };

    for (size_t i = 0; i < g.nodes.size(); ++i) {
        const GenLabel& lab = g.nodes[i];
        // a daggered node obeys the same symmetric equations with the
        // roles of its ports exchanged
        const std::vector<size_t>& ins = lab.daggered ? g.node_outs[i] : g.node_ins[i];
        const std::vector<size_t>& outs = lab.daggered ? g.node_ins[i] : g.node_outs[i];
        switch (lab.kind) {
            case GenKind::Add: {
                auto r = row();
                r[outs[0]] = FieldValue::one(f);
                r[ins[0]] = r[ins[0]] - FieldValue::one(f);
                r[ins[1]] = r[ins[1]] - FieldValue::one(f);
                rows.push_back(std::move(r));
                break;
            }
            case GenKind::Zero: {
                auto r = row();
                r[outs[0]] = FieldValue::one(f);
                rows.push_back(std::move(r));
                break;
            }
            case GenKind::Dup:
                for (size_t k = 0; k < 2; ++k) {
                    auto r = row();
                    r[outs[k]] = FieldValue::one(f);
                    r[ins[0]] = r[ins[0]] - FieldValue::one(f);
                    rows.push_back(std::move(r));
                }
                break;
            case GenKind::Del: break;
            case GenKind::Scale: {
                auto r = row();
                FieldValue c = detail::value_in_field(*lab.c, f);
                r[outs[0]] = FieldValue::one(f);
                r[ins[0]] = r[ins[0]] - c;
                rows.push_back(std::move(r));
                break;
            }
            case GenKind::Cup: {
                auto r = row();
                r[ins[0]] = FieldValue::one(f);
                r[ins[1]] = r[ins[1]] - FieldValue::one(f);
                rows.push_back(std::move(r));
                break;
            }
            case GenKind::Cap: {
                auto r = row();
                r[outs[0]] = FieldValue::one(f);
                r[outs[1]] = r[outs[1]] - FieldValue::one(f);
                rows.push_back(std::move(r));
                break;
            }
            case GenKind::Int:
                switch (mode) {
                    case IntegratorMode::Symbolic: {
                        auto r = row();
                        r[outs[0]] = FieldValue::s_var();
                        r[ins[0]] = r[ins[0]] - FieldValue::one(f);
                        rows.push_back(std::move(r));
                        break;
                    }
                    case IntegratorMode::Zeroed: {
                        auto r = row();
                        r[outs[0]] = FieldValue::one(f);
                        rows.push_back(std::move(r));
                        break;
                    }
                    case IntegratorMode::Cut: break; // becomes boundary
                }
                break;
        }
    }

    // boundary coordinate layout: inputs (+ cut ins), outputs (+ cut outs)
    std::vector<size_t> cols(g.boundary_in.begin(), g.boundary_in.end());
    if (mode == IntegratorMode::Cut)
        for (size_t nid : g.int_order)
            cols.push_back(g.nodes[nid].daggered ? g.node_ins[nid][0] : g.node_outs[nid][0]);
    size_t dom = cols.size();
    cols.insert(cols.end(), g.boundary_out.begin(), g.boundary_out.end());
    if (mode == IntegratorMode::Cut)
        for (size_t nid : g.int_order)
            cols.push_back(g.nodes[nid].daggered ? g.node_outs[nid][0] : g.node_ins[nid][0]);

    Matrix C(f, rows.size(), W);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < W; ++j) C.at(i, j) = rows[i][j];
    Matrix sol = nullspace(C);
    Matrix proj(f, sol.rows(), cols.size());
    for (size_t i = 0; i < sol.rows(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) proj.at(i, j) = sol.at(i, cols[j]);
    return LinRel::from_span(dom, cols.size() - dom, proj);
}

inline LinRel blackbox(const TermPtr& t, const Field& f, IntegratorMode mode) {
    return blackbox(to_graph(t), f, mode);
}

// Cut-mode evaluation over the base field, plus the integrator count.
inline std::pair<LinRel, size_t> open_blackbox(const TermPtr& t) {
    PortGraph g = to_graph(t);
    Field f = Field::q();
    for (const GenLabel& n : g.nodes)
        if (n.kind == GenKind::Scale) {
            f = n.c->field();
            break;
        }
    return {blackbox(g, f, IntegratorMode::Cut), g.int_order.size()};
}

inline std::pair<LinRel, size_t> open_blackbox(const TermPtr& t, const Field& f) {
    PortGraph g = to_graph(t);
    return {blackbox(g, f, IntegratorMode::Cut), g.int_order.size()};
}

// Second, independent evaluator: recurse on the syntax tree using relation
// algebra only. Kept as a permanent cross-check against the wire method.
inline LinRel blackbox_recursive(const TermPtr& t, const Field& f, IntegratorMode mode) {
    if (mode == IntegratorMode::Cut)
        throw FieldModeMismatch("cut integrators are a whole-graph notion");
    if (mode == IntegratorMode::Symbolic && f.kind != FieldKind::QS)
        throw FieldModeMismatch("symbolic integrators need the rational-function field");
    switch (t->kind) {
        case Term::Kind::Id: return rel_identity(f, t->n);
        case Term::Kind::Swap: return rel_generator(f, "swap");
        case Term::Kind::Compose:
            return rel_compose(blackbox_recursive(t->a, f, mode),
                               blackbox_recursive(t->b, f, mode));
        case Term::Kind::Tensor:
            return rel_direct_sum(blackbox_recursive(t->a, f, mode),
                                  blackbox_recursive(t->b, f, mode));
        case Term::Kind::Gen: {
            const GenLabel& g = *t->gen;
            LinRel base = [&] {
                switch (g.kind) {
                    case GenKind::Add: return rel_generator(f, "add");
                    case GenKind::Zero: return rel_generator(f, "zero");
                    case GenKind::Dup: return rel_generator(f, "dup");
                    case GenKind::Del: return rel_generator(f, "del");
                    case GenKind::Cup: return rel_generator(f, "cup");
                    case GenKind::Cap: return rel_generator(f, "cap");
                    case GenKind::Scale:
                        return rel_generator(f, "scale", detail::value_in_field(*g.c, f));
                    case GenKind::Int:
                        return mode == IntegratorMode::Symbolic
                                   ? rel_generator(f, "scale", FieldValue::s_var().inv())
                                   : rel_generator(f, "scale", FieldValue::zero(f));
                }
                throw UnknownGenerator("?");
            }();
            return g.daggered ? rel_dagger(base) : base;
        }
    }
    throw UnknownGenerator("?");
}

} // namespace sflow
