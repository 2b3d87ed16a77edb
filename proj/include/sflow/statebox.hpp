#pragma once

#include <optional>
#include <vector>

#include "sflow/linrel.hpp"
#include "sflow/synth.hpp"

namespace sflow {

// ---- structured relations used by the box laws -------------------------

inline LinRel rel_addmap(const Field& f, size_t k) { // 2k -> k, (x,y) -> x+y
    return rel_graph(hstack(Matrix::identity(f, k), Matrix::identity(f, k)));
}
inline LinRel rel_dupmap(const Field& f, size_t k) { // k -> 2k, x -> (x,x)
    return rel_graph(vstack(Matrix::identity(f, k), Matrix::identity(f, k)));
}
inline LinRel rel_zeromap(const Field& f, size_t k) { // 0 -> k
    return rel_graph(Matrix(f, k, 0));
}
inline LinRel rel_delmap(const Field& f, size_t k) { // k -> 0
    return rel_graph(Matrix(f, 0, k));
}

struct HomPredicates {
    bool monoid = false, comonoid = false, bimonoid = false;
};

// Which of the additive (co)monoid structures the relation R: m -> p
// commutes with, decided by exact relation algebra. The multiplication
// law alone is what block assembly pushes through an adder; the
// comultiplication law is what it pushes through a duplicator. (For a
// linear relation the first is equivalent to totality and the second to
// single-valuedness, so "bimonoid" coincides with being a map.)
inline HomPredicates hom_predicates(const LinRel& R) {
    const Field f = R.field();
    size_t m = R.dom(), p = R.cod();
    HomPredicates h;
    h.monoid = rel_compose(rel_addmap(f, m), R) ==
               rel_compose(rel_direct_sum(R, R), rel_addmap(f, p));
    h.comonoid = rel_compose(R, rel_dupmap(f, p)) ==
                 rel_compose(rel_dupmap(f, m), rel_direct_sum(R, R));
    h.bimonoid = h.monoid && h.comonoid;
    return h;
}

// [R1 R2]: (x1,x2) -> R1 x1 + R2 x2, assembled with relation addition
inline LinRel rel_hcat(const LinRel& R1, const LinRel& R2) {
    const Field f = R1.field();
    size_t m1 = R1.dom(), m2 = R2.dom();
    LinRel p1 = rel_graph(hstack(Matrix::identity(f, m1), Matrix::zero(f, m1, m2)));
    LinRel p2 = rel_graph(hstack(Matrix::zero(f, m2, m1), Matrix::identity(f, m2)));
    return rel_add(rel_compose(p1, R1), rel_compose(p2, R2));
}

// [R1; R2]: x -> (R1 x, R2 x)
inline LinRel rel_vcat(const LinRel& R1, const LinRel& R2) {
    return rel_compose(rel_dupmap(R1.field(), R1.dom()), rel_direct_sum(R1, R2));
}

// ---- the box construction ---------------------------------------------

// A morphism (d, c, a, b): d is the feedthrough X -> Y, b the input map
// into the prestate, a the prestate-to-state map, c the readout. Either
// all four are matrices or all four are relations; the relation form
// requires the homomorphism side conditions.
struct BoxMorphism {
    bool relational = false;
    // matrix variant: d p x m, c p x T, a T x S, b S x m
    std::optional<Matrix> md, mc, ma, mb;
    // relation variant: d m->p, c T->p, a S->T, b m->S
    std::optional<LinRel> rd, rc, ra, rb;

    size_t dom() const { return relational ? rd->dom() : md->cols(); }
    size_t cod() const { return relational ? rd->cod() : md->rows(); }
    size_t prestate() const { return relational ? rb->cod() : mb->rows(); }
    size_t state() const { return relational ? rc->dom() : mc->cols(); }

    bool operator==(const BoxMorphism& o) const {
        if (relational != o.relational) return false;
        if (relational)
            return *rd == *o.rd && *rc == *o.rc && *ra == *o.ra && *rb == *o.rb;
        return *md == *o.md && *mc == *o.mc && *ma == *o.ma && *mb == *o.mb;
    }
};

inline BoxMorphism box_new(Matrix d, Matrix c, Matrix a, Matrix b) {
    if (c.rows() != d.rows() || b.cols() != d.cols() || a.rows() != c.cols() ||
        a.cols() != b.rows())
        throw DimensionMismatch("box blocks disagree");
    BoxMorphism f;
    f.md = std::move(d);
    f.mc = std::move(c);
    f.ma = std::move(a);
    f.mb = std::move(b);
    return f;
}

inline BoxMorphism box_new(LinRel d, LinRel c, LinRel a, LinRel b) {
    if (c.cod() != d.cod() || b.dom() != d.dom() || a.cod() != c.dom() ||
        a.dom() != b.cod())
        throw DimensionMismatch("box blocks disagree");
    if (!hom_predicates(b).monoid) throw HomViolation("input block is not a monoid hom");
    if (!hom_predicates(c).comonoid)
        throw HomViolation("readout block is not a comonoid hom");
    if (!hom_predicates(d).bimonoid)
        throw HomViolation("feedthrough block is not a bimonoid hom");
    BoxMorphism f;
    f.relational = true;
    f.rd = std::move(d);
    f.rc = std::move(c);
    f.ra = std::move(a);
    f.rb = std::move(b);
    return f;
}

inline BoxMorphism box_of(const Matrix& d) {
    const Field f = d.field();
    return box_new(d, Matrix(f, d.rows(), 0), Matrix(f, 0, 0), Matrix(f, 0, d.cols()));
}

inline BoxMorphism box_of(const LinRel& d) {
    const Field f = d.field();
    return box_new(d, rel_zeromap(f, d.cod()), rel_identity(f, 0), rel_delmap(f, d.dom()));
}

// g after f, by the block formula: d'' = d'd, c'' = [d'c  c'],
// a'' = [[a,0],[a'b'ca,a']], b'' = [b; b'd] (unprimed = f, applied first).
inline BoxMorphism box_compose(const BoxMorphism& g, const BoxMorphism& f) {
    if (f.cod() != g.dom()) throw DimensionMismatch("box composition boundary");
    if (f.relational != g.relational) throw DimensionMismatch("mixed box variants");
    if (!f.relational) {
        const Matrix &d = *f.md, &c = *f.mc, &a = *f.ma, &b = *f.mb;
        const Matrix &d2 = *g.md, &c2 = *g.mc, &a2 = *g.ma, &b2 = *g.mb;
        const Field k = d.field();
        Matrix dd = mat_mul(d2, d);
        Matrix cc = hstack(mat_mul(d2, c), c2);
        Matrix aa = vstack(
            hstack(a, Matrix::zero(k, a.rows(), a2.cols())),
            hstack(mat_mul(a2, mat_mul(b2, mat_mul(c, a))), a2));
        Matrix bb = vstack(b, mat_mul(b2, d));
        return box_new(dd, cc, aa, bb);
    }
    const LinRel &d = *f.rd, &c = *f.rc, &a = *f.ra, &b = *f.rb;
    const LinRel &d2 = *g.rd, &c2 = *g.rc, &a2 = *g.ra, &b2 = *g.rb;
    const Field k = d.field();
    LinRel dd = rel_compose(d, d2);
    LinRel cc = rel_hcat(rel_compose(c, d2), c2);
    LinRel zero_tl = rel_graph(Matrix::zero(k, a.cod(), a2.dom()));
    LinRel aa = rel_vcat(
        rel_hcat(a, zero_tl),
        rel_hcat(rel_compose(rel_compose(rel_compose(a, c), b2), a2), a2));
    LinRel bb = rel_vcat(b, rel_compose(d, b2));
    return box_new(dd, cc, aa, bb);
}

inline Matrix box_eval_matrix(const BoxMorphism& f) {
    return mat_add(*f.md, mat_mul(*f.mc, mat_mul(*f.ma, *f.mb)));
}
inline LinRel box_eval_rel(const BoxMorphism& f) {
    return rel_add(*f.rd, rel_compose(rel_compose(*f.rb, *f.ra), *f.rc));
}
inline Matrix box_feed_matrix(const BoxMorphism& f) { return *f.md; }
inline LinRel box_feed_rel(const BoxMorphism& f) { return *f.rd; }

// ---- stateful morphisms ------------------------------------------------

// A state-space system dx/dt = Ax + Bu, y = Cx + Du over Q or GF(p).
struct StatefulMorphism {
    size_t m = 0, n = 0, p = 0;
    Matrix A, B, C, D;

    bool operator==(const StatefulMorphism& o) const {
        return A == o.A && B == o.B && C == o.C && D == o.D;
    }
};

inline StatefulMorphism st_new(Matrix A, Matrix B, Matrix C, Matrix D) {
    size_t n = A.rows(), m = B.cols(), p = C.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != p || D.cols() != m)
        throw DimensionMismatch("state-space blocks disagree");
    if (A.field().kind == FieldKind::QS)
        throw FieldModeMismatch("stateful morphisms live over the base field");
    return {m, n, p, std::move(A), std::move(B), std::move(C), std::move(D)};
}

// g after f: state of the composite is the two state spaces stacked,
// with f's output feeding g's input.
inline StatefulMorphism st_compose(const StatefulMorphism& g, const StatefulMorphism& f) {
    if (f.p != g.m) throw DimensionMismatch("stateful composition boundary");
    const Field k = f.A.field();
    Matrix A = vstack(hstack(f.A, Matrix::zero(k, f.n, g.n)),
                      hstack(mat_mul(g.B, f.C), g.A));
    Matrix B = vstack(f.B, mat_mul(g.B, f.D));
    Matrix C = hstack(mat_mul(g.D, f.C), g.C);
    Matrix D = mat_mul(g.D, f.D);
    return st_new(std::move(A), std::move(B), std::move(C), std::move(D));
}

inline StatefulMorphism st_tensor(const StatefulMorphism& f, const StatefulMorphism& g) {
    return st_new(direct_sum(f.A, g.A), direct_sum(f.B, g.B), direct_sum(f.C, g.C),
                  direct_sum(f.D, g.D));
}

inline StatefulMorphism st_identity(const Field& f, size_t m) {
    return st_new(Matrix(f, 0, 0), Matrix(f, 0, m), Matrix(f, m, 0), Matrix::identity(f, m));
}

inline Matrix st_transfer(const StatefulMorphism& f) {
    if (f.A.field().kind != FieldKind::Q)
        throw FieldModeMismatch("transfer needs a field that embeds in the rational functions");
    return transfer_matrix(f.A, f.B, f.C, f.D);
}

inline Matrix ctrb_matrix(const StatefulMorphism& f) {
    Matrix M(f.A.field(), f.n, 0);
    Matrix pw = f.B;
    for (size_t i = 0; i < f.n; ++i) {
        M = hstack(M, pw);
        pw = mat_mul(f.A, pw);
    }
    return M;
}

inline Matrix obsv_matrix(const StatefulMorphism& f) {
    Matrix M(f.A.field(), 0, f.n);
    Matrix pw = f.C;
    for (size_t i = 0; i < f.n; ++i) {
        M = vstack(M, pw);
        pw = mat_mul(pw, f.A);
    }
    return M;
}

inline bool is_controllable(const StatefulMorphism& f) {
    return mat_rank(ctrb_matrix(f)) == f.n;
}
inline bool is_observable(const StatefulMorphism& f) {
    return mat_rank(obsv_matrix(f)) == f.n;
}

inline StatefulMorphism kalman_dual(const StatefulMorphism& f) {
    return st_new(f.A.transpose(), f.C.transpose(), f.B.transpose(), f.D.transpose());
}

// Stateful as a box over the rational functions: (D, C, (sI-A)^{-1}, B).
inline BoxMorphism st_to_box(const StatefulMorphism& f) {
    Field qs = Field::qs();
    Matrix sI = mat_scale(FieldValue::s_var(), Matrix::identity(qs, f.n));
    Matrix a = inverse(mat_sub(sI, f.A.to_qs()));
    return box_new(f.D.to_qs(), f.C.to_qs(), a, f.B.to_qs());
}

} // namespace sflow
