#pragma once

#include <vector>

#include "sflow/matrix.hpp"
#include "sflow/term.hpp"

namespace sflow {

// Wiring permutation as a network of adjacent swaps: output position
// dest[i] receives input i. Identity dest gives id[n].
inline TermPtr perm_term(const std::vector<size_t>& dest) {
    size_t n = dest.size();
    std::vector<size_t> cur(n);
    for (size_t i = 0; i < n; ++i) cur[i] = i;
    TermPtr t = term_id(n);
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t p = 0; p + 1 < n; ++p) {
            // bubble: swap neighbours headed past each other
            if (dest[cur[p]] > dest[cur[p + 1]]) {
                std::swap(cur[p], cur[p + 1]);
                TermPtr layer = term_tensor(
                    term_id(p), term_tensor(term_swap(), term_id(n - p - 2)));
                t = term_compose(t, layer);
                moved = true;
            }
        }
    }
    return normalize(t);
}

// 1 -> n fan-out of duplications (n = 0 is deletion).
inline TermPtr dup_tree(size_t n) {
    if (n == 0) return term_gen(GenLabel(GenKind::Del));
    if (n == 1) return term_id(1);
    return term_compose(term_gen(GenLabel(GenKind::Dup)),
                        term_tensor(term_id(1), dup_tree(n - 1)));
}

// m -> 1 fan-in of additions (m = 0 is the zero constant).
inline TermPtr add_tree(size_t m) {
    if (m == 0) return term_gen(GenLabel(GenKind::Zero));
    if (m == 1) return term_id(1);
    return term_compose(term_tensor(term_id(1), add_tree(m - 1)),
                        term_gen(GenLabel(GenKind::Add)));
}

inline TermPtr tensor_pow(const TermPtr& t, size_t n) {
    TermPtr out = term_id(0);
    for (size_t i = 0; i < n; ++i) out = term_tensor(out, t);
    return out;
}

// Standard form of a linear map: fan each input out, scale every copy by
// the matrix entry, route copies to their row, add each row up.
// M is n x m and represents a map k^m -> k^n.
inline TermPtr synth_map_diagram(const Matrix& M) {
    size_t n = M.rows(), m = M.cols();
    if (m == 0) return normalize(tensor_pow(term_gen(GenLabel(GenKind::Zero)), n));
    TermPtr fan = term_id(0);
    for (size_t i = 0; i < m; ++i) {
        TermPtr scales = term_id(0);
        for (size_t j = 0; j < n; ++j)
            scales = term_tensor(scales, term_scale(M.at(j, i)));
        fan = term_tensor(fan, term_compose(dup_tree(n), scales));
    }
    if (n == 0) return normalize(fan); // m deletions
    // copy (i,j) sits at i*n+j; row j wants it at j*m+i
    std::vector<size_t> dest(m * n);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) dest[i * n + j] = j * m + i;
    TermPtr rows = term_id(0);
    for (size_t j = 0; j < n; ++j) rows = term_tensor(rows, add_tree(m));
    return normalize(term_compose(term_compose(fan, perm_term(dest)), rows));
}

// Prestandard form of a linear relation: pair each output with a cap so it
// can feed the constraint block, then kill every constraint row with a
// zero adjoint.
inline TermPtr synth_rel_diagram(const LinRel& R) {
    size_t m = R.dom(), n = R.cod();
    Matrix C = R.constraints(); // r x (m+n)
    size_t r = C.rows();
    // caps give pairs (c_i, d_i); send all c's left (into the constraints)
    // and all d's right (to the boundary)
    std::vector<size_t> dest(2 * n);
    for (size_t i = 0; i < n; ++i) {
        dest[2 * i] = i;
        dest[2 * i + 1] = n + i;
    }
    TermPtr caps = term_compose(tensor_pow(term_gen(GenLabel(GenKind::Cap)), n),
                                perm_term(dest));
    TermPtr block = synth_map_diagram(C); // (m+n) inputs -> r outputs
    TermPtr t = term_compose(
        term_tensor(term_id(m), caps),
        term_tensor(block, term_id(n)));
    t = term_compose(
        t, term_tensor(tensor_pow(term_gen(GenLabel(GenKind::Zero, true)), r), term_id(n)));
    return normalize(t);
}

// Diagram of dx/dt = Ax + Bu, y = Cx + Du: one feedback loop per state
// variable, closed with a cap/cup pair around an integrator.
inline TermPtr state_form_diagram(const Matrix& A, const Matrix& B, const Matrix& C,
                                  const Matrix& D) {
    size_t n = A.rows(), m = B.cols(), p = C.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != p || D.cols() != m)
        throw DimensionMismatch("state-space blocks disagree");
    Matrix blk = vstack(hstack(A, B), hstack(C, D)); // [x;u] -> [xdot;y]
    TermPtr g = synth_map_diagram(blk);

    // caps emit (a_i, b_i); route to [a(n), u(m), b(n)]
    std::vector<size_t> d1(2 * n + m);
    for (size_t i = 0; i < n; ++i) {
        d1[2 * i] = i;
        d1[2 * i + 1] = n + m + i;
    }
    for (size_t k = 0; k < m; ++k) d1[2 * n + k] = n + k;
    TermPtr t = term_compose(
        term_tensor(tensor_pow(term_gen(GenLabel(GenKind::Cap)), n), term_id(m)),
        perm_term(d1));
    // [a, u, b] -> [xdot(n), y(p), b(n)] -> integrate -> [x(n), y(p), b(n)]
    t = term_compose(t, term_tensor(g, term_id(n)));
    t = term_compose(
        t, term_tensor(tensor_pow(term_gen(GenLabel(GenKind::Int)), n), term_id(p + n)));
    // route to [y(p), x_1, b_1, ..., x_n, b_n] and close each loop
    std::vector<size_t> d2(n + p + n);
    for (size_t i = 0; i < n; ++i) d2[i] = p + 2 * i;
    for (size_t k = 0; k < p; ++k) d2[n + k] = k;
    for (size_t i = 0; i < n; ++i) d2[n + p + i] = p + 2 * i + 1;
    t = term_compose(t, perm_term(d2));
    t = term_compose(
        t, term_tensor(term_id(p), tensor_pow(term_gen(GenLabel(GenKind::Cup)), n)));
    return normalize(t);
}

// Transfer matrix D + C (sI - A)^{-1} B over the rational functions.
inline Matrix transfer_matrix(const Matrix& A, const Matrix& B, const Matrix& C,
                              const Matrix& D) {
    size_t n = A.rows();
    Field qs = Field::qs();
    Matrix sI = mat_scale(FieldValue::s_var(), Matrix::identity(qs, n));
    Matrix inv = inverse(mat_sub(sI, A.to_qs()));
    return mat_add(D.to_qs(), mat_mul(C.to_qs(), mat_mul(inv, B.to_qs())));
}

} // namespace sflow
