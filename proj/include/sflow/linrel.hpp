#pragma once

#include <optional>
#include <string>

#include "sflow/matrix.hpp"

namespace sflow {

// A linear relation k^m -/-> k^n: a subspace of k^(m+n) stored as the RREF
// basis of its span (zero rows dropped). Coordinates 0..m-1 are the domain,
// m..m+n-1 the codomain. Canonical: equality of relations is equality of
// (m, n, basis).
class LinRel {
public:
    LinRel() : m_(0), n_(0), basis_(Field::q(), 0, 0) {}

    static LinRel from_span(size_t m, size_t n, const Matrix& rows) {
        if (rows.cols() != m + n)
            throw DimensionMismatch("span rows have " + std::to_string(rows.cols()) +
                                    " columns, expected " + std::to_string(m + n));
        RrefResult r = rref(rows);
        Matrix basis(rows.field(), r.rank, m + n);
        for (size_t i = 0; i < r.rank; ++i)
            for (size_t j = 0; j < m + n; ++j) basis.at(i, j) = r.R.at(i, j);
        return LinRel(m, n, std::move(basis));
    }

    static LinRel from_constraints(size_t m, size_t n, const Matrix& C) {
        if (C.cols() != m + n)
            throw DimensionMismatch("constraint rows have " + std::to_string(C.cols()) +
                                    " columns, expected " + std::to_string(m + n));
        return from_span(m, n, nullspace(C));
    }

    size_t dom() const { return m_; }
    size_t cod() const { return n_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }

    // Constraint matrix C with this = {x : Cx = 0}.
    Matrix constraints() const { return nullspace(basis_); }

    bool operator==(const LinRel& o) const {
        return m_ == o.m_ && n_ == o.n_ && basis_ == o.basis_;
    }
    bool operator!=(const LinRel& o) const { return !(*this == o); }

    std::string str() const {
        return "LinRel " + std::to_string(m_) + "->" + std::to_string(n_) + " dim " +
               std::to_string(dim()) + "\n" + basis_.str();
    }

private:
    LinRel(size_t m, size_t n, Matrix basis) : m_(m), n_(n), basis_(std::move(basis)) {}
    size_t m_, n_;
    Matrix basis_;
};

inline LinRel rel_identity(const Field& f, size_t n) {
    Matrix rows(f, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        rows.at(i, i) = FieldValue::one(f);
        rows.at(i, n + i) = FieldValue::one(f);
    }
    return LinRel::from_span(n, n, rows);
}

// Graph of the linear map with matrix M (rows x cols = n x m, mapping k^m -> k^n).
inline LinRel rel_graph(const Matrix& M) {
    size_t m = M.cols(), n = M.rows();
    Matrix rows = hstack(Matrix::identity(M.field(), m), M.transpose());
    return LinRel::from_span(m, n, rows);
}

// Apply f then g.
inline LinRel rel_compose(const LinRel& f, const LinRel& g) {
    if (!(f.field() == g.field())) throw FieldMismatch("compose over different fields");
    if (f.cod() != g.dom())
        throw DimensionMismatch("compose: cod " + std::to_string(f.cod()) + " vs dom " +
                                std::to_string(g.dom()));
    const Field& k = f.field();
    size_t m = f.dom(), n = f.cod(), p = g.cod();
    // Constraints of f on coords 0..m+n-1 and of g on coords m..m+n+p-1 cut
    // out the composable triples (u, v, w); projecting away v gives the span
    // of the composite.
    Matrix Cf = f.constraints();
    Matrix Cg = g.constraints();
    Matrix C(k, Cf.rows() + Cg.rows(), m + n + p);
    for (size_t i = 0; i < Cf.rows(); ++i)
        for (size_t j = 0; j < m + n; ++j) C.at(i, j) = Cf.at(i, j);
    for (size_t i = 0; i < Cg.rows(); ++i)
        for (size_t j = 0; j < n + p; ++j) C.at(Cf.rows() + i, m + j) = Cg.at(i, j);
    Matrix sol = nullspace(C);
    Matrix proj(k, sol.rows(), m + p);
    for (size_t i = 0; i < sol.rows(); ++i) {
        for (size_t j = 0; j < m; ++j) proj.at(i, j) = sol.at(i, j);
        for (size_t j = 0; j < p; ++j) proj.at(i, m + j) = sol.at(i, m + n + j);
    }
    return LinRel::from_span(m, p, proj);
}

inline LinRel rel_direct_sum(const LinRel& f, const LinRel& g) {
    if (!(f.field() == g.field())) throw FieldMismatch("direct sum over different fields");
    const Field& k = f.field();
    size_t m = f.dom(), n = f.cod(), m2 = g.dom(), n2 = g.cod();
    Matrix rows(k, f.dim() + g.dim(), m + m2 + n + n2);
    for (size_t i = 0; i < f.dim(); ++i) {
        for (size_t j = 0; j < m; ++j) rows.at(i, j) = f.basis().at(i, j);
        for (size_t j = 0; j < n; ++j) rows.at(i, m + m2 + j) = f.basis().at(i, m + j);
    }
    for (size_t i = 0; i < g.dim(); ++i) {
        for (size_t j = 0; j < m2; ++j) rows.at(f.dim() + i, m + j) = g.basis().at(i, j);
        for (size_t j = 0; j < n2; ++j)
            rows.at(f.dim() + i, m + m2 + n + j) = g.basis().at(i, m2 + j);
    }
    return LinRel::from_span(m + m2, n + n2, rows);
}

// L-dagger = {(v,u) : (u,v) in L}.
inline LinRel rel_dagger(const LinRel& f) {
    size_t m = f.dom(), n = f.cod();
    Matrix rows(f.field(), f.dim(), m + n);
    for (size_t i = 0; i < f.dim(); ++i) {
        for (size_t j = 0; j < n; ++j) rows.at(i, j) = f.basis().at(i, m + j);
        for (size_t j = 0; j < m; ++j) rows.at(i, n + j) = f.basis().at(i, j);
    }
    return LinRel::from_span(n, m, rows);
}

// Generator relations: add {(x,y,x+y)}, zero {(0)}, dup {(x,x,x)}, del {(x)},
// scale_c {(x,cx)}, cup {(x,x)} 2->0, cap 0->2 {(x,x)}, id, swap.
inline LinRel rel_generator(const Field& k, const std::string& name,
                            std::optional<FieldValue> c = std::nullopt) {
    auto one = FieldValue::one(k);
    if (name == "add") {
        Matrix rows(k, 2, 3);
        rows.at(0, 0) = one, rows.at(0, 2) = one;
        rows.at(1, 1) = one, rows.at(1, 2) = one;
        return LinRel::from_span(2, 1, rows);
    }
    if (name == "zero") return LinRel::from_span(0, 1, Matrix(k, 0, 1));
    if (name == "dup") {
        Matrix rows(k, 1, 3);
        rows.at(0, 0) = one, rows.at(0, 1) = one, rows.at(0, 2) = one;
        return LinRel::from_span(1, 2, rows);
    }
    if (name == "del") {
        Matrix rows(k, 1, 1);
        rows.at(0, 0) = one;
        return LinRel::from_span(1, 0, rows);
    }
    if (name == "scale") {
        if (!c) throw UnknownGenerator("scale without a constant");
        Matrix rows(k, 1, 2);
        rows.at(0, 0) = one, rows.at(0, 1) = *c;
        return LinRel::from_span(1, 1, rows);
    }
    if (name == "cup") {
        Matrix rows(k, 1, 2);
        rows.at(0, 0) = one, rows.at(0, 1) = one;
        return LinRel::from_span(2, 0, rows);
    }
    if (name == "cap") {
        Matrix rows(k, 1, 2);
        rows.at(0, 0) = one, rows.at(0, 1) = one;
        return LinRel::from_span(0, 2, rows);
    }
    if (name == "id") return rel_identity(k, 1);
    if (name == "swap") {
        Matrix M(k, 2, 2);
        M.at(0, 1) = one, M.at(1, 0) = one;
        return rel_graph(M);
    }
    throw UnknownGenerator(name);
}

namespace detail {
// Rank of the projection of the basis onto columns [lo, hi).
inline size_t proj_rank(const LinRel& f, size_t lo, size_t hi) {
    Matrix sub(f.field(), f.dim(), hi - lo);
    for (size_t i = 0; i < f.dim(); ++i)
        for (size_t j = lo; j < hi; ++j) sub.at(i, j - lo) = f.basis().at(i, j);
    return mat_rank(sub);
}
} // namespace detail

inline size_t rel_dom_rank(const LinRel& f) { return detail::proj_rank(f, 0, f.dom()); }
inline size_t rel_cod_rank(const LinRel& f) { return detail::proj_rank(f, f.dom(), f.dom() + f.cod()); }

// Total single-valued relations, i.e. graphs of (everywhere-defined) linear
// maps. In RREF that is exactly: m rows, all pivots inside the domain block.
inline bool rel_is_map(const LinRel& f) {
    if (f.dim() != f.dom()) return false;
    for (size_t i = 0; i < f.dim(); ++i) {
        // pivot of row i = first nonzero column; must be < dom
        size_t j = 0;
        while (j < f.dom() + f.cod() && f.basis().at(i, j).is_zero()) ++j;
        if (j >= f.dom()) return false;
    }
    return true;
}

inline Matrix rel_matrix(const LinRel& f) {
    if (!rel_is_map(f)) throw NotAMap(f.str());
    // basis is [I_m | X] in RREF; the map's matrix is X^T.
    Matrix X(f.field(), f.dom(), f.cod());
    for (size_t i = 0; i < f.dom(); ++i)
        for (size_t j = 0; j < f.cod(); ++j) X.at(i, j) = f.basis().at(i, f.dom() + j);
    return X.transpose();
}

// Epi/mono, rank route: phrased so that it coincides with the diagrammatic
// FF-dagger / F-dagger-F tests on arbitrary linear relations, not just maps.
// epi: codomain projection surjective and the relation single-valued;
// mono: total and injective.
inline bool rel_is_epi_rank(const LinRel& f) {
    return rel_cod_rank(f) == f.cod() && rel_dom_rank(f) == f.dim();
}
inline bool rel_is_mono_rank(const LinRel& f) {
    return rel_dom_rank(f) == f.dom() && rel_cod_rank(f) == f.dim();
}
inline bool rel_is_epi_diagram(const LinRel& f) {
    return rel_compose(rel_dagger(f), f) == rel_identity(f.field(), f.cod());
}
inline bool rel_is_mono_diagram(const LinRel& f) {
    return rel_compose(f, rel_dagger(f)) == rel_identity(f.field(), f.dom());
}
inline bool rel_is_epi(const LinRel& f) { return rel_is_epi_rank(f); }
inline bool rel_is_mono(const LinRel& f) { return rel_is_mono_rank(f); }

// x + y := m_B . (x (+) y) . Delta_A  (duplicate the input, run both, add).
inline LinRel rel_add(const LinRel& x, const LinRel& y) {
    if (x.dom() != y.dom() || x.cod() != y.cod())
        throw DimensionMismatch("rel_add on different shapes");
    const Field& k = x.field();
    size_t a = x.dom(), b = x.cod();
    Matrix dup = vstack(Matrix::identity(k, a), Matrix::identity(k, a)); // k^a -> k^2a
    Matrix add = hstack(Matrix::identity(k, b), Matrix::identity(k, b)); // k^2b -> k^b
    return rel_compose(rel_compose(rel_graph(dup), rel_direct_sum(x, y)), rel_graph(add));
}

// The relation k^m -/-> k^0 that is total (deletion of m wires).
inline LinRel rel_del_n(const Field& k, size_t m) {
    return LinRel::from_span(m, 0, Matrix::identity(k, m));
}
// The relation k^0 -/-> k^n hitting only 0 (n zero generators).
inline LinRel rel_zero_n(const Field& k, size_t n) {
    return LinRel::from_span(0, n, Matrix(k, 0, n));
}

} // namespace sflow
