#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sflow/blackbox.hpp"
#include "sflow/synth.hpp"

using namespace sflow;

namespace {

Matrix random_matrix(const Field& f, size_t rows, size_t cols, std::mt19937& rng, int lo = -3,
                     int hi = 3) {
    Matrix m(f, rows, cols);
    std::uniform_int_distribution<int> d(lo, hi);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = FieldValue::from_int(f, d(rng));
    return m;
}

} // namespace

TEST_CASE("permutation networks") {
    Field q = Field::q();
    CHECK(term_eq(perm_term({0, 1, 2}), term_id(3)));
    CHECK(term_eq(perm_term({1, 0}), term_swap()));
    std::mt19937 rng(61);
    for (int t = 0; t < 30; ++t) {
        size_t n = 1 + t % 5;
        std::vector<size_t> dest(n);
        for (size_t i = 0; i < n; ++i) dest[i] = i;
        std::shuffle(dest.begin(), dest.end(), rng);
        // permutation matrix: output dest[i] takes input i
        Matrix P = Matrix::zero(q, n, n);
        for (size_t i = 0; i < n; ++i) P.at(dest[i], i) = FieldValue::one(q);
        CHECK(blackbox(perm_term(dest), q, IntegratorMode::Zeroed) == rel_graph(P));
    }
}

TEST_CASE("fan-out and fan-in trees") {
    Field q = Field::q();
    CHECK(term_eq(dup_tree(0), term_parse("del", q)));
    CHECK(term_eq(add_tree(0), term_parse("zero", q)));
    for (size_t n = 1; n <= 4; ++n) {
        LinRel dr = blackbox(dup_tree(n), q, IntegratorMode::Zeroed);
        Matrix ones(q, n, 1);
        for (size_t i = 0; i < n; ++i) ones.at(i, 0) = FieldValue::one(q);
        CHECK(dr == rel_graph(ones));
        CHECK(blackbox(add_tree(n), q, IntegratorMode::Zeroed) ==
              rel_graph(ones.transpose()));
    }
}

TEST_CASE("map synthesis black-boxes to the matrix graph") {
    Field q = Field::q();
    Matrix ex = Matrix::from_ints(q, 2, 3, {3, 7, 2, 9, 1, 0});
    CHECK(blackbox(synth_map_diagram(ex), q, IntegratorMode::Zeroed) == rel_graph(ex));
    CHECK(term_eq(synth_map_diagram(Matrix(q, 0, 3)),
                  term_parse("del * del * del", q)));
    CHECK(blackbox(synth_map_diagram(Matrix::from_ints(q, 1, 1, {5})), q,
                   IntegratorMode::Zeroed) ==
          rel_generator(q, "scale", FieldValue::from_int(q, 5)));

    std::mt19937 rng(67);
    for (int t = 0; t < 60; ++t) {
        Field f = (t % 3 == 0) ? Field::q() : Field::gf(5);
        Matrix M = random_matrix(f, t % 4, (t + 1) % 4, rng);
        CHECK(blackbox(synth_map_diagram(M), f, IntegratorMode::Zeroed) == rel_graph(M));
    }
}

TEST_CASE("relation synthesis round-trips") {
    Field q = Field::q();
    CHECK(blackbox(synth_rel_diagram(rel_generator(q, "cap")), q, IntegratorMode::Zeroed) ==
          rel_generator(q, "cap"));
    CHECK(blackbox(synth_rel_diagram(rel_identity(q, 1)), q, IntegratorMode::Zeroed) ==
          rel_identity(q, 1));

    std::mt19937 rng(71);
    Field f5 = Field::gf(5);
    std::uniform_int_distribution<size_t> dimd(0, 3);
    for (int t = 0; t < 200; ++t) {
        size_t m = dimd(rng), n = dimd(rng);
        std::uniform_int_distribution<size_t> dd(0, m + n);
        Matrix rows = random_matrix(f5, dd(rng), m + n, rng, 0, 4);
        LinRel r = LinRel::from_span(m, n, rows);
        CHECK(blackbox(synth_rel_diagram(r), f5, IntegratorMode::Zeroed) == r);
    }
}

TEST_CASE("state-form diagrams realize their transfer matrix") {
    Field q = Field::q();
    Field qs = Field::qs();

    // pure integrator
    Matrix A0 = Matrix::from_ints(q, 1, 1, {0}), one = Matrix::from_ints(q, 1, 1, {1}),
           zr = Matrix::from_ints(q, 1, 1, {0});
    TermPtr t = state_form_diagram(A0, one, one, zr);
    CHECK(blackbox(t, qs, IntegratorMode::Symbolic) ==
          rel_generator(qs, "scale", FieldValue::s_var().inv()));

    // stateless system collapses to the feedthrough block
    Matrix D = Matrix::from_ints(q, 2, 2, {1, 2, 3, 4});
    Matrix empty(q, 0, 0), B0(q, 0, 2), C0(q, 2, 0);
    CHECK(blackbox(state_form_diagram(empty, B0, C0, D), q, IntegratorMode::Zeroed) ==
          rel_graph(D));

    CHECK_THROWS_AS(state_form_diagram(A0, Matrix(q, 2, 1), C0, D), DimensionMismatch);

    std::mt19937 rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        size_t n = trial % 3, m = 1 + trial % 2, p = 1 + (trial + 1) % 2;
        Matrix A = random_matrix(q, n, n, rng), B = random_matrix(q, n, m, rng),
               C = random_matrix(q, p, n, rng), Dm = random_matrix(q, p, m, rng);
        TermPtr d = state_form_diagram(A, B, C, Dm);
        CHECK(blackbox(d, qs, IntegratorMode::Symbolic) ==
              rel_graph(transfer_matrix(A, B, C, Dm)));
        CHECK(to_graph(d).int_order.size() == n);
        // zeroing the integrators keeps only the feedthrough
        CHECK(blackbox(d, q, IntegratorMode::Zeroed) == rel_graph(Dm));
    }
}

TEST_CASE("opened state-form diagram encodes the state equations") {
    Field q = Field::q();
    std::mt19937 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        size_t n = 1 + trial % 2;
        Matrix A = random_matrix(q, n, n, rng), B = random_matrix(q, n, 1, rng),
               C = random_matrix(q, 1, n, rng), D = random_matrix(q, 1, 1, rng);
        auto [R, cnt] = open_blackbox(state_form_diagram(A, B, C, D), q);
        CHECK(cnt == n);
        CHECK(R.dom() == 1 + n);
        CHECK(R.cod() == 1 + n);
        // coordinates (u, x | y, xdot): y = Cx + Du and xdot = Ax + Bu
        Matrix Cons(q, n + 1, 2 * (n + 1));
        // row 0: y - Cx - Du = 0; rows 1..n: xdot_i - (Ax + Bu)_i = 0
        for (size_t j = 0; j < n; ++j) Cons.at(0, 1 + j) = -C.at(0, j);
        Cons.at(0, 0) = -D.at(0, 0);
        Cons.at(0, n + 1) = FieldValue::one(q);
        for (size_t i = 0; i < n; ++i) {
            Cons.at(1 + i, 0) = -B.at(i, 0);
            for (size_t j = 0; j < n; ++j) Cons.at(1 + i, 1 + j) = -A.at(i, j);
            Cons.at(1 + i, n + 2 + i) = FieldValue::one(q);
        }
        CHECK(R == LinRel::from_constraints(1 + n, 1 + n, Cons));
    }
}
