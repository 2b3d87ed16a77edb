#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sflow/statebox.hpp"

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

BoxMorphism random_box(const Field& f, size_t m, size_t p, std::mt19937& rng) {
    std::uniform_int_distribution<size_t> dd(0, 2);
    size_t S = dd(rng), T = dd(rng);
    return box_new(random_matrix(f, p, m, rng), random_matrix(f, p, T, rng),
                   random_matrix(f, T, S, rng), random_matrix(f, S, m, rng));
}

BoxMorphism to_rel_box(const BoxMorphism& f) {
    return box_new(rel_graph(*f.md), rel_graph(*f.mc), rel_graph(*f.ma), rel_graph(*f.mb));
}

StatefulMorphism random_st(const Field& f, size_t m, size_t n, size_t p, std::mt19937& rng) {
    return st_new(random_matrix(f, n, n, rng), random_matrix(f, n, m, rng),
                  random_matrix(f, p, n, rng), random_matrix(f, p, m, rng));
}

} // namespace

TEST_CASE("homomorphism predicates") {
    Field q = Field::q();
    std::mt19937 rng(83);
    for (int t = 0; t < 20; ++t) {
        HomPredicates h = hom_predicates(rel_graph(random_matrix(q, t % 3, (t + 1) % 3, rng)));
        CHECK(h.monoid);
        CHECK(h.comonoid);
        CHECK(h.bimonoid);
    }
    // cup is single-valued but not total: pushes through dup, not add
    HomPredicates cup = hom_predicates(rel_generator(q, "cup"));
    CHECK(cup.comonoid);
    CHECK(!cup.monoid);
    CHECK(!cup.bimonoid);
    // the everything-relation is total but not single-valued
    HomPredicates full =
        hom_predicates(rel_compose(rel_delmap(q, 1), rel_dagger(rel_delmap(q, 1))));
    CHECK(full.monoid);
    CHECK(!full.comonoid);
    // the adjoint of the zero map is neither total nor single-valued
    HomPredicates cozero =
        hom_predicates(rel_dagger(rel_graph(Matrix::from_ints(q, 1, 1, {0}))));
    CHECK(!cozero.comonoid);
    CHECK(hom_predicates(rel_generator(q, "cap")).monoid);
    // mult law is exactly totality; comult law exactly single-valuedness
    std::mt19937 rng2(85);
    for (int t = 0; t < 60; ++t) {
        Field f5 = Field::gf(5);
        std::uniform_int_distribution<size_t> dimd(0, 2);
        size_t m = dimd(rng2), n = dimd(rng2);
        std::uniform_int_distribution<size_t> dd(0, m + n);
        Matrix rows = random_matrix(f5, dd(rng2), m + n, rng2, 0, 4);
        LinRel r = LinRel::from_span(m, n, rows);
        HomPredicates h = hom_predicates(r);
        CHECK(h.monoid == (rel_dom_rank(r) == r.dom()));
        CHECK(h.comonoid == (rel_dom_rank(r) == r.dim()));
        CHECK(h.bimonoid == rel_is_map(r));
    }
}

TEST_CASE("matrix boxes") {
    Field q = Field::q();
    std::mt19937 rng(89);
    for (int t = 0; t < 100; ++t) {
        Matrix d1 = random_matrix(q, 2, 3, rng), d2 = random_matrix(q, 1, 2, rng);
        CHECK(box_eval_matrix(box_compose(box_of(d2), box_of(d1))) == mat_mul(d2, d1));

        BoxMorphism f = random_box(q, 3, 2, rng), g = random_box(q, 2, 1, rng);
        // eval = d + cab by independent arithmetic
        CHECK(box_eval_matrix(f) ==
              mat_add(*f.md, mat_mul(*f.mc, mat_mul(*f.ma, *f.mb))));
        CHECK(box_eval_matrix(box_compose(g, f)) ==
              mat_mul(box_eval_matrix(g), box_eval_matrix(f)));
        CHECK(box_feed_matrix(box_compose(g, f)) ==
              mat_mul(box_feed_matrix(g), box_feed_matrix(f)));

        // identity box is a two-sided unit
        BoxMorphism id3 = box_of(Matrix::identity(q, 3)), id2 = box_of(Matrix::identity(q, 2));
        CHECK(box_compose(f, id3) == f);
        CHECK(box_compose(id2, f) == f);

        // associativity holds on the nose for representatives
        BoxMorphism h = random_box(q, 1, 2, rng);
        CHECK(box_compose(h, box_compose(g, f)) == box_compose(box_compose(h, g), f));
    }
}

TEST_CASE("relation boxes") {
    Field q = Field::q();
    CHECK_THROWS_AS(box_new(rel_generator(q, "cup"), rel_zeromap(q, 0), rel_identity(q, 0),
                            rel_delmap(q, 2)),
                    HomViolation);
    std::mt19937 rng(97);
    for (int t = 0; t < 60; ++t) {
        BoxMorphism f = random_box(q, 2, 2, rng), g = random_box(q, 2, 2, rng);
        BoxMorphism rf = to_rel_box(f), rg = to_rel_box(g);
        CHECK(box_eval_rel(rf) == rel_graph(box_eval_matrix(f)));
        BoxMorphism comp = box_compose(rg, rf);
        CHECK(box_eval_rel(comp) == rel_graph(box_eval_matrix(box_compose(g, f))));
        CHECK(box_feed_rel(comp) == rel_graph(box_feed_matrix(box_compose(g, f))));
        // associativity up to evaluation
        BoxMorphism rh = to_rel_box(random_box(q, 2, 1, rng));
        CHECK(box_eval_rel(box_compose(rh, box_compose(rg, rf))) ==
              box_eval_rel(box_compose(box_compose(rh, rg), rf)));
    }
}

TEST_CASE("stateful composition blocks") {
    Field q = Field::q();
    StatefulMorphism intg = st_new(
        Matrix::from_ints(q, 1, 1, {0}), Matrix::from_ints(q, 1, 1, {1}),
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {0}));
    StatefulMorphism twice = st_compose(intg, intg);
    CHECK(twice.A == Matrix::from_ints(q, 2, 2, {0, 0, 1, 0}));
    CHECK(twice.B == Matrix::from_ints(q, 2, 1, {1, 0}));
    CHECK(twice.C == Matrix::from_ints(q, 1, 2, {0, 1}));
    CHECK(twice.D == Matrix::from_ints(q, 1, 1, {0}));
    Matrix tf = st_transfer(twice);
    CHECK(tf.at(0, 0) == parse_scalar(Field::qs(), "1/s^2"));

    // stateless composition is plain matrix multiplication
    std::mt19937 rng(101);
    Matrix d1 = random_matrix(q, 2, 3, rng), d2 = random_matrix(q, 2, 2, rng);
    StatefulMorphism s1 = st_new(Matrix(q, 0, 0), Matrix(q, 0, 3), Matrix(q, 2, 0), d1);
    StatefulMorphism s2 = st_new(Matrix(q, 0, 0), Matrix(q, 0, 2), Matrix(q, 2, 0), d2);
    CHECK(st_compose(s2, s1).D == mat_mul(d2, d1));

    StatefulMorphism pair = st_tensor(intg, intg);
    CHECK(pair.n == 2);
    CHECK(pair.A == Matrix::zero(q, 2, 2));
    CHECK(pair.B == Matrix::identity(q, 2));

    CHECK_THROWS_AS(st_new(Matrix(q, 1, 2), Matrix(q, 1, 1), Matrix(q, 1, 1),
                           Matrix(q, 1, 1)),
                    DimensionMismatch);
}

TEST_CASE("transfer matrices") {
    Field q = Field::q();
    Field qs = Field::qs();
    StatefulMorphism intg = st_new(
        Matrix::from_ints(q, 1, 1, {0}), Matrix::from_ints(q, 1, 1, {1}),
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {0}));
    CHECK(st_transfer(intg).at(0, 0) == parse_scalar(qs, "1/s"));

    // two different one-state systems with identity transfer
    StatefulMorphism obs = st_new(
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {0}),
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {1}));
    StatefulMorphism ctr = st_new(
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {1}),
        Matrix::from_ints(q, 1, 1, {0}), Matrix::from_ints(q, 1, 1, {1}));
    CHECK(st_transfer(obs) == Matrix::identity(qs, 1));
    CHECK(st_transfer(ctr) == Matrix::identity(qs, 1));

    std::mt19937 rng(103);
    for (int t = 0; t < 100; ++t) {
        StatefulMorphism f = random_st(q, 2, t % 4, 2, rng);
        StatefulMorphism g = random_st(q, 2, (t + 1) % 4, 1, rng);
        CHECK(st_transfer(st_compose(g, f)) == mat_mul(st_transfer(g), st_transfer(f)));
    }

    // invariance under change of state basis by a permutation
    for (int t = 0; t < 20; ++t) {
        size_t n = 3;
        StatefulMorphism f = random_st(q, 2, n, 2, rng);
        std::vector<size_t> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix P = Matrix::zero(q, n, n);
        for (size_t i = 0; i < n; ++i) P.at(perm[i], i) = FieldValue::one(q);
        StatefulMorphism h = st_new(mat_mul(P, mat_mul(f.A, P.transpose())),
                                    mat_mul(P, f.B), mat_mul(f.C, P.transpose()), f.D);
        CHECK(st_transfer(h) == st_transfer(f));
    }
}

TEST_CASE("controllability and observability") {
    Field q = Field::q();
    StatefulMorphism chain = st_new(Matrix::from_ints(q, 2, 2, {0, 1, 0, 0}),
                                    Matrix::from_ints(q, 2, 1, {0, 1}),
                                    Matrix::from_ints(q, 1, 2, {1, 0}),
                                    Matrix::from_ints(q, 1, 1, {0}));
    CHECK(ctrb_matrix(chain) == Matrix::from_ints(q, 2, 2, {0, 1, 1, 0}));
    CHECK(is_controllable(chain));
    CHECK(is_observable(chain));

    StatefulMorphism obs = st_new(
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {0}),
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {1}));
    CHECK(is_observable(obs));
    CHECK(!is_controllable(obs));
    StatefulMorphism ctr = st_new(
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {1}),
        Matrix::from_ints(q, 1, 1, {0}), Matrix::from_ints(q, 1, 1, {1}));
    CHECK(is_controllable(ctr));
    CHECK(!is_observable(ctr));
    CHECK(kalman_dual(obs) == ctr);

    // empty state is vacuously both
    StatefulMorphism d_only = st_new(Matrix(q, 0, 0), Matrix(q, 0, 1), Matrix(q, 1, 0),
                                     Matrix::from_ints(q, 1, 1, {5}));
    CHECK(is_controllable(d_only));
    CHECK(is_observable(d_only));

    StatefulMorphism intg = st_new(
        Matrix::from_ints(q, 1, 1, {0}), Matrix::from_ints(q, 1, 1, {1}),
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {0}));
    CHECK(kalman_dual(intg) == intg);

    std::mt19937 rng(107);
    for (int t = 0; t < 100; ++t) {
        Field f = (t % 2 == 0) ? Field::q() : Field::gf(5);
        StatefulMorphism s = random_st(f, 1 + t % 2, t % 4, 1 + (t + 1) % 2, rng);
        // rank test vs the purely relational test
        CHECK(is_controllable(s) == rel_is_epi(rel_graph(ctrb_matrix(s))));
        CHECK(is_observable(s) == rel_is_mono(rel_graph(obsv_matrix(s))));
        // duality swaps the verdicts
        CHECK(is_controllable(s) == is_observable(kalman_dual(s)));
        CHECK(is_observable(s) == is_controllable(kalman_dual(s)));
    }
}

TEST_CASE("stateful to box") {
    Field q = Field::q();
    Field qs = Field::qs();
    StatefulMorphism intg = st_new(
        Matrix::from_ints(q, 1, 1, {0}), Matrix::from_ints(q, 1, 1, {1}),
        Matrix::from_ints(q, 1, 1, {1}), Matrix::from_ints(q, 1, 1, {0}));
    BoxMorphism bi = st_to_box(intg);
    CHECK(bi.ma->at(0, 0) == parse_scalar(qs, "1/s"));
    CHECK(box_feed_matrix(bi) == Matrix::zero(qs, 1, 1));

    std::mt19937 rng(109);
    for (int t = 0; t < 50; ++t) {
        StatefulMorphism f = random_st(q, 2, t % 4, 2, rng);
        CHECK(box_eval_matrix(st_to_box(f)) == st_transfer(f));
        CHECK(box_feed_matrix(st_to_box(f)) == f.D.to_qs());
        StatefulMorphism g = random_st(q, 2, (t + 1) % 3, 1, rng);
        CHECK(box_eval_matrix(box_compose(st_to_box(g), st_to_box(f))) ==
              st_transfer(st_compose(g, f)));
    }
}
