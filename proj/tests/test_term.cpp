#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sflow/blackbox.hpp"

using namespace sflow;

namespace {

TermPtr P(const std::string& s, const Field& f = Field::q()) { return term_parse(s, f); }

// Arity-directed random term with the given number of inputs. `map_only`
// restricts to the matrix-like generators (no cups, caps, ints or adjoints).
TermPtr random_term(const Field& f, size_t m, int depth, std::mt19937& rng,
                    bool map_only = false, bool allow_int = true) {
    std::uniform_int_distribution<int> coin(0, 3);
    if (depth <= 0 || coin(rng) == 0) {
        // a row of atoms whose input arities sum to m
        TermPtr row = term_id(0);
        size_t left = m;
        std::uniform_int_distribution<int> pick(0, 9);
        while (left > 0) {
            TermPtr atom;
            switch (pick(rng)) {
                case 0: atom = term_gen(GenLabel(GenKind::Dup)); break;
                case 1: atom = term_gen(GenLabel(GenKind::Del)); break;
                case 2:
                    atom = term_scale(FieldValue::from_int(
                        f, std::uniform_int_distribution<int>(-2, 3)(rng)));
                    break;
                case 3:
                    atom = left >= 2 ? TermPtr(term_gen(GenLabel(GenKind::Add))) : term_id(1);
                    break;
                case 4: atom = left >= 2 ? term_swap() : term_id(1); break;
                case 5:
                    atom = !map_only && left >= 2 ? TermPtr(term_gen(GenLabel(GenKind::Cup)))
                                                  : term_id(1);
                    break;
                case 6:
                    atom = !map_only ? TermPtr(term_gen(GenLabel(GenKind::Add, true)))
                                     : term_id(1);
                    break;
                case 7:
                    atom = !map_only && allow_int ? TermPtr(term_gen(GenLabel(GenKind::Int)))
                                                  : term_id(1);
                    break;
                case 8:
                    atom = !map_only ? TermPtr(term_gen(GenLabel(GenKind::Dup, true)))
                                     : term_id(1);
                    if (atom->dom() > left) atom = term_id(1);
                    break;
                default: atom = term_id(1);
            }
            left -= atom->dom();
            row = term_tensor(row, atom);
        }
        if (coin(rng) == 1)
            row = term_tensor(row, map_only ? TermPtr(term_gen(GenLabel(GenKind::Zero)))
                                            : term_gen(GenLabel(GenKind::Cap)));
        return row;
    }
    TermPtr a = random_term(f, m, depth - 1, rng, map_only, allow_int);
    TermPtr b = random_term(f, a->cod(), depth - 1, rng, map_only, allow_int);
    return term_compose(a, b);
}

} // namespace

TEST_CASE("parsing basics") {
    CHECK(P("add")->dom() == 2);
    CHECK(P("add")->cod() == 1);
    TermPtr zig = P("(cap * id[1]) ; (id[1] * cup)");
    CHECK(zig->dom() == 1);
    CHECK(zig->cod() == 1);
    CHECK(P("dup ; (scale(3) * scale(9))")->cod() == 2);
    CHECK(P("cup~")->gen->kind == GenKind::Cap);
    CHECK(P("add~~")->gen == GenLabel(GenKind::Add));
    CHECK(P("scale((s^2+1)/(s-2))", Field::qs())->gen->c->str() == "(s^2+1)/(s-2)");
    CHECK_THROWS_AS(P("frob"), SyntaxError);
    CHECK_THROWS_AS(P("dup ; add ;"), SyntaxError);
    CHECK_THROWS_AS(P("add ; swap"), ArityError);
    CHECK_THROWS_AS(P("scale(s)"), SyntaxError); // s needs the qs field
    try {
        P("add ; (zoom)");
        FAIL("no throw");
    } catch (const SyntaxError& e) {
        CHECK(e.pos == 7);
    }
}

TEST_CASE("print then parse is the identity") {
    std::mt19937 rng(3);
    Field q = Field::q();
    for (int t = 0; t < 100; ++t) {
        TermPtr a = random_term(q, t % 4, 4, rng);
        TermPtr b = P(term_print(a));
        CHECK(term_eq(a, b));
        CHECK(term_print(normalize(a)) == term_print(b));
    }
}

TEST_CASE("normalization identities") {
    CHECK(term_eq(P("(add ; dup) ; (del * id[1])"), P("add ; (dup ; (del * id[1]))")));
    CHECK(term_eq(P("add ; id[1]"), P("add")));
    CHECK(term_eq(P("id[2] ; add"), P("add")));
    CHECK(term_eq(P("add * id[0]"), P("add")));
    CHECK(term_eq(P("(add * zero) * dup"), P("add * (zero * dup)")));
    CHECK(term_eq(P("id[1] * id[1]"), P("id[2]")));
    CHECK(!term_eq(P("add"), P("swap ; add")));
}

TEST_CASE("graph compilation shapes") {
    PortGraph g = to_graph(P("id[2]"));
    CHECK(g.nodes.empty());
    CHECK(g.wire_count == 2);
    CHECK(g.boundary_in == std::vector<size_t>{0, 1});
    CHECK(g.boundary_out == std::vector<size_t>{0, 1});

    PortGraph zig = to_graph(P("(cap * id[1]) ; (id[1] * cup)"));
    CHECK(zig.nodes.size() == 2);
    CHECK(zig.wire_count == 3);

    PortGraph sw = to_graph(P("swap"));
    CHECK(sw.nodes.empty());
    CHECK(sw.boundary_in == std::vector<size_t>{0, 1});
    CHECK(sw.boundary_out == std::vector<size_t>{1, 0});

    PortGraph ii = to_graph(P("int ; int"));
    CHECK(ii.int_order.size() == 2);
}

TEST_CASE("black-box generator semantics") {
    Field q = Field::q();
    for (const char* name : {"add", "zero", "dup", "del", "cup", "cap", "swap"})
        CHECK(blackbox(P(name), q, IntegratorMode::Zeroed) == rel_generator(q, name));
    CHECK(blackbox(P("scale(7/2)"), q, IntegratorMode::Zeroed) ==
          rel_generator(q, "scale", FieldValue::rational(BigRat(7, 2))));
    CHECK(blackbox(P("(cap * id[1]) ; (id[1] * cup)"), q, IntegratorMode::Zeroed) ==
          rel_identity(q, 1));
    CHECK_THROWS_AS(blackbox(P("int"), q, IntegratorMode::Symbolic), FieldModeMismatch);
}

TEST_CASE("symbolic integrators") {
    Field qs = Field::qs();
    CHECK(blackbox(P("int"), qs, IntegratorMode::Symbolic) ==
          rel_generator(qs, "scale", FieldValue::s_var().inv()));
    // bending an integrator around with cap and cup differentiates
    TermPtr rot = P("(cap * id[1]) ; (id[1] * int * id[1]) ; (id[1] * cup)");
    CHECK(blackbox(rot, qs, IntegratorMode::Symbolic) ==
          rel_generator(qs, "scale", FieldValue::s_var()));
    CHECK(blackbox(P("int~"), qs, IntegratorMode::Symbolic) ==
          rel_generator(qs, "scale", FieldValue::s_var()));
}

TEST_CASE("cut integrators expose state ports") {
    auto [r1, n1] = open_blackbox(P("int"));
    CHECK(n1 == 1);
    // boundary input pairs with the cut output and vice versa
    CHECK(r1 == rel_generator(Field::q(), "swap"));
    auto [r2, n2] = open_blackbox(P("add"));
    CHECK(n2 == 0);
    CHECK(r2 == rel_generator(Field::q(), "add"));
    auto [r3, n3] = open_blackbox(P("int ; int"));
    CHECK(n3 == 2);
    CHECK(r3.dom() == 3);
    CHECK(r3.cod() == 3);
    CHECK(r3.dim() == 3); // no constraints at all once both are cut
}

TEST_CASE("the two evaluators agree on random terms") {
    std::mt19937 rng(9);
    for (int t = 0; t < 120; ++t) {
        Field f = (t % 2 == 0) ? Field::q() : Field::gf(5);
        TermPtr a = random_term(f, t % 4, 5, rng);
        CHECK(blackbox(a, f, IntegratorMode::Zeroed) ==
              blackbox_recursive(a, f, IntegratorMode::Zeroed));
    }
    Field qs = Field::qs();
    for (int t = 0; t < 60; ++t) {
        TermPtr a = random_term(qs, t % 4, 4, rng);
        CHECK(blackbox(a, qs, IntegratorMode::Symbolic) ==
              blackbox_recursive(a, qs, IntegratorMode::Symbolic));
    }
}

TEST_CASE("black-box is functorial") {
    std::mt19937 rng(15);
    Field f = Field::gf(7);
    for (int t = 0; t < 60; ++t) {
        TermPtr a = random_term(f, 2, 3, rng);
        TermPtr b = random_term(f, a->cod(), 3, rng);
        TermPtr c = random_term(f, 1, 3, rng);
        auto bb = [&](const TermPtr& x) { return blackbox(x, f, IntegratorMode::Zeroed); };
        CHECK(bb(term_compose(a, b)) == rel_compose(bb(a), bb(b)));
        CHECK(bb(term_tensor(a, c)) == rel_direct_sum(bb(a), bb(c)));
    }
}

TEST_CASE("dagger commutes with black-boxing") {
    std::mt19937 rng(21);
    for (int t = 0; t < 200; ++t) {
        Field f = (t % 2 == 0) ? Field::q() : Field::gf(5);
        TermPtr a = random_term(f, t % 4, 4, rng);
        CHECK(blackbox(dagger_term(a), f, IntegratorMode::Zeroed) ==
              rel_dagger(blackbox(a, f, IntegratorMode::Zeroed)));
        CHECK(term_eq(dagger_term(dagger_term(a)), a));
    }
}

TEST_CASE("star duality") {
    Field q = Field::q();
    CHECK(term_eq(star_term(P("add"), q), P("dup")));
    CHECK(term_eq(star_term(P("dup"), q), P("add")));
    CHECK(term_eq(star_term(P("zero"), q), P("del")));
    CHECK(term_eq(star_term(P("del"), q), P("zero")));
    CHECK(term_eq(star_term(P("scale(5)"), q), P("scale(5)")));
    CHECK(term_eq(star_term(P("cup"), q), P("cap ; (id[1] * scale(-1))")));
    CHECK(term_eq(star_term(P("cap"), q), P("(id[1] * scale(-1)) ; cup")));
    CHECK(term_eq(star_term(P("add ; dup"), q), P("add ; dup")));

    // on matrix-like terms, star black-boxes to the transpose
    std::mt19937 rng(27);
    for (int t = 0; t < 100; ++t) {
        Field f = (t % 2 == 0) ? Field::q() : Field::gf(5);
        TermPtr a = random_term(f, 1 + t % 3, 4, rng, /*map_only=*/true);
        Matrix M = rel_matrix(blackbox(a, f, IntegratorMode::Zeroed));
        CHECK(blackbox(star_term(a, f), f, IntegratorMode::Zeroed) ==
              rel_graph(M.transpose()));
    }

    // star is a semantic involution on arbitrary terms
    for (int t = 0; t < 100; ++t) {
        Field f = (t % 2 == 0) ? Field::q() : Field::gf(5);
        TermPtr a = random_term(f, t % 4, 4, rng);
        CHECK(blackbox(star_term(star_term(a, f), f), f, IntegratorMode::Zeroed) ==
              blackbox(a, f, IntegratorMode::Zeroed));
    }
}
