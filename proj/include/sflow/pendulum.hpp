#pragma once

#include "sflow/term.hpp"

namespace sflow {

// Inverted pendulum on a cart: input is the horizontal force F, outputs are
// the cart position x and the rod angle a. Parameters: cart mass M, bob
// mass m, gravity g, rod length l (all rational, M and l nonzero).
//
// Both diagrams below denote the same behaviour; they differ in shape. The
// first composes a cart block with a pendulum block, feeding the cart
// acceleration into the pendulum and the angle back into the cart. The
// second wires the two decoupled second-order equations
//   x'' = F/M - (m g / M) a,   a'' = ((M+m) g / (M l)) a - F / (M l)
// directly, sharing only F and the fed-back angle.

namespace detail { namespace pend {

inline TermPtr sc(const BigRat& v) {
    return term_scale(FieldValue::from_rat(Field::q(), v));
}
inline TermPtr gen(GenKind k) { return term_gen(GenLabel(k)); }
inline TermPtr int2() { return term_compose(gen(GenKind::Int), gen(GenKind::Int)); }
inline TermPtr chain(std::vector<TermPtr> layers) {
    TermPtr t = layers.front();
    for (size_t i = 1; i < layers.size(); ++i) t = term_compose(t, layers[i]);
    return t;
}

}} // namespace detail::pend

inline TermPtr pendulum_composite_diagram(const BigRat& M, const BigRat& m, const BigRat& g,
                                          const BigRat& l) {
    using namespace detail::pend;
    if (M == BigRat(0) || l == BigRat(0)) throw DivisionByZero();
    TermPtr cap = gen(GenKind::Cap), cup = gen(GenKind::Cup), dup = gen(GenKind::Dup),
            add = gen(GenKind::Add), sw = term_swap();
    return chain({
        // [F] -> [a, a', F]: the angle enters through a feedback pair
        term_tensor(cap, term_id(1)),
        // -> [a1, a2, a', F]: one copy for the cart, one for the pendulum
        term_tensor(dup, term_id(2)),
        // -> [F, a1, a2, a']
        term_tensor(term_id(2), sw),
        term_tensor(term_id(1), term_tensor(sw, term_id(1))),
        term_tensor(sw, term_id(2)),
        // cart: s^2 x = (F - m g a1) / M
        term_tensor(term_id(1), term_tensor(sc(-(m * g)), term_id(2))),
        term_tensor(add, term_id(2)),
        term_tensor(sc(BigRat(1) / M), term_id(2)),
        // -> [sx1, sx2, a2, a']: the acceleration drives x and the pendulum
        term_tensor(dup, term_id(2)),
        term_tensor(term_id(1), term_tensor(sw, term_id(1))),
        // pendulum: s^2 a = (g / l) a2 - sx2 / l; cart branch integrates twice
        term_tensor(int2(), term_tensor(sc(g / l), term_tensor(sc(-(BigRat(1) / l)),
                                                               term_id(1)))),
        term_tensor(term_id(1), term_tensor(add, term_id(1))),
        term_tensor(term_id(1), term_tensor(int2(), term_id(1))),
        // close the angle loop, keep (x, a)
        term_tensor(term_id(1), term_tensor(dup, term_id(1))),
        term_tensor(term_id(2), cup),
    });
}

inline TermPtr pendulum_friedland_diagram(const BigRat& M, const BigRat& m, const BigRat& g,
                                          const BigRat& l) {
    using namespace detail::pend;
    if (M == BigRat(0) || l == BigRat(0)) throw DivisionByZero();
    TermPtr cap = gen(GenKind::Cap), cup = gen(GenKind::Cup), dup = gen(GenKind::Dup),
            add = gen(GenKind::Add), sw = term_swap();
    return chain({
        // [F] -> [a, a', F]
        term_tensor(cap, term_id(1)),
        // -> [a1, a2, a', F]
        term_tensor(dup, term_id(2)),
        // -> [a1, F1, a2, F2, a']
        term_tensor(term_id(2), sw),
        term_tensor(term_id(1), term_tensor(sw, term_id(1))),
        term_tensor(term_id(1), term_tensor(dup, term_id(2))),
        term_tensor(term_id(2), term_tensor(sw, term_id(1))),
        // x'' = (1/M) F1 - (m g / M) a1;  a'' = ((M+m) g / (M l)) a2 - (1/(M l)) F2
        term_tensor(sc(-(m * g) / M),
                    term_tensor(sc(BigRat(1) / M),
                                term_tensor(sc((M + m) * g / (M * l)),
                                            term_tensor(sc(-(BigRat(1) / (M * l))),
                                                        term_id(1))))),
        term_tensor(add, term_tensor(add, term_id(1))),
        term_tensor(int2(), term_tensor(int2(), term_id(1))),
        // close the angle loop, keep (x, a)
        term_tensor(term_id(1), term_tensor(dup, term_id(1))),
        term_tensor(term_id(2), cup),
    });
}

} // namespace sflow
