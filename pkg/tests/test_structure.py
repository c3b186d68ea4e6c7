
import pytest

from sl2kit.derivation import transvectant
from sl2kit.polyring import linear_kernel_on_slice, monomial_basis, same_span, span_contains, span_rank
from sl2kit.slpair import basic_pair, direct_sum_pair
from sl2kit.structure import (UpdownError, algebra_ideal_membership, degree_module_generators, graded_kernel_piece,
                              image_ideal_generators, kernel_algebra_generators, updown_scalars,
                              verify_decompositions, verify_updown)

from . import oracle


def v3_gens(R):
    T1 = R.parse("x0")
    T2 = R.parse("2*x0*x2 - x1^2")
    T3 = R.parse("3*x0^2*x3 - 3*x0*x1*x2 + x1^3")
    H = (T2 ** 3 + T3 ** 2).exact_divide(T1 ** 2)
    return [(T1, 3), (T2, 2), (T3, 3), (H, 0)]


def test_graded_kernel_piece_examples():
    V2 = basic_pair(2)
    R = V2.ring
    T2 = R.parse("2*x0*x2 - x1^2")
    piece = graded_kernel_piece(V2, 0, 4)
    assert same_span(piece.generators, [R.one(), T2, T2 ** 2]) and len(piece) == 3
    assert len(graded_kernel_piece(V2, -2, 4)) == 0
    V3 = basic_pair(3)
    gens = [g for g, _ in v3_gens(V3.ring)]
    piece = graded_kernel_piece(V3, 3, 3)
    assert span_contains(list(piece.generators), gens[0]) and span_contains(list(piece.generators), gens[2])


def test_graded_piece_dimension_matches_sympy():
    V3 = basic_pair(3)
    xs = oracle.symbols_for(V3.ring)
    down, _ = oracle.basic_images(3, xs)
    for w in (0, 2, 3):
        got = len(graded_kernel_piece(V3, w, 5))
        assert got == oracle.kernel_dimension(down, xs, 5, weight=w, weights=V3.weights)


def test_image_ideals_V2():
    V2 = basic_pair(2)
    R = V2.ring
    kg = [(R.var("x0"), 2), (R.parse("2*x0*x2 - x1^2"), 0)]
    for n in (1, 2):
        assert image_ideal_generators(V2, kg, n).generators == (R.var("x0"),)
    assert image_ideal_generators(V2, kg, 4).generators == (R.var("x0") ** 2,)
    with pytest.raises(ValueError):
        image_ideal_generators(V2, [(R.parse("2*x0*x2 - x1^2"), 0)], 1)


def test_image_ideals_V3():
    V3 = basic_pair(3)
    kg = v3_gens(V3.ring)
    names = ["T1", "T2", "T3", "H"]
    assert set(image_ideal_generators(V3, kg, 1, names).labels) == {"T1", "T2", "T3"}
    assert set(image_ideal_generators(V3, kg, 2, names).labels) == {"T1", "T2", "T3"}
    assert set(image_ideal_generators(V3, kg, 3, names).labels) == {"T1", "T3", "T2^2"}


def test_v3_I3_needs_T2_squared_over_A():
    V3 = basic_pair(3)
    kg = v3_gens(V3.ring)
    A = [g for g, _ in kg]
    T1, T2, T3, _ = A
    # no weight-4 element of T1*A + T3*A, so T2^2 is not in the A-ideal (T1, T3)
    assert algebra_ideal_membership(T2 ** 2, [T1, T3], A) is None


def test_filtration_descends():
    V3 = basic_pair(3)
    kg = v3_gens(V3.ring)
    A = [g for g, _ in kg]
    previous = None
    for n in (1, 2, 3, 4):
        pres = image_ideal_generators(V3, kg, n)
        if previous is not None:
            assert all(algebra_ideal_membership(g, list(previous.generators), A) is not None for g in pres.generators)
        previous = pres


def test_degree_module_examples():
    V2 = basic_pair(2)
    R = V2.ring
    F1 = degree_module_generators(V2, [R.var("x0")], 1)
    assert F1.generators == (R.parse("2*x1"),)
    V3 = basic_pair(3)
    kg = v3_gens(V3.ring)
    F1 = degree_module_generators(V3, [kg[0][0], kg[1][0], kg[2][0]], 1)
    P1 = V3.ring.parse("3*x0*x3 - x1*x2")
    Q1 = V3.ring.parse("3*x0*x1*x3 - 4*x0*x2^2 + x1^2*x2")
    assert F1.generators[0] == V3.ring.parse("3*x1")
    assert F1.generators[1] == P1.scale(2) and F1.generators[2] == Q1.scale(3)
    assert len(degree_module_generators(V2, [R.var("x0")], 0)) == 0
    with pytest.raises(ValueError):
        degree_module_generators(V2, [R.var("x1")], 1)


def test_updown_examples():
    V2 = basic_pair(2)
    assert verify_updown(V2, V2.ring.var("x0"), 2) == [2, 2]
    assert V2.down.power(V2.up.power(V2.ring.var("x0"), 2), 2) == V2.ring.var("x0").scale(4)
    assert verify_updown(V2, V2.ring.var("x0"), 0) == []
    V3 = basic_pair(3)
    T2 = V3.ring.parse("2*x0*x2 - x1^2")
    c = verify_updown(V3, T2, 2)
    assert c[0] * c[1] == 4
    assert updown_scalars(3, 3) == [3, 4, 3]
    with pytest.raises((ValueError, UpdownError)):
        verify_updown(V2, V2.ring.var("x1"), 1)


@pytest.mark.parametrize("pair,bound", [(basic_pair(1), 2), (basic_pair(2), 3), (basic_pair(3), 3),
                                        (direct_sum_pair([basic_pair(2), basic_pair(2)], ["x", "y"]), 2)])
def test_decompositions(pair, bound):
    rep = verify_decompositions(pair, bound)
    assert rep.ok, rep.failures()
    claims = {c.claim for c in rep.claims}
    assert {"B=A+UB", "B=Omega+DB", "D injective", "D surjective"} <= claims
    assert all(set(d) >= {"claim", "weight", "slice_bound", "status"} for d in rep.to_json())


def test_plinth_decomposition_on_slices():
    # A = A_0 + I_1 on each slice: weight-0 kernel part and positive-weight part are complementary
    V3 = basic_pair(3)
    for t in range(1, 6):
        total = linear_kernel_on_slice(V3.D, V3.ring, t)
        parts = [graded_kernel_piece(V3, w, t).generators for w in range(0, 3 * t + 1)]
        flat = [p for part in parts for p in part]
        assert span_rank(flat) == len(total) == sum(len(p) for p in parts)


def test_kernel_meets_UB_trivially():
    V2 = basic_pair(2)
    R = V2.ring
    for t in range(1, 5):
        ker = linear_kernel_on_slice(V2.D, R, t)
        UB = [V2.U(m) for m in monomial_basis(R, t) if V2.U(m)]
        assert span_rank(ker + UB) == len(ker) + span_rank(UB)


def test_transvectant_closure_in_A0():
    V3 = basic_pair(3)
    kg = v3_gens(V3.ring)
    T1, T3 = kg[0][0], kg[2][0]
    for f, g in ((T1, T3), (T1, T1), (T3, T3)):
        t = transvectant(V3.up, f, g, 3)
        if t:
            assert t.weight() == 0
        assert not V3.D(t) and not V3.U(t)


def test_kernel_algebra_generators_V3():
    V3 = basic_pair(3)
    kg = kernel_algebra_generators(V3, 4)
    assert sorted(w for _, w in kg) == [0, 2, 3, 3]
    assert [g.total_degree() for g, _ in kg] == [1, 2, 3, 4]
