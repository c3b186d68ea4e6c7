import math
from fractions import Fraction

import pytest

from sl2kit.derivation import Derivation
from sl2kit.polyring import RingSpec
from sl2kit.slpair import (NotFundamentalError, SubringDivisionError, basic_pair, check_fundamental,
                           conjugate_pair, direct_sum_pair, format_pair, gordan_pair, infer_weights,
                           nilpotency_cap, parse_pair_text, subring_pair, verify_fundamental)


def test_basic_pair_examples():
    V2 = basic_pair(2)
    R = V2.ring
    assert V2.weights == (2, 0, -2)
    assert list(V2.down.images) == [R.zero(), R.parse("x0"), R.parse("x1")]
    assert list(V2.up.images) == [R.parse("2*x1"), R.parse("2*x2"), R.zero()]
    V1 = basic_pair(1)
    assert V1.weights == (1, -1) and V1.U(V1.ring.var("x0")) == V1.ring.var("x1")
    V3 = basic_pair(3)
    assert [str(V3.U(x)) for x in V3.ring.gens()[:3]] == ["3*x1", "4*x2", "3*x3"]
    with pytest.raises(ValueError):
        basic_pair(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_basic_pair_extreme_powers(n):
    pair = basic_pair(n)
    x = pair.ring.gens()
    assert pair.down.power(x[n], n) == x[0]
    assert pair.up.power(x[0], n) == x[n].scale(math.factorial(n) ** 2)


def test_weights_shift_by_two():
    pair = direct_sum_pair([basic_pair(2), basic_pair(3)], ["x", "y"])
    for name, w in zip(pair.variables, pair.weights):
        x = pair.ring.var(name)
        if pair.D(x):
            assert pair.D(x).weight() == w + 2
        if pair.U(x):
            assert pair.U(x).weight() == w - 2


def test_verify_fundamental_rejects_bad_scalar():
    R = RingSpec(("x0", "x1"))
    D = Derivation(R, [R.zero(), R.var("x0")])
    U = Derivation(R, [R.var("x1").scale(2), R.zero()])
    rep = check_fundamental(D, U, (1, -1))
    assert not rep.ok
    assert any("[U,E]" in f for f in rep.failures)
    with pytest.raises(NotFundamentalError) as info:
        verify_fundamental(D, U, (1, -1))
    assert info.value.report.failures == rep.failures


def test_verify_fundamental_wrong_weights():
    V2 = basic_pair(2)
    assert not check_fundamental(V2.down, V2.up, (2, 0, 2)).ok
    assert not check_fundamental(V2.down, V2.up, (2, 0)).ok


def test_quasilinear_has_no_candidate_partner():
    pair = direct_sum_pair([basic_pair(1), basic_pair(1)], ["x", "y"])
    P = pair.ring.parse("x0*y1 - y0*x1")
    delta = pair.down.times(P)
    for up in (pair.up, pair.up.times(P), pair.up.scale(3), pair.up.scale(-1)):
        assert infer_weights(delta, up) is None
        assert not check_fundamental(delta, up, pair.weights).ok


def test_direct_sum_examples():
    V11 = direct_sum_pair([basic_pair(1), basic_pair(1)], ["x", "y"])
    assert V11.variables == ("x0", "x1", "y0", "y1") and V11.weights == (1, -1, 1, -1)
    V22 = direct_sum_pair([basic_pair(2), basic_pair(2)], ["x", "y"])
    assert V22.ring.nvars == 6 and V22.weights == (2, 0, -2, 2, 0, -2)
    single = direct_sum_pair([basic_pair(2)], ["x"])
    assert single.down == basic_pair(2).down and single.up == basic_pair(2).up
    with pytest.raises(ValueError):
        direct_sum_pair([basic_pair(1), basic_pair(1)], ["x", "x"])


def test_conjugate_pair():
    V2 = basic_pair(2)
    sw = conjugate_pair(V2, "swap")
    assert sw.weights == (-2, 0, 2) and sw.verified
    assert conjugate_pair(sw, "swap").down == V2.down.embed(sw.ring).embed(V2.ring)
    back = conjugate_pair(conjugate_pair(V2, "scale", 3), "scale", Fraction(1, 3))
    assert back.down == V2.down and back.up == V2.up
    V1 = basic_pair(1)
    sc = conjugate_pair(V1, "scale", 2)
    R = sc.ring
    assert sc.D(R.var("x1")) == R.parse("2*x0") and sc.U(R.var("x0")) == R.parse("1/2*x1")
    assert sc.E == V1.E
    composed = conjugate_pair(conjugate_pair(V2, "scale", 2), "scale", 5)
    assert composed.down == conjugate_pair(V2, "scale", 10).down
    with pytest.raises(ValueError):
        conjugate_pair(V2, "scale", 0)


def test_gordan_pair():
    g = gordan_pair(basic_pair(2))
    assert g.ring.nvars == 5 and g.weights == (2, 0, -2, 1, -1)
    E = g.E
    assert E.image("X") == g.ring.var("X") and E.image("Y") == -g.ring.var("Y")
    gg = gordan_pair(g)
    assert gg.ring.nvars == 7 and gg.verified
    with pytest.raises(ValueError):
        gordan_pair(basic_pair(2), names=("x0", "Z"))


def test_subring_pair():
    V2 = basic_pair(2)
    R = V2.ring
    a = 1 + R.parse("2*x0*x2 - x1^2")
    gens = [R.var("x0"), R.parse("2*x0*x2 - x1^2"), a * R.var("x1"), a ** 2 * R.var("x2")]
    rep = subring_pair(V2, a, gens, 2)
    assert rep.ok and all(c.verify() for c in rep.certificates.values())
    assert subring_pair(V2, R.one(), list(R.gens()), 1).ok
    rep = subring_pair(V2, a, [gens[0], gens[1], gens[3]], 2)
    assert not rep.ok and not rep.certificates["a^-1 D(g2)"]
    with pytest.raises(SubringDivisionError):
        subring_pair(V2, a, [R.var("x1")], 1)
    with pytest.raises(ValueError):
        subring_pair(V2, R.var("x0"), gens, 1)


def test_pair_file_round_trip():
    V3 = basic_pair(3)
    D, U, w = parse_pair_text(format_pair(V3))
    assert w == V3.weights and D == V3.down and U == V3.up
    with pytest.raises(ValueError):
        parse_pair_text("ring: x\n[down]\n")


def test_nilpotency_cap():
    assert nilpotency_cap(3, (2, 0, -2)) == 24
