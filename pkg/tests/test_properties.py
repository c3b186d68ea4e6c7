from fractions import Fraction

from hypothesis import given, strategies as st

from sl2kit.derivation import Derivation, deg_of, derive_apply, lie_bracket, transvectant
from sl2kit.extension import extend_by_invariant, phi_clear
from sl2kit.polyring import (Polynomial, bounded_ideal_membership, format_polynomial, parse_polynomial, substitute,
                             weighted_components)
from sl2kit.slpair import basic_pair, conjugate_pair
from sl2kit.structure import verify_updown

V2 = basic_pair(2)
V3 = basic_pair(3)
R = V3.ring
coeffs = st.one_of(st.integers(-5, 5), st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)))


@st.composite
def polys(draw, ring=R, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.lists(st.integers(0, max_deg), min_size=ring.nvars, max_size=ring.nvars)))
        terms[e] = terms.get(e, 0) + draw(coeffs)
    return Polynomial(ring, terms)


@st.composite
def derivations(draw, ring=R):
    return Derivation(ring, [draw(polys(ring, 2, 2)) for _ in range(ring.nvars)])


@given(polys())
def test_format_parse_roundtrip(p):
    assert parse_polynomial(format_polynomial(p), R) == p


@given(polys(), polys(), polys(), polys())
def test_substitute_is_homomorphism(p, q, s0, s1):
    images = {"x0": s0, "x1": s1, "x2": R.var("x2"), "x3": R.var("x0") + 1}
    assert substitute(p * q, images, R) == substitute(p, images, R) * substitute(q, images, R)
    assert substitute(p + q, images, R) == substitute(p, images, R) + substitute(q, images, R)


@given(derivations(), polys(), polys())
def test_leibniz(D, p, q):
    assert derive_apply(D, p * q) == derive_apply(D, p) * q + p * derive_apply(D, q)


@given(derivations(), derivations(), derivations())
def test_jacobi(A, B, C):
    total = lie_bracket(A, lie_bracket(B, C)) + lie_bracket(B, lie_bracket(C, A)) + lie_bracket(C, lie_bracket(A, B))
    assert all(not img for img in total.images)


@given(derivations(), derivations(), polys())
def test_bracket_is_commutator(A, B, p):
    lhs = derive_apply(lie_bracket(A, B), p)
    assert lhs == derive_apply(A, derive_apply(B, p)) - derive_apply(B, derive_apply(A, p))


@given(polys())
def test_weighted_components_sum(p):
    comps = weighted_components(p)
    total = R.zero()
    for w, c in comps.items():
        assert all(c.monomial_weight(e) == w for e, _ in c.items())
        total = total + c
    assert total == p


@given(polys(V2.ring, 3, 1), polys(V2.ring, 3, 1))
def test_membership_certificate_reverifies(c0, c1):
    S = V2.ring
    gens = [S.var("x0"), S.var("x1") * S.var("x2") + 1]
    target = c0 * gens[0] + c1 * gens[1]
    cert = bounded_ideal_membership(target, gens, 3)
    assert cert and cert.verify()
    assert cert.expand() == target


@given(polys(max_deg=2))
def test_deg_of_drops_by_one_under_D(p):
    if not p:
        return
    n = deg_of(V3.down, p)
    assert deg_of(V3.down, V3.D(p)) == n - 1 if n > 0 else not V3.D(p)


@given(st.integers(0, 3), st.sampled_from([-3, -2, -1, 1, 2, 3]))
def test_updown_on_x0_powers(k, c):
    f = (V3.ring.var("x0") ** k).scale(c)
    n = min(3, 3 * k) if k else 1
    scalars = verify_updown(V3, f, n)
    assert scalars == [j * 3 * k - j * (j - 1) for j in range(1, n + 1)]


@given(st.integers(0, 3), st.integers(0, 3))
def test_transvectant_lands_in_kernel(i, j):
    f = V3.up.power(V3.ring.var("x0"), i)
    g = V3.up.power(V3.ring.var("x0") ** 2, j)
    n = max(deg_of(V3.down, f), deg_of(V3.down, g))
    assert not V3.D(transvectant(V3.down, f, g, n))


_ctx = extend_by_invariant(V2, 1 + V2.parse("2*x0*x2 - x1^2"))


@given(polys(V2.ring, 3, 2), polys(V2.ring, 3, 2), st.integers(0, 2))
def test_phi_laws(f, g, extra):
    if not f or not g:
        return
    m, n = deg_of(V2.down, f), deg_of(V2.down, g)
    pf, pg = phi_clear(_ctx, f, m), phi_clear(_ctx, g, n)
    assert pf * pg == phi_clear(_ctx, f * g, m + n)
    ui = _ctx.extended_ring.index("u")
    assert max(e[ui] for e, _ in pf.items()) == m
    assert _ctx.specialize_u(phi_clear(_ctx, f, m + extra)) == _ctx.shift ** (m + extra) * f
    assert not _ctx.Dprime(pf)


@given(st.builds(Fraction, st.integers(1, 5), st.integers(1, 5)), st.builds(Fraction, st.integers(-5, -1), st.integers(1, 5)))
def test_conjugate_scale_composition(r, s):
    once = conjugate_pair(conjugate_pair(V2, "scale", r), "scale", s)
    direct = conjugate_pair(V2, "scale", r * s)
    assert once.down.images == direct.down.images and once.up.images == direct.up.images


def test_conjugate_swap_is_involution():
    twice = conjugate_pair(conjugate_pair(V3, "swap"), "swap")
    assert twice.down.images == V3.down.images and twice.up.images == V3.up.images
    assert twice.weights == V3.weights
