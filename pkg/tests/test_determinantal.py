import math

import pytest

from sl2kit.determinantal import (build_theta, invariant_quadric, jacobian_origin_check, minor, quartic_syzygy,
                                  rnc_images, rnc_substitution_check, theta_graded_piece, three_column_syzygy,
                                  verify_identity, verify_theta_equality)
from sl2kit.polyring import span_contains, substitute

from . import oracle


@pytest.mark.parametrize("d", range(2, 8))
def test_theta_span(d):
    theta = build_theta(d)
    rep = verify_theta_equality(theta)
    assert rep.ok and rep.rank_minors == math.comb(d, 2)


@pytest.mark.parametrize("d", [3, 5])
def test_theta_rank_matches_sympy(d):
    theta = build_theta(d)
    xs = oracle.symbols_for(theta.ring)
    assert oracle.span_rank([oracle.to_sympy(v) for v in theta.vertices()], xs) == math.comb(d, 2)


def test_cable_vertices_weights_and_scalars():
    for d in range(2, 8):
        theta = build_theta(d)
        for i, cable in enumerate(theta.cables, start=1):
            assert cable.length == 2 * d - 4 * i
            for j, v in enumerate(cable.vertices):
                assert v.weight() == 2 * d - 4 * i - 2 * j
            assert list(cable.scalars) == [j * (2 * d - 4 * i - j + 1) for j in range(1, cable.length + 1)]


def test_cable_closure():
    theta = build_theta(5)
    verts = theta.vertices()
    for v in verts:
        for op in (theta.pair.D, theta.pair.U):
            img = op(v)
            assert not img or span_contains(verts, img)


def test_d4_displayed_values():
    theta = build_theta(4)
    R = theta.ring
    assert theta.vertex(1, 2) == R.parse("24*(2*x0*x4 + x1*x3 - x2^2)")
    assert theta.root(2) == R.parse("2*x0*x4 - 2*x1*x3 + x2^2")
    # the printed forms with x0*x2 / x2*x2 do not match the definitions
    assert theta.vertex(1, 2) != R.parse("24*(2*x0*x2 + x1*x3 - x2^2)")
    assert theta.root(2) != R.parse("2*x2*x2 - 2*x1*x3 + x2^2")
    assert list(theta.cables[0].scalars) == [4, 6, 6, 4]
    assert quartic_syzygy(theta).ok


@pytest.mark.parametrize("d", range(3, 8))
def test_rnc_normalized_map_kills_everything(d):
    assert rnc_substitution_check(build_theta(d), normalized=True).ok


@pytest.mark.parametrize("d", range(2, 7))
def test_rnc_literal_map_does_not(d):
    theta = build_theta(d)
    rep = rnc_substitution_check(theta, normalized=False)
    assert not rep.ok
    target, images = rnc_images(theta, normalized=False)
    for (a, b), m in theta.minors.items():
        want = target.monomial((a + b - 1, 2 * d - a - b + 1), b - a)
        assert substitute(m, images, target) == want


def test_jacobian_zero_at_origin():
    for d in range(2, 8):
        assert jacobian_origin_check(build_theta(d)).ok


def test_weight_zero_pieces():
    for d in (2, 4, 6, 8):
        piece = theta_graded_piece(build_theta(d), 0)
        assert piece.ok and piece.dimension == d // 2
    piece = theta_graded_piece(build_theta(8), 8)
    assert piece.dimension == 2


def test_three_column_syzygies():
    for d in range(3, 7):
        theta = build_theta(d)
        for a in range(1, d + 1):
            for b in range(a + 1, d + 1):
                for c in range(b + 1, d + 1):
                    assert three_column_syzygy(theta, a, b, c, row=1).ok
                    assert three_column_syzygy(theta, a, b, c, row=2).ok


def test_three_column_shifted_pattern_fails():
    theta = build_theta(4)
    x, M = theta.ring.gens(), theta.minors
    combo = [(x[1].scale(2), M[(3, 4)]), (x[2].scale(-3), M[(2, 4)]), (x[3].scale(4), M[(2, 3)])]
    assert not verify_identity(combo, theta.ring.zero()).ok
    combo = [(x[2].scale(2), M[(3, 4)]), (x[3].scale(-3), M[(2, 4)]), (x[4].scale(4), M[(2, 3)])]
    assert verify_identity(combo, theta.ring.zero()).ok


def test_minor_and_quadric_definitions():
    theta = build_theta(3)
    R = theta.ring
    assert minor(R, 1, 2) == R.parse("2*x0*x2 - x1^2")
    assert invariant_quadric(R, 1) == R.parse("2*x0*x2 - x1^2")
    with pytest.raises(ValueError):
        build_theta(1)
    with pytest.raises(ValueError):
        three_column_syzygy(theta, 1, 2, 3, row=3)
    with pytest.raises(ValueError):
        quartic_syzygy(theta)
