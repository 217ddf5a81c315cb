import pytest
from hypothesis import given, settings, strategies as st

from groupfact.gfmat import (
    GF, companion_matrix, format_mgp, gl_order, go_order, gu_order,
    mat_det, mat_identity, mat_inverse, mat_mul, mat_order, mat_pow,
    mat_to_perm, mat_transpose, omega_order, parse_mgp, pgl_order,
    pomega_order, primitive_polynomial_over, psl_order, psp_order,
    psu_order, sl_order, sp_order, su_order, vec_mat, vector_code,
    vector_from_code,
)


@pytest.mark.parametrize("p,f,modulus", [
    (2, 2, (1, 1, 1)),        # x^2+x+1
    (2, 3, (1, 1, 0, 1)),     # x^3+x+1
    (2, 4, (1, 1, 0, 0, 1)),  # x^4+x+1
])
def test_known_small_moduli(p, f, modulus):
    assert GF(p, f).modulus_coeffs == modulus


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2),
                                 (2, 3), (2, 4), (5, 2)])
def test_field_laws(p, f):
    F = GF(p, f)
    els = list(F.elements())
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a in els[: min(len(els), 9)]:
        for b in els[: min(len(els), 9)]:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els[: min(len(els), 9)]:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_generator_has_full_order():
    for p, f in [(2, 2), (3, 2), (2, 3), (7, 1)]:
        F = GF(p, f)
        seen = set()
        x = 1
        for _ in range(F.q - 1):
            seen.add(x)
            x = F.mul(x, F.generator)
        assert len(seen) == F.q - 1


def test_conjugation_involution():
    for p, f in [(2, 2), (3, 2), (2, 4)]:
        F = GF(p, f)
        half = F.p ** (F.f // 2)
        for a in F.elements():
            assert F.conj(F.conj(a)) == a
            assert F.conj(a) == F.pow(a, half)
        # fixed field has exactly sqrt(q) elements
        fixed = [a for a in F.elements() if F.conj(a) == a]
        assert len(fixed) == half
    with pytest.raises(ValueError):
        GF(2, 3).conj(1)


def test_squares_odd_characteristic():
    F = GF(3, 2)
    squares = {F.mul(a, a) for a in F.elements()}
    assert squares == {a for a in F.elements() if F.is_square(a)}
    assert len(squares) == (F.q + 1) // 2


def test_trace_to_prime_is_additive_and_onto():
    F = GF(2, 2)
    traces = [F.trace_to_prime(a) for a in F.elements()]
    assert sorted(traces) == [0, 0, 1, 1]
    F = GF(3, 2)
    for a in range(F.q):
        for b in range(F.q):
            assert (F.trace_to_prime(F.add(a, b))
                    == (F.trace_to_prime(a) + F.trace_to_prime(b)) % 3)


def test_primitive_polynomial_over_extension():
    F4 = GF(2, 2)
    poly = primitive_polynomial_over(F4, 2)
    assert len(poly) == 3 and poly[-1] == 1
    C = companion_matrix(F4, poly)
    assert mat_order(F4, C) == 15
    F3 = GF(3)
    poly3 = primitive_polynomial_over(F3, 3)
    C3 = companion_matrix(F3, poly3)
    assert mat_order(F3, C3) == 26


def test_matrix_inverse_and_det():
    F = GF(5)
    A = ((1, 2), (3, 4))
    assert mat_mul(F, A, mat_inverse(F, A)) == mat_identity(2)
    assert mat_det(F, A) == 3  # 1*4 - 2*3 = -2 = 3 mod 5
    with pytest.raises(ValueError):
        mat_inverse(F, ((1, 2), (2, 4)))
    assert mat_det(F, ((1, 2), (2, 4))) == 0


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_det_multiplicative(a, b, c, d):
    F = GF(5)
    A = ((a, b), (c, d))
    B = ((2, 1), (1, 1))
    assert mat_det(F, mat_mul(F, A, B)) == F.mul(mat_det(F, A), mat_det(F, B))


def test_vec_mat_is_right_action():
    F = GF(7)
    A = ((1, 2), (3, 4))
    B = ((0, 1), (1, 1))
    v = (5, 6)
    lhs = vec_mat(F, vec_mat(F, v, A), B)
    rhs = vec_mat(F, v, mat_mul(F, A, B))
    assert lhs == rhs


def test_vector_codes_roundtrip():
    F = GF(3, 2)
    for code in range(F.q ** 2):
        v = vector_from_code(F, code, 2)
        assert vector_code(F, v) == code


def test_mat_to_perm_orders():
    F = GF(3)
    sl2 = [((1, 1), (0, 1)), ((0, 1), (2, 0))]
    g, enc, dec = mat_to_perm(F, sl2)
    assert g.order() == sl_order(2, 3) == 24
    g2, _, _ = mat_to_perm(F, sl2 + [((2, 0), (0, 1))])
    assert g2.order() == gl_order(2, 3) == 48
    assert g2.degree == 9
    # the zero vector is fixed by the whole group
    assert all(p.images[enc((0, 0))] == enc((0, 0)) for p in g2.generators)


def test_mat_to_perm_degree_bound():
    F = GF(2)
    big = mat_identity(17)
    with pytest.raises(ValueError):
        mat_to_perm(F, [big])


def test_classical_orders():
    assert gl_order(2, 3) == 48
    assert pgl_order(2, 5) == 120
    assert psl_order(2, 7) == 168
    assert psl_order(2, 9) == 360
    assert psl_order(2, 11) == 660
    assert psl_order(3, 3) == 5616
    assert psl_order(4, 2) == 20160
    assert psl_order(4, 3) == 6065280
    assert gu_order(3, 2) == 648
    assert gu_order(4, 2) == 77760
    assert su_order(3, 3) == 6048
    assert psu_order(3, 3) == 6048
    assert sp_order(2, 2) == 720
    assert sp_order(2, 3) == 51840
    assert psp_order(2, 3) == 25920
    assert sp_order(3, 2) == 1451520
    assert go_order(3, 3) == 48
    assert omega_order(4, 2, -1) == 60   # PSL2(4)
    assert omega_order(4, 2, 1) == 36    # S3 x S3
    assert omega_order(5, 3) == 25920
    assert omega_order(7, 3) == 4585351680
    assert pomega_order(6, 3, 1) == psl_order(4, 3)
    assert pomega_order(6, 3, -1) == psu_order(4, 3)
    assert pomega_order(8, 3, 1) == omega_order(8, 3, 1) // 2


def test_exceptional_unitary_symplectic_coincidence():
    # the two smallest non-linear classical coincidences used downstream
    assert psu_order(4, 2) == psp_order(2, 3) == 25920
    assert psl_order(2, 4) == psl_order(2, 5) == 60


def test_mgp_roundtrip():
    F = GF(2, 2)
    mats = [((1, 2), (0, 1)), ((0, 1), (1, 0))]
    text = format_mgp(F, mats, comment="two generators")
    F2, mats2 = parse_mgp(text)
    assert F2 is F
    assert mats2 == mats


@pytest.mark.parametrize("bad", [
    "",
    "mat 2 2\n",
    "mat 4 1 2\n1 0\n0 1\n",
    "mat 2 2 2\n1 0\n0 4\n",
    "mat 2 2 2\n1 0\n",
    "mat 2 2 2\n1 0 0\n0 1 0\n",
    "mat 2 2 2\n1 1\n1 1\n",
    "mat 2 2 0\n",
])
def test_mgp_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_mgp(bad)


def test_mat_pow_and_transpose():
    F = GF(7)
    A = ((2, 1), (1, 1))
    assert mat_pow(F, A, 0) == mat_identity(2)
    assert mat_pow(F, A, 5) == mat_mul(F, mat_pow(F, A, 3), mat_pow(F, A, 2))
    assert mat_pow(F, A, -1) == mat_inverse(F, A)
    assert mat_transpose(((1, 2), (3, 4))) == ((1, 3), (2, 4))
