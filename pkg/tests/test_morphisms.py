import random
from fractions import Fraction as F

import pytest

from tpl3 import (ALL_CASES, CANONICAL_AUTOMORPHISM, CASE_FAMILY, AutoMatrix,
                  CommProduct, FamilyInstance, Matrix, NotAutomorphism,
                  ShapeMismatch, Singular, Vector, a3_bracket,
                  a3_automorphism_check, check_transposed_leibniz,
                  draw_family_params, eleven_equation_residuals, instantiate_family,
                  is_bracket_automorphism, kernel_basis, mat_mul,
                  transport_bracket, transport_product)
from conftest import (A3_PRODUCT_SPACE, rand_a3_automorphism, rand_family_product,
                      rand_invertible, rand_rat)

A3 = a3_bracket()
PHI_1A = CANONICAL_AUTOMORPHISM["1-a"]
PHI_13 = CANONICAL_AUTOMORPHISM["4-a"]


def test_automatrix_requires_invertible():
    with pytest.raises(Singular):
        AutoMatrix.from_rows([[1, 1], [1, 1]])


def test_is_bracket_automorphism_examples():
    assert is_bracket_automorphism(A3, PHI_1A).passed
    assert is_bracket_automorphism(A3, AutoMatrix.identity(3)).passed
    broken = AutoMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    report = is_bracket_automorphism(A3, broken)
    assert not report.passed
    assert report.violations[0].witness == (1, 2, 3)


def test_a3_automorphism_check_examples():
    assert a3_automorphism_check(PHI_13)
    assert a3_automorphism_check(AutoMatrix.from_rows([[7, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert not a3_automorphism_check(AutoMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 1]]))


def test_check_agreement_with_bracket_automorphism():
    # closed-form check agrees with the structure-constant check on random
    # invertible maps and on all sixteen canonical automorphisms
    rng = random.Random(23)
    count_true = 0
    for _ in range(1000):
        m = rand_invertible(rng, 3)
        assert a3_automorphism_check(m) == is_bracket_automorphism(A3, m).passed
    for _ in range(50):
        m = rand_a3_automorphism(rng)
        assert a3_automorphism_check(m)
        assert is_bracket_automorphism(A3, m).passed
        count_true += 1
    for case in ALL_CASES:
        phi = CANONICAL_AUTOMORPHISM[str(case)]
        assert a3_automorphism_check(phi)
        assert is_bracket_automorphism(A3, phi).passed
    assert count_true == 50


def test_transport_product_identity_and_fixed_point():
    rng = random.Random(4)
    p = rand_family_product(rng)
    assert transport_product(p, AutoMatrix.identity(3)) == p
    t1 = instantiate_family(FamilyInstance.make("T1", alpha=rand_rat(rng, nonzero=True)))
    assert transport_product(t1, PHI_1A) == t1


def test_transport_product_scaling_example():
    t1 = instantiate_family(FamilyInstance.make("T1", alpha=1))
    d = AutoMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, F(1, 2)]])
    moved = transport_product(t1, d)
    expected = CommProduct(3, {
        (2, 2): Vector([0, F(1, 2), 0]),
        (2, 3): Vector([0, 0, F(-1, 2)]),
        (3, 3): Vector([0, -24, 0]),
    })
    assert moved == expected


def test_transport_bracket_examples():
    phi5 = CANONICAL_AUTOMORPHISM["2-a"]
    assert transport_bracket(A3, phi5) == A3
    assert transport_bracket(A3, AutoMatrix.identity(3)) == A3
    scale = AutoMatrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert transport_bracket(A3, scale) == A3


def test_transport_inverse_roundtrip():
    rng = random.Random(6)
    for _ in range(30):
        p = rand_family_product(rng)
        m = rand_invertible(rng, 3)
        assert transport_product(transport_product(p, m), m.inverse()) == p


def test_transport_composition_contract():
    # in the row convention the push-forward composes as: the matrix product
    # a·b transports like "a first, then b"
    rng = random.Random(7)
    for _ in range(30):
        p = rand_family_product(rng)
        a = rand_invertible(rng, 3)
        b = rand_invertible(rng, 3)
        composed = AutoMatrix(mat_mul(a.map, b.map))
        assert (transport_product(p, composed)
                == transport_product(transport_product(p, a), b))


def test_transport_preserves_coupling_identity():
    rng = random.Random(12)
    for _ in range(25):
        p = rand_family_product(rng)
        assert check_transposed_leibniz(A3, p).passed
        m = rand_a3_automorphism(rng)
        moved_b = transport_bracket(A3, m)
        moved_p = transport_product(p, m)
        assert moved_b == A3
        assert check_transposed_leibniz(moved_b, moved_p).passed


def test_eleven_residuals_identity_and_fixed_points():
    rng = random.Random(3)
    for _ in range(10):
        p = rand_family_product(rng)
        assert eleven_equation_residuals(p, AutoMatrix.identity(3)) == [0] * 11
    for case in ALL_CASES:
        fam = CASE_FAMILY[str(case)]
        phi = CANONICAL_AUTOMORPHISM[str(case)]
        params = draw_family_params(fam, rng)
        inst = instantiate_family(FamilyInstance.make(fam, **params))
        assert eleven_equation_residuals(inst, phi) == [0] * 11


def test_eleven_residuals_diag_example():
    t1 = instantiate_family(FamilyInstance.make("T1", alpha=1))
    d = AutoMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, F(1, 2)]])
    residuals = eleven_equation_residuals(t1, d)
    assert residuals[6] == F(-21, 8)
    assert any(residuals)


def test_eleven_residuals_errors():
    t1 = instantiate_family(FamilyInstance.make("T1", alpha=1))
    with pytest.raises(NotAutomorphism):
        eleven_equation_residuals(t1, AutoMatrix.from_rows(
            [[1, 0, 0], [0, 2, 0], [0, 0, 1]]))
    with pytest.raises(ShapeMismatch):
        eleven_equation_residuals(CommProduct(3, {(1, 1): Vector.unit(3, 1)}),
                                  AutoMatrix.identity(3))


def test_eleven_residuals_equivalence_with_fixed_point():
    # all residuals vanish exactly when the transport fixes the product;
    # checked on random (generically moved) pairs and on the genuinely
    # fixed subspace of a random automorphism
    rng = random.Random(31)
    for _ in range(150):
        p = rand_family_product(rng)
        m = rand_a3_automorphism(rng)
        residuals = eleven_equation_residuals(p, m)
        assert (not any(residuals)) == (transport_product(p, m) == p)

    space = A3_PRODUCT_SPACE
    for _ in range(10):
        m = rand_a3_automorphism(rng)
        columns = []
        for idx in range(9):
            coeffs = [F(1) if j == idx else F(0) for j in range(9)]
            basis_p = space.combination(coeffs)
            moved = transport_product(basis_p, m)
            diff = []
            for (i, j) in ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)):
                diff.extend((moved.basis_product(i, j) - basis_p.basis_product(i, j)))
            columns.append(diff)
        fixed_system = Matrix.from_rows(columns).transpose()
        for vec in kernel_basis(fixed_system):
            fixed_p = space.combination(vec.entries)
            assert transport_product(fixed_p, m) == fixed_p
            assert eleven_equation_residuals(fixed_p, m) == [0] * 11
