"""Automorphism checks and transport of products and brackets.

A linear map φ is stored in the row convention: row i of the matrix holds
the coordinates of φ(e_i), so coordinate rows transform as x ↦ x·Λ.

Transport is the push-forward: the transported product is

    x ∗ y = φ(φ⁻¹(x) · φ⁻¹(y)),

which makes φ an isomorphism from the input algebra to the output algebra.
In this row convention the push-forward satisfies

    transport(p, a·b) = transport(transport(p, a), b)

(matrix product a·b transports like "apply a first").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import (DimensionMismatch, Matrix, Singular, determinant,
                     invert, vec_mat)
from .algebra import (CheckReport, CommProduct, TriBracket, Violation,
                      bracket_eval, family_coordinates, product_eval)


class NotAutomorphism(ValueError):
    """The supplied map is not an automorphism of the standard bracket."""


@dataclass(frozen=True)
class AutoMatrix:
    """An invertible linear map in the row convention φ(e_i) = Σ_j Λ_ij e_j."""

    map: Matrix

    def __post_init__(self):
        if not self.map.is_square():
            raise DimensionMismatch("automorphism matrices must be square")
        if determinant(self.map) == 0:
            raise Singular("automorphism matrices must be invertible")

    @property
    def dim(self) -> int:
        return self.map.rows

    @classmethod
    def from_rows(cls, rows) -> "AutoMatrix":
        return cls(Matrix.from_rows(rows))

    @classmethod
    def identity(cls, n: int) -> "AutoMatrix":
        return cls(Matrix.identity(n))

    def inverse(self) -> "AutoMatrix":
        return AutoMatrix(invert(self.map))


def is_bracket_automorphism(b: TriBracket, m: AutoMatrix) -> CheckReport:
    """Check φ[e_i,e_j,e_k] = [φe_i, φe_j, φe_k] on all increasing triples.

    Skewness makes increasing triples exhaustive; the per-triple difference
    of the two sides is exactly the structure-constant residual of the
    automorphism condition.
    """
    if b.dim != m.dim:
        raise DimensionMismatch("bracket and map dimensions differ")
    violations = []
    images = [m.map.row(i) for i in range(b.dim)]
    for (i, j, k) in combinations(range(1, b.dim + 1), 3):
        left = bracket_eval(b, images[i - 1], images[j - 1], images[k - 1])
        right = vec_mat(b.basis_bracket(i, j, k), m.map)
        if left != right:
            violations.append(Violation((i, j, k), left, right))
    return CheckReport(tuple(violations))


def a3_automorphism_check(m: AutoMatrix) -> bool:
    """Closed-form automorphism test for the standard 3-dimensional bracket:
    Λ12 = Λ13 = 0, Λ11 ≠ 0, and Λ22·Λ33 − Λ23·Λ32 = 1."""
    if m.dim != 3:
        raise DimensionMismatch("this check is specific to dimension 3")
    e = m.map.entry
    return (e(0, 1) == 0 and e(0, 2) == 0 and e(0, 0) != 0
            and e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1) == 1)


def transport_product(p: CommProduct, m: AutoMatrix) -> CommProduct:
    """Push-forward of a commutative product along an invertible map."""
    if p.dim != m.dim:
        raise DimensionMismatch("product and map dimensions differ")
    inv = invert(m.map)
    pre = [inv.row(i) for i in range(p.dim)]
    table = {}
    for i in range(1, p.dim + 1):
        for j in range(i, p.dim + 1):
            value = vec_mat(product_eval(p, pre[i - 1], pre[j - 1]), m.map)
            if not value.is_zero():
                table[(i, j)] = value
    return CommProduct(p.dim, table)


def transport_bracket(b: TriBracket, m: AutoMatrix) -> TriBracket:
    """Push-forward of a skew ternary bracket along an invertible map."""
    if b.dim != m.dim:
        raise DimensionMismatch("bracket and map dimensions differ")
    inv = invert(m.map)
    pre = [inv.row(i) for i in range(b.dim)]
    table = {}
    for (i, j, k) in combinations(range(1, b.dim + 1), 3):
        value = vec_mat(bracket_eval(b, pre[i - 1], pre[j - 1], pre[k - 1]), m.map)
        if not value.is_zero():
            table[(i, j, k)] = value
    return TriBracket(b.dim, table)


def eleven_equation_residuals(p: CommProduct, m: AutoMatrix) -> list[Fraction]:
    """Left-minus-right of the eleven structure-constant equations stating
    that the map fixes a solved-family product.

    All residuals vanish exactly when ``transport_product(p, m) == p``; the
    two formulations are kept independent and their agreement is a tested
    property.  Requires ``p`` in the solved family and ``m`` an automorphism
    of the standard bracket.
    """
    c = family_coordinates(p)
    if not a3_automorphism_check(m):
        raise NotAutomorphism("map fails the standard-bracket automorphism conditions")
    g, a, q, h, r, w, k, s, t = c.g, c.a, c.q, c.h, c.r, c.w, c.k, c.s, c.t
    e = m.map.entry
    l11 = e(0, 0)
    l21, l22, l23 = e(1, 0), e(1, 1), e(1, 2)
    l31, l32, l33 = e(2, 0), e(2, 1), e(2, 2)
    dbl = 2 * l22 * l33 - 1
    return [
        # e1-row couplings of the fixed-product condition
        (a + w) - (l33 * (a + w) - l23 * (r + t)),
        (r + t) - (-l32 * (a + w) + l22 * (r + t)),
        # e2,e3 components of e2·e2, e2·e3, e3·e3
        a - (l22 * l22 * l33 * a - l22 * l22 * l32 * q + 2 * l22 * l23 * l33 * r
             - 2 * l22 * l23 * l32 * w + l23 * l23 * l33 * s - l23 * l23 * l32 * t),
        q - (-l22 * l22 * l23 * a + l22 * l22 * l22 * q - 2 * l22 * l23 * l23 * r
             + 2 * l22 * l22 * l23 * w - l23 * l23 * l23 * s + l22 * l23 * l23 * t),
        r - (l22 * l32 * l33 * a - l22 * l32 * l32 * q + l33 * dbl * r
             - l32 * dbl * w + l23 * l33 * l33 * s - l23 * l32 * l33 * t),
        w - (-l22 * l23 * l32 * a + l22 * l22 * l32 * q - l23 * dbl * r
             + l22 * dbl * w - l23 * l23 * l33 * s + l22 * l23 * l33 * t),
        s - (l32 * l32 * l33 * a - l32 * l32 * l32 * q + 2 * l32 * l33 * l33 * r
             - 2 * l32 * l32 * l33 * w + l33 * l33 * l33 * s - l32 * l33 * l33 * t),
        t - (-l23 * l32 * l32 * a + l22 * l32 * l32 * q - 2 * l23 * l32 * l33 * r
             + 2 * l22 * l32 * l33 * w - l23 * l33 * l33 * s + l22 * l33 * l33 * t),
        # e1 components of e2·e2, e2·e3, e3·e3
        g - (l22 * l22 * g - l31 * q + l21 * w + 2 * l22 * l23 * h
             + l23 * l23 * k) / l11,
        h - ((l31 * (a - w) + l21 * (t - r)) / 2 + l22 * l32 * g
             + (l22 * l33 + l23 * l32) * h + l23 * l33 * k) / l11,
        k - (l32 * l32 * g + 2 * l32 * l33 * h + l31 * r + l33 * l33 * k
             - l21 * s) / l11,
    ]
