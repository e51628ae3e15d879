"""The sixteen canonical compatible products T1..T16 and case detection.

Every family lives on the standard bracket [e1,e2,e3] = e1.  Families
T1..T8 take parameters (alpha, theta), T9..T12 (gamma, eta), T13..T16
(gamma, xi); one-parameter families carry only their first parameter.

The four case condition sets (on the solved-family coordinates) are:

    case 1:  r = t = 0,  w = -a ≠ 0,  s ≠ 0,  q = 0
    case 2:  r = t = 0,  w = -a ≠ 0,  s ≠ 0,  q ≠ 0
    case 3:  a = w = 0,  r = -t ≠ 0,  q ≠ 0,  s = 0
    case 4:  a = w = 0,  r = -t ≠ 0,  q ≠ 0,  s ≠ 0

and the subcase letter comes from the zero pattern of (g, h, k):
a when g = 0; b when g ≠ 0, h = 0; c when g, h ≠ 0, k = 0; d otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .linalg import rat
from .algebra import CommProduct, FamilyCoordinates, family_coordinates
from .morphisms import AutoMatrix

FAMILY_IDS = tuple(f"T{i}" for i in range(1, 17))

#: parameter names per family, primary parameter first
FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "T1": ("alpha",),
    "T2": ("alpha", "theta"),
    "T3": ("alpha",),
    "T4": ("alpha", "theta"),
    "T5": ("alpha",),
    "T6": ("alpha",),
    "T7": ("alpha",),
    "T8": ("alpha", "theta"),
    "T9": ("gamma",),
    "T10": ("gamma", "eta"),
    "T11": ("gamma",),
    "T12": ("gamma", "eta"),
    "T13": ("gamma",),
    "T14": ("gamma",),
    "T15": ("gamma",),
    "T16": ("gamma", "xi"),
}


@dataclass(frozen=True)
class FamilyInstance:
    """A canonical family id together with exact parameter values."""

    id: str
    params: tuple[tuple[str, Fraction], ...]

    @classmethod
    def make(cls, family_id: str, **params) -> "FamilyInstance":
        if family_id not in FAMILY_PARAMS:
            raise ValueError(f"unknown family id {family_id!r}")
        expected = FAMILY_PARAMS[family_id]
        if set(params) != set(expected):
            raise ValueError(
                f"{family_id} takes parameters {expected}, got {tuple(params)}")
        return cls(family_id, tuple((name, rat(params[name])) for name in expected))

    @property
    def param_map(self) -> dict[str, Fraction]:
        return dict(self.params)

    def __str__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.id}({body})"


@dataclass(frozen=True)
class CaseId:
    """One of the four case condition sets plus subcase letter a..d."""

    case: int
    subcase: str

    def __post_init__(self):
        if self.case not in (1, 2, 3, 4) or self.subcase not in "abcd":
            raise ValueError(f"bad case id {self.case}-{self.subcase}")

    def __str__(self) -> str:
        return f"{self.case}-{self.subcase}"

    @classmethod
    def parse(cls, text: str) -> "CaseId":
        try:
            case_text, sub = text.split("-")
            return cls(int(case_text), sub)
        except (ValueError, TypeError):
            raise ValueError(f"bad case id {text!r}; expected like '2-c'") from None


ALL_CASES = tuple(CaseId(c, s) for c in (1, 2, 3, 4) for s in "abcd")

#: subcase -> family produced by the canonical reduction of that subcase
CASE_FAMILY: dict[str, str] = {
    str(case): f"T{4 * (case.case - 1) + 'abcd'.index(case.subcase) + 1}"
    for case in ALL_CASES
}


def _coords(family_id: str, values: Mapping[str, Fraction]) -> FamilyCoordinates:
    """Solved-family coordinates (g,a,q,h,r,w,k,s,t) of a canonical table."""
    z = Fraction(0)
    if family_id in ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8"):
        al = values["alpha"]
        th = values.get("theta", z)
        table = {
            "T1": (z, al, z, z, z, -al, z, -3 * al, z),
            "T2": (th, al, z, z, z, -al, 3 * th, -3 * al, z),
            "T3": (-2 * al, al, z, 2 * al, z, -al, z, Fraction(-4, 3) * al, z),
            "T4": (th, al, z, al, z, -al, 3 * th + 2 * al, -3 * al, z),
            "T5": (z, al, al, z, z, -al, z, -3 * al, z),
            "T6": (al, al, al, z, z, -al, -3 * al, -3 * al, z),
            "T7": (al, al, al, Fraction(-1, 2) * al, z, -al, z, -3 * al, z),
            "T8": (th, al, al, Fraction(-3, 2) * th, z, -al, 3 * th, -3 * al, z),
        }[family_id]
    else:
        ga = values["gamma"]
        et = values.get("eta", z)
        xi = values.get("xi", z)
        table = {
            "T9": (z, z, -3 * ga, z, -ga, z, z, z, ga),
            "T10": (3 * et, z, -3 * ga, z, -ga, z, et, z, ga),
            "T11": (4 * ga, z, -3 * ga, 2 * ga, -ga, z, z, z, ga),
            "T12": (3 * et, z, -3 * ga, 2 * ga, -ga, z, et, z, ga),
            "T13": (z, z, -3 * ga, z, -ga, z, z, ga, ga),
            "T14": (2 * ga, z, -3 * ga, z, -ga, z, -ga, ga, ga),
            "T15": (-3 * ga, z, -3 * ga, ga, -ga, z, z, ga, ga),
            "T16": (-2 * xi, z, -3 * ga, xi, -ga, z, Fraction(-2, 3) * xi, ga, ga),
        }[family_id]
    return FamilyCoordinates(*table)


def instantiate_family(f: FamilyInstance) -> CommProduct:
    """The exact product table of a canonical family instance."""
    if f.id not in FAMILY_PARAMS:
        raise ValueError(f"unknown family id {f.id!r}")
    return _coords(f.id, f.param_map).as_product()


def detect_case(p: CommProduct) -> Optional[CaseId]:
    """Match ``p`` against the four case condition sets, in order.

    Returns None when no set matches (such products are outside the scope
    of the canonical classification).  Raises ShapeMismatch when ``p`` is
    not in the solved compatible family at all.
    """
    c = family_coordinates(p)
    case: Optional[int] = None
    if c.r == 0 and c.t == 0 and c.w == -c.a and c.a != 0 and c.s != 0:
        case = 1 if c.q == 0 else 2
    elif c.a == 0 and c.w == 0 and c.r == -c.t and c.r != 0 and c.q != 0:
        case = 3 if c.s == 0 else 4
    if case is None:
        return None
    if c.g == 0:
        sub = "a"
    elif c.h == 0:
        sub = "b"
    elif c.k == 0:
        sub = "c"
    else:
        sub = "d"
    return CaseId(case, sub)


def _auto(rows) -> AutoMatrix:
    return AutoMatrix.from_rows(rows)


_H = Fraction(1, 2)
_Q3 = Fraction(3, 4)
_T = Fraction(3, 2)

#: the canonical automorphism witness of each subcase; each one fixes every
#: instance of the subcase's family (a tested property)
CANONICAL_AUTOMORPHISM: dict[str, AutoMatrix] = {
    "1-a": _auto([[1, 0, 0], [0, -_H, _H], [0, -_T, -_H]]),
    "1-b": _auto([[1, 0, 0], [0, -_H, _H], [0, -_T, -_H]]),
    "1-c": _auto([[1, 0, 0], [3, -_H, -_Q3], [2, 1, -_H]]),
    "1-d": _auto([[1, 0, 0], [0, -_H, _H], [2, -_T, -_H]]),
    "2-a": _auto([[1, 0, 0], [0, -2, -1], [0, 3, 1]]),
    "2-b": _auto([[1, 0, 0], [-3, -2, -1], [3, 3, 1]]),
    "2-c": _auto([[1, 0, 0], [-2, -2, -1], [3, 3, 1]]),
    "2-d": _auto([[1, 0, 0], [0, -2, -1], [0, 3, 1]]),
    "3-a": _auto([[1, 0, 0], [0, -_H, _T], [0, -_H, -_H]]),
    "3-b": _auto([[1, 0, 0], [0, -_H, -_T], [0, _H, -_H]]),
    "3-c": _auto([[1, 0, 0], [2, -_H, _T], [2, -_H, -_H]]),
    "3-d": _auto([[1, 0, 0], [3, -_H, -_T], [-1, _H, -_H]]),
    "4-a": _auto([[1, 0, 0], [0, -2, -3], [0, 1, 1]]),
    "4-b": _auto([[1, 0, 0], [1, -2, -3], [1, 1, 1]]),
    "4-c": _auto([[1, 0, 0], [0, -2, -3], [-1, 1, 1]]),
    "4-d": _auto([[1, 0, 0], [0, -2, -3], [0, 1, 1]]),
}
