"""
Divisor classes on the blow-up X_s of P^3 along s disjoint general lines.

A class is stored as ``(d; m_1, ..., m_s)`` standing for
``d H - m_1 E_1 - ... - m_s E_s``.  The line count ``s`` is the length of
``mults`` and is part of the identity of a class: combining classes that
live on different blow-ups raises.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, EffconeError, UnsupportedError
from .kernel import as_fraction, fraction_str

# Triple intersection numbers on X_s (i != j):
#   H^3 = 1, H^2 E_i = 0, H E_i^2 = -1, E_i^2 E_j = 0, H E_i E_j = 0, E_i^3 = -2.
# E_i^3 = -deg N_{l_i} = -2; this is the value for which (-K)^3 = 64 - 10 s.
H_CUBE = 1
H_E_SQUARED = -1
E_CUBE = -2


@dataclass(frozen=True)
class DivisorClass:
    d: Fraction
    mults: tuple[Fraction, ...]

    def __init__(self, d, mults: Iterable = ()):
        object.__setattr__(self, "d", as_fraction(d))
        object.__setattr__(self, "mults", tuple(as_fraction(m) for m in mults))

    @property
    def s(self) -> int:
        return len(self.mults)

    # construction helpers ---------------------------------------------------

    @classmethod
    def hyperplane(cls, s: int) -> "DivisorClass":
        return cls(1, [0] * s)

    @classmethod
    def exceptional(cls, i: int, s: int) -> "DivisorClass":
        """E_i, with 1-based ``i``."""
        if not 1 <= i <= s:
            raise EffconeError(f"line index {i} out of range 1..{s}")
        m = [0] * s
        m[i - 1] = -1
        return cls(0, m)

    @classmethod
    def from_vector(cls, v: Sequence) -> "DivisorClass":
        if len(v) < 1:
            raise EffconeError("a divisor vector needs at least the degree coordinate")
        return cls(v[0], v[1:])

    def vector(self) -> tuple[Fraction, ...]:
        return (self.d,) + self.mults

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError("expected a DivisorClass")
        if other.s != self.s:
            raise DimensionMismatchError(
                f"classes live on different blow-ups (s={self.s} vs s={other.s})"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.d + other.d,
                            [a + b for a, b in zip(self.mults, other.mults)])

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.d, [-m for m in self.mults])

    def __mul__(self, c) -> "DivisorClass":
        c = as_fraction(c)
        return DivisorClass(c * self.d, [c * m for m in self.mults])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.d == 0 and all(m == 0 for m in self.mults)

    # serialisation --------------------------------------------------------

    def to_dict(self) -> dict:
        return {"s": self.s, "d": fraction_str(self.d),
                "mults": [fraction_str(m) for m in self.mults]}

    @classmethod
    def from_dict(cls, data: dict) -> "DivisorClass":
        mults = data["mults"]
        if int(data["s"]) != len(mults):
            raise DimensionMismatchError(f"s={data['s']} but {len(mults)} multiplicities")
        return cls(data["d"], mults)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "DivisorClass":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        return "(" + fraction_str(self.d) + "; " + ", ".join(map(fraction_str, self.mults)) + ")"


def canonical_class(s: int) -> DivisorClass:
    """K = -4H + E_1 + ... + E_s."""
    if s < 0:
        raise EffconeError("line count must be nonnegative")
    return DivisorClass(-4, [-1] * s)


def anticanonical_class(s: int) -> DivisorClass:
    return -canonical_class(s)


def triple_product(A: DivisorClass, B: DivisorClass, C: DivisorClass) -> Fraction:
    """Trilinear intersection number A.B.C on X_s."""
    A._check(B)
    A._check(C)
    a0, b0, c0 = A.d, B.d, C.d
    total = a0 * b0 * c0 * H_CUBE
    for ai, bi, ci in zip(A.mults, B.mults, C.mults):
        # coefficients of E_i are the negated multiplicities
        ea, eb, ec = -ai, -bi, -ci
        total += (a0 * eb * ec + b0 * ea * ec + c0 * ea * eb) * H_E_SQUARED
        total += ea * eb * ec * E_CUBE
    return total


@dataclass(frozen=True)
class FanoReport:
    s: int
    anticanonical_cube: Fraction
    is_nef: bool
    is_big: bool
    is_weak_fano: bool

    def to_dict(self) -> dict:
        return {"s": self.s, "anticanonical_cube": fraction_str(self.anticanonical_cube),
                "is_nef": self.is_nef, "is_big": self.is_big,
                "is_weak_fano": self.is_weak_fano}


def weak_fano_report(s: int) -> FanoReport:
    """Weak-Fano status of X_s.

    Nefness of -K for s <= 6 is a known theorem rather than something
    recomputed here; bigness of a nef class is positivity of its top
    self-intersection.
    """
    if s < 0:
        raise EffconeError("line count must be nonnegative")
    minus_k = anticanonical_class(s)
    cube = triple_product(minus_k, minus_k, minus_k)
    if cube != 64 - 10 * s:
        raise AssertionError(f"intersection table gives (-K)^3 = {cube} for s={s}")
    is_nef = s <= 6
    is_big = is_nef and cube > 0
    return FanoReport(s=s, anticanonical_cube=cube, is_nef=is_nef, is_big=is_big,
                      is_weak_fano=is_nef and is_big)


def quadric_class(triple: Sequence[int], s: int) -> DivisorClass:
    """2H - E_i - E_j - E_k for a 1-based triple."""
    if len(set(triple)) != 3:
        raise EffconeError(f"quadric needs three distinct lines, got {triple}")
    m = [0] * s
    for i in triple:
        if not 1 <= i <= s:
            raise EffconeError(f"line index {i} out of range 1..{s}")
        m[i - 1] = 1
    return DivisorClass(2, m)


def pencil_class(i: int, s: int) -> DivisorClass:
    """H - E_i: planes through the i-th line."""
    return DivisorClass.hyperplane(s) - DivisorClass.exceptional(i, s)


def anticanonical_splittings(s: int) -> list[list[DivisorClass]]:
    """Decompositions of -K into quadrics and pencils.

    s=5: {Q_abc, H-E_d, H-E_e} for each 3-subset {a,b,c} (10 of them).
    s=6: {Q_abc, Q_def} for each split of the six lines into two triples (10).
    """
    lines = range(1, s + 1)
    out: list[list[DivisorClass]] = []
    if s == 5:
        for triple in itertools.combinations(lines, 3):
            rest = [i for i in lines if i not in triple]
            out.append([quadric_class(triple, s)] + [pencil_class(i, s) for i in rest])
    elif s == 6:
        for triple in itertools.combinations(lines, 3):
            if 1 not in triple:
                continue
            rest = tuple(i for i in lines if i not in triple)
            out.append([quadric_class(triple, s), quadric_class(rest, s)])
    else:
        raise UnsupportedError("anticanonical splittings are listed only for s = 5, 6")
    return out
