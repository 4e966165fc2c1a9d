from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import as_rat


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class LinMap:
    """Invertible 2x2 rational matrix acting on the column vector (x, y)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rat(getattr(self, name)))
        if self.det == 0:
            raise SingularMatrixError(f"matrix {self.rows()} is singular")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LinMap":
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 matrix")
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "LinMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls) -> "LinMap":
        return cls(0, 1, 1, 0)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "LinMap":
        det = self.det
        return LinMap(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return LinMap(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def apply(self, point: Sequence) -> tuple[Fraction, Fraction]:
        x, y = (as_rat(v) for v in point)
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    @property
    def height(self) -> int:
        return max(max(abs(v.numerator), v.denominator) for v in (self.a, self.b, self.c, self.d))

    def rows(self) -> list[list[Fraction]]:
        return [[self.a, self.b], [self.c, self.d]]

    def to_json(self) -> list[list[str]]:
        return [[_rat_str(v) for v in row] for row in self.rows()]

    @classmethod
    def from_json(cls, data) -> "LinMap":
        return cls.from_rows([[Fraction(v) for v in row] for row in data])

    def __str__(self) -> str:
        return "[[{}, {}], [{}, {}]]".format(*(_rat_str(v) for v in (self.a, self.b, self.c, self.d)))


def _rat_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
