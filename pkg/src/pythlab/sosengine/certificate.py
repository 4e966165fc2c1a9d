from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..exact import ldl_psd
from ..polycore import Mono, Poly
from .basis import support_basis

DECOMPOSITION = "Decomposition"
NOT_SOS = "NotSos"
INCONCLUSIVE = "Inconclusive"


def _rat_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class SosCertificate:
    """Exact SOS decomposition, exact not-SOS dual witness, or an honest shrug.

    A decomposition is a list of ``(weight, p)`` with rational ``weight > 0``;
    each entry stands for the real square ``(sqrt(weight) * p)**2``, so the
    number of entries is the number of squares in R[x, y].
    """

    kind: str
    target: Poly
    squares: tuple[tuple[Fraction, Poly], ...] = ()
    dual: Mapping[Mono, Fraction] | None = None
    method: str = ""
    info: dict = field(default_factory=dict, compare=False)

    @property
    def is_decomposition(self) -> bool:
        return self.kind == DECOMPOSITION

    @property
    def is_not_sos(self) -> bool:
        return self.kind == NOT_SOS

    @property
    def count(self) -> int:
        return len(self.squares)

    def polys(self) -> list[Poly]:
        return [p for _, p in self.squares]

    def verify(self) -> bool:
        if self.kind == DECOMPOSITION:
            return verify_decomposition(self.target, self.squares)
        if self.kind == NOT_SOS:
            return self.dual is not None and verify_dual(self.target, self.dual)
        return False

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "target": self.target.to_json(), "method": self.method}
        if self.kind == DECOMPOSITION:
            out["squares"] = [{"weight": _rat_str(w), "poly": p.to_json()} for w, p in self.squares]
        if self.kind == NOT_SOS and self.dual is not None:
            out["dual"] = [{"exps": list(m), "value": _rat_str(v)}
                           for m, v in sorted(self.dual.items())]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SosCertificate":
        target = Poly.from_json(data["target"])
        squares = tuple((Fraction(s["weight"]), Poly.from_json(s["poly"], target.nvars))
                        for s in data.get("squares", ()))
        dual = None
        if "dual" in data:
            dual = {tuple(d["exps"]): Fraction(d["value"]) for d in data["dual"]}
        return cls(data["kind"], target, squares, dual, data.get("method", ""))


def sum_weighted_squares(squares: Sequence[tuple[Fraction, Poly]], nvars: int = 2) -> Poly:
    total = Poly.zero(nvars)
    for w, p in squares:
        total = total + (p * p).scale(w)
    return total


def verify_decomposition(target: Poly, squares: Sequence[tuple[Fraction, Poly]]) -> bool:
    if any(w <= 0 for w, _ in squares):
        return False
    return sum_weighted_squares(squares, target.nvars) == target


def dual_value(target: Poly, dual: Mapping[Mono, Fraction]) -> Fraction | None:
    total = Fraction(0)
    for m, c in target.terms.items():
        if m not in dual:
            return None
        total += c * dual[m]
    return total


def verify_dual(target: Poly, dual: Mapping[Mono, Fraction]) -> bool:
    """Exact check of a not-SOS witness.

    The basis is recomputed from the target, so the check does not trust the
    producer: every SOS representation of the target uses only basis
    monomials, hence ``L(target) >= 0`` whenever the moment matrix is PSD.
    """
    basis = support_basis(target)
    value = dual_value(target, dual)
    if value is None or value >= 0:
        return False
    n = len(basis)
    M = [[Fraction(0)] * n for _ in range(n)]
    for m, pairs in basis.products.items():
        if m not in dual:
            return False
        v = Fraction(dual[m])
        for i, j in pairs:
            M[i][j] = M[j][i] = v
    return ldl_psd(M).psd
