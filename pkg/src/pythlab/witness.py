"""Associated exponent sequences and the length-certified family F_n."""
from __future__ import annotations

from dataclasses import dataclass

from .admissibility import is_strictly_admissible
from .polycore import ONE, X, Y, Poly, substitute_power


class SequenceError(ValueError):
    pass


def exponent_ok(f: Poly, r: int) -> bool:
    """f(x, x^r) is non-constant of odd degree, or of even degree with positive leading coefficient."""
    s = substitute_power(f, r)
    if s.is_constant:
        return False
    deg = s.degree
    return deg % 2 == 1 or s.coeff((deg, 0)) > 0


def next_exponent(f: Poly, prior: list[int], scan_bound: int | None = None) -> int:
    """Smallest exponent extending ``prior`` under the growth and sign conditions."""
    lower = (sum(prior) if prior else f.degree) + 1
    bound = scan_bound if scan_bound is not None else sum(prior) + f.degree + 64
    for r in range(lower, bound + 1):
        if exponent_ok(f, r):
            return r
    raise SequenceError(f"no valid exponent in [{lower}, {bound}]; is f strictly admissible?")


def cldr_step(g: Poly, r: int) -> Poly:
    """G = g*(y - x^r)^2 + 1, which has one more square than g when 2r > deg g."""
    if 2 * r <= g.degree:
        raise ValueError(f"need 2r > deg g, got r={r}, deg g={g.degree}")
    return g * (Y - X ** r) ** 2 + 1


@dataclass(frozen=True)
class AssocSequence:
    """Exponents r_1..r_{m-1} and polynomials F_1..F_m built from a base f.

    ``exps[i]`` is the exponent used to pass from ``polys[i]`` to
    ``polys[i + 1]``, so there is always one fewer exponent than polynomial.
    """

    base: Poly
    exps: tuple[int, ...]
    polys: tuple[Poly, ...]

    def __len__(self) -> int:
        return len(self.polys)

    def poly(self, n: int) -> Poly:
        """F_n, 1-based."""
        if not 1 <= n <= len(self.polys):
            raise IndexError(f"F_{n} not built (have F_1..F_{len(self.polys)})")
        return self.polys[n - 1]

    def exponent(self, n: int) -> int:
        """r_n, 1-based."""
        if not 1 <= n <= len(self.exps):
            raise IndexError(f"r_{n} not built (have r_1..r_{len(self.exps)})")
        return self.exps[n - 1]

    def check(self) -> list[str]:
        """Every defining condition, re-checked exactly; returns the violations."""
        bad = []
        f = self.base
        for i, r in enumerate(self.exps):
            floor = f.degree if i == 0 else sum(self.exps[:i])
            if r <= floor:
                bad.append(f"r_{i + 1} = {r} must exceed {floor}")
            if not exponent_ok(f, r):
                bad.append(f"f(x, x^{r}) fails the parity/sign condition")
            if substitute_power(f, r).constant_term != 0:
                bad.append(f"f(x, x^{r}) has nonzero constant term")
        if not self.polys or self.polys[0] != ONE:
            bad.append("F_1 must be 1")
        for i in range(1, len(self.polys)):
            r = self.exps[i - 1]
            if self.polys[i] != self.polys[i - 1] * (Y - X ** r) ** 2 + 1:
                bad.append(f"F_{i + 1} breaks the recurrence")
            if 2 * r <= self.polys[i - 1].degree:
                bad.append(f"2 r_{i} must exceed deg F_{i}")
        return bad

    def to_json(self) -> dict:
        return {
            "f": self.base.to_json(),
            "r": list(self.exps),
            "F": [p.to_json() for p in self.polys],
            "decompositions": [[p.to_json() for p in constructive_decomposition(self, n)]
                               for n in range(1, len(self.polys) + 1)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AssocSequence":
        return cls(Poly.from_json(data["f"]), tuple(int(r) for r in data["r"]),
                   tuple(Poly.from_json(p) for p in data["F"]))


def build_family(f: Poly, m: int) -> AssocSequence:
    if m < 1:
        raise ValueError("m must be at least 1")
    if not is_strictly_admissible(f):
        raise SequenceError("the base polynomial must be strictly admissible")
    exps: list[int] = []
    polys = [ONE]
    while len(polys) < m:
        r = next_exponent(f, exps)
        exps.append(r)
        polys.append(cldr_step(polys[-1], r))
    return AssocSequence(f, tuple(exps), tuple(polys))


def constructive_decomposition(seq: AssocSequence, n: int) -> list[Poly]:
    """n polynomials whose squares sum to F_n."""
    if not 1 <= n <= len(seq.polys):
        raise IndexError(f"index {n} outside 1..{len(seq.polys)}")
    parts = [ONE]
    for i in range(1, n):
        b = Y - X ** seq.exps[i - 1]
        parts = [p * b for p in parts] + [ONE]
    return parts
