"""Structural operations on bivariate polynomials."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .linmap import LinMap
from .poly import Poly, mono_order_key


def _require_bivariate(f: Poly, what: str) -> Poly:
    if f.nvars == 3:
        if f.uses_var(2):
            raise ValueError(f"{what} needs a polynomial in x, y only")
        return f.lift(2)
    if f.nvars == 1:
        return f.lift(2)
    return f


def compose_linear(f: Poly, M: LinMap) -> Poly:
    """Return ``f(a*x + b*y, c*x + d*y)`` expanded exactly."""
    f = _require_bivariate(f, "compose_linear")
    if M.det == 0:
        raise ValueError("singular matrix")
    if f.is_zero:
        return f
    X = Poly({(1, 0): M.a, (0, 1): M.b})
    Y = Poly({(1, 0): M.c, (0, 1): M.d})
    dx, dy = f.degree_in(0), f.degree_in(1)
    xp = [Poly.const(1)]
    for _ in range(dx):
        xp.append(xp[-1] * X)
    yp = [Poly.const(1)]
    for _ in range(dy):
        yp.append(yp[-1] * Y)
    acc: dict = {}
    for (i, j), c in f.terms.items():
        for m, v in (xp[i] * yp[j]).terms.items():
            acc[m] = acc.get(m, 0) + c * v
    return Poly(acc)


def substitute_power(f: Poly, r: int) -> Poly:
    """Return f(x, x^r) as a polynomial in x (y-exponents all zero)."""
    f = _require_bivariate(f, "substitute_power")
    if r < 1:
        raise ValueError("r must be a positive integer")
    acc: dict = {}
    for (i, j), c in f.terms.items():
        m = (i + r * j, 0)
        acc[m] = acc.get(m, 0) + c
    return Poly(acc)


def divide_binomial(f: Poly, r: int) -> tuple[Poly, Poly]:
    """Divide by the y-monic binomial ``y - x^r``.

    Returns ``(q, s)`` with ``f == q*(y - x^r) + s`` and ``s == f(x, x^r)``.
    Synthetic division in y over Q[x].
    """
    f = _require_bivariate(f, "divide_binomial")
    if r < 1:
        raise ValueError("r must be a positive integer")
    dy = f.degree_in(1)
    if dy <= 0:
        return Poly.zero(), f
    # coefficient polynomials c_j(x) of y^j, stored as {x-exponent: coef}
    rows: list[dict[int, Fraction]] = [dict() for _ in range(dy + 1)]
    for (i, j), c in f.terms.items():
        rows[j][i] = c
    q_rows: list[dict[int, Fraction]] = [dict() for _ in range(dy)]
    carry: dict[int, Fraction] = {}
    for j in range(dy, 0, -1):
        cur = dict(rows[j])
        for i, c in carry.items():
            cur[i + r] = cur.get(i + r, 0) + c
        q_rows[j - 1] = {i: c for i, c in cur.items() if c}
        carry = q_rows[j - 1]
    rem = dict(rows[0])
    for i, c in carry.items():
        rem[i + r] = rem.get(i + r, 0) + c
    q = Poly({(i, j): c for j, row in enumerate(q_rows) for i, c in row.items()})
    s = Poly({(i, 0): c for i, c in rem.items()})
    return q, s


def leading_block(f: Poly) -> tuple[int, int, Fraction]:
    """Return ``(b, d, alpha)``: d = deg_y f, b the largest x-exponent beside y^d."""
    f = _require_bivariate(f, "leading_block")
    if f.is_zero:
        raise ValueError("zero polynomial has no leading block")
    d = f.degree_in(1)
    b = max(m[0] for m in f.terms if m[1] == d)
    return b, d, f.coeff((b, d))


def top_form(f: Poly) -> Poly:
    """Homogeneous component of top total degree."""
    if f.is_zero:
        raise ValueError("zero polynomial has no top form")
    deg = f.degree
    return Poly({m: c for m, c in f.terms.items() if sum(m) == deg}, f.nvars)


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    n, d = isqrt(c.numerator), isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


def is_perfect_square(f: Poly) -> Poly | None:
    """Exact square root over Q, or None.

    The root is normalized to a positive leading coefficient in graded-lex
    order.  Term-by-term extraction: each new root term is the leading term
    of the remainder divided by twice the leading root term.
    """
    if f.is_zero:
        return Poly.zero(f.nvars)
    lead_m, lead_c = f.leading_term()
    if any(e % 2 for e in lead_m):
        return None
    c0 = _rational_sqrt(lead_c)
    if c0 is None:
        return None
    t0_m = tuple(e // 2 for e in lead_m)
    root = Poly({t0_m: c0}, f.nvars)
    rem = f - root * root
    two_t0 = 2 * c0
    while not rem.is_zero:
        m, c = rem.leading_term()
        if any(a < b for a, b in zip(m, t0_m)):
            return None
        tm = tuple(a - b for a, b in zip(m, t0_m))
        if mono_order_key(tm) >= mono_order_key(t0_m):
            return None
        term = Poly({tm: c / two_t0}, f.nvars)
        rem = rem - (2 * root + term) * term
        root = root + term
    return root


def real_square_root(f: Poly) -> tuple[Fraction, Poly] | None:
    """Write ``f = w * g**2`` with rational ``w > 0``, i.e. f is a square over R.

    ``g`` is monic in graded-lex order.  Returns None otherwise (zero gives None).
    """
    if f.is_zero:
        return None
    _, lead = f.leading_term()
    if lead <= 0:
        return None
    g = is_perfect_square(f.scale(1 / lead))
    if g is None:
        return None
    return lead, g


def exact_quotient(f: Poly, g: Poly) -> Poly | None:
    """q with f == q*g, or None when g does not divide f."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    gm, gc = g.leading_term()
    q: dict = {}
    rem = f
    while not rem.is_zero:
        rm, rc = rem.leading_term()
        shift = tuple(a - b for a, b in zip(rm, gm))
        if min(shift) < 0:
            return None
        t = Poly({shift: rc / gc}, f.nvars)
        q[shift] = rc / gc
        rem = rem - t * g
    return Poly(q, f.nvars)
