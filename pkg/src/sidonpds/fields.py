"""Exact arithmetic in GF(p^d) with polynomial-basis elements.

An element of GF(p^d) is a length-d tuple of residues mod p, constant
term first, reduced modulo a fixed monic irreducible polynomial.  All
construction choices are deterministic: the modulus is the first
irreducible polynomial in an ascending coefficient scan, and primitive
elements are found by an ascending scan as well, so repeated runs build
bit-identical fields.  Fields here are small (order at most 343^3), so
everything uses plain integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt


@dataclass(frozen=True)
class PrimePower:
    """Decomposition q = p^m with p prime, m >= 1."""

    q: int
    p: int
    m: int


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for i in range(2, isqrt(n) + 1):
        if n % i == 0:
            return False
    return True


def is_prime_power(q: int) -> PrimePower | None:
    """Return the (unique) decomposition q = p^m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = q
    for i in range(2, isqrt(q) + 1):
        if q % i == 0:
            p = i
            break
    n, m = q, 0
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        return None
    return PrimePower(q, p, m)


def factorize(n: int) -> list[int]:
    """Prime factors of n with multiplicity, ascending, by trial division."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p): lists of coefficients, constant term first.


def _poly_deg(a: list[int]) -> int:
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _poly_mul(a, b, p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_rem(a, mod, p: int) -> list[int]:
    # mod must be monic
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                if mod[j]:
                    a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    a = a[:dm]
    while len(a) < dm:
        a.append(0)
    return a


def _poly_mulmod(a, b, mod, p: int) -> list[int]:
    return _poly_rem(_poly_mul(a, b, p), mod, p)


def _poly_powmod(a, e: int, mod, p: int) -> list[int]:
    d = len(mod) - 1
    r = [1] + [0] * (d - 1)
    base = _poly_rem(a, mod, p)
    while e:
        if e & 1:
            r = _poly_mulmod(r, base, mod, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, mod, p)
    return r


def _poly_gcd(a, b, p: int) -> list[int]:
    a, b = list(a), list(b)
    while _poly_deg(b) >= 0:
        da, db = _poly_deg(a), _poly_deg(b)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[db], -1, p)
        while da >= db:
            c = (a[da] * inv) % p
            if c:
                for j in range(db + 1):
                    a[da - db + j] = (a[da - db + j] - c * b[j]) % p
            da = _poly_deg(a)
        a, b = b, a
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Monic f is irreducible iff it shares no factor with x^(p^k) - x for k <= deg/2."""
    d = _poly_deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False  # divisible by x
    r = [0, 1]
    for _ in range(d // 2):
        r = _poly_powmod(r, p, f, p)
        diff = list(r)
        diff[1] = (diff[1] - 1) % p
        if _poly_deg(_poly_gcd(f, diff, p)) > 0:
            return False
    return True


def _coeffs_from_int(n: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        out.append(n % p)
        n //= p
    return out


def _first_irreducible(p: int, d: int) -> tuple[int, ...]:
    """First monic irreducible of degree d over GF(p), scanning low coefficients ascending."""
    for n in range(p**d):
        f = _coeffs_from_int(n, p, d) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise ArithmeticError(f"no irreducible polynomial of degree {d} over GF({p})")


# ---------------------------------------------------------------------------
# Field contexts and element operations.


@dataclass(frozen=True)
class FieldCtx:
    """Ambient description of GF(p^degree).

    modulus is monic of length degree+1; group_order_factorization lists the
    prime factors of p^degree - 1 with multiplicity.
    """

    p: int
    degree: int
    modulus: tuple[int, ...]
    group_order_factorization: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.degree


@lru_cache(maxsize=None)
def field_ctx(p: int, degree: int) -> FieldCtx:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    modulus = _first_irreducible(p, degree)
    fac = tuple(factorize(p**degree - 1)) if p**degree > 2 else ()
    return FieldCtx(p, degree, modulus, fac)


def zero(ctx: FieldCtx) -> tuple[int, ...]:
    return (0,) * ctx.degree


def one(ctx: FieldCtx) -> tuple[int, ...]:
    return (1,) + (0,) * (ctx.degree - 1)


def elem_from_int(ctx: FieldCtx, n: int) -> tuple[int, ...]:
    """Decode the base-p digit encoding n = sum coeffs[j] * p^j."""
    if not 0 <= n < ctx.order:
        raise ValueError(f"encoding {n} out of range for field of order {ctx.order}")
    return tuple(_coeffs_from_int(n, ctx.p, ctx.degree))


def elem_to_int(ctx: FieldCtx, a: tuple[int, ...]) -> int:
    n = 0
    for c in reversed(a):
        n = n * ctx.p + c
    return n


def field_add(ctx: FieldCtx, a, b) -> tuple[int, ...]:
    p = ctx.p
    return tuple((x + y) % p for x, y in zip(a, b))


def field_neg(ctx: FieldCtx, a) -> tuple[int, ...]:
    p = ctx.p
    return tuple((-x) % p for x in a)


def field_sub(ctx: FieldCtx, a, b) -> tuple[int, ...]:
    p = ctx.p
    return tuple((x - y) % p for x, y in zip(a, b))


def field_mul(ctx: FieldCtx, a, b) -> tuple[int, ...]:
    return tuple(_poly_mulmod(list(a), list(b), list(ctx.modulus), ctx.p))


def field_pow(ctx: FieldCtx, a, e: int) -> tuple[int, ...]:
    if e < 0:
        raise ValueError("negative exponent; use field_inv")
    return tuple(_poly_powmod(list(a), e, list(ctx.modulus), ctx.p))


def field_inv(ctx: FieldCtx, a) -> tuple[int, ...]:
    if a == zero(ctx):
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return field_pow(ctx, a, ctx.order - 2)


def multiplicative_order(ctx: FieldCtx, a) -> int:
    """Exact order of a in the multiplicative group, via the cached factorization."""
    if a == zero(ctx):
        raise ValueError("zero is not in the multiplicative group")
    e = ctx.order - 1
    for r in sorted(set(ctx.group_order_factorization)):
        while e % r == 0 and field_pow(ctx, a, e // r) == one(ctx):
            e //= r
    return e


def find_primitive_element(ctx: FieldCtx) -> tuple[int, ...]:
    """First generator of the multiplicative group in ascending encoding order.

    For extension fields the scan starts at the element x (encoding p): the
    constants below it lie in the prime field and can never generate.  The
    order test checks g^((p^d-1)/r) != 1 for every prime r dividing p^d - 1.
    """
    n_max = ctx.order
    group = n_max - 1
    primes = sorted(set(ctx.group_order_factorization))
    start = ctx.p if ctx.degree > 1 else 1
    unit = one(ctx)
    for n in range(start, n_max):
        g = elem_from_int(ctx, n)
        if all(field_pow(ctx, g, group // r) != unit for r in primes):
            return g
    raise ArithmeticError(f"no primitive element found in GF({ctx.p}^{ctx.degree})")


def trace_to_base(ctx: FieldCtx, sub_degree: int, a) -> tuple[int, ...]:
    """Trace of a down to the subfield GF(p^sub_degree): sum of a^(q^i), q = p^sub_degree.

    The result is checked to be fixed by the q-power Frobenius, i.e. it lies
    in the subfield.
    """
    if sub_degree < 1 or ctx.degree % sub_degree != 0:
        raise ValueError(f"sub_degree {sub_degree} does not divide degree {ctx.degree}")
    q = ctx.p**sub_degree
    acc = a
    cur = a
    for _ in range(ctx.degree // sub_degree - 1):
        cur = field_pow(ctx, cur, q)
        acc = field_add(ctx, acc, cur)
    if field_pow(ctx, acc, q) != acc:
        raise ArithmeticError("trace result not fixed by the subfield Frobenius")
    return acc


# ---------------------------------------------------------------------------
# Linear views used by high-throughput loops: multiplication by a fixed
# element and the subfield trace are GF(p)-linear maps on coefficient
# vectors, so long scans can run as small matrix-vector products.


def multiplication_matrix(ctx: FieldCtx, g) -> tuple[tuple[int, ...], ...]:
    """Rows M with (M s)_i = coefficient i of g*s, for s a coefficient vector."""
    d = ctx.degree
    mod = list(ctx.modulus)
    cols = []
    cur = list(g)
    for _ in range(d):
        cols.append(list(cur))
        cur = _poly_rem([0] + cur, mod, ctx.p)
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


def _row_reduce(rows: list[list[int]], p: int) -> list[tuple[int, ...]]:
    rows = [r[:] for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(ncols):
        sel = next((r for r in range(rank, len(rows)) if rows[r][c] % p), None)
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return [tuple(r) for r in rows[:rank]]


def subfield_trace_rows(ctx: FieldCtx, sub_degree: int) -> tuple[tuple[int, ...], ...]:
    """Independent rows T with: trace of a to GF(p^sub_degree) is zero iff T a = 0."""
    d = ctx.degree
    cols = []
    for j in range(d):
        basis = tuple(1 if i == j else 0 for i in range(d))
        cols.append(trace_to_base(ctx, sub_degree, basis))
    rows = [[cols[j][i] for j in range(d)] for i in range(d)]
    return tuple(_row_reduce(rows, ctx.p))
