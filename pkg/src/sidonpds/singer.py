"""Singer perfect difference sets in Z_{q^2+q+1}, built two independent ways.

For a prime power q the points of the projective plane over GF(q) can be
indexed by powers of a generator g of GF(q^3)*: residues i mod v, with
v = q^2 + q + 1, since g^v generates the subfield GF(q)*.  The residues
where the GF(q^3)->GF(q) trace of g^i vanishes form a line of the plane and
hence a perfect difference set of size q+1 (the trace-zero construction).

The cross-check construction runs a degree-3 linear recurrence over GF(q)
whose characteristic polynomial is primitive: over one full period q^3 - 1
the sequence has exactly q^2 - 1 zero positions, and those positions
collapse mod v onto exactly q+1 residues forming a perfect difference set
in the same affine orbit.  The two constructions are compared with
affine_equivalent, which searches the group (Z_v)* x Z_v directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .fields import (
    elem_from_int,
    elem_to_int,
    factorize,
    field_ctx,
    field_mul,
    find_primitive_element,
    is_prime_power,
    multiplication_matrix,
    one,
    subfield_trace_rows,
)
from .sidon import verify_pds

METHOD_TRACE = "trace_zero"
METHOD_RECURRENCE = "cubic_recurrence"


class InvalidCoefficientsError(ValueError):
    """Raised when recurrence coefficients do not have a primitive characteristic cubic."""


@dataclass(frozen=True)
class SingerPds:
    """A Singer perfect difference set of size q+1 in Z_v, v = q^2+q+1."""

    q: int
    v: int
    elems: tuple[int, ...]
    method: str


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Coefficients (a1, a2, a3) of x_k = a1 x_{k-1} + a2 x_{k-2} + a3 x_{k-3} over GF(q).

    Values are integer-encoded field elements (base-p digit encoding).  The
    characteristic cubic t^3 - a1 t^2 - a2 t - a3 must be primitive.
    """

    q: int
    a1: int
    a2: int
    a3: int


def singer_pds_trace(q: int) -> SingerPds:
    """Trace-zero Singer construction: residues i in [0, v) with Tr(g^i) = 0."""
    pp = is_prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    ctx = field_ctx(pp.p, 3 * pp.m)
    g = find_primitive_element(ctx)
    v = q * q + q + 1
    elems = tuple(_trace_zero_indices(ctx, g, pp.m, v))
    if len(elems) != q + 1 or not verify_pds(elems, v):
        raise ArithmeticError(f"trace-zero set for q={q} is not a perfect difference set")
    return SingerPds(q, v, elems, METHOD_TRACE)


def _trace_zero_indices(ctx, g, sub_degree: int, count: int) -> list[int]:
    """Indices i < count with trace of g^i to GF(p^sub_degree) equal to zero.

    Runs the power iteration as matrix-vector products on coefficient
    vectors; both multiplication by g and the trace are GF(p)-linear.
    """
    p = ctx.p
    d = ctx.degree
    mul_rows = multiplication_matrix(ctx, g)
    t_rows = subfield_trace_rows(ctx, sub_degree)
    s = list(one(ctx))
    idx = range(d)
    out = []
    for i in range(count):
        for row in t_rows:
            acc = 0
            for j in idx:
                acc += row[j] * s[j]
            if acc % p:
                break
        else:
            out.append(i)
        s = [sum(row[j] * s[j] for j in idx) % p for row in mul_rows]
    return out


# ---------------------------------------------------------------------------
# GF(q) lookup tables for the recurrence path.  Elements are integer-encoded
# (base-p digits); fields are tiny, so full q x q tables are cheap.


@lru_cache(maxsize=None)
def _gf_tables(q: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    pp = is_prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    if pp.m == 1:
        add = tuple(tuple((i + j) % q for j in range(q)) for i in range(q))
        mul = tuple(tuple((i * j) % q for j in range(q)) for i in range(q))
        return add, mul
    ctx = field_ctx(pp.p, pp.m)
    elems = [elem_from_int(ctx, n) for n in range(q)]
    p = pp.p
    add = tuple(
        tuple(elem_to_int(ctx, tuple((x + y) % p for x, y in zip(a, b))) for b in elems)
        for a in elems
    )
    mul = tuple(tuple(elem_to_int(ctx, field_mul(ctx, a, b)) for b in elems) for a in elems)
    return add, mul


def _gf_neg(q: int, a: int) -> int:
    add = _gf_tables(q)[0]
    row = add[a]
    for x in range(q):
        if row[x] == 0:
            return x
    raise AssertionError("additive inverse missing")


def _cubic_mulmod(a, b, reduce_row, add, mul):
    # product of degree-<3 polynomials over GF(q), reduced via
    # t^3 = reduce_row[2] t^2 + reduce_row[1] t + reduce_row[0]
    prod = [0] * 5
    for i in range(3):
        ai = a[i]
        if ai:
            row = mul[ai]
            for j in range(3):
                if b[j]:
                    prod[i + j] = add[prod[i + j]][row[b[j]]]
    for deg in (4, 3):
        c = prod[deg]
        if c:
            prod[deg] = 0
            row = mul[c]
            for j in range(3):
                if reduce_row[j]:
                    prod[deg - 3 + j] = add[prod[deg - 3 + j]][row[reduce_row[j]]]
    return prod[:3]


def _char_poly_is_primitive(q: int, a1: int, a2: int, a3: int) -> bool:
    """Is t^3 - a1 t^2 - a2 t - a3 primitive over GF(q)?

    Primitive means irreducible with a root of full order q^3 - 1.  A cubic
    is irreducible iff it has no root in GF(q); the order condition is
    t^(q^3-1) = 1 with t^((q^3-1)/r) != 1 for every prime r | q^3 - 1,
    computed in GF(q)[t] modulo the cubic.
    """
    add, mul = _gf_tables(q)
    reduce_row = (a3, a2, a1)
    f = (_gf_neg(q, a3), _gf_neg(q, a2), _gf_neg(q, a1))
    for x in range(q):
        acc = add[x][f[2]]
        acc = add[mul[acc][x]][f[1]]
        acc = add[mul[acc][x]][f[0]]
        if acc == 0:
            return False
    group = q**3 - 1

    def powmod(e: int):
        r = [1, 0, 0]
        b = [0, 1, 0]
        while e:
            if e & 1:
                r = _cubic_mulmod(r, b, reduce_row, add, mul)
            e >>= 1
            if e:
                b = _cubic_mulmod(b, b, reduce_row, add, mul)
        return r

    if powmod(group) != [1, 0, 0]:
        return False
    return all(powmod(group // r) != [1, 0, 0] for r in sorted(set(factorize(group))))


def find_primitive_coeffs(q: int, *, rng=None, max_trials: int = 100_000) -> RecurrenceCoeffs:
    """First primitive coefficient triple in ascending (a1, a2, a3) order.

    Primitive cubics exist over every GF(q), so the deterministic scan always
    succeeds.  Passing an rng samples random triples instead, mirroring a
    randomized sanity-check style; max_trials only bounds that mode.
    """
    if is_prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    if rng is not None:
        for _ in range(max_trials):
            a1 = rng.randrange(q)
            a2 = rng.randrange(q)
            a3 = rng.randrange(1, q)
            if _char_poly_is_primitive(q, a1, a2, a3):
                return RecurrenceCoeffs(q, a1, a2, a3)
        raise InvalidCoefficientsError(f"no primitive triple found in {max_trials} samples")
    for a1 in range(q):
        for a2 in range(q):
            for a3 in range(1, q):  # a3 = 0 would make t a root
                if _char_poly_is_primitive(q, a1, a2, a3):
                    return RecurrenceCoeffs(q, a1, a2, a3)
    raise InvalidCoefficientsError(f"no primitive cubic over GF({q})")


def singer_pds_recurrence(q: int, coeffs: RecurrenceCoeffs) -> SingerPds:
    """Zero positions of the recurrence x_k = a1 x_{k-1} + a2 x_{k-2} + a3 x_{k-3}.

    Seeded with (x_0, x_1, x_2) = (0, 0, 1), iterated over the full period
    q^3 - 1.  With a primitive characteristic cubic there are exactly
    q^2 - 1 zero positions and they collapse mod v onto q+1 residues that
    form a perfect difference set; any failed count means the coefficients
    were not primitive.
    """
    if coeffs.q != q:
        raise ValueError(f"coefficients are for q={coeffs.q}, not q={q}")
    add, mul = _gf_tables(q)
    for a in (coeffs.a1, coeffs.a2, coeffs.a3):
        if not 0 <= a < q:
            raise ValueError(f"coefficient {a} out of range for GF({q})")
    v = q * q + q + 1
    period = q**3 - 1
    m1, m2, m3 = mul[coeffs.a1], mul[coeffs.a2], mul[coeffs.a3]
    zeros = [0, 1]  # x_0 = x_1 = 0 by the seed; x_2 = 1
    x0, x1, x2 = 0, 0, 1
    for k in range(3, period):
        nxt = add[add[m1[x2]][m2[x1]]][m3[x0]]
        x0, x1, x2 = x1, x2, nxt
        if nxt == 0:
            zeros.append(k)
    if len(zeros) != q * q - 1:
        raise InvalidCoefficientsError(
            f"expected {q * q - 1} zero positions over one period, got {len(zeros)}"
        )
    elems = tuple(sorted({k % v for k in zeros}))
    if len(elems) != q + 1 or not verify_pds(elems, v):
        raise InvalidCoefficientsError("zero positions do not reduce to a perfect difference set")
    return SingerPds(q, v, elems, METHOD_RECURRENCE)


def affine_equivalent(v: int, b1, b2) -> tuple[int, int] | None:
    """Witness (a, b) with gcd(a, v) = 1 and a*b1 + b == b2 as subsets of Z_v, or None.

    Scans units a ascending and, for each, the |b2| shifts that could align
    the first image element; the first witness found is returned, so the
    result is deterministic.
    """
    xs1 = sorted(x % v for x in b1)
    xs2 = sorted(x % v for x in b2)
    if len(xs1) != len(xs2):
        return None
    if not xs1:
        return (1, 0)
    set2 = frozenset(xs2)
    first = xs1[0]
    rest = xs1[1:]
    for a in range(1, v):
        if gcd(a, v) != 1:
            continue
        img0 = (a * first) % v
        imgs = [(a * x) % v for x in rest]
        for t in xs2:
            b = (t - img0) % v
            if all((y + b) % v in set2 for y in imgs):
                return (a, b)
    return None
