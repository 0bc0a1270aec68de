"""Predicates and transforms for Sidon sets and perfect difference sets.

A Sidon set is represented as a strictly increasing tuple of nonnegative
integers whose pairwise differences are all distinct.  A perfect difference
set (PDS) in Z_v is a set of residues whose k(k-1) ordered differences hit
every nonzero residue exactly once, which forces k(k-1) = v - 1.  These
predicates are the shared vocabulary of every other module, so they stay
deliberately simple: plain tuples in, booleans and tuples out.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Pds:
    """A perfect difference set: modulus v plus the sorted residue tuple."""

    v: int
    elems: tuple[int, ...]


def is_sidon(elems) -> bool:
    """True iff the values are duplicate-free with all pairwise differences distinct.

    Unsorted input is sorted first; the property itself does not depend on
    order.
    """
    xs = sorted(elems)
    k = len(xs)
    if len(set(xs)) != k:
        return False
    seen = set()
    for i in range(k):
        for j in range(i + 1, k):
            d = xs[j] - xs[i]
            if d in seen:
                return False
            seen.add(d)
    return True


def diff_signature(s) -> tuple[int, ...]:
    """The k(k-1)/2 positive pairwise differences of a Sidon set, ascending."""
    xs = sorted(s)
    diffs = sorted(xs[j] - xs[i] for i in range(len(xs)) for j in range(i + 1, len(xs)))
    if len(set(diffs)) != len(diffs):
        raise ValueError(f"{tuple(xs)} is not a Sidon set")
    return tuple(diffs)


def sidon_distinct_mod(s, v: int) -> bool:
    """True iff all signed pairwise differences of s are distinct and nonzero mod v."""
    if v < 2:
        raise ValueError(f"modulus must be >= 2, got {v}")
    xs = tuple(s)
    k = len(xs)
    seen = set()
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            d = (xs[i] - xs[j]) % v
            if d == 0 or d in seen:
                return False
            seen.add(d)
    return True


def verify_pds(elems, v: int) -> bool:
    """True iff elems is a perfect difference set in Z_v.

    Requires k(k-1) = v - 1 and each nonzero residue to occur exactly once
    as an ordered difference; with the cardinality pinned, distinctness of
    the differences is equivalent to covering every residue.
    """
    xs = tuple(elems)
    if any(not 0 <= x < v for x in xs):
        raise ValueError(f"elements must lie in [0, {v})")
    k = len(xs)
    if k * (k - 1) != v - 1:
        return False
    hit = bytearray(v)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            d = (xs[i] - xs[j]) % v
            if d == 0 or hit[d]:
                return False
            hit[d] = 1
    return True


def dilate(s, k: int) -> tuple[int, ...]:
    """Multiply every element by k >= 1; Sidon sets stay Sidon (differences scale)."""
    if k < 1:
        raise ValueError(f"dilation factor must be >= 1, got {k}")
    return tuple(sorted(x * k for x in s))


def reflect(s) -> tuple[int, ...]:
    """Mirror about the maximum: {max(s) - x}, sorted ascending."""
    xs = tuple(s)
    m = max(xs)
    return tuple(sorted(m - x for x in xs))


def normalize(s) -> tuple[int, ...]:
    """Canonical translate: deduplicate, sort, and shift so the minimum is 0."""
    xs = sorted(set(s))
    if not xs:
        raise ValueError("cannot normalize an empty set")
    m = xs[0]
    return tuple(x - m for x in xs)
