"""
Indecomposable non-Kähler C-spaces M = G/H of a compact simple group G.

Every such M is a principal torus bundle of even rank 2s over a flag
manifold F = G/K with K = T^v . K'.  Then H = T^t . K' with t = v - 2s,
and b2(F) = v, b2(M) = t.  The type of M is

* semistrict when t = 0 (H = K'),
* abelian when K' is trivial and t > 0 (H is a torus),
* strict otherwise (H reductive with nontrivial centre and semisimple part).

For the classical groups the spaces are enumerated from partitions.  For
the exceptional groups a static catalog is provided and checked for
internal consistency only.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

SEMISTRICT = "semistrict"
STRICT = "strict"
ABELIAN = "abelian"
CTYPES = (SEMISTRICT, STRICT, ABELIAN)

CLASSICAL = ("A", "B", "C", "D")
EXCEPTIONAL_RANK = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

_SHORT_TYPE = {"ss": SEMISTRICT, "s": STRICT, "a": ABELIAN}


@dataclass(frozen=True)
class Factor:
    """A simple factor of the stabilizer, e.g. Factor("A", 2) for SU(3).

    ``tag`` distinguishes non-conjugate copies of the same type, such as
    the long-root and short-root A_k inside F4.
    """

    kind: str
    rank: int
    tag: str = ""

    def __str__(self):
        return f"{self.kind}{self.rank}{'^' + self.tag if self.tag else ''}"


@dataclass(frozen=True)
class Stabilizer:
    factors: tuple[Factor, ...]
    torus: int

    @property
    def semisimple_rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def rank(self) -> int:
        return self.semisimple_rank + self.torus

    def __str__(self):
        parts = " x ".join(str(f) for f in self.factors)
        if self.torus == 0:
            return parts or "{e}"
        torus = f"T{self.torus}"
        return f"{torus}.({parts})" if parts else torus


@dataclass(frozen=True)
class CSpaceRecord:
    group: str
    rank: int
    stabilizer: Stabilizer
    ctype: str
    fiber_rank: int
    b2F: int
    b2M: int
    flag: str = ""
    label: str = ""

    @property
    def name(self) -> str:
        g = f"{self.group}{self.rank}" if self.group in CLASSICAL else self.group
        return f"{g}/{self.stabilizer}"


@dataclass
class CatalogError(ValueError):
    row: object
    reason: str

    def __str__(self):
        return f"invalid C-space record {self.row!r}: {self.reason}"


def check_record(rec: CSpaceRecord) -> None:
    """Raise CatalogError unless ``rec`` is structurally consistent."""
    def fail(msg):
        raise CatalogError(rec, msg)

    if rec.ctype not in CTYPES:
        fail(f"unknown type {rec.ctype!r}")
    if rec.fiber_rank < 2 or rec.fiber_rank % 2:
        fail("fiber rank must be even and at least 2")
    if rec.b2M < 0 or rec.b2M != rec.b2F - rec.fiber_rank:
        fail("b2(M) must equal b2(F) minus the fiber rank")
    if rec.stabilizer.torus != rec.b2M:
        fail("torus rank of H must equal b2(M)")
    if rec.stabilizer.rank + rec.fiber_rank != rec.rank:
        fail("rank G must equal rank H plus the fiber rank")
    semisimple = bool(rec.stabilizer.factors)
    expected = SEMISTRICT if rec.b2M == 0 else (STRICT if semisimple else ABELIAN)
    if rec.ctype != expected:
        fail(f"type should be {expected}")


def check_flag_groups(records: list[CSpaceRecord]) -> None:
    """Checks that involve all C-spaces over one flag manifold.

    Over a flag with b2(F) = v there is one space for each fiber rank
    2, 4, ..., 2 floor(v/2).  Hence v = 2 gives a single semistrict space,
    odd v >= 3 gives no semistrict space, and even v >= 4 gives exactly one
    semistrict space together with at least one space that is not.
    """
    groups: dict[tuple, list[CSpaceRecord]] = defaultdict(list)
    for r in records:
        groups[(r.group, r.rank, r.flag, r.label)].append(r)
    for key, rows in groups.items():
        v = rows[0].b2F
        if any(r.b2F != v for r in rows):
            raise CatalogError(key, "inconsistent b2(F) within one flag")
        fibers = sorted(r.fiber_rank for r in rows)
        if fibers != list(range(2, 2 * (v // 2) + 1, 2)):
            raise CatalogError(key, f"fiber ranks {fibers} do not cover 2..{v}")
        n_ss = sum(r.ctype == SEMISTRICT for r in rows)
        if v == 2 and (len(rows) != 1 or n_ss != 1):
            raise CatalogError(key, "b2(F) = 2 must give one semistrict space")
        if v >= 3 and v % 2 and n_ss:
            raise CatalogError(key, "odd b2(F) cannot give a semistrict space")
        if v >= 4 and v % 2 == 0 and (n_ss != 1 or len(rows) < 2):
            raise CatalogError(key, "even b2(F) >= 4 needs one semistrict space and others")


# ---------------------------------------------------------------- classical

def partitions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Partitions of ``total`` into exactly ``parts`` positive parts, in
    non-increasing order."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for c in combinations_with_replacement(range(1, total + 1), parts):
        if sum(c) == total:
            out.append(tuple(sorted(c, reverse=True)))
    return sorted(out, reverse=True)


def _unitary_factors(parts) -> list[Factor]:
    return [Factor("A", k - 1) for k in parts if k >= 2]


def _tail_factor(family: str, m: int) -> list[Factor]:
    if family == "B" and m >= 1:
        return [Factor("B", m)]
    if family == "C" and m >= 1:
        return [Factor("C", m)]
    if family == "D" and m >= 2:
        return [Factor("D", m)]
    return []


def _min_rank(family: str) -> int:
    # B1 = A1, C2 = B2 and D3 = A3 are left to the family listed first
    return {"A": 1, "B": 2, "C": 3, "D": 4}[family]


def _flags(family: str, rank: int):
    """Yield (description, v, semisimple factors) for every flag of the
    group of the given family and rank."""
    if family == "A":
        ell = rank + 1
        for p in range(1, ell + 1):
            for parts in partitions(ell, p):
                yield f"A({','.join(map(str, parts))})", p - 1, _unitary_factors(parts)
        return
    for m in range(rank + 1):
        if family == "D" and m == 1:
            # SO(2) is a circle; these flags already occur with an extra part 1
            continue
        rest = rank - m
        for q in range(1, rest + 1):
            for parts in partitions(rest, q):
                desc = f"{family}({','.join(map(str, parts))};{m})"
                yield desc, q, _unitary_factors(parts) + _tail_factor(family, m)


def enumerate_classical(family: str, rank_max: int) -> list[CSpaceRecord]:
    """All non-Kähler C-spaces of the classical group of ``family`` with
    rank between the family's lowest rank and ``rank_max``.

    Parameters
    ----------
    family : "A", "B", "C" or "D".  "A" with rank r stands for SU(r + 1).
    rank_max : largest rank of G, at least 2.
    """
    if family not in CLASSICAL:
        raise ValueError(f"unknown classical family {family!r}")
    if rank_max < 2:
        raise ValueError("rank_max must be at least 2")
    out = []
    for rank in range(_min_rank(family), rank_max + 1):
        for desc, v, factors in _flags(family, rank):
            for t in range(v - 1):
                fiber = v - t
                if fiber % 2:
                    continue
                if t == 0:
                    ctype = SEMISTRICT
                else:
                    ctype = STRICT if factors else ABELIAN
                rec = CSpaceRecord(family, rank, Stabilizer(tuple(factors), t),
                                   ctype, fiber, v, t, flag=desc)
                check_record(rec)
                out.append(rec)
    return out


def existence_conditions(family: str, ctype: str, p_or_q: int, t: int, rank: int) -> bool:
    """The tabulated existence conditions for classical C-spaces, stated in
    terms of p (number of blocks, family A) or q (number of unitary blocks,
    families B, C, D), the torus rank t of H and the rank of G.  For the
    abelian rows p_or_q is ignored and ell is the size of the matrices
    (rank + 1 for A, rank otherwise)."""
    ell = rank + 1 if family == "A" else rank
    if family == "A":
        p = p_or_q
        if ctype == SEMISTRICT:
            return t == 0 and p >= 3 and p % 2 == 1
        if ctype == STRICT:
            return (p - t) % 2 == 1 and p >= 4 and 0 < t < p - 1
        return (ell - t) % 2 == 1 and ell >= 4 and 0 < t < ell - 1
    q = p_or_q
    if ctype == SEMISTRICT:
        return t == 0 and q >= 2 and q % 2 == 0
    if ctype == STRICT:
        return (q - t) % 2 == 0 and q >= 3 and 0 < t < q
    low = 4 if family == "D" else 3
    return (ell - t) % 2 == 0 and ell >= low and 0 < t < ell


def mlmn_record(l: int, m: int, n: int) -> CSpaceRecord:
    """The record of SU(l+m+n)/SU(l) x SU(m) x SU(n) over A(l, m, n)."""
    parts = tuple(sorted((l, m, n), reverse=True))
    rank = l + m + n - 1
    rec = CSpaceRecord("A", rank, Stabilizer(tuple(_unitary_factors(parts)), 0),
                       SEMISTRICT, 2, 2, 0, flag=f"A({','.join(map(str, parts))})")
    check_record(rec)
    return rec


# ---------------------------------------------------------------- exceptional

# group | factors of H' | torus of H | type | flag (white roots) | fiber | b2F | b2M | label
# Factors are written kind+rank with an optional multiplicity "*k" and a
# root length tag "^l" or "^s".  The flag column lists the white simple
# roots; "0" is the full flag.
_TABLE = """
G2 | - | 0 | ss | 0 | 2 | 2 | 0 |
F4 | - | 0 | ss | 0 | 4 | 4 | 0 |
F4 | - | 2 | a | 0 | 2 | 4 | 2 |
F4 | A1^l | 1 | s | 1 | 2 | 3 | 1 |
F4 | A1^s | 1 | s | 4 | 2 | 3 | 1 |
F4 | A2^l | 0 | ss | 1,2 | 2 | 2 | 0 |
F4 | A2^s | 0 | ss | 3,4 | 2 | 2 | 0 |
F4 | A1,A1 | 0 | ss | 1,4 | 2 | 2 | 0 |
F4 | B2 | 0 | ss | 2,3 | 2 | 2 | 0 |
E6 | - | 0 | ss | 0 | 6 | 6 | 0 |
E6 | - | 2 | a | 0 | 4 | 6 | 2 |
E6 | - | 4 | a | 0 | 2 | 6 | 4 |
E6 | A1 | 1 | s | 1 | 4 | 5 | 1 |
E6 | A1 | 3 | s | 1 | 2 | 5 | 3 |
E6 | A1*2 | 0 | ss | 3,5 | 4 | 4 | 0 |
E6 | A1*2 | 2 | s | 3,5 | 2 | 4 | 2 |
E6 | A2 | 0 | ss | 4,5 | 4 | 4 | 0 |
E6 | A2 | 2 | s | 4,5 | 2 | 4 | 2 |
E6 | A1*3 | 1 | s | 1,3,5 | 2 | 3 | 1 |
E6 | A2,A1 | 1 | s | 2,4,5 | 2 | 3 | 1 |
E6 | A3 | 1 | s | 3,4,5 | 2 | 3 | 1 |
E6 | A4 | 0 | ss | 2,3,4,5 | 2 | 2 | 0 |
E6 | A3,A1 | 0 | ss | 1,3,4,5 | 2 | 2 | 0 |
E6 | A2*2 | 0 | ss | 1,2,4,5 | 2 | 2 | 0 |
E6 | A2,A1*2 | 0 | ss | 2,4,5,6 | 2 | 2 | 0 |
E6 | D4 | 0 | ss | 2,3,4,6 | 2 | 2 | 0 |
E7 | - | 1 | a | 0 | 6 | 7 | 1 |
E7 | - | 3 | a | 0 | 4 | 7 | 3 |
E7 | - | 5 | a | 0 | 2 | 7 | 5 |
E7 | A1 | 0 | ss | 1 | 6 | 6 | 0 |
E7 | A1 | 2 | s | 1 | 4 | 6 | 2 |
E7 | A1 | 4 | s | 1 | 2 | 6 | 4 |
E7 | A1*2 | 1 | s | 4,6 | 4 | 5 | 1 |
E7 | A1*2 | 3 | s | 4,6 | 2 | 5 | 3 |
E7 | A2 | 1 | s | 5,6 | 4 | 5 | 1 |
E7 | A2 | 3 | s | 5,6 | 2 | 5 | 3 |
E7 | A1*3 | 0 | ss | 1,3,5 | 4 | 4 | 0 | type A
E7 | A1*3 | 2 | s | 1,3,5 | 2 | 4 | 2 | type A
E7 | A1*3 | 0 | ss | 1,3,7 | 4 | 4 | 0 | type B
E7 | A1*3 | 2 | s | 1,3,7 | 2 | 4 | 2 | type B
E7 | A2,A1 | 0 | ss | 3,5,6 | 4 | 4 | 0 |
E7 | A2,A1 | 2 | s | 3,5,6 | 2 | 4 | 2 |
E7 | A3 | 0 | ss | 4,5,6 | 4 | 4 | 0 |
E7 | A3 | 2 | s | 4,5,6 | 2 | 4 | 2 |
E7 | A4 | 1 | s | 1,2,3,4 | 2 | 3 | 1 |
E7 | A3,A1 | 1 | s | 1,2,3,5 | 2 | 3 | 1 | type A
E7 | A3,A1 | 1 | s | 1,2,3,7 | 2 | 3 | 1 | type B
E7 | A2*2 | 1 | s | 1,2,4,5 | 2 | 3 | 1 |
E7 | A2,A1*2 | 1 | s | 1,2,4,6 | 2 | 3 | 1 |
E7 | A1*4 | 1 | s | 1,3,5,7 | 2 | 3 | 1 |
E7 | D4 | 1 | s | 3,4,5,7 | 2 | 3 | 1 |
E7 | A5 | 0 | ss | 1,2,3,4,5 | 2 | 2 | 0 | type A
E7 | A5 | 0 | ss | 1,2,3,4,7 | 2 | 2 | 0 | type B
E7 | A4,A1 | 0 | ss | 1,2,3,4,6 | 2 | 2 | 0 |
E7 | A3,A2 | 0 | ss | 1,2,3,5,6 | 2 | 2 | 0 |
E7 | A3,A1*2 | 0 | ss | 1,2,3,5,7 | 2 | 2 | 0 |
E7 | D4,A1 | 0 | ss | 1,3,4,5,7 | 2 | 2 | 0 |
E7 | A2*2,A1 | 0 | ss | 1,2,5,6,7 | 2 | 2 | 0 |
E7 | A2,A1*3 | 0 | ss | 1,3,5,6,7 | 2 | 2 | 0 |
E7 | D5 | 0 | ss | 3,4,5,6,7 | 2 | 2 | 0 |
E8 | - | 0 | ss | 0 | 8 | 8 | 0 |
E8 | - | 2 | a | 0 | 6 | 8 | 2 |
E8 | - | 4 | a | 0 | 4 | 8 | 4 |
E8 | - | 6 | a | 0 | 2 | 8 | 6 |
E8 | A1 | 1 | s | 1 | 6 | 7 | 1 |
E8 | A1 | 3 | s | 1 | 4 | 7 | 3 |
E8 | A1 | 5 | s | 1 | 2 | 7 | 5 |
E8 | A2 | 0 | ss | 1,2 | 6 | 6 | 0 |
E8 | A2 | 2 | s | 1,2 | 4 | 6 | 2 |
E8 | A2 | 4 | s | 1,2 | 2 | 6 | 4 |
E8 | A1*2 | 0 | ss | 1,3 | 6 | 6 | 0 |
E8 | A1*2 | 2 | s | 1,3 | 4 | 6 | 2 |
E8 | A1*2 | 4 | s | 1,3 | 2 | 6 | 4 |
E8 | A3 | 1 | s | 1,2,3 | 4 | 5 | 1 |
E8 | A3 | 3 | s | 1,2,3 | 2 | 5 | 3 |
E8 | A2,A1 | 1 | s | 1,2,4 | 4 | 5 | 1 |
E8 | A2,A1 | 3 | s | 1,2,4 | 2 | 5 | 3 |
E8 | A1*3 | 1 | s | 1,3,5 | 4 | 5 | 1 |
E8 | A1*3 | 3 | s | 1,3,5 | 2 | 5 | 3 |
E8 | A4 | 0 | ss | 1,2,3,4 | 4 | 4 | 0 |
E8 | A4 | 2 | s | 1,2,3,4 | 2 | 4 | 2 |
E8 | A3,A1 | 0 | ss | 1,2,3,5 | 4 | 4 | 0 |
E8 | A3,A1 | 2 | s | 1,2,3,5 | 2 | 4 | 2 |
E8 | A2*2 | 0 | ss | 1,2,4,5 | 4 | 4 | 0 |
E8 | A2*2 | 2 | s | 1,2,4,5 | 2 | 4 | 2 |
E8 | A2,A1*2 | 0 | ss | 1,2,4,6 | 4 | 4 | 0 |
E8 | A2,A1*2 | 2 | s | 1,2,4,6 | 2 | 4 | 2 |
E8 | A1*4 | 0 | ss | 1,3,5,7 | 4 | 4 | 0 |
E8 | A1*4 | 2 | s | 1,3,5,7 | 2 | 4 | 2 |
E8 | D4 | 0 | ss | 4,5,6,8 | 4 | 4 | 0 |
E8 | D4 | 2 | s | 4,5,6,8 | 2 | 4 | 2 |
E8 | A5 | 1 | s | 1,2,3,4,5 | 2 | 3 | 1 |
E8 | A4,A1 | 1 | s | 1,2,3,4,6 | 2 | 3 | 1 |
E8 | A3,A2 | 1 | s | 1,2,3,5,6 | 2 | 3 | 1 |
E8 | A3,A1*2 | 1 | s | 1,2,3,5,7 | 2 | 3 | 1 |
E8 | A2*2,A1 | 1 | s | 1,2,4,5,7 | 2 | 3 | 1 |
E8 | A2,A1*3 | 1 | s | 1,2,4,6,8 | 2 | 3 | 1 |
E8 | D4,A1 | 1 | s | 1,4,5,6,8 | 2 | 3 | 1 |
E8 | D5 | 1 | s | 4,5,6,7,8 | 2 | 3 | 1 |
E8 | A6 | 0 | ss | 1,2,3,4,5,6 | 2 | 2 | 0 |
E8 | A5,A1 | 0 | ss | 1,2,3,4,5,7 | 2 | 2 | 0 |
E8 | A4,A2 | 0 | ss | 1,2,3,4,6,7 | 2 | 2 | 0 |
E8 | A3*2 | 0 | ss | 1,2,3,5,6,7 | 2 | 2 | 0 |
E8 | A4,A1*2 | 0 | ss | 1,2,3,4,6,8 | 2 | 2 | 0 |
E8 | D4,A2 | 0 | ss | 1,2,4,5,6,8 | 2 | 2 | 0 |
E8 | D5,A1 | 0 | ss | 1,4,5,6,7,8 | 2 | 2 | 0 |
E8 | D6 | 0 | ss | 2,3,4,5,6,8 | 2 | 2 | 0 |
E8 | A3,A2,A1 | 0 | ss | 1,2,3,6,7,8 | 2 | 2 | 0 |
E8 | A2*2,A1*2 | 0 | ss | 1,2,4,6,7,8 | 2 | 2 | 0 |
E8 | E6 | 0 | ss | 3,4,5,6,7,8 | 2 | 2 | 0 |
"""


def _parse_factors(text: str) -> tuple[Factor, ...]:
    if text == "-":
        return ()
    out = []
    for item in text.split(","):
        item, _, mult = item.partition("*")
        item, _, tag = item.partition("^")
        out.extend([Factor(item[0], int(item[1:]), tag)] * int(mult or 1))
    return tuple(out)


def _parse_row(line: str) -> CSpaceRecord:
    cells = [c.strip() for c in line.split("|")]
    group, factors, torus, short, white, fiber, b2f, b2m, label = cells
    if group not in EXCEPTIONAL_RANK:
        raise CatalogError(line, f"unknown exceptional group {group!r}")
    if short not in _SHORT_TYPE:
        raise CatalogError(line, f"unknown type code {short!r}")
    rec = CSpaceRecord(group, EXCEPTIONAL_RANK[group],
                       Stabilizer(_parse_factors(factors), int(torus)),
                       _SHORT_TYPE[short], int(fiber), int(b2f), int(b2m),
                       flag=f"{group}({white})", label=label)
    return rec


def _white_roots(rec: CSpaceRecord) -> tuple[int, ...]:
    inner = rec.flag[rec.flag.index("(") + 1:-1]
    return () if inner == "0" else tuple(int(v) for v in inner.split(","))


def check_exceptional(rec: CSpaceRecord) -> None:
    """Record checks plus consistency with the flag label: b2(F) equals
    the number of black simple roots, and the semisimple rank of H equals
    the number of white ones."""
    check_record(rec)
    white = _white_roots(rec)
    if any(not 1 <= w <= rec.rank for w in white) or list(white) != sorted(set(white)):
        raise CatalogError(rec, "white roots out of range or unsorted")
    if rec.b2F != rec.rank - len(white):
        raise CatalogError(rec, "b2(F) must count the black simple roots")
    if rec.stabilizer.semisimple_rank != len(white):
        raise CatalogError(rec, "semisimple rank of H must count the white roots")


def exceptional_catalog(table: str = _TABLE) -> list[CSpaceRecord]:
    """The non-Kähler C-spaces of G2, F4, E6, E7, E8, validated row by row
    and flag by flag.  Raises CatalogError naming the first bad row."""
    rows = [_parse_row(line) for line in table.strip().splitlines() if line.strip()]
    for rec in rows:
        check_exceptional(rec)
    check_flag_groups(rows)
    return rows
