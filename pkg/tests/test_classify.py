import pytest

from cspace_einstein.classify import (
    ABELIAN,
    SEMISTRICT,
    STRICT,
    CatalogError,
    _TABLE,
    _flags,
    check_flag_groups,
    check_record,
    enumerate_classical,
    exceptional_catalog,
    mlmn_record,
    partitions,
    existence_conditions,
)

RANK_MAX = 7


def _keys(family, rank_max=RANK_MAX):
    return {(r.rank, r.flag, r.stabilizer.torus, r.ctype, r.fiber_rank)
            for r in enumerate_classical(family, rank_max)}


PRESENT = [
    ("A", 5, "A(3,2,1)", 0, SEMISTRICT, 2),       # SU(6)/SU(3)xSU(2) = M_{1,2,3}
    ("A", 2, "A(1,1,1)", 0, SEMISTRICT, 2),       # SU(3) = M_{1,1,1}
    ("A", 3, "A(1,1,1,1)", 1, ABELIAN, 2),        # SU(4)/U(1)
    ("A", 4, "A(2,1,1,1)", 1, STRICT, 2),         # SU(5)/U(1).SU(2)
    ("A", 6, "A(1,1,1,1,1,1,1)", 0, SEMISTRICT, 6),
    ("A", 6, "A(1,1,1,1,1,1,1)", 2, ABELIAN, 4),
    ("B", 3, "B(1,1,1;0)", 1, ABELIAN, 2),        # SO(7)/U(1)
    ("B", 2, "B(1,1;0)", 0, SEMISTRICT, 2),       # SO(5)
    ("B", 4, "B(2,1,1;0)", 1, STRICT, 2),
    ("C", 3, "C(2,1;0)", 0, SEMISTRICT, 2),       # Sp(3)/SU(2)
    ("C", 4, "C(1,1;2)", 0, SEMISTRICT, 2),       # Sp(4)/Sp(2)
    ("D", 4, "D(1,1,1,1;0)", 0, SEMISTRICT, 4),   # SO(8)
    ("D", 4, "D(1,1,1,1;0)", 2, ABELIAN, 2),
]

ABSENT = [
    ("A", 5, "A(3,3)", 0, SEMISTRICT, 1),         # p = 2
    ("A", 4, "A(1,1,1,1,1)", 1, ABELIAN, 3),      # l - t even
    ("A", 3, "A(2,1,1)", 1, STRICT, 1),           # strict needs p >= 4
    ("B", 3, "B(1,1,1;0)", 2, ABELIAN, 1),        # l - t odd
    ("B", 2, "B(1;1)", 0, SEMISTRICT, 1),         # q = 1
    ("C", 3, "C(1,1,1;0)", 0, SEMISTRICT, 3),     # q odd
    ("D", 4, "D(1,1,1,1;0)", 1, ABELIAN, 3),      # q - t odd
]


@pytest.mark.parametrize("row", PRESENT)
def test_present(row):
    family, *key = row
    assert tuple(key) in _keys(family)


@pytest.mark.parametrize("row", ABSENT)
def test_absent(row):
    family, *key = row
    assert tuple(key) not in _keys(family)


def test_low_rank_duplicates_skipped():
    assert all(r.rank >= 4 for r in enumerate_classical("D", RANK_MAX))
    assert all(r.rank >= 3 for r in enumerate_classical("C", RANK_MAX))
    assert not any(";1)" in r.flag for r in enumerate_classical("D", RANK_MAX))


def test_no_semistrict_over_two_blocks():
    assert not any(r.flag.count(",") == 1 and r.ctype == SEMISTRICT
                   for r in enumerate_classical("A", RANK_MAX))


@pytest.mark.parametrize("family", ["A", "B", "C", "D"])
def test_enumeration_equals_conditions(family):
    """A record exists exactly when the tabulated conditions hold."""
    keys = _keys(family)
    for rank in range(2, RANK_MAX + 1):
        if rank < {"A": 1, "B": 2, "C": 3, "D": 4}[family]:
            continue
        for desc, v, factors in _flags(family, rank):
            for t in range(0, v + 1):
                if t == 0:
                    ctype = SEMISTRICT
                elif factors:
                    ctype = STRICT
                else:
                    ctype = ABELIAN
                blocks = v + 1 if family == "A" else v
                expected = existence_conditions(family, ctype, blocks, t, rank)
                present = (rank, desc, t, ctype, v - t) in keys
                assert present == expected, (desc, t, ctype)


@pytest.mark.parametrize("family", ["A", "B", "C", "D"])
def test_classical_invariants(family):
    recs = enumerate_classical(family, RANK_MAX)
    for r in recs:
        check_record(r)
        assert r.b2M == r.b2F - r.fiber_rank
        assert r.fiber_rank >= 2 and r.fiber_rank % 2 == 0
        if r.ctype == SEMISTRICT:
            assert r.b2M == 0
    check_flag_groups(recs)


def test_mlmn_record():
    r = mlmn_record(1, 2, 3)
    assert r.name == "A5/A2 x A1" and r.ctype == SEMISTRICT and r.fiber_rank == 2
    key = (r.rank, r.flag, 0, SEMISTRICT, 2)
    assert key in _keys("A")


def test_partitions():
    assert partitions(6, 3) == [(4, 1, 1), (3, 2, 1), (2, 2, 2)]
    assert partitions(3, 4) == []


def test_enumerate_rejects():
    with pytest.raises(ValueError):
        enumerate_classical("E", 4)
    with pytest.raises(ValueError):
        enumerate_classical("A", 1)


# ------------------------------------------------------------ exceptional

def test_catalog_size_and_groups():
    cat = exceptional_catalog()
    counts = {}
    for r in cat:
        counts[r.group] = counts.get(r.group, 0) + 1
    assert counts == {"G2": 1, "F4": 8, "E6": 17, "E7": 34, "E8": 50}


def _find(cat, group, factors, torus, label=""):
    hits = [r for r in cat if r.group == group and r.stabilizer.torus == torus
            and [str(f) for f in r.stabilizer.factors] == factors and r.label == label]
    assert len(hits) == 1
    return hits[0]


def test_catalog_examples():
    cat = exceptional_catalog()
    g2 = _find(cat, "G2", [], 0)
    assert (g2.ctype, g2.fiber_rank, g2.b2F, g2.b2M, g2.flag) == (SEMISTRICT, 2, 2, 0, "G2(0)")
    f4 = _find(cat, "F4", [], 2)
    assert (f4.ctype, f4.fiber_rank, f4.b2F, f4.b2M) == (ABELIAN, 2, 4, 2)
    e8 = _find(cat, "E8", ["E6"], 0)
    assert (e8.ctype, e8.fiber_rank, e8.b2F, e8.b2M) == (SEMISTRICT, 2, 2, 0)
    a = _find(cat, "E7", ["A1", "A1", "A1"], 0, "type A")
    b = _find(cat, "E7", ["A1", "A1", "A1"], 0, "type B")
    assert a.flag != b.flag
    long_ = _find(cat, "F4", ["A2^l"], 0)
    short = _find(cat, "F4", ["A2^s"], 0)
    assert long_.flag == "F4(1,2)" and short.flag == "F4(3,4)"


def test_catalog_invariants():
    cat = exceptional_catalog()
    for r in cat:
        assert r.b2M == r.b2F - r.fiber_rank
        assert r.fiber_rank % 2 == 0 and r.fiber_rank >= 2
        if r.ctype == SEMISTRICT:
            assert r.b2M == 0
    by_flag = {}
    for r in cat:
        by_flag.setdefault((r.flag, r.label), []).append(r)
    for rows in by_flag.values():
        v = rows[0].b2F
        n_ss = sum(r.ctype == SEMISTRICT for r in rows)
        if v == 2:
            assert len(rows) == 1 and n_ss == 1
        elif v % 2:
            assert n_ss == 0
        else:
            assert n_ss == 1 and len(rows) >= 2


@pytest.mark.parametrize("old,new", [
    ("F4 | - | 2 | a | 0 | 2 | 4 | 2 |", "F4 | - | 2 | a | 0 | 2 | 4 | 1 |"),      # b2M wrong
    ("E8 | E6 | 0 | ss | 3,4,5,6,7,8 | 2 | 2 | 0 |", "E8 | E6 | 0 | ss | 3,4,5,6,7,8 | 3 | 3 | 0 |"),
    ("G2 | - | 0 | ss | 0 | 2 | 2 | 0 |", "G2 | - | 0 | s | 0 | 2 | 2 | 0 |"),     # type wrong
    ("E7 | D5 | 0 | ss | 3,4,5,6,7 | 2 | 2 | 0 |", "E7 | D5,A1 | 0 | ss | 3,4,5,6,7 | 2 | 2 | 0 |"),
])
def test_corrupted_catalog_rejected(old, new):
    assert old in _TABLE
    with pytest.raises(CatalogError):
        exceptional_catalog(_TABLE.replace(old, new))


def test_missing_row_detected():
    row = "E6 | A1 | 3 | s | 1 | 2 | 5 | 3 |\n"
    assert row in _TABLE
    with pytest.raises(CatalogError):
        exceptional_catalog(_TABLE.replace(row, ""))
