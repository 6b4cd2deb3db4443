import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from covera.designs import (
    BookkeepingError,
    Design,
    DesignFormatError,
    MalformedDesignError,
    NotCoveringOrPackingError,
    SoundnessViolation,
    bookkeeping,
    bose_lower,
    certificate_check,
    certificate_premise,
    classify,
    dominance_pd,
    excess_or_leave,
    format_design,
    gram,
    leading_minors,
    parse_design,
    rank_exact,
    read_design,
    sylvester_pd,
    write_design,
)
from covera.bounds import make_params
from fuzz import random_covering, random_design, random_packing, random_weights
from oracles import fano, gram_direct, is_covering, is_packing, positive_definite_ldl, rank_fraction

FANO = Design(7, 3, 1, tuple(fano()))
SIX_COVER = Design(5, 3, 1, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (3, 4, 5)))


# model

def test_blocks_are_validated():
    with pytest.raises(MalformedDesignError):
        Design(5, 3, 1, ((1, 2),))
    with pytest.raises(MalformedDesignError):
        Design(5, 3, 1, ((1, 2, 6),))
    with pytest.raises(MalformedDesignError):
        Design(5, 3, 1, ((1, 1, 2),))


def test_blocks_are_stored_canonically_with_repeats():
    d = Design(5, 3, 2, ((3, 2, 1), (1, 4, 5), (1, 2, 3)))
    assert d.blocks == ((1, 2, 3), (1, 2, 3), (1, 4, 5))
    assert d == Design(5, 3, 2, ((1, 4, 5), (1, 2, 3), (2, 1, 3)))
    assert d.b == 3


def test_replication_and_incidence():
    assert set(FANO.replication().values()) == {3}
    x = FANO.incidence()
    assert len(x) == 7 and all(sum(row) == 3 for row in x)


# classification

def test_classify_examples():
    assert classify(FANO).kind == "exact-design"
    c = classify(Design(5, 3, 1, ((1, 2, 3), (1, 4, 5))))
    assert c.kind == "packing" and c.is_packing and not c.is_covering
    assert classify(Design(4, 3, 1, ())).kind == "packing"
    assert classify(SIX_COVER).kind == "covering"
    c = classify(Design(4, 3, 1, ((1, 2, 3), (1, 2, 4))))
    assert c.kind == "neither" and (c.min_mult, c.max_mult) == (0, 2)


def test_classification_agrees_with_pair_counting():
    rng = random.Random(7)
    for _ in range(200):
        d = random_design(rng, 8)
        c = classify(d)
        assert c.is_covering == is_covering(d.v, d.lam, d.blocks)
        assert c.is_packing == is_packing(d.v, d.lam, d.blocks)
        assert (c.kind == "exact-design") == (c.is_covering and c.is_packing)


# excess and leave

def test_excess_and_leave_examples():
    assert excess_or_leave(FANO).is_empty
    leave = excess_or_leave(Design(5, 3, 1, ((1, 2, 3),)))
    inside = {(1, 2), (1, 3), (2, 3)}
    for u, w in combinations(range(1, 6), 2):
        assert leave.mu(u, w) == (0 if (u, w) in inside else 1)
    assert sum(leave.mult.values()) == 7
    excess = excess_or_leave(SIX_COVER)
    assert excess.mu(1, 2) == 2 and excess.mu(3, 4) == 2 and excess.mu(4, 3) == 2
    assert all(excess.mu(*p) == 1 for p in [(1, 3), (1, 4), (2, 3), (2, 4)])
    assert excess.degrees() == {1: 4, 2: 4, 3: 4, 4: 4, 5: 0}


def test_excess_of_neither_raises():
    with pytest.raises(NotCoveringOrPackingError):
        excess_or_leave(Design(4, 3, 1, ((1, 2, 3), (1, 2, 4))))


# bookkeeping

def test_bookkeeping_examples():
    bk = bookkeeping(FANO)
    assert (bk.b, bk.a, bk.parts) == (7, 0, {0: frozenset(range(1, 8))})
    bk = bookkeeping(SIX_COVER)
    assert (bk.side, bk.b, bk.r, bk.d, bk.a) == ("cover", 6, 2, 0, 8)
    assert bk.parts == {0: frozenset({5}), 2: frozenset({1, 2, 3, 4})}
    bk = bookkeeping(Design(5, 3, 1, ((1, 2, 3),)))
    assert (bk.side, bk.b, bk.r, bk.d, bk.a) == ("pack", 1, 2, 0, 7)
    assert bk.parts == {1: frozenset({1, 2, 3}), 2: frozenset({4, 5})}


def test_bookkeeping_identities_on_random_designs():
    rng = random.Random(11)
    for _ in range(300):
        d = random_design(rng)
        bk = bookkeeping(d)
        g = excess_or_leave(d)
        assert sum(g.degrees().values()) == bk.d * d.v + bk.a * (d.k - 1)
        assert d.v - len(bk.parts.get(0, ())) <= bk.a
        assert bk.a >= 0


def test_bookkeeping_on_neither_raises():
    with pytest.raises(NotCoveringOrPackingError):
        bookkeeping(Design(4, 3, 1, ((1, 2, 3), (1, 2, 4))))


def test_bookkeeping_error_is_an_assertion():
    assert issubclass(BookkeepingError, AssertionError)


# gram matrices and rank

def test_gram_examples():
    m = gram(FANO)
    assert all(m[u][w] == (3 if u == w else 1) for u in range(7) for w in range(7))
    m = gram(Design(5, 3, 1, ((1, 2, 3),)))
    assert [m[u][u] for u in range(5)] == [1, 1, 1, 0, 0]
    assert m[0][1] == 1 and m[0][3] == 0


def test_gram_equals_incidence_product_on_random_designs():
    rng = random.Random(3)
    for _ in range(300):
        d = random_design(rng)
        m = gram(d)
        assert m == gram_direct(d.v, d.blocks)
        rep = d.replication()
        assert [m[u][u] for u in range(d.v)] == [rep[u + 1] for u in range(d.v)]


def test_rank_examples():
    assert rank_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank_exact([[1] * 4] * 4) == 1
    assert rank_exact(gram(FANO)) == 7
    assert rank_exact([]) == 0
    assert rank_exact([[0, 0], [0, 0]]) == 0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=4, max_size=4),
                min_size=1, max_size=6))
def test_rank_matches_gauss_jordan(rows):
    assert rank_exact(rows) == rank_fraction(rows)


def test_bose_lower_examples():
    assert bose_lower(FANO) == 7
    assert bose_lower(Design(4, 3, 1, ())) == 0
    # symmetric 2-(11,5,2) biplane: Fisher says v blocks
    base = [1, 3, 4, 5, 9]
    biplane = Design(11, 5, 2, tuple(tuple(sorted((x + i) % 11 + 1 for x in base)) for i in range(11)))
    assert classify(biplane).kind == "exact-design"
    assert bose_lower(biplane) == 11


def test_block_count_never_below_gram_rank():
    rng = random.Random(5)
    for _ in range(300):
        d = random_design(rng)
        assert d.b >= bose_lower(d)


# positive definiteness

def test_dominance_examples():
    assert dominance_pd([[1, 0], [0, 1]], [1, 1]) and sylvester_pd([[1, 0], [0, 1]])
    assert not dominance_pd([[1, 1], [1, 1]], [1, 1])
    assert dominance_pd([[2, 1], [1, 3]], [1, 1])
    assert leading_minors([[2, 1], [1, 3]]) == [2, 5]
    with pytest.raises(ValueError):
        dominance_pd([[1, 0], [0, 1]], [1])
    with pytest.raises(ValueError):
        dominance_pd([[1, 0], [0, 1]], [1, 0])


def test_leading_minors_survive_zero_pivots():
    m = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert leading_minors(m) == [0, -1, -1]
    assert not sylvester_pd(m)


symmetric = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n).map(
        lambda xs: [[xs[min(i, j) * n + max(i, j)] + (6 if i == j else 0) for j in range(n)] for i in range(n)]
    )
)


@settings(max_examples=300, deadline=None)
@given(symmetric, st.lists(st.integers(1, 5), min_size=5, max_size=5))
def test_dominance_implies_sylvester(m, c):
    c = c[: len(m)]
    if dominance_pd(m, c):
        assert sylvester_pd(m)
    assert sylvester_pd(m) == positive_definite_ldl(m)


# certificates

def test_certificate_examples():
    assert certificate_check(FANO, range(1, 8))
    assert certificate_check(FANO, [])
    packing = Design(5, 3, 1, ((1, 2, 3), (1, 4, 5)))
    # leave edges inside S = {2,3,4,5}: 24, 25, 34, 35 -> weight 2 >= r(u) - 1 = 0
    assert not certificate_premise(packing, [2, 3, 4, 5])
    assert not certificate_check(packing, [2, 3, 4, 5])


def test_certificate_holds_on_v0_when_d_below_n():
    rng = random.Random(17)
    checked = 0
    for _ in range(400):
        d = random_covering(rng, rng.randint(6, 10), 3, rng.choice((1, 2)))
        p = make_params(d.v, d.k, d.lam)
        if p.d_cov >= p.n_cov:
            continue
        bk = bookkeeping(d)
        v0 = bk.parts.get(0, frozenset())
        if v0:
            assert certificate_check(d, v0)
            checked += 1
    assert checked > 20


def test_certificate_raises_when_premise_and_block_count_disagree(monkeypatch):
    import covera.designs as designs

    monkeypatch.setattr(designs, "certificate_premise", lambda d, s, c=None: True)
    with pytest.raises(SoundnessViolation):
        designs.certificate_check(Design(5, 3, 1, ((1, 2, 3),)), [1, 2, 3])


def test_certificate_soundness_on_random_designs():
    rng = random.Random(23)
    for _ in range(300):
        d = random_design(rng)
        s = rng.sample(range(1, d.v + 1), rng.randint(1, d.v))
        c = random_weights(rng, s)
        if certificate_check(d, s, c):
            assert len(s) <= d.b


def test_certificate_rejects_nonpositive_weights():
    with pytest.raises(ValueError):
        certificate_premise(FANO, [1, 2], {1: Fraction(1), 2: Fraction(0)})


# text format

def test_format_round_trip():
    rng = random.Random(29)
    for _ in range(100):
        d = random_design(rng)
        text = format_design(d)
        assert parse_design(text) == d
        assert format_design(parse_design(text)) == text


def test_parse_accepts_comments_and_blank_lines():
    d = parse_design("# Fano\n7 3 1\n\n1 2 3\n# more\n1 4 5\n")
    assert d.b == 2 and d.v == 7


@pytest.mark.parametrize(
    "text,line",
    [
        ("5 3 1\n1 2\n", 2),
        ("5 3 1\n1 2 3\n1 2 9\n", 3),
        ("5 3\n", 1),
        ("5 3 1\n1 1 2\n", 2),
        ("5 3 1\n1 x 2\n", 2),
        ("# only a comment\n", 0),
    ],
)
def test_parse_errors_report_line_numbers(text, line):
    with pytest.raises(DesignFormatError) as err:
        parse_design(text)
    assert err.value.line == line


def test_file_round_trip(tmp_path):
    path = tmp_path / "fano.txt"
    write_design(FANO, path)
    assert read_design(path) == FANO
    assert path.read_text() == format_design(FANO)


def test_random_generators_produce_what_they_promise():
    rng = random.Random(31)
    for _ in range(50):
        assert classify(random_packing(rng, 8, 3, 1)).is_packing
        assert classify(random_covering(rng, 8, 4, 2)).is_covering
