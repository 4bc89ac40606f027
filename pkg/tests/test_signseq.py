import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_signseq
from rotcut.errors import InvalidEdit
from rotcut.signseq import (
    Delete,
    Insert,
    Run,
    Switch,
    TransferFirstToEnd,
    TransferLastToFront,
    applicable_edits,
    apply_edit,
    expand,
    format_seq,
    is_valid,
    parse,
    reduce,
    reverse,
    runs,
    signed_sum,
    trace,
    validate,
)


def naive_reduce(seq):
    """Delete any maximal even monochromatic block until none is left."""
    cur = list(seq)
    while True:
        blocks, i = [], 0
        while i < len(cur):
            j = i
            while j < len(cur) and cur[j].color == cur[i].color:
                j += 1
            blocks.append((i, j))
            i = j
        even = [(i, j) for i, j in blocks if (j - i) % 2 == 0]
        if not even:
            return runs(cur)
        i, j = even[0]
        cur = cur[:i] + cur[j:]


def naive_trace(seq):
    rs = naive_reduce(seq)
    sigma = sum(r.first_sign for r in rs)
    lam = 2 if rs[0].color == "R" else 0
    return ((sigma + lam) // 2) % 2


sequences = st.builds(lambda seed: random_signseq(random.Random(seed), 60), st.integers(0, 10 ** 9))


def test_validate_examples():
    assert validate(parse("R+ B-")) is None
    assert "blue" in validate(parse("R+ B+ B- R- R+"))
    assert validate(()) is not None


def test_validate_rejects_non_alternating():
    assert "alternate" in validate(parse("R+ R+ R- B+"))


def test_reduce_examples():
    assert reduce(parse("R+ B+ B- R- R+ B+")) == [Run("R", 3, 1), Run("B", 1, 1)]
    assert format_seq(expand(reduce(parse("R+ B+ B- R- R+ B+")))) == "R+ R- R+ B+"
    assert format_seq(expand(reduce(parse("R+ B-")))) == "R+ B-"
    assert format_seq(expand(reduce(parse("R- R+ B+ R-")))) == "B+ R-"


def test_trace_examples():
    assert trace(parse("R+ B-")) == 1
    assert trace(parse("B+ R-")) == 0
    assert trace(parse("R+ B+ B- R- R+ B+")) == 0


def test_reverse_examples():
    assert format_seq(reverse(parse("R+ B-"))) == "B+ R-"
    assert format_seq(reverse(parse("R+ B+ R- R+"))) == "R- R+ B- R-"


def test_edit_examples():
    s = parse("R+ B+")
    flipped = apply_edit(s, Switch(0))
    assert format_seq(flipped) == "B+ R+"
    assert (trace(s), trace(flipped)) == (0, 1)

    s = parse("R+ B+ B- R- R+ B+")
    d = apply_edit(s, Delete(1))
    assert format_seq(d) == "R+ R- R+ B+" and trace(d) == trace(s) == 0

    s = parse("R+ B+ R- R+")
    t = apply_edit(s, TransferLastToFront())
    assert format_seq(t) == "R- R+ B+ R-" and trace(t) == trace(s) == 0


def test_invalid_edits_raise():
    s = parse("R+ B+ B- R- R+ B+")
    with pytest.raises(InvalidEdit):
        apply_edit(s, Switch(1))  # same colors
    with pytest.raises(InvalidEdit):
        apply_edit(s, Delete(0))  # different colors
    with pytest.raises(InvalidEdit):
        apply_edit(s, Insert(0, "R", -1))  # R- R+ R+ breaks alternation
    with pytest.raises(InvalidEdit):
        apply_edit((), TransferFirstToEnd())


def test_insert_keeps_alternation():
    s = parse("R+ B-")
    for i in range(3):
        for c in "RB":
            for sign in (1, -1):
                try:
                    out = apply_edit(s, Insert(i, c, sign))
                except InvalidEdit:
                    continue
                assert is_valid(out)


def test_stack_reduce_matches_fixpoint_oracle():
    rng = random.Random(7)
    for _ in range(2000):
        s = random_signseq(rng, 80)
        assert reduce(s) == naive_reduce(s)
        assert trace(s) == naive_trace(s)


def test_reduced_shape():
    rng = random.Random(8)
    for _ in range(500):
        rs = reduce(random_signseq(rng))
        assert rs[0].color != rs[-1].color
        assert all(r.length % 2 == 1 for r in rs)
        assert all(a.color != b.color for a, b in zip(rs, rs[1:]))
        assert signed_sum(rs) in (-2, 0, 2)


@given(sequences)
@settings(max_examples=200, deadline=None)
def test_reduce_is_idempotent(s):
    assert reduce(expand(reduce(s))) == reduce(s)


@given(sequences)
@settings(max_examples=200, deadline=None)
def test_reverse_is_an_involution(s):
    assert reverse(reverse(s)) == s
    assert is_valid(reverse(s))


@given(sequences, st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_edits_preserve_validity(s, r):
    for _ in range(5):
        e = r.choice(applicable_edits(s, include_switches=True))
        s = apply_edit(s, e)
        assert is_valid(s)


def test_non_switch_edits_never_reach_the_reverse():
    rng = random.Random(9)
    for _ in range(300):
        s = random_signseq(rng, 40)
        target = reverse(s)
        cur = s
        for _ in range(30):
            cur = apply_edit(cur, rng.choice(applicable_edits(cur)))
            assert cur != target
            assert trace(cur) != trace(target)


def test_switches_sometimes_keep_the_trace():
    # a switch is required for a trace change but does not force one
    kept = flipped = 0
    rng = random.Random(10)
    for _ in range(300):
        s = random_signseq(rng, 30)
        for e in applicable_edits(s, include_switches=True):
            if isinstance(e, Switch):
                if trace(apply_edit(s, e)) == trace(s):
                    kept += 1
                else:
                    flipped += 1
    assert kept > 0 and flipped > 0
    s = parse("B+ R+ B- R- B+ R+")
    assert trace(s) == trace(apply_edit(s, Switch(3))) == 1
