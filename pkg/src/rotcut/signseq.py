"""Bi-chromatic sign sequences, their edit operations, reduction and trace.

A sign sequence records, left to right, where the red and the blue median
levels cross the green one: ``+`` for a crossing from above, ``-`` for one
from below. Only red and blue symbols occur, and each color's subsequence
has odd length and alternating signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .errors import InvalidEdit

RED, BLUE = "R", "B"


class Sym(NamedTuple):
    color: str  # "R" or "B"
    sign: int   # +1 or -1

    def inverse(self) -> "Sym":
        return Sym(self.color, -self.sign)

    def __str__(self) -> str:
        return f"{self.color}{'+' if self.sign > 0 else '-'}"


SignSeq = tuple  # tuple[Sym, ...]


class Run(NamedTuple):
    color: str
    length: int
    first_sign: int


def parse(text: str) -> SignSeq:
    """Parse the text encoding ``"R+ B+ B- R-"``."""
    out = []
    for tok in text.split():
        if len(tok) != 2 or tok[0] not in "RB" or tok[1] not in "+-":
            raise ValueError(f"bad sign-sequence token {tok!r}")
        out.append(Sym(tok[0], 1 if tok[1] == "+" else -1))
    return tuple(out)


def format_seq(seq: Sequence[Sym]) -> str:
    return " ".join(str(s) for s in seq)


def validate(seq: Sequence[Sym]) -> Optional[str]:
    """Return None if ``seq`` is a bi-chromatic sign sequence, else the first violation."""
    for i, s in enumerate(seq):
        if s.color not in (RED, BLUE):
            return f"symbol {i} has color {s.color!r}; only red and blue are allowed"
        if s.sign not in (1, -1):
            return f"symbol {i} has sign {s.sign!r}"
    for color, name in ((RED, "red"), (BLUE, "blue")):
        sub = [s.sign for s in seq if s.color == color]
        if len(sub) % 2 == 0:
            return f"{name} subsequence has even length {len(sub)}"
        for a, b in zip(sub, sub[1:]):
            if a == b:
                return f"{name} subsequence does not alternate"
    return None


def is_valid(seq: Sequence[Sym]) -> bool:
    return validate(seq) is None


def runs(seq: Sequence[Sym]) -> list[Run]:
    out: list[Run] = []
    for s in seq:
        if out and out[-1].color == s.color:
            out[-1] = out[-1]._replace(length=out[-1].length + 1)
        else:
            out.append(Run(s.color, 1, s.sign))
    return out


def expand(rs: Sequence[Run]) -> SignSeq:
    out = []
    for r in rs:
        sign = r.first_sign
        for _ in range(r.length):
            out.append(Sym(r.color, sign))
            sign = -sign
    return tuple(out)


def reduce(seq: Sequence[Sym]) -> list[Run]:
    """Reduced sequence as runs: even monochromatic blocks removed until colors alternate.

    Single left-to-right pass with a run stack. The stack always holds odd
    runs of alternating color; an incoming run either merges into the top
    (same color, keeping the left first sign) or is pushed, and an even top
    is popped.
    """
    stack: list[Run] = []
    for r in runs(seq):
        if stack and stack[-1].color == r.color:
            top = stack[-1]
            stack[-1] = Run(top.color, top.length + r.length, top.first_sign)
        else:
            stack.append(r)
        if stack[-1].length % 2 == 0:
            stack.pop()
    return stack


def signed_sum(rs: Sequence[Run]) -> int:
    """Sum of signs of the expanded runs (an odd alternating run contributes its first sign)."""
    return sum(r.first_sign if r.length % 2 else 0 for r in rs)


def trace(seq: Sequence[Sym]) -> int:
    """Two-valued invariant ((signed sum + lambda)/2) mod 2 of the reduced sequence."""
    rho = reduce(seq)
    if not rho:
        raise ValueError("trace of an invalid sign sequence")
    lam = 2 if rho[0].color == RED else 0
    return ((signed_sum(rho) + lam) // 2) % 2


def reverse(seq: Sequence[Sym]) -> SignSeq:
    return tuple(s.inverse() for s in reversed(seq))


# edits


@dataclass(frozen=True)
class Switch:
    position: int


@dataclass(frozen=True)
class Delete:
    position: int


@dataclass(frozen=True)
class Insert:
    """Insert a same-colored pair at ``position`` (before the symbol currently there).

    ``first_sign`` is the sign of the first inserted symbol; the second has the
    opposite sign. The pair must keep the color subsequence alternating.
    """

    position: int
    color: str
    first_sign: int


@dataclass(frozen=True)
class TransferFirstToEnd:
    pass


@dataclass(frozen=True)
class TransferLastToFront:
    pass


Edit = Union[Switch, Delete, Insert, TransferFirstToEnd, TransferLastToFront]


def insert_sign(seq: Sequence[Sym], position: int, color: str) -> int:
    """First sign of the only pair of ``color`` insertable at ``position``."""
    prev = next((s for s in reversed(seq[:position]) if s.color == color), None)
    if prev is not None:
        # s_i precedes: insert inverse(s_i), s_i   (cases (i) and (iii))
        return -prev.sign
    nxt = next((s for s in seq[position:] if s.color == color), None)
    if nxt is None:
        raise InvalidEdit(f"no {color} symbol to anchor the insertion")
    # s_j is the first of its color: insert s_j, inverse(s_j)   (case (ii))
    return nxt.sign


def apply_edit(seq: Sequence[Sym], e: Edit) -> SignSeq:
    seq = tuple(seq)
    k = len(seq)
    if isinstance(e, Switch):
        i = e.position
        if not 0 <= i < k - 1:
            raise InvalidEdit(f"switch position {i} out of range")
        if seq[i].color == seq[i + 1].color:
            raise InvalidEdit("switch needs adjacent symbols of different colors")
        return seq[:i] + (seq[i + 1], seq[i]) + seq[i + 2:]
    if isinstance(e, Delete):
        i = e.position
        if not 0 <= i < k - 1:
            raise InvalidEdit(f"delete position {i} out of range")
        if seq[i].color != seq[i + 1].color:
            raise InvalidEdit("delete needs adjacent symbols of the same color")
        if seq[i].sign == seq[i + 1].sign:
            raise InvalidEdit("adjacent same-colored symbols must have opposite signs")
        return seq[:i] + seq[i + 2:]
    if isinstance(e, Insert):
        i = e.position
        if not 0 <= i <= k:
            raise InvalidEdit(f"insert position {i} out of range")
        if e.color not in (RED, BLUE):
            raise InvalidEdit(f"bad color {e.color!r}")
        want = insert_sign(seq, i, e.color)
        if e.first_sign != want:
            raise InvalidEdit(
                f"pair must start with {'+' if want > 0 else '-'} to keep {e.color} alternating"
            )
        pair = (Sym(e.color, want), Sym(e.color, -want))
        return seq[:i] + pair + seq[i:]
    if isinstance(e, TransferLastToFront):
        if not seq:
            raise InvalidEdit("transfer on an empty sequence")
        return (seq[-1].inverse(),) + seq[:-1]
    if isinstance(e, TransferFirstToEnd):
        if not seq:
            raise InvalidEdit("transfer on an empty sequence")
        return seq[1:] + (seq[0].inverse(),)
    raise TypeError(f"unknown edit {e!r}")


def applicable_edits(seq: Sequence[Sym], include_switches: bool = False) -> list[Edit]:
    """Every edit applicable to ``seq`` (switches only on request)."""
    out: list[Edit] = [TransferFirstToEnd(), TransferLastToFront()]
    for i in range(len(seq) - 1):
        if seq[i].color == seq[i + 1].color:
            out.append(Delete(i))
        elif include_switches:
            out.append(Switch(i))
    for i in range(len(seq) + 1):
        for color in (RED, BLUE):
            out.append(Insert(i, color, insert_sign(seq, i, color)))
    return out
