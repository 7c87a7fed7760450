"""Shared instance generators for the differential tests."""

from __future__ import annotations

import random

from edsm.boolean_linalg import BoolMatrix
from edsm.eds_core import BitVector, EDString, Pattern, Segment
from edsm.stringology import TypeLabel, classify_type

ADMISSIBLE_LENGTHS = {
    ell: [n for n in range(ell, 2 * ell) if 8 * n >= 9 * ell and 4 * n < 5 * ell]
    for ell in (8, 16, 32, 64)
}


def random_edstring(
    rng: random.Random,
    max_n: int = 8,
    max_alts: int = 4,
    max_len: int = 6,
    eps_prob: float = 0.2,
    alphabet: str = "abc",
) -> EDString:
    segs = []
    for _ in range(rng.randint(1, max_n)):
        alts = set()
        if rng.random() < eps_prob:
            alts.add("")
        for _ in range(rng.randint(1, max_alts)):
            length = rng.randint(1, max_len)
            alts.add("".join(rng.choice(alphabet) for _ in range(length)))
        segs.append(Segment(frozenset(alts)))
    return EDString(tuple(segs))


def random_pattern(rng: random.Random, max_m: int = 12, alphabet: str = "abc") -> Pattern:
    m = rng.randint(1, max_m)
    return Pattern("".join(rng.choice(alphabet) for _ in range(m)))


def make_typed_member(rng: random.Random, ell: int, label: TypeLabel) -> str:
    """A string of the requested type with admissible length for this ell."""
    target = rng.choice(ADMISSIBLE_LENGTHS[ell])
    while True:
        if label is TypeLabel.Type3:
            r = rng.randint(1, ell // 4)
            root = "".join(rng.choice("ab") for _ in range(r))
            s = (root * (target // r + 1))[:target]
        elif label is TypeLabel.Type1:
            s = "".join(rng.choice("ab") for _ in range(target))
        else:
            p = rng.randint(1, ell // 4)
            root = "".join(rng.choice("ab") for _ in range(p))
            run_len = rng.randint(ell, target)
            run = (root * (run_len // p + 2))[:run_len]
            spare = target - run_len
            left = rng.randint(0, spare)
            s = (
                "".join(rng.choice("ab") for _ in range(left))
                + run
                + "".join(rng.choice("ab") for _ in range(spare - left))
            )
        if len(s) == target and classify_type(s, ell) is label:
            return s


def typed_ap_instance(
    rng: random.Random, ell: int, label: TypeLabel, max_m: int = 256
) -> tuple[Pattern, BitVector, list[str], int]:
    """(pattern, u, members, ell) with members of one type embedded in P."""
    members = [make_typed_member(rng, ell, label) for _ in range(rng.randint(1, 3))]
    pieces = []
    budget = max_m
    for s in members:
        filler = "".join(rng.choice("ab") for _ in range(rng.randint(0, 8)))
        pieces.append(filler)
        pieces.append(s)
        budget -= len(filler) + len(s)
    if budget > 0:
        pieces.append("".join(rng.choice("ab") for _ in range(rng.randint(0, budget))))
    letters = "".join(pieces)[:max_m]
    if len(letters) < 24:
        letters = letters + "a" * (24 - len(letters))
    pattern = Pattern(letters)
    u = BitVector(pattern.m, rng.getrandbits(pattern.m) | 1)
    return pattern, u, members, ell


def random_bool_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.5) -> BoolMatrix:
    return BoolMatrix.from_rows(
        [[1 if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]
    )
