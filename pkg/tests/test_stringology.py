import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edsm.stringology import (
    PeriodicRun,
    TypeLabel,
    all_maximal_runs,
    border_array,
    classify_type,
    is_strongly_periodic,
    least_rotation,
    maximal_periodic_run,
    period,
    word_root,
)

from conftest import ADMISSIBLE_LENGTHS, make_typed_member

short_binary = st.text(alphabet="ab", min_size=1, max_size=24)
short_ternary = st.text(alphabet="abc", min_size=1, max_size=20)


def naive_periods(s: str) -> list[int]:
    n = len(s)
    return [p for p in range(1, n + 1) if all(s[i] == s[i + p] for i in range(n - p))]


def naive_window_classify(s: str, ell: int) -> TypeLabel:
    flags = [
        is_strongly_periodic(s[i : i + ell]) for i in range(len(s) - ell + 1)
    ]
    if all(flags):
        return TypeLabel.Type3
    if any(flags):
        return TypeLabel.Type2
    return TypeLabel.Type1


def naive_maximal_runs(s: str, ell: int) -> set[tuple[int, int, int]]:
    """All (start, end, period) 1-indexed maximal substrings of length >= ell
    whose period is at most ell/4, maximality being non-extendability while
    keeping that same period."""
    out = set()
    n = len(s)
    for i in range(n):
        for j in range(i + ell - 1, n):
            sub = s[i : j + 1]
            p = period(sub)
            if 4 * p > ell:
                continue
            if i > 0 and s[i - 1] == s[i - 1 + p]:
                continue
            if j + 1 < n and s[j + 1] == s[j + 1 - p]:
                continue
            out.add((i + 1, j + 1, p))
    return out


class TestPeriods:
    @given(short_ternary)
    def test_period_matches_definition(self, s):
        assert period(s) == naive_periods(s)[0]

    @given(short_ternary)
    def test_border_array_matches_prefix_periods(self, s):
        b = border_array(s)
        for i in range(len(s)):
            prefix = s[: i + 1]
            assert b[i] == (i + 1) - naive_periods(prefix)[0]

    def test_period_of_empty_rejected(self):
        with pytest.raises(ValueError):
            period("")

    @given(short_binary)
    def test_fine_wilf(self, s):
        periods = naive_periods(s)
        for p in periods:
            for q in periods:
                g = math.gcd(p, q)
                if p + q - g <= len(s):
                    assert g in periods

    def test_strongly_periodic_threshold_is_exact(self):
        assert is_strongly_periodic("abababab")  # per 2, len 8
        assert not is_strongly_periodic("abababa")  # per 2, len 7


class TestRotations:
    @given(short_ternary)
    def test_least_rotation_is_minimum(self, s):
        rotations = [s[i:] + s[:i] for i in range(len(s))]
        assert least_rotation(s) == min(rotations)

    @given(short_ternary)
    def test_word_root_is_primitive_rotation_of_period_prefix(self, s):
        r = word_root(s)
        prefix = s[: period(s)]
        assert len(r) == len(prefix)
        assert r in prefix + prefix  # a rotation
        assert period(r * 2) == len(r)  # primitive

    @given(short_ternary, st.integers(0, 19))
    def test_root_is_rotation_invariant_for_full_repetitions(self, s, k):
        w = s[: period(s)]
        if w * (len(s) // len(w)) != s[: len(w) * (len(s) // len(w))]:
            return
        rot = w[k % len(w) :] + w[: k % len(w)]
        assert word_root(rot * 3) == word_root(w * 3)


class TestClassify:
    @pytest.mark.parametrize("ell", [8, 16, 32])
    def test_matches_window_definition(self, ell):
        rng = random.Random(ell)
        for _ in range(300):
            n = rng.choice(ADMISSIBLE_LENGTHS[ell])
            s = "".join(rng.choice("ab") for _ in range(n))
            assert classify_type(s, ell) == naive_window_classify(s, ell)

    @pytest.mark.parametrize("ell", [8, 16])
    @pytest.mark.parametrize("label", list(TypeLabel))
    def test_constructed_members_classify_as_requested(self, ell, label):
        rng = random.Random(hash((ell, label.value)) & 0xFFFF)
        for _ in range(50):
            s = make_typed_member(rng, ell, label)
            assert classify_type(s, ell) == naive_window_classify(s, ell) == label

    def test_exhaustive_small(self):
        # Every admissible binary string for ell=8 (lengths 9 only).
        ell = 8
        for n in ADMISSIBLE_LENGTHS[ell]:
            for code in range(1 << n):
                s = "".join("ab"[(code >> i) & 1] for i in range(n))
                assert classify_type(s, ell) == naive_window_classify(s, ell)

    def test_length_precondition(self):
        with pytest.raises(ValueError):
            classify_type("ab" * 8, 8)  # 16 >= 5/4 * 8
        with pytest.raises(ValueError):
            classify_type("ab" * 4, 8)  # 8 < 9/8 * 8


class TestRuns:
    @pytest.mark.parametrize("ell", [8, 12, 16])
    def test_all_maximal_runs_match_brute_force(self, ell):
        rng = random.Random(ell * 7)
        for _ in range(250):
            n = rng.randint(1, 3 * ell)
            s = "".join(rng.choice("ab") for _ in range(n))
            got = {(r.start, r.end, r.period) for r in all_maximal_runs(s, ell)}
            assert got == naive_maximal_runs(s, ell)

    @pytest.mark.parametrize("ell", [8, 16])
    def test_unique_run_of_admissible_member(self, ell):
        rng = random.Random(ell)
        for _ in range(200):
            n = rng.choice(ADMISSIBLE_LENGTHS[ell])
            s = "".join(rng.choice("ab") for _ in range(n))
            run = maximal_periodic_run(s, ell)
            brute = naive_maximal_runs(s, ell)
            if run is None:
                # The block scheme inspects the centre window only; a run
                # must cover it, so absence there means no run anywhere
                # long enough to span the centre of an admissible member.
                assert all(
                    not (a <= ell // 2 + 1 and b >= ell) for a, b, _ in brute
                )
            else:
                assert (run.start, run.end, run.period) in brute
                assert run.length >= ell

    def test_run_dataclass(self):
        r = PeriodicRun(3, 10, 2)
        assert r.length == 8

    @pytest.mark.parametrize("ell", [8, 12, 16])
    def test_pairwise_overlap_below_half_ell(self, ell):
        rng = random.Random(ell + 99)
        for _ in range(200):
            s = "".join(rng.choice("ab") for _ in range(rng.randint(ell, 4 * ell)))
            runs = all_maximal_runs(s, ell)
            for i in range(len(runs)):
                for j in range(i + 1, len(runs)):
                    lo = max(runs[i].start, runs[j].start)
                    hi = min(runs[i].end, runs[j].end)
                    assert 2 * max(0, hi - lo + 1) < ell
