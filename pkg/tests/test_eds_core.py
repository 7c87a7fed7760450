import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edsm.eds_core import (
    ALPHABET,
    BitVector,
    EDSParseError,
    EDString,
    Pattern,
    Segment,
    decode_symbol,
    encode_symbol,
    iter_parse_eds,
    parse_eds,
    parse_pattern_text,
    serialize_eds,
    serialize_string,
)

alt_text = st.text(alphabet="abcXY01", max_size=6)
segment_st = st.frozensets(alt_text, min_size=1, max_size=4).map(Segment)
edstring_st = st.lists(segment_st, min_size=1, max_size=6).map(
    lambda segs: EDString(tuple(segs))
)


class TestSegment:
    def test_requires_an_alternative(self):
        with pytest.raises(ValueError):
            Segment(frozenset())

    def test_epsilon_flag_and_size(self):
        seg = Segment(frozenset({"", "ab", "c"}))
        assert seg.contains_epsilon
        assert seg.size == 3
        assert not Segment(frozenset({"ab"})).contains_epsilon

    def test_edstring_counts(self):
        t = EDString((Segment(frozenset({"ab"})), Segment(frozenset({"", "cde"}))))
        assert t.n == 2
        assert t.N == 5

    def test_empty_edstring_rejected(self):
        with pytest.raises(ValueError):
            EDString(())


class TestPattern:
    def test_rejects_empty_and_illegal(self):
        with pytest.raises(ValueError):
            Pattern("")
        with pytest.raises(ValueError):
            Pattern("a{b")

    def test_accepts_tagged_symbols(self):
        Pattern("ab" + encode_symbol(3, 7))

    @given(st.integers(1, 5), st.integers(0, 1279))
    def test_symbol_round_trip(self, kind, ident):
        assert decode_symbol(encode_symbol(kind, ident)) == (kind, ident)

    def test_symbol_range_checks(self):
        with pytest.raises(ValueError):
            encode_symbol(0, 0)
        with pytest.raises(ValueError):
            encode_symbol(6, 0)
        with pytest.raises(ValueError):
            encode_symbol(1, 1280)
        with pytest.raises(ValueError):
            decode_symbol("a")


class TestBitVector:
    def test_one_indexed_get_set(self):
        v = BitVector(5)
        v.set(1)
        v.set(5)
        assert v.get(1) == 1 and v.get(2) == 0 and v.get(5) == 1
        assert v.ones() == [1, 5]
        v.set(1, 0)
        assert v.ones() == [5]

    def test_bounds(self):
        v = BitVector(3)
        with pytest.raises(IndexError):
            v.get(0)
        with pytest.raises(IndexError):
            v.set(4)

    @given(st.text(alphabet="01", min_size=0, max_size=40))
    def test_from01_round_trip(self, bits):
        assert BitVector.from01(bits).to01() == bits

    def test_or_and_eq(self):
        a = BitVector.from01("0110")
        b = BitVector.from01("0011")
        assert (a | b).to01() == "0111"
        assert a == BitVector.from01("0110")
        assert a != b
        with pytest.raises(ValueError):
            a | BitVector(3)

    def test_mask_is_trimmed_to_length(self):
        assert BitVector(3, 0b11111).to01() == "111"


class TestParsing:
    def test_deterministic_run_and_braces(self):
        t = parse_eds("AT{A,T}C")
        assert t.n == 3
        assert t.segments[0].alternatives == frozenset({"AT"})
        assert t.segments[1].alternatives == frozenset({"A", "T"})

    def test_epsilon_token(self):
        t = parse_eds("{TA,TATA,}")
        assert t.segments[0].contains_epsilon
        assert t.segments[0].alternatives == frozenset({"TA", "TATA", ""})

    def test_whitespace_ignored(self):
        assert parse_eds("A T\n{G ,T}") == parse_eds("AT{G,T}")

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("{AC,A", "unbalanced"),
            ("{a{b}}", "nested"),
            ("a;b", "illegal"),
            ("{a,b};", "illegal"),
            ("", "empty"),
            ("<1:x>", "malformed"),
            ("<1:99999>a", "escape"),
        ],
    )
    def test_errors_carry_byte_offsets(self, text, fragment):
        with pytest.raises(EDSParseError) as err:
            parse_eds(text)
        assert "byte offset" in str(err.value)
        assert err.value.offset >= 0

    def test_error_offset_points_at_offender(self):
        with pytest.raises(EDSParseError) as err:
            parse_eds("abc;")
        assert err.value.offset == 3

    def test_tagged_symbols_in_both_contexts(self):
        sym = encode_symbol(2, 5)
        t = parse_eds("a<2:5>{<2:5>b,}")
        assert t.segments[0].alternatives == frozenset({"a" + sym})
        assert t.segments[1].alternatives == frozenset({sym + "b", ""})

    def test_streaming_yields_before_later_errors(self):
        stream = io.StringIO("ab{c,d}{e")
        it = iter_parse_eds(stream)
        assert next(it).alternatives == frozenset({"ab"})
        assert next(it).alternatives == frozenset({"c", "d"})
        with pytest.raises(EDSParseError):
            next(it)

    @given(edstring_st)
    @settings(max_examples=150)
    def test_serialize_parse_round_trip(self, t):
        assert parse_eds(serialize_eds(t)) == t

    @given(st.text(alphabet=sorted(ALPHABET) + [encode_symbol(1, 0), encode_symbol(5, 9)],
                   min_size=1, max_size=12))
    def test_pattern_serialize_round_trip(self, letters):
        assert parse_pattern_text(serialize_string(letters)).letters == letters

    def test_example_text_shape(self):
        t = parse_eds("ATGTA{A,T}C{G,T}CG{TA,TATA,}{TATGC,TTTTA}")
        assert (t.n, t.N) == (7, 28)
