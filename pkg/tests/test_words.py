from hypothesis import given
from hypothesis import strategies as st
import pytest

from shiftflip.errors import DomainError
from shiftflip.indexsets import ALL, EMPTY, H, Complement, Negate, SymmDiff, Translate, Union, \
    index_member
from shiftflip.points import EventuallyPeriodicPoint, PeriodicPoint, point_coord
from shiftflip.words import Alphabet, SymbolInvolution, as_word, star_word


def test_star_examples():
    ident = SymbolInvolution.identity("01")
    assert star_word(as_word("011"), ident) == as_word("110")
    assert star_word((), ident) == ()
    ab = SymbolInvolution.swap("ab", "a", "b")
    assert star_word(as_word("ab"), ab) == as_word("ab")
    assert star_word(star_word(as_word("aab"), ab), ab) == as_word("aab")


def test_star_rejects_foreign_symbol():
    with pytest.raises(DomainError):
        star_word(as_word("2"), SymbolInvolution.identity("01"))


def test_involution_must_square_to_identity():
    with pytest.raises(DomainError):
        SymbolInvolution({"a": "b", "b": "c", "c": "a"})


def test_alphabet_rejects_duplicates():
    with pytest.raises(DomainError):
        Alphabet(("0", "0"))
    with pytest.raises(DomainError):
        Alphabet(())


@given(st.text(alphabet="abc", max_size=12), st.sampled_from(["id", "ab", "bc"]))
def test_star_is_involutive(w, which):
    tau = SymbolInvolution.identity("abc") if which == "id" else \
        SymbolInvolution.swap("abc", which[0], which[1])
    w = as_word(w)
    once = star_word(w, tau)
    assert len(once) == len(w)
    assert star_word(once, tau) == w


def test_point_coord_examples():
    p = EventuallyPeriodicPoint(("0",), ("1",), ("0",), 0)
    assert point_coord(p, 0) == "1"
    assert point_coord(p, -5) == "0"
    q = EventuallyPeriodicPoint(tuple("ab"), (), ("c",), 0)
    assert point_coord(q, -1) == "b"
    assert point_coord(q, -2) == "a"
    assert point_coord(q, 3) == "c"


def test_ep_equality_uses_coordinates():
    p = EventuallyPeriodicPoint(("0",), ("1",), ("0",), 0)
    q = EventuallyPeriodicPoint(("0",), tuple("010"), ("0",), -1)
    assert p == q and hash(p) == hash(q)
    assert p != EventuallyPeriodicPoint(("0",), ("1",), ("0",), 1)


def test_periodic_point_shift():
    p = PeriodicPoint(as_word("001"))
    assert p.shift(1).word == as_word("010")
    assert p.shift(3) == p


def test_index_set_examples():
    assert H(3).members(0, 6) == [1, 4]
    assert H(2).members(-10, 10) == []
    assert sorted(H(4).members(-8, 8)) == [-7, -3, 1, 5]
    assert index_member(SymmDiff(ALL, Negate(H(4))), 0)
    with pytest.raises(DomainError):
        H(0)


def _sets():
    leaves = st.sampled_from([ALL, EMPTY] + [H(n) for n in range(1, 9)])
    return st.recursive(leaves, lambda kids: st.one_of(
        st.builds(Translate, st.integers(-9, 9), kids),
        st.builds(Negate, kids),
        st.builds(SymmDiff, kids, kids),
        st.builds(Complement, kids),
        st.builds(Union, kids, kids)), max_leaves=6)


@given(_sets(), _sets(), st.integers(-20, 20))
def test_index_set_algebra(A, B, m):
    for i in range(-1000, 1001, 7):
        assert index_member(SymmDiff(A, B), i) == (index_member(A, i) != index_member(B, i))
        assert index_member(Translate(m, A), i) == index_member(A, i - m)
        assert index_member(Negate(A), i) == index_member(A, -i)
        assert index_member(A, i) == index_member(A, i + A.period())


def test_H_is_n_periodic():
    for n in range(1, 13):
        for i in range(-200, 201):
            assert (i in H(n)) == ((i - n) in H(n))


def test_H_partition():
    # H(n), -H(n) and the rest partition Z; the rest is nZ or nZ + {0, n/2}
    for n in range(1, 13):
        for i in range(-60, 61):
            pos, neg = i in H(n), -i in H(n)
            assert not (pos and neg)
            rest = not pos and not neg
            expect = i % n == 0 or (n % 2 == 0 and i % n == n // 2)
            assert rest == expect
