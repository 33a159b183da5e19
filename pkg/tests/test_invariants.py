import pytest

from oracles import fixed_words, periodic_words
from shiftflip.errors import DomainError, PreconditionError
from shiftflip.flips import (OneBlockFlip, compose_shift, higher_block, recode_one_block,
                             reversal, validate_flip)
from shiftflip.invariants import (FVector, a_membership, certify_nonconjugate, difference_set,
                                  fixed_count, fvector, fvector_table)
from shiftflip.points import EventuallyPeriodicPoint
from shiftflip.sft import SftPresentation
from shiftflip.words import SymbolInvolution


def test_three_symbol_oracle():
    forb = ["aa", "bc", "cb"]
    X = SftPresentation.from_forbidden("abc", 1, forb)
    tau = {"a": "a", "b": "c", "c": "b"}
    phi = OneBlockFlip(X, SymbolInvolution(tau))
    assert validate_flip(phi).valid
    fv = fvector(X, phi, 10)
    assert list(fv.counts) == [len(fixed_words("abc", forb, n, tau)) for n in range(1, 11)]


def test_golden_sigma_rho_oracle(golden, rho):
    # sigma rho fixes x iff x_i = x_{-1-i}
    fv = fvector(golden, compose_shift(rho, 1), 12)
    for n in range(1, 13):
        want = [w for w in periodic_words("01", ["11"], n)
                if all(w[i] == w[(-1 - i) % n] for i in range(n))]
        assert fv[n] == len(want)
        assert fixed_count(golden, compose_shift(rho, 1), n) == fv[n]


def test_fvector_nesting(systems):
    for _, X, phi, _ in systems:
        assert fvector(X, phi, 24).nesting_failures() == []


def test_fvector_accessors():
    fv = FVector((1, 3, 2), "x")
    assert fv.horizon == 3 and fv[2] == 3
    with pytest.raises(DomainError):
        fv[0]
    with pytest.raises(DomainError):
        fv[4]
    assert fv.nesting_failures() == []
    assert FVector((3, 1, 2)).nesting_failures() == [(1, 2), (1, 3)]
    assert fv.to_csv() == "n,count\n1,1\n2,3\n3,2\n"
    assert fv.dominated_by(FVector((1, 3, 5)))
    assert not fv.dominated_by(FVector((1, 2, 5)))


def test_fvector_rejects_bad_arguments(golden, full2):
    with pytest.raises(DomainError):
        fvector(golden, reversal(full2), 3)
    with pytest.raises(DomainError):
        fvector(golden, reversal(golden), 0)


def test_conjugacy_invariance(golden, rho):
    base = fvector(golden, rho, 12).counts
    Y, psi, _ = recode_one_block(golden, compose_shift(rho, 2))
    assert fvector(Y, psi, 12).counts == fvector(golden, compose_shift(rho, 2), 12).counts
    X3, phi3 = higher_block(golden, rho, 3)
    assert fvector(X3, phi3, 12).counts == base
    # sigma^2 rho = sigma rho sigma^-1 is conjugate to rho
    assert fvector(golden, compose_shift(rho, 2), 12).counts == base


def test_certificates(golden, rho):
    a = fvector(golden, rho, 10)
    b = fvector(golden, compose_shift(rho, 1), 10)
    cert = certify_nonconjugate(a, b)
    assert cert is not None and cert.n == 2
    assert (cert.first_count, cert.second_count) == (3, 1)
    back = cert.reversed()
    assert (back.first, back.second, back.n) == (cert.second, cert.first, cert.n)
    assert certify_nonconjugate(a, a) is None
    with pytest.raises(DomainError):
        certify_nonconjugate(a, fvector(golden, rho, 5))


def test_fvector_table(golden, rho):
    a = fvector(golden, rho, 3)
    b = FVector(fvector(golden, compose_shift(rho, 1), 3).counts, "sigma rho")
    assert fvector_table([a, b]).splitlines()[0] == "n,rho,sigma rho"
    assert len(fvector_table([a, b]).splitlines()) == 4
    assert fvector_table([]) == "n\n"


def test_a_membership_examples(golden, rho):
    zero = EventuallyPeriodicPoint(("0",), (), ("0",), 0)
    assert a_membership(golden, rho, zero).verdict == "NOT_IN"
    one = EventuallyPeriodicPoint(("0",), ("1",), ("0",), 3)
    res = a_membership(golden, rho, one)
    assert res.verdict == "IN" and res.differences == (-3, 3)
    tails = EventuallyPeriodicPoint(("0",), (), ("0", "1"), 0)
    assert difference_set(rho, tails) is None
    assert a_membership(golden, rho, tails).reason == "difference set is infinite"
    with pytest.raises(PreconditionError):
        a_membership(golden, rho, EventuallyPeriodicPoint(("1",), (), ("0",), 0))


def test_a_membership_shifted_flip(golden, rho):
    # a single 1 at 0 is fixed by rho but moved by sigma rho
    p = EventuallyPeriodicPoint(("0",), ("1",), ("0",), 0)
    assert a_membership(golden, rho, p).verdict == "NOT_IN"
    assert a_membership(golden, compose_shift(rho, 1), p).differences == (-1, 0)
