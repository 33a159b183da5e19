import pytest

from shiftflip.constructions import (A_OF_FLIP, A_OF_SHIFT_FLIP, Lemma22Blocks, build_prop_d,
                                     clause_i_failures, is_af_power, is_marker, lemma22, lemma22_failures, lemma23_N,
                                     lemma23_witness, lemma_d_N, markers, prop_c, prop_d,
                                     psi_rule, splice_witness, theorem_a, theta_apply, to_one_step)
from shiftflip.errors import DomainError, PreconditionError, SearchBoundError
from shiftflip.flips import (OneBlockFlip, SlidingFlip, apply_flip_periodic, compose_shift,
                             reversal, validate_flip)
from shiftflip.indexsets import ALL, EMPTY, H
from shiftflip.invariants import a_membership, certify_nonconjugate, fvector
from shiftflip.points import PeriodicPoint
from shiftflip.sft import SftPresentation, ep_point_admissible
from shiftflip.words import SymbolInvolution, as_word


@pytest.fixture(scope="module")
def golden_d(golden, rho):
    return build_prop_d(golden, rho, "0")


def test_is_af_power():
    assert is_af_power((), (), "0")
    assert is_af_power(as_word("00"), (), "0")
    assert is_af_power(as_word("1010101"), as_word("1"), "0")
    assert not is_af_power(as_word("11"), as_word("1"), "0")


@pytest.mark.parametrize("forbidden,f,a,b", [
    (["11"], "1", "0", "00"),
    ([], "0", "", "1"),
    (["00", "11"], "0", "1", None),
])
def test_block_search(forbidden, f, a, b):
    X = SftPresentation.from_forbidden("01", 1, forbidden)
    if b is None:
        with pytest.raises(PreconditionError):
            lemma22(X, f)
        return
    blocks = lemma22(X, f)
    assert blocks.a == as_word(a) and blocks.b == as_word(b)
    assert lemma22_failures(X, blocks) == []


def test_block_search_rejects_foreign_symbol(golden):
    with pytest.raises(DomainError):
        lemma22(golden, "2")


def test_lemma23_N_is_least():
    for la in range(4):
        for lb in range(1, 5):
            blocks = Lemma22Blocks("0", ("1",) * la, ("1",) * lb)
            N = lemma23_N(blocks)
            lhs = 2 * la + 1 + 2 * (lb + 1)
            assert lhs <= (N - 1) * (la + 1)
            assert N == 1 or lhs > (N - 2) * (la + 1)


def test_lemma23_witness(golden, rho):
    wit = lemma23_witness(golden, rho, "0")
    assert (wit.N, wit.M, len(wit.w)) == (6, 8, 17)
    assert ep_point_admissible(golden, wit.point)
    assert a_membership(golden, rho, wit.point).member


def test_lemma23_needs_fixed_symbol(full2):
    swap = OneBlockFlip(full2, SymbolInvolution({"0": "1", "1": "0"}))
    with pytest.raises(PreconditionError):
        lemma23_witness(full2, swap, "0")


def test_prop_c_branches(golden, rho, full2):
    res = prop_c(golden, rho)
    assert res.branch == A_OF_FLIP and res.lemma23 is not None
    swap = OneBlockFlip(full2, SymbolInvolution({"0": "1", "1": "0"}))
    res = prop_c(full2, swap)
    assert res.branch in (A_OF_FLIP, A_OF_SHIFT_FLIP)
    assert a_membership(res.space, res.flip, res.witness).member
    res = prop_c(golden, compose_shift(rho, 1))
    assert res.chain and a_membership(res.space, res.flip, res.witness).member


def test_to_one_step_two_step_space():
    X = SftPresentation.from_forbidden("ab", 2, ["aaa", "bab"])
    Y, phi, chain = to_one_step(X, reversal(X))
    assert Y.step == 1 and len(chain) == 1 and validate_flip(phi).valid


def test_splice_witness(golden, rho):
    base = PeriodicPoint(("0",))
    y = splice_witness(golden, rho, base)
    assert a_membership(golden, rho, y).member
    with pytest.raises(PreconditionError):
        splice_witness(golden, compose_shift(rho, 1), PeriodicPoint(("0", "1")))


def test_prop_d_constants(golden_d):
    d = golden_d
    assert (d.alpha, d.beta, d.radius) == (1, 11, 12)
    assert d.c == as_word("001") and d.N == 8 == lemma_d_N(d.blocks, d.c)
    assert d.d == as_word("01" + "0" * 8)
    assert d.w == () and d.n == 46 and d.m == 34
    assert markers(d, d.z, 0, d.n - 1) == [0, 23]
    assert is_marker(d, d.z, 0) and not is_marker(d, d.z, 1)


def test_prop_d_needs_one_step():
    X = SftPresentation.from_forbidden("ab", 2, ["aaa", "bab"])
    with pytest.raises(PreconditionError):
        build_prop_d(X, reversal(X), "b")


def test_theta_without_markers_is_identity(golden_d):
    for word in ("0", "01", "00100"):
        p = PeriodicPoint(as_word(word))
        for A in (ALL, EMPTY, H(3)):
            assert theta_apply(golden_d, A, p).window(-20, 20) == p.window(-20, 20)


def test_theta_moves_z(golden_d):
    z = golden_d.z
    assert theta_apply(golden_d, EMPTY, z) == z
    assert theta_apply(golden_d, ALL, z) != z


def test_psi_rule_away_from_markers(golden_d):
    rule = psi_rule(golden_d)
    R = golden_d.radius
    u = ("0",) * (2 * R + 1)
    assert rule(u) == "0"
    v = ("0",) * R + ("1",) + ("0",) * R
    assert rule(v) == "1"


def test_prop_d_cap(golden, rho):
    with pytest.raises(SearchBoundError):
        prop_d(golden, rho, "0", block_cap=1000)


def test_prop_d_pipeline(propd_golden):
    d = propd_golden
    ver = d.verification
    assert ver["validate"] == "valid" and ver["a_witness"] == "IN"
    n = d.n
    assert ver["fvector_psi"][n - 1] > ver["fvector_phi"][n - 1]
    t = PeriodicPoint(tuple(ver["theta_n_z"]))
    assert apply_flip_periodic(d.psi, t) == t
    assert isinstance(d.psi, SlidingFlip) and d.psi.radius == 12


def test_clause_i(propd_golden):
    for n in range(1, 13):
        assert clause_i_failures(propd_golden, n) == []


def test_theorem_a_single_flip(golden, rho):
    rep = theorem_a(golden, rho, 1, horizon=8)
    assert rep.complete and len(rep.stages) == 1 and rep.certificates == []
    assert rep.stages[0].fvector.horizon == 8
    assert rep.to_json()["obtained"] == 1


def test_theorem_a_arguments(golden, full2):
    with pytest.raises(DomainError):
        theorem_a(golden, reversal(golden), 0)
    const = SlidingFlip(full2, 0, {("0",): "0", ("1",): "0"})
    with pytest.raises(PreconditionError):
        theorem_a(full2, const, 2)


def test_certificates_are_symmetric(propd_golden, rho, golden):
    n = propd_golden.n
    a = fvector(golden, rho, n)
    b = fvector(golden, propd_golden.psi, n)
    ab, ba = certify_nonconjugate(a, b), certify_nonconjugate(b, a)
    assert ab.n == ba.n and ab.reversed() == ba
