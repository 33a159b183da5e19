import json
from itertools import product

import pytest

from shiftflip.errors import DomainError, PreconditionError, SearchBoundError
from shiftflip.flips import (OneBlockFlip, SlidingFlip, apply_flip, apply_flip_ep,
                             apply_flip_lazy, apply_flip_periodic, as_one_block, compose_shift,
                             even_shift_conjugacy, flip_from_json, higher_block,
                             higher_block_code, recode_one_block, reversal, validate_flip,
                             verify_intertwining)
from shiftflip.points import EventuallyPeriodicPoint, PeriodicPoint
from shiftflip.sft import SftPresentation, language, periodic_points
from shiftflip.words import SymbolInvolution


def brute_valid(X, r, rule):
    """Containment and involution checked on every allowed (4r+m+1)-block.

    The block u holds x_t at index t + 2r + m, so phi(x)_j is known for
    j in [-r, r+m].
    """
    m = X.step
    for u in language(X, 4 * r + m + 1):
        img = [rule[u[2 * r + m - j - r:2 * r + m - j + r + 1]] for j in range(-r, r + m + 1)]
        if any(tuple(img[i:i + m + 1]) not in X.allowed for i in range(len(img) - m)):
            return False
        if rule[tuple(img[:2 * r + 1])] != u[2 * r + m]:
            return False
    return True


@pytest.mark.parametrize("forbidden", [[], ["11"]])
def test_validate_matches_brute_force_on_all_radius_1_rules(forbidden):
    X = SftPresentation.from_forbidden("01", 1, forbidden)
    windows = language(X, 3)
    valid = 0
    for outs in product("01", repeat=len(windows)):
        rule = dict(zip(windows, outs))
        got = validate_flip(SlidingFlip(X, 1, rule)).valid
        assert got == brute_valid(X, 1, rule), rule
        valid += got
    assert valid >= 2  # at least sigma rho and sigma^-1 rho


def test_reference_flips_are_valid(systems):
    for _, _, phi, _ in systems:
        rep = validate_flip(phi)
        assert rep.valid and rep.summary() == "valid"


def test_invalid_flips_are_reported(golden, full2):
    swap = OneBlockFlip(golden, SymbolInvolution({"0": "1", "1": "0"}))
    rep = validate_flip(swap)
    assert not rep.valid and rep.containment_violations
    assert "containment" in rep.summary()
    const = SlidingFlip(full2, 0, {("0",): "0", ("1",): "0"})
    rep = validate_flip(const)
    assert not rep.valid and rep.involution_violations
    partial = SlidingFlip(full2, 1, {("0", "0", "0"): "0"})
    rep = validate_flip(partial)
    assert not rep.valid and len(rep.missing_windows) == 7
    assert json.loads(json.dumps(rep.to_json()))["valid"] is False


def test_rule_or_fn_exactly_one(full2):
    with pytest.raises(DomainError):
        SlidingFlip(full2, 0)
    with pytest.raises(DomainError):
        SlidingFlip(full2, -1, fn=lambda u: u[0])


def test_symbol_map_needs_radius_zero(golden):
    with pytest.raises(PreconditionError):
        compose_shift(reversal(golden), 1).symbol_map()


def test_apply_flip_paths_agree(golden, rho):
    phi = compose_shift(rho, 1)
    p = EventuallyPeriodicPoint(("0",), ("1", "0", "0", "1"), ("0", "1", "0"), -2)
    ep = apply_flip_ep(phi, p)
    lazy = apply_flip_lazy(phi, p)
    assert ep.window(-30, 30) == lazy.window(-30, 30)
    assert apply_flip(phi, p) == ep
    q = PeriodicPoint(("0", "1", "0", "0"))
    assert apply_flip_periodic(phi, q).window(-9, 9) == apply_flip_lazy(phi, q).window(-9, 9)


def test_rho_reverses(golden, rho):
    p = EventuallyPeriodicPoint(("0",), ("1", "0", "1"), ("0",), 0)
    q = apply_flip_ep(rho, p)
    assert all(q.coord(i) == p.coord(-i) for i in range(-10, 11))


def test_compose_shift_is_sigma_k_phi(golden, rho):
    for k in (-3, -1, 1, 2):
        psi = compose_shift(rho, k)
        assert validate_flip(psi).valid
        for p in periodic_points(golden, 7):
            assert apply_flip_periodic(psi, p) == apply_flip_periodic(rho, p).shift(k)


def test_json_round_trip(golden, rho):
    phi = compose_shift(rho, 1)
    back = flip_from_json(golden, json.loads(json.dumps(phi.to_json())))
    assert back.radius == 1 and back.table == phi.table
    one = flip_from_json(golden, rho.to_json())
    assert as_one_block(one).tau == rho.tau
    with pytest.raises(DomainError):
        flip_from_json(golden, {"type": "other"})


def test_recode_intertwines(golden, rho):
    phi = compose_shift(rho, 1)
    Y, psi, desc = recode_one_block(golden, phi)
    assert validate_flip(psi).valid
    for n in range(1, 9):
        for p in periodic_points(golden, n):
            y = desc.apply_periodic(p)
            assert desc.invert_periodic(y) == p
            assert desc.apply_periodic(apply_flip_periodic(phi, p)) == apply_flip_periodic(psi, y)


def test_recode_rejects_invalid_and_respects_cap(golden, full2):
    with pytest.raises(PreconditionError):
        recode_one_block(full2, SlidingFlip(full2, 0, {("0",): "0", ("1",): "0"}))
    with pytest.raises(SearchBoundError):
        recode_one_block(golden, compose_shift(reversal(golden), 1), block_cap=10)


@pytest.mark.parametrize("N,shift", [(2, 1), (3, 0), (4, 1), (5, 0)])
def test_higher_block_parity(golden, rho, N, shift):
    XN, phiN = higher_block(golden, rho, N)
    code = higher_block_code(golden, N)
    assert validate_flip(phiN).valid
    src = compose_shift(rho, shift)
    for n in range(1, 9):
        for p in periodic_points(golden, n):
            y = code.apply_periodic(p)
            assert apply_flip_periodic(phiN, y) == code.apply_periodic(apply_flip_periodic(src, p))
            assert code.invert_periodic(y) == p


def test_higher_block_two_step():
    X = SftPresentation.from_forbidden("ab", 2, ["aaa", "bab"])
    X2, phi2 = higher_block(X, reversal(X), 3)
    assert X2.step == 1 and validate_flip(phi2).valid


def test_even_shift_conjugacy(golden, rho):
    theta = even_shift_conjugacy(rho, 0, 4)
    assert theta.k == 2
    assert verify_intertwining(rho, 0, 4, theta, 8) == []
    assert verify_intertwining(rho, 0, 4, even_shift_conjugacy(rho, 0, 2), 8) != []
    with pytest.raises(PreconditionError):
        even_shift_conjugacy(rho, 0, 1)
