import pytest

from edskit.closedform import load_spec
from edskit.errors import ParameterError
from edskit.squarecube import (
    CUBE, ORDERS, SQUARE, VERDICTS, Always, AlwaysHolds, Conjunction, Iff, Never, NeverHolds,
    SquareCubeQuery, ZeroTerm, alphas_from_pell, classify, cube_of, eval_condition, search_alphas,
    square_of, verify_classification, verify_many,
)


def q(N, target, power, n):
    return classify(SquareCubeQuery(N, target, power, n))


def test_verdict_examples():
    assert q(8, "G", SQUARE, 16) == Always()
    assert q(8, "G", SQUARE, 10) == Iff(square_of("(alpha-1)(2alpha-1)"))
    assert q(8, "G", SQUARE, 3) == Never()
    assert q(4, "G", CUBE, 5) == ZeroTerm()  # odd n: G_n = 0 for N = 4
    assert q(4, "G", CUBE, 6) == Always()
    assert q(8, "G", CUBE, 14) == Iff(cube_of("alpha"))
    assert q(8, "H", SQUARE, 11) == Iff(square_of("alpha"))
    assert q(12, "H", SQUARE, 16) == Iff(square_of("theta"))
    assert q(3, "H", CUBE, 5) == Iff(cube_of("a3"))
    assert q(3, "H", CUBE, 4) == ZeroTerm()


def test_invalid_queries():
    with pytest.raises(ParameterError):
        SquareCubeQuery(2, "H", SQUARE, 3)
    with pytest.raises(ParameterError):
        SquareCubeQuery(11, "G", SQUARE, 3)
    with pytest.raises(ParameterError):
        SquareCubeQuery(8, "G", "fourth", 3)
    with pytest.raises(ParameterError):
        SquareCubeQuery(8, "F", SQUARE, 3)


@pytest.mark.parametrize("N", ORDERS)
def test_zero_terms_match_closed_forms(N):
    for target in ("G",) if N == 2 else ("G", "H"):
        spec = load_spec(N, target)
        for n in range(1, 6 * N + 1):
            for power in (SQUARE, CUBE):
                assert isinstance(q(N, target, power, n), ZeroTerm) == spec.is_zero_at(n)


def test_every_family_has_tables():
    for N in ORDERS:
        for target in ("G",) if N == 2 else ("G", "H"):
            for power in (SQUARE, CUBE):
                assert (N, target, power) in VERDICTS


def test_conditions():
    c = square_of("(alpha-1)(2alpha-1)")
    assert eval_condition(c, 5)
    assert eval_condition(square_of("alpha"), 9)
    assert eval_condition(cube_of("2alpha-1"), 1)
    assert not eval_condition(cube_of("2alpha-1"), 5)
    assert eval_condition(AlwaysHolds(), 3) and not eval_condition(NeverHolds(), 3)
    both = Conjunction((square_of("alpha"), cube_of("alpha")))
    assert eval_condition(both, 64) and not eval_condition(both, 8)
    assert c.describe() == "(α−1)(2α−1)=□"


def test_search():
    c = square_of("(alpha-1)(2alpha-1)")
    found = search_alphas(c, -100, 100, {0, 1})
    assert 5 in found
    assert all(eval_condition(c, a) for a in found)
    brute = [a for a in range(-100, 101) if a not in (0, 1) and eval_condition(c, a)]
    assert found == brute
    assert search_alphas(NeverHolds(), -50, 50) == []
    assert search_alphas(cube_of("alpha"), 1, 30) == [1, 8, 27]
    with pytest.raises(ParameterError):
        search_alphas(c, 3, 2)


def test_pell_alphas():
    alphas = alphas_from_pell(10)
    assert alphas[0] == 5
    assert alphas == sorted(set(alphas))
    c = square_of("(alpha-1)(2alpha-1)")
    assert all(eval_condition(c, a) for a in alphas)
    # tau = 3 from (3, 1) gives alpha = 3/2 and is skipped
    assert 1 not in alphas and 2 not in alphas
    # every positive solution up to 10^4 comes from Pell
    small = search_alphas(c, 2, 10 ** 4)
    assert small == [a for a in alphas if a <= 10 ** 4]


@pytest.mark.parametrize("N", [4, 5, 8])
def test_verification_small_grid(N):
    for target, power in [("G", SQUARE), ("H", CUBE), ("G", CUBE), ("H", SQUARE)]:
        rep = verify_classification(N, target, power, (-8, 8), 4 * N)
        assert rep.ok, rep.disagreements[:3]
        assert rep.checked > 0


def test_parallel_matches_serial():
    combos = [("G", SQUARE), ("H", CUBE)]
    a = verify_many(7, combos, (-6, 6), 21, jobs=1)
    b = verify_many(7, combos, (-6, 6), 21, jobs=2)
    for c in combos:
        assert a[c].checked == b[c].checked
        assert a[c].disagreements == b[c].disagreements
        assert a[c].literal_disagreements == b[c].literal_disagreements


def test_sign_convention_matters():
    # negative terms that are minus a square count as squares; a strict reading would not
    rep = verify_classification(4, "H", SQUARE, (-10, 10), 16)
    assert rep.ok
    assert rep.literal_disagreements


def test_wrong_verdict_is_caught(monkeypatch):
    from edskit import squarecube

    patched = dict(VERDICTS)
    patched[(8, "G", SQUARE)] = (8, [((0, 2, 6), Always())], Never(), "tampered")
    monkeypatch.setattr(squarecube, "VERDICTS", patched)
    rep = verify_classification(8, "G", SQUARE, (-6, 6), 16)
    assert not rep.ok
    assert all(n % 8 in (2, 6) for _, n, _, _, _ in rep.disagreements)
