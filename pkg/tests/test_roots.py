import json
import random
from fractions import Fraction

import pytest

from kmtop import roots as R

AFF = R.affine_sl2_system()
A1 = R.a1_system()


def test_validate_km():
    assert R.validate_km([[2]]).size == 1
    assert R.validate_km([[2, -2], [-2, 2]]).entries == ((2, -2), (-2, 2))
    with pytest.raises(R.NotGCM) as err:
        R.validate_km([[2, -1], [0, 2]])
    assert err.value.axiom == "iii"
    assert err.value.position == (0, 1)
    with pytest.raises(R.NotGCM) as err:
        R.validate_km([[1]])
    assert err.value.axiom == "i"
    with pytest.raises(R.NotGCM) as err:
        R.validate_km([[2, 1], [1, 2]])
    assert err.value.axiom == "ii"


def test_pairing_examples():
    lam = AFF.apartment_vec((1, 3))          # å∨ + 3d
    assert R.eval_pairing(AFF.simple_roots[0], lam) == 1
    assert R.eval_pairing(AFF.simple_roots[1], lam) == 2
    # δ(å∨) = 0
    assert R.eval_pairing((0, 1), AFF.apartment_vec((1, 0))) == 0


def test_reflect_examples():
    acheck = A1.apartment_vec((1,))
    assert R.reflect(A1, 0, acheck) == (-1,)
    assert R.co_reflect(AFF, 1, (1, 0)) == (1, 2)    # r1.α0 = α0 + 2α1
    rng = random.Random(3)
    for _ in range(50):
        v = AFF.apartment_vec((Fraction(rng.randint(-9, 9), rng.randint(1, 3)),
                               Fraction(rng.randint(-9, 9), rng.randint(1, 3))))
        i = rng.randint(0, 1)
        assert R.reflect(AFF, i, R.reflect(AFF, i, v)) == v


def test_real_roots_small_windows():
    assert R.real_roots_up_to_height(A1, 5) == frozenset({(1,), (-1,)})
    positives = {b for b in R.real_roots_up_to_height(AFF, 3)
                 if R.is_positive_root_vec(b)}
    assert positives == {(0, 1), (1, 0), (1, 2), (2, 1)}
    assert (1, 1) not in R.real_roots_up_to_height(AFF, 9)   # δ is imaginary


def _closed_form_affine(max_height):
    """Oracle: Φ = {±å + kδ}; in (α0, α1)-coordinates å+kδ = (k, k+1)."""
    out = set()
    k = 0
    while 2 * k + 1 <= max_height:
        out.add((k, k + 1))
        out.add((-k, -k - 1))
        k += 1
    k = 1
    while 2 * k - 1 <= max_height:
        out.add((k, k - 1))
        out.add((-k, -(k - 1)))
        k += 1
    return frozenset(out)


@pytest.mark.parametrize("h", [1, 2, 3, 5, 9, 12])
def test_real_roots_match_closed_form(h):
    assert R.real_roots_up_to_height(AFF, h) == _closed_form_affine(h)


def test_root_set_invariants():
    found = R.real_roots_up_to_height(AFF, 9)
    for beta in found:
        assert all(x >= 0 for x in beta) or all(x <= 0 for x in beta)
        assert tuple(-x for x in beta) in found
        # Rα ∩ Φ = {±α}: no nontrivial multiples
        for m in (2, 3):
            assert tuple(m * x for x in beta) not in found
    # co_reflect preserves the set on symmetric windows (images inside window)
    for beta in found:
        for i in AFF.index_set:
            img = R.co_reflect(AFF, i, beta)
            if abs(R.height(img)) <= 9:
                assert img in found


def test_height():
    assert R.height((1, 2)) == 3
    assert R.height((-1, 0)) == -1
    assert R.height((0, 0)) == 0


def test_tits_classify():
    lam = (1, 3)
    cls = R.tits_classify(AFF, lam, 10)
    assert cls is not None and cls.w.word == () and cls.zero_set == frozenset()
    # δ(v) < 0 is outside the cone at any bound
    assert R.tits_classify(AFF, (0, -1), 500) is None
    assert R.tits_classify(AFF, (5, -1), 500) is None
    # -å∨ sits on δ = 0 outside ±T: the descent cycles r1, r0 forever
    assert R.tits_classify(AFF, (-1, 0), 500) is None
    # boundary: d has α1(d) = 0 and α0(d) = 1, so the wall set is {1}
    cls = R.tits_classify(AFF, (0, 1), 10)
    assert cls is not None and cls.zero_set == frozenset({1})
    cls = R.tits_classify(AFF, (0, 0), 10)
    assert cls.zero_set == frozenset({0, 1})


def test_tits_classify_roundtrip():
    rng = random.Random(11)
    for _ in range(60):
        word = [rng.randint(0, 1) for _ in range(rng.randint(0, 8))]
        w = R.WeylElt(AFF, word)
        inside = AFF.apartment_vec((rng.randint(1, 3), rng.randint(7, 12)))
        v = w.apply(inside)
        cls = R.tits_classify(AFF, v, 200)
        assert cls is not None
        back = cls.w.inverse().apply(v)
        vals = [R.eval_pairing(a, back) for a in AFF.simple_roots]
        assert all(val > 0 for i, val in enumerate(vals) if i not in cls.zero_set)
        assert all(vals[i] == 0 for i in cls.zero_set)
        assert cls.w.apply(back) == tuple(v)


def test_weyl_matrix_equality():
    r0r1r0 = R.WeylElt(AFF, (0, 1, 0))
    assert r0r1r0 == R.WeylElt(AFF, (0, 1, 0, 1, 1))   # reduced vs unreduced
    assert R.WeylElt(AFF, (0, 0)) == R.WeylElt(AFF, ())
    assert R.WeylElt(AFF, (0, 1)) != R.WeylElt(AFF, (1, 0))
    w = R.WeylElt(AFF, (1, 0, 1))
    assert w.compose(w.inverse()) == R.WeylElt(AFF, ())


def test_n_of_lambda():
    assert R.n_of_lambda(AFF, (1, 3)) == 1
    assert R.n_of_lambda(AFF, (2, 6)) == 2
    assert R.n_of_lambda(A1, (1,)) == 2
    for m in (2, 3, 5):
        assert R.n_of_lambda(AFF, (m, 3 * m)) == m * R.n_of_lambda(AFF, (1, 3))
    with pytest.raises(R.NotRegular):
        R.n_of_lambda(AFF, (0, 1))      # on both walls
    with pytest.raises(R.NotRegular):
        R.n_of_lambda(AFF, (1, 0))      # å∨: α0 < 0 and δ = 0, outside T
    with pytest.raises(ValueError):
        R.n_of_lambda(A1, (Fraction(1, 2),))
    # a regular non-dominant lambda: w.λ for λ dominant
    w = R.WeylElt(AFF, (0, 1))
    moved = w.apply(AFF.apartment_vec((1, 3)))
    assert R.n_of_lambda(AFF, moved) == 1


def test_half_apartment():
    assert R.half_apartment_contains(AFF, (0, 1), 0, (0, 0))
    assert R.half_apartment_contains(AFF, (1, 0), -1, (1, 3))
    assert not R.half_apartment_contains(A1, (1,), -3, (1,))


def test_fixture_roundtrip(tmp_path):
    data = {
        "cartan": [[2, -2], [-2, 2]],
        "rank": 2,
        "simple_roots": [[-2, 1], [2, 0]],
        "simple_coroots": [[-1, 0], [1, 0]],
    }
    path = tmp_path / "system.json"
    path.write_text(json.dumps(data))
    loaded = R.load_system(str(path))
    assert loaded == AFF
    assert R.load_system("a1") == A1
    with pytest.raises(ValueError):
        R.system_from_fixture({**data, "simple_coroots": [[1, 0], [1, 0]]})
    with pytest.raises(ValueError, match="missing field"):
        R.system_from_fixture({"cartan": [[2]], "rank": 1})
