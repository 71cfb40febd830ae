import pytest

from ccalc import checks
from ccalc.char_classes import generalized_binomial, total_segre
from ccalc.equivariant_poly import EquivClass


def test_suites_pass_small():
    for verdict in checks.run_all(cases=15, seed=3):
        assert verdict.passed, verdict.failure


def test_case_streams_are_independent_of_case_count():
    a = checks.case_rng(5, "A1-segre-inversion", 4).random()
    b = checks.case_rng(5, "A1-segre-inversion", 4).random()
    assert a == b != checks.case_rng(5, "A1-segre-inversion", 5).random()


def test_verdict_dict_is_deterministic():
    one = [v.as_dict() for v in checks.run_all(cases=5, seed=11)]
    two = [v.as_dict() for v in checks.run_all(cases=5, seed=11)]
    assert one == two
    assert [d["name"][:2] for d in one] == ["A1", "A2", "A3", "A4", "A5", "A6", "A7"]


def test_random_sides_have_no_obstruction():
    for ring in checks.preset_rings():
        for case in range(20):
            rng = checks.case_rng(0, "sides", case)
            side = checks.random_side(ring, rng, -(case % 3))
            assert not checks.degree_obstruction(side)


def _shifted_exponent_twist(D, j, t):
    # the exponent j - 1 in place of j - l
    s = total_segre(D)
    out = EquivClass._make(D.ring, {}, t.laurent)
    for l in range(j + 1):
        out = out + (t ** max(j - 1, 0)).mul_base(s.component(2 * l)) * generalized_binomial(-D.rank - l, j - l)
    return out


def _shifted_window_sum(F2, side, m):
    # SW_(m - d - 1) in place of SW_(m - d - l)
    n = -side.D.rank
    s = total_segre(side.D)
    out = side.ring.zero()
    for l in range(n + 1):
        out = out + side.Hplus.euler * s.component(2 * l) * F2(m + n - min(l, 1))
    return out


def test_twisted_segre_suite_catches_exponent_error(monkeypatch):
    monkeypatch.setattr(checks, "twist_segre", _shifted_exponent_twist)
    verdict = checks.check_twisted_segre(200, 1)
    assert not verdict.passed
    assert verdict.failure["suite"] == "A4-twisted-segre"


def test_connected_sum_suite_catches_window_error(monkeypatch):
    monkeypatch.setattr(checks, "connect_sum_sw", _shifted_window_sum)
    verdict = checks.check_connected_sum(105, 1)
    assert not verdict.passed
    assert {"F2", "D1", "Hplus", "m"} <= set(verdict.failure)


def test_localization_suite_catches_sign_error(monkeypatch):
    from ccalc import proj_bundle

    def flipped(i, ring):
        x, y = EquivClass.x(ring), EquivClass.y(ring)
        return x + y if i == 1 else x

    monkeypatch.setattr(proj_bundle, "_restriction_substitute", flipped)
    verdict = checks.check_localization(50, 1)
    assert not verdict.passed
    assert "error" in verdict.failure or "localized" in verdict.failure


def test_segre_suite_catches_bad_inverse(monkeypatch):
    monkeypatch.setattr(checks, "total_segre", lambda V: V.total_chern)
    assert not checks.check_segre_inversion(20, 1).passed


def test_pushforward_suite_catches_off_by_one(monkeypatch):
    monkeypatch.setattr(checks, "gysin_pushforward", lambda c, model: model.ambient.reduce(c).x_slice(0))
    assert not checks.check_pushforward_table(20, 1).passed


def test_degenerate_suite_catches_missing_euler_factor(monkeypatch):
    real = checks.connect_sum_sw
    monkeypatch.setattr(checks, "connect_sum_sw", lambda F2, side, m: real(F2, side, m) * 2)
    assert not checks.check_degenerate_cases(20, 1).passed


def test_replay_reproduces_failure(monkeypatch):
    monkeypatch.setattr(checks, "twist_segre", _shifted_exponent_twist)
    verdict = checks.check_twisted_segre(200, 9)
    again = checks.replay(verdict.failure)
    assert not again.passed
    assert again.failure == verdict.failure
    assert again.cases == 1


def test_replay_of_passing_case():
    verdict = checks.replay({"suite": "A3-localization", "seed": 2, "case": 17})
    assert verdict.passed and verdict.cases == 1


def test_root_model_is_a_valid_ring():
    ring = checks.root_model(3, 3)
    assert ring.truncation == 6
    assert len(ring.basis) == 20


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_brute_force_oracle_degree_zero(rank):
    ring = checks.root_model(rank, 2)
    roots = [ring.monomial(g) for g, _ in ring.generators]
    assert checks.brute_force_twisted_segre(roots, 0, EquivClass.x(ring)) == EquivClass.one(ring)
