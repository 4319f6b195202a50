import json
import random
from fractions import Fraction

import pytest

from hankelcf.cf import series_from_cf
from hankelcf.errors import DegenerateBindings, UnboundVariable, UnknownPreset
from hankelcf.gflang import eval_gf, parse_gf
from hankelcf.presets import PRESETS, expected_somos_params, somos_y_series
from hankelcf.somos import Somos4Params
from hankelcf.verify import JSON_KEYS, somos_seed_pipeline, verify_preset, verify_sweep

from conftest import small_rational

ONES = {"r": 1, "s": 1}


def test_expected_params_conj2():
    assert expected_somos_params("conj2", ONES) == Somos4Params(0, 9)


def test_expected_params_conj3():
    assert expected_somos_params("conj3", ONES) == Somos4Params(1, 5)


def test_expected_params_somos_seed():
    assert expected_somos_params("somos_seed", {}) == Somos4Params(1, 1)
    assert expected_somos_params("somos", {}) == Somos4Params(1, 1)


def test_expected_params_unbound():
    with pytest.raises(UnboundVariable):
        expected_somos_params("conj5", ONES)


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        expected_somos_params("conj9", {})


@pytest.mark.parametrize("pid", ["conj2", "conj3", "conj4", "conj5"])
def test_canonical_forms_reproduce_expressions(pid):
    preset = PRESETS[pid]
    rng = random.Random(pid)
    for _ in range(5):
        env = {n: small_rational(rng) for n in preset.param_names}
        g = eval_gf(parse_gf(preset.expr_text), env, 12)
        assert series_from_cf(preset.canonical(env), 12) == g


def test_verify_conj2_unit_bindings():
    rep = verify_preset("conj2", ONES, 10)
    assert rep.passed
    assert (rep.alpha, rep.beta, rep.a1, rep.f1) == (0, 9, 1, 1)
    assert rep.shift_ok
    assert rep.eq10_first_index == 2
    assert rep.breakdown_index is None


def test_verify_conj3_unit_bindings():
    rep = verify_preset("conj3", ONES, 10)
    assert rep.passed
    assert (rep.alpha, rep.beta) == (1, 5)
    assert (rep.a1, rep.f1) == (Fraction(8, 9), Fraction(2, 3))


def test_verify_both_offsets_reported():
    rep = verify_preset("conj4", {"r": 2, "s": Fraction(1, 3)}, 10)
    assert rep.passed
    assert not any(rep.residuals["somos"])
    assert not any(rep.somos_shifted)
    assert rep.hankel_g[1:] == rep.hankel_g0[:-1]


def test_verify_degenerate_bindings():
    with pytest.raises(DegenerateBindings):
        verify_preset("conj2", {"r": -1, "s": 0}, 10)
    # s + r + 1 = -1 is fine
    assert verify_preset("conj2", {"r": -2, "s": 0}, 10).passed


def test_verify_requires_nmax():
    with pytest.raises(ValueError):
        verify_preset("conj2", ONES, 7)


def test_verify_flags_wrong_closed_form(monkeypatch):
    from dataclasses import replace

    bad = replace(PRESETS["conj3"], expected_params=lambda e: Somos4Params(1, 6))
    monkeypatch.setitem(PRESETS, "conj3", bad)
    rep = verify_preset("conj3", ONES, 10)
    assert not rep.passed
    assert any(rep.residuals["somos"])
    assert any("disagrees" in n for n in rep.notes)


def test_verify_conj4_statement_formula_agrees_with_fit():
    rng = random.Random(6)
    for _ in range(10):
        env = {"r": small_rational(rng), "s": small_rational(rng)}
        try:
            rep = verify_preset("conj4", env, 10)
        except DegenerateBindings:
            continue
        if not rep.fit_degenerate:
            assert rep.fitted == rep.expected


def test_sweep_deterministic():
    a = verify_sweep("conj3", 2, 5, 8)
    b = verify_sweep("conj3", 2, 5, 8)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]


def test_sweep_records_skips():
    sweep = verify_sweep("conj2", 20, 1, 8)
    assert len(sweep) == 20
    for env in sweep.skipped:
        assert env["s"] + env["r"] + 1 == 0


def test_json_schema_order():
    d = verify_preset("conj2", ONES, 8).to_json_dict()
    assert tuple(d) == JSON_KEYS
    assert tuple(d["residuals"]) == ("somos", "eq8", "eq10", "tn")
    assert d["a1"] == "1" and d["f1"] == "1"
    json.loads(json.dumps(d))


def test_json_rationals_as_strings():
    d = verify_preset("conj3", ONES, 8).to_json_dict()
    assert d["a1"] == "8/9"
    assert d["f1"] == "2/3"


def test_csv_rows():
    text = verify_preset("conj2", ONES, 8).to_csv().splitlines()
    assert text[0] == "n,H_n,somos_residual"
    assert text[1] == "0,1,"
    assert text[5] == "4,81,0"
    assert len(text) == 10


def test_somos_seed_y_series():
    assert list(somos_y_series(6).coeffs[1:]) == [1, 1, 1, 3, 8, 23]


def test_somos_seed_pipeline():
    rep = somos_seed_pipeline(6)
    assert rep.hankel_g == [1, 1, 2, 3, 7, 23, 59]
    assert not any(rep.residuals["somos"])
    assert rep.passed


def test_somos_seed_q_constant_term():
    from hankelcf.presets import somos_q_series

    assert somos_q_series(4)[0] == 1
