"""Smoke tests for the fixlab._core extension module."""

import math

import pytest

import fixlab


def test_version_present():
    assert fixlab.__version__


def test_cube_sum_certificates():
    fx = fixlab.build_example("cube-sum")
    omega = fixlab.certify("sf", fx.space, fx.map, fx.aux, fx.f)
    assert omega.verdict == "certified"
    assert omega.value >= 27.0

    beta = fixlab.certify("sb", fx.space, fx.map, fx.aux)
    assert beta.value == pytest.approx(189224.0 / 216224.0, rel=1e-12)


def test_finite_four_refutation():
    fx = fixlab.build_example("finite-four")
    cert = fixlab.certify(fx.kind, fx.space, fx.map, fx.aux, fx.f)
    assert cert.verdict == "refuted"
    pairs = {(v[0], v[1]) for v in cert.violations}
    assert (1.0, 2.0) in pairs
    assert (1.0, 3.0) in pairs

    terms = fixlab.pair_terms("bianchini-sf", fx.space, fx.map, fx.aux, 4.0, 3.0)
    assert terms.lhs == 725.0
    assert terms.rhs == 4018.0


def test_python_callables_as_maps():
    space = fixlab.interval_space(0.0, 1.0, 0.05)
    half = fixlab.SelfMap("half", lambda x: x / 2.0)
    cert = fixlab.certify("banach", space, half, fixlab.aux_map("first"))
    assert cert.verdict == "certified"
    assert cert.value == 0.5


def test_picard_orbit_reaches_the_fixed_point():
    fx = fixlab.build_example("bianchini-unit")
    trace = fixlab.picard_iterate(fx.space, fx.map, 1.0, fx.aux, max_iter=10)
    assert trace.stop_reason == "exact-fixed-point"
    assert trace.terminal == 0.95
    points, unique = fixlab.fixed_points(fx.space, fx.map)
    assert unique and points == [0.95]


def test_gauge_checks():
    for name in fixlab.builtin_f_names():
        report = fixlab.builtin_f(name).check()
        assert report["w1_ok"] and report["w2_ok"] and report["w3_ok"]

    inv = fixlab.FFunction("neg-inv", lambda t: -1.0 / t, 0.5)
    assert fixlab.suggest_w3_exponent(inv) is None
    with pytest.raises(Exception):
        fixlab.builtin_f("ln")(0.0)


def test_terrain_linear_oracle():
    cfg = fixlab.TerrainConfig()
    cfg.tol = 1e-9
    cfg.max_iterations = 60
    report = fixlab.terrain_simulate(cfg)
    assert report.converged and not report.diverged
    assert report.final_error < 1e-9
    errors = [it.tracking_error for it in report.iterates]
    for e0, e1 in zip(errors, errors[1:]):
        if e1 < 1e-6:
            break
        assert e1 / e0 == pytest.approx(0.5, rel=1e-9)
    assert report.first_ratio_saturation is not None


def test_run_examples_rows():
    rows = fixlab.run_examples("cube-sum")
    assert rows and all(r["status"] == "pass" for r in rows)


def test_cli_in_process(tmp_path):
    out = tmp_path / "cert.json"
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"fixture": "powers-of-three", "kind": "kannan-sf"}')
    rc = fixlab.run_cli(["certify", "--config", str(cfg), "--output", str(out)])
    assert rc == 0
    assert '"verdict": "certified"' in out.read_text()


def test_contraction_ratio_formula():
    assert fixlab.contraction_ratio(4.0, 1.0, 1.0, 1.0) == pytest.approx(
        0.4 * math.exp(-3.0), rel=1e-15
    )


def test_relaxed_triangle_witness():
    space = fixlab.interval_space(0.0, 1.0, 0.25)
    seq_a = [2.0**-n for n in range(1, 65)]
    seq_b = [t + t * t for t in seq_a]
    report = fixlab.verify_relaxed_triangle(space, seq_a, seq_b, 0.5)
    assert report["admissible"] and report["triangle_ok"]

    stuck = fixlab.verify_relaxed_triangle(space, [0.25] * 32, [0.75] * 32, 1.0)
    assert not stuck["admissible"]  # never vanishes: inadmissible, not a failure
