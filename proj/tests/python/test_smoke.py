"""Python binding smoke tests against the built extension module."""

import json
import math

import pytest

import lipcert


def test_parse_and_evaluate():
    spec = lipcert.parse_function_spec(json.dumps({"kind": "logistic", "b": [2]}))
    assert spec.dim == 1
    assert spec.convex
    value = lipcert.evaluate(spec, [2.0])
    assert value == pytest.approx(math.log(1 + math.exp(4)))


def test_parse_errors_raise_value_error():
    with pytest.raises(ValueError):
        lipcert.parse_function_spec("not json")
    with pytest.raises(ValueError):
        lipcert.parse_function_spec(
            json.dumps({"kind": "quadratic", "Q": [[1, 2], [2, 1]], "c": [0, 0]})
        )


def test_analytic_modulus_values():
    logistic = lipcert.parse_function_spec(json.dumps({"kind": "logistic", "b": [3, 4]}))
    assert lipcert.analytic_global_modulus(logistic) == pytest.approx(5.0)
    quad = lipcert.parse_function_spec(
        json.dumps({"kind": "quadratic", "Q": [[1, 0], [0, 1]]})
    )
    assert math.isinf(lipcert.analytic_global_modulus(quad))
    recip = lipcert.parse_function_spec(json.dumps({"kind": "reciprocal-abs"}))
    assert lipcert.analytic_global_modulus(recip) is None


def test_cover_and_containment():
    ball = lipcert.Ball([0.0, 0.0], 1.0)
    cover = lipcert.build_cross_polytope_cover(ball)
    assert len(cover.points) == 4
    report = lipcert.cover_containment_check(cover, 10000, 42)
    assert report.min_margin >= -1e-12

    octagon = lipcert.build_shell_cover(ball, 0.1)
    assert len(octagon.points) == 8

    with pytest.raises(ValueError):
        lipcert.build_shell_cover(lipcert.Ball([0.0] * 5, 1.0), 0.1)


def test_norm_certificate_is_eight():
    spec = lipcert.parse_function_spec(json.dumps({"kind": "norm", "dim": 2}))
    cert = lipcert.ball_lipschitz_constant(
        spec, lipcert.Ball([0.0, 0.0], 1.0), 0.5, 2.0,
        lipcert.CoverKind.CROSS_POLYTOPE,
    )
    assert cert.L == 8.0
    assert cert.eval_count == 5


def test_invalid_params_raise():
    spec = lipcert.parse_function_spec(json.dumps({"kind": "norm", "dim": 2}))
    with pytest.raises(ValueError, match="alpha must exceed 1"):
        lipcert.ball_lipschitz_constant(
            spec, lipcert.Ball([0.0, 0.0], 1.0), 0.5, 1.0,
            lipcert.CoverKind.CROSS_POLYTOPE,
        )


def test_modulus_pipeline():
    spec = lipcert.parse_function_spec(json.dumps({"kind": "logistic", "b": [3, 4]}))
    radii = [10.0**k for k in range(1, 7)]
    profile = lipcert.radial_growth_profile(spec, radii, 128, 42)
    verdict = lipcert.classify_global_lipschitz(profile)
    assert verdict.kind == "globally_lipschitz"
    assert verdict.modulus_estimate == pytest.approx(5.0, rel=0.01)


def test_soundness_suite_pass_and_fail():
    logistic = lipcert.parse_function_spec(
        json.dumps({"kind": "logistic", "b": [1.5, -0.5]})
    )
    cert = lipcert.ball_lipschitz_constant(
        logistic, lipcert.Ball([0.0, 0.0], 1.0), 0.5, 2.0,
        lipcert.CoverKind.SIMPLEX,
    )
    report = lipcert.certificate_soundness_suite(logistic, cert, 5000, 7)
    assert report.pass_
    assert report.ratios.max_ratio <= cert.L * (1 + 1e-9)

    recip = lipcert.parse_function_spec(json.dumps({"kind": "reciprocal-abs"}))
    bad_cert = lipcert.ball_lipschitz_constant(
        recip, lipcert.Ball([0.5], 0.49), 0.5, 2.0,
        lipcert.CoverKind.CROSS_POLYTOPE,
    )
    bad_report = lipcert.certificate_soundness_suite(recip, bad_cert, 5000, 7)
    assert not bad_report.pass_


def test_convexity_and_constancy():
    recip = lipcert.parse_function_spec(json.dumps({"kind": "reciprocal-abs"}))
    report = lipcert.convexity_check(recip, lipcert.Ball([0.0], 2.0), 5000, 13)
    assert not report.ok
    assert report.violation > 0

    const = lipcert.parse_function_spec(
        json.dumps({"kind": "constant", "c": 7, "dim": 2})
    )
    probe = lipcert.corollary_constancy_check(const, [1.0, 10.0, 100.0, 1000.0], 32, 5)
    assert probe.verdict == "consistent_with_constant"


def test_certificate_sequence_reference_bound():
    spec = lipcert.parse_function_spec(json.dumps({"kind": "logistic", "b": [3, 4]}))
    seq = lipcert.certificate_sequence(
        spec, [0.0, 0.0], 10.0, 1e-3, [10.0, 100.0, 1000.0], 5.0
    )
    assert seq.reference_bound == pytest.approx(6.117, rel=1e-3)
    assert seq.certificates[-1].L <= 1.05 * seq.reference_bound


def test_analytic_info():
    logistic = lipcert.parse_function_spec(json.dumps({"kind": "logistic", "b": [3, 4]}))
    info = lipcert.analytic_info(logistic)
    assert info.global_modulus == pytest.approx(5.0)
    assert info.gradient_available
    assert len(info.direction_hints) == 2


def test_determinism():
    spec = lipcert.parse_function_spec(json.dumps({"kind": "logistic", "b": [3, 4]}))
    a = lipcert.empirical_lipschitz_ratio(spec, lipcert.Ball([0.0, 0.0], 1.0), 4000, 5)
    b = lipcert.empirical_lipschitz_ratio(spec, lipcert.Ball([0.0, 0.0], 1.0), 4000, 5)
    assert a.max_ratio == b.max_ratio
    assert a.witness_x == b.witness_x
