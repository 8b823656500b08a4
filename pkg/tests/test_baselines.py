#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
import numpy as np
import pytest
from evostream.baselines import (
    METHODS,
    BaselineKind,
    MethodTrace,
    _single_learner_phase,
    predicted_label,
    run_baseline,
)
from evostream.harness import prepare_context, run_method
from evostream.mapping import apply_mapping
from evostream.settings import load_settings


@pytest.fixture(scope="module")
def ctx():
    config = load_settings(validate=False)
    config.swiss.n = 200
    config.schedule.t1 = 60
    config.schedule.overlap = 10
    config.schedule.t2 = 40
    config.schedule.p_l = 0.5
    config.model.buffer = 8
    config.validate()
    return prepare_context(config, 7)


@pytest.fixture(scope="module")
def labeled_ctx():
    config = load_settings(validate=False)
    config.swiss.n = 200
    config.schedule.t1 = 60
    config.schedule.overlap = 10
    config.schedule.t2 = 40
    config.schedule.p_l = 1.0
    config.model.buffer = 8
    config.model.lambda2 = 0.0
    config.validate()
    return prepare_context(config, 3)


class TestBaselineKind:
    def test_methods(self):
        assert METHODS[0] == "SF2EL"
        assert len(METHODS) == 8
        assert "FESL_Variant" in METHODS

    @pytest.mark.parametrize(
        "kind,manifold,mapping,frozen",
        [
            (BaselineKind.NOGD, False, False, False),
            (BaselineKind.NOGD_MR, True, False, False),
            (BaselineKind.UROGD, False, True, False),
            (BaselineKind.UROGD_MR, True, True, False),
            (BaselineKind.FROGD, False, True, True),
            (BaselineKind.FROGD_MR, True, True, True),
        ],
    )
    def test_properties(self, kind, manifold, mapping, frozen):
        assert kind.manifold is manifold
        assert kind.uses_mapping is mapping
        assert kind.frozen is frozen


class TestMethodTrace:
    def test_derived(self):
        trace = MethodTrace(
            "NOGD",
            0,
            np.array([0.5, -0.2, 0.1, 0.3]),
            np.array([True, False, True, True]),
            np.array([1.0, 3.0, 2.0, 2.0]),
        )
        assert trace.rounds == 4
        assert trace.accuracy == 0.75
        assert trace.avg_cum_risk.tolist() == [1.0, 2.0, 2.0, 2.0]
        assert trace.buffer_trace == []

    def test_predicted_label(self):
        assert predicted_label(0.0) == 1
        assert predicted_label(1e-9) == 1
        assert predicted_label(-1e-9) == -1


class TestRunBaseline:
    @pytest.mark.parametrize("kind", list(BaselineKind))
    def test_shapes(self, ctx, kind):
        trace = run_baseline(kind, ctx)
        assert trace.method == kind.value
        assert trace.seed == 7
        assert trace.rounds == 40
        assert np.all(np.isfinite(trace.scores))
        assert np.all(trace.risks >= 0)
        assert trace.correct.dtype == bool

    def test_paired(self, ctx):
        first = run_baseline(BaselineKind.UROGD_MR, ctx)
        second = run_baseline(BaselineKind.UROGD_MR, ctx)
        assert first.scores.tolist() == second.scores.tolist()

    def test_frozen_predicts_with_initial_model(self, ctx):
        trace = run_baseline(BaselineKind.FROGD, ctx)
        initial = ctx.initial_phase(False)
        expected = [
            initial.predictor.evaluate(apply_mapping(initial.mapping, event.x2))
            for event in ctx.stream.new_phase
        ]
        np.testing.assert_allclose(trace.scores, expected, rtol=1e-12, atol=1e-15)

    def test_updating_differs_from_frozen(self, ctx):
        frozen = run_baseline(BaselineKind.FROGD_MR, ctx)
        updated = run_baseline(BaselineKind.UROGD_MR, ctx)
        assert frozen.scores[0] == updated.scores[0]
        assert frozen.scores.tolist() != updated.scores.tolist()

    def test_nogd_starts_from_seed(self, ctx):
        trace = run_baseline(BaselineKind.NOGD_MR, ctx)
        assert trace.scores[0] == pytest.approx(ctx.seed_coefs[1])

    def test_fesl_variant(self, ctx):
        trace = run_baseline(BaselineKind.FESL_VARIANT, ctx)
        assert trace.method == "FESL_Variant"
        assert trace.weights.shape == (40, 2)
        np.testing.assert_allclose(trace.weights[0], [0.5, 0.5])
        for k, event in enumerate(ctx.stream.new_phase[:-1]):
            if not event.labeled:
                assert trace.weights[k + 1].tolist() == trace.weights[k].tolist()

    def test_frozen_keeps_coefficients(self, ctx):
        initial = ctx.initial_phase(False)
        learner = initial.learner.clone()
        learner.start_new_phase()
        learner.frozen = True
        before = learner.predictor.coefficients.copy()
        _single_learner_phase("fROGD", ctx, learner, initial.mapping)
        assert learner.predictor.coefficients.tolist() == before.tolist()
        assert learner.rounds == 40


class TestFullyLabeledWithoutManifold:
    def _scores(self, ctx, method):
        return run_method(method, ctx).scores

    def test_nogd_mr_matches_nogd(self, labeled_ctx):
        np.testing.assert_allclose(
            self._scores(labeled_ctx, "NOGD_MR"),
            self._scores(labeled_ctx, "NOGD"),
            rtol=1e-10,
            atol=1e-12,
        )

    def test_urogd_mr_matches_urogd(self, labeled_ctx):
        np.testing.assert_allclose(
            self._scores(labeled_ctx, "uROGD_MR"),
            self._scores(labeled_ctx, "uROGD"),
            rtol=1e-10,
            atol=1e-12,
        )

    def test_fesl_variant_matches_sf2el(self, labeled_ctx):
        sf2el = run_method("SF2EL", labeled_ctx)
        variant = run_method("FESL_Variant", labeled_ctx)
        np.testing.assert_allclose(variant.scores, sf2el.scores, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(variant.weights, sf2el.weights, rtol=1e-10, atol=1e-12)
