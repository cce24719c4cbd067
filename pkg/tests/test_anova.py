"""One-way ANOVA against published fixtures and an independent F-tail oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crowdsmell.anova import (
    AnovaResult,
    f_survival,
    one_way_anova,
    regularized_incomplete_beta,
)
from crowdsmell.errors import InvalidDegreesOfFreedomError, TooFewGroupsError

# ROC grids per classifier, columns ordered (2020+2019+2018, 2020+2019, 2020,
# 2019+2018, 2019, 2018). These are the published long-method / god-class /
# feature-envy evaluation results used as reproduction fixtures.
LONG_METHOD_ROC = {
    "J48": [0.792, 0.801, 0.832, 0.677, 0.678, 0.617],
    "RandomForest": [0.828, 0.828, 0.869, 0.684, 0.679, 0.671],
    "AdaBoostM1": [0.807, 0.818, 0.870, 0.665, 0.673, 0.707],
    "SMO": [0.753, 0.753, 0.803, 0.634, 0.649, 0.524],
    "MultilayerPerceptron": [0.822, 0.822, 0.868, 0.683, 0.667, 0.604],
    "NaiveBayes": [0.736, 0.742, 0.783, 0.584, 0.614, 0.471],
}

GOD_CLASS_ROC = {
    "J48": [0.763, 0.759, 0.791, 0.693, 0.725, 0.692],
    "RandomForest": [0.853, 0.850, 0.893, 0.781, 0.802, 0.491],
    "AdaBoostM1": [0.854, 0.857, 0.876, 0.771, 0.793, 0.571],
    "SMO": [0.815, 0.800, 0.857, 0.716, 0.751, 0.741],
    "MultilayerPerceptron": [0.880, 0.853, 0.885, 0.805, 0.797, 0.768],
    "NaiveBayes": [0.731, 0.859, 0.896, 0.669, 0.804, 0.651],
}

# Feature envy with the all-zero 2018 column already dropped (5 datasets x 6
# algorithms). The 2020+2019 column follows the per-model results table,
# which is the variant consistent with the published F(5,24)=.585.
FEATURE_ENVY_ROC = {
    "J48": [0.518, 0.529, 0.467, 0.552, 0.563],
    "RandomForest": [0.539, 0.548, 0.486, 0.542, 0.570],
    "AdaBoostM1": [0.498, 0.519, 0.468, 0.554, 0.548],
    "SMO": [0.520, 0.513, 0.500, 0.551, 0.508],
    "MultilayerPerceptron": [0.533, 0.545, 0.536, 0.548, 0.544],
    "NaiveBayes": [0.524, 0.532, 0.482, 0.548, 0.547],
}


def test_long_method_grid_reproduces_published_anova():
    result = one_way_anova(LONG_METHOD_ROC)
    assert (result.df_between, result.df_within) == (5, 30)
    assert result.f_statistic == pytest.approx(1.096, abs=0.005)
    assert result.p_value == pytest.approx(0.383, abs=0.005)


def test_god_class_grid_reproduces_published_anova():
    result = one_way_anova(GOD_CLASS_ROC)
    assert (result.df_between, result.df_within) == (5, 30)
    assert result.f_statistic == pytest.approx(0.655, abs=0.005)
    assert result.p_value == pytest.approx(0.660, abs=0.005)


def test_feature_envy_grid_reproduces_published_anova():
    result = one_way_anova(FEATURE_ENVY_ROC)
    assert (result.df_between, result.df_within) == (5, 24)
    assert result.f_statistic == pytest.approx(0.585, abs=0.005)
    assert result.p_value == pytest.approx(0.712, abs=0.005)


def test_identical_groups_are_degenerate():
    result = one_way_anova({"a": [0.5, 0.5], "b": [0.5, 0.5], "c": [0.5, 0.5]})
    assert result.f_statistic == 0.0 and result.p_value == 1.0
    assert result.degenerate


def test_hand_computed_two_group_case():
    result = one_way_anova({"g1": [1.0, 2.0, 3.0], "g2": [2.0, 3.0, 4.0]})
    assert result.f_statistic == pytest.approx(1.5, abs=1e-12)
    assert (result.df_between, result.df_within) == (1, 4)
    assert result.p_value == pytest.approx(0.288, abs=0.001)
    assert result.group_means == {"g1": 2.0, "g2": 3.0}


def test_too_few_groups():
    with pytest.raises(TooFewGroupsError):
        one_way_anova({"only": [1.0, 2.0]})
    with pytest.raises(TooFewGroupsError):
        one_way_anova({"a": [1.0, 2.0], "b": [1.0]})


# -- f_survival -------------------------------------------------------------------


def test_f_survival_anchors():
    assert f_survival(0.0, 5, 30) == 1.0
    assert f_survival(1e6, 5, 30) < 1e-8
    assert f_survival(1.096, 5, 30) == pytest.approx(0.383, abs=0.001)


def test_f_survival_validates_df():
    with pytest.raises(InvalidDegreesOfFreedomError):
        f_survival(1.0, 0, 5)
    with pytest.raises(InvalidDegreesOfFreedomError):
        f_survival(1.0, 3, -1)


def _f_density(x: np.ndarray, d1: int, d2: int) -> np.ndarray:
    ln_b = (
        math.lgamma(d1 / 2) + math.lgamma(d2 / 2) - math.lgamma((d1 + d2) / 2)
    )
    return np.exp(
        (d1 / 2) * math.log(d1 / d2)
        + (d1 / 2 - 1) * np.log(x)
        - ((d1 + d2) / 2) * np.log1p(d1 * x / d2)
        - ln_b
    )


def _f_survival_quadrature(f: float, d1: int, d2: int) -> float:
    """Independent oracle: Gauss-Legendre integration of the F density.

    Integrates with the substitution x = u^2, which removes the endpoint
    singularity of the density for small df1.
    """
    nodes, weights = np.polynomial.legendre.leggauss(400)
    half = 0.5 * math.sqrt(f)
    u = half * (nodes + 1.0)
    w = half * weights
    u = np.maximum(u, 1e-300)
    cdf = float(np.sum(w * _f_density(u * u, d1, d2) * 2.0 * u))
    return 1.0 - cdf


@pytest.mark.parametrize(
    "f,d1,d2",
    [(1.096, 5, 30), (0.585, 5, 24), (2.5, 3, 12), (0.1, 1, 4), (4.0, 8, 40)],
)
def test_f_survival_matches_quadrature_oracle(f, d1, d2):
    assert f_survival(f, d1, d2) == pytest.approx(
        _f_survival_quadrature(f, d1, d2), abs=1e-8
    )


def _t_two_sided_quadrature(t: float, df: int) -> float:
    """Two-sided t tail by quadrature (independent of the beta kernel)."""
    ln_c = (
        math.lgamma((df + 1) / 2)
        - math.lgamma(df / 2)
        - 0.5 * math.log(df * math.pi)
    )
    nodes, weights = np.polynomial.legendre.leggauss(400)
    x = 0.5 * t * (nodes + 1.0)
    w = 0.5 * t * weights
    density = np.exp(ln_c - ((df + 1) / 2) * np.log1p(x * x / df))
    half_central = float(np.sum(w * density))  # integral over [0, t]
    return 2.0 * (0.5 - half_central)


@pytest.mark.parametrize("f,df", [(1.5, 4), (0.25, 7), (3.7, 11)])
def test_f_on_one_df_equals_two_sided_t_tail(f, df):
    assert f_survival(f, 1, df) == pytest.approx(
        _t_two_sided_quadrature(math.sqrt(f), df), abs=1e-8
    )


def test_f_survival_monotone_decreasing():
    values = [f_survival(f, 5, 30) for f in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0)]
    assert values == sorted(values, reverse=True)


@given(
    scale=st.floats(0.1, 10.0),
    shift=st.floats(-5.0, 5.0),
)
@settings(max_examples=40, deadline=None)
def test_affine_invariance_of_f(scale, shift):
    base = one_way_anova(LONG_METHOD_ROC)
    transformed = one_way_anova(
        {k: [scale * x + shift for x in v] for k, v in LONG_METHOD_ROC.items()}
    )
    assert transformed.f_statistic == pytest.approx(base.f_statistic, abs=1e-10)
    assert transformed.p_value == pytest.approx(base.p_value, abs=1e-10)


def test_within_group_permutation_invariance():
    base = one_way_anova(GOD_CLASS_ROC)
    shuffled = {k: list(reversed(v)) for k, v in GOD_CLASS_ROC.items()}
    result = one_way_anova(shuffled)
    assert result.f_statistic == pytest.approx(base.f_statistic, abs=1e-14)


def test_incomplete_beta_basics():
    assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
    assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0
    # symmetric case I_{1/2}(a, a) = 1/2
    assert regularized_incomplete_beta(4.0, 4.0, 0.5) == pytest.approx(0.5, abs=1e-12)
    # complement identity
    a, b, x = 2.5, 7.0, 0.3
    assert regularized_incomplete_beta(a, b, x) == pytest.approx(
        1.0 - regularized_incomplete_beta(b, a, 1.0 - x), abs=1e-12
    )
