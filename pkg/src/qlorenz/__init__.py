"""Quantile-based inequality curves and coefficients.

Population formulas, distribution-free estimation, influence-function
robustness analysis, income-transfer experiments, and Monte Carlo studies
for quantile analogues of the Lorenz curve and Gini coefficient.
"""
from .coefficients import (CoefficientReport, OracleEstimate, RankReport,
                           REFERENCE_MODELS, all_coefficients, coefficient,
                           gini0, prop1_oracle, rank_table, spearman)
from .convexity import (ConvexityReport, analytic_L1_second, convexity_sweep,
                        second_difference)
from .curves import CurveTable, curve_table, curve_value, lorenz_value
from .distributions import (Beta, ChiSquare, Distribution, Exponential,
                            HeavyTailError, Lognormal, ParetoI, ParetoII,
                            Uniform, Weibull, parse_distribution)
from .empirical import (Grid, Sample, ZeroIncomeError, empirical_curve,
                        empirical_lorenz, gini_hat, hf8_quantile,
                        read_income_csv)
from .influence import (QuadratureError, asymptotic_se, contaminated_quantile,
                        if_coefficient, if_coefficient_profile, if_curve,
                        if_quantile)
from .simulation import (CellResult, StudyConfig, StudyResult, ci_study,
                         ghat_matrix, sample_size_for_se, se_study, substream)
from .transfer import (TransferEffect, TransferredDistribution, TransferSpec,
                       levy_amount, transfer_effect, transferred_quantile,
                       verify_median_preserving)

__version__ = "0.1.0"
