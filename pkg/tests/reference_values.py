"""Frozen reference values shared across the test suite.

Two kinds of constants live here:

* ``REFERENCE_*``: externally published 3-dp values for the 14-model
  catalogue (the CLI's table1/table2/table3 targets).
* ``COMPUTED_*``: values frozen from this package's own exact computation,
  used for regression pinning.  Where a published cell disagrees with the
  exact computation, the discrepancy is recorded next to the constant and
  exercised explicitly by the acceptance tests.
"""
import numpy as np

MODEL_NAMES = (
    "Uniform",
    "ChiSquare(0.5)",
    "ChiSquare(1)",
    "ChiSquare(3)",
    "ChiSquare(5)",
    "Lognormal",
    "Pareto(0.5)",
    "Pareto(1)",
    "Pareto(1.5)",
    "Pareto(2)",
    "Weibull(0.25)",
    "Weibull(0.5)",
    "Weibull(1)",
    "Weibull(4)",
)

# Published coefficients (G0, G1, G2, G3) to 3 dp.  The Pareto rows are
# Type II (Lomax); G0 = 1.000 for the infinite-mean rows is the heavy-tail
# extension convention.
REFERENCE_TABLE1 = {
    "Uniform": (0.333, 0.333, 0.455, 0.333),
    "ChiSquare(0.5)": (0.762, 0.671, 0.792, 0.720),
    "ChiSquare(1)": (0.636, 0.525, 0.673, 0.572),
    "ChiSquare(3)": (0.423, 0.329, 0.483, 0.361),
    "ChiSquare(5)": (0.339, 0.261, 0.406, 0.285),
    "Lognormal": (0.520, 0.333, 0.510, 0.388),
    "Pareto(0.5)": (1.000, 0.515, 0.704, 0.610),
    "Pareto(1)": (1.000, 0.455, 0.636, 0.528),
    "Pareto(1.5)": (0.741, 0.434, 0.609, 0.497),
    "Pareto(2)": (0.667, 0.424, 0.595, 0.481),
    "Weibull(0.25)": (0.937, 0.731, 0.843, 0.787),
    "Weibull(0.5)": (0.750, 0.570, 0.720, 0.629),
    "Weibull(1)": (0.500, 0.393, 0.550, 0.432),
    "Weibull(4)": (0.159, 0.136, 0.222, 0.134),
}

# The one published cell that is inconsistent with exact computation: the
# Lomax Gini coefficient is a/(2a-1), so Pareto(1.5) has G0 = 0.750 exactly
# (the 0.741 above matches the mean of finite-n sample Gini estimates under
# infinite variance, i.e. a downward-biased simulation value).
TABLE1_DISCREPANT_CELL = ("Pareto(1.5)", 0)
TABLE1_EXACT_PARETO15_G0 = 0.750

# Frozen from this package's grid computation at J=1000 (6 dp).
COMPUTED_TABLE1 = {
    "Uniform": (0.333333, 0.333333, 0.454823, 0.333333),
    "ChiSquare(0.5)": (0.762762, 0.671297, 0.791634, 0.719967),
    "ChiSquare(1)": (0.636621, 0.525051, 0.672892, 0.572083),
    "ChiSquare(3)": (0.424414, 0.328949, 0.483132, 0.360771),
    "ChiSquare(5)": (0.339531, 0.261407, 0.405565, 0.285190),
    "Lognormal": (0.520502, 0.332762, 0.510420, 0.388245),
    "Pareto(0.5)": (1.000000, 0.515059, 0.704164, 0.610191),
    "Pareto(1)": (1.000000, 0.454823, 0.635533, 0.527887),
    "Pareto(1.5)": (0.750017, 0.434307, 0.608857, 0.496968),
    "Pareto(2)": (0.666674, 0.424026, 0.594835, 0.480983),
    "Weibull(0.25)": (0.937524, 0.731081, 0.843256, 0.787148),
    "Weibull(0.5)": (0.750003, 0.569967, 0.720098, 0.629260),
    "Weibull(1)": (0.500001, 0.393263, 0.550346, 0.431590),
    "Weibull(4)": (0.159104, 0.136428, 0.221791, 0.134275),
}

# Published Spearman correlations of G0 with G1, G2, G3 over the catalogue.
REFERENCE_SPEARMAN = (0.84, 0.88, 0.88)
# Frozen: ranking the published value matrix reproduces them;
COMPUTED_SPEARMAN_FROM_REFERENCE = (0.83736, 0.88242, 0.88242)
# ranking our computed matrix instead ties Pareto(1.5) with Weibull(0.5) at
# G0 = 0.750 (3 dp), which moves rho1 slightly below the published band.
COMPUTED_SPEARMAN_FROM_COMPUTED = (0.82967, 0.87473, 0.87473)

# Published asymptotic standard errors sigma_1..sigma_3 (table2, infinity
# column, 3 dp).
REFERENCE_TABLE2_INF = {
    "Uniform": (0.421, 0.399, 0.361),
    "ChiSquare(0.5)": (0.550, 0.359, 0.405),
    "ChiSquare(1)": (0.521, 0.402, 0.427),
    "ChiSquare(3)": (0.408, 0.351, 0.316),
    "ChiSquare(5)": (0.337, 0.305, 0.253),
    "Lognormal": (0.417, 0.351, 0.322),
    "Pareto(0.5)": (0.540, 0.351, 0.370),
    "Pareto(1)": (0.507, 0.371, 0.376),
    "Pareto(1.5)": (0.492, 0.379, 0.380),
    "Pareto(2)": (0.485, 0.381, 0.379),
    "Weibull(0.25)": (0.540, 0.330, 0.384),
    "Weibull(0.5)": (0.550, 0.387, 0.422),
    "Weibull(1)": (0.461, 0.382, 0.370),
    "Weibull(4)": (0.195, 0.207, 0.140),
}

# Frozen from this package's influence-function double integral (5 dp).
# Validated independently: the well-behaved rows match the published values
# to <=0.001; for the rest, large-n Monte Carlo of sqrt(n)*RMSE converges to
# these values and not to the published ones (see the acceptance module).
COMPUTED_TABLE2_INF = {
    "Uniform": (0.42164, 0.39877, 0.36077),
    "ChiSquare(0.5)": (0.56643, 0.38553, 0.44410),
    "ChiSquare(1)": (0.53935, 0.40668, 0.43450),
    "ChiSquare(3)": (0.40762, 0.35624, 0.32304),
    "ChiSquare(5)": (0.34163, 0.31734, 0.26508),
    "Lognormal": (0.41843, 0.35563, 0.32800),
    "Pareto(0.5)": (0.56328, 0.38972, 0.42169),
    "Pareto(1)": (0.51141, 0.38485, 0.39563),
    "Pareto(1.5)": (0.49393, 0.38286, 0.38585),
    "Pareto(2)": (0.48539, 0.38216, 0.38123),
    "Weibull(0.25)": (0.55276, 0.33858, 0.39623),
    "Weibull(0.5)": (0.55352, 0.39012, 0.42703),
    "Weibull(1)": (0.46115, 0.38248, 0.36985),
    "Weibull(4)": (0.19545, 0.20702, 0.14030),
}


def reproducible_table2_cells(tol: float = 0.005):
    """(name, index) pairs whose published sigma matches the exact value."""
    out = []
    for name in MODEL_NAMES:
        for j in range(3):
            if abs(REFERENCE_TABLE2_INF[name][j] - COMPUTED_TABLE2_INF[name][j]) <= tol:
                out.append((name, j + 1))
    return out


# Published finite-sample sqrt(n)*SE at n = 25 and n = 100 (table2, 2 dp),
# keyed by model -> {n: (G1, G2, G3)}.
REFERENCE_TABLE2_FINITE = {
    "Uniform": {25: (0.40, 0.38, 0.35), 100: (0.40, 0.39, 0.35)},
    "ChiSquare(0.5)": {25: (0.55, 0.39, 0.43), 100: (0.55, 0.38, 0.43)},
    "ChiSquare(1)": {25: (0.50, 0.40, 0.42), 100: (0.53, 0.41, 0.44)},
    "ChiSquare(3)": {25: (0.39, 0.34, 0.31), 100: (0.40, 0.36, 0.33)},
    "ChiSquare(5)": {25: (0.32, 0.30, 0.26), 100: (0.33, 0.32, 0.27)},
    "Lognormal": {25: (0.39, 0.34, 0.32), 100: (0.40, 0.35, 0.32)},
    "Pareto(0.5)": {25: (0.53, 0.38, 0.41), 100: (0.54, 0.39, 0.42)},
    "Pareto(1)": {25: (0.49, 0.37, 0.38), 100: (0.50, 0.38, 0.39)},
    "Pareto(1.5)": {25: (0.46, 0.36, 0.36), 100: (0.47, 0.38, 0.38)},
    "Pareto(2)": {25: (0.45, 0.37, 0.37), 100: (0.46, 0.38, 0.38)},
    "Weibull(0.25)": {25: (0.55, 0.35, 0.40), 100: (0.53, 0.34, 0.39)},
    "Weibull(0.5)": {25: (0.53, 0.38, 0.41), 100: (0.53, 0.39, 0.42)},
    "Weibull(1)": {25: (0.44, 0.37, 0.36), 100: (0.45, 0.38, 0.37)},
    "Weibull(4)": {25: (0.19, 0.20, 0.14), 100: (0.19, 0.21, 0.14)},
}

# Published coverage / width cells (table3): model -> n -> (coverages, widths)
# per index 1..3, nominal 95% intervals Ghat +/- 1.96 sigma / sqrt(n) using
# the published sigma values above.
REFERENCE_TABLE3 = {
    "lognormal": {
        "sigma": {1: 0.417, 2: 0.351, 3: 0.322},
        25: ((0.967, 0.954, 0.954), (0.327, 0.275, 0.252)),
        100: ((0.956, 0.947, 0.946), (0.164, 0.138, 0.126)),
        400: ((0.951, 0.947, 0.948), (0.082, 0.069, 0.063)),
    },
    "paretoII:a=2": {
        "sigma": {1: 0.485, 2: 0.381, 3: 0.379},
        25: ((0.966, 0.955, 0.954), (0.380, 0.299, 0.297)),
        100: ((0.960, 0.952, 0.951), (0.190, 0.149, 0.149)),
        400: ((0.956, 0.951, 0.950), (0.095, 0.075, 0.074)),
    },
}

# Distribution spec strings for the catalogue, aligned with MODEL_NAMES.
MODEL_SPECS = {
    "Uniform": "uniform",
    "ChiSquare(0.5)": "chisq:k=0.5",
    "ChiSquare(1)": "chisq:k=1",
    "ChiSquare(3)": "chisq:k=3",
    "ChiSquare(5)": "chisq:k=5",
    "Lognormal": "lognormal",
    "Pareto(0.5)": "paretoII:a=0.5",
    "Pareto(1)": "paretoII:a=1",
    "Pareto(1.5)": "paretoII:a=1.5",
    "Pareto(2)": "paretoII:a=2",
    "Weibull(0.25)": "weibull:beta=0.25",
    "Weibull(0.5)": "weibull:beta=0.5",
    "Weibull(1)": "weibull:beta=1",
    "Weibull(4)": "weibull:beta=4",
}

PRINTED_MATRIX = np.array([REFERENCE_TABLE1[name] for name in MODEL_NAMES])
