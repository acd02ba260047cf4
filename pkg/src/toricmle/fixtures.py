"""Published matrices, data sets and reference values used by tests and scripts."""

import itertools

from .families import hierarchical_model
from .model import validate_model

# Coronary heart disease risk factors for 1841 car-industry workers.
# Variables (S, B, H, L): smoking, systolic pressure >= 140, family history,
# beta/alpha lipoprotein ratio >= 3; level 0 = no / below threshold.
# Rows of the published table are (H, L, B) with S = no / yes in columns.
_WORKER_TABLE = [
    # H, L, B, S=0, S=1
    (0, 0, 0, 297, 275),
    (0, 0, 1, 231, 121),
    (0, 1, 0, 150, 191),
    (0, 1, 1, 155, 161),
    (1, 0, 0, 36, 37),
    (1, 0, 1, 34, 30),
    (1, 1, 0, 32, 36),
    (1, 1, 1, 26, 29),
]


def _worker_counts():
    cell = {}
    for h, l, b, s0, s1 in _WORKER_TABLE:
        cell[(0, b, h, l)] = s0
        cell[(1, b, h, l)] = s1
    return tuple(cell[s] for s in itertools.product((0, 1), repeat=4))


# Ordered p_0000, p_0001, ..., p_1111 over (S, B, H, L).
WORKER_COUNTS = _worker_counts()

WORKER_MLE = (
    0.15293342, 0.089760679, 0.021266977, 0.015778191,
    0.12976986, 0.076165372, 0.020853199, 0.015471205,
    0.13533793, 0.11789409, 0.018820142, 0.0207235,
    0.083859917, 0.073051125, 0.01347576, 0.014838619,
)

FOUR_CYCLE_MATRIX = (
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1),
    (0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1),
)

THREE_CYCLE_MATRIX = (
    (0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 1, 1, 0, 0, 1, 1),
    (0, 1, 0, 1, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 1, 1),
    (0, 0, 0, 1, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 1, 0, 1),
)

# Binomial p000 p011 p101 p110 - p001 p010 p100 p111 in column indices.
THREE_CYCLE_GENERATOR = ([1, 0, 0, 1, 0, 1, 1, 0], [0, 1, 1, 0, 1, 0, 0, 1])


def four_cycle_model(c=None):
    return hierarchical_model(["SB", "BH", "HL", "LS"], [2, 2, 2, 2], c, name="binary 4-cycle")


def three_cycle_model(c=None):
    return hierarchical_model(["XY", "YZ", "ZX"], [2, 2, 2], c, name="binary 3-cycle")


# Second Veronese of the plane, columns 1, t1, t1^2, t2, t1 t2, t2^2.
VERONESE_EXAMPLE_A = ((0, 1, 2, 0, 1, 0), (0, 0, 0, 1, 1, 2))
VERONESE_EXAMPLE_DATA = (1, 3, 5, 7, 9, 2)
VERONESE_EXAMPLE_EASY = (1, 2, 1, 2, 2, 1)
# Reference values below are ordered (s, t1, t2); this package orders
# theta as (t1, t2, s). Use ``from_s_first`` / ``to_s_first`` to convert.
VERONESE_EXAMPLE_THETA_EASY = (0.0493, 1.8333, 1.6667)
VERONESE_EXAMPLE_THETA_STAT = (0.0863, 1.6326, 1.5150)
VERONESE_EXAMPLE_P_STAT = (0.09, 0.14, 0.23, 0.13, 0.21, 0.20)
VERONESE_EXAMPLE_CRITICAL_POINTS = (
    (0.2888, 1.4316, -1.8931),
    (0.3039, -1.8847, 1.3470),
    (0.8578, -0.7629, -0.7189),
    (0.0863, 1.6326, 1.5150),
)


def veronese_example_model(c=None):
    return validate_model(VERONESE_EXAMPLE_A, c, name="Ver(2,2) example")


def to_s_first(theta):
    return (theta[-1], *theta[:-1])


def from_s_first(theta):
    return (*theta[1:], theta[0])


# Seven scalings of Ver(2,2) given as the matrix C, with the published
# zero (True) / nonzero (False) pattern for the full triangle and the
# three edge faces, in that order, followed by the published ML degree.
VER22_TABLE = (
    (((2, 1, 1), (1, 2, 1), (1, 1, 2)), (False, False, False, False), 4),
    (((2, 2, 1), (2, 2, 3), (1, 3, 2)), (True, True, False, False), 3),
    (((2, 2, 1), (2, 2, 2), (1, 2, 2)), (True, True, True, False), 2),
    (((-2, 2, 2), (2, -2, 2), (2, 2, -2)), (False, True, True, True), 1),
    (((17, 22, 27), (22, 29, 36), (27, 36, 45)), (True, False, False, False), 3),
    (((2, 3, 3), (3, 5, 5), (3, 5, 5)), (True, False, True, False), 2),
    (((2, 2, 2), (2, 2, 2), (2, 2, 2)), (True, True, True, True), 1),
)
