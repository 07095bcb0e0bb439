"""Frozen expected values shared across the test suite.

The arrays here are the hand-checked reference instances the suite
compares against; each was verified once by the exhaustive multiplicity
definition and is kept literal so tests stay independent of the code
under test.
"""

from voamat import Voa

# 16-row level-2 array for the six-element rank-4 "house" matroid
# (circuits {1,2,3,4}, {4,5,6}, {1,2,3,5,6}).
HOUSE_VOA_2 = Voa(2, (1, 2, 3, 4, 5, 6), [
    (0, 0, 0, 0, 0, 0),
    (1, 0, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 1),
    (1, 1, 0, 0, 0, 0),
    (0, 0, 1, 1, 0, 1),
    (1, 0, 1, 0, 0, 0),
    (0, 1, 1, 0, 0, 0),
    (1, 1, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 1),
    (1, 0, 0, 1, 1, 0),
    (0, 1, 0, 1, 1, 0),
    (1, 1, 0, 0, 1, 1),
    (0, 0, 1, 1, 1, 0),
    (1, 0, 1, 0, 1, 1),
    (0, 1, 1, 0, 1, 1),
    (1, 1, 1, 1, 1, 0),
])

# Its restriction to columns 1..4 after deduplication: a level-2 array
# for the four-point rank-3 uniform matroid.
U34_VOA_2 = Voa(2, (1, 2, 3, 4), [
    (0, 0, 0, 0),
    (1, 0, 0, 1),
    (0, 1, 0, 1),
    (1, 1, 0, 0),
    (0, 0, 1, 1),
    (1, 0, 1, 0),
    (0, 1, 1, 0),
    (1, 1, 1, 1),
])

# Contraction of the above at column 4, value 0.
U23_VOA_2 = Voa(2, (1, 2, 3), [
    (0, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
])

# Second operand for the connection examples, on columns 4,5,6.
U23_VOA_2_ON_456 = Voa(2, (4, 5, 6), [
    (0, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
])

# Auxiliary three-column strength-2 array used in the series example.
AUX_OA23_2 = Voa(2, (1, 2, 3), [
    (0, 0, 0),
    (0, 1, 1),
    (1, 0, 1),
    (1, 1, 0),
])

# First eight rows of the series connection of U34_VOA_2 and
# U23_VOA_2_ON_456 at base columns 4/4 with the auxiliary above.
SERIES_FIRST_EIGHT = [
    (0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 0),
    (0, 0, 0, 1, 0, 1),
    (0, 0, 0, 0, 1, 1),
    (1, 0, 0, 1, 0, 0),
    (1, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0, 1),
    (1, 0, 0, 1, 1, 1),
]

# A 9-row strength-2 array on four ternary columns (columns 3 and 4 are
# the Latin squares 2x+y and x+y).
OA243_REFERENCE = Voa(3, (1, 2, 3, 4), [
    (0, 0, 0, 0),
    (0, 1, 1, 1),
    (0, 2, 2, 2),
    (1, 0, 2, 1),
    (1, 1, 0, 2),
    (1, 2, 1, 0),
    (2, 0, 1, 2),
    (2, 1, 2, 0),
    (2, 2, 0, 1),
])

# Mixed-level array: column 1 ranges over 0..3 (rank-2 element at base
# level 2), the others over 0..1.
MIXED_VOA_2 = Voa(4, (1, 2, 3, 4), [
    (0, 0, 0, 0),
    (1, 0, 1, 1),
    (2, 1, 0, 1),
    (3, 1, 1, 0),
])

# GF(2) representation of the house matroid.
HOUSE_GF2_MATRIX = (
    (1, 0, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 1),
    (0, 0, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 1),
)

# Rank-3 four-element subsets of the dual binary plane on labels 1..7.
DUAL_PLANE_RANK3_QUADS = [
    {1, 2, 3, 5}, {1, 2, 4, 6}, {1, 3, 4, 7},
    {1, 5, 6, 7}, {2, 3, 6, 7}, {2, 4, 5, 7}, {3, 4, 5, 6},
]

HOUSE_CIRCUITS = [{1, 2, 3, 4}, {4, 5, 6}, {1, 2, 3, 5, 6}]
