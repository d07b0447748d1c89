"""Derived constants, computed by the engine and frozen here.

The diagonal slide fixes the equal-bit words on its two tensor factors and
acts on the span of (01, 10) by an order-3 matrix over GF(2). Which of the
two candidates belongs to which direction label is a fact of this package's
slide conventions, derived by transporting the two-square disc's basic
sutures across one slide and evaluating elements in the new quadrangulation
(tests re-derive and compare). Matrices are row tuples in the basis
(01, 10), columns indexed the same way.

The 120-degree anticlockwise rotation of the two-square disc keeps the
curves and rotates the quadrangulation the other way, so its operator is the
"cw" block below: [[0,1],[1,1]], the unique order-3 completion of its first
column.
"""

SLIDE_BLOCK = {
    "ccw": ((1, 1), (1, 0)),
    "cw": ((0, 1), (1, 1)),
}

ROTATION_BLOCK = SLIDE_BLOCK["cw"]
