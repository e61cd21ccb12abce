"""Independent oracles the tests check library routines against.

The quaternion oracle expands products bilinearly over the 16-entry basis
table (Hamilton convention, e1*e2 = e3) instead of using component
formulas, so it shares no code path with the package.
"""

# (i, j) -> (sign, k) meaning e_i e_j = sign * e_k
BASIS_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def table_mul(a, b):
    """Product of two quaternions given as 4-sequences [w, x, y, z]."""
    out = [0.0, 0.0, 0.0, 0.0]
    for i in range(4):
        if a[i] == 0:
            continue
        for j in range(4):
            if b[j] == 0:
                continue
            sign, k = BASIS_TABLE[(i, j)]
            out[k] += sign * a[i] * b[j]
    return out


def table_conj(a):
    return [a[0], -a[1], -a[2], -a[3]]


def table_dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def central_difference(f, h):
    """Plain two-point central difference, the oracle for derivative links."""
    return (f(h) - f(-h)) / (2.0 * h)
