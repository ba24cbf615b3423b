"""Independent reference computations used as test oracles."""

from fractions import Fraction


def sylvester_resultant(a: list, b: list) -> Fraction:
    """Res(a, b) as the determinant of the Sylvester matrix (coeffs high first)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for k in range(n):
        rows.append([Fraction(0)] * k + [Fraction(c) for c in a] + [Fraction(0)] * (size - m - 1 - k))
    for k in range(m):
        rows.append([Fraction(0)] * k + [Fraction(c) for c in b] + [Fraction(0)] * (size - n - 1 - k))
    # plain Gaussian elimination over Q
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def sylvester_discriminant(coeffs_high: list) -> Fraction:
    n = len(coeffs_high) - 1
    deriv = [c * (n - k) for k, c in enumerate(coeffs_high[:-1])]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * sylvester_resultant(coeffs_high, deriv) / Fraction(coeffs_high[0])
