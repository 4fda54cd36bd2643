"""Exact Gaussian elimination over the rationals."""

from fractions import Fraction

from .algebra import LinForm


def _copy(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows, ncols=None, pivot_limit=None):
    """Reduced row echelon form.

    Returns ``(reduced, pivots, transform)`` with ``transform @ rows ==
    reduced``.  Pivots are only searched in the first ``pivot_limit``
    columns (all by default), which keeps an augmented constant column from
    becoming a pivot.
    """
    m = _copy(rows)
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    limit = ncols if pivot_limit is None else pivot_limit
    T = [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        T[r], T[pr] = T[pr], T[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        T[r] = [x * inv for x in T[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return m, pivots, T


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def forms_matrix(forms, symbols):
    return [LinForm.coerce(f).vector(symbols) for f in forms]


def span_rank(forms, symbols):
    return rank(forms_matrix(forms, symbols))


def combination(forms, target, symbols):
    """Rational coefficients c with sum(c_i * forms_i) == target, or None."""
    vectors = forms_matrix(forms, symbols)
    goal = LinForm.coerce(target).vector(symbols)
    k = len(vectors)
    if k == 0:
        return None if any(goal) else []
    # columns are the forms; solve A c = goal
    aug = [[vectors[j][i] for j in range(k)] + [goal[i]] for i in range(len(goal))]
    reduced, pivots, _ = rref(aug, pivot_limit=k)
    for row in reduced[len(pivots):]:
        if row[-1]:
            return None
    coeffs = [Fraction(0)] * k
    for row, c in zip(reduced, pivots):
        coeffs[c] = row[-1]
    return coeffs


def basis(forms, symbols):
    """Reduced row-echelon basis of the span, as LinForms."""
    rows = forms_matrix(forms, symbols)
    if not rows:
        return []
    reduced, pivots, _ = rref(rows)
    return [LinForm.from_vector(row, symbols) for row in reduced[: len(pivots)]]
