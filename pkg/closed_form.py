"""
Closed Form - Recursion-free formulations of the n-dimensional tarai function
The conjectured recursive form f / g_b, its max-characterization, and the 3-dimensional closed form
"""

from enum import Enum

from tarai_core import IntSeq, TaraiArgumentError, as_seq, k_index, l_index


class ClosedFormVariant(Enum):
    CONJECTURE_RECURSIVE = "conjecture"
    CHARACTERIZATION = "characterization"
    MCCARTHY3 = "mccarthy3"


def g_b(x: IntSeq) -> int:
    """
    Helper of the conjectured form

    if j <= 3 then x(j)
    elif x(1) = x(2)+1 or x(2) > x(3)+1 then g_b(<x(2), ..., x(j)>)
    else max(x(3), x(j))

    Written as a loop over the shrinking suffix; the depth is at most j-3.
    """
    values = as_seq(x).values
    start = 0
    while len(values) - start > 3:
        x1, x2, x3 = values[start], values[start + 1], values[start + 2]
        if x1 == x2 + 1 or x2 > x3 + 1:
            start += 1
            continue
        return max(x3, values[-1])
    return values[-1]


def f_conjecture(x: IntSeq) -> int:
    """
    Reference form: g_b on the prefix of length k+1 when some k < m has
    x(1) > ... > x(k) <= x(k+1), otherwise x(1)

    Total on every non-empty sequence. Kept for cross-checking f_char.
    """
    x = as_seq(x)
    k = k_index(x)
    if k < x.n:
        return g_b(x.prefix(k + 1))
    return x.values[0]


def f_char(x: IntSeq) -> int:
    """
    Production closed form via the k/l characterization

    x(1) when x is strictly decreasing, otherwise max(x(l+2), x(k+1)).
    """
    x = as_seq(x)
    if x.n < 3:
        raise TaraiArgumentError(f"characterization needs length >= 3, got {x.n}: {x}")
    k = k_index(x)
    if k == x.n:
        return x.values[0]
    l = l_index(x)
    return max(x.values[l + 1], x.values[k])


def mccarthy3(x: IntSeq) -> int:
    """if x <= y then y elif y <= z then z else x"""
    x = as_seq(x)
    if x.n != 3:
        raise TaraiArgumentError(f"the 3-dimensional closed form needs exactly 3 arguments, got {x.n}")
    a, b, c = x.values
    if a <= b:
        return b
    if b <= c:
        return c
    return a


def closed_form(x: IntSeq, variant: ClosedFormVariant = ClosedFormVariant.CHARACTERIZATION) -> int:
    """Evaluate f(x) under the selected formulation"""
    if variant is ClosedFormVariant.CONJECTURE_RECURSIVE:
        return f_conjecture(x)
    if variant is ClosedFormVariant.CHARACTERIZATION:
        return f_char(x)
    return mccarthy3(x)
