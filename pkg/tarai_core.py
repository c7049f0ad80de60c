"""
Tarai Core - Integer-sequence primitives for the n-dimensional tarai function
Provides the sigma and rotation operators, the k/l index functions and X_k membership
"""

import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

logger = logging.getLogger(__name__)

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


class TaraiError(Exception):
    """Base class for every error raised by the tarai toolkit"""


class TaraiArgumentError(TaraiError, ValueError):
    """Bad arity, index, range or grid size"""


class IntegerOverflowError(TaraiError, OverflowError):
    """Checked 64-bit arithmetic left the representable range"""


def check_int64(value: int, what: str = "value") -> int:
    """Reject integers outside the signed 64-bit range"""
    if isinstance(value, bool) or not isinstance(value, int):
        raise TaraiArgumentError(f"{what} must be an integer, got {value!r}")
    if value < INT64_MIN or value > INT64_MAX:
        raise IntegerOverflowError(f"{what} {value} does not fit in a signed 64-bit integer")
    return value


def checked_decrement(value: int) -> int:
    """Decrement by one, failing loudly instead of wrapping"""
    if value <= INT64_MIN:
        raise IntegerOverflowError(f"decrementing {value} underflows a signed 64-bit integer")
    return value - 1


@dataclass(frozen=True)
class IntSeq:
    """
    Immutable non-empty integer vector x = <x(1), ..., x(n)>

    Public positions are 1-based: ``x.at(1)`` is the first element.
    ``values`` holds the plain tuple for code that wants 0-based slicing.
    """
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise TaraiArgumentError("an integer sequence needs at least one element")
        for position, value in enumerate(values, start=1):
            check_int64(value, f"x({position})")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, *values: int) -> "IntSeq":
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "IntSeq":
        """Parse '3 2 1 5', '3,2,1,5' or '<3,2,1,5>'"""
        body = text.strip().strip("<>()[]⟨⟩")
        parts = [p for p in re.split(r"[\s,]+", body) if p]
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            raise TaraiArgumentError(f"cannot parse integer sequence from {text!r}: {e}")

    @property
    def n(self) -> int:
        return len(self.values)

    def at(self, i: int) -> int:
        """x(i) with 1-based i"""
        if not 1 <= i <= len(self.values):
            raise TaraiArgumentError(f"position {i} outside 1..{len(self.values)}")
        return self.values[i - 1]

    def prefix(self, length: int) -> "IntSeq":
        """x restricted to positions 1..length"""
        if not 1 <= length <= len(self.values):
            raise TaraiArgumentError(f"prefix length {length} outside 1..{len(self.values)}")
        return IntSeq(self.values[:length])

    def require_arity(self, minimum: int = 3) -> "IntSeq":
        if len(self.values) < minimum:
            raise TaraiArgumentError(
                f"operation needs at least {minimum} arguments, got {len(self.values)}: {self}"
            )
        return self

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __str__(self) -> str:
        return "<" + ", ".join(str(v) for v in self.values) + ">"

    def to_list(self) -> List[int]:
        return list(self.values)


def as_seq(x) -> IntSeq:
    """Accept an IntSeq or any integer sequence"""
    if isinstance(x, IntSeq):
        return x
    return IntSeq(tuple(x))


def sigma(x: IntSeq) -> IntSeq:
    """sigma(x) = <x(1)-1, x(2), ..., x(n)>"""
    x = as_seq(x)
    return IntSeq((checked_decrement(x.values[0]),) + x.values[1:])


def rot(x: IntSeq) -> IntSeq:
    """r(x) = <x(2), ..., x(n), x(1)>"""
    x = as_seq(x)
    return IntSeq(x.values[1:] + x.values[:1])


def rot_i(x: IntSeq, i: int) -> IntSeq:
    """
    r^i(x) for 0 <= i <= n-1

    r^i(x)(j) = x(j+i) if j+i <= n, else x(j+i-n).
    """
    x = as_seq(x)
    if not 0 <= i <= x.n - 1:
        raise TaraiArgumentError(f"rotation count {i} outside 0..{x.n - 1}")
    return IntSeq(x.values[i:] + x.values[:i])


def inner_vector(values: Tuple[int, ...], i: int) -> Tuple[int, ...]:
    """sigma(r^i(values)) on a bare tuple, 0-based i"""
    rotated = values[i:] + values[:i]
    return (checked_decrement(rotated[0]),) + rotated[1:]


def sigma_rot(x: IntSeq, i: int) -> IntSeq:
    """z_i = sigma(r^(i-1)(x)) for 1 <= i <= n"""
    x = as_seq(x)
    if not 1 <= i <= x.n:
        raise TaraiArgumentError(f"inner call index {i} outside 1..{x.n}")
    return IntSeq(inner_vector(x.values, i - 1))


def k_index(x: IntSeq) -> int:
    """
    Least k with x(k) <= x(k+1), or n when x is strictly decreasing

    Returns a 1-based position in [1, n].
    """
    values = as_seq(x).values
    for pos in range(1, len(values)):
        if values[pos - 1] <= values[pos]:
            return pos
    return len(values)


def l_index(x: IntSeq) -> int:
    """
    Least l in [1, k-1) with x(l) > x(l+1)+1 and x(l+1) = x(l+2)+1, else k-1

    l = 0 exactly when k = 1.
    """
    values = as_seq(x).values
    k = k_index(x)
    for l in range(1, k - 1):
        if values[l - 1] > values[l] + 1 and values[l] == values[l + 1] + 1:
            return l
    return k - 1


def in_X_k(x: IntSeq, k: int) -> bool:
    """True iff x(i) <= x(k) for every i < k"""
    values = as_seq(x).values
    if not 2 <= k <= len(values):
        raise TaraiArgumentError(f"X_k index {k} outside 2..{len(values)}")
    pivot = values[k - 1]
    return all(v <= pivot for v in values[: k - 1])


def x_k_indices(x: IntSeq) -> List[int]:
    """Every k in [2, n] with x in X_k"""
    x = as_seq(x)
    return [k for k in range(2, x.n + 1) if in_X_k(x, k)]


def max_value(x: Sequence[int]) -> int:
    return max(as_seq(x).values)
