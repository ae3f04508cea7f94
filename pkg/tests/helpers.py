"""Shared builders for test logs and exact-arithmetic helpers."""

import math
from dataclasses import dataclass
from fractions import Fraction

from torquecluster import Connection
from torquecluster.engine import connection_properties


@dataclass(frozen=True)
class ExactSqrt:
    """A nonnegative value known only through its exact square.

    Multiplying the value by itself yields the rational radicand, which lets
    duck-typed arithmetic produce exact squared distances that have no
    rational square root.
    """

    square: Fraction

    def __mul__(self, other):
        if other is self:
            return self.square
        return NotImplemented

    def __lt__(self, other):
        if other == 0:
            return False
        return NotImplemented


def make_connection(connection_id, round_index, from_cluster, to_cluster,
                    from_mass, to_mass, distance, redundant=False,
                    sample_a=0, sample_b=1):
    mass_product, square_distance, torque = connection_properties(
        from_mass, to_mass, distance)
    return Connection(
        id=connection_id, round=round_index,
        from_cluster=from_cluster, to_cluster=to_cluster,
        from_mass=from_mass, to_mass=to_mass, distance=distance,
        mass_product=mass_product, square_distance=square_distance,
        torque=torque, redundant=redundant,
        sample_a=sample_a, sample_b=sample_b)


# The six-connection log of the worked two-table example: four light
# connections (mass products 30/30/20/20) in one round, two heavy ones
# (289/272) in the next. Ids 1..6 follow the C1..C6 naming.
TABLE_ROWS = [
    # (id, round, from_mass, to_mass, squared distance as a string)
    (1, 1, 2, 15, "0.64"),
    (2, 1, 3, 10, "1.00"),
    (3, 1, 2, 10, "0.64"),
    (4, 1, 2, 10, "1.44"),
    (5, 2, 17, 17, "15.83"),
    (6, 2, 16, 17, "14.50"),
]


def table_log_float():
    """The six connections with ordinary float distances."""
    log = []
    for cid, rnd, m1, m2, sq in TABLE_ROWS:
        log.append(make_connection(cid, rnd, 100 + cid, 200 + cid, m1, m2,
                                   math.sqrt(float(sq))))
    return log


def table_log_exact():
    """The six connections in exact rational arithmetic."""
    log = []
    for cid, rnd, m1, m2, sq in TABLE_ROWS:
        square = Fraction(sq)
        root = _rational_sqrt(square)
        distance = root if root is not None else ExactSqrt(square)
        log.append(make_connection(cid, rnd, 100 + cid, 200 + cid, m1, m2, distance))
    return log


def _rational_sqrt(value: Fraction):
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None
