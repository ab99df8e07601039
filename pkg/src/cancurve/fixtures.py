"""Built-in reference data for table reproduction runs.

Each fixture names a singularity configuration, the plane degree that
realizes it at the target genus, the set of sequences considered a match,
and (when the configuration is expected to reach it) the generic sequence
that at least one trial must achieve.  The allowed sets are unions over
the genus row group, since repeated sampling of one configuration can
land on neighbouring rows.
"""

from __future__ import annotations

from dataclasses import dataclass

Sequence = tuple[int, ...]


@dataclass(frozen=True)
class TableFixture:
    genus: int
    degree: int
    config: str
    allowed: tuple[Sequence, ...]
    generic: Sequence | None
    chars: tuple[int, ...]
    trials: int


# sequence rows by genus, in table order (generic row first)
SEQUENCES: dict[int, tuple[Sequence, ...]] = {
    4: ((),),
    5: ((0,), (2,)),
    6: ((0,), (3,)),
    7: ((0, 0), (1, 0), (3, 0), (9, 0), (15, 4)),
    8: ((0, 0), (4, 0), (14, 0), (24, 5)),
    9: (
        (0, 0, 0),
        (4, 0, 0),
        (6, 0, 0),
        (8, 0, 0),
        (10, 0, 0),
        (12, 0, 0),
        (24, 0, 0),
        (24, 5, 0),
        (28, 5, 0),
        (44, 5, 0),
        (64, 20, 0),
        (84, 35, 6),
    ),
}

SMALL_PRIMES = (2, 3, 5, 7, 11)

FIXTURES: dict[int, tuple[TableFixture, ...]] = {
    4: (
        TableFixture(4, 5, "R2^2", ((),), (), SMALL_PRIMES, 5),
    ),
    5: (
        TableFixture(5, 6, "R2^5", ((0,),), (0,), SMALL_PRIMES, 5),
        TableFixture(5, 5, "R2", ((2,),), (2,), SMALL_PRIMES, 5),
    ),
    6: (
        TableFixture(6, 6, "R2^4", ((0,),), (0,), SMALL_PRIMES, 5),
        TableFixture(6, 5, "", ((3,),), (3,), SMALL_PRIMES, 5),
    ),
    7: (
        TableFixture(7, 7, "R2^8", ((0, 0), (3, 0)), (0, 0), (5, 7), 10),
    ),
    8: (
        TableFixture(8, 7, "R2^7", SEQUENCES[8], None, (5,), 3),
    ),
    9: (
        TableFixture(9, 8, "R2^12", SEQUENCES[9], (0, 0, 0), (5,), 10),
    ),
}

MAX_TABLE_GENUS = max(FIXTURES)
LARGE_GENUS_CUTOFF = 10
