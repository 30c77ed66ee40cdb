"""Reader for the benchmark harness CSV schema.

The consumed contract is the exact column list below; anything else is a
schema error naming the first offending column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

SCHEMA = (
    "decoder", "d", "eta", "p", "trials", "failures",
    "p_l", "ci_low", "ci_high", "seed", "wall_time_s",
)


class SchemaError(ValueError):
    """The CSV header does not match the harness schema."""


class UsageError(ValueError):
    """A filter or option selected nothing usable."""


@dataclass(frozen=True)
class CurveRow:
    decoder: str
    d: int
    eta: float
    p: float
    trials: int
    failures: int
    p_l: float
    ci_low: float
    ci_high: float
    seed: int
    wall_time_s: float

    @property
    def is_upper_bound(self) -> bool:
        return self.failures == 0

    @property
    def p_l_bound(self) -> float:
        return 1.0 / self.trials if self.is_upper_bound and self.trials else self.p_l


def _check_header(header) -> None:
    header = tuple(header or ())
    if header == SCHEMA:
        return
    for i, expected in enumerate(SCHEMA):
        got = header[i] if i < len(header) else "<missing>"
        if got != expected:
            raise SchemaError(
                f"column {i + 1} is {got!r}, expected {expected!r}"
            )
    raise SchemaError(f"unexpected extra columns: {header[len(SCHEMA):]!r}")


def read_rows(path) -> list[CurveRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        _check_header(next(reader, None))
        rows = []
        for record in reader:
            rows.append(CurveRow(
                decoder=record[0],
                d=int(record[1]),
                eta=float(record[2]),
                p=float(record[3]),
                trials=int(record[4]),
                failures=int(record[5]),
                p_l=float(record[6]),
                ci_low=float(record[7]),
                ci_high=float(record[8]),
                seed=int(record[9]),
                wall_time_s=float(record[10]),
            ))
        return rows


def filter_rows(rows, decoder=None, eta=None) -> list[CurveRow]:
    selected = [
        row
        for row in rows
        if (decoder is None or row.decoder == decoder)
        and (eta is None or row.eta == eta)
    ]
    if not selected:
        raise UsageError(
            f"no rows match decoder={decoder!r} eta={eta!r}"
        )
    return selected
