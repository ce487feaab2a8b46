"""Text cache of L-polynomials, one record per squarefree monic D."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .algebra import FqContext, FqPoly
from .errors import VerificationFailed
from .fastcount import EnsembleEngine
from .lfunc import LPolynomial, genus_data

MAGIC = "#hyperzeta-cache v1"
_HEADER = re.compile(r"#hyperzeta-cache v1 q=(\d+) d=(\d+) reduced=([01])$")


def header(q: int, d: int, reduced: bool) -> str:
    return f"{MAGIC} q={q} d={d} reduced={int(reduced)}"


def expected_records(q: int, d: int, reduced: bool) -> int:
    total = q if d == 1 else q ** d - q ** (d - 1)
    return total // q if reduced else total


def record(digits: str, b) -> str:
    return digits + ":" + ",".join(str(int(x)) for x in b)


def index_to_digits(ctx: FqContext, index: int, d: int) -> str:
    return FqPoly.from_index(ctx, index, d).digits()


@dataclass
class CacheData:
    q: int
    d: int
    reduced: bool
    records: dict[str, LPolynomial] = field(default_factory=dict)

    def lpolys(self) -> list[LPolynomial]:
        return [self.records[k] for k in sorted(self.records)]


def write_records(out: TextIO, q: int, d: int, reduced: bool,
                  rows: Iterable[tuple[str, Iterable[int]]]) -> int:
    out.write(header(q, d, reduced) + "\n")
    n = 0
    for digits, b in rows:
        out.write(record(digits, b) + "\n")
        n += 1
    return n


def _digit_table(ctx: FqContext) -> list[str]:
    return [FqPoly(ctx, [ctx.from_index(e), ctx.one]).digits() for e in range(ctx.q)]


def engine_rows(ctx: FqContext, d: int, reduced: bool, chunk: int = 1 << 15):
    """(digits, b) for every member of the family, in increasing N(D)."""
    engine = EnsembleEngine(ctx, d, reduced)
    table = _digit_table(ctx)
    q = ctx.q
    for lo, hi in engine.chunk_bounds(chunk):
        ch = engine.lpolys(lo, hi)
        for idx, b in zip(ch.index.tolist(), ch.b.tolist()):
            parts = []
            for _ in range(d):
                idx, r = divmod(idx, q)
                parts.append(table[r])
            yield "".join(parts), b


def parse(stream: TextIO, check_count: bool = True) -> CacheData:
    first = stream.readline().rstrip("\n")
    m = _HEADER.match(first)
    if not m:
        raise ValueError(f"not a hyperzeta cache header: {first!r}")
    q, d, reduced = int(m.group(1)), int(m.group(2)), m.group(3) == "1"
    data = CacheData(q, d, reduced)
    _, g = genus_data(d)
    for lineno, line in enumerate(stream, start=2):
        line = line.strip()
        if not line:
            continue
        digits, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: missing ':'")
        b = [int(x) for x in rest.split(",")]
        if len(b) != 2 * g + 1:
            raise ValueError(f"line {lineno}: expected {2 * g + 1} coefficients")
        for r in range(g):
            if b[2 * g - r] != b[r] * q ** (g - r):
                raise VerificationFailed(f"line {lineno} ({digits}): b({2 * g - r}) breaks symmetry")
        data.records[digits] = LPolynomial.from_b(q, d, b)
    if check_count and len(data.records) != expected_records(q, d, reduced):
        raise VerificationFailed(
            f"{len(data.records)} records, expected {expected_records(q, d, reduced)}")
    return data


def load(path, check_count: bool = True) -> CacheData:
    with open(path) as fh:
        return parse(fh, check_count)

