"""Divided-difference tables.

``table.entries[m][i]`` is the m-th order divided difference over points
``i .. i+m`` (0-based), so row 0 holds the function values and column 0,
``entries[m][0]``, holds the Newton coefficients.  Values may be complex
numbers or any object that supports ``a - b`` and division by a complex
number (see ``impulse.SymbolicCoefficient``).
"""
from dataclasses import dataclass

from .errors import PartitionMismatch, ZeroDenominator
from .taylor_dd import EntryKind, classify_entry


@dataclass(frozen=True)
class DividedDifferenceTable:
    points: tuple
    entries: tuple

    @property
    def n(self):
        return len(self.points)

    @property
    def first_column(self):
        return [row[0] for row in self.entries]

    @property
    def top(self):
        return self.entries[-1][0]

    def entry(self, i, m):
        return self.entries[m][i]


def _step(upper, lower, p_hi, p_lo):
    denom = p_hi - p_lo
    if denom == 0:
        raise ZeroDenominator(f"coincident points {p_lo!r} in the direct recurrence")
    return (upper - lower) / denom


def dd_table_direct(points, values):
    """Full table by the plain recurrence, row by row, left to right."""
    pts = tuple(complex(z) for z in points)
    n = len(pts)
    if n < 1 or len(values) != n:
        raise ValueError("need as many values as points, at least one")
    rows = [list(values)]
    for m in range(1, n):
        prev = rows[-1]
        rows.append([_step(prev[i + 1], prev[i], pts[i + m], pts[i]) for i in range(n - m)])
    return DividedDifferenceTable(points=pts, entries=tuple(tuple(r) for r in rows))


def dd_table_merged(spectrum, partition, principal):
    """Table whose in-cluster entries come from ``principal`` triangles.

    ``principal[j][m][i]`` is the entry over points ``start_j + i .. start_j +
    i + m`` of cluster j.  Every other entry comes from the recurrence; its
    denominator joins two different clusters, so it is at least ``delta``.
    """
    return merge_principal([complex(z) for z in spectrum.values], partition, principal)


def merge_principal(points, partition, principal):
    """``dd_table_merged`` on explicit points (complex or ``mpmath.mpc``)."""
    pts = tuple(points)
    n = len(pts)
    if partition.n != n:
        raise PartitionMismatch(f"partition has {partition.n} points, spectrum {n}")
    if len(principal) != len(partition.clusters):
        raise PartitionMismatch("need one principal triangle per cluster")
    owner = [None] * n
    for cl, tri in zip(partition.clusters, principal):
        if len(tri) != cl.size or len(tri[0]) != cl.size:
            raise PartitionMismatch(f"triangle of size {len(tri)} for cluster of size {cl.size}")
        for i in cl.indices:
            owner[i] = (cl, tri)

    rows = []
    for m in range(n):
        row = []
        for i in range(n - m):
            cl, tri = owner[i]
            if classify_entry(i, m, partition, cl) is EntryKind.PRINCIPAL:
                row.append(tri[m][i - cl.start])
            else:
                prev = rows[m - 1]
                row.append(_step(prev[i + 1], prev[i], pts[i + m], pts[i]))
        rows.append(row)
    return DividedDifferenceTable(points=pts, entries=tuple(tuple(r) for r in rows))


def dd_fill_nonprincipal(spectrum, partition, principal):
    """Newton coefficients (first column) of the merged table."""
    return dd_table_merged(spectrum, partition, principal).first_column
