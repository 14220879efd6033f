"""Sparse integer matrices and Smith normal form over Z.

Everything here uses Python integers, so no entry can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) out of range")
            if v == 0:
                raise ValueError("sparse matrix stores nonzero entries only")

    @classmethod
    def from_dense(cls, dense: list[list[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        entries = {
            (i, j): int(v) for i, row in enumerate(dense) for j, v in enumerate(row) if v
        }
        return cls(rows, cols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, {ij: v for ij, v in acc.items() if v})

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries


def smith_normal_form(m: IntegerMatrix) -> tuple[list[int], int]:
    """Invariant factors d1 | d2 | ... of `m` and its rank.

    Works on a sparse row representation. Each step pivots on an entry of
    minimal absolute value and reduces its row and column until the pivot
    divides everything left in both, then enforces the divisibility chain
    on the diagonal.
    """
    rows: dict[int, dict[int, int]] = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = v

    diagonal: list[int] = []
    while rows:
        # pivot of minimal |value|
        pi, pj, pv = None, None, None
        for i, row in rows.items():
            for j, v in row.items():
                if pv is None or abs(v) < abs(pv):
                    pi, pj, pv = i, j, v
                    if abs(pv) == 1:
                        break
            if pv is not None and abs(pv) == 1:
                break

        while True:
            # clear the pivot column using row operations
            done = True
            col_rows = [i for i, row in rows.items() if i != pi and pj in row]
            for i in col_rows:
                row = rows[i]
                q = row[pj] // pv
                _axpy(row, rows[pi], -q)
                if pj in row:
                    done = False
                if not row:
                    del rows[i]
            # clear the pivot row using column operations
            prow = rows[pi]
            for j in [j for j in prow if j != pj]:
                q = prow[j] // pv
                if q:
                    _col_axpy(rows, j, pj, -q)
                if prow.get(j):
                    done = False
            if done:
                break
            # a remainder survived: move the smallest leftover into the pivot
            best = (abs(pv), pi, pj)
            for i, row in rows.items():
                if pj in row and abs(row[pj]) < best[0]:
                    best = (abs(row[pj]), i, pj)
            for j, v in rows[pi].items():
                if abs(v) < best[0]:
                    best = (abs(v), pi, j)
            _, pi, pj = best
            pv = rows[pi][pj]

        diagonal.append(abs(pv))
        del rows[pi]
        for row in rows.values():
            row.pop(pj, None)
        for i in [i for i, row in rows.items() if not row]:
            del rows[i]

    return _divisibility_chain(diagonal), len(diagonal)


def _axpy(target: dict[int, int], source: dict[int, int], scale: int) -> None:
    if not scale:
        return
    for j, v in source.items():
        w = target.get(j, 0) + scale * v
        if w:
            target[j] = w
        else:
            target.pop(j, None)


def _col_axpy(rows: dict[int, dict[int, int]], target: int, source: int, scale: int) -> None:
    for row in rows.values():
        v = row.get(source)
        if v:
            w = row.get(target, 0) + scale * v
            if w:
                row[target] = w
            else:
                row.pop(target, None)


def _divisibility_chain(diagonal: list[int]) -> list[int]:
    """Normalize a diagonal to invariant factors.

    diag(a, b) is equivalent to diag(gcd, lcm); repeating this pairwise
    yields the divisibility chain.
    """
    from math import gcd

    d = sorted(diagonal)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def rank_over_q(m: IntegerMatrix) -> int:
    """Rank over the rationals by fraction-free elimination.

    Independent of `smith_normal_form`; used as a cross-check.
    """
    dense = m.to_dense()
    rank = 0
    ncols = m.cols
    for c in range(ncols):
        piv = next((r for r in range(rank, len(dense)) if dense[r][c]), None)
        if piv is None:
            continue
        dense[rank], dense[piv] = dense[piv], dense[rank]
        p = dense[rank]
        for r in range(rank + 1, len(dense)):
            f = dense[r][c]
            if f:
                dense[r] = [p[c] * x - f * y for x, y in zip(dense[r], p)]
        rank += 1
    return rank
