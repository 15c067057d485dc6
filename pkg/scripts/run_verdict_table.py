#!/usr/bin/env python3
"""Verdict table over a stock of constructed groups.

Builds maximal absolutely irreducible nilpotent groups, their reducible
doublings, and a few deliberately non-nilpotent groups, runs the nilpotency
test on each, and prints degree / field / generator count / verdict / time.
The qualitative pattern to expect: nilpotent inputs take the longest since
every pipeline stage runs; non-nilpotent inputs exit early.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from nilmat.config import DEFAULT
from nilmat.fields import QQ, FiniteField
from nilmat.groups import GroupSpec
from nilmat.linalg import Matrix
from nilmat.nilpotency import is_nilpotent
from nilmat.testkit import gen_max_abs_irr_nilpotent, gen_reducible_nilpotent


def borel(q, n=2):
    F = FiniteField(q)
    u = Matrix.from_ints(F, [[1, 1], [0, 1]])
    d = Matrix.diagonal(F, (F.multiplicative_generator(), F.one))
    return GroupSpec(F, [u, d])


def build_stock():
    stock = []
    for n, p, l in ((2, 5, 1), (2, 13, 1), (3, 7, 1), (3, 13, 1), (2, 9, None), (4, 5, 1), (6, 13, 1)):
        if l is None:
            G = gen_max_abs_irr_nilpotent(n, 3, 2)
            label = f"max-irr({n}, GF(9))"
        else:
            G = gen_max_abs_irr_nilpotent(n, p, l)
            label = f"max-irr({n}, GF({p**l}))"
        stock.append((label, G))
    d8 = GroupSpec(QQ, [Matrix.from_ints(QQ, [[0, -1], [1, 0]]), Matrix.from_ints(QQ, [[1, 0], [0, -1]])])
    stock.append(("reducible(D8) over Q", gen_reducible_nilpotent(d8)))
    f5 = FiniteField(5)
    d8f = GroupSpec(f5, [Matrix.from_ints(f5, [[0, -1], [1, 0]]), Matrix.from_ints(f5, [[1, 0], [0, -1]])])
    stock.append(("reducible(D8) over GF(5)", gen_reducible_nilpotent(d8f)))
    stock.append(("reducible(reducible(D8))", gen_reducible_nilpotent(gen_reducible_nilpotent(d8f))))
    stock.append(("borel(GF(13))", borel(13)))
    stock.append(("borel(GF(7))", borel(7)))
    f3 = FiniteField(3)
    stock.append(
        (
            "GL(2,3)",
            GroupSpec(f3, [Matrix.from_ints(f3, [[1, 1], [0, 1]]), Matrix.from_ints(f3, [[0, 1], [1, 0]])]),
        )
    )
    stock.append(
        (
            "S3 over Q",
            GroupSpec(
                QQ,
                [
                    Matrix.from_ints(QQ, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
                    Matrix.from_ints(QQ, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
                ],
            ),
        )
    )
    heis = GroupSpec(
        QQ,
        [
            Matrix.from_ints(QQ, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            Matrix.from_ints(QQ, [[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        ],
    )
    stock.append(("heisenberg over Q", heis))
    stock.append(
        (
            "diag(3,1) + swap over Q",
            GroupSpec(QQ, [Matrix.from_ints(QQ, [[3, 0], [0, 1]]), Matrix.from_ints(QQ, [[0, 1], [1, 0]])]),
        )
    )
    return stock


def main():
    config = DEFAULT.with_(closure_cap=3 * 10**5)
    rows = []
    for label, G in build_stock():
        t0 = time.monotonic()
        v = is_nilpotent(G, config)
        dt = time.monotonic() - t0
        rows.append((label, G.degree, G.field.name(), len(G.gens), v.nilpotent, dt))
    w = max(len(r[0]) for r in rows)
    print(f"{'group':<{w}}  {'deg':>3}  {'field':<9}  {'gens':>4}  {'nilpotent':<9}  {'time':>8}")
    print("-" * (w + 45))
    for label, deg, field, gens, nil, dt in rows:
        print(f"{label:<{w}}  {deg:>3}  {field:<9}  {gens:>4}  {str(nil):<9}  {dt:>7.2f}s")


if __name__ == "__main__":
    main()
