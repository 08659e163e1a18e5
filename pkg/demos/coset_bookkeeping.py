"""List coset data, their fates and the Jacquet constituents for a few contexts.

    python demos/coset_bookkeeping.py
"""

from zetaforge.orbits import (
    enumerate_eps,
    jacquet_constituents_inert,
    jacquet_constituents_split,
    summand_fate,
    surviving_summand,
)
from zetaforge.weyl import make_context


def main():
    ctx = make_context("unitary-inert", 7, ell=1, j=2)
    print("coset data:", [(d.alpha, d.beta) for d in enumerate_eps(ctx)])
    for fate in summand_fate(ctx):
        print(f"  (alpha, beta)=({fate.datum.alpha}, {fate.datum.beta}) orbits={fate.orbit_count} reasons={fate.reasons}")
    print("survivor:", surviving_summand(ctx).as_dict())

    twisted = make_context("so-even-split", 6, ell=1, j=2)
    print("so-even-split data:", [(d.alpha, d.beta, d.twisted) for d in enumerate_eps(twisted)])

    for c in jacquet_constituents_inert(ctx):
        print("inert:", c.family, c.label)
    for c in jacquet_constituents_split(1, 3, 1, 2):
        print("split:", c.family, c.label)


if __name__ == "__main__":
    main()
