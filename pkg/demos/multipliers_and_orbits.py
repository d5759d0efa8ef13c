"""Schur multipliers, flag variety polynomials and nilpotent orbit dimensions.

Run with ``python3 demos/multipliers_and_orbits.py``.
"""

from bgtrace.groups import FiniteGroup, schur_multiplier
from bgtrace.nilpotent import BUILTIN_DIAGRAMS, orbit_report
from bgtrace.rootdata import (CyclotomicNumber, RootDatum, poincare_flag,
                              splitting_criterion)


def main():
    print("== finite groups")
    for G in [FiniteGroup.symmetric(4), FiniteGroup.alternating(4), FiniteGroup.quaternion(),
              FiniteGroup.abelian([2, 2])]:
        print(f"  M({G.name}) = {schur_multiplier(G)}")

    print("== connected groups")
    for t in ["A1", "A2", "D4", "E6", "E8"]:
        print(f"  adjoint {t}: {RootDatum.adjoint(t).schur_multiplier()}")

    print("== flag varieties")
    for t in ["A1", "A2", "B2"]:
        poly = poincare_flag(t)
        at_i = splitting_criterion(t, [], None, CyclotomicNumber.root_of_unity(4))
        print(f"  {t}: {poly}; nonzero at a primitive 4th root: {at_i.splits}")

    print("== built-in weighted diagrams")
    for name, (t, d) in BUILTIN_DIAGRAMS.items():
        rep = orbit_report(t, d)
        print(f"  {name}: orbit dim {rep['orbit_dim']}, slice dim {rep['slice_dim']}")


if __name__ == "__main__":
    main()
