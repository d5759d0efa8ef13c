"""Fibers, invariants and the inertia count for finite group actions.

Run with ``python3 demos/equivariant_traces.py``.
"""

import random

from bgtrace.bg import (BGComplex, BoundedTraceModel, dual_numbers_sign_action,
                        graded_sign_action, permuted_idempotents_action, random_gset,
                        verify_inertia)
from bgtrace import algebra as alg
from bgtrace.groups import FiniteGroup


def show_fibers(label, action, depth=4):
    bg = BGComplex(action, depth)
    degrees = range(-depth + 1, 1)
    print(f"== {label}")
    for h in range(action.group.order):
        print(f"  fiber at {action.group.labels[h]}: {bg.fiber_at(h).cohomology_dims(degrees)}")
    print(f"  invariants: {bg.global_sections().cohomology_dims(degrees)}")


def main():
    show_fibers("Z/2 acting on k[x]/(x^2) by x -> -x", dual_numbers_sign_action())
    show_fibers("S3 permuting the idempotents of k^3",
                permuted_idempotents_action(FiniteGroup.symmetric(3)), depth=2)

    model = BoundedTraceModel(graded_sign_action(alg.An_with_zero_relation()))
    print(f"== bounded model, length {model.length}")
    print("  invariants:", model.global_sections().cohomology_dims())

    rng = random.Random(5)
    print("== inertia count on random G-sets")
    for G in [FiniteGroup.symmetric(3), FiniteGroup.dihedral(8), FiniteGroup.alternating(4)]:
        rep = verify_inertia(G, random_gset(G, 8, rng))
        print(f"  {G.name}: H^0 = {rep.global_h0}, orbits = {rep.orbit_count}")


if __name__ == "__main__":
    main()
