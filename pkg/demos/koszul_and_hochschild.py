"""Walk through the Koszul and Hochschild toolkit on small quiver algebras.

Run with ``python3 demos/koszul_and_hochschild.py``.
"""

from bgtrace import algebra as alg
from bgtrace.algebra import AlgebraMap
from bgtrace.hochschild import compare_models, hochschild_homology
from bgtrace.koszul import is_koszul, koszul_length, quadratic_dual_spaces, verify_kos_acyclic


def main():
    algebras = {
        "path algebra of 1 -> 2 -> 3": alg.path_algebra_An(3),
        "same quiver, composite killed": alg.An_with_zero_relation(),
        "dual numbers": alg.dual_numbers(),
        "k[x]/(x^3)": alg.truncated_polynomial(3),
    }
    for name, A in algebras.items():
        print(f"== {name} (dim {A.dim})")
        rep = verify_kos_acyclic(A, 5)
        print(f"  Koszul complex acyclic through depth 5: {rep.acyclic}")
        if not rep.acyclic:
            cert = is_koszul(A, 4)
            print(f"  first failure in degree {rep.first_failure}; Ext violation {cert.violation}")
            continue
        duals = quadratic_dual_spaces(A, 4)
        print("  dual space dims:", [duals.dim(n) for n in range(5)])
        length, finite = koszul_length(A, cap=6)
        print(f"  dual vanishes beyond {length}" if finite else "  dual never vanishes below 6")
        hh = hochschild_homology(A, min_degree=-3)
        print("  HH dims:", hh.dims)

    A = alg.dual_numbers()
    flip = AlgebraMap.weight_scaling(A, -1)
    print("== dual numbers twisted by x -> -x")
    print("  HH dims:", hochschild_homology(A, f=flip, min_degree=-3).dims)
    print("  bar and resolution models agree:",
          compare_models(A, alg.diagonal_bimodule(A), flip, 3)["agree"])


if __name__ == "__main__":
    main()
