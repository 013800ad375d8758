"""Local computations for the non-planar quadruple point (xz + yz + z^3, xy).

Prints T^1 with its grading, the versal family, the plane model, the
triple-point stratum under both sign conventions, and certifies a sample.
"""
import argparse
from fractions import Fraction

from triplepoint.deform import grading_table, normalize_quadruple, paper_germ, t1_grading
from triplepoint.parser import parse_polynomial
from triplepoint.versal import (
    SignMode,
    classify_plane_singularity,
    eliminate_to_plane,
    tangent_cone,
    triple_point_stratum,
    versal_family,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a4", type=Fraction, default=Fraction(2), help="sample value of a4")
    args = ap.parse_args()

    f = paper_germ()
    g = t1_grading(f)
    dw = g.degrees_weights
    print(f"germ: ({', '.join(map(str, f.f))}), type ({', '.join(map(str, dw.d))}; "
          f"{', '.join(map(str, dw.a.a))})")
    print(f"tau = {g.tau}: {', '.join(g.labels())}")
    for nu, labs in grading_table(g, f.vars):
        print(f"  nu = {nu}: {', '.join(labs)}")
    print(f"alpha = {g.alpha}, threshold = {g.threshold}")

    for extra in ("x^2 - 3*y^2 + x*y*z", "z^2"):
        p = parse_polynomial(f"x*z + y*z + z^3 + {extra}", f.vars)
        verdict, res = normalize_quadruple(p)
        print(f"p = {p}: {verdict} (nu = {res.valuation})")

    fam = versal_family(f)
    print("versal family:")
    for e in fam.equations:
        print(f"  {e} = 0")
    for sign in SignMode:
        plane = eliminate_to_plane(fam, sign)
        st = triple_point_stratum(fam, sign)
        print(f"[{sign.value}] plane model: {plane}")
        print(f"[{sign.value}] stratum: {st.describe()}, b1 != 0")
        b1 = args.a4 ** 2 / 4 * (1 if sign is SignMode.PAPER else -1)
        point = dict.fromkeys(fam.parameters, 0)
        point.update(a4=args.a4, b1=b1)
        F = plane.substitute({k: v for k, v in point.items() if k in plane.vars}).embed(("y", "z"))
        wit = st.witness_at(point)
        cls = classify_plane_singularity(F, wit)
        cone = tangent_cone(F, wit)
        print(f"[{sign.value}] a4 = {args.a4}, b1 = {b1}: {cls} at (y, z) = ({wit['y']}, {wit['z']}), "
              f"tangent cone {cone.form} ({cone.distinct_lines} lines)")


if __name__ == "__main__":
    main()
