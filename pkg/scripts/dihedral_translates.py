"""Left and right translates on the infinite dihedral group.

On an abelian carrier every right translate is a left translate, so witness
expressions can be rewritten with left translates only.  On Dinf^1 the right
translate of the two-point set R = {e, (0;-)} by (1;+) is not a left translate
of R.  It is still a left coset, of the conjugate subgroup, which is why its
own decomposition needs only a left translate.  A larger set on Dinf^2 gets
witnesses that use right translates as well.
"""
from cosetkit.corpus import CORPUS, D1, R0, at, d
from cosetkit.decompose import decompose
from cosetkit.oracle import Window, window_set
from cosetkit.setalg import LTranslate, RTranslate, sets_equal


def show(label, expr):
    pts = ", ".join(str(g) for g in window_set(expr, Window(D1, 3)))
    print(f"{label:24s} {{{pts}}}")


def main():
    base = at(R0)
    right = RTranslate(base, d(1))
    show("R", base)
    show("R.(1;+)", right)
    lefts = [d(v, s) for v in range(-4, 5) for s in (1, -1)]
    hits = [g for g in lefts if sets_equal(LTranslate(g, base), right)]
    print(f"left translates equal to R.(1;+) among {len(lefts)} candidates: {len(hits)}")

    cert = decompose(right)
    for H, W in zip(cert.subgroups, cert.witnesses):
        print(f"subgroup {H} from witness {W}")

    case = next(c for c in CORPUS if c.name == "dinf2_axis_with_reflection")
    print(f"\nY = {case.expr}")
    cert = decompose(case.expr)
    for H, W in zip(cert.subgroups, cert.witnesses):
        kind = "two-sided" if "RTranslate" in repr(W) else "left only"
        print(f"subgroup {H} from {kind} witness {W}")


if __name__ == "__main__":
    main()
