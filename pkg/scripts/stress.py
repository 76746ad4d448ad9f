"""Random decompositions cross-checked against the brute-force oracle.

    python3 scripts/stress.py --count 200 --carrier dinf2 --seed 1
"""
import argparse
import random
import time

from cosetkit.corpus import D1, D2, Z2, Z3
from cosetkit.decompose import check_certificate, decompose
from cosetkit.generators import ExprConfig, random_expr
from cosetkit.oracle import Window, compare_on_window
from cosetkit.setalg import is_empty, to_omega_normal_form

CARRIERS = {"z2": Z2, "z3": Z3, "dinf1": D1, "dinf2": D2}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--carrier", choices=sorted(CARRIERS), default="z2")
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--radius", type=int, default=6)
    args = ap.parse_args()

    c = CARRIERS[args.carrier]
    cfg = ExprConfig(max_depth=args.depth, max_atoms=4, max_subgroups=4)
    rng = random.Random(args.seed)
    worst, failures, done = 0.0, 0, 0
    t_all = time.perf_counter()
    for i in range(args.count):
        expr = random_expr(rng, c, cfg)
        w = Window(c, args.radius)
        if compare_on_window(expr, to_omega_normal_form(expr).to_expr(), w) is not None:
            failures += 1
            print(f"#{i}: normal form disagrees with the oracle")
        if is_empty(expr):
            continue
        t0 = time.perf_counter()
        cert = decompose(expr)
        res = check_certificate(cert)
        worst = max(worst, time.perf_counter() - t0)
        done += 1
        if not res or compare_on_window(cert.reconstruction, expr, w) is not None:
            failures += 1
            print(f"#{i}: certificate problem: {res.reason}")
    print(f"{args.count} expressions, {done} decomposed, {failures} failures, "
          f"slowest {worst:.3f}s, total {time.perf_counter() - t_all:.1f}s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
