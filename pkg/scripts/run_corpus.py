"""Decompose every corpus set and report subgroups, promotion indices and checks.

    python3 scripts/run_corpus.py [--radius 12] [--json]
"""
import argparse
import json
import time

from cosetkit import serialize as ser
from cosetkit.corpus import CORPUS
from cosetkit.decompose import check_certificate, decompose
from cosetkit.oracle import Window, compare_on_window
from cosetkit.setalg import carrier_of, to_omega_normal_form


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=12, help="oracle window for the reconstruction check")
    ap.add_argument("--json", action="store_true", help="one JSON object per case")
    args = ap.parse_args()

    failed = 0
    for case in CORPUS:
        t0 = time.perf_counter()
        nf = to_omega_normal_form(case.expr)
        cert = decompose(case.expr)
        res = check_certificate(cert)
        bad = compare_on_window(cert.reconstruction, case.expr, Window(carrier_of(case.expr), args.radius))
        dt = time.perf_counter() - t0
        failed += (not res) or bad is not None
        if args.json:
            print(json.dumps({
                "case": case.name, "pieces": len(nf.pieces), "check": bool(res),
                "oracle_counterexample": None if bad is None else ser.element_to_json(bad),
                "subgroups": [ser.subgroup_to_json(H) for H in cert.subgroups],
                "promotions": cert.promotions, "seconds": round(dt, 4)}, sort_keys=True))
        else:
            subs = "; ".join(f"{H} (index {k})" for H, k in zip(cert.subgroups, cert.promotions))
            status = "ok" if res and bad is None else f"FAILED {res.reason} {bad}"
            print(f"{case.name:28s} pieces={len(nf.pieces):2d} {status:6s} {dt:6.3f}s  {subs}")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
