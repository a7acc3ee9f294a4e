"""Scan the standard model zoo over the default k grid and summarise flagged rows.

    python3 scripts/run_zoo_scan.py --out zoo_scan.csv --workers 4
"""

import argparse
import collections

from gtwlab.scan import emit_report, parse_config, run_scan, write_report
from gtwlab.zoo import K_GRID, scan_config_dict


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=None, help="CSV path; omitted means no file is written")
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    result = run_scan(parse_config(scan_config_dict(list(K_GRID))), workers=args.workers)
    if args.out:
        write_report(result, args.format, args.out)
    print(f"{len(result.rows)} rows, {len(emit_report(result))} CSV bytes")

    by_kind = collections.Counter(r.kind for r in result.rows if r.discrepancy_flag)
    print("flagged rows per kind:", dict(by_kind) or "none")
    for row in result.rows:
        if row.discrepancy_flag:
            print(f"  {row.kind:<12} r={row.r!s:<22} k={row.k:<5g} skew={row.skew_residual:.6g}  {row.branch_annotation}")
    lo_sym = min(r.sym_residual for r in result.rows if r.sym_residual is not None)
    lo_van = min(r.vanish_residual for r in result.rows if r.vanish_residual is not None)
    print(f"smallest sym residual {lo_sym:.6g}, smallest vanish residual {lo_van:.6g}")


if __name__ == "__main__":
    main()
