"""Does the weak β verdict change when the tower is truncated one level higher?

For every corpus β-pair, report the lowest level where ⟦M⟧ and ⟦M'⟧ differ,
at N=2 and at N=3 (k=1).  Environments are strided when there are many.
"""
import argparse
import json
import time

from dinfty.acceptance import corpus_beta_pairs
from dinfty.model import weak_beta_soundness
from dinfty.tower import build_tower


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--size-limit", type=int, default=200_000)
    ap.add_argument("--env-limit", type=int, default=200)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    pairs = corpus_beta_pairs()
    table = {}
    for N in args.levels:
        t0 = time.perf_counter()
        tower = build_tower(1, N, args.size_limit)
        rows = weak_beta_soundness(tower, pairs, args.env_limit)
        table[N] = {"sizes": tower.sizes(), "seconds": round(time.perf_counter() - t0, 2), "rows": rows}

    if args.json:
        print(json.dumps(table, ensure_ascii=False, indent=2))
        return
    for N, entry in table.items():
        print(f"N={N}: sizes {entry['sizes']}, {entry['seconds']}s")
    head = " ".join(f"N={N:<4}" for N in table)
    print(f"\n{head}  pair")
    for i, (m, m2) in enumerate(pairs):
        cells = []
        for N in table:
            lvl = table[N]["rows"][i]["first_disagreement"]
            cells.append(f"{'-' if lvl is None else lvl:<6}")
        print(f"{' '.join(cells)}  {m}  ▷  {m2}")
    for N, entry in table.items():
        zero = sum(r["first_disagreement"] == 0 for r in entry["rows"])
        print(f"N={N}: {zero} of {len(pairs)} pairs disagree at level 0")


if __name__ == "__main__":
    main()
