"""Tabulate the shipped step paths on the five-point lattice and draw the
2-paths as SVG files."""
import argparse
from pathlib import Path

from dinfty import corpus
from dinfty.steppath import (StepPath2, base_points, check_continuity, homotopic, path_svg,
                             product_r, restrict, to_zigzag)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--svg-dir", type=Path, help="write one SVG per 2-path here")
    args = ap.parse_args()

    paths = corpus.lattice_paths()
    print(f"{'name':<10} {'dim':<4} {'continuous':<11} faces / zigzag")
    for name, p in paths.items():
        ok = "yes" if check_continuity(p) else "NO"
        if isinstance(p, StepPath2):
            b = base_points(p)
            faces = f"{b[0]} ⇒ {b[1]}; t1=0: {to_zigzag(restrict(p, 1, 0)).points}"
            print(f"{name:<10} {'2':<4} {ok:<11} {faces}")
        else:
            print(f"{name:<10} {'1':<4} {ok:<11} {' → '.join(map(str, to_zigzag(p).points))}")

    print()
    for r, stem in ((0, "p"), (1, "q")):
        prod = product_r(paths[f"{stem}[0=>1]"], paths[f"{stem}[1=>2]"], r)
        verdict = homotopic(prod, paths[f"{stem}[0=>2]"])
        print(f"{stem}[0=>1] ∗{r} {stem}[1=>2]  =h  {stem}[0=>2]: {verdict}")

    if args.svg_dir:
        args.svg_dir.mkdir(parents=True, exist_ok=True)
        for name, p in paths.items():
            if isinstance(p, StepPath2):
                out = args.svg_dir / (name.replace("=>", "-").strip("[]").replace("[", "_") + ".svg")
                out.write_text(path_svg(p))
                print(f"wrote {out}")


if __name__ == "__main__":
    main()
