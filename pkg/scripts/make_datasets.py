#!/usr/bin/env python3
"""Regenerate the CSV files under data/.

iris.csv and wbc30.csv are exported from scikit-learn's bundled copies, so
they can be rebuilt offline.  wbc9.csv (the original 9-attribute Wisconsin
breast cancer table, 699 rows, 16 rows with a missing bare-nuclei value)
is converted from a source file you point at with --wbc9-source.  Two
source formats are auto-detected:

  * the UCI distribution file ``breast-cancer-wisconsin.data``
    (11 comma-separated columns, no header, '?' for missing), or
  * an R export of ``MASS::biopsy`` (header with ID, V1..V9, class).

Usage:
    python scripts/make_datasets.py [--wbc9-source PATH] [--out-dir data]
"""

import argparse
import csv
from pathlib import Path

WBC9_NAMES = [
    "clump_thickness",
    "uniformity_cell_size",
    "uniformity_cell_shape",
    "marginal_adhesion",
    "single_epithelial_cell_size",
    "bare_nuclei",
    "bland_chromatin",
    "normal_nucleoli",
    "mitoses",
]


def write_iris(out_dir: Path) -> None:
    from sklearn.datasets import load_iris

    data = load_iris()
    names = [n.replace(" (cm)", "").replace(" ", "_") for n in data.feature_names]
    with open(out_dir / "iris.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["species"])
        for row, target in zip(data.data, data.target):
            w.writerow([format(v, "g") for v in row] + [data.target_names[target]])
    print("wrote iris.csv (150 rows)")


def write_wbc30(out_dir: Path) -> None:
    from sklearn.datasets import load_breast_cancer

    data = load_breast_cancer()
    names = [n.replace(" ", "_") for n in data.feature_names]
    with open(out_dir / "wbc30.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names + ["diagnosis"])
        for row, target in zip(data.data, data.target):
            label = data.target_names[target]  # 0 -> malignant, 1 -> benign
            w.writerow([repr(float(v)) for v in row] + [label])
    print("wrote wbc30.csv (569 rows)")


def write_wbc9(source: Path, out_dir: Path) -> None:
    rows = []
    with open(source, newline="") as fh:
        first = fh.readline()
        fh.seek(0)
        if "class" in first.lower():  # R biopsy export with header
            for rec in csv.DictReader(fh):
                vals = [rec[f"V{i}"] for i in range(1, 10)]
                vals = ["" if v in ("", "NA") else v for v in vals]
                rows.append(vals + [rec["class"]])
        else:  # UCI .data file: id, 9 attributes, class code 2/4
            for rec in csv.reader(fh):
                if not rec:
                    continue
                vals = ["" if v == "?" else v for v in rec[1:10]]
                label = {"2": "benign", "4": "malignant"}[rec[10]]
                rows.append(vals + [label])
    if len(rows) != 699:
        raise SystemExit(f"expected 699 rows in the WBC-9 source, got {len(rows)}")
    incomplete = sum(1 for r in rows if "" in r[:-1])
    if incomplete != 16:
        raise SystemExit(f"expected 16 incomplete rows, got {incomplete}")
    with open(out_dir / "wbc9.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(WBC9_NAMES + ["class"])
        w.writerows(rows)
    print("wrote wbc9.csv (699 rows, 16 with a missing bare_nuclei cell)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="data", type=Path)
    ap.add_argument("--wbc9-source", type=Path, default=None)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_iris(args.out_dir)
    write_wbc30(args.out_dir)
    if args.wbc9_source:
        write_wbc9(args.wbc9_source, args.out_dir)
    else:
        print("no --wbc9-source given; skipping wbc9.csv")


if __name__ == "__main__":
    main()
