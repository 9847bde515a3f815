#!/usr/bin/env python3
"""Plot absolute error against N from an `ihalton experiment` CSV."""

import argparse
import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def error_table(path):
    # The file may hold several '#'-headed tables; keep the one with abs_error.
    with open(path) as f:
        blocks = f.read().split("\n\n")
    for block in blocks:
        body = "\n".join(l for l in block.splitlines() if l and not l.startswith("#"))
        if body.startswith("sequence,") and "abs_error" in body.splitlines()[0]:
            return pd.read_csv(io.StringIO(body))
    raise SystemExit(f"{path}: no error table found")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", default="errors.png")
    args = ap.parse_args()

    df = error_table(args.csv)
    fig, ax = plt.subplots(figsize=(6, 4))
    for seq, g in df.groupby("sequence", sort=False):
        ax.loglog(g["N"], g["abs_error"], marker="o", label=seq)
    first = df.iloc[0]
    ax.set_title(f"{first['function']} ({first['params']}), d={first['d']}")
    ax.set_xlabel("N")
    ax.set_ylabel("absolute error")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
