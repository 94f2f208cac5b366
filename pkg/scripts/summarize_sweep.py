#!/usr/bin/env python3
"""Collapse a sweep CSV to per-n medians for plotting.

Usage: summarize_sweep.py sweep.csv > medians.csv
"""

import csv
import sys
from collections import defaultdict
from statistics import median


def main():
    if len(sys.argv) != 2:
        sys.exit("usage: summarize_sweep.py <sweep.csv>")
    samples = defaultdict(list)
    with open(sys.argv[1]) as fh:
        for row in csv.DictReader(fh):
            samples[int(row["n"])].append(int(row["samples"]))
    print("n,median_samples")
    for n in sorted(samples):
        print(f"{n},{median(samples[n])}")


if __name__ == "__main__":
    main()
