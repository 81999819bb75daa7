#!/usr/bin/env python3
"""Independently re-check a saved certificate.

Reassembles the constraint system from scratch, rebuilds the kernel vector
recorded in the certificate, and confirms that (a) the vector annihilates
every constraint row exactly, (b) its entries match the certified nonzero
pattern, and (c) the recorded rank/kernel accounting is consistent.

Example:
    python3 scripts/recheck_certificate.py certificates/certificate_n3.json
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from gaussgeom.algebra import BasisIndex, basis_indices
from gaussgeom.exact import ZERO, QSqrt2
from gaussgeom.solver import assemble, expected_pattern
from gaussgeom.tensors import basis_dimension, symmetric_triples, triple_positions


def recheck(payload: dict) -> bool:
    n = payload["n"]
    dim = basis_dimension(n)
    triples = symmetric_triples(dim)
    positions = triple_positions(dim)
    label_position = {idx.label(): p for p, idx in enumerate(basis_indices(n))}

    vector = [ZERO] * len(triples)
    for label, text in payload["kernel"].items():
        key = tuple(sorted(label_position[part] for part in label.split("|")))
        vector[positions[key]] = QSqrt2.parse(text)

    ok = True

    def report(name: str, passed: bool, detail: str = "") -> None:
        nonlocal ok
        ok = ok and passed
        suffix = f" ({detail})" if detail else ""
        print(f"  {name}: {'PASS' if passed else 'FAIL'}{suffix}")

    system = assemble(n)
    residuals = system.residuals(vector)
    bad = sum(1 for r in residuals if r)
    report("rows_annihilated", bad == 0, f"{len(residuals)} rows, {bad} nonzero")

    pattern = expected_pattern(n)
    mismatched = [
        p
        for p, triple in enumerate(triples)
        if vector[p] != pattern.get(triple, ZERO)
    ]
    report("pattern_match", not mismatched, f"{len(mismatched)} mismatches")

    report(
        "rank_accounting",
        payload["rank"] + payload["kernel_dim"] == payload["unknowns"],
    )
    report("status_recorded_pass", payload.get("status") == "PASS")
    return ok


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("certificates", nargs="+", type=Path)
    args = parser.parse_args()

    all_ok = True
    for path in args.certificates:
        blob = json.loads(path.read_text(encoding="utf-8"))
        entries = blob if isinstance(blob, list) else [blob]
        for payload in entries:
            print(f"{path} (n={payload['n']}):")
            all_ok = recheck(payload) and all_ok
    print("RECHECK:", "PASS" if all_ok else "FAIL")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
