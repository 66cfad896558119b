"""Regenerate the golden CSV tables in tests/golden/.

Each golden is cross-checked against the matrix-power oracle before being
written, so a regression in the analytic pipeline cannot silently refresh
the goldens with bad values.
"""

import pathlib
import sys

import numpy as np

from skipfree import build_law, parse_chain, pmf_by_matrix_power, pmf_table
from skipfree.cli import emit_table

REPO = pathlib.Path(__file__).resolve().parents[1]

GOLDENS = {
    "d1_geometric_pmf.csv": "d1_geometric.json",
    "d2_mixed_pmf.csv": "d2_mixed.json",
}


def main():
    out_dir = REPO / "tests" / "golden"
    out_dir.mkdir(parents=True, exist_ok=True)
    for golden_name, chain_name in GOLDENS.items():
        chain = parse_chain((REPO / "chains" / chain_name).read_text())
        table = pmf_table(build_law(chain))
        oracle = pmf_by_matrix_power(chain, len(table.support))
        gap = np.max(
            np.abs(np.asarray(table.mass_or_density) - np.asarray(oracle.mass_or_density))
        )
        if gap > 1e-12:
            sys.exit(f"{chain_name}: analytic/oracle gap {gap:.3e}; refusing to write golden")
        path = out_dir / golden_name
        path.write_text(emit_table(table, "csv") + "\n")
        print(f"wrote {path} ({len(table.support)} rows, oracle gap {gap:.2e})")


if __name__ == "__main__":
    main()
