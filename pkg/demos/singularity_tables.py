"""Singular points for the seven small non-abelian groups, as LaTeX tables.

Each table lists, for every singular closed point, the prime p, the factor
f(x) of Phi_n mod p, the embedding dimension and the two tangent-space
dimensions.  Pass ``--text`` for plain columns.

    python3 demos/singularity_tables.py [--text]
"""

import sys

from greenring.cli import main

GROUPS = ["S3", "D8", "A4", "D16", "S4", "A5", "A6"]

fmt = "text" if "--text" in sys.argv[1:] else "latex"
for name in GROUPS:
    print(f"% {name}" if fmt == "latex" else f"== {name}")
    main(["analyze", "--group", name, "--format", fmt])
    print()
