"""Write the deflection curves of the four figure presets to one directory.

    python3 scripts/reproduce_figures.py --out figures/
"""

import argparse
from pathlib import Path

from dressedwave.cli import deflect_files
from dressedwave.config import FIGURES, load_config
from dressedwave.io import write_all


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="figures")
    args = parser.parse_args()
    for figure in FIGURES:
        cfg = load_config(None, figure)
        files = deflect_files(cfg, stem=f"fig{figure}")
        write_all(files, Path(args.out))
        print(f"fig {figure}: config {cfg.config_tag}, d={cfg.params.d:g}, gt={cfg.params.gt:g} -> "
              f"{', '.join(sorted(files))}")


if __name__ == "__main__":
    main()
