#!/usr/bin/env python
"""Script to write a seeded random filtration as a JSON filtration document."""
from __future__ import annotations

import argparse
import random
from pathlib import Path

from gpd.utils.random_instances import random_filtration


def main() -> None:
    parser = argparse.ArgumentParser(description="Generate a random simplicial filtration")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max_vertices", type=int, default=6)
    parser.add_argument("--max_steps", type=int, default=6)
    parser.add_argument("--max_dimension", type=int, default=2)
    parser.add_argument("--connected", action="store_true")
    parser.add_argument("--output", type=Path, default=None)
    args = parser.parse_args()

    filtration = random_filtration(
        random.Random(args.seed),
        max_vertices=args.max_vertices,
        max_steps=args.max_steps,
        max_dimension=args.max_dimension,
        connected=args.connected,
    )
    document = filtration.to_document()
    if args.output is not None:
        args.output.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
        print(f"Wrote {args.output}")
    print(document.model_dump_json(indent=2))


if __name__ == "__main__":
    main()
