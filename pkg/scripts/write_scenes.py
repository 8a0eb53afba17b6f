#!/usr/bin/env python3
"""Regenerate the scenes/ directory from the bundled corpus."""

import argparse

from milnorcalc.corpus import write_scene_files


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory", nargs="?", default="scenes")
    args = parser.parse_args()
    for path in write_scene_files(args.directory):
        print(path)


if __name__ == "__main__":
    main()
