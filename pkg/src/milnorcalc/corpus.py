"""Bundled example scenes.

Each entry is a plain dict in the scene-file schema, so the same data
can be dumped to ``scenes/*.json`` and loaded back through
``scenefile.scene_from_dict``.  Euler characteristics were worked out
by hand from the classical topology:

* smooth plane curves of degree d have chi = 3d - d^2,
* the nodal cubic is a sphere with two points glued (chi 1) and the
  cuspidal cubic is homeomorphic to its normalization (chi 2),
* the four-nodal quartic is two conics glued at four points
  (chi 2 + 2 - 4 = 0),
* a quartic surface with one A1 node has chi 24 - 1 = 23,
* the rank-two quadric is two planes glued along a line
  (chi 3 + 3 - 2 = 4), with vanishing-cycle value -1 along the line
  because the Milnor fiber of xy in C^3 has chi 0.
"""

from __future__ import annotations

import json
import os

from .scenefile import scene_from_dict

SMOOTH_CONIC = {
    "name": "smooth-conic",
    "ambient": [2],
    "degrees": [[2]],
    "smooth": True,
    "strata": [
        {"id": "curve", "dim": 1, "chi_c": 2, "closure_chi": 2},
    ],
}

SMOOTH_CUBIC_CURVE = {
    "name": "smooth-cubic-curve",
    "ambient": [2],
    "degrees": [[3]],
    "polynomial": "x^3 + y^3 + z^3",
    "chart": "z",
    "strata": [
        {"id": "curve", "dim": 1, "chi_c": 0, "closure_chi": 0},
    ],
}

SMOOTH_QUARTIC_CURVE = {
    "name": "smooth-quartic-curve",
    "ambient": [2],
    "degrees": [[4]],
    "smooth": True,
    "strata": [
        {"id": "curve", "dim": 1, "chi_c": -4, "closure_chi": -4},
    ],
}

FERMAT_QUARTIC_SURFACE = {
    "name": "fermat-quartic-surface",
    "ambient": [3],
    "degrees": [[4]],
    "polynomial": "x^4 + y^4 + z^4 + w^4",
    "chart": "w",
    "strata": [
        {"id": "surface", "dim": 2, "chi_c": 24, "closure_chi": 24},
    ],
}

NODAL_CUBIC = {
    "name": "nodal-cubic",
    "ambient": [2],
    "degrees": [[3]],
    "polynomial": "y^2*z - x^3 - x^2*z",
    "chart": "z",
    "strata": [
        {"id": "smooth_part", "dim": 1, "chi_c": 0, "closure_chi": 1},
        {"id": "node", "dim": 0, "chi_c": 1, "closure_chi": 1, "parents": ["smooth_part"]},
    ],
}

CUSPIDAL_CUBIC = {
    "name": "cuspidal-cubic",
    "ambient": [2],
    "degrees": [[3]],
    "polynomial": "y^2*z - x^3",
    "chart": "z",
    "strata": [
        {"id": "smooth_part", "dim": 1, "chi_c": 1, "closure_chi": 2},
        {"id": "cusp", "dim": 0, "chi_c": 1, "closure_chi": 1, "parents": ["smooth_part"]},
    ],
}

# (x^2 + y^2 - 2z^2)(x^2 + 2y^2 - 3z^2), expanded: two conics through
# the four rational points (+-1, +-1, 1).
FOUR_NODAL_QUARTIC = {
    "name": "four-nodal-quartic",
    "ambient": [2],
    "degrees": [[4]],
    "polynomial": "x^4 + 3*x^2*y^2 - 5*x^2*z^2 + 2*y^4 - 7*y^2*z^2 + 6*z^4",
    "chart": "z",
    "strata": [
        {"id": "smooth_part", "dim": 1, "chi_c": -4, "closure_chi": 0},
        {"id": "nodes", "dim": 0, "chi_c": 4, "closure_chi": 4, "parents": ["smooth_part"]},
    ],
}

# w^2(x^2 + y^2 + z^2) + x^4 + y^4 + z^4: an A1 node at the origin of
# the w-chart and no other singular points.
ONE_NODAL_QUARTIC_SURFACE = {
    "name": "one-nodal-quartic-surface",
    "ambient": [3],
    "degrees": [[4]],
    "polynomial": "w^2*x^2 + w^2*y^2 + w^2*z^2 + x^4 + y^4 + z^4",
    "chart": "w",
    "strata": [
        {"id": "smooth_part", "dim": 2, "chi_c": 22, "closure_chi": 23},
        {"id": "node", "dim": 0, "chi_c": 1, "closure_chi": 1, "parents": ["smooth_part"]},
    ],
}

REDUCIBLE_QUADRIC_SURFACE = {
    "name": "reducible-quadric-surface",
    "ambient": [3],
    "degrees": [[2]],
    "strata": [
        {"id": "smooth_part", "dim": 2, "chi_c": 2, "closure_chi": 4},
        {
            "id": "singular_line",
            "dim": 1,
            "chi_c": 2,
            "closure_chi": 2,
            "csm": {"2": 1, "3": 2},
            "parents": ["smooth_part"],
        },
    ],
    "mu": {"singular_line": -1},
}

CORPUS = {
    "smooth-conic": SMOOTH_CONIC,
    "smooth-cubic-curve": SMOOTH_CUBIC_CURVE,
    "smooth-quartic-curve": SMOOTH_QUARTIC_CURVE,
    "fermat-quartic-surface": FERMAT_QUARTIC_SURFACE,
    "nodal-cubic": NODAL_CUBIC,
    "cuspidal-cubic": CUSPIDAL_CUBIC,
    "four-nodal-quartic": FOUR_NODAL_QUARTIC,
    "one-nodal-quartic-surface": ONE_NODAL_QUARTIC_SURFACE,
    "reducible-quadric-surface": REDUCIBLE_QUADRIC_SURFACE,
}


def load_corpus_scene(name: str):
    """Validated (scene, mu) pair for a bundled scene name."""
    return scene_from_dict(CORPUS[name])


def write_scene_files(directory: str) -> list[str]:
    """Dump every bundled scene to ``directory`` as pretty JSON."""
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, data in sorted(CORPUS.items()):
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2)
            handle.write("\n")
        written.append(path)
    return written
