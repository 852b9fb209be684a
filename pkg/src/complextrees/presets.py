"""Named alphabets and windows, plus the optional JSON config file.

Config layout::

    {"alphabets": {"name": [[re, im], ...]},
     "windows": {"name": [re_min, re_max, im_min, im_max]}}
"""

from __future__ import annotations

import json
import math

from .address import Alphabet
from .unstable import DEFAULT_WINDOW

_S5 = math.sqrt(5.0)

ALPHABETS = {
    "fig0": (0.4 + 0.1j, 0.2 + 0.3j, 0.2 - 0.1j),
    "golden": (
        (-1 + _S5) / 2,
        complex((-2 + _S5) / 2, math.sqrt(5 - 2 * _S5) / 2),
        complex((-2 + _S5) / 2, -math.sqrt(5 - 2 * _S5) / 2),
    ),
    "half": (0.5, complex(0.25, math.sqrt(15.0) / 12), complex(0.25, -math.sqrt(15.0) / 12)),
}

WINDOWS = {
    "default": DEFAULT_WINDOW,
    "half": (0.2, 0.9, -0.3, 0.3),
    "landmarks": (0.6, 0.95, 0.0, 0.3),
}


def load_config(path):
    with open(path) as fh:
        data = json.load(fh)
    alphabets = {
        name: tuple(complex(re, im) for re, im in pairs)
        for name, pairs in data.get("alphabets", {}).items()
    }
    windows = {name: tuple(float(v) for v in w) for name, w in data.get("windows", {}).items()}
    return alphabets, windows


def alphabet_preset(name: str, extra=None) -> Alphabet:
    table = {**ALPHABETS, **(extra or {})}
    if name not in table:
        raise KeyError(f"unknown alphabet {name!r}; known: {', '.join(sorted(table))}")
    return Alphabet(table[name])
