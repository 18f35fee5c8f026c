# Copyright 2026 The ptim-bounds Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""PTIM entanglement-transition simulator and bound estimators."""

import csv
import io

from ._ptim import (
    default_epsilon_grid,
    default_p_grid,
    find_crossing,
    level_crossing,
    make_shadow,
    mwpm,
    point_seed,
    regularize,
    sample,
    scan,
    shadow_entropy,
)

__all__ = [
    "default_epsilon_grid",
    "default_p_grid",
    "find_crossing",
    "level_crossing",
    "make_shadow",
    "mwpm",
    "parse_scan_csv",
    "point_seed",
    "regularize",
    "sample",
    "scan",
    "scan_rows",
    "shadow_entropy",
]

_INT_FIELDS = ("L", "T", "n_samples", "seed")
_FLOAT_FIELDS = ("p", "eta", "mean", "stderr")


def parse_scan_csv(text):
    """Rows of an aggregate CSV as dicts with numeric fields converted."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        for key in _INT_FIELDS:
            row[key] = int(row[key])
        for key in _FLOAT_FIELDS:
            row[key] = float(row[key])
        row["epsilon"] = float(row["epsilon"]) if row["epsilon"] else None
        rows.append(row)
    return rows


def scan_rows(*args, **kwargs):
    """Like scan(), returning parsed rows."""
    return parse_scan_csv(scan(*args, **kwargs))
