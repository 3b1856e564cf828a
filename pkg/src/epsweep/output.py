"""Deterministic serialization and all-or-nothing output directories."""
from __future__ import annotations

import json
import os
import shutil
import tempfile
from contextlib import contextmanager
from pathlib import Path

TRAJECTORY_COLUMNS = ("a", "state", "Re_E", "Im_E", "r_re", "r_im", "c_norm_ok")


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def trajectory_rows(traj):
    """Rows in grid-major, state-minor order."""
    a = traj.a
    for k in range(len(a)):
        for i in range(traj.n_states):
            e = traj.values[k, i]
            r = traj.rigidity[k, i]
            yield (float(a[k]), i, e.real, e.imag, r.real, r.imag, bool(traj.c_norm_ok[k, i]))


def trajectory_csv(traj) -> str:
    lines = [",".join(TRAJECTORY_COLUMNS)]
    for a, i, re, im, rr, ri, ok in trajectory_rows(traj):
        lines.append(",".join((fmt_float(a), str(i), fmt_float(re), fmt_float(im),
                               fmt_float(rr), fmt_float(ri), "true" if ok else "false")))
    return "\n".join(lines) + "\n"


def trajectory_json(traj) -> str:
    rows = [dict(zip(TRAJECTORY_COLUMNS, row)) for row in trajectory_rows(traj)]
    return dumps(rows)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


@contextmanager
def staged_outputs(out_dir):
    """Collect files in a staging directory and move them into place on success.

    Yields a dict ``{filename: text}`` to fill.  If the block raises, nothing
    is written to ``out_dir``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: dict[str, str] = {}
    yield files
    stage = Path(tempfile.mkdtemp(prefix=".staging-", dir=out))
    try:
        for name, text in files.items():
            (stage / name).write_text(text)
        for name in files:
            os.replace(stage / name, out / name)
    finally:
        shutil.rmtree(stage, ignore_errors=True)
