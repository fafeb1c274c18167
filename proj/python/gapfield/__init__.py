"""Gradient fields of eccentric core-shell and nearly touching disk conductors."""

import csv
import io

from ._gapfield import *  # noqa: F401,F403
from ._gapfield import ConfigError, DomainError, RegimeError  # noqa: F401


def read_csv(text):
    """Split command output into (metadata dict, header, rows of strings)."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, sep, value = line[2:].partition(" = ")
            if sep:
                meta[key] = value
        else:
            body.append(line)
    rows = list(csv.reader(io.StringIO("\n".join(body))))
    return meta, rows[0], rows[1:]
