"""
Result files

CSV files are written to a temporary file in the target directory and moved
into place with os.replace(), so an interrupted run never leaves a partial
file under the final name. Each run also gets a JSON manifest.

"""

import csv
import datetime
import json
import os
import tempfile
from typing import Iterable, Sequence

from pyErfSparse.experiments.spec import TrialRecord

NOISY_HEADER = ("m", "method", "mse_mean", "mse_std", "time_mean_s", "time_std_s")

SCHEMAS = {
    "success_rate.csv": ("F", "sigma", "sparsity", "method", "trials", "successes", "rate"),
    "sigma_sweep.csv": ("F", "sigma", "sparsity", "trials", "successes", "rate"),
    "superres.csv": ("fc", "msf", "method", "trials", "successes", "rate"),
    "noisy.csv": NOISY_HEADER,
    "noisy_table.csv": NOISY_HEADER,
    "trials.csv": TrialRecord.HEADER,
    "prox_table.csv": ("v", "prox"),
}


def _atomic_write(path, write):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as f:
            write(f)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a header row and data rows atomically."""

    def write(f):
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r)

    _atomic_write(path, write)


def write_rows(path, rows) -> None:
    """Write dict rows using the schema registered for the file name."""
    header = SCHEMAS[os.path.basename(path)]
    write_csv(path, header, ([r[k] for k in header] for r in rows))


def write_json(path, obj) -> None:
    def write(f):
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")

    _atomic_write(path, write)


def read_csv(path):
    """Read a CSV written by this module as a list of dicts (string values)."""
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def manifest(version, spec, files, **extra) -> dict:
    out = {
        "version": version,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "kind": spec.kind.value,
        "seed": spec.seed,
        "spec": spec.to_dict(),
        "files": sorted(files),
    }
    out.update(extra)
    return out
