"""Drive the batch runner from Python: a gamma sweep written to CSV."""

import json
import sys
import tempfile
from pathlib import Path

from jitter_energy import cli

config = {
    "command": "sweep-gamma",
    "trials": 200,
    "gamma_grid": [1.0, 1.08, 1.5, 2, 5, 10],
    "jitter": {"kind": "uniform", "length": 10, "amplitude": 0.4, "seed": 2024},
    "coefficients": {"kind": "random-complex", "seed": 7},
}

with tempfile.TemporaryDirectory() as tmp:
    cfg = Path(tmp) / "sweep.json"
    cfg.write_text(json.dumps(config))
    out = Path(tmp) / "sweep.csv"
    code = cli.main(["sweep-gamma", "--config", str(cfg), "--out", str(out)])
    sys.stdout.write(out.read_text())
    print("exit status", code)
