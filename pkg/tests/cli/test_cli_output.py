import json
import math

import numpy as np
import pandas as pd
import pytest

from cli.manifest import ManifestRecorder, RunManifest
from cli.output import dumps_json, to_jsonable, write_csv
from config.config import TOOL_VERSION, load_run_config
from params.models import Regime


def test_non_finite_values_become_null():
    data = to_jsonable({"a": math.nan, "b": np.array([1.0, np.inf]), "c": np.float64(2.5), "d": np.int64(3)})
    assert data == {"a": None, "b": [1.0, None], "c": 2.5, "d": 3}


def test_json_keys_sorted_and_enums_plain():
    text = dumps_json({"z": 1, "a": Regime.UNIQUE_PROFILE_LE})
    assert text.index('"a"') < text.index('"z"')
    assert json.loads(text)["a"] == "UniqueProfileLE"


def test_csv_round_trip_format(tmp_path):
    path = write_csv(pd.DataFrame({"x": [0.1, 1.0 / 3.0]}), str(tmp_path), "x.csv")
    raw = open(path, "rb").read()
    assert raw == b"x\n0.10000000000000001\n0.33333333333333331\n"
    assert float(raw.split(b"\n")[2]) == 1.0 / 3.0


def test_manifest_written_next_to_outputs(tmp_path):
    recorder = ManifestRecorder("dirac", {"k": 1.0})
    manifest = recorder.finish(str(tmp_path), ["b.csv", "a.json"], tolerances={"tol": 1e-10}, grids={"grid": 40})
    assert isinstance(manifest, RunManifest)
    stored = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
    assert stored["outputs"] == ["a.json", "b.csv"]
    assert stored["version"] == TOOL_VERSION
    assert stored["grids"] == {"grid": 40}
    assert stored["wall_clock_seconds"] >= 0.0


def test_load_run_config(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("# пример\nN = 3\nP-VALUES = 3.5 4\n", encoding="utf-8")
    assert load_run_config(str(path)) == {"n": "3", "p_values": "3.5 4"}
    assert load_run_config(None) == {}
    with pytest.raises(FileNotFoundError):
        load_run_config(str(tmp_path / "missing.env"))
