import time
from datetime import datetime, timezone
from typing import Any, Dict, List

from pydantic import BaseModel, Field

from cli.output import write_json
from config.config import TOOL_VERSION

MANIFEST_NAME = "manifest.json"


class RunManifest(BaseModel):
    """
    Всё, что нужно для повторения запуска: команда, параметры, допуски, сетки.
    Время запуска хранится только здесь, не в файлах данных.
    """
    command: str
    params: Dict[str, Any] = Field(default_factory=dict)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    grids: Dict[str, int] = Field(default_factory=dict)
    version: str = TOOL_VERSION
    started_at: str
    wall_clock_seconds: float = 0.0
    outputs: List[str] = Field(default_factory=list)


class ManifestRecorder:
    """Замеряет время команды и записывает манифест рядом с её выходами."""

    def __init__(self, command: str, params: Dict[str, Any]):
        self.command = command
        self.params = params
        self.started_at = datetime.now(timezone.utc).isoformat()
        self._t0 = time.perf_counter()

    def finish(self, out_dir: str, outputs: List[str], tolerances: Dict[str, float] = None,
               grids: Dict[str, int] = None) -> RunManifest:
        manifest = RunManifest(
            command=self.command, params=self.params, tolerances=tolerances or {}, grids=grids or {},
            started_at=self.started_at, wall_clock_seconds=time.perf_counter() - self._t0,
            outputs=sorted(outputs),
        )
        write_json(manifest, out_dir, MANIFEST_NAME)
        return manifest
