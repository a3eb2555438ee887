import json
import logging
import sys

import pytest

from config.logging_config import SolverProgressFilter, setup_console_run_logging


@pytest.fixture
def root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield root
    for handler in root.handlers:
        handler.close()
    root.handlers = handlers
    root.setLevel(level)


def test_console_handler_writes_to_stderr(tmp_path, root_logger):
    path = setup_console_run_logging(str(tmp_path / "logs"))
    console = [h for h in root_logger.handlers if type(h) is logging.StreamHandler]
    assert len(console) == 1
    assert console[0].stream is sys.stderr
    logging.getLogger("cylinder.system").info("steady state done")
    assert "steady state done" in open(path, encoding="utf-8").read()


def test_json_lines_in_log_file(tmp_path, root_logger):
    path = setup_console_run_logging(str(tmp_path), level="DEBUG", json_lines=True)
    logging.getLogger("profiles.picard").debug("picard it=3")
    for handler in root_logger.handlers:
        handler.flush()
    record = json.loads(open(path, encoding="utf-8").read().splitlines()[-1])
    assert record["logger_name"] == "profiles.picard"
    assert record["level"] == "DEBUG"


def test_solver_debug_kept_off_console():
    quiet = logging.LogRecord("solvers.newton", logging.DEBUG, __file__, 1, "newton it=1", None, None)
    other = logging.LogRecord("cli.main", logging.DEBUG, __file__, 1, "args", None, None)
    assert not SolverProgressFilter().filter(quiet)
    assert SolverProgressFilter().filter(other)
