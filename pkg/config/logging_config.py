import logging
import os
import json
import sys

from config.config import LOG_DIR


class JsonFormatter(logging.Formatter):
    def format(self, record):
        log_object = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger_name": record.name,
        }
        if record.exc_info:
            log_object['exc_info'] = self.formatException(record.exc_info)
        return json.dumps(log_object, ensure_ascii=False)


class SolverProgressFilter(logging.Filter):
    """Пропускает в консоль только итоговые сообщения решателей, без поитерационного DEBUG."""

    def filter(self, record):
        return record.levelno >= logging.INFO or not record.name.startswith(("profiles", "cylinder", "dirac", "solvers"))


def setup_console_run_logging(log_dir: str = LOG_DIR, level: str = "INFO", json_lines: bool = False) -> str:
    """
    Настраивает логирование одного запуска CLI: файл logs/fraclab_run.log + stderr.

    Args:
        log_dir: каталог для лог-файла
        level: уровень корневого логгера
        json_lines: писать строки в JSON (JsonFormatter)

    Returns:
        Путь к лог-файлу
    """
    os.makedirs(log_dir, exist_ok=True)
    log_path = os.path.join(log_dir, 'fraclab_run.log')
    numeric_level = getattr(logging, level.upper(), logging.INFO)
    if json_lines:
        formatter = JsonFormatter()
    else:
        formatter = logging.Formatter('[%(asctime)s] [%(levelname)s] %(message)s')
    file_handler = logging.FileHandler(log_path, mode='w', encoding='utf-8')
    file_handler.setLevel(numeric_level)
    file_handler.setFormatter(formatter)
    # stdout занят JSON-выводом команд, поэтому консольные логи идут в stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(SolverProgressFilter())
    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    root_logger.handlers = []
    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)
    return log_path
