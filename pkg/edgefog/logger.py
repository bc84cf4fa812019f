import sys
from datetime import datetime
from typing import Optional

from loguru import logger as _logger

from edgefog.config import PROJECT_ROOT, config


_print_level = "INFO"


def define_log_level(
    print_level: str = "INFO",
    logfile_level: Optional[str] = None,
    name: Optional[str] = None,
):
    """Adjust the log level to above level"""
    global _print_level
    _print_level = print_level

    _logger.remove()
    _logger.add(sys.stderr, level=print_level)

    if logfile_level:
        formatted_date = datetime.now().strftime("%Y%m%d%H%M%S")
        log_name = f"{name}_{formatted_date}" if name else formatted_date
        _logger.add(PROJECT_ROOT / f"logs/{log_name}.log", level=logfile_level)
    return _logger


logger = define_log_level(config.logging.level, config.logging.logfile_level)
