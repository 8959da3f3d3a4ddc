import logging
import sys
from pathlib import Path
from typing import Optional, Union

FORMATTER = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

LIBRARY_LOGGER = 'bvalue'

_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
}


def get_console_handler():
    # stdout is reserved for reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(FORMATTER)
    return console_handler


def get_file_handler(filename):
    file_handler = logging.FileHandler(filename)
    file_handler.setFormatter(FORMATTER)
    return file_handler


def get_logger(
        logger_name: str = LIBRARY_LOGGER,
        level: str = 'warning',
        log_dir: Optional[Union[str, Path]] = None,
) -> logging.Logger:
    """
    Configures and returns the named logger.

    Library modules log through children of the ``bvalue`` logger, so configuring
    ``get_logger('bvalue', ...)`` once is enough for a whole CLI invocation.

    Args:
        logger_name: Name of the logger.
        level: One of ``'debug'``, ``'info'`` or ``'warning'``.
        log_dir: Optional directory, a ``<logger_name>.log`` file is written there as well.
    Returns:
        The configured logger.
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(_LEVELS.get(level.lower(), logging.INFO))

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    logger.addHandler(get_console_handler())

    if log_dir is not None:
        log_dir = Path(log_dir)
        if not log_dir.is_dir():
            Path.mkdir(log_dir, parents=True)
        log_file_path = Path(log_dir / f'{logger_name}.log')
        logger.addHandler(get_file_handler(log_file_path))

    logger.propagate = False

    logger.debug('-------- New invocation --------')
    return logger
