import sys

from loguru import logger

LOG_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {extra[command]} | {message}"

logger.configure(extra={"command": "-"})


def configure_logging(level: str = "WARNING", sink=sys.stderr) -> None:
    """Replace loguru's default handler with a single stderr sink"""
    logger.remove()
    logger.add(sink, level=level.upper(), format=LOG_FORMAT)


def command_logger(name: str):
    """Logger handed to command nodes as ``workflow_logger``"""
    return logger.bind(command=name)


__all__ = ["logger", "configure_logging", "command_logger"]
