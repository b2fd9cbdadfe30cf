"""
Dispatcher creation and factory functionality
"""

import logging
from collections.abc import Callable
from typing import Any

from .types import DispatcherOptions, DispatchLogger

logger = logging.getLogger(__name__)

Dispatcher = Callable[[str, dict[str, Any]], int]


def create_dispatcher(options: DispatcherOptions) -> Dispatcher:
    """
    Creates a dispatcher that routes a command name to its handler with error logging
    """
    program = options.program_info.name
    handlers = options.handlers
    known = {command.name for command in options.commands}

    missing = known - set(handlers)
    if missing:
        raise ValueError(f"Commands without handlers: {sorted(missing)}")

    def dispatch(name: str, arguments: dict[str, Any]) -> int:
        if name not in known:
            raise ValueError(f"Unknown command: {name}")
        handler = handlers[name]
        try:
            return handler(arguments)
        except Exception as error:
            logger.error(f"[{program}] Error in {name}: {error}")
            raise

    return dispatch


def describe_commands(options: DispatcherOptions) -> list[dict[str, str]]:
    """Command names and descriptions in registration order, for help output"""
    return [
        {"name": command.name, "description": command.description}
        for command in options.commands
    ]


class DispatcherFactory:
    """
    Standard dispatcher factory with common setup
    """

    def __init__(self, logger: DispatchLogger | None = None):
        self.logger = logger

    def create(self, options: DispatcherOptions) -> Dispatcher:
        """Create a dispatcher with the given options"""
        if self.logger:
            info = options.program_info
            self.logger.info(f"Creating dispatcher: {info.name} v{info.version}")

        return create_dispatcher(options)
