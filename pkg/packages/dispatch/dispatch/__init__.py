"""
dispatch - command registry for fockfn front ends

Maps command names to handlers that return exit statuses, with uniform
error logging.
"""

from .dispatcher import (
    Dispatcher,
    DispatcherFactory,
    create_dispatcher,
    describe_commands,
)
from .types import (
    CommandHandler,
    CommandHandlers,
    CommandSpec,
    DispatcherOptions,
    DispatchLogger,
    ProgramInfo,
)

__all__ = [
    "create_dispatcher",
    "describe_commands",
    "Dispatcher",
    "DispatcherFactory",
    "ProgramInfo",
    "CommandSpec",
    "CommandHandler",
    "CommandHandlers",
    "DispatcherOptions",
    "DispatchLogger",
]
