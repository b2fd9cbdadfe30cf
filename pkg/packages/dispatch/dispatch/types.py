"""
Type definitions for command dispatch
"""

from collections.abc import Callable
from typing import Any, Protocol

from pydantic import BaseModel


class ProgramInfo(BaseModel):
    """Name and version of the front end"""

    name: str
    version: str
    description: str | None = None


class CommandSpec(BaseModel):
    """Name and one-line description of a command"""

    name: str
    description: str


# Handlers take validated-ready arguments and return a process exit status
CommandHandler = Callable[[dict[str, Any]], int]

CommandHandlers = dict[str, CommandHandler]


class DispatcherOptions(BaseModel):
    """Options for creating a dispatcher"""

    program_info: ProgramInfo
    commands: list[CommandSpec]
    handlers: CommandHandlers

    class Config:
        arbitrary_types_allowed = True


class DispatchLogger(Protocol):
    """Protocol for logging implementations"""

    def info(self, message: str, *args: Any) -> None:
        """Log info message"""
        ...

