"""Exception hierarchy shared across the engine.

Domain errors deliberately subclass ValueError so that call sites which
only know the stdlib contract still behave sensibly.
"""


class TutorError(ValueError):
    """Base class for all domain errors raised by this package."""


class ParseError(TutorError):
    """Lexing or parsing failure; carries a character position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class SchemaError(TutorError):
    """A persisted file violates its declared schema."""


class IllegalTransition(TutorError):
    """Session event not legal in the current state."""

    def __init__(self, state: str, event: str):
        self.state = state
        self.event = event
        super().__init__(f"event {event!r} not legal in state {state!r}")
