"""Exception families used across the engine.

Each family carries a distinct CLI exit code so scripted callers can
dispatch on failures without parsing messages.
"""


class EngineError(Exception):
    exit_code = 1


class ParseError(EngineError):
    """Malformed rational, class, point, or config syntax."""

    exit_code = 2


class ZeroRank(EngineError):
    """Mumford slope (or a slope window) asked of a rank-zero class."""

    exit_code = 3


class RequiresPicardRankOne(EngineError):
    """Operation only meaningful when the Picard group is generated by H."""

    exit_code = 4


class PreconditionViolated(EngineError):
    """Input outside an operation's stated domain."""

    exit_code = 5


class UnsupportedTarget(EngineError):
    """No closed-form bound or shape analysis for this target class."""

    exit_code = 6


class InfiniteFamily(EngineError):
    """A search window is unbounded; refusing to truncate silently."""

    exit_code = 7
