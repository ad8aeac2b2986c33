"""Exception types shared across the package."""


class DynstError(Exception):
    pass


class ParseError(DynstError, ValueError):
    pass


class InvariantError(DynstError, ValueError):
    pass


class DisconnectedError(DynstError):
    pass


class TooManyTerminals(DynstError):
    pass


class DomainError(DynstError, ValueError):
    pass


class CycleError(DynstError):
    pass


class NoSuchEdge(DynstError, KeyError):
    pass


class NotConnected(DynstError):
    pass


class ModeError(DynstError):
    pass


class InactiveColor(DynstError):
    pass


class NoSuchColor(DynstError, KeyError):
    pass


class WrongColorEndpoint(DynstError):
    pass


class NoSuchTreeEdge(DynstError, KeyError):
    pass


class PortalDisconnected(DynstError):
    pass


class NotInTree(DynstError):
    pass


class NotATerminal(DynstError):
    pass


class AlreadyTerminal(DynstError):
    pass


class EmptyTerminalSet(DynstError):
    pass


class EngineError(DynstError):
    pass


class ParamError(DynstError, ValueError):
    pass


class ConfigError(DynstError, ValueError):
    pass


class SequenceError(DynstError, ValueError):
    pass
