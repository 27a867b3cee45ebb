"""
Exception types for the oChroma application.
Every error raised on purpose by the library derives from OChromaError.
"""


class OChromaError(Exception):
    """Base class for all oChroma errors."""


class InputError(OChromaError):
    """The caller supplied a graph, orientation or file that breaks a precondition."""


class DegreeError(InputError):
    """A vertex does not have the required degree."""


class RotationError(InputError):
    """A rotation does not list exactly the darts incident to its vertex."""


class GenusError(InputError):
    """The rotation system does not describe a sphere embedding."""


class ModeError(InputError):
    """An embedded-only operation was called on an abstract graph."""


class DisconnectedError(InputError):
    """The graph is not connected."""


class OrientationError(InputError):
    """An orientation bit or cell partition is not admissible."""


class LoopAnchorError(InputError):
    """The operation is undefined at a vertex carrying a loop."""


class NotOneFactorError(InputError):
    """The edge set is not a perfect matching of the cubic graph."""


class DoubleLoopError(InputError):
    """Smoothing a vertex carrying two loops would leave an empty graph."""


class PreconditionError(InputError):
    """The graph is not a vertex-oriented graph the operation accepts."""


class CompatibilityError(InputError):
    """An automorphism does not respect the rotation system."""


class ValidationError(InputError):
    """A colouring fails its defining conditions."""


class LabelError(InputError):
    """A PD strand label does not occur exactly twice."""


class NonQuadrivalentError(InputError):
    """A PD crossing does not list exactly four strands."""


class UnknownNameError(InputError):
    """No built-in graph or orientation has the requested name."""


class VogError(InputError):
    """A VOG document could not be read; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VogSyntaxError(VogError):
    """A VOG record could not be tokenized."""


class VogSemanticError(VogError):
    """A VOG document is well formed but describes an invalid graph."""


class NotOColourableError(OChromaError):
    """No decomposition of the edge set into o-cycles exists."""


class PatternError(OChromaError):
    """A reduction pattern was detected but its assumptions do not hold."""
