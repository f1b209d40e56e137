"""Exception hierarchy.

Every domain failure raised by the package derives from :class:`Str0dError`
so the CLI can map it to exit code 1 in one place.
"""


class Str0dError(Exception):
    """Base class for domain errors."""


class InvalidPoset(Str0dError):
    pass


class NotLattice(Str0dError):
    def __init__(self, x, y, kind):
        self.pair = (x, y)
        self.kind = kind
        super().__init__(f"elements {x!r} and {y!r} have no {kind}")


class NotDistributive(Str0dError):
    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(
            f"{x!r} ^ ({y!r} v {z!r}) != ({x!r} ^ {y!r}) v ({x!r} ^ {z!r})"
        )


class NotHomomorphism(Str0dError):
    def __init__(self, law, args):
        self.law = law
        self.args_ = args
        super().__init__(f"{law} not preserved at {args!r}")


class InvalidCongruence(Str0dError):
    pass


class BoundExceeded(Str0dError):
    pass


class PartNotSubframe(Str0dError):
    pass


class PartsDoNotGenerate(Str0dError):
    pass


class NotBiframeHom(Str0dError):
    pass


class NotStr0d(Str0dError):
    pass


class NotDense(Str0dError):
    pass


class NotT0(Str0dError):
    pass


class InvalidSpace(Str0dError):
    pass


class InvalidDiagram(Str0dError):
    pass


# The following must never fire; each one signals a broken theorem check.


class ConditionDisagreement(Str0dError):
    pass


class TheoremViolation(Str0dError):
    pass


class RemarkViolation(Str0dError):
    pass


class UniversalPropertyViolation(Str0dError):
    pass
