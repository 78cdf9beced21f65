"""Exception hierarchy. Every error is a ``ValueError`` so callers can catch broadly."""


class JetCertError(ValueError):
    """Base class for all errors raised by jetcert."""


class PreconditionError(JetCertError):
    pass


class DomainError(JetCertError):
    """Integration bounds fall outside the domain of a piecewise density."""


class UnsupportedDegreeError(JetCertError):
    pass


class OutOfRangeError(JetCertError):
    pass


class ResourceError(JetCertError):
    """A brute-force enumeration was asked to go past its guard."""


class DegenerateCandidateError(JetCertError):
    pass


class OutOfScopeError(JetCertError):
    """The candidate or dimension lies outside what the certifier handles."""


class InadmissibleModeError(JetCertError):
    pass
