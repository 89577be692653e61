"""Exception hierarchy.

Every domain error derives from :class:`WardError`; the CLI maps these to
exit code 1 and a ``{"error": ...}`` JSON object.
"""


class WardError(Exception):
    """Base class for domain errors."""

    #: short machine-readable name used by the CLI
    code = "WardError"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class ZeroConstantTerm(WardError, ZeroDivisionError):
    code = "ZeroConstantTerm"


class NonzeroInnerConstant(WardError, ValueError):
    code = "NonzeroInnerConstant"


class PrecisionExhausted(WardError, ValueError):
    code = "PrecisionExhausted"


class InvalidH(WardError, ValueError):
    code = "InvalidH"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        out = super().to_json()
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class NotContractive(WardError, ValueError):
    code = "NotContractive"


class NotNonExpansive(WardError, ValueError):
    code = "NotNonExpansive"


class RootsDontFactor(WardError, ValueError):
    code = "RootsDontFactor"


class InvalidParameter(WardError, ValueError):
    code = "InvalidParameter"


class PochhammerPole(WardError, ZeroDivisionError):
    code = "PochhammerPole"

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index

    def to_json(self):
        out = super().to_json()
        if self.index is not None:
            out["index"] = self.index
        return out
