"""Three-valued answers for equality questions that are not always decidable."""

from __future__ import annotations

import enum


class TriBool(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> TriBool:
        return cls.TRUE if value else cls.FALSE

    def __bool__(self) -> bool:
        if self is TriBool.UNKNOWN:
            raise ValueError("cannot coerce TriBool.UNKNOWN to bool")
        return self is TriBool.TRUE

    def __and__(self, other: TriBool) -> TriBool:
        if self is TriBool.FALSE or other is TriBool.FALSE:
            return TriBool.FALSE
        if self is TriBool.TRUE and other is TriBool.TRUE:
            return TriBool.TRUE
        return TriBool.UNKNOWN

    def __or__(self, other: TriBool) -> TriBool:
        if self is TriBool.TRUE or other is TriBool.TRUE:
            return TriBool.TRUE
        if self is TriBool.FALSE and other is TriBool.FALSE:
            return TriBool.FALSE
        return TriBool.UNKNOWN

    def __invert__(self) -> TriBool:
        if self is TriBool.UNKNOWN:
            return self
        return TriBool.FALSE if self is TriBool.TRUE else TriBool.TRUE

    @property
    def known(self) -> bool:
        return self is not TriBool.UNKNOWN


# aliases matching the equality vocabulary
EQUAL = TriBool.TRUE
NOT_EQUAL = TriBool.FALSE
UNKNOWN = TriBool.UNKNOWN
