"""Exception hierarchy.

Every error carries a ``witness`` (possibly ``None``) so reports can print the
offending element, pair or triple.
"""
from __future__ import annotations


class TrifactError(Exception):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message or type(self).__name__)
        self.witness = witness

    @property
    def kind(self) -> str:
        return type(self).__name__


class ValidationError(TrifactError):
    """Aggregate of every violation found while certifying an object."""

    def __init__(self, violations, message: str = ""):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        text = message or "; ".join(str(v) for v in self.violations)
        super().__init__(text, witness=first.witness if first else None)


class InvalidGroup(ValidationError):
    pass


class InvalidBrace(ValidationError):
    pass


class InvalidTrifact(ValidationError):
    pass


# group axioms
class NonAssociative(TrifactError):
    pass


class NoIdentity(TrifactError):
    pass


class NoInverse(TrifactError):
    pass


class NotClosed(TrifactError):
    pass


# subgroup calculus and maps
class IndexOutOfRange(TrifactError):
    pass


class DifferentParent(TrifactError):
    pass


class NotASubgroup(TrifactError):
    pass


class NotNormal(TrifactError):
    pass


class NotHomomorphism(TrifactError):
    pass


class ActionNotAutomorphism(TrifactError):
    pass


class ActionNotHomomorphism(TrifactError):
    pass


class SearchBoundExceeded(TrifactError):
    pass


# braces
class AddNotGroup(TrifactError):
    pass


class MulNotGroup(TrifactError):
    pass


class BraceLawViolated(TrifactError):
    pass


class IdentityMismatch(TrifactError):
    pass


class NotAdditiveHom(TrifactError):
    pass


class NotMultiplicativeHom(TrifactError):
    pass


class NotAnIdeal(TrifactError):
    pass


class NotASubbrace(TrifactError):
    pass


# trifactorised groups
class KNotNormal(TrifactError):
    pass


class FactorisationFails(TrifactError):
    pass


class IntersectionNontrivial(TrifactError):
    pass


class KernelNotInKerLambda(TrifactError):
    pass


class ContainmentFails(TrifactError):
    pass


class ObstructionWitness(TrifactError):
    pass


class NotSubsetOfK(TrifactError):
    pass


class NotSubsetOfH(TrifactError):
    pass


class NotAdmissible(TrifactError):
    pass


class NotContainedInE(TrifactError):
    pass


class KernelsNotNested(TrifactError):
    pass


# files
class FormatError(TrifactError):
    """Malformed or unreadable input file."""
