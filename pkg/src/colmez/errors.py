"""Exception hierarchy.

Every error raised on bad input derives from :class:`ColmezError`, which is a
``ValueError`` so callers that only care about "invalid input" can catch that.
"""


class ColmezError(ValueError):
    pass


# field construction / group arithmetic
class BadModulus(ColmezError):
    pass


class BadGenerator(ColmezError):
    pass


class NotCM(ColmezError):
    pass


class ForeignElement(ColmezError):
    pass


class ZeroElement(ColmezError):
    pass


# CM types
class InvalidType(ColmezError):
    pass


class TooLarge(ColmezError):
    pass


class NotNearby(ColmezError):
    pass


class NotInType(ColmezError):
    pass


class ConjugatePair(InvalidType):
    pass


class EqualPlaces(InvalidType):
    pass


# conductors / discriminants
class IndexDivisible(ColmezError):
    pass


class NonMonogenic(ColmezError):
    pass


# L-functions
class TrivialCharacter(ColmezError):
    pass


class EvenCharacter(ColmezError):
    pass


class EvenCharacterZero(EvenCharacter):
    pass


class NotCMZero(ColmezError):
    pass


class DomainError(ColmezError):
    pass


class BadPrime(ColmezError):
    pass
