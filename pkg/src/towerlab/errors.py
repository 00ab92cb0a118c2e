"""Exception hierarchy shared by all towerlab modules."""


class TowerlabError(Exception):
    """Base class for every error raised by this package."""


class NotSquarefree(TowerlabError):
    """A radicand carries a square factor."""


class UndefinedQuarticSymbol(TowerlabError):
    """Quartic residue symbol requested outside its domain of definition."""


class PeriodGuardExceeded(TowerlabError):
    """Continued-fraction period guard tripped; indicates an internal bug."""


class NormMinusOne(TowerlabError):
    """Integral Pell coordinates requested for a unit of norm -1."""


class UnexpectedSquareClass(TowerlabError):
    """A squarefree part escaped the expected prime support; arithmetic bug."""


class InvalidDiscriminant(TowerlabError):
    """Argument is not a valid (fundamental / non-square) discriminant."""


class RemarkInapplicable(TowerlabError):
    """Narrow-to-wide splitting needs a prime factor congruent to 3 mod 4."""


class NoRepresentation(TowerlabError):
    """No (e, d) representation found; input violates the congruence contract."""


class ConventionMismatch(TowerlabError):
    """Sign-flip invariance of the Kaplan symbol failed; normalization is off."""


class NoDeltaSetForCase2(TowerlabError):
    """Case 2 carries no unit-index lemma and therefore no delta set."""


class DeltaNotInLemmaSet(TowerlabError):
    """Computed square class of x+-1 falls outside the case's delta set."""


class LemmaSubcaseMissing(TowerlabError):
    """Unit-index inputs match no lemma sub-case."""


class UnclassifiableProfile(TowerlabError):
    """Symbol profile matched no case; the dispatch should be total."""


class NonIntegralClassNumber(TowerlabError):
    """Class-number formula produced a non-integer; upstream inconsistency."""


class CriteriaInputMissing(TowerlabError):
    """A verdict criterion needs a symbol that is undefined for this triple."""


class InvalidTriple(TowerlabError):
    """(p1, p2, q) violates the primality / congruence / distinctness contract."""


class FixtureMismatch(TowerlabError):
    """A recomputed fixture column disagrees with the stored reference value."""


class OracleUnavailable(TowerlabError):
    """No external oracle command configured; checks are skipped."""


class OracleParseError(TowerlabError):
    """External oracle output did not parse as elementary divisors."""


class OracleMismatch(TowerlabError):
    """External oracle disagrees with a computed class-group invariant."""
