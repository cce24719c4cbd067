"""Exception hierarchy shared across the toolkit."""


class CrowdsmellError(Exception):
    """Base class for all toolkit errors."""


# -- project parsing -------------------------------------------------------

class EmptyProjectError(CrowdsmellError):
    """The project root contains no .java files."""


class IoError(CrowdsmellError):
    """A file or directory could not be read or written."""


class UnknownEntityError(CrowdsmellError):
    """A CodeEntityId does not resolve to anything in the project model."""


# -- oracles ----------------------------------------------------------------

class SchemaMismatchError(CrowdsmellError):
    """A classification CSV does not match the expected column layout."""


class BadBooleanError(CrowdsmellError):
    """The is_smell column holds something other than TRUE/FALSE."""


class DuplicateRowWithinTeamError(CrowdsmellError):
    """The same (entity, team) pair appears twice in one source file."""


class MixedSmellKindsError(CrowdsmellError):
    """Datasets of different smell kinds were passed to merge()."""


# -- learners ---------------------------------------------------------------

class DegenerateDataError(CrowdsmellError):
    """The training data cannot fit the requested classifier kind."""


class NonFiniteFeatureError(CrowdsmellError):
    """A feature value is NaN or infinite."""


class FeatureMismatchError(CrowdsmellError):
    """A vector's feature names do not match the model's feature names."""


# -- evaluation -------------------------------------------------------------

class TooFewInstancesError(CrowdsmellError):
    """Fewer instances than folds."""


class SingleClassError(CrowdsmellError):
    """AUC is undefined without both a positive and a negative."""


class FoldError(CrowdsmellError):
    """A learner error raised during cross-validation, tagged with its fold."""

    def __init__(self, fold: int, cause: Exception):
        super().__init__(f"fold {fold}: {cause}")
        self.fold = fold
        self.cause = cause


# -- statistics -------------------------------------------------------------

class TooFewGroupsError(CrowdsmellError):
    """ANOVA needs at least two groups with at least two values each."""


class InvalidDegreesOfFreedomError(CrowdsmellError):
    """Degrees of freedom must be positive integers."""


# -- review service ----------------------------------------------------------

class UnknownCandidateError(CrowdsmellError):
    """No candidate with this id exists in the session."""


class UnknownTeamError(CrowdsmellError):
    """The team has not registered with the session."""


class NothingToExportError(CrowdsmellError):
    """No verdicts exist for the requested smell."""
