"""Exception hierarchy shared by every stage of the pipeline."""


class InfodemicError(Exception):
    """Base class for all errors raised by this package."""


class CorpusError(InfodemicError):
    pass


class MissingField(CorpusError):
    pass


class UnknownLabel(CorpusError):
    pass


class DuplicateId(CorpusError):
    pass


class EmptyCorpus(CorpusError):
    pass


class VectorizerError(InfodemicError):
    pass


class EmptyVocabulary(VectorizerError):
    pass


class UnfittedVectorizer(VectorizerError):
    pass


class ModelError(InfodemicError):
    pass


class EmptyTrainingSet(ModelError):
    pass


class DimensionMismatch(ModelError):
    pass


class NonFiniteLoss(ModelError):
    pass


class EmptyModel(ModelError):
    pass


class KExceedsTrainingSize(ModelError):
    pass


class EvaluationError(InfodemicError):
    pass


class InsufficientClassMembers(EvaluationError):
    pass


class EmptyConfusion(EvaluationError):
    pass


class ConfigError(InfodemicError):
    pass
