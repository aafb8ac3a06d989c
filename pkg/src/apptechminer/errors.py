"""Exception hierarchy.

``DataError`` subclasses signal bad input data (CLI exit code 2);
``ConfigError`` subclasses signal bad parameters or usage (exit code 1).
"""


class AppTechMinerError(Exception):
    pass


class DataError(AppTechMinerError):
    pass


class ConfigError(AppTechMinerError):
    pass


class FileUnreadable(DataError):
    def __init__(self, path, reason=""):
        self.path = str(path)
        super().__init__(f"cannot read {self.path}" + (f": {reason}" if reason else ""))


class MalformedRecord(DataError):
    def __init__(self, line, detail):
        self.line = line
        self.detail = detail
        super().__init__(f"line {line}: {detail}")


class DuplicateId(DataError):
    def __init__(self, paper_id, line=None):
        self.paper_id = paper_id
        self.line = line
        super().__init__(f"duplicate paper id {paper_id!r}" + (f" at line {line}" if line else ""))


class InvalidRange(ConfigError):
    pass


class MissingThreshold(ConfigError):
    pass


class InvalidLambda(ConfigError):
    pass


class NoModels(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class UnknownArea(DataError):
    def __init__(self, area):
        self.area = area
        super().__init__(f"unknown area {area!r}")


class UnknownTechnique(DataError):
    def __init__(self, technique):
        self.technique = technique
        super().__init__(f"unknown technique {technique!r}")


class SchemaVersionMismatch(DataError):
    pass


class EmptyRanking(DataError):
    pass


class EmptyGold(DataError):
    pass


class NoOverlap(DataError):
    pass


class DegenerateChanceAgreement(DataError):
    pass


class InfeasibleConfig(ConfigError):
    pass
