from gf.exceptions import ToolkitError


class DependentGenerators(ToolkitError):
    code = 'DEPENDENT_GENERATORS'


class RankTooLarge(ToolkitError):
    code = 'RANK_TOO_LARGE'


class GcdViolation(ToolkitError):
    code = 'GCD_VIOLATION'


class NormConditionViolation(ToolkitError):
    code = 'NORM_CONDITION_VIOLATION'
