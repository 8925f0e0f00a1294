from gf.exceptions import ToolkitError


class NonExactDivision(ToolkitError):
    code = 'NON_EXACT_DIVISION'


class PointNotOnCurve(ToolkitError):
    code = 'POINT_NOT_ON_CURVE'


class ClosedFormMismatch(ToolkitError):
    code = 'CLOSED_FORM_MISMATCH'


class NoLambdaFound(ToolkitError):
    code = 'NO_LAMBDA_FOUND'


class UnclassifiedCone(ToolkitError):
    code = 'UNCLASSIFIED_CONE'


class AxisIsTangent(ToolkitError):
    code = 'AXIS_IS_TANGENT'


class ChainBudgetExceeded(ToolkitError):
    code = 'CHAIN_BUDGET_EXCEEDED'


class UnresolvedSingularity(ToolkitError):
    code = 'UNRESOLVED_SINGULARITY'


class InvalidInstance(ToolkitError):
    code = 'INVALID_INSTANCE'
