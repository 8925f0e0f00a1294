from gf.exceptions import ToolkitError


class SpecParse(ToolkitError):
    code = 'SPEC_PARSE'


class IoFailure(ToolkitError):
    code = 'IO_FAILURE'


class CheckpointMismatch(ToolkitError):
    code = 'CHECKPOINT_MISMATCH'


class ReportSchemaViolation(ToolkitError):
    code = 'REPORT_SCHEMA'
