"""Error types and their CLI exit codes"""

from typing import Optional


class FcnetError(Exception):
    """Base class for every error fcnet reports to the user"""

    exit_code = 1


class ConfigError(FcnetError, ValueError):
    """Invalid configuration, flags or parameters"""

    exit_code = 2


class DataError(FcnetError, ValueError):
    """Input data that cannot be parsed or analysed"""

    exit_code = 3


class ConvergenceError(FcnetError, ArithmeticError):
    """A numeric routine did not converge"""

    exit_code = 4


class PipelineError(FcnetError):
    """A window failed somewhere in the pipeline"""

    def __init__(
        self,
        message: str,
        window_index: int,
        kind: str,
        stage: str,
        exit_code: int = 1,
        manifest_path: Optional[str] = None,
    ):
        super().__init__(message)
        self.window_index = window_index
        self.kind = kind
        self.stage = stage
        self.exit_code = exit_code
        self.manifest_path = manifest_path

    def __str__(self) -> str:
        return (
            f"window {self.window_index} ({self.kind}), stage '{self.stage}': "
            f"{self.args[0]}"
        )


class OutputError(FcnetError):
    """An output file could not be written"""

    def __init__(self, path: str, reason: str):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
