from typing import List


class ConvergenceFailure(Exception):
    def __init__(self, message: str, trace: List[complex]):
        self.trace = trace
        super().__init__(f"{message} (last iterates: {trace[-3:]})")


class ZeroCountMismatch(Exception):
    pass
