class StiffnessError(Exception):
    def __init__(self, x: float, message: str):
        self.x = x
        super().__init__(f"Integration stalled at x={x}: {message}")
