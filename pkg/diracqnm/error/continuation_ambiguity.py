class ContinuationAmbiguity(Exception):
    def __init__(self, first: complex, second: complex, step: int):
        self.candidates = (first, second)
        self.step = step
        super().__init__(
            f"Eigenvalue continuation is ambiguous at step {step}: candidates {first} and {second} "
            "are closer than the collision tolerance"
        )
