from typing import List


class InadmissibleParameters(ValueError):
    def __init__(self, violated: List[str]):
        self.violated = violated
        super().__init__(f"Parameter set is not admissible, violated: {'; '.join(violated)}")
