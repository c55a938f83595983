"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An exact computation ran past its configured work budget.

    Raised instead of returning a heuristic or truncated answer: every
    consumer that sees a result may treat it as exact.
    """

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: work budget of {budget} exceeded")
        self.what = what
        self.budget = budget
