"""Exception hierarchy shared by every module."""


class NoisySortError(Exception):
    pass


class InvalidPair(NoisySortError, ValueError):
    pass


class InvalidElement(NoisySortError, ValueError):
    pass


class InvalidParameter(NoisySortError, ValueError):
    pass


class InvalidTrace(NoisySortError, ValueError):
    pass


class Unsupported(NoisySortError):
    pass


class InsufficientTwoCycles(NoisySortError):
    pass


class BudgetExhausted(NoisySortError):
    """Raised by the oracle when a new pair would exceed its budget.

    ``partial`` is filled in by :func:`noisysort.candidate_sort.sort` with
    the state of the sort at the moment the budget ran out.
    """

    def __init__(self, budget, pair=None):
        super().__init__(f"verification budget of {budget} exhausted at pair {pair}")
        self.budget = budget
        self.pair = pair
        self.partial = None


class ModelViolation(NoisySortError):
    """The input graph cannot be derived from a nu-ambiguous graph."""


class ExperimentAbort(NoisySortError):
    def __init__(self, cell, seed, message="sort output does not match ground truth"):
        super().__init__(f"{message} (cell={cell}, seed={seed})")
        self.cell = cell
        self.seed = seed
