"""Exception types shared across the library.

Validation errors (bad inputs, violated preconditions) and budget errors
(enumerations that would exceed their configured limits) are kept in
separate branches so callers can map them to distinct exit codes.
"""


class AsPathsError(Exception):
    """Base class for all library errors."""


class ValidationError(AsPathsError):
    """Bad input or a violated precondition."""


class NonPositiveWeight(ValidationError):
    """An edge weight was zero or negative; all weights must be > 0."""


class DuplicateEdge(ValidationError):
    """The same edge (or its mirror, for undirected graphs) appeared twice."""


class InvalidEdge(ValidationError):
    """An edge referenced a malformed or out-of-range node id."""


class DegenerateQuery(ValidationError):
    """A path query with source == target."""


class GuardViolation(ValidationError):
    """A brute-force oracle was invoked on an instance above its size guard."""


class PreconditionViolated(ValidationError):
    """A formula was evaluated outside its stated domain."""


class InadmissibleSequence(ValidationError):
    """An expected-degree sequence with max(d)^2 > sum(d)."""


class InfeasibleConfig(ValidationError):
    """A configuration whose constraints contradict each other."""


class TargetUnreachable(AsPathsError):
    """The degree-sequence search cannot reach the requested moment ratio."""


class EmptyCollection(ValidationError):
    """An operation that needs at least one sample received none."""


class InsufficientPairs(AsPathsError):
    """Not enough qualifying node pairs could be sampled from the graph."""


class BudgetError(AsPathsError):
    """Base class for enumeration budget overruns; partial results are discarded."""


class PathBudgetExceeded(BudgetError):
    """Too many output path nodes.

    Attributes:
        paths: number of paths found before the budget tripped.
        path_nodes: aggregate node count over those paths.
        limit: the configured budget.
    """

    def __init__(self, paths, path_nodes, limit):
        self.paths = paths
        self.path_nodes = path_nodes
        self.limit = limit
        super().__init__(
            f"path budget exceeded: {path_nodes} output path nodes over "
            f"{paths} paths (limit {limit})"
        )


class TreeBudgetExceeded(BudgetError):
    """The search tree grew past its node limit.

    Attributes:
        tree_nodes: nodes allocated before the budget tripped.
        limit: the configured budget.
    """

    def __init__(self, tree_nodes, limit):
        self.tree_nodes = tree_nodes
        self.limit = limit
        super().__init__(f"tree budget exceeded: {tree_nodes} nodes (limit {limit})")
