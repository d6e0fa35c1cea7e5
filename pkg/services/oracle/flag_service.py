"""
Brute-force point counts of cell intersections for type A.

A complete flag in F_p^n is stored by canonical rows v_1, ..., v_{n-1} with
F_i = span(v_1, ..., v_i): row i has a leading 1 in its pivot column, zeros in
all earlier columns and in the pivot columns of previous rows. Each flag has
exactly one such representative, and enumerating pivot orders with free entries
visits every flag once.

Orientation: C_w = {F : relpos(E, F) = w} and C^v = {F : relpos(E^op, F) = v w0},
with E the standard and E^op the opposite coordinate flag, which gives
|C^v cap C_v| = 1 and |C^e cap C_s| = p - 1.
"""

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy
import sympy

from config import constants
from services.coxeter.cartan import Matrix
from services.coxeter.weyl_group_service import GroupElement, WeylGroup
from services.extensions.polynomial import Q, IntPolynomial
from services.oracle.finite_field import PrimeField

logger = logging.getLogger(__name__)

PairCounts = Dict[Tuple[GroupElement, GroupElement], int]


class OracleError(Exception):
    """Base class for flag oracle errors."""
    pass


class BudgetExceeded(OracleError):
    """
    Raised when the number of flags to enumerate is above the budget.

    Attributes:
        predicted: Exact number of flags the enumeration would visit.
        budget: The budget in force.
    """
    def __init__(self, predicted: int, budget: int):
        super().__init__(f"Enumeration needs {predicted} flags, above the budget of {budget}")
        self.predicted = predicted
        self.budget = budget


class TypeUnsupported(OracleError):
    """Raised for groups that are not a single type A_n."""
    pass


class DimensionUnsupported(OracleError):
    """Raised for a flag dimension outside the supported range."""
    pass


class InsufficientPoints(OracleError):
    """Raised when fewer primes than degree + 1 are given for interpolation."""
    pass


class NonIntegralInterpolation(OracleError):
    """Raised when the interpolated polynomial has a non-integer coefficient."""
    pass


@dataclass(frozen=True)
class FlagOverFq:
    """
    A complete flag in F_p^n.

    Attributes:
        n: Ambient dimension.
        p: Field size.
        rows: The n - 1 canonical rows; F_i is spanned by the first i of them.
    """
    n: int
    p: int
    rows: Tuple[Tuple[int, ...], ...]

    def subspace(self, i: int) -> numpy.ndarray:
        """Basis of F_i as an i x n array (F_n is the whole space)."""
        if i >= self.n:
            return numpy.eye(self.n, dtype=numpy.int64)
        return numpy.array(self.rows[:i], dtype=numpy.int64).reshape(i, self.n)

    @property
    def steps(self) -> Tuple[numpy.ndarray, ...]:
        """Row-reduced bases of F_1, ..., F_{n-1}."""
        field = PrimeField(self.p)
        return tuple(field.row_reduce(self.subspace(i)) for i in range(1, self.n))


def flag_count(n: int, p: int) -> int:
    """Number of complete flags in F_p^n: prod_{k=1}^{n} (p^k - 1) / (p - 1)."""
    return math.prod((p**k - 1) // (p - 1) for k in range(1, n + 1))


def standard_flag(n: int, p: int) -> FlagOverFq:
    rows = tuple(tuple(1 if c == r else 0 for c in range(n)) for r in range(n - 1))
    return FlagOverFq(n=n, p=p, rows=rows)


def opposite_flag(n: int, p: int) -> FlagOverFq:
    rows = tuple(tuple(1 if c == n - 1 - r else 0 for c in range(n)) for r in range(n - 1))
    return FlagOverFq(n=n, p=p, rows=rows)


class FlagService:
    """
    Enumerates flags over small prime fields and counts cell intersections.

    Attributes:
        budget: Largest number of flags a single enumeration may visit.
        threads: Worker count for sharded tallies.
    """
    def __init__(self, budget: Optional[int] = None, threads: Optional[int] = None):
        """
        Initializes the FlagService.

        Args:
            budget: Override for constants.FLAG_BUDGET.
            threads: Override for constants.DEFAULT_THREADS.
        """
        self.budget = budget if budget is not None else constants.FLAG_BUDGET
        self.threads = threads if threads is not None else constants.DEFAULT_THREADS
        self._tallies: Dict[Tuple[Matrix, int], PairCounts] = {}

    def check_dimension(self, n: int, field: PrimeField) -> int:
        """
        Validates n against the supported range and the budget.

        Returns:
            The predicted flag count.

        Raises:
            DimensionUnsupported: If n is outside the supported range.
            BudgetExceeded: If the flag count is above the budget.
        """
        if not constants.MIN_FLAG_DIMENSION <= n <= constants.MAX_FLAG_DIMENSION:
            raise DimensionUnsupported(
                f"Flag dimension {n} outside {constants.MIN_FLAG_DIMENSION}..{constants.MAX_FLAG_DIMENSION}"
            )
        predicted = flag_count(n, field.p)
        if predicted > self.budget:
            raise BudgetExceeded(predicted, self.budget)
        return predicted

    def enumerate_flags(self, n: int, field: PrimeField, first_pivot: Optional[int] = None) -> Iterator[FlagOverFq]:
        """
        Streams every complete flag of F_p^n once.

        Args:
            n: Ambient dimension.
            field: The prime field.
            first_pivot: Restrict to flags whose line F_1 has this pivot column (a shard).

        Yields:
            Canonical FlagOverFq values.

        Raises:
            DimensionUnsupported: If n is outside the supported range.
            BudgetExceeded: If the flag count is above the budget.
        """
        self.check_dimension(n, field)
        p = field.p
        for order in itertools.permutations(range(n), n - 1):
            if first_pivot is not None and order[0] != first_pivot:
                continue
            slots = []
            for i, pivot in enumerate(order):
                used = set(order[:i])
                slots.append([c for c in range(pivot + 1, n) if c not in used])
            free = sum(len(s) for s in slots)
            for values in itertools.product(range(p), repeat=free):
                it = iter(values)
                rows = []
                for pivot, columns in zip(order, slots):
                    row = [0] * n
                    row[pivot] = 1
                    for c in columns:
                        row[c] = next(it)
                    rows.append(tuple(row))
                yield FlagOverFq(n=n, p=p, rows=tuple(rows))

    def relative_position(self, group: WeylGroup, F: FlagOverFq, G: FlagOverFq) -> GroupElement:
        """
        The permutation u with dim(F_i cap G_j) = #{k <= i : u(k) <= j}, as an element of A_{n-1}.

        Args:
            group: The Weyl group of type A_{n-1}.
            F: First flag.
            G: Second flag, same n and p.

        Returns:
            The relative position as a group element.
        """
        n, field = F.n, PrimeField(F.p)
        dims = [[0] * (n + 1) for _ in range(n + 1)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == n or j == n:
                    dims[i][j] = min(i, j)
                    continue
                stacked = numpy.vstack([F.subspace(i), G.subspace(j)])
                dims[i][j] = i + j - field.rank(stacked)
        perm = []
        for i in range(1, n + 1):
            perm.append(next(j for j in range(1, n + 1) if dims[i][j] - dims[i - 1][j] == 1))
        return group.from_permutation(perm)

    def _require_type_a(self, group: WeylGroup) -> int:
        if not group.system.datum.is_type_a():
            raise TypeUnsupported(f"Flag counting needs type A, not {group.label}")
        return group.rank + 1

    def _tally_shard(self, group: WeylGroup, field: PrimeField, first_pivot: int) -> Counter:
        n = group.rank + 1
        w0 = group.longest_element()
        std, opp = standard_flag(n, field.p), opposite_flag(n, field.p)
        counts: Counter = Counter()
        for flag in self.enumerate_flags(n, field, first_pivot):
            w = self.relative_position(group, std, flag)
            v = group.multiply(self.relative_position(group, opp, flag), w0)
            counts[(v, w)] += 1
        return counts

    def richardson_counts(self, group: WeylGroup, field: PrimeField) -> PairCounts:
        """
        Counts |C^v cap C_w (F_p)| for all pairs in one pass over the flags.

        Args:
            group: A single type A_{n-1} Weyl group.
            field: The prime field.

        Returns:
            Map from (v, w) to the number of flags; absent pairs count 0.

        Raises:
            TypeUnsupported: For groups other than a single A_n.
            BudgetExceeded: If the flag count is above the budget.
        """
        n = self._require_type_a(group)
        key = (group.system.datum.matrix, field.p)
        cached = self._tallies.get(key)
        if cached is not None:
            return cached
        predicted = self.check_dimension(n, field)
        shards = range(n)
        if self.threads <= 1:
            parts = [self._tally_shard(group, field, s) for s in shards]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts = list(pool.map(lambda s: self._tally_shard(group, field, s), shards))
        total: Counter = Counter()
        for part in parts:
            total.update(part)
        logger.debug("Tallied %d flags of F_%d^%d into %d cells", predicted, field.p, n, len(total))
        result = dict(total)
        self._tallies[key] = result
        return result

    def count_richardson(self, group: WeylGroup, v: GroupElement, w: GroupElement, field: PrimeField) -> int:
        """
        Number of F_p-points of C^v cap C_w.

        Raises:
            TypeUnsupported: For groups other than a single A_n.
        """
        return self.richardson_counts(group, field).get((v, w), 0)

    def interpolate_r(
        self,
        group: WeylGroup,
        v: GroupElement,
        w: GroupElement,
        fields: Sequence[PrimeField],
    ) -> IntPolynomial:
        """
        Recovers the point-count polynomial from counts at several primes.

        The intersection has dimension l(w) - l(v), so l(w) - l(v) + 1 distinct
        primes determine the polynomial; the interpolant through all given
        points is returned.

        Args:
            group: A single type A Weyl group.
            v: Opposite-cell index.
            w: Cell index.
            fields: Prime fields to count over.

        Returns:
            The interpolating polynomial.

        Raises:
            InsufficientPoints: If there are too few distinct primes.
            NonIntegralInterpolation: If the interpolant is not integral.
        """
        primes = sorted({f.p for f in fields})
        degree = max(group.length(w) - group.length(v), 0)
        if len(primes) < degree + 1:
            raise InsufficientPoints(f"Need {degree + 1} distinct primes for degree {degree}, got {len(primes)}")
        points = [(p, self.count_richardson(group, v, w, PrimeField(p))) for p in primes]
        expr = sympy.interpolate(points, Q) if len(points) > 1 else sympy.Integer(points[0][1])
        try:
            return IntPolynomial.from_sympy(expr)
        except ValueError as e:
            raise NonIntegralInterpolation(str(e))

    def all_flags(self, n: int, field: PrimeField) -> List[FlagOverFq]:
        return list(self.enumerate_flags(n, field))
