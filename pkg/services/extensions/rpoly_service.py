import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from services.coxeter.weyl_group_service import GroupElement, WeylGroup
from services.extensions.ext_service import Row, fill_pairs
from services.extensions.memo import PairMemo
from services.extensions.polynomial import ONE, Q_MINUS_ONE, Q_POLY, ZERO, IntPolynomial

logger = logging.getLogger(__name__)

# R-polynomial per pair
RMemo = PairMemo[IntPolynomial]


class RPolyService:
    """
    R-polynomials as point counts of C^v cap C_w over a field with q elements.

    With s the smallest right descent of w, the cell intersection decomposes as
    - vs < v: isomorphic to C^{vs} cap C_{ws}, so R_{v,w} = R_{vs,ws}
    - vs > v, vs not <= ws: C^v cap C_{ws} times C*, so R_{v,w} = (q-1) R_{v,ws}
    - vs > v, vs <= ws: a closed (C^{vs} cap C_{ws}) x C with open complement
      (C^v cap C_{ws}) x C*, so R_{v,w} = q R_{vs,ws} + (q-1) R_{v,ws}

    Attributes:
        group: The Weyl group.
        memo: Write-once table of computed polynomials.
    """
    def __init__(self, group: WeylGroup, memo: Optional[RMemo] = None):
        self.group = group
        self.memo = memo if memo is not None else PairMemo()

    def r_polynomial(self, v: GroupElement, w: GroupElement) -> IntPolynomial:
        """
        Computes R_{v,w}.

        Args:
            v: Opposite-cell index.
            w: Cell index.

        Returns:
            0 if v is not <= w, 1 if v == w, otherwise the recursive point count.
        """
        if not self.group.bruhat_leq(v, w):
            return ZERO
        if v == w:
            return ONE
        cached = self.memo.get(v, w)
        if cached is not None:
            return cached
        value = self.r_polynomial_via(v, w, self.group.first_right_descent(w))
        return self.memo.store(v, w, value)

    def r_polynomial_via(self, v: GroupElement, w: GroupElement, i: int) -> IntPolynomial:
        """
        Applies the decomposition once along the right descent s_i of w.

        Raises:
            ValueError: If i is not a right descent of w.
        """
        group = self.group
        if not group.right_descent(w, i):
            raise ValueError(f"s_{i + 1} is not a right descent of w")
        if not group.bruhat_leq(v, w):
            return ZERO
        if v == w:
            return ONE
        ws = group.mult_simple_right(w, i)
        vs = group.mult_simple_right(v, i)
        if group.right_descent(v, i):
            return self.r_polynomial(vs, ws)
        if not group.bruhat_leq(vs, ws):
            return Q_MINUS_ONE * self.r_polynomial(v, ws)
        return Q_POLY * self.r_polynomial(vs, ws) + Q_MINUS_ONE * self.r_polynomial(v, ws)

    def r_table(self, threads: int = 1) -> List[Row]:
        rows = fill_pairs(self.group, self.r_polynomial, threads)
        logger.debug("R table for %s: %d rows, memo size %d", self.group.label, len(rows), len(self.memo))
        return rows

    def r_lookup(self, threads: int = 1) -> Dict[Tuple[GroupElement, GroupElement], IntPolynomial]:
        return {(v, w): value for v, w, value in self.r_table(threads)}


@lru_cache(maxsize=None)
def rpoly_service_for(group: WeylGroup) -> RPolyService:
    """Shared RPolyService per group instance."""
    return RPolyService(group)
