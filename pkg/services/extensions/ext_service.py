import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, TypeVar

from services.coxeter.weyl_group_service import GroupElement, WeylGroup
from services.extensions.memo import ExtMemo, PairMemo

logger = logging.getLogger(__name__)

T = TypeVar("T")

Row = Tuple[GroupElement, GroupElement, T]


def fill_pairs(
    group: WeylGroup,
    compute: Callable[[GroupElement, GroupElement], T],
    threads: int = 1,
) -> List[Row]:
    """
    Evaluates a pair function on every Bruhat-comparable pair.

    Rows are split by v and may be filled concurrently; the result is sorted
    by (length, images) of v and then w, so any schedule gives the same list.

    Args:
        group: Ambient Weyl group.
        compute: Function of (v, w).
        threads: Worker count; 1 means inline.

    Returns:
        (v, w, value) rows for all v <= w.
    """
    elements = group.enumerate_group()

    def row(v: GroupElement) -> List[Row]:
        return [(v, w, compute(v, w)) for w in elements if group.bruhat_leq(v, w)]

    if threads <= 1:
        chunks = [row(v) for v in elements]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(row, elements))
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (group.sort_key(r[0]), group.sort_key(r[1])))
    return rows


class ExtService:
    """
    Dimensions of Hom and Ext^1 between Verma modules, indexed by Weyl group elements.

    Ext^1 follows the descent recursion: with s the smallest right descent of w,
    - vs < v: dim Ext^1(v, w) = dim Ext^1(vs, ws)
    - vs > v and vs not <= ws: 1 + dim Ext^1(v, ws)
    - vs > v and vs <= ws: dim Ext^1(v, ws)
    The third condition reads "vs > w" in its printed source; it is implemented
    as "vs > v" so the cases partition the possibilities.

    Attributes:
        group: The Weyl group.
        memo: Write-once table of computed dimensions.
    """
    def __init__(self, group: WeylGroup, memo: Optional[ExtMemo] = None):
        """
        Initializes the ExtService.

        Args:
            group: Ambient Weyl group.
            memo: Memo table; a fresh enabled one by default.
        """
        self.group = group
        self.memo = memo if memo is not None else PairMemo()

    def hom_dim(self, v: GroupElement, w: GroupElement) -> int:
        """1 if v <= w, else 0."""
        return 1 if self.group.bruhat_leq(v, w) else 0

    def ext1_dim(self, v: GroupElement, w: GroupElement) -> int:
        """
        Computes dim Ext^1(Delta_v, Delta_w).

        Args:
            v: Source index.
            w: Target index.

        Returns:
            The dimension; 0 when v is not <= w or v == w.
        """
        if v == w or not self.group.bruhat_leq(v, w):
            return 0
        cached = self.memo.get(v, w)
        if cached is not None:
            return cached
        value = self.ext1_dim_via(v, w, self.group.first_right_descent(w))
        return self.memo.store(v, w, value)

    def ext1_dim_via(self, v: GroupElement, w: GroupElement, i: int) -> int:
        """
        Applies the three-case rule once with s = s_i, recursing canonically below.

        Args:
            v: Source index, v <= w and v != w.
            w: Target index.
            i: A right descent of w (0-based).

        Returns:
            The dimension obtained through descent i.

        Raises:
            ValueError: If i is not a right descent of w.
        """
        group = self.group
        if not group.right_descent(w, i):
            raise ValueError(f"s_{i + 1} is not a right descent of w")
        if v == w or not group.bruhat_leq(v, w):
            return 0
        ws = group.mult_simple_right(w, i)
        vs = group.mult_simple_right(v, i)
        if group.right_descent(v, i):
            return self.ext1_dim(vs, ws)
        if not group.bruhat_leq(vs, ws):
            return 1 + self.ext1_dim(v, ws)
        return self.ext1_dim(v, ws)

    def ext1_table(self, threads: int = 1) -> List[Row]:
        """
        ext1_dim for every pair v <= w, sharing the memo.

        Args:
            threads: Worker count for the fill.

        Returns:
            Sorted (v, w, dimension) rows.
        """
        rows = fill_pairs(self.group, self.ext1_dim, threads)
        logger.debug("Ext1 table for %s: %d rows, memo size %d", self.group.label, len(rows), len(self.memo))
        return rows


@lru_cache(maxsize=None)
def ext_service_for(group: WeylGroup) -> ExtService:
    """Shared ExtService per group instance, so tables and queries reuse one memo."""
    return ExtService(group)
