from typing import Dict, Generic, Optional, Tuple, TypeVar

from services.coxeter.weyl_group_service import GroupElement

T = TypeVar("T")

PairKey = Tuple[GroupElement, GroupElement]


class MemoConflict(Exception):
    """Raised when a write-once entry is written again with a different value."""
    pass


class PairMemo(Generic[T]):
    """
    Write-once table keyed by (v, w) element pairs.

    Writes are idempotent: storing the value already present is a no-op, so
    concurrent fills of the same entry are harmless. A disabled memo stores
    nothing, which makes cache-off recomputation runs possible.

    Attributes:
        enabled: Whether lookups and stores are active.
    """
    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self._table: Dict[PairKey, T] = {}

    def get(self, v: GroupElement, w: GroupElement) -> Optional[T]:
        if not self.enabled:
            return None
        return self._table.get((v, w))

    def store(self, v: GroupElement, w: GroupElement, value: T) -> T:
        """
        Records a value for (v, w).

        Raises:
            MemoConflict: If a different value is already stored for the pair.
        """
        if not self.enabled:
            return value
        existing = self._table.setdefault((v, w), value)
        if existing != value:
            raise MemoConflict(f"Memo entry rewritten: {existing!r} != {value!r}")
        return existing

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, key: PairKey) -> bool:
        return key in self._table


# dim Ext^1 per pair
ExtMemo = PairMemo[int]
