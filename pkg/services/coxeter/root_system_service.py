import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from config import constants
from services.coxeter.cartan import CartanDatum, NonFiniteType, validate_matrix

logger = logging.getLogger(__name__)

Root = Tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    """
    Finite root system in the simple-root basis.

    Roots are indexed so that positive roots come first, sorted by height, and
    ``roots[k + positive_count] == -roots[k]``. The simple root alpha_i sits at index i.

    Attributes:
        datum: The Cartan datum the roots were generated from.
        roots: Integer coordinate vectors of all roots.
        positive_count: Number of positive roots.
        simple_action: simple_action[i][k] is the index of s_i(roots[k]).
    """
    datum: CartanDatum
    roots: Tuple[Root, ...]
    positive_count: int
    simple_action: Tuple[Tuple[int, ...], ...]
    index: Dict[Root, int] = field(compare=False, repr=False, hash=False)

    @property
    def rank(self) -> int:
        return self.datum.rank

    def is_positive(self, k: int) -> bool:
        return k < self.positive_count

    def negate(self, k: int) -> int:
        n = self.positive_count
        return k + n if k < n else k - n

    def height(self, k: int) -> int:
        return sum(self.roots[k])

    def lookup(self, coords: Root) -> int:
        return self.index[coords]


def _reflect(datum: CartanDatum, i: int, root: Root) -> Root:
    pairing = sum(datum.matrix[i][j] * c for j, c in enumerate(root))
    if pairing == 0:
        return root
    coords = list(root)
    coords[i] -= pairing
    return tuple(coords)


class RootSystemService:
    """
    Builds root systems from Cartan data by closing the simple roots under reflections.

    Attributes:
        root_cap: Number of roots after which generation is abandoned.
    """
    def __init__(self, root_cap: Optional[int] = None):
        """
        Initializes the service.

        Args:
            root_cap: Override for constants.ROOT_CAP.
        """
        self.root_cap = root_cap if root_cap is not None else constants.ROOT_CAP
        self._cache: Dict[CartanDatum, RootSystem] = {}

    def build_root_system(self, datum: CartanDatum) -> RootSystem:
        """
        Generates all roots of a finite-type Cartan datum.

        Args:
            datum: The Cartan datum.

        Returns:
            The RootSystem, cached per datum.

        Raises:
            MalformedCartan: If the matrix fails validation.
            NonFiniteType: If the closure grows beyond the root cap.
        """
        cached = self._cache.get(datum)
        if cached is not None:
            return cached
        validate_matrix(datum.matrix)

        rank = datum.rank
        simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            root = queue.popleft()
            for i in range(rank):
                image = _reflect(datum, i, root)
                if image in seen:
                    continue
                seen.add(image)
                if len(seen) > self.root_cap:
                    raise NonFiniteType(
                        f"Root generation for {datum.label} exceeded {self.root_cap} roots; "
                        "the Cartan matrix is not of finite type"
                    )
                queue.append(image)

        positives = sorted(
            (r for r in seen if all(c >= 0 for c in r)),
            key=lambda r: (sum(r), tuple(-c for c in r)),
        )
        negatives = [tuple(-c for c in r) for r in positives]
        if len(positives) + len(negatives) != len(seen):
            raise NonFiniteType(f"Roots of {datum.label} are not sign-coherent")
        roots = tuple(positives) + tuple(negatives)
        index = {r: k for k, r in enumerate(roots)}
        simple_action = tuple(
            tuple(index[_reflect(datum, i, r)] for r in roots) for i in range(rank)
        )

        system = RootSystem(
            datum=datum,
            roots=roots,
            positive_count=len(positives),
            simple_action=simple_action,
            index=index,
        )
        logger.debug("Built root system %s: %d roots, %d positive", datum.label, len(roots), len(positives))
        self._cache[datum] = system
        return system
