import logging
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from config import constants
from services.coxeter import permutation_model
from services.coxeter.root_system_service import Root, RootSystem

logger = logging.getLogger(__name__)

_SEPARATOR_RE = re.compile(r"[\s,]+")


class ElementParseError(Exception):
    """Base class for element text that cannot be read."""
    pass


class BadIndex(ElementParseError):
    """Raised for a generator index outside 1..rank."""
    pass


class BadSyntax(ElementParseError):
    """Raised for text that is not a generator word or permutation."""
    pass


class GroupTooLarge(Exception):
    """Raised when enumeration is requested for a group above constants.MAX_GROUP_ORDER."""
    pass


@dataclass(frozen=True, order=True)
class GroupElement:
    """
    A Weyl group element, identified by where it sends the simple roots.

    Attributes:
        images: images[i] is the root index of w(alpha_i).
    """
    images: Tuple[int, ...]


class WeylGroup:
    """
    The Weyl group of a root system, acting on root indices.

    All operations are exact; results of simple multiplications, lengths and
    Bruhat comparisons are memoized per instance. Memo entries are idempotent,
    so concurrent fills are race-benign.

    Attributes:
        system: The ambient root system.
        identity: The identity element.
    """
    def __init__(self, system: RootSystem):
        """
        Initializes the group for a root system.

        Args:
            system: A finite root system.
        """
        self.system = system
        self.identity = GroupElement(tuple(range(system.rank)))
        self._right: Dict[Tuple[GroupElement, int], GroupElement] = {}
        self._length: Dict[GroupElement, int] = {}
        self._bruhat: Dict[Tuple[GroupElement, GroupElement], bool] = {}
        self._words: Dict[GroupElement, Tuple[int, ...]] = {}
        self._elements: List[GroupElement] = []

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def label(self) -> str:
        return self.system.datum.label

    def _coords(self, k: int) -> Root:
        return self.system.roots[k]

    def apply(self, w: GroupElement, k: int) -> int:
        """
        Applies w to a root.

        Args:
            w: Group element.
            k: Root index.

        Returns:
            The root index of w(roots[k]).
        """
        total = [0] * self.rank
        for j, c in enumerate(self._coords(k)):
            if c:
                for t, x in enumerate(self._coords(w.images[j])):
                    total[t] += c * x
        return self.system.lookup(tuple(total))

    def simple(self, i: int) -> GroupElement:
        """The simple reflection s_i for a 0-based index i."""
        return self.mult_simple_left(i, self.identity)

    def right_descent(self, w: GroupElement, i: int) -> bool:
        """True iff l(w s_i) < l(w), i.e. w(alpha_i) is negative."""
        return not self.system.is_positive(w.images[i])

    def right_descents(self, w: GroupElement) -> List[int]:
        return [i for i in range(self.rank) if self.right_descent(w, i)]

    def first_right_descent(self, w: GroupElement) -> int:
        """
        Smallest i with w s_i < w.

        Raises:
            ValueError: If w is the identity.
        """
        for i in range(self.rank):
            if self.right_descent(w, i):
                return i
        raise ValueError("The identity has no right descent")

    def mult_simple_right(self, w: GroupElement, i: int) -> GroupElement:
        """
        Returns w s_i.

        Uses (w s_i)(alpha_j) = w(alpha_j) - a_ij w(alpha_i).
        """
        key = (w, i)
        cached = self._right.get(key)
        if cached is not None:
            return cached
        row = self.system.datum.matrix[i]
        image_i = self._coords(w.images[i])
        images = []
        for j, k in enumerate(w.images):
            if j == i:
                images.append(self.system.negate(k))
            elif row[j] == 0:
                images.append(k)
            else:
                coords = tuple(a - row[j] * b for a, b in zip(self._coords(k), image_i))
                images.append(self.system.lookup(coords))
        result = GroupElement(tuple(images))
        self._right[key] = result
        return result

    def mult_simple_left(self, i: int, w: GroupElement) -> GroupElement:
        """Returns s_i w."""
        action = self.system.simple_action[i]
        return GroupElement(tuple(action[k] for k in w.images))

    def multiply(self, w: GroupElement, v: GroupElement) -> GroupElement:
        """Returns the product w v."""
        return GroupElement(tuple(self.apply(w, k) for k in v.images))

    def inverse(self, w: GroupElement) -> GroupElement:
        """
        Returns w^{-1}.

        Strips right descents off w and replays them as left multiplications.
        """
        stripped = []
        current = w
        while current != self.identity:
            i = self.first_right_descent(current)
            current = self.mult_simple_right(current, i)
            stripped.append(i)
        # w = s_{ik} ... s_{i1} with i1 stripped first, so w^{-1} = s_{i1} ... s_{ik}
        result = self.identity
        for i in reversed(stripped):
            result = self.mult_simple_left(i, result)
        return result

    def from_word(self, word: Sequence[int]) -> GroupElement:
        """Multiplies out 0-based generator indices from left to right."""
        result = self.identity
        for i in word:
            result = self.mult_simple_right(result, i)
        return result

    def length(self, w: GroupElement) -> int:
        """
        Number of positive roots sent to negative roots.

        Args:
            w: Group element.

        Returns:
            The length l(w).
        """
        cached = self._length.get(w)
        if cached is not None:
            return cached
        n = self.system.positive_count
        value = sum(1 for k in range(n) if not self.system.is_positive(self.apply(w, k)))
        self._length[w] = value
        return value

    def to_reduced_word(self, w: GroupElement) -> List[int]:
        """
        Lexicographically smallest reduced word, 1-based.

        The first letter is the smallest left descent of w, i.e. the smallest
        right descent of w^{-1}; the rest is the word of s_i w.
        """
        cached = self._words.get(w)
        if cached is not None:
            return list(cached)
        u = self.inverse(w)
        word = []
        while u != self.identity:
            i = self.first_right_descent(u)
            word.append(i + 1)
            u = self.mult_simple_right(u, i)
        self._words[w] = tuple(word)
        return word

    def format_element(self, w: GroupElement) -> str:
        word = self.to_reduced_word(w)
        return " ".join(str(i) for i in word) if word else constants.IDENTITY_TOKEN

    def parse_element(self, text: str) -> GroupElement:
        """
        Reads an element from the shared element syntax.

        Accepted forms: "e" for the identity; whitespace- or comma-separated
        1-based generator indices such as "1 2 1" (not necessarily reduced);
        "p:2314" one-line permutations when the group is a single A_n.

        Args:
            text: Element text.

        Returns:
            The parsed GroupElement.

        Raises:
            BadIndex: If a generator index is outside 1..rank.
            BadSyntax: For anything else that does not parse.
        """
        body = text.strip()
        if body == constants.IDENTITY_TOKEN:
            return self.identity
        if body.startswith(constants.PERMUTATION_PREFIX):
            return self._parse_permutation(body[len(constants.PERMUTATION_PREFIX):])
        tokens = [t for t in _SEPARATOR_RE.split(body) if t]
        if not tokens:
            raise BadSyntax(f"Empty element text {text!r}")
        word = []
        for token in tokens:
            if not (token.isascii() and token.lstrip("-").isdigit()):
                raise BadSyntax(f"Cannot read generator {token!r} in {text!r}")
            index = int(token)
            if not 1 <= index <= self.rank:
                raise BadIndex(f"Generator {index} out of range 1..{self.rank} in {text!r}")
            word.append(index - 1)
        return self.from_word(word)

    def _parse_permutation(self, body: str) -> GroupElement:
        if not self.system.datum.is_type_a():
            raise BadSyntax(f"Permutation syntax needs a type A group, not {self.label}")
        try:
            perm = permutation_model.parse_one_line(body)
        except ValueError as e:
            raise BadSyntax(str(e))
        if len(perm) != self.rank + 1:
            raise BadSyntax(f"Permutation of {len(perm)} letters does not fit {self.label}")
        return self.from_permutation(perm)

    def from_permutation(self, perm: Sequence[int]) -> GroupElement:
        """Type A only: the element whose adjacent-transposition image is perm."""
        return self.from_word([i - 1 for i in permutation_model.permutation_word(perm)])

    def to_permutation(self, w: GroupElement) -> permutation_model.OneLine:
        """Type A only: one-line notation of w acting on 1..rank+1."""
        return permutation_model.apply_word(self.rank + 1, self.to_reduced_word(w))

    def longest_element(self) -> GroupElement:
        """
        The element sending every positive root to a negative one.

        Built by right-multiplying by any ascent until none is left.
        """
        w = self.identity
        while True:
            for i in range(self.rank):
                if not self.right_descent(w, i):
                    w = self.mult_simple_right(w, i)
                    break
            else:
                return w

    def order(self) -> int:
        """
        Group order from the heights of positive roots.

        The number of exponents >= k equals the number of positive roots of
        height k; the order is the product of (exponent + 1).
        """
        heights = Counter(self.system.height(k) for k in range(self.system.positive_count))
        if not heights:
            return 1
        exponents = [
            sum(1 for h, count in heights.items() if count > j)
            for j in range(heights[1])
        ]
        return math.prod(e + 1 for e in exponents)

    def enumerate_group(self) -> List[GroupElement]:
        """
        All elements, each once, ordered by (length, images).

        Raises:
            GroupTooLarge: If the order exceeds constants.MAX_GROUP_ORDER.
        """
        if self._elements:
            return list(self._elements)
        expected = self.order()
        if expected > constants.MAX_GROUP_ORDER:
            raise GroupTooLarge(
                f"{self.label} has {expected} elements, above the limit {constants.MAX_GROUP_ORDER}"
            )
        seen = {self.identity: 0}
        layer = [self.identity]
        while layer:
            following = []
            for w in layer:
                for i in range(self.rank):
                    if self.right_descent(w, i):
                        continue
                    u = self.mult_simple_right(w, i)
                    if u not in seen:
                        seen[u] = seen[w] + 1
                        self._length.setdefault(u, seen[u])
                        following.append(u)
            layer = following
        self._elements = sorted(seen, key=lambda u: (seen[u], u.images))
        logger.debug("Enumerated %s: %d elements", self.label, len(self._elements))
        return list(self._elements)

    def sort_key(self, w: GroupElement) -> Tuple[int, Tuple[int, ...]]:
        return (self.length(w), w.images)

    def bruhat_leq(self, v: GroupElement, w: GroupElement) -> bool:
        """
        Decides v <= w in the Bruhat order.

        With s the smallest right descent of w: if vs < v then v <= w iff
        vs <= ws, otherwise v <= w iff v <= ws.

        Args:
            v: Lower candidate.
            w: Upper candidate.

        Returns:
            True iff v <= w.
        """
        if v == self.identity:
            return True
        key = (v, w)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        if self.length(v) > self.length(w):
            result = False
        elif self.length(v) == self.length(w):
            result = v == w
        else:
            i = self.first_right_descent(w)
            ws = self.mult_simple_right(w, i)
            if self.right_descent(v, i):
                result = self.bruhat_leq(self.mult_simple_right(v, i), ws)
            else:
                result = self.bruhat_leq(v, ws)
        self._bruhat[key] = result
        return result

    def comparable_pairs(self) -> List[Tuple[GroupElement, GroupElement]]:
        """All pairs v <= w, ordered by (v key, w key)."""
        elements = self.enumerate_group()
        return [(v, w) for v in elements for w in elements if self.bruhat_leq(v, w)]
