"""
Cartan data: type labels, the Bourbaki catalogue and user-supplied matrices.

Convention: ``matrix[i][j] = <alpha_j, alpha_i^vee>``, so the simple reflection
``s_i`` sends ``alpha_j`` to ``alpha_j - matrix[i][j] * alpha_i``.
"""

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]

_COMPONENT_RE = re.compile(r"^([A-Ga-g])(\d+)$")


class CartanError(Exception):
    """Base class for invalid Cartan input."""
    pass


class UnknownType(CartanError):
    """Raised for a type label outside the finite catalogue."""
    pass


class MalformedCartan(CartanError):
    """Raised when a matrix is not a generalized Cartan matrix."""
    pass


class NonFiniteType(CartanError):
    """Raised when root generation exceeds the configured cap."""
    pass


@dataclass(frozen=True)
class CartanDatum:
    """
    A Cartan matrix together with its type label.

    Attributes:
        label: Type label such as "A3", "G2" or "A1xA1" ("custom" for files).
        matrix: Square integer Cartan matrix.
        components: Irreducible components as (letter, rank) pairs, empty when unknown.
    """
    label: str
    matrix: Matrix
    components: Tuple[Tuple[str, int], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def is_type_a(self) -> bool:
        """True when the matrix is exactly the A_n matrix for n = rank."""
        return self.matrix == _type_a(self.rank)


def _chain(rank: int) -> List[List[int]]:
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2
    for i in range(rank - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    return m


def _edges(rank: int, edges: Sequence[Tuple[int, int]]) -> List[List[int]]:
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2
    for a, b in edges:
        m[a - 1][b - 1] = m[b - 1][a - 1] = -1
    return m


def _freeze(m: List[List[int]]) -> Matrix:
    return tuple(tuple(row) for row in m)


def _type_a(rank: int) -> Matrix:
    return _freeze(_chain(rank))


def _component_matrix(letter: str, rank: int) -> Matrix:
    if letter == "A" and rank >= 1:
        return _type_a(rank)
    if letter == "B" and rank >= 2:
        m = _chain(rank)
        m[rank - 1][rank - 2] = -2
        return _freeze(m)
    if letter == "C" and rank >= 2:
        m = _chain(rank)
        m[rank - 2][rank - 1] = -2
        return _freeze(m)
    if letter == "D" and rank >= 3:
        edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
        return _freeze(_edges(rank, edges))
    if letter == "E" and rank in (6, 7, 8):
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, rank)]
        return _freeze(_edges(rank, edges))
    if letter == "F" and rank == 4:
        m = _chain(4)
        m[2][1] = -2
        return _freeze(m)
    if letter == "G" and rank == 2:
        return ((2, -3), (-1, 2))
    raise UnknownType(f"Unknown Cartan type {letter}{rank}")


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    """
    Assembles a block-diagonal matrix; simple indices of later blocks follow earlier ones.

    Args:
        blocks: Square matrices in order.

    Returns:
        The block-diagonal matrix.
    """
    size = sum(len(b) for b in blocks)
    m = [[0] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, value in enumerate(row):
                m[offset + i][offset + j] = value
        offset += len(block)
    return _freeze(m)


def validate_matrix(matrix: Sequence[Sequence[int]]) -> Matrix:
    """
    Checks the generalized Cartan matrix axioms.

    Args:
        matrix: Candidate matrix.

    Returns:
        The matrix as a tuple of tuples.

    Raises:
        MalformedCartan: If the matrix is empty, not square, not integral, has a
            diagonal entry other than 2, a positive off-diagonal entry, or
            a zero pattern that is not symmetric.
    """
    rows = [list(row) for row in matrix]
    size = len(rows)
    if size == 0:
        raise MalformedCartan("Cartan matrix is empty")
    for row in rows:
        if len(row) != size:
            raise MalformedCartan("Cartan matrix is not square")
        for value in row:
            if isinstance(value, bool) or not isinstance(value, int):
                raise MalformedCartan(f"Non-integer Cartan entry {value!r}")
    for i in range(size):
        if rows[i][i] != 2:
            raise MalformedCartan(f"Diagonal entry ({i + 1},{i + 1}) is {rows[i][i]}, expected 2")
        for j in range(size):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise MalformedCartan(f"Off-diagonal entry ({i + 1},{j + 1}) is positive")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise MalformedCartan(f"Entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) disagree on zero")
    return _freeze(rows)


def parse_label(label: str) -> CartanDatum:
    """
    Builds a Cartan datum from a type label.

    Args:
        label: Letter+rank components joined by "x", e.g. "B3" or "A1xA1".

    Returns:
        The corresponding CartanDatum with Bourbaki numbering.

    Raises:
        UnknownType: If any component is not a finite crystallographic type.
    """
    text = label.strip()
    parts = re.split(r"[xX×]", text) if text else []
    if not parts:
        raise UnknownType(f"Unknown Cartan type {label!r}")
    components = []
    blocks = []
    for part in parts:
        match = _COMPONENT_RE.match(part.strip())
        if not match:
            raise UnknownType(f"Unknown Cartan type {label!r}")
        letter, rank = match.group(1).upper(), int(match.group(2))
        blocks.append(_component_matrix(letter, rank))
        components.append((letter, rank))
    canonical = "x".join(f"{letter}{rank}" for letter, rank in components)
    return CartanDatum(label=canonical, matrix=block_diagonal(blocks), components=tuple(components))


def load_cartan_file(path: Path) -> CartanDatum:
    """
    Reads a Cartan matrix from a JSON document.

    The document is either a list of integer rows or an object with a
    "matrix" key and an optional "label" key.

    Args:
        path: Location of the document.

    Returns:
        The validated CartanDatum.

    Raises:
        MalformedCartan: If the document cannot be read or fails validation.
    """
    try:
        document = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise MalformedCartan(f"Cannot read Cartan document {path}: {e}")
    if isinstance(document, dict):
        label = str(document.get("label", "custom"))
        rows = document.get("matrix")
    else:
        label, rows = "custom", document
    if not isinstance(rows, list):
        raise MalformedCartan("Cartan document has no matrix")
    matrix = validate_matrix(rows)
    logger.debug("Loaded %dx%d Cartan matrix %s from %s", len(matrix), len(matrix), label, path)
    return CartanDatum(label=label, matrix=matrix)
