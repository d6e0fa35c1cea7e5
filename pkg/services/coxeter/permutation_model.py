"""
One-line permutations of {1, ..., n}, the symmetric-group model of type A_{n-1}.

The generator s_i is the adjacent transposition (i, i+1); right multiplication by
s_i swaps the entries in positions i and i+1 of the one-line notation.
"""

from typing import List, NewType, Sequence, Tuple

# a permutation of 1..n in one-line notation
OneLine = NewType("OneLine", Tuple[int, ...])


def identity_permutation(n: int) -> OneLine:
    return OneLine(tuple(range(1, n + 1)))


def is_permutation(values: Sequence[int]) -> bool:
    return sorted(values) == list(range(1, len(values) + 1))


def apply_word(n: int, word: Sequence[int]) -> OneLine:
    """
    Multiplies out a generator word as a permutation.

    Args:
        n: Size of the permuted set.
        word: 1-based generator indices, read left to right.

    Returns:
        The product s_{word[0]} ... s_{word[-1]} in one-line notation.
    """
    perm = list(range(1, n + 1))
    for i in word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return OneLine(tuple(perm))


def permutation_word(perm: Sequence[int]) -> List[int]:
    """
    Returns a reduced word for a permutation by bubble-sorting its one-line notation.

    Args:
        perm: One-line notation of a permutation of 1..n.

    Returns:
        1-based generator indices whose product is the permutation.
    """
    current = list(perm)
    stripped = []
    while True:
        for i in range(len(current) - 1):
            if current[i] > current[i + 1]:
                current[i], current[i + 1] = current[i + 1], current[i]
                stripped.append(i + 1)
                break
        else:
            break
    # perm * s_{a1} * ... * s_{ak} == identity, so perm == s_{ak} ... s_{a1}
    return stripped[::-1]


def inversions(perm: Sequence[int]) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


def inverse_permutation(perm: Sequence[int]) -> OneLine:
    inv = [0] * len(perm)
    for position, value in enumerate(perm, start=1):
        inv[value - 1] = position
    return OneLine(tuple(inv))


def rank_matrix(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """r[i][j] = #{k <= i : perm(k) >= j} for 1 <= i, j <= n (stored 0-based)."""
    n = len(perm)
    return tuple(
        tuple(sum(1 for k in range(i + 1) if perm[k] >= j) for j in range(1, n + 1))
        for i in range(n)
    )


def bruhat_leq_permutations(u: Sequence[int], w: Sequence[int]) -> bool:
    """
    Tableau (rank-matrix) criterion for the Bruhat order on S_n.

    Args:
        u: Lower candidate.
        w: Upper candidate.

    Returns:
        True iff every entry of u's rank matrix is at most the matching entry of w's.
    """
    ru, rw = rank_matrix(u), rank_matrix(w)
    return all(a <= b for row_u, row_w in zip(ru, rw) for a, b in zip(row_u, row_w))


def parse_one_line(text: str) -> OneLine:
    """
    Reads the digits after the "p:" prefix, e.g. "2314", or comma separated for n > 9.

    Raises:
        ValueError: If the text is not a permutation of 1..n.
    """
    body = text.strip()
    if not body.isascii():
        raise ValueError(f"{text!r} is not a permutation in one-line notation")
    if "," in body or " " in body:
        values = [int(t) for t in body.replace(",", " ").split()]
    else:
        values = [int(ch) for ch in body]
    if not values or not is_permutation(values):
        raise ValueError(f"{text!r} is not a permutation in one-line notation")
    return OneLine(tuple(values))
