from dataclasses import dataclass

import numpy
import sympy

from config import constants


@dataclass(frozen=True)
class PrimeField:
    """
    The prime field F_p with exact modular linear algebra on numpy integer arrays.

    Attributes:
        p: Prime modulus, one of constants.SUPPORTED_PRIMES.
    """
    p: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p not in constants.SUPPORTED_PRIMES:
            raise ValueError(f"p={self.p} is outside the supported primes {constants.SUPPORTED_PRIMES}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def row_reduce(self, matrix: numpy.ndarray) -> numpy.ndarray:
        """
        Reduced row echelon form modulo p, zero rows dropped.

        Args:
            matrix: Integer matrix.

        Returns:
            The canonical basis of the row space.
        """
        A = numpy.array(matrix, dtype=numpy.int64) % self.p
        if A.ndim != 2 or A.shape[0] == 0:
            return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0)
        rows, cols = A.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nonzero = numpy.nonzero(A[r:, c])[0]
            if nonzero.size == 0:
                continue
            pivot = r + nonzero[0]
            if pivot != r:
                A[[r, pivot]] = A[[pivot, r]]
            A[r] = (A[r] * self.inv(int(A[r, c]))) % self.p
            factors = A[:, c].copy()
            factors[r] = 0
            A = (A - numpy.outer(factors, A[r])) % self.p
            r += 1
        return A[:r]

    def rank(self, matrix: numpy.ndarray) -> int:
        return int(self.row_reduce(matrix).shape[0])
