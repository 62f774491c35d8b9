"""Dense bivariate polynomial grids for phi_l(x, y).

``coeffs[k][m]`` is the coefficient of x^k y^m for 0 <= k, m <= l+1.  With
``modulus`` set the entries are residues in [0, modulus); otherwise they are
signed integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class BivariatePoly:
    ell: int
    coeffs: tuple
    modulus: int | None = None

    def __post_init__(self):
        size = self.ell + 2
        if len(self.coeffs) != size or any(len(row) != size for row in self.coeffs):
            raise ValueError(f"grid must be {size}x{size}")

    @classmethod
    def from_grid(cls, ell: int, grid, modulus: int | None = None) -> BivariatePoly:
        if modulus is not None:
            grid = [[int(c) % modulus for c in row] for row in grid]
        return cls(ell, tuple(tuple(int(c) for c in row) for row in grid), modulus)

    @classmethod
    def from_terms(cls, ell: int, terms, modulus: int | None = None) -> BivariatePoly:
        size = ell + 2
        grid = [[0] * size for _ in range(size)]
        for k, m, c in terms:
            grid[k][m] = c
        return cls.from_grid(ell, grid, modulus)

    @property
    def size(self) -> int:
        return self.ell + 2

    def coeff(self, k: int, m: int) -> int:
        return self.coeffs[k][m]

    def column(self, k: int) -> list[int]:
        """Coefficients of p_k(y), the x^k part, from y^0 upward."""
        return list(self.coeffs[k])

    def terms(self):
        """Nonzero (k, m, c), sorted by (k, m) descending."""
        out = [(k, m, c) for k, row in enumerate(self.coeffs) for m, c in enumerate(row) if c]
        out.sort(key=lambda t: (t[0], t[1]), reverse=True)
        return out

    def to_text(self) -> str:
        return "".join(f"{k} {m} {c}\n" for k, m, c in self.terms())

    def to_json(self) -> str:
        doc = {
            "ell": self.ell,
            "modulus": self.modulus,
            "terms": [[k, m, str(c)] for k, m, c in self.terms()],
        }
        return json.dumps(doc, sort_keys=True) + "\n"

    @classmethod
    def from_text(cls, ell: int, text: str, modulus: int | None = None) -> BivariatePoly:
        terms = []
        for line in text.splitlines():
            if line.strip():
                k, m, c = line.split()
                terms.append((int(k), int(m), int(c)))
        return cls.from_terms(ell, terms, modulus)

    def reduce(self, p: int) -> BivariatePoly:
        return BivariatePoly.from_grid(self.ell, self.coeffs, p)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.coeffs[k][m] == self.coeffs[m][k] for k in range(n) for m in range(n))

    def shape_violations(self) -> list[str]:
        """Reasons the grid is not monic of the expected shape (empty when fine)."""
        ell, c = self.ell, self.coeffs
        bad = []
        one = 1 if self.modulus is None else 1 % self.modulus
        if c[ell + 1][0] != one or any(c[ell + 1][m] for m in range(1, ell + 2)):
            bad.append("not monic of degree l+1 in x")
        if c[0][ell + 1] != one:
            bad.append("p_0 not monic of degree l+1")
        for k in range(1, ell + 1):
            if c[k][ell + 1]:
                bad.append(f"deg p_{k} exceeds l")
        return bad

    def evaluate_y(self, y) -> list:
        """Coefficients (x^0 upward) of phi(x, y) for a field element or int y."""
        out = []
        for row in self.coeffs:
            acc = 0 * y
            for c in reversed(row):
                acc = acc * y + c
            out.append(acc)
        return out

    def __str__(self):
        return self.to_text()
