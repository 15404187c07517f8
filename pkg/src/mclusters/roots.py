"""Root system data for E6, E7, E8, F4 and a reflection-closure generator."""
from __future__ import annotations

COXETER = {"E6": 12, "E7": 18, "E8": 30, "F4": 12}
EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
}
RANK = {k: len(v) for k, v in EXPONENTS.items()}


def dynkin_edges(name: str) -> list[tuple[int, int]]:
    """Bourbaki labelled simply-laced edges (1-based)."""
    if name == "F4":
        return [(1, 2), (2, 3), (3, 4)]
    n = RANK[name]
    es = [(1, 3), (3, 4), (2, 4), (4, 5)]
    es += [(k, k + 1) for k in range(5, n)]
    return es


def cartan_matrix(name: str) -> list[list[int]]:
    n = RANK[name]
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in dynkin_edges(name):
        A[a - 1][b - 1] = A[b - 1][a - 1] = -1
    if name == "F4":
        # a_{ij} = <alpha_i^vee, alpha_j>; alpha_1, alpha_2 long
        A[2][1] = -2
    return A


def positive_roots(name: str) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, by closing the simple
    roots under simple reflections."""
    A = cartan_matrix(name)
    n = len(A)
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
                pairing = sum(A[i][j] * beta[j] for j in range(n))
                if pairing >= 0:
                    continue
                gamma = list(beta)
                gamma[i] -= pairing
                gamma = tuple(gamma)
                if gamma not in seen:
                    seen.add(gamma)
                    new.append(gamma)
        frontier = new
    return sorted(seen, key=lambda r: (sum(r), r))
