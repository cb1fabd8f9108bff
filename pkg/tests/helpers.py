"""Random inputs and independent sympy oracles shared by the test modules."""

import random
from math import gcd

import sympy

from qmhs.monodromy import coboundary, perm_matrix


def random_graph_input(rng: random.Random, max_vertices: int = 12) -> dict:
    """Vertex families with cyclic copies and edge orbits between them."""
    verts = []
    total = 0
    while total < max_vertices:
        copies = rng.choice([1, 1, 1, 2, 3])
        if total + copies > max_vertices:
            break
        verts.append({"name": f"V{len(verts)}", "copies": copies})
        total += copies
        if len(verts) >= 2 and rng.random() < 0.3:
            break
    if len(verts) < 2:
        verts.append({"name": f"V{len(verts)}", "copies": 1})
    edges = []
    used = set()
    names = [v["name"] for v in verts]
    copies = {v["name"]: v["copies"] for v in verts}
    # a spanning chain keeps the graph connected, then random extra orbits
    pairs = [(names[i], names[i + 1]) for i in range(len(names) - 1)]
    for _ in range(rng.randint(0, 4)):
        a, b = rng.sample(names, 2)
        pairs.append((a, b))
    for a, b in pairs:
        key = tuple(sorted((a, b)))
        if key in used and copies[a] > 1 and copies[b] > 1:
            continue
        used.add(key)
        base = copies[a] * copies[b] // gcd(copies[a], copies[b])
        orbit = base * rng.choice([1, 1, 2, 3])
        edges.append({"ends": [a, b], "orbit": orbit})
    return {"n": 1, "vertices": verts, "edges": edges}


def _charpoly(M):
    t = sympy.Symbol("t")
    return sympy.Poly(M.charpoly(t).as_expr(), t)


def dense_h1_oracle(K):
    """Characteristic polynomial of the deck action on H^1 of a graph, via sympy.

    H^1 = C^1 / im(delta) and im(delta) = C^0 / H^0, so the H^1 polynomial is
    charpoly(C^1) * charpoly(H^0) / charpoly(C^0).
    """
    t = sympy.Symbol("t")
    d0 = sympy.Matrix(coboundary(K, 0)) if K.count(1) else sympy.zeros(0, K.count(0))
    P0 = sympy.Matrix(perm_matrix(K.deck(0)))
    P1 = sympy.Matrix(perm_matrix(K.deck(1))) if K.count(1) else sympy.zeros(0, 0)
    null = d0.nullspace() if K.count(1) else [sympy.eye(K.count(0))[:, i] for i in range(K.count(0))]
    Z = sympy.Matrix.hstack(*null)
    # action on the kernel: solve Z X = P0 Z
    X = (Z.T * Z).inv() * Z.T * P0 * Z
    h0 = _charpoly(X)
    c0 = _charpoly(P0)
    c1 = _charpoly(P1) if K.count(1) else sympy.Poly(1, t)
    q, r = sympy.div(c1 * h0, c0)
    assert r.is_zero
    return [int(c) for c in reversed(sympy.Poly(q, t).all_coeffs())]


def random_nilpotent(rng: random.Random, n: int):
    """P J P^{-1} with J a random nilpotent Jordan matrix and P unimodular."""
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    J = [[0] * n for _ in range(n)]
    pos = 0
    for s in sizes:
        for i in range(s - 1):
            J[pos + i][pos + i + 1] = 1
        pos += s
    P = sympy.eye(n)
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            E = sympy.eye(n)
            E[i, j] = rng.randint(-2, 2)
            P = P * E
    M = P * sympy.Matrix(J) * P.inv()
    return [[int(x) for x in M.row(i)] for i in range(n)], sorted(sizes)


def jordan_chain_counts(M):
    """Block sizes of a nilpotent matrix from sympy's Jordan form."""
    A = sympy.Matrix(M)
    n = A.shape[0]
    if A.is_zero_matrix:
        return {1: n}
    _, J = A.jordan_form()
    sizes, run = [], 1
    for i in range(n - 1):
        if J[i, i + 1] == 1:
            run += 1
        else:
            sizes.append(run)
            run = 1
    sizes.append(run)
    out = {}
    for s in sizes:
        out[s] = out.get(s, 0) + 1
    return out


def random_cover(rng: random.Random, max_sheets: int = 60):
    """(N, fibers, c) of a cyclic cover of P^1 whose c pieces are connected.

    Local monodromies a_i in Z/n sum to zero and generate; the fiber over a
    branch point is gcd(a_i, n) per piece.
    """
    c = rng.choice([1, 1, 1, 2, 3])
    n = rng.randint(1, max_sheets // c)
    while True:
        a = [rng.randrange(1, n) for _ in range(rng.randint(1, 4))] if n > 1 else []
        last = (-sum(a)) % n
        if last:
            a.append(last)
        g = n
        for x in a:
            g = gcd(g, x)
        if g == 1:
            break
    return n * c, sorted(gcd(x, n) * c for x in a), c
