"""Independent brute-force oracles used to pin expected values.

Functional graphs are raw endomaps g: {0..n-1} -> {0..n-1} (the edge set is
v -> g[v]); isomorphism classes are computed by quotienting by all vertex
permutations, never by the package's canonical forms.
"""

from __future__ import annotations

from itertools import permutations, product


def is_connected(g: tuple[int, ...]) -> bool:
    n = len(g)
    seen = {0}
    frontier = [0]
    adj = [[] for _ in range(n)]
    for v, w in enumerate(g):
        adj[v].append(w)
        adj[w].append(v)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == n


def relabel(g: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    """Conjugate the endomap: new[perm[v]] = perm[g[v]]."""
    out = [0] * len(g)
    for v, w in enumerate(g):
        out[perm[v]] = perm[w]
    return tuple(out)


def functional_graph_classes(n: int) -> set[tuple[int, ...]]:
    """Connected endomap classes on n vertices, one orbit representative each.

    Orbit-marking keeps this linear in n^n: each new representative expands
    its full permutation orbit into the seen-set once.
    """
    perms = list(permutations(range(n)))
    seen: set[tuple[int, ...]] = set()
    reps: set[tuple[int, ...]] = set()
    for g in product(range(n), repeat=n):
        if g in seen or not is_connected(g):
            continue
        reps.add(g)
        for p in perms:
            seen.add(relabel(g, p))
    return reps

def orbit_representative(g: tuple[int, ...]) -> tuple[int, ...]:
    return min(relabel(g, p) for p in permutations(range(len(g))))


def automorphism_count(g: tuple[int, ...]) -> int:
    """Number of vertex permutations commuting with the endomap."""
    n = len(g)
    return sum(1 for p in permutations(range(n)) if relabel(g, p) == g)


def rooted_tree_classes(n: int) -> set[tuple[int, ...]]:
    """Rooted trees on n vertices via increasing parent arrays, quotiented by
    root-fixing permutations (parent[0] = 0 marks the root)."""
    if n == 1:
        return {(0,)}
    perms = [p for p in permutations(range(n)) if p[0] == 0]
    seen: set[tuple[int, ...]] = set()
    reps: set[tuple[int, ...]] = set()

    def conj(parent, p):
        out = [0] * n
        for v in range(n):
            out[p[v]] = p[parent[v]]
        return tuple(out)

    for parents in product(*[range(i) for i in range(1, n)]):
        arr = (0,) + parents
        if arr in seen:
            continue
        reps.add(arr)
        for p in perms:
            seen.add(conj(arr, p))
    return reps


def tree_automorphism_count(parent: tuple[int, ...]) -> int:
    n = len(parent)
    count = 0
    for p in permutations(range(n)):
        if p[0] != 0:
            continue
        ok = True
        for v in range(1, n):
            if p[parent[v]] != parent[p[v]]:
                ok = False
                break
        count += ok
    return count


def aroma_to_endomap(aroma) -> tuple[int, ...]:
    """Explicit endomap of an Aroma (structural conversion, no sigma logic)."""
    preds, tree_kids, k = aroma.structure()
    n = len(preds)
    g = [0] * n
    for i in range(k):
        g[i] = (i + 1) % k
    for v in range(n):
        for child in tree_kids[v]:
            g[child] = v
    return tuple(g)


def multiset_to_endomap(mset) -> tuple[int, ...]:
    g: list[int] = []
    for aroma in mset.aromas:
        shift = len(g)
        g.extend(shift + w for w in aroma_to_endomap(aroma))
    return tuple(g)
