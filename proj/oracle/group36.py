"""Group-theoretic data for the level-36 fixture: the subgroup, its
determinant-1 part, cusp orbits, widths and representatives."""

N = 36

# generators of the (transposed) subgroup of GL2(Z/36) the model is attached to
GENS = [(8, 25, 17, 12), (12, 5, 23, 15), (14, 25, 15, 5)]


def mmul(x, y, n=N):
    return ((x[0] * y[0] + x[1] * y[2]) % n, (x[0] * y[1] + x[1] * y[3]) % n,
            (x[2] * y[0] + x[3] * y[2]) % n, (x[2] * y[1] + x[3] * y[3]) % n)


def mdet(x, n=N):
    return (x[0] * x[3] - x[1] * x[2]) % n


def mneg(x, n=N):
    return tuple((n - v) % n for v in x)


IDENT = (1, 0, 0, 1)


def bfs_group(gens, n=N):
    seen = {IDENT}
    queue = [IDENT]
    gl = list(gens)
    while queue:
        x = queue.pop()
        for g in gl:
            y = mmul(x, g, n)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def group_data():
    G = bfs_group(GENS)
    gamma = {g for g in G if mdet(g) == 1}
    assert IDENT in gamma
    assert mneg(IDENT) in G, "-I should lie in the group"
    # index of +-Gamma in SL2(Z/36): |SL2| = 36^3 prod (1 - p^-2)
    sl2 = 36 ** 3
    for p in (2, 3):
        sl2 -= sl2 // (p * p)
    pm = gamma if mneg(IDENT) in gamma else None
    assert pm is not None, "-I should have determinant 1"
    index = sl2 // len(gamma)
    return G, gamma, index


def cusp_orbits(gamma):
    """Orbits of +-Gamma acting on primitive columns mod N (cusps of Gamma)."""
    from math import gcd
    prim = [(a, c) for a in range(N) for c in range(N) if gcd(gcd(a, c), N) == 1]
    prim_set = set(prim)
    seen = {}
    orbits = []
    for v in prim:
        if v in seen:
            continue
        orb = set()
        stack = [v]
        while stack:
            w = stack.pop()
            if w in orb:
                continue
            orb.add(w)
            for g in gamma:
                u = ((g[0] * w[0] + g[1] * w[1]) % N, (g[2] * w[0] + g[3] * w[1]) % N)
                if u not in orb:
                    stack.append(u)
            u = ((N - w[0]) % N, (N - w[1]) % N)
            if u not in orb:
                stack.append(u)
        for w in orb:
            seen[w] = len(orbits)
        orbits.append(orb)
    assert all(v in prim_set for o in orbits for v in o)
    return orbits, seen


def width(alpha, gamma):
    """Smallest h with alpha T^h alpha^{-1} in +-Gamma (computed mod N)."""
    a, b, c, d = alpha
    for h in range(1, N + 1):
        # alpha [[1,h],[0,1]] alpha^{-1} with det(alpha) = 1
        m = ((1 - a * c * h) % N, (a * a * h) % N, (-c * c * h) % N, (1 + a * c * h) % N)
        if m in gamma or mneg(m) in gamma:
            return h
    raise AssertionError("no width <= N")


CUSPS = [
    ((1, 0, 0, 1), "infinity"),
    ((5, 4, 36, 29), "5/36"),
    ((7, 6, 36, 31), "7/36"),
]


def main():
    G, gamma, index = group_data()
    print(f"|G| = {len(G)}, |Gamma| = {len(gamma)}, index = {index}")
    assert index == 108, index
    orbits, seen = cusp_orbits(gamma)
    print(f"cusp orbits: {len(orbits)} with sizes {[len(o) for o in orbits]}")
    assert len(orbits) == 3
    reps = []
    for alpha, name in CUSPS:
        v = (alpha[0] % N, alpha[2] % N)
        w = width(tuple(alpha), gamma)
        print(f"cusp {name}: vector {v}, orbit {seen[v]}, width {w}")
        reps.append(seen[v])
    assert sorted(reps) == [0, 1, 2], "cusp representatives must cover all orbits"
    widths = [width(tuple(alpha), gamma) for alpha, _ in CUSPS]
    assert sum(widths) == index, (widths, index)
    # T in Gamma? (width of infinity)
    print("widths:", widths)


if __name__ == "__main__":
    main()
