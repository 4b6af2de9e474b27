"""Random walk generators over graphs, for classification property tests."""


def random_walk_on(g, rng, steps):
    """Uniform random walk of ``steps`` edges; None if it gets stuck."""
    starts = [v for v in range(g.n) if g.out_neighbors[v]]
    if not starts:
        return None
    walk = [rng.choice(starts)]
    for _ in range(steps):
        nbrs = g.out_neighbors[walk[-1]]
        if not nbrs:
            return None
        walk.append(rng.choice(nbrs)[0])
    return tuple(walk)


def random_nbp_walk_on(g, rng, steps):
    """Random walk that never immediately reverses an edge; None if stuck."""
    starts = [v for v in range(g.n) if g.out_neighbors[v]]
    if not starts:
        return None
    walk = [rng.choice(starts)]
    for _ in range(steps):
        options = [v for v, _ in g.out_neighbors[walk[-1]]
                   if len(walk) < 2 or v != walk[-2]]
        if not options:
            return None
        walk.append(rng.choice(options))
    return tuple(walk)
