"""Random small objects shared by the property suites."""

import random

from nfgcodes.algebra import Alphabet, CycloRational
from nfgcodes.lincode import LinearCode
from nfgcodes.nfg import Factor, NormalFactorGraph
from nfgcodes.transform import FactorTensor
from nfgcodes.convcode import TrellisSection


def random_value(rng: random.Random, p: int):
    if p > 2 and rng.random() < 0.3:
        return CycloRational(p, [rng.randint(-2, 2) for _ in range(p - 1)], rng.choice([1, 1, 2]))
    return rng.randint(-2, 3)


def random_nfg(rng: random.Random, max_configs: int = 4096) -> NormalFactorGraph:
    """At most 4 factors, 3 internal variables, alphabets of size <= 9."""
    while True:
        p = rng.choice([2, 3])
        max_dim = 3 if p == 2 else 2
        n_f = rng.randint(1, 4)
        n_int = rng.randint(0, 3) if n_f >= 2 else 0
        n_ext = rng.randint(0, 2)
        internals = [(f"s{j}", Alphabet(p, rng.randint(1, max_dim))) for j in range(n_int)]
        externals = [(f"a{k}", Alphabet(p, rng.randint(1, max_dim))) for k in range(n_ext)]
        size = 1
        for _, a in internals + externals:
            size *= a.size
        if size > max_configs:
            continue
        scope = [[] for _ in range(n_f)]
        for v, _ in internals:
            i, j = rng.sample(range(n_f), 2)
            scope[i].append(v)
            scope[j].append(v)
        for v, _ in externals:
            scope[rng.randrange(n_f)].append(v)
        alph = dict(internals + externals)
        factors = []
        for i, vars_ in enumerate(scope):
            rng.shuffle(vars_)
            axes = [alph[v] for v in vars_]
            n = 1
            for a in axes:
                n *= a.size
            vals = [random_value(rng, p) for _ in range(n)]
            factors.append(Factor(f"f{i}", FactorTensor(axes, vals, p), tuple(vars_)))
        orientation = {}
        for v, _ in internals:
            ends = [f"f{i}" for i, s in enumerate(scope) if v in s]
            orientation[v] = rng.choice(ends)
        return NormalFactorGraph(p, externals, internals, factors, orientation)


def random_code(rng: random.Random, max_len: int = 8) -> LinearCode:
    p = rng.choice([2, 3])
    cap = 8 if p == 2 else 6
    n = rng.randint(1, cap)
    profile = []
    left = n
    while left:
        d = rng.randint(1, min(2, left))
        profile.append(d)
        left -= d
    k = rng.randint(0, n)
    rows = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
    return LinearCode(p, profile, rows)


def random_section(rng: random.Random) -> TrellisSection:
    """Small time-invariant section: |S| <= 9, |A| <= 9."""
    p = rng.choice([2, 2, 3])
    mu = rng.randint(0, 2 if p == 3 else 3)
    n = rng.randint(1, 2 if p == 3 else 3)
    width = 2 * mu + n
    k = rng.randint(1, width)
    rows = [[rng.randrange(p) for _ in range(width)] for _ in range(k)]
    return TrellisSection(LinearCode(p, [mu, n, mu], rows))
