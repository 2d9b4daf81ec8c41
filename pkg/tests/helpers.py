"""Shared graph builders and random-element utilities for the test suite."""

from itertools import combinations_with_replacement, permutations

from lpalab import LeavittAlgebra, graph_from_lists


def e1_graph():
    return graph_from_lists(["v"], [])


def e2_graph():
    return graph_from_lists(["v"], [("c", "v", "v")])


def e3_graph():
    return graph_from_lists(["v", "w"], [("e", "v", "w"), ("f", "w", "v")])


def e4_graph(n, flagged=False):
    vs = ["u"] + [f"u{i}" for i in range(1, n + 1)]
    es = [(f"e{i}", "u", f"u{i}") for i in range(1, n + 1)]
    return graph_from_lists(vs, es, infinite=["u"] if flagged else [])


def e5_graph(m, flagged=False):
    vs = ["v"] + [f"w{j}" for j in range(1, m + 1)]
    es = [(f"f{j}", "v", f"w{j}") for j in range(1, m + 1)]
    es += [(f"c{j}", f"w{j}", f"w{j}") for j in range(1, m + 1)]
    return graph_from_lists(vs, es, infinite=["v"] if flagged else [])


def e6_graph(ns, nl, flagged=False):
    vs = ["w"] + [f"s{i}" for i in range(1, ns + 1)] + [f"l{j}" for j in range(1, nl + 1)]
    es = [(f"a{i}", "w", f"s{i}") for i in range(1, ns + 1)]
    es += [(f"b{j}", "w", f"l{j}") for j in range(1, nl + 1)]
    es += [(f"c{j}", f"l{j}", f"l{j}") for j in range(1, nl + 1)]
    return graph_from_lists(vs, es, infinite=["w"] if flagged else [])


def rose_graph(k):
    return graph_from_lists(["v"], [(f"c{i}", "v", "v") for i in range(k)])


def f1_path_graph():
    return graph_from_lists(["a", "b", "c"], [("e", "a", "b"), ("f", "b", "c")])


def f2_graph():
    return graph_from_lists(["a", "b", "v"], [("e", "a", "v"), ("f", "b", "v")])


def f3_graph():
    return graph_from_lists(["a", "v"], [("e", "a", "v"), ("f", "a", "v")])


def random_field_elem(fld, rng):
    if fld.characteristic == 0:
        from fractions import Fraction

        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return rng.randrange(fld.p)


def random_element(alg: LeavittAlgebra, rng, max_weight=3, terms=4):
    monos = alg.basis_monomials(max_weight)
    picked = {}
    for _ in range(terms):
        m = monos[rng.randrange(len(monos))]
        picked[m] = random_field_elem(alg.field, rng)
    return alg.element(picked)


def corpus_graphs(max_v=4, max_e=5):
    """Every graph with <= max_v vertices and <= max_e edges, one canonical
    representative per relabeling class."""
    seen = set()
    out = []
    for nv in range(1, max_v + 1):
        pairs = [(i, j) for i in range(nv) for j in range(nv)]
        perms = list(permutations(range(nv)))
        for ne in range(0, max_e + 1):
            for combo in combinations_with_replacement(pairs, ne):
                canon = min(
                    tuple(sorted((pm[s], pm[d]) for (s, d) in combo)) for pm in perms
                )
                key = (nv, canon)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    return out


def build_corpus_graph(nv, edges):
    return graph_from_lists(
        [f"v{i}" for i in range(nv)],
        [(f"e{k}", f"v{s}", f"v{d}") for k, (s, d) in enumerate(edges)],
    )
