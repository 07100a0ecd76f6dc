#!/usr/bin/env python3
"""Regenerate src/poisson_tables.inc, the arity <= 3 structure constants of the Poisson operad.

Basis elements are evaluated on random polynomial functions on a symplectic space with the
canonical bracket; a composite is expanded in the target basis by exact linear solving over
several random evaluations. The bracket has even degree, so no Koszul signs appear.
"""
import itertools
import random
import sys
from pathlib import Path

import sympy as sp

Q = sp.symbols("q1:3")
P = sp.symbols("p1:3")
GENS = (*Q, *P)


def bracket(f, g):
    total = sp.Poly(0, *GENS, domain="QQ")
    for q, p in zip(Q, P):
        total += f.diff(q) * g.diff(p) - f.diff(p) * g.diff(q)
    return total


ONE = sp.Poly(1, *GENS, domain="QQ")

# name -> (arity, bracket count, evaluator on a list of functions)
BASIS = {
    "e": (0, 0, lambda f: ONE),
    "id": (1, 0, lambda f: f[0]),
    "μ": (2, 0, lambda f: f[0] * f[1]),
    "λ": (2, 1, lambda f: bracket(f[0], f[1])),
    "x1x2x3": (3, 0, lambda f: f[0] * f[1] * f[2]),
    "λ12x3": (3, 1, lambda f: bracket(f[0], f[1]) * f[2]),
    "λ13x2": (3, 1, lambda f: bracket(f[0], f[2]) * f[1]),
    "λ23x1": (3, 1, lambda f: bracket(f[1], f[2]) * f[0]),
    "λ(λ(x1,x2),x3)": (3, 2, lambda f: bracket(bracket(f[0], f[1]), f[2])),
    "λ(λ(x1,x3),x2)": (3, 2, lambda f: bracket(bracket(f[0], f[2]), f[1])),
}


def random_function(rng):
    mono = [1, *GENS]
    expr = sum(rng.randint(-3, 3) * a * b * c for a, b, c in itertools.combinations_with_replacement(mono, 3))
    return sp.Poly(expr, *GENS, domain="QQ")


def compose_value(x, i, y, f):
    m, n = BASIS[x][0], BASIS[y][0]
    inner = BASIS[y][2](f[i - 1 : i - 1 + n])
    args = f[: i - 1] + [inner] + f[i - 1 + n :]
    assert len(args) == m
    return BASIS[x][2](args)


def expand_in_basis(x, i, y, rng, samples=3):
    m, n = BASIS[x][0], BASIS[y][0]
    arity = m + n - 1
    degree = BASIS[x][1] + BASIS[y][1]
    targets = [name for name, (a, _, _) in BASIS.items() if a == arity]
    rows, rhs = [], []
    for _ in range(samples):
        f = [random_function(rng) for _ in range(arity)]
        lhs = compose_value(x, i, y, f).as_dict()
        cols = [BASIS[t][2](f).as_dict() for t in targets]
        for mono in set(lhs).union(*cols):
            rows.append([c.get(mono, 0) for c in cols])
            rhs.append(lhs.get(mono, 0))
    a = sp.Matrix(rows)
    b = sp.Matrix(rhs)
    if a.rank() != len(targets):
        raise RuntimeError(f"{x} o{i} {y}: evaluations do not separate the basis")
    sol = (a.T * a).LUsolve(a.T * b)
    if a * sol != b:
        raise RuntimeError(f"{x} o{i} {y}: composite is not in the span of the basis")
    terms = [(sol[k], t) for k, t in enumerate(targets) if sol[k] != 0]
    for _, t in terms:
        if BASIS[t][1] != degree:
            raise RuntimeError(f"{x} o{i} {y}: inhomogeneous result")
    return terms


def main():
    rng = random.Random(20240601)
    lines = ["// Generated by tools/regen_poisson_tables.py; do not edit.",
             "// {m, x, i, n, y, {{coefficient, result}, ...}}"]
    for x, (m, _, _) in BASIS.items():
        for y, (n, _, _) in BASIS.items():
            if m == 0 or m + n - 1 > 3:
                continue
            for i in range(1, m + 1):
                terms = expand_in_basis(x, i, y, rng)
                body = ", ".join(f'{{"{c}", "{t}"}}' for c, t in terms)
                lines.append(f'{{{m}, "{x}", {i}, {n}, "{y}", {{{body}}}}},')
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "src" / "poisson_tables.inc"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines) - 2} entries to {out}")


if __name__ == "__main__":
    main()
