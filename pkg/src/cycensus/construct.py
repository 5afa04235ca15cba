"""Constructors for every cataloged group family.

Groups are built one of three ways: directly from an index formula (cyclic
groups, semidirect products of cyclic groups), as permutation closures
(A4), or from a power-commutator presentation collected into a normal-form
table.  Every construction path ends in Group(), so each table is validated
against the group axioms before it is used.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from math import prod

import numpy as np

from .formulas import FamilySpec, spec_params
from .groups import Group, GroupError, build_from_generators
from .numtheory import (
    factorize,
    find_element_of_order,
    inverse_mod,
    is_prime,
    multiplicative_order,
    primes_upto,
)

# Largest group order any constructor will tabulate (an n x n table of
# 2-byte entries; 2000 keeps a single table at 8 MB).
CONSTRUCT_CAP = 2000


@dataclass(frozen=True)
class CatalogEntry:
    spec: FamilySpec
    group: Group
    canonical: bool = True
    collides_with: str | None = None


def _check_cap(n: int, what: str) -> None:
    if n > CONSTRUCT_CAP:
        raise GroupError(f"{what} of order {n} exceeds the construction cap {CONSTRUCT_CAP}")


# ---------------------------------------------------------------------------
# basic constructions


def cyclic(n: int, name: str = "") -> Group:
    """The cyclic group of order n."""
    if n < 1:
        raise ValueError("order must be positive")
    _check_cap(n, "cyclic group")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return Group(table, name=name or f"C{n}", generators=(1,) if n > 1 else ())


def direct_product(a: Group, b: Group, name: str = "") -> Group:
    """Direct product with lexicographic element indexing (x, y) -> x*|B| + y."""
    n = a.n * b.n
    _check_cap(n, "direct product")
    idx = np.arange(n)
    xa, xb = idx // b.n, idx % b.n
    table = a.table[np.ix_(xa, xa)].astype(np.int64) * b.n + b.table[np.ix_(xb, xb)]
    gens = None
    if a.generators is not None and b.generators is not None:
        gens = tuple(g * b.n for g in a.generators) + tuple(b.generators)
    return Group(table, name=name or f"{a.name}x{b.name}", generators=gens)


def direct_product_list(groups: list[Group], name: str = "") -> Group:
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    if name:
        out.name = name
    return out


def semidirect_cyclic(q: int, m: int, i: int, name: str = "") -> Group:
    """C_q semidirect C_m where the C_m generator conjugates a -> a^i.

    Elements are pairs (r, s) indexed r*m + s, multiplied by
    (r, s)(r', s') = (r + i^s r' mod q, s + s' mod m).
    """
    if q < 1 or m < 1:
        raise ValueError("orders must be positive")
    i %= q
    if math.gcd(i, q) != 1 or pow(i, m, q) != 1:
        raise GroupError(f"exponent {i} does not define an order-dividing-{m} action mod {q}")
    n = q * m
    _check_cap(n, "semidirect product")
    idx = np.arange(n)
    r, s = idx // m, idx % m
    ipow = np.array([pow(i, e, q) for e in range(m)], dtype=np.int64)
    table = ((r[:, None] + ipow[s][:, None] * r[None, :]) % q) * m + (s[:, None] + s[None, :]) % m
    gens = tuple(g for g in (m if q > 1 else None, 1 if m > 1 else None) if g)
    return Group(table, name=name or f"C{q}:C{m}(i={i})", generators=gens)


def automorphism_from_generator_images(g: Group, images: dict[int, int]) -> np.ndarray:
    """Extend generator images to the automorphism they induce.

    `images` maps each generator's element index to its intended image.
    The extension is computed along a breadth-first generator chain and then
    verified to be a bijective homomorphism; GroupError otherwise.
    """
    if g.generators is None:
        raise ValueError("group does not record a generating set")
    if set(images) != set(g.generators):
        raise ValueError("images must be given for exactly the recorded generators")
    n = g.n
    phi = np.full(n, -1, dtype=np.int64)
    phi[0] = 0
    queue = [0]
    seen = 1
    while queue and seen < n:
        nxt = []
        for v in queue:
            for gen, img in images.items():
                w = int(g.table[v, gen])
                if phi[w] < 0:
                    phi[w] = g.table[phi[v], img]
                    nxt.append(w)
                    seen += 1
        queue = nxt
    if seen < n:
        raise GroupError("the recorded generators do not generate the group")
    if not np.array_equal(np.sort(phi), np.arange(n)):
        raise GroupError("generator images do not extend to a bijection")
    if not np.array_equal(phi[g.table], g.table[np.ix_(phi, phi)]):
        raise GroupError("generator images do not extend to a homomorphism")
    return phi


def semidirect_by_automorphism(base: Group, m: int, phi: np.ndarray, name: str = "") -> Group:
    """`base` semidirect C_m, the C_m generator acting as the automorphism phi."""
    n = base.n * m
    _check_cap(n, "semidirect product")
    phi = np.asarray(phi, dtype=np.int64)
    if not np.array_equal(np.sort(phi), np.arange(base.n)):
        raise GroupError("phi is not a permutation of the base")
    if not np.array_equal(phi[base.table], base.table[np.ix_(phi, phi)]):
        raise GroupError("phi is not an automorphism of the base")
    powers = [np.arange(base.n)]
    for _ in range(m - 1):
        powers.append(phi[powers[-1]])
    if not np.array_equal(phi[powers[-1]], np.arange(base.n)):
        raise GroupError(f"phi^{m} is not the identity")
    pstack = np.stack(powers)
    idx = np.arange(n)
    x, s = idx // m, idx % m
    mapped = pstack[s[:, None], x[None, :]]
    table = base.table[x[:, None], mapped].astype(np.int64) * m + (s[:, None] + s[None, :]) % m
    gens = tuple(g * m for g in (base.generators or ())) + ((1,) if m > 1 else ())
    return Group(table, name=name, generators=gens)


# ---------------------------------------------------------------------------
# power-commutator presentations

Word = tuple[tuple[int, int], ...]


def _collect(word: list[tuple[int, int]], orders, powers, conjugates, budget: int) -> Word:
    """Rewrite a generator word into normal form by collection from the left.

    Normal form: strictly increasing generator indices, exponents within
    0 <= e < orders[g].  powers[g] rewrites g^orders[g]; conjugates[(j, i)]
    with j > i rewrites the move of g_i leftwards past g_j; generator pairs
    without a stated conjugation relation commute.
    """
    out = list(word)
    t = 0
    steps = 0
    while t < len(out):
        steps += 1
        if steps > budget:
            raise GroupError("collection diverged (rewrite budget exhausted)")
        g, e = out[t]
        if e == 0:
            del out[t]
            t = max(t - 1, 0)
            continue
        r = orders[g]
        if e >= r:
            qc, rem = divmod(e, r)
            repl = [(g, rem)] if rem else []
            repl.extend(list(powers.get(g, ())) * qc)
            out[t : t + 1] = repl
            t = max(t - 1, 0)
            continue
        if t + 1 < len(out):
            g2, e2 = out[t + 1]
            if g2 == g:
                out[t : t + 2] = [(g, e + e2)]
                t = max(t - 1, 0)
                continue
            if g2 < g:
                conj = conjugates.get((g, g2))
                if conj is None:
                    out[t], out[t + 1] = (g2, e2), (g, e)
                else:
                    repl = [(g2, 1)] + list(conj) * e
                    if e2 > 1:
                        repl.append((g2, e2 - 1))
                    out[t : t + 2] = repl
                t = max(t - 1, 0)
                continue
        t += 1
    return tuple(out)


def _validate_presentation(orders, powers, conjugates) -> None:
    k = len(orders)
    for g, r in enumerate(orders):
        if r < 2:
            raise ValueError(f"generator {g} must have relative order >= 2, got {r}")
    for g, w in powers.items():
        if not 0 <= g < k:
            raise ValueError(f"power rule for unknown generator {g}")
        for h, e in w:
            if not g < h < k:
                raise ValueError(f"power word for generator {g} may only use later generators")
            if e < 1:
                raise ValueError("word exponents must be positive")
    for key, w in conjugates.items():
        j, i = key
        if not 0 <= i < j < k:
            raise ValueError(f"conjugate key {key} must be (j, i) with j > i")
        for h, e in w:
            if not i < h < k:
                raise ValueError(f"conjugate word for {key} may only use generators after {i}")
            if e < 1:
                raise ValueError("word exponents must be positive")


def from_pc_presentation(
    orders: tuple[int, ...],
    powers: dict[int, Word] | None = None,
    conjugates: dict[tuple[int, int], Word] | None = None,
    name: str = "",
    budget: int = 500_000,
) -> Group:
    """Tabulate the group presented by power and conjugation rules.

    Generators g_0..g_{k-1}; normal form g_0^e0 ... g_{k-1}^e{k-1} with
    0 <= e_i < orders[i].  powers[i] gives the word equal to g_i^orders[i]
    (identity when omitted); conjugates[(j, i)] with j > i gives the word
    equal to g_i^-1 g_j g_i (g_i and g_j commute when omitted).

    Raises GroupError when collection diverges, when the realized table
    violates a group axiom, or when the closure misses the expected order.
    """
    orders = tuple(int(r) for r in orders)
    powers = {g: tuple(w) for g, w in (powers or {}).items()}
    conjugates = {k: tuple(w) for k, w in (conjugates or {}).items()}
    _validate_presentation(orders, powers, conjugates)
    k = len(orders)
    n = prod(orders)
    _check_cap(n, "presented group")

    def act(state: tuple[int, ...], g: int) -> tuple[int, ...]:
        word = [(h, e) for h, e in enumerate(state) if e] + [(g, 1)]
        collected = _collect(word, orders, powers, conjugates, budget)
        out = [0] * k
        last = -1
        for h, e in collected:
            if h <= last or not 0 <= e < orders[h]:
                raise GroupError("collection produced a non-normal word")
            out[h] = e
            last = h
        return tuple(out)

    try:
        grp = build_from_generators(n, k, act, tuple([0] * k), name=name)
    except GroupError as exc:
        raise GroupError(f"presentation does not define a group: {exc}") from exc
    if grp.n != n:
        raise GroupError(f"presentation closes at order {grp.n}, expected {n}")

    # re-check the defining relations inside the realized table
    gens = grp.generators
    assert gens is not None and len(gens) == k

    def eval_word(w: Word) -> int:
        acc = 0
        for h, e in w:
            acc = grp.mul(acc, grp.power(gens[h], e))
        return acc

    for g in range(k):
        if grp.power(gens[g], orders[g]) != eval_word(powers.get(g, ())):
            raise GroupError(f"power relation for generator {g} fails in the realized table")
    for (j, i), w in conjugates.items():
        lhs = grp.mul(grp.mul(grp.inverse(gens[i]), gens[j]), gens[i])
        if lhs != eval_word(w):
            raise GroupError(f"conjugation relation for {(j, i)} fails in the realized table")
    return grp


# ---------------------------------------------------------------------------
# named small families


def dihedral(n: int, name: str = "") -> Group:
    """Dihedral group of order 2n (rotations of order n plus reflections)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return cyclic(2, name=name or "D2")
    return semidirect_cyclic(n, 2, n - 1, name=name or f"D{2 * n}")


def quaternion8(name: str = "Q8") -> Group:
    return from_pc_presentation(
        (2, 4), powers={0: ((1, 2),)}, conjugates={(1, 0): ((1, 3),)}, name=name
    )


def alternating_4(name: str = "A4") -> Group:
    """Even permutations of four points, indexed in lexicographic order."""
    perms = [p for p in itertools.permutations(range(4)) if _parity(p) == 0]
    perms.sort()
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            table[i, j] = index[tuple(b[a[t]] for t in range(4))]
    return Group(table, name=name, generators=(index[(1, 0, 3, 2)], index[(1, 2, 0, 3)]))


def _parity(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def heisenberg(p: int, name: str = "") -> Group:
    """Nonabelian group of order p^3 and exponent p (odd p): upper
    unitriangular 3x3 matrices over F_p."""
    if not is_prime(p) or p == 2:
        raise ValueError("need an odd prime")
    return from_pc_presentation(
        (p, p, p),
        conjugates={(1, 0): ((1, 1), (2, p - 1))},
        name=name or f"heis{p**3}",
    )


def modular_prime_cube(p: int, name: str = "") -> Group:
    """Nonabelian group of order p^3 with a cyclic subgroup of index p (odd p)."""
    if not is_prime(p) or p == 2:
        raise ValueError("need an odd prime")
    return from_pc_presentation(
        (p, p * p),
        conjugates={(1, 0): ((1, inverse_mod(1 + p, p * p)),)},
        name=name or f"mod{p**3}",
    )


def nonab_pq(p: int, q: int, name: str = "") -> Group:
    """The nonabelian group of order p*q (requires p | q-1, p < q)."""
    _require_primes(p, q)
    i = find_element_of_order(q, p)
    if p == q or i is None or i == 1:
        raise GroupError(f"no nonabelian group of order {p}*{q}: need p | q-1")
    label = name or ("S3" if (p, q) == (2, 3) else f"D{2 * q}" if p == 2 else f"C{q}:C{p}")
    return semidirect_cyclic(q, p, i, name=label)


def p2q_g1(p: int, q: int, name: str = "") -> Group:
    """(C_q : C_p) x C_p, the direct product of the nonabelian pq group with C_p."""
    inner = nonab_pq(p, q)
    return direct_product(inner, cyclic(p), name=name or f"G1@p={p},q={q}")


def p2q_g2(p: int, q: int, name: str = "") -> Group:
    """C_q : C_{p^2} with an action of order p (so b^p is central)."""
    _require_primes(p, q)
    i = find_element_of_order(q, p)
    if p == q or i is None or i == 1:
        raise GroupError(f"no such group of order {p * p}*{q}: need p | q-1")
    return semidirect_cyclic(q, p * p, i, name=name or f"G2@p={p},q={q}")


def p2q_g3(p: int, q: int, name: str = "") -> Group:
    """C_q : C_{p^2} with a faithful action (requires p^2 | q-1)."""
    _require_primes(p, q)
    i = None if p == q else find_element_of_order(q, p * p)
    if i is None or multiplicative_order(i, q) != p * p:
        raise GroupError(f"no such group of order {p * p}*{q}: need p^2 | q-1")
    return semidirect_cyclic(q, p * p, i, name=name or f"G3@p={p},q={q}")


def _require_primes(*ns: int) -> None:
    for n in ns:
        if not is_prime(n):
            raise ValueError(f"{n} is not prime")


# ---------------------------------------------------------------------------
# groups of order p*q^2


def _matrix_perm(q: int, mat: tuple[tuple[int, int], tuple[int, int]]) -> np.ndarray:
    """The permutation the matrix induces on C_q x C_q (index v1*q + v2)."""
    idx = np.arange(q * q)
    v1, v2 = idx // q, idx % q
    w1 = (mat[0][0] * v1 + mat[0][1] * v2) % q
    w2 = (mat[1][0] * v1 + mat[1][1] * v2) % q
    return w1 * q + w2


def _irreducible_order_p_matrix(p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """A 2x2 matrix over F_q of order p with no eigenvalues in F_q.

    Realized as multiplication by an order-p element u + v*sqrt(c) of the
    quadratic extension, c a non-residue; v != 0 keeps it eigenvalue-free.
    """
    c = next(x for x in range(2, q) if pow(x, (q - 1) // 2, q) == q - 1)
    ident = ((1, 0), (0, 1))

    def matmul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(2)) % q for j in range(2))
            for i in range(2)
        )

    for v in range(1, q):
        for u in range(q):
            m = ((u, c * v % q), (v, u))
            acc = m
            for _ in range(p - 1):
                acc = matmul(acc, m)
            if acc == ident:
                return m
    raise GroupError(f"no order-{p} point in the quadratic extension of F_{q}")


def pq2_group(p: int, q: int, variant: str, name: str = "") -> Group:
    """The groups of order p*q^2 (p < q primes), by action variant.

    cyc:     C_{q^2} : C_p (needs p | q-1)
    scalar:  (C_q x C_q) : C_p, scalar action (needs p | q-1)
    diag:    (C_q x C_q) : C_p, action fixing one factor (needs p | q-1)
    eigen<j>:(C_q x C_q) : C_p, diagonal action with eigenvalue ratio
             lambda^(j-1) (needs p | q-1, odd p, 2 <= j <= p-1)
    irr:     (C_q x C_q) : C_p, irreducible action (needs odd p | q+1)
    """
    _require_primes(p, q)
    if p >= q:
        raise GroupError(f"variant constructions assume p < q, got p={p}, q={q}")
    label = name or f"PQ2{variant}@p={p},q={q}"
    if variant == "cyc":
        i = next((x for x in range(2, q * q) if math.gcd(x, q) == 1
                  and multiplicative_order(x, q * q) == p), None)
        if i is None:
            raise GroupError(f"no order-{p} unit mod {q}^2: need p | q-1")
        return semidirect_cyclic(q * q, p, i, name=label)
    lam = find_element_of_order(q, p)
    base = direct_product(cyclic(q), cyclic(q))
    if variant == "scalar":
        if lam is None or lam == 1:
            raise GroupError(f"scalar variant needs p | q-1")
        mat = ((lam, 0), (0, lam))
    elif variant == "diag":
        if lam is None or lam == 1:
            raise GroupError(f"diagonal variant needs p | q-1")
        mat = ((lam, 0), (0, 1))
    elif variant.startswith("eigen"):
        j = int(variant[5:])
        if lam is None or lam == 1 or p == 2:
            raise GroupError(f"eigen variant needs odd p | q-1")
        if not 2 <= j <= p - 1:
            raise GroupError(f"eigen ratio index must be in 2..p-1, got {j}")
        mat = ((lam, 0), (0, pow(lam, j, q)))
    elif variant == "irr":
        if p == 2 or (q + 1) % p:
            raise GroupError(f"irreducible variant needs odd p | q+1")
        mat = _irreducible_order_p_matrix(p, q)
    else:
        raise ValueError(f"unknown p*q^2 variant {variant!r}")
    return semidirect_by_automorphism(base, p, _matrix_perm(q, mat), name=label)


def pq2_variants(p: int, q: int) -> list[str]:
    """The variant names realizable for this (p, q), in catalog order."""
    out: list[str] = []
    if (q - 1) % p == 0:
        out += ["cyc", "scalar", "diag"]
        if p > 2:
            seen: set[int] = set()
            for j in range(2, p):
                rep = min(j, inverse_mod(j, p))
                if rep not in seen:
                    seen.add(rep)
                    out.append(f"eigen{rep}")
    elif p > 2 and (q + 1) % p == 0:
        out.append("irr")
    return out


# ---------------------------------------------------------------------------
# order 16 and odd p^4 families


def order16(i: int, name: str = "") -> Group:
    """The nonabelian groups of order 16 under their conventional numbering 6..14."""
    pres: dict[int, tuple] = {
        6: ((2, 4, 2), {}, {(1, 0): ((1, 3),)}),
        7: ((2, 4, 2), {0: ((1, 2),)}, {(1, 0): ((1, 3),)}),
        8: ((2, 2, 4), {}, {(1, 0): ((1, 1), (2, 2))}),
        9: ((2, 4, 2), {}, {(1, 0): ((1, 1), (2, 1))}),
        10: ((4, 4), {}, {(1, 0): ((1, 3),)}),
        11: ((2, 8), {}, {(1, 0): ((1, 5),)}),
        12: ((2, 8), {}, {(1, 0): ((1, 7),)}),
        13: ((2, 8), {}, {(1, 0): ((1, 3),)}),
        14: ((2, 8), {0: ((1, 4),)}, {(1, 0): ((1, 7),)}),
    }
    if i not in pres:
        raise ValueError(f"order-16 families are numbered 6..14, got {i}")
    orders, powers, conjugates = pres[i]
    return from_pc_presentation(orders, powers, conjugates, name=name or f"G{i}")


def p4_odd(p: int, roman: str, name: str = "") -> Group:
    """The ten nonabelian groups of order p^4 for an odd prime p.

    Labeled vi..xv following the conventional ordering; xii, xiii and xv
    need separate presentations at p = 3.
    """
    if not is_prime(p) or p == 2:
        raise ValueError("need an odd prime")
    label = name or f"G{roman}@p={p}"
    pp, ppp = p * p, p * p * p
    if roman == "vi":
        return from_pc_presentation(
            (p, ppp), conjugates={(1, 0): ((1, inverse_mod(1 + pp, ppp)),)}, name=label
        )
    if roman == "vii":
        return from_pc_presentation(
            (p, p, pp), conjugates={(1, 0): ((1, 1), (2, pp - p))}, name=label
        )
    if roman == "viii":
        return from_pc_presentation(
            (pp, pp), conjugates={(1, 0): ((1, inverse_mod(1 + p, pp)),)}, name=label
        )
    if roman == "ix":
        return from_pc_presentation(
            (p, pp, p), conjugates={(1, 0): ((1, inverse_mod(1 + p, pp)),)}, name=label
        )
    if roman == "x":
        return from_pc_presentation(
            (p, pp, p), conjugates={(1, 0): ((1, 1), (2, p - 1))}, name=label
        )
    if roman == "xi":
        return from_pc_presentation(
            (p, p, pp),
            conjugates={
                (1, 0): ((1, 1),),
                (2, 0): ((2, 1), (1, p - 1)),
                (2, 1): ((2, inverse_mod(1 + p, pp)),),
            },
            name=label,
        )
    if roman == "xii":
        if p == 3:
            return from_pc_presentation(
                (3, 3, 9),
                powers={0: ((2, 3),)},
                conjugates={(1, 0): ((1, 1),), (2, 0): ((2, 1), (1, 2)), (2, 1): ((2, 4),)},
                name=label,
            )
        return _p4_extension_of_modular(p, a_img=(1, 1), b_img=(1, p), name=label)
    if roman == "xiii":
        if p == 3:
            return from_pc_presentation(
                (3, 3, 9),
                powers={0: ((2, 6),)},
                conjugates={(1, 0): ((1, 1),), (2, 0): ((2, 1), (1, 2)), (2, 1): ((2, 4),)},
                name=label,
            )
        return _p4_extension_of_modular(p, a_img=(1, 1 + p), b_img=(1, 2 * p), name=label)
    if roman == "xiv":
        return from_pc_presentation(
            (p, p, p, p), conjugates={(1, 0): ((1, 1), (3, p - 1))}, name=label
        )
    if roman == "xv":
        if p == 3:
            return from_pc_presentation(
                (3, 3, 9),
                conjugates={(1, 0): ((1, 1), (2, 6)), (2, 0): ((2, 1), (1, 1))},
                name=label,
            )
        return from_pc_presentation(
            (p, p, p, p),
            conjugates={(1, 0): ((1, 1), (2, p - 1), (3, 1)), (2, 0): ((2, 1), (3, p - 1))},
            name=label,
        )
    raise ValueError(f"unknown order-p^4 family {roman!r}")


def _p4_extension_of_modular(p: int, a_img: tuple[int, int], b_img: tuple[int, int], name: str) -> Group:
    """Extend the modular group of order p^3 by an order-p automorphism.

    a_img/b_img give the images of the presentation generators as normal-form
    exponent pairs (e_b, e_a)."""
    base = modular_prime_cube(p)
    gens = base.generators
    assert gens is not None
    b_idx, a_idx = gens

    def elem(e_b: int, e_a: int) -> int:
        return base.mul(base.power(b_idx, e_b), base.power(a_idx, e_a))

    phi = automorphism_from_generator_images(
        base, {a_idx: elem(*a_img), b_idx: elem(*b_img)}
    )
    return semidirect_by_automorphism(base, p, phi, name=name)


# ---------------------------------------------------------------------------
# abelian products


def abelian_of_type(partitions: dict[int, tuple[int, ...]], name: str = "") -> Group:
    """Abelian group with the given per-prime partition types."""
    factors: list[int] = []
    for p in sorted(partitions):
        factors.extend(p**a for a in sorted(partitions[p], reverse=True))
    factors.sort(reverse=True)
    return direct_product_list([cyclic(f) for f in factors], name=name or abelian_label(partitions))


def abelian_label(partitions: dict[int, tuple[int, ...]]) -> str:
    factors: list[int] = []
    for p in sorted(partitions):
        factors.extend(p**a for a in partitions[p])
    factors.sort(reverse=True)
    return "x".join(f"C{f}" for f in factors)


def _partitions_of(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as descending tuples, lexicographically descending."""
    if n == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, maxpart: int, acc: tuple[int, ...]):
        if remaining == 0:
            out.append(acc)
            return
        for part in range(min(remaining, maxpart), 0, -1):
            rec(remaining - part, part, acc + (part,))

    rec(n, n, ())
    return out


# ---------------------------------------------------------------------------
# the catalog

# Orders whose isomorphism classes the catalog covers completely, as sorted
# prime-exponent shapes.
COMPLETE_SHAPES = {(), (1,), (2,), (3,), (4,), (1, 1), (2, 1)}


def order_shape(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorize(n).values(), reverse=True))


def order_coverage(n: int) -> str:
    """"complete" when the catalog contains every group of order n."""
    return "complete" if order_shape(n) in COMPLETE_SHAPES else "partial"


def catalog_plan(max_order: int) -> list[tuple[FamilySpec, object]]:
    """Every cataloged family of order <= max_order, with lazy builders.

    The catalog contains all groups of the completely covered order shapes
    (prime powers up to p^4, pq, p^2*q, p*q^2) plus all cyclic groups and
    the abelian products of the remaining listed shapes.
    """
    plan: list[tuple[FamilySpec, object]] = []

    def add(spec: FamilySpec, builder) -> None:
        plan.append((spec, builder))

    abelian_shapes = {(1,), (2,), (3,), (4,), (1, 1), (2, 1), (1, 1, 1)}
    for n in range(1, max_order + 1):
        fac = factorize(n)
        shape = order_shape(n)
        add(FamilySpec("CYCLIC", f"C{n}", n), lambda n=n: cyclic(n))
        if shape in abelian_shapes:
            primes = sorted(fac)
            per_prime = [_partitions_of(fac[p]) for p in primes]
            for combo in itertools.product(*per_prime):
                if all(len(parts) == 1 for parts in combo):
                    continue  # that is the cyclic group again
                partitions = dict(zip(primes, combo))
                label = abelian_label(partitions)
                elem = all(a == 1 for parts in combo for a in parts)
                tag = "ELEM_ABELIAN" if elem and len(primes) == 1 else "ABELIAN_PRODUCT"
                params = spec_params(
                    **{f"type{p}": "+".join(map(str, partitions[p])) for p in primes}
                )
                add(
                    FamilySpec(tag, label, n, params),
                    lambda partitions=partitions, label=label: abelian_of_type(partitions, name=label),
                )
        if shape == (1, 1):
            p, q = sorted(fac)
            if (q - 1) % p == 0:
                label = "S3" if (p, q) == (2, 3) else f"D{2 * q}" if p == 2 else f"C{q}:C{p}"
                add(
                    FamilySpec("NONAB_PQ", label, n, spec_params(p=p, q=q)),
                    lambda p=p, q=q: nonab_pq(p, q),
                )
        if shape == (2, 1):
            [(p, _)] = [(r, e) for r, e in fac.items() if e == 2]
            [(q, _)] = [(r, e) for r, e in fac.items() if e == 1]
            if p < q:
                # order p^2 * q with p the smaller prime
                if (q - 1) % p == 0:
                    add(
                        FamilySpec("P2Q_G1", f"G1@p={p},q={q}", n, spec_params(p=p, q=q)),
                        lambda p=p, q=q: p2q_g1(p, q),
                    )
                    add(
                        FamilySpec("P2Q_G2", f"G2@p={p},q={q}", n, spec_params(p=p, q=q)),
                        lambda p=p, q=q: p2q_g2(p, q),
                    )
                if (q - 1) % (p * p) == 0:
                    add(
                        FamilySpec("P2Q_G3", f"G3@p={p},q={q}", n, spec_params(p=p, q=q)),
                        lambda p=p, q=q: p2q_g3(p, q),
                    )
                if (p, q) == (2, 3):
                    add(FamilySpec("A4", "A4", 12), lambda: alternating_4())
            else:
                # order p * q^2 with p the smaller prime (swap names)
                p, q = q, p
                for variant in pq2_variants(p, q):
                    add(
                        FamilySpec(
                            "PQ2", f"PQ2{variant}@p={p},q={q}", n,
                            spec_params(p=p, q=q, variant=variant),
                        ),
                        lambda p=p, q=q, variant=variant: pq2_group(p, q, variant),
                    )
        if shape == (3,):
            [p] = fac
            if p == 2:
                add(FamilySpec("DIHEDRAL", "D8", n, spec_params(n=4)), lambda: dihedral(4))
                add(FamilySpec("QUATERNION8", "Q8", n), lambda: quaternion8())
            else:
                add(
                    FamilySpec("P3_HEISENBERG", f"heis{n}", n, spec_params(p=p)),
                    lambda p=p: heisenberg(p),
                )
                add(
                    FamilySpec("P3_MODULAR", f"mod{n}", n, spec_params(p=p)),
                    lambda p=p: modular_prime_cube(p),
                )
        if shape == (4,):
            [p] = fac
            if p == 2:
                for i in range(6, 15):
                    add(
                        FamilySpec("ORDER16", f"G{i}", n, spec_params(i=i)),
                        lambda i=i: order16(i),
                    )
            else:
                from .formulas import P4_ODD_ROMANS

                for roman in P4_ODD_ROMANS:
                    add(
                        FamilySpec(
                            "P4_ODD", f"G{roman}@p={p}", n, spec_params(p=p, roman=roman)
                        ),
                        lambda p=p, roman=roman: p4_odd(p, roman),
                    )
    return plan


def build_catalog(max_order: int) -> list[CatalogEntry]:
    """Realize the catalog, flagging fingerprint collisions.

    The constructions are pairwise non-isomorphic by design, so two entries
    sharing a fingerprint are a genuine collision of the invariants; both
    are kept and the later one points at the earlier."""
    entries: list[CatalogEntry] = []
    seen: dict[object, str] = {}
    for spec, builder in catalog_plan(max_order):
        group = builder()
        fp = group.fingerprint()
        first = seen.get(fp)
        if first is None:
            seen[fp] = spec.label
            entries.append(CatalogEntry(spec, group))
        else:
            entries.append(CatalogEntry(spec, group, canonical=False, collides_with=first))
    return entries


def catalog_for_order(n: int) -> list[CatalogEntry]:
    """Catalog entries of order exactly n."""
    entries = []
    seen: dict[object, str] = {}
    for spec, builder in catalog_plan(n):
        if spec.order != n:
            continue
        group = builder()
        fp = group.fingerprint()
        first = seen.get(fp)
        if first is None:
            seen[fp] = spec.label
            entries.append(CatalogEntry(spec, group))
        else:
            entries.append(CatalogEntry(spec, group, canonical=False, collides_with=first))
    return entries


# ---------------------------------------------------------------------------
# names

NAME_GRAMMAR = """\
C<n>                 cyclic, e.g. C12
C<a>xC<b>[xC<c>...]  products of cyclics, e.g. C4xC2
D<2n>                dihedral of order 2n (even), e.g. D8
Q8, A4, S3           the usual small groups
G6 .. G14            the nonabelian groups of order 16
G<roman>@p=<p>       odd p^4 families, roman vi..xv, e.g. Gxi@p=3
G1|G2|G3@p=<p>,q=<q> the nonabelian p^2*q families (A4 aside)
mod<p^3>             order-p^3 modular group, odd p, e.g. mod27
heis<p^3>            order-p^3 exponent-p group, odd p, e.g. heis27
C<q>:C<p>            nonabelian pq group, p | q-1, e.g. C7:C3
Z3:Z4                alias of G2@p=2,q=3
PQ2<variant>@p=,q=   p*q^2 families, variant cyc|scalar|diag|eigen<j>|irr\
"""


class UnknownGroupName(ValueError):
    """Raised when a group name does not parse; carries the grammar."""

    def __init__(self, message: str):
        super().__init__(f"{message}\navailable names:\n{NAME_GRAMMAR}")


def group_by_name(name: str) -> Group:
    """Construct a group from its catalog-style name.

    Whitespace is insignificant: "C4x C2" and "C4xC2" name the same group."""
    name = re.sub(r"\s+", "", name)
    if m := re.fullmatch(r"C(\d+)", name):
        n = int(m.group(1))
        if n < 1:
            raise UnknownGroupName(f"bad cyclic order in {name!r}")
        return cyclic(n)
    if re.fullmatch(r"C\d+(xC\d+)+", name):
        factors = sorted((int(t[1:]) for t in name.split("x")), reverse=True)
        if any(f < 1 for f in factors):
            raise UnknownGroupName(f"bad factor in {name!r}")
        label = "x".join(f"C{f}" for f in factors)
        return direct_product_list([cyclic(f) for f in factors], name=label)
    if m := re.fullmatch(r"D(\d+)", name):
        two_n = int(m.group(1))
        if two_n % 2 or two_n < 2:
            raise UnknownGroupName(f"dihedral names take the even group order, got {name!r}")
        return dihedral(two_n // 2)
    if name == "Q8":
        return quaternion8()
    if name == "A4":
        return alternating_4()
    if name == "S3":
        return nonab_pq(2, 3)
    if name == "Z3:Z4":
        return p2q_g2(2, 3, name="Z3:Z4")
    if m := re.fullmatch(r"G(\d+)", name):
        i = int(m.group(1))
        if not 6 <= i <= 14:
            raise UnknownGroupName(f"plain G<n> names cover the order-16 families G6..G14")
        return order16(i)
    if m := re.fullmatch(r"G(vi|vii|viii|ix|x|xi|xii|xiii|xiv|xv)@p=(\d+)", name):
        roman, p = m.group(1), int(m.group(2))
        if not is_prime(p) or p == 2:
            raise UnknownGroupName(f"{name!r} needs an odd prime p")
        return p4_odd(p, roman)
    if m := re.fullmatch(r"G([123])@p=(\d+),q=(\d+)", name):
        which, p, q = int(m.group(1)), int(m.group(2)), int(m.group(3))
        if not (is_prime(p) and is_prime(q)) or p == q:
            raise UnknownGroupName(f"{name!r} needs distinct primes p and q")
        try:
            return (p2q_g1, p2q_g2, p2q_g3)[which - 1](p, q)
        except GroupError as exc:
            raise UnknownGroupName(str(exc)) from exc
    if m := re.fullmatch(r"mod(\d+)", name):
        return _prime_cube_name(int(m.group(1)), modular_prime_cube, name)
    if m := re.fullmatch(r"heis(\d+)", name):
        return _prime_cube_name(int(m.group(1)), heisenberg, name)
    if m := re.fullmatch(r"C(\d+):C(\d+)", name):
        q, p = int(m.group(1)), int(m.group(2))
        if not (is_prime(p) and is_prime(q)):
            raise UnknownGroupName(f"colon names take primes, got {name!r}")
        try:
            return nonab_pq(p, q)
        except GroupError as exc:
            raise UnknownGroupName(str(exc)) from exc
    if m := re.fullmatch(r"PQ2([a-z]+\d*)@p=(\d+),q=(\d+)", name):
        variant, p, q = m.group(1), int(m.group(2)), int(m.group(3))
        if not (is_prime(p) and is_prime(q)):
            raise UnknownGroupName(f"{name!r} needs primes p and q")
        try:
            return pq2_group(p, q, variant)
        except (GroupError, ValueError) as exc:
            raise UnknownGroupName(str(exc)) from exc
    raise UnknownGroupName(f"cannot parse group name {name!r}")


def _prime_cube_name(n: int, builder, name: str) -> Group:
    fac = factorize(n)
    if len(fac) != 1 or list(fac.values()) != [3]:
        raise UnknownGroupName(f"{name!r} must name a prime cube")
    [p] = fac
    if p == 2:
        raise UnknownGroupName(f"{name!r} needs an odd prime (the order-8 cases are D8 and Q8)")
    return builder(p)
