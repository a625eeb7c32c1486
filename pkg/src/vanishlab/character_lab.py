"""Vanishing sets and proportions, two ways.

The oracle path builds the full character table by the class-algebra
eigenvector method: simultaneous eigenvectors of the class-sum matrices
over GF(p) for a prime p = 1 (mod exp G), p > 2*sqrt|G|, then exact
recovery of cyclotomic character values through multiplicity extraction.
The fast path evaluates induced linear characters on an abelian normal
subgroup.  Zero tests are exact everywhere; no floating point.

All outputs are immutable and calls are reentrant: per-group work shares
no mutable state, so corpus sweeps may run one group per worker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from . import _linalg_modp as lin
from .abelian_core import AbElement, DualCharacter, all_characters
from .cyclotomic import Cyclo, cyclotomic_polynomial, euler_phi, prime_factors
from .group_engine import (
    FiniteGroup,
    GroupDomainError,
    SubgroupHandle,
    AbelianModel,
    abelian_model,
)

EXACT_ORTHOGONALITY_FULL_LIMIT = 40
EXACT_ORTHOGONALITY_SAMPLES = 60


class TableConsistencyError(AssertionError):
    """A produced table failed an internal exactness check."""


class OracleConfigurationError(RuntimeError):
    """No admissible prime below the internal search bound."""


@dataclass(frozen=True)
class ClassData:
    reps: tuple
    sizes: tuple[int, ...]
    class_of: dict
    inverse_class: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.reps)


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    classes: ClassData
    rows: tuple  # one tuple of Cyclo values per irreducible, class-indexed
    degrees: tuple[int, ...]

    def value(self, i: int, g) -> Cyclo:
        return self.rows[i][self.classes.class_of[g]]

    def vanishing_classes(self) -> list[int]:
        return [
            k
            for k in range(self.classes.count)
            if any(row[k].is_zero() for row in self.rows)
        ]


@dataclass(frozen=True)
class VanishReport:
    group: FiniteGroup
    vanishing: frozenset
    nonvanishing: frozenset
    proportion: Fraction


def class_data(G: FiniteGroup) -> ClassData:
    cached = getattr(G, "_class_data", None)
    if cached is not None:
        return cached
    classes, class_of = G.conjugacy_data
    reps = tuple(rep for rep, _ in classes)
    sizes = tuple(len(c) for _, c in classes)
    inverse_class = tuple(class_of[G.inv(rep)] for rep in reps)
    data = ClassData(reps, sizes, class_of, inverse_class)
    G._class_data = data
    return data


# -- prime selection -----------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def dixon_prime(group_order: int, exponent: int) -> int:
    """Smallest p = 1 (mod exponent) with p > 2*sqrt(group_order)."""
    bound = 2 * isqrt(group_order) + 1
    p = exponent + 1
    while True:
        if p > bound and _is_prime(p):
            return p
        p += exponent
        if p > 10**7:
            raise OracleConfigurationError("no admissible prime below 10^7")


def _primitive_root(p: int) -> int:
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise OracleConfigurationError(f"no primitive root mod {p}")


# -- class-sum matrices --------------------------------------------------


def _class_matrix(G: FiniteGroup, data: ClassData, i: int) -> np.ndarray:
    """M_i with (M_i)[j, k] = #{(x, y) in C_i x C_j : x y = rep_k}; every
    joint eigenvector u satisfies M_i u = omega_i u."""
    r = data.count
    M = np.zeros((r, r), dtype=np.int64)
    class_i = G.conjugacy_classes[i][1]
    for x in class_i:
        xi = G.inv(x)
        for k, z in enumerate(data.reps):
            j = data.class_of[G.mul(xi, z)]
            M[j, k] += 1
    return M


def _split_eigenspaces(G: FiniteGroup, data: ClassData, p: int) -> list[np.ndarray]:
    """1-dimensional joint eigenspaces of the class-sum matrices mod p,
    splitting with matrices in increasing class-size order."""
    r = data.count
    spaces = [np.eye(r, dtype=np.int64)]
    order = sorted(range(1, r), key=lambda i: (data.sizes[i], i))
    for i in order:
        if all(B.shape[1] == 1 for B in spaces):
            break
        M = _class_matrix(G, data, i) % p
        nxt = []
        for B in spaces:
            d = B.shape[1]
            if d == 1:
                nxt.append(B)
                continue
            R = lin.solve(B, lin.matmul(M, B, p), p)
            roots = lin.poly_roots(lin.minimal_polynomial(R, p), p)
            split_dim = 0
            for lam in roots:
                ker = lin.nullspace((R - lam * np.eye(d, dtype=np.int64)) % p, p)
                if ker.shape[1]:
                    nxt.append(lin.matmul(B, ker, p))
                    split_dim += ker.shape[1]
            if split_dim != d:
                raise TableConsistencyError("class matrix not diagonalizable mod p")
        spaces = nxt
    if not all(B.shape[1] == 1 for B in spaces):
        raise TableConsistencyError("joint eigenspaces did not separate")
    return [B[:, 0] for B in spaces]


@lru_cache(maxsize=32)
def _zeta_power_table(e: int, p: int, z: int) -> np.ndarray:
    """Z[l, j] = z^(-j l) mod p; multiplicities come from V @ Z."""
    zinv = pow(z, -1, p)
    out = np.zeros((e, e), dtype=np.int64)
    powers = np.array([pow(zinv, j, p) for j in range(e)], dtype=np.int64)
    cur = np.ones(e, dtype=np.int64)
    for l in range(e):
        out[l] = cur
        cur = (cur * powers) % p
    return out


def dixon_table(G: FiniteGroup) -> CharacterTable:
    cached = getattr(G, "_dixon_table", None)
    if cached is not None:
        return cached
    data = class_data(G)
    r = data.count
    n = G.order
    if n == 1:
        table = CharacterTable(G, data, ((Cyclo.one(),),), (1,))
        G._dixon_table = table
        return table
    e = G.exponent
    p = dixon_prime(n, e)
    vectors = _split_eigenspaces(G, data, p)
    if len(vectors) != r:
        raise TableConsistencyError("eigenvector count differs from class count")

    sizes = np.array(data.sizes, dtype=np.int64)
    size_inv = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    n_mod = n % p

    theta_rows = []
    degrees = []
    for u in vectors:
        u = u % p
        if u[0] % p == 0:
            raise TableConsistencyError("eigenvector vanishes at the identity class")
        u = (u * pow(int(u[0]), -1, p)) % p
        s = int(np.sum(u * u[list(data.inverse_class)] % p * size_inv % p) % p)
        target = n_mod * pow(s, -1, p) % p
        degree = next(
            (d for d in range(1, isqrt(n) + 1) if d * d % p == target), None
        )
        if degree is None:
            raise TableConsistencyError("no admissible character degree")
        theta = degree * u % p * size_inv % p
        theta_rows.append(theta)
        degrees.append(degree)

    if sum(d * d for d in degrees) != n:
        raise TableConsistencyError("degrees do not satisfy sum of squares = |G|")

    # power map: class of rep_k^l for l = 0..e-1
    power_class = np.zeros((r, e), dtype=np.int64)
    for k, rep in enumerate(data.reps):
        x = G.identity
        for l in range(e):
            power_class[k, l] = data.class_of[x]
            x = G.mul(x, rep)

    z = pow(_primitive_root(p), (p - 1) // e, p)
    Z = _zeta_power_table(e, p, z)
    e_inv = pow(e, -1, p)

    rows = []
    for theta in theta_rows:
        V = theta[power_class]  # (r, e): theta at rep_k^l
        mult = lin.matmul(V, Z, p) * e_inv % p  # (r, e) multiplicities
        if np.any(mult >= p // 2):
            raise TableConsistencyError("multiplicity lift out of range")
        row = tuple(Cyclo.from_poly(e, [int(c) for c in mk]) for mk in mult)
        rows.append(row)

    order_key = sorted(
        range(r),
        key=lambda i: (degrees[i], tuple((v.order, v.coeffs) for v in rows[i])),
    )
    rows = tuple(rows[i] for i in order_key)
    degrees = tuple(degrees[i] for i in order_key)
    theta_sorted = np.stack([theta_rows[i] for i in order_key])

    for i, row in enumerate(rows):
        if row[0] != Cyclo.from_int(degrees[i]):
            raise TableConsistencyError("identity column disagrees with degree")

    table = CharacterTable(G, data, rows, degrees)
    _verify_orthogonality(table, theta_sorted, p)
    G._dixon_table = table
    return table


def _verify_orthogonality(table: CharacterTable, theta: np.ndarray, p: int):
    """Both orthogonality relations mod p in full, and exactly over the
    cyclotomic integers (in full for small tables, sampled above)."""
    data = table.classes
    r = data.count
    n = table.group.order
    sizes = np.array(data.sizes, dtype=np.int64)
    conj_cols = list(data.inverse_class)

    gram = lin.matmul(theta * sizes % p, theta[:, conj_cols].T, p)
    if np.any(gram != (n % p) * np.eye(r, dtype=np.int64)):
        raise TableConsistencyError("first orthogonality fails mod p")
    col = lin.matmul(theta.T, theta[:, conj_cols], p)
    for k in range(r):
        expect = n // int(sizes[k]) % p
        if int(col[k, k]) != expect or np.any(col[k, : k] != 0):
            raise TableConsistencyError("column orthogonality fails mod p")

    if r <= EXACT_ORTHOGONALITY_FULL_LIMIT:
        row_pairs = list(itertools.combinations_with_replacement(range(r), 2))
        col_pairs = row_pairs
    else:
        rng = np.random.default_rng(0xD1EC)
        row_pairs = [(i, i) for i in range(0, r, max(1, r // 10))]
        row_pairs += [
            tuple(sorted(rng.integers(0, r, 2).tolist()))
            for _ in range(EXACT_ORTHOGONALITY_SAMPLES)
        ]
        col_pairs = row_pairs

    for i, j in row_pairs:
        acc = Cyclo.zero()
        for k in range(r):
            acc = acc + Cyclo.from_int(int(sizes[k])) * table.rows[i][k] * table.rows[j][k].conj()
        expect = Cyclo.from_int(n if i == j else 0)
        if acc != expect:
            raise TableConsistencyError("first orthogonality fails exactly")
    for k, l in col_pairs:
        acc = Cyclo.zero()
        for i in range(r):
            acc = acc + table.rows[i][k] * table.rows[i][l].conj()
        expect = Cyclo.from_int(n // int(sizes[k]) if k == l else 0)
        if acc != expect:
            raise TableConsistencyError("column orthogonality fails exactly")


# -- vanishing reports ---------------------------------------------------


def proportion(G: FiniteGroup) -> VanishReport:
    if G.is_abelian:
        return VanishReport(
            G, frozenset(), frozenset(G.elements), Fraction(0)
        )
    table = dixon_table(G)
    data = table.classes
    vanishing = set()
    for k in table.vanishing_classes():
        vanishing |= G.conjugacy_classes[k][1]
    nonvanishing = frozenset(set(G.elements) - vanishing)
    return VanishReport(
        G,
        frozenset(vanishing),
        nonvanishing,
        Fraction(len(vanishing), G.order),
    )


# -- the abelian-normal fast path ----------------------------------------


def coset_transversal(G: FiniteGroup, A: SubgroupHandle) -> list:
    seen = set()
    reps = []
    for g in G.elements:
        if g in seen:
            continue
        reps.append(g)
        seen |= {G.mul(g, a) for a in A.elements}
    return reps


def induced_linear_value(
    alpha: DualCharacter,
    a: AbElement,
    model: AbelianModel,
    transversal=None,
) -> Cyclo:
    """alpha^G(a) = sum over coset representatives t of alpha(a^t).

    The value does not depend on the transversal choice because a lies in
    the abelian normal subgroup the characters live on.
    """
    G = model.subgroup.parent
    if alpha.group != model.shape or a.group != model.shape:
        raise GroupDomainError("character and element must live on the model")
    if transversal is None:
        transversal = coset_transversal(G, model.subgroup)
    g = model.group_element(a)
    total = Cyclo.zero()
    for t in transversal:
        conj = G.conj(g, t)
        total = total + alpha(model.element(conj))
    return total


@lru_cache(maxsize=64)
def _reduction_matrix(L: int) -> np.ndarray:
    """Row j = coefficients of x^j mod Phi_L, for exact vectorized zero
    tests of exponent-count vectors."""
    phi = euler_phi(L)
    out = np.zeros((L, phi), dtype=np.int64)
    for j in range(L):
        coeffs = [0] * (j + 1)
        coeffs[j] = 1
        out[j] = Cyclo.from_poly(L, coeffs).coeffs
    return out


def vanish_on_abelian_normal(G: FiniteGroup, A: SubgroupHandle) -> frozenset:
    """{a in A : some linear character of A induces to zero at a}, which
    is V(G) intersected with A."""
    if A.parent is not G:
        raise GroupDomainError("subgroup of a different group")
    if not A.is_abelian():
        raise GroupDomainError("fast path requires an abelian subgroup")
    if not A.is_normal():
        raise GroupDomainError("fast path requires a normal subgroup")
    model = abelian_model(A)
    shape = model.shape
    L = max(shape.exponent, 1)
    if L == 1:
        return frozenset()
    transversal = coset_transversal(G, A)
    nT = len(transversal)

    # weight matrix: column per character, exponent of its value at a
    # coordinate vector via a dot product mod L
    weights = np.array(
        [
            [(L // d) * c for c, d in zip(alpha.coords, shape.factor_orders)]
            for alpha in all_characters(shape)
        ],
        dtype=np.int64,
    ).T  # (rank, #characters)
    reduction = _reduction_matrix(L)

    out = set()
    for g in A.elements:
        coords = np.array(
            [model.to_coords[G.conj(g, t)] for t in transversal], dtype=np.int64
        )  # (nT, rank)
        if coords.size == 0:
            exps = np.zeros((nT, weights.shape[1]), dtype=np.int64)
        else:
            exps = coords @ weights % L  # (nT, #characters)
        counts = np.zeros((weights.shape[1], L), dtype=np.int64)
        for t in range(nT):
            np.add.at(counts, (np.arange(weights.shape[1]), exps[t]), 1)
        reduced = counts @ reduction  # exact: entries stay tiny
        if np.any(np.all(reduced == 0, axis=1)):
            out.add(g)
    return frozenset(out)
