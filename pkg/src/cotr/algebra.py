"""Finite-dimensional algebras over F_p, presented by quivers with relations.

The central object is :class:`FDAlgebra`: a basis, structure constants,
a unit, and (when available) a path presentation.  Multiplication uses
the function-composition convention throughout the package:

* for paths ``p``, ``q`` the product ``p * q`` means "first traverse
  ``q``, then ``p``" and is nonzero exactly when ``target(q) == source(p)``;
* consequently an arrow ``a : u -> w`` maps the ``u``-component of a left
  module into its ``w``-component.

Input files and user-facing path syntax use *traversal order* instead
(``a*b`` = a then b), which is the algebra product ``b . a``; the io layer
performs the flip so that humans write compositions the way they draw
them.

A path-algebra quotient is computed degreewise.  Relations must be
length-homogeneous (all terms of one relation share a length): the ideal
is then graded, so closing its span under arrow extensions and dropping
everything beyond ``length_bound`` computes the low-degree part exactly.
Mixed-length relations are rejected: for those the ideal need not be
admissible and degreewise truncation can certify a wrong dimension
(e.g. ``x*x + x*x*x`` on a loop).  Finite-dimensionality itself is
certified by checking that every maximal-length surviving path is
inextendable (otherwise :class:`NotFiniteDimensional`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    EnumerationTooLarge,
    InputError,
    InternalInvariantViolation,
    NotFiniteDimensional,
    UnsupportedPresentation,
)
from .linalg import PrimeField

PATH_ENUMERATION_CAP = 20000
FULL_ASSOCIATIVITY_DIM = 32


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise InputError(f"arrow {a.name} has an endpoint outside the vertex set")
        if set(names) & vs:
            raise InputError("arrow names must differ from vertex names")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise InputError(f"unknown arrow {name!r}")

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Path:
    """A path in traversal order: ``arrows[0]`` is walked first."""

    source: str
    target: str
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return f"e_{self.source}" if not self.arrows else "*".join(self.arrows)


def trivial_path(v: str) -> Path:
    return Path(v, v, ())


def traverse(p: Path, q: Path) -> Optional[Path]:
    """Walk ``p`` then ``q``; None when the endpoints do not match."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class Relation:
    """Sum of (coefficient, path-in-traversal-order) terms, all parallel."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def validate(self, quiver: Quiver, length_bound: int) -> list[tuple[int, Path]]:
        out: list[tuple[int, Path]] = []
        endpoints = None
        lengths = {len(names) for _, names in self.terms}
        if len(lengths) > 1:
            raise UnsupportedPresentation(
                "mixed-length relation: degreewise truncation is only exact "
                "for graded ideals, so each relation must be length-homogeneous"
            )
        for coeff, names in self.terms:
            if len(names) < 2:
                raise InputError("relation terms must be paths of length >= 2")
            if len(names) > length_bound:
                raise InputError("relation term longer than length_bound")
            arrows = [quiver.arrow(n) for n in names]
            for a, b in zip(arrows, arrows[1:]):
                if a.target != b.source:
                    raise InputError(f"relation path {'*'.join(names)} is not composable")
            p = Path(arrows[0].source, arrows[-1].target, tuple(names))
            if endpoints is None:
                endpoints = (p.source, p.target)
            elif endpoints != (p.source, p.target):
                raise InputError("relation terms are not parallel")
            out.append((coeff, p))
        return out


@dataclass
class PathPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    length_bound: int
    basis_paths: tuple[Path, ...]
    vertex_order: tuple[str, ...]

    def source_of(self, i: int) -> str:
        return self.basis_paths[i].source

    def target_of(self, i: int) -> str:
        return self.basis_paths[i].target

    @property
    def trivial_index(self) -> dict[str, int]:
        return {p.source: i for i, p in enumerate(self.basis_paths) if p.length == 0}

    @property
    def arrow_basis_index(self) -> dict[str, int]:
        return {p.arrows[0]: i for i, p in enumerate(self.basis_paths) if p.length == 1}

    @property
    def radical_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.basis_paths) if p.length >= 1)


@dataclass(eq=False)
class SummandData:
    """Orthogonal idempotents of an endomorphism algebra of an explicit
    direct sum whose summands all have scalar endomorphism rings and are
    pairwise non-isomorphic.  Enough to know the semisimple quotient."""

    labels: tuple[str, ...]
    idempotent_vectors: tuple[np.ndarray, ...]
    # diagonal_scalars[t] maps an algebra element vector to the scalar by
    # which it acts on the t-th simple; stored as a (dim,) functional row.
    diagonal_functionals: tuple[np.ndarray, ...]


@dataclass(eq=False)
class FDAlgebra:
    """Associative unital algebra given by structure constants.

    ``structure[i, j, k]`` is the coefficient of basis element ``k`` in
    the product ``b_i . b_j``.
    """

    field: PrimeField
    basis_labels: tuple[str, ...]
    structure: np.ndarray
    unit: np.ndarray
    idempotent_vectors: tuple[np.ndarray, ...] = ()
    generator_vectors: tuple[np.ndarray, ...] = ()
    presentation: Optional[PathPresentation] = None
    summand_data: Optional[SummandData] = None
    name: str = ""
    _opposite_cache: Optional["FDAlgebra"] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        d = self.dim
        if self.structure.shape != (d, d, d):
            raise InputError("structure constants have wrong shape")
        self.structure = self.field.reduce(self.structure)
        self.unit = self.field.reduce(self.unit)
        if not self.generator_vectors:
            self.generator_vectors = tuple(self.basis_vector(i) for i in range(d))
        self.check(full=d <= FULL_ASSOCIATIVITY_DIM)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure) % self.field.p

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        # (x . b_j) expanded over k
        return np.einsum("i,ijk->kj", x, self.structure) % self.field.p

    def right_mult_matrix(self, y: np.ndarray) -> np.ndarray:
        return np.einsum("j,ijk->ki", y, self.structure) % self.field.p

    def check(self, full: bool) -> None:
        p = self.field.p
        c = self.structure
        d = self.dim
        lu = np.einsum("i,ijk->jk", self.unit, c) % p
        ru = np.einsum("j,ijk->ik", self.unit, c) % p
        eye = np.eye(d, dtype=np.int64)
        if not np.array_equal(lu, eye) or not np.array_equal(ru, eye):
            raise InternalInvariantViolation("unit law fails")
        if full:
            t1 = np.tensordot(c, c, axes=([2], [0])) % p          # (i,j,k,l)
            t2 = np.tensordot(c, c, axes=([2], [1])) % p          # (j,k,i,l)
            t2 = np.transpose(t2, (2, 0, 1, 3))
            if not np.array_equal(t1, t2):
                raise InternalInvariantViolation("associativity fails on basis triples")
        else:
            rng = np.random.RandomState(0)
            for _ in range(64):
                i, j, k = rng.randint(0, d, size=3)
                lhs = self.multiply(self.multiply(self.basis_vector(i), self.basis_vector(j)), self.basis_vector(k))
                rhs = self.multiply(self.basis_vector(i), self.multiply(self.basis_vector(j), self.basis_vector(k)))
                if not np.array_equal(lhs, rhs):
                    raise InternalInvariantViolation("associativity fails on sampled triple")

    def opposite(self) -> "FDAlgebra":
        if self._opposite_cache is not None:
            return self._opposite_cache
        cop = np.ascontiguousarray(np.transpose(self.structure, (1, 0, 2)))
        pres = None
        if self.presentation is not None:
            pr = self.presentation
            rq = pr.quiver.reversed()
            rpaths = tuple(Path(p.target, p.source, tuple(reversed(p.arrows))) for p in pr.basis_paths)
            rrels = tuple(
                Relation(tuple((cf, tuple(reversed(names))) for cf, names in rel.terms))
                for rel in pr.relations
            )
            pres = PathPresentation(rq, rrels, pr.length_bound, rpaths, pr.vertex_order)
        opp = FDAlgebra(
            field=self.field,
            basis_labels=self.basis_labels,
            structure=cop,
            unit=self.unit.copy(),
            idempotent_vectors=tuple(v.copy() for v in self.idempotent_vectors),
            generator_vectors=tuple(v.copy() for v in self.generator_vectors),
            presentation=pres,
            summand_data=self.summand_data,
            name=f"op({self.name})" if self.name else "",
        )
        self._opposite_cache = opp
        opp._opposite_cache = self
        return opp

    def radical_basis_indices(self) -> tuple[int, ...]:
        if self.presentation is None:
            raise UnsupportedPresentation("radical needs a quiver presentation")
        return self.presentation.radical_indices


def path_algebra_quotient(
    field: PrimeField,
    quiver: Quiver,
    relations: tuple[Relation, ...] = (),
    length_bound: int = 12,
    name: str = "",
) -> FDAlgebra:
    """Quotient of the path algebra by the ideal the relations generate,
    with finite-dimensionality certified up to ``length_bound``."""

    # 1. enumerate paths, shortest first (order fixed for canonicity)
    paths: list[Path] = [trivial_path(v) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(length_bound):
        nxt: list[Path] = []
        for p in frontier:
            for a in quiver.arrows_from(p.target):
                q = Path(p.source, a.target, p.arrows + (a.name,))
                nxt.append(q)
        paths.extend(nxt)
        frontier = nxt
        if len(paths) > PATH_ENUMERATION_CAP:
            raise EnumerationTooLarge(
                f"more than {PATH_ENUMERATION_CAP} paths up to length {length_bound}"
            )
        if not frontier:
            break
    pindex = {(p.source, p.arrows): i for i, p in enumerate(paths)}
    n = len(paths)

    def pvec(items: list[tuple[int, Path]]) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for coeff, p in items:
            v[pindex[(p.source, p.arrows)]] += coeff
        return v % field.p

    # 2. span of the ideal, closed under arrow extensions on both sides;
    # terms pushed past length_bound are truncated (sound once the
    # maximal-length check below passes).
    seeds = [rel.validate(quiver, length_bound) for rel in relations]
    basis_rows: list[np.ndarray] = []
    span = np.zeros((0, n), dtype=np.int64)

    def add_vector(v: np.ndarray) -> bool:
        nonlocal span
        if not v.any():
            return False
        stacked = np.vstack([span, v])
        reduced = field.row_space_basis(stacked)
        if reduced.shape[0] == span.shape[0]:
            return False
        span = reduced
        return True

    work: list[np.ndarray] = []
    for terms in seeds:
        v = pvec(terms)
        if add_vector(v):
            work.append(v)

    while work:
        v = work.pop()
        supp = np.nonzero(v)[0]
        for a in quiver.arrows:
            apath = Path(a.source, a.target, (a.name,))
            for side in ("after", "before"):
                items: list[tuple[int, Path]] = []
                for idx in supp:
                    p = paths[idx]
                    q = traverse(p, apath) if side == "after" else traverse(apath, p)
                    if q is None or q.length > length_bound:
                        continue
                    items.append((int(v[idx]), q))
                if not items:
                    continue
                w = pvec(items)
                if add_vector(w):
                    work.append(w)

    reduced, pivots = field.rref(span)
    dead = set(pivots)
    survivors = [i for i in range(n) if i not in dead]

    # 3. certify nilpotency: every surviving maximal-length path that can
    # be extended would index an uncontrolled longer path.
    for i in survivors:
        p = paths[i]
        if p.length == length_bound and quiver.arrows_from(p.target):
            raise NotFiniteDimensional(
                f"path {p.label()} of length {length_bound} survives and is extendable; "
                "raise length_bound or add relations"
            )

    rows = reduced[: len(pivots)]

    def reduce_vec(v: np.ndarray) -> np.ndarray:
        if len(pivots) == 0:
            return v % field.p
        coeffs = v[pivots]
        return (v - coeffs @ rows) % field.p

    d = len(survivors)
    surv_pos = {g: t for t, g in enumerate(survivors)}
    structure = np.zeros((d, d, d), dtype=np.int64)
    for i, gi in enumerate(survivors):
        for j, gj in enumerate(survivors):
            # product b_i . b_j = "walk path_j, then path_i"
            t = traverse(paths[gj], paths[gi])
            if t is None or t.length > length_bound:
                continue
            v = reduce_vec(pvec([(1, t)]))
            for g in np.nonzero(v)[0]:
                structure[i, j, surv_pos[int(g)]] = v[g]

    basis_paths = tuple(paths[g] for g in survivors)
    labels = tuple(p.label() for p in basis_paths)
    unit = np.zeros(d, dtype=np.int64)
    idem = []
    gens = []
    for t, p in enumerate(basis_paths):
        if p.length == 0:
            unit[t] = 1
            e = np.zeros(d, dtype=np.int64)
            e[t] = 1
            idem.append(e)
            gens.append(e)
    for t, p in enumerate(basis_paths):
        if p.length == 1:
            g = np.zeros(d, dtype=np.int64)
            g[t] = 1
            gens.append(g)

    pres = PathPresentation(quiver, tuple(relations), length_bound, basis_paths, quiver.vertices)
    return FDAlgebra(
        field=field,
        basis_labels=labels,
        structure=structure,
        unit=unit,
        idempotent_vectors=tuple(idem),
        generator_vectors=tuple(gens),
        presentation=pres,
        name=name,
    )


def enveloping(r: FDAlgebra, s: FDAlgebra) -> FDAlgebra:
    """R tensor S^op; a module over it is an (R, S)-bimodule.

    Associativity is inherited from the factors (the structure constants
    are a tensor product), so only the sampled check runs.
    """
    if r.field.p != s.field.p:
        raise InputError("enveloping: fields differ")
    p = r.field.p
    ds = s.dim
    cs_op = np.transpose(s.structure, (1, 0, 2))
    c = np.einsum("ikm,jln->ijklmn", r.structure, cs_op) % p
    d = r.dim * ds
    c = c.reshape(d, d, d)
    labels = tuple(
        f"{lr}(x){ls}" for lr in r.basis_labels for ls in s.basis_labels
    )
    unit = np.kron(r.unit, s.unit) % p
    gens = tuple(np.kron(g, s.unit) % p for g in r.generator_vectors) + tuple(
        np.kron(r.unit, h) % p for h in s.generator_vectors
    )
    return FDAlgebra(
        field=r.field,
        basis_labels=labels,
        structure=c,
        unit=unit,
        idempotent_vectors=(),
        generator_vectors=gens,
        presentation=None,
        name=f"env({r.name},{s.name})",
    )


def radical(a: FDAlgebra) -> list[np.ndarray]:
    """Basis of the Jacobson radical, as element vectors.

    Quiver-presented: the length >= 1 paths.  Endomorphism algebras of a
    verified multiplicity-free direct sum: kernel of the diagonal-scalar
    functionals (the off-diagonal-plus-nilpotent part).
    """
    if a.presentation is not None:
        return [a.basis_vector(i) for i in a.presentation.radical_indices]
    if a.summand_data is not None:
        rows = np.vstack(a.summand_data.diagonal_functionals)
        ker = a.field.kernel_basis(rows)
        return [np.ascontiguousarray(ker[:, j]) for j in range(ker.shape[1])]
    raise UnsupportedPresentation("radical needs a quiver presentation or summand data")


_TRIVIAL_CACHE: dict[int, FDAlgebra] = {}


def trivial_algebra(field: PrimeField) -> FDAlgebra:
    """The ground field as a one-dimensional algebra (plain k-spaces).
    Cached per characteristic so vector spaces share one algebra object."""
    alg = _TRIVIAL_CACHE.get(field.p)
    if alg is None:
        q = Quiver(("pt",), ())
        alg = path_algebra_quotient(field, q, (), length_bound=1, name="k")
        _TRIVIAL_CACHE[field.p] = alg
    return alg


def matlis_dual_bimodule(a: FDAlgebra):
    """The linear dual of the regular bimodule: (x.f)(y) = f(yx) and
    (f.x)(y) = f(xy).  Returns a Bimodule over (a, a)."""
    from .modrep import Bimodule

    c = a.structure
    left = [np.ascontiguousarray(c[:, i, :]) % a.field.p for i in range(a.dim)]
    right = [np.ascontiguousarray(c[i, :, :]) % a.field.p for i in range(a.dim)]
    labels = tuple(f"{l}^" for l in a.basis_labels)
    return Bimodule.build(a, a, a.dim, left, right, name=f"D({a.name})", element_labels=labels)


def regular_bimodule(a: FDAlgebra):
    """The algebra as a bimodule over itself."""
    from .modrep import Bimodule

    c = a.structure
    left = [np.ascontiguousarray(c[i].T) % a.field.p for i in range(a.dim)]
    right = [np.ascontiguousarray(c[:, i, :].T) % a.field.p for i in range(a.dim)]
    return Bimodule.build(a, a, a.dim, left, right, name=f"reg({a.name})",
                          element_labels=a.basis_labels)
