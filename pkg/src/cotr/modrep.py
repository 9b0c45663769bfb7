"""Modules, morphisms and bimodules over a finite-dimensional algebra.

Everything is a left module presented by action matrices: ``action[i]``
is the matrix of the i-th algebra basis element, acting on column
vectors.  Right modules appear as left modules over the opposite
algebra; bimodules store both actions and can be flattened to a module
over the enveloping algebra.

The subquotient calculus fixes one convention worth stating: a
submodule is carried by a column-basis matrix ``B`` (dim x s), its
module structure by coordinates in that basis, and all emitted witness
morphisms are the literal inclusion/projection matrices.  Bases come
from rref-canonical kernels and images, so every construction here is
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .algebra import FDAlgebra, SummandData, enveloping
from .algebra import radical as algebra_radical
from .errors import (
    EnumerationTooLarge,
    InputError,
    InternalInvariantViolation,
    LiftingFailed,
    SearchExhausted,
    UnsupportedPresentation,
)

FULL_MODULE_CHECK_BUDGET = 2 * 10**8
HOM_SPACE_DIM_CAP = 4200  # nm above this would allocate >140MB per kron


@dataclass(eq=False)
class Module:
    algebra: FDAlgebra
    action: np.ndarray  # (algebra.dim, dim, dim)
    name: str = ""
    vertex_dims: Optional[dict[str, int]] = field(default=None, compare=False)

    def __post_init__(self):
        p = self.algebra.field.p
        d = self.algebra.dim
        if self.action.ndim != 3 or self.action.shape[0] != d or self.action.shape[1] != self.action.shape[2]:
            raise InputError("module action has wrong shape")
        self.action = self.action % p
        self._check()

    def _check(self):
        p = self.algebra.field.p
        d, m = self.algebra.dim, self.dim
        if m == 0:
            return
        unit_act = np.einsum("i,ijk->jk", self.algebra.unit, self.action) % p
        if not np.array_equal(unit_act, np.eye(m, dtype=np.int64)):
            raise InputError("unit does not act as identity")
        c = self.algebra.structure
        if d * d * m * m * m <= FULL_MODULE_CHECK_BUDGET:
            for i in range(d):
                lhs = (self.action[i] @ self.action) % p              # (d, m, m)
                rhs = np.tensordot(c[i], self.action, axes=([1], [0])) % p
                if not np.array_equal(lhs, rhs):
                    raise InputError(f"action violates structure constants at row {i}")
        else:
            rng = np.random.RandomState(1)
            for _ in range(96):
                i, j = rng.randint(0, d, size=2)
                lhs = (self.action[i] @ self.action[j]) % p
                rhs = np.einsum("k,kab->ab", c[i, j], self.action) % p
                if not np.array_equal(lhs, rhs):
                    raise InputError("action violates structure constants (sampled)")

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self):
        return self.algebra.field

    def act(self, x: np.ndarray) -> np.ndarray:
        """Matrix of the algebra element x on this module."""
        return np.einsum("i,ijk->jk", x % self.field.p, self.action) % self.field.p

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        tag = self.name or "module"
        return f"<{tag}: dim {self.dim} over {self.algebra.name or 'algebra'}>"


def zero_module(a: FDAlgebra, name: str = "0") -> Module:
    return Module(a, np.zeros((a.dim, 0, 0), dtype=np.int64), name=name)


def regular_module(a: FDAlgebra) -> Module:
    """The algebra as a left module over itself."""
    act = np.stack([np.ascontiguousarray(a.structure[i].T) for i in range(a.dim)])
    return Module(a, act, name=f"reg({a.name})" if a.name else "reg")


def free_module(a: FDAlgebra, k: int) -> Module:
    mods = [regular_module(a) for _ in range(k)]
    if not mods:
        return zero_module(a)
    return direct_sum(mods)[0]


@dataclass(eq=False)
class Morphism:
    source: Module
    target: Module
    matrix: np.ndarray  # (target.dim, source.dim)

    def __post_init__(self):
        p = self.source.field.p
        if self.source.algebra is not self.target.algebra:
            raise InputError("morphism endpoints live over different algebras")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise InputError("morphism matrix has wrong shape")
        self.matrix = self.matrix % p
        f = self.matrix
        lhs = (f @ self.source.action) % p          # (d, n, m) batched
        rhs = (self.target.action @ f) % p
        if not np.array_equal(lhs, rhs):
            raise InputError("matrix does not intertwine the actions")

    @property
    def field(self):
        return self.source.field

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other."""
        if other.target.dim != self.source.dim:
            raise InputError("compose: dimension mismatch")
        return Morphism(other.source, self.target, (self.matrix @ other.matrix) % self.field.p)

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, (self.matrix + other.matrix) % self.field.p)

    def scale(self, c: int) -> "Morphism":
        return Morphism(self.source, self.target, (self.matrix * c) % self.field.p)

    def rank(self) -> int:
        return self.field.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def inverse(self) -> "Morphism":
        if not self.is_isomorphism():
            raise InputError("inverse of a non-isomorphism")
        return Morphism(self.target, self.source, self.field.invert(self.matrix))

    def is_zero(self) -> bool:
        return not self.matrix.any()


def identity_morphism(m: Module) -> Morphism:
    return Morphism(m, m, np.eye(m.dim, dtype=np.int64))


def zero_morphism(src: Module, tgt: Module) -> Morphism:
    return Morphism(src, tgt, np.zeros((tgt.dim, src.dim), dtype=np.int64))


@dataclass(eq=False)
class ShortExactSequence:
    left: Module
    middle: Module
    right: Module
    incl: Morphism
    proj: Morphism

    def __post_init__(self):
        fld = self.middle.field
        if not self.incl.is_injective():
            raise InternalInvariantViolation("SES: inclusion not injective")
        if not self.proj.is_surjective():
            raise InternalInvariantViolation("SES: projection not surjective")
        if (self.proj.matrix @ self.incl.matrix % fld.p).any():
            raise InternalInvariantViolation("SES: composite nonzero")
        if self.left.dim + self.right.dim != self.middle.dim:
            raise InternalInvariantViolation("SES: dimensions do not add up")


# -- subobjects ---------------------------------------------------------


def submodule(m: Module, basis_cols: np.ndarray, name: str = "") -> tuple[Module, Morphism]:
    """Module structure on the span of ``basis_cols`` plus its inclusion.
    The columns must be linearly independent and the span action-invariant."""
    fld = m.field
    s = basis_cols.shape[1]
    if s and fld.rank(basis_cols) != s:
        raise InputError("submodule: dependent basis columns")
    acts = np.zeros((m.algebra.dim, s, s), dtype=np.int64)
    for i in range(m.algebra.dim):
        moved = (m.action[i] @ basis_cols) % fld.p
        coords = fld.solve(basis_cols, moved)
        if coords is None:
            raise InputError("submodule: span is not action-invariant")
        acts[i] = coords
    sub = Module(m.algebra, acts, name=name)
    incl = Morphism(sub, m, basis_cols.copy())
    return sub, incl


def quotient_by(m: Module, basis_cols: np.ndarray, name: str = "") -> tuple[Module, Morphism]:
    """Quotient of m by the (invariant) span of ``basis_cols``, with the
    canonical projection in complementary standard coordinates."""
    fld = m.field
    s = basis_cols.shape[1] if basis_cols.size else 0
    if s == 0:
        q = Module(m.algebra, m.action.copy(), name=name)
        return q, Morphism(m, q, np.eye(m.dim, dtype=np.int64))
    comp = fld.complement_pivots(basis_cols, m.dim)
    full = np.hstack([basis_cols, np.eye(m.dim, dtype=np.int64)[:, comp]])
    inv = fld.invert(full)
    proj = inv[s:, :]                         # kills the submodule block
    section = full[:, s:]
    acts = np.zeros((m.algebra.dim, len(comp), len(comp)), dtype=np.int64)
    for i in range(m.algebra.dim):
        acts[i] = (proj @ m.action[i] @ section) % fld.p
    q = Module(m.algebra, acts, name=name)
    return q, Morphism(m, q, proj)


def subquotient(f: Morphism, kind: str) -> tuple[Module, Morphism]:
    """kernel/image (with inclusion) or cokernel (with projection) of f."""
    fld = f.field
    if kind == "kernel":
        return submodule(f.source, fld.kernel_basis(f.matrix))
    if kind == "image":
        return submodule(f.target, fld.image_basis(f.matrix))
    if kind == "cokernel":
        return quotient_by(f.target, fld.image_basis(f.matrix))
    raise InputError(f"unknown subquotient kind {kind!r}")


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    return subquotient(f, "kernel")


def image(f: Morphism) -> tuple[Module, Morphism]:
    return subquotient(f, "image")


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    return subquotient(f, "cokernel")


def coimage_factorization(f: Morphism) -> tuple[Module, Morphism, Morphism]:
    """Image I with inclusion I -> target and corestriction source -> I,
    composing back to f."""
    img, incl = image(f)
    fld = f.field
    core = fld.solve(incl.matrix, f.matrix)
    if core is None:
        raise InternalInvariantViolation("image basis does not span the image")
    return img, incl, Morphism(f.source, img, core)


def direct_sum(mods: Sequence[Module]) -> tuple[Module, list[Morphism], list[Morphism]]:
    """Block-diagonal sum with inclusions and projections."""
    if not mods:
        raise InputError("direct_sum of nothing (algebra unknown)")
    a = mods[0].algebra
    for m in mods:
        if m.algebra is not a:
            raise InputError("direct_sum: mixed algebras")
    total = sum(m.dim for m in mods)
    acts = np.zeros((a.dim, total, total), dtype=np.int64)
    off = 0
    offsets = []
    for m in mods:
        offsets.append(off)
        acts[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    out = Module(a, acts, name="(+)".join(m.name for m in mods if m.name))
    incls, projs = [], []
    for m, off in zip(mods, offsets):
        e = np.zeros((total, m.dim), dtype=np.int64)
        e[off : off + m.dim] = np.eye(m.dim, dtype=np.int64)
        incls.append(Morphism(m, out, e))
        projs.append(Morphism(out, m, e.T))
    return out, incls, projs


def morphism_direct_sum(fs: Sequence[Morphism]) -> Morphism:
    src, s_in, _ = direct_sum([f.source for f in fs])
    tgt, t_in, _ = direct_sum([f.target for f in fs])
    total = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    ro = co = 0
    for f in fs:
        total[ro : ro + f.target.dim, co : co + f.source.dim] = f.matrix
        ro += f.target.dim
        co += f.source.dim
    return Morphism(src, tgt, total)


# -- Hom spaces ---------------------------------------------------------


def hom_space(m: Module, n: Module) -> list[Morphism]:
    """Basis of Hom(m, n), via the intertwining equations against the
    algebra's generators (unit and products come for free).

    Cached on the source; the stored reference to ``n`` keeps its id
    from being recycled.  The returned list is a fresh copy, the basis
    morphisms are shared.
    """
    if m.algebra is not n.algebra:
        raise InputError("hom_space: different algebras")
    cache = getattr(m, "_hom_cache", None)
    if cache is None:
        cache = m._hom_cache = {}
    hit = cache.get(id(n))
    if hit is not None and hit[0] is n:
        return list(hit[1])
    fld = m.field
    md, nd = m.dim, n.dim
    if md == 0 or nd == 0:
        return []
    if nd * md > HOM_SPACE_DIM_CAP:
        raise EnumerationTooLarge(
            f"hom space system of size {nd * md} exceeds the dense-solver budget"
        )
    basis: Optional[np.ndarray] = None  # (nd*md, k) columns
    eye_n = np.eye(nd, dtype=np.int64)
    eye_m = np.eye(md, dtype=np.int64)
    for g in m.algebra.generator_vectors:
        a_g = m.act(g)
        b_g = n.act(g)
        # F a_g - b_g F = 0, row-major vec: (I (x) a_g^T - b_g (x) I) vec F
        sys = (np.kron(eye_n, a_g.T) - np.kron(b_g, eye_m)) % fld.p
        if basis is None:
            basis = fld.kernel_basis(sys)
        else:
            if basis.shape[1] == 0:
                break
            reduced = (sys @ basis) % fld.p
            basis = (basis @ fld.kernel_basis(reduced)) % fld.p
    assert basis is not None
    out = [Morphism(m, n, basis[:, j].reshape(nd, md)) for j in range(basis.shape[1])]
    cache[id(n)] = (n, out)
    return list(out)


def hom_coordinates(hom_basis: Sequence[Morphism], f_matrix: np.ndarray) -> Optional[np.ndarray]:
    """Coordinates of a matrix in a Hom-space basis, or None."""
    if not hom_basis:
        return None if f_matrix.any() else np.zeros(0, dtype=np.int64)
    fld = hom_basis[0].field
    stacked = np.stack([h.matrix.reshape(-1) for h in hom_basis], axis=1)
    return fld.solve(stacked, f_matrix.reshape(-1))


# -- lifting problems ----------------------------------------------------
#
# Four flavours of "fill in the triangle".  The two Hom-space solvers
# return some solution when one exists and raise LiftingFailed when not;
# existence is the caller's obligation (injectivity of the receiving
# module, projectivity of the lifting one, or an exactness argument).
# The two factor helpers are pure matrix solves: a module map that
# vanishes where it must automatically induces a module map on the
# sub or quotient, so no Hom basis is needed there.


def extend_along(m: Morphism, f: Morphism) -> Morphism:
    """Some h: m.target -> f.target with h∘m = f."""
    if m.source is not f.source and m.source.dim != f.source.dim:
        raise InputError("extend_along: the two maps start from different modules")
    fld = f.field
    basis = hom_space(m.target, f.target)
    if not basis:
        if f.matrix.any():
            raise LiftingFailed("extend_along: empty Hom space against a nonzero map")
        return zero_morphism(m.target, f.target)
    cols = np.stack([((h.matrix @ m.matrix) % fld.p).reshape(-1) for h in basis], axis=1)
    sol = fld.solve(cols, f.matrix.reshape(-1))
    if sol is None:
        raise LiftingFailed("extend_along: no extension exists")
    acc = np.zeros((f.target.dim, m.target.dim), dtype=np.int64)
    for c, h in zip(sol, basis):
        acc += int(c) * h.matrix
    return Morphism(m.target, f.target, acc % fld.p)


def lift_through(e: Morphism, f: Morphism) -> Morphism:
    """Some h: f.source -> e.source with e∘h = f."""
    if e.target is not f.target and e.target.dim != f.target.dim:
        raise InputError("lift_through: the two maps land in different modules")
    fld = f.field
    basis = hom_space(f.source, e.source)
    if not basis:
        if f.matrix.any():
            raise LiftingFailed("lift_through: empty Hom space against a nonzero map")
        return zero_morphism(f.source, e.source)
    cols = np.stack([((e.matrix @ h.matrix) % fld.p).reshape(-1) for h in basis], axis=1)
    sol = fld.solve(cols, f.matrix.reshape(-1))
    if sol is None:
        raise LiftingFailed("lift_through: no lift exists")
    acc = np.zeros((e.source.dim, f.source.dim), dtype=np.int64)
    for c, h in zip(sol, basis):
        acc += int(c) * h.matrix
    return Morphism(f.source, e.source, acc % fld.p)


def factor_through_mono(m: Morphism, f: Morphism) -> Morphism:
    """The unique h: f.source -> m.source with m∘h = f, for injective m."""
    sol = f.field.solve(m.matrix, f.matrix)
    if sol is None:
        raise LiftingFailed("factor_through_mono: the map does not land in the image")
    return Morphism(f.source, m.source, sol)


def factor_through_epi(e: Morphism, f: Morphism) -> Morphism:
    """The unique h: e.target -> f.target with h∘e = f, for surjective e
    and f vanishing on its kernel."""
    sol = f.field.solve_left(e.matrix, f.matrix)
    if sol is None:
        raise LiftingFailed("factor_through_epi: the map does not kill the kernel")
    return Morphism(e.target, f.target, sol)


def is_isomorphic(m: Module, n: Module, cap: int = 4096, seed: int = 0) -> Optional[Morphism]:
    """An isomorphism m -> n, or None (certified) when none exists.

    Search order: dimension prefilter, Hom-dimension prefilter, the Hom
    basis itself, seeded random combinations, exhaustive enumeration of
    the Hom space when p^dim fits the cap.  Raises SearchExhausted when
    nothing was found but enumeration would exceed the cap.
    """
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return zero_morphism(m, n)
    homs = hom_space(m, n)
    if not homs:
        return None
    if len(homs) != len(hom_space(n, m)):
        return None
    fld = m.field
    for h in homs:
        if h.is_isomorphism():
            return h
    h = len(homs)
    p = fld.p
    if p**h <= cap:
        mats = np.stack([f.matrix for f in homs])
        for coeffs in itertools.product(range(p), repeat=h):
            cand = np.einsum("i,ijk->jk", np.array(coeffs, dtype=np.int64), mats) % p
            if fld.is_invertible(cand):
                return Morphism(m, n, cand)
        return None
    rng = np.random.RandomState(seed)
    mats = np.stack([f.matrix for f in homs])
    for _ in range(256):
        coeffs = rng.randint(0, p, size=h)
        cand = np.einsum("i,ijk->jk", coeffs, mats) % p
        if fld.is_invertible(cand):
            return Morphism(m, n, cand)
    raise SearchExhausted(
        f"no isomorphism found and Hom dimension {h} exceeds enumeration cap {cap}"
    )


# -- socle / radical / top ---------------------------------------------


def rad(m: Module) -> tuple[Module, Morphism]:
    """J·m with inclusion."""
    rad_elems = algebra_radical(m.algebra)
    if not rad_elems:
        return submodule(m, np.zeros((m.dim, 0), dtype=np.int64))
    cols = np.hstack([m.act(r) for r in rad_elems])
    return submodule(m, m.field.image_basis(cols))


def socle(m: Module) -> tuple[Module, Morphism]:
    """Annihilator of J with inclusion."""
    rad_elems = algebra_radical(m.algebra)
    if not rad_elems:
        return submodule(m, np.eye(m.dim, dtype=np.int64))
    stacked = np.vstack([m.act(r) for r in rad_elems])
    return submodule(m, m.field.kernel_basis(stacked))


def top(m: Module) -> tuple[Module, Morphism]:
    """m / J·m with projection."""
    _, rad_incl = rad(m)
    return quotient_by(m, rad_incl.matrix)


def is_semisimple(m: Module) -> bool:
    return rad(m)[0].dim == 0


# -- simples, projectives, injectives -----------------------------------


def simple_modules(a: FDAlgebra) -> list[Module]:
    """One simple per vertex (presented) or per summand (endomorphism
    algebras with summand data)."""
    if a.presentation is not None:
        pres = a.presentation
        out = []
        for v in pres.vertex_order:
            tri = pres.trivial_index[v]
            act = np.zeros((a.dim, 1, 1), dtype=np.int64)
            act[tri, 0, 0] = 1
            out.append(Module(a, act, name=f"S({v})"))
        return out
    if a.summand_data is not None:
        out = []
        for label, lam in zip(a.summand_data.labels, a.summand_data.diagonal_functionals):
            act = (lam % a.field.p).reshape(a.dim, 1, 1)
            out.append(Module(a, act, name=f"S({label})"))
        return out
    raise UnsupportedPresentation("simples need a quiver presentation or summand data")


def primitive_idempotents(a: FDAlgebra) -> list[tuple[str, np.ndarray]]:
    """Labelled complete set of primitive orthogonal idempotents."""
    if a.presentation is not None:
        pres = a.presentation
        return [(v, a.basis_vector(pres.trivial_index[v])) for v in pres.vertex_order]
    if a.summand_data is not None:
        sd = a.summand_data
        return [(lab, vec) for lab, vec in zip(sd.labels, sd.idempotent_vectors)]
    raise UnsupportedPresentation(
        "operation needs a quiver presentation or summand data"
    )


def _idempotent_vector(a: FDAlgebra, v: str) -> np.ndarray:
    for lab, vec in primitive_idempotents(a):
        if lab == v:
            return vec
    raise InputError(f"no primitive idempotent labelled {v!r}")


def projective_module(a: FDAlgebra, v: str) -> Module:
    """P(v) = (algebra)·e_v as a left module."""
    if a.presentation is not None:
        pres = a.presentation
        reg = regular_module(a)
        idxs = [i for i in range(a.dim) if pres.source_of(i) == v]
        basis = np.eye(a.dim, dtype=np.int64)[:, idxs]
        sub, _ = submodule(reg, basis, name=f"P({v})")
        return sub
    e = _idempotent_vector(a, v)
    basis = a.field.image_basis(a.right_mult_matrix(e))
    sub, _ = submodule(regular_module(a), basis, name=f"P({v})")
    return sub


def injective_module(a: FDAlgebra, v: str) -> Module:
    """I(v) = dual of the right projective at v, realized inside D(A)."""
    if a.presentation is not None:
        pres = a.presentation
        dual = matlis_left_module(a)
        idxs = [i for i in range(a.dim) if pres.target_of(i) == v]
        basis = np.eye(a.dim, dtype=np.int64)[:, idxs]
        sub, _ = submodule(dual, basis, name=f"I({v})")
        return sub
    # functionals on e_v·A: the fixed space of transposed left multiplication
    e = _idempotent_vector(a, v)
    basis = a.field.image_basis(a.left_mult_matrix(e).T % a.field.p)
    sub, _ = submodule(matlis_left_module(a), basis, name=f"I({v})")
    return sub


def matlis_left_module(a: FDAlgebra) -> Module:
    """D(A) as a left module: (x·f)(y) = f(y·x)."""
    act = np.stack([np.ascontiguousarray(a.structure[:, i, :]) for i in range(a.dim)])
    return Module(a, act, name=f"D({a.name})" if a.name else "D(A)")


def _require_presentation(a: FDAlgebra):
    if a.presentation is None:
        raise UnsupportedPresentation("operation needs a quiver presentation")
    return a.presentation


def vertex_multiplicities(a: FDAlgebra, m: Module) -> dict[str, int]:
    """Composition multiplicities of a semisimple module, per simple."""
    return {lab: int(m.field.rank(m.act(e))) for lab, e in primitive_idempotents(a)}


def injective_envelope(m: Module) -> tuple[Module, Morphism]:
    """E(m) = ⊕ I(v)^{socle multiplicities} with an essential mono."""
    a = m.algebra
    labels = [lab for lab, _ in primitive_idempotents(a)]
    if m.dim == 0:
        z = zero_module(a)
        return z, zero_morphism(m, z)
    soc, soc_incl = socle(m)
    mults = vertex_multiplicities(a, soc)
    summands = []
    for v in labels:
        summands.extend(injective_module(a, v) for _ in range(mults[v]))
    if not summands:
        raise InternalInvariantViolation("nonzero module with zero socle")
    env, env_incls, _ = direct_sum(summands)
    # socle(env) and soc are isomorphic semisimples; build soc -> env
    env_soc, env_soc_incl = socle(env)
    iso = is_isomorphic(soc, env_soc)
    if iso is None:
        raise InternalInvariantViolation("socle of envelope does not match socle")
    soc_map = (env_soc_incl.matrix @ iso.matrix) % m.field.p
    # extend along soc -> m using injectivity: find F in Hom(m, env)
    # with F restricted to soc equal to soc_map
    homs = hom_space(m, env)
    if not homs:
        raise InternalInvariantViolation("no morphisms into the envelope")
    fld = m.field
    cols = np.stack([(h.matrix @ soc_incl.matrix % fld.p).reshape(-1) for h in homs], axis=1)
    coeffs = fld.solve(cols, soc_map.reshape(-1))
    if coeffs is None:
        raise InternalInvariantViolation("injectivity extension failed")
    mono_mat = np.einsum("t,tjk->jk", coeffs, np.stack([h.matrix for h in homs])) % fld.p
    mono = Morphism(m, env, mono_mat)
    if not mono.is_injective():
        raise InternalInvariantViolation("envelope map not injective")
    return env, mono


def projective_cover(m: Module) -> tuple[Module, Morphism]:
    """P(top m) with a surjection lifting the top identification."""
    a = m.algebra
    labels = [lab for lab, _ in primitive_idempotents(a)]
    if m.dim == 0:
        z = zero_module(a)
        return z, zero_morphism(z, m)
    tp, tp_proj = top(m)
    mults = vertex_multiplicities(a, tp)
    summands = []
    for v in labels:
        summands.extend(projective_module(a, v) for _ in range(mults[v]))
    if not summands:
        raise InternalInvariantViolation("nonzero module with zero top")
    cover, _, _ = direct_sum(summands)
    cover_top, cover_top_proj = top(cover)
    iso = is_isomorphic(cover_top, tp)
    if iso is None:
        raise InternalInvariantViolation("top of cover does not match top")
    want = (iso.matrix @ cover_top_proj.matrix) % m.field.p  # cover -> tp
    homs = hom_space(cover, m)
    if not homs:
        raise InternalInvariantViolation("no morphisms from the cover")
    fld = m.field
    cols = np.stack([(tp_proj.matrix @ h.matrix % fld.p).reshape(-1) for h in homs], axis=1)
    coeffs = fld.solve(cols, want.reshape(-1))
    if coeffs is None:
        raise InternalInvariantViolation("projectivity lift failed")
    epi_mat = np.einsum("t,tjk->jk", coeffs, np.stack([h.matrix for h in homs])) % fld.p
    epi = Morphism(cover, m, epi_mat)
    if not epi.is_surjective():
        raise InternalInvariantViolation("cover map not surjective")
    return cover, epi


# -- submodule enumeration ----------------------------------------------


def module_closure(m: Module, vectors: np.ndarray) -> np.ndarray:
    """Canonical basis of the submodule generated by the given columns."""
    fld = m.field
    span = fld.image_basis(vectors)
    while True:
        moved = [span] + [(m.action[i] @ span) % fld.p for i in range(m.algebra.dim)]
        new_span = fld.image_basis(np.hstack(moved)) if span.size else span
        if new_span.shape[1] == span.shape[1]:
            return new_span
        span = new_span


def submodules(m: Module, cap: int = 4096) -> list[tuple[Module, Morphism]]:
    """All action-invariant subspaces: cyclic closures of all vectors,
    then closure under sums.  Exact, needs p^dim <= cap."""
    fld = m.field
    p = fld.p
    if p**m.dim > cap:
        raise EnumerationTooLarge(f"p^dim = {p}^{m.dim} exceeds cap {cap}")
    seen: dict[tuple, np.ndarray] = {}

    def keyed(basis: np.ndarray) -> tuple:
        rr, piv = fld.rref(basis.T)
        return (len(piv), rr[: len(piv)].tobytes())

    zero = np.zeros((m.dim, 0), dtype=np.int64)
    seen[keyed(zero)] = zero
    frontier = [zero]
    for vec_tuple in itertools.product(range(p), repeat=m.dim):
        v = np.array(vec_tuple, dtype=np.int64).reshape(-1, 1)
        if not v.any():
            continue
        cyc = module_closure(m, v)
        k = keyed(cyc)
        if k not in seen:
            seen[k] = cyc
            frontier.append(cyc)
    # close under pairwise sums
    changed = True
    while changed:
        changed = False
        items = list(seen.values())
        for b1 in items:
            for b2 in items:
                s = fld.span_union(b1, b2)
                k = keyed(s)
                if k not in seen:
                    seen[k] = s
                    changed = True
    out = []
    for basis in seen.values():
        sub, incl = submodule(m, basis)
        out.append((sub, incl))
    out.sort(key=lambda t: (t[0].dim, t[1].matrix.tobytes()))
    return out


def quotients(m: Module, cap: int = 4096) -> list[tuple[Module, Morphism]]:
    """All quotients, one per submodule, with projections."""
    out = []
    for _, incl in submodules(m, cap):
        q, proj = quotient_by(m, incl.matrix)
        out.append((q, proj))
    return out


def _extensions_by_simple(base: Module, s: Module, cap: int) -> list[Module]:
    """All extensions 0 -> base -> E -> s -> 0, one per cocycle.

    In a vertex-graded basis with base coordinates first, every arrow of
    E acts by [[B, C], [0, S]]; a product of such matrices is linear in
    the C-blocks jointly (the lower-left zeros kill all C*C terms), so the
    relations cut out a linear cocycle space.  Its basis is found by
    evaluating each relation on unit C-vectors.
    """
    a = base.algebra
    pres = _require_presentation(a)
    fld = a.field
    p = fld.p
    vb, ab = to_representation(base)
    vs, as_ = to_representation(s)
    vdims = {v: vb.get(v, 0) + vs.get(v, 0) for v in pres.vertex_order}

    slots = []  # (arrow name, rows, cols) of each unknown block
    total_unknowns = 0
    for arr in pres.quiver.arrows:
        rows, cols = vb.get(arr.target, 0), vs.get(arr.source, 0)
        if rows and cols:
            slots.append((arr.name, rows, cols))
            total_unknowns += rows * cols

    def arrow_mats(cvec: np.ndarray) -> dict[str, np.ndarray]:
        out = {}
        pos = 0
        blocks = {}
        for name, rows, cols in slots:
            blocks[name] = cvec[pos : pos + rows * cols].reshape(rows, cols)
            pos += rows * cols
        for arr in pres.quiver.arrows:
            du = vb.get(arr.source, 0) + vs.get(arr.source, 0)
            dw = vb.get(arr.target, 0) + vs.get(arr.target, 0)
            mat = np.zeros((dw, du), dtype=np.int64)
            bw, bu = vb.get(arr.target, 0), vb.get(arr.source, 0)
            mat[:bw, :bu] = ab[arr.name]
            mat[bw:, bu:] = as_[arr.name]
            if arr.name in blocks:
                mat[:bw, bu:] = blocks[arr.name]
            out[arr.name] = mat % p
        return out

    def relation_values(mats: dict[str, np.ndarray]) -> np.ndarray:
        # full-size arrow matrices, then each relation as in from_representation
        offs, off = {}, 0
        for v in pres.vertex_order:
            offs[v] = off
            off += vdims[v]
        total = off
        full = {}
        for arr in pres.quiver.arrows:
            fm = np.zeros((total, total), dtype=np.int64)
            dw = vdims[arr.target]
            du = vdims[arr.source]
            fm[offs[arr.target] : offs[arr.target] + dw,
               offs[arr.source] : offs[arr.source] + du] = mats[arr.name]
            full[arr.name] = fm
        vals = []
        for rel in pres.relations:
            acc = np.zeros((total, total), dtype=np.int64)
            for coeff, names in rel.terms:
                pm = np.eye(total, dtype=np.int64)
                for arrow_name in names:
                    pm = (full[arrow_name] @ pm) % p
                acc = (acc + coeff * pm) % p
            vals.append(acc.reshape(-1))
        return np.concatenate(vals) if vals else np.zeros(0, dtype=np.int64)

    if total_unknowns == 0:
        cocycles = np.zeros((0, 0), dtype=np.int64)
    else:
        cols = []
        for j in range(total_unknowns):
            unit = np.zeros(total_unknowns, dtype=np.int64)
            unit[j] = 1
            cols.append(relation_values(arrow_mats(unit)))
        system = np.stack(cols, axis=1) % p
        cocycles = fld.kernel_basis(system)
    z = cocycles.shape[1]
    if p**z > cap:
        raise EnumerationTooLarge(
            f"cocycle space of dimension {z} exceeds enumeration cap {cap}")
    out = []
    for coeffs in itertools.product(range(p), repeat=z):
        cvec = np.zeros(total_unknowns, dtype=np.int64)
        if z:
            cvec = (cocycles @ np.array(coeffs, dtype=np.int64)) % p
        out.append(from_representation(a, vdims, arrow_mats(cvec)))
    return out


def all_modules(a: FDAlgebra, max_dim: int, cap: int = 4096) -> list[Module]:
    """One representative of every module of dimension <= max_dim.

    Every nonzero module is an extension of a smaller one by a simple
    quotient, so stacking simples on top of everything already found
    reaches all of them; duplicates are removed up to isomorphism.  The
    cap bounds both the per-pair cocycle enumeration and the isomorphism
    search.
    """
    _require_presentation(a)
    if max_dim < 0:
        raise InputError("all_modules: max_dim must be nonnegative")
    simples = simple_modules(a)
    by_dim: dict[int, list[Module]] = {0: [zero_module(a)]}
    fingerprints: dict[tuple, list[Module]] = {}
    for d in range(1, max_dim + 1):
        found: list[Module] = []
        for s in simples:
            if s.dim > d:
                continue
            for base in by_dim[d - s.dim]:
                for cand in _extensions_by_simple(base, s, cap):
                    fp = (cand.dim,
                          tuple(sorted(vertex_multiplicities(a, cand).items())),
                          rad(cand)[0].dim, socle(cand)[0].dim)
                    bucket = fingerprints.setdefault(fp, [])
                    if any(is_isomorphic(cand, m, cap) is not None for m in bucket):
                        continue
                    cand.name = f"M{d}.{len(found)}"
                    bucket.append(cand)
                    found.append(cand)
        by_dim[d] = found
    out = [m for d in range(max_dim + 1) for m in by_dim[d]]
    return out


# -- decomposition and add(ω) -------------------------------------------


def _fitting_split(m: Module, phi: np.ndarray) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Try to split m along phi^N: returns (kernel basis, image basis)
    when both are proper."""
    fld = m.field
    power = fld.matrix_power(phi, max(m.dim, 1))
    ker = fld.kernel_basis(power)
    img = fld.image_basis(power)
    if ker.shape[1] == 0 or img.shape[1] == 0:
        return None
    if ker.shape[1] + img.shape[1] != m.dim:
        raise InternalInvariantViolation("Fitting split dimensions inconsistent")
    return ker, img


def indecomposable_decomposition(
    m: Module, cap: int = 4096, seed: int = 0
) -> list[tuple[Module, Morphism]]:
    """Summands with inclusions, by repeated Fitting splittings.

    Indecomposability of each leaf is certified when the endomorphism
    ring is small enough to enumerate (p^dim End <= cap); otherwise the
    search raises SearchExhausted rather than guessing.
    """
    if m.dim == 0:
        return []
    ends = hom_space(m, m)
    fld = m.field
    p = fld.p
    h = len(ends)

    def try_split(candidates) -> Optional[tuple[np.ndarray, np.ndarray]]:
        for phi in candidates:
            res = _fitting_split(m, phi)
            if res is not None:
                return res
        return None

    split = try_split(e.matrix for e in ends)
    if split is None and h > 1:
        split = try_split(
            (ends[i].matrix + ends[j].matrix) % p
            for i in range(h)
            for j in range(i + 1, h)
        )
    if split is None:
        if p**h <= cap:
            mats = np.stack([e.matrix for e in ends])
            for coeffs in itertools.product(range(p), repeat=h):
                phi = np.einsum("i,ijk->jk", np.array(coeffs, dtype=np.int64), mats) % p
                res = _fitting_split(m, phi)
                if res is not None:
                    split = res
                    break
            else:
                return [(m, identity_morphism(m))]  # certified indecomposable
        else:
            rng = np.random.RandomState(seed)
            mats = np.stack([e.matrix for e in ends])
            for _ in range(512):
                coeffs = rng.randint(0, p, size=h)
                phi = np.einsum("i,ijk->jk", coeffs, mats) % p
                res = _fitting_split(m, phi)
                if res is not None:
                    split = res
                    break
            if split is None:
                raise SearchExhausted(
                    f"End dimension {h} exceeds cap {cap} and random splitting failed"
                )
    ker_b, img_b = split
    out: list[tuple[Module, Morphism]] = []
    for basis in (ker_b, img_b):
        sub, incl = submodule(m, basis)
        for piece, piece_incl in indecomposable_decomposition(sub, cap, seed):
            out.append((piece, incl.compose(piece_incl)))
    return out


def add_approximation(omega_left: Module, m: Module) -> tuple[Module, Morphism]:
    """The canonical right add(ω)-approximation ω^h -> m stacking a
    Hom(ω, m)-basis; every map from add ω factors through it."""
    homs = hom_space(omega_left, m)
    if not homs:
        z = zero_module(m.algebra)
        return z, zero_morphism(z, m)
    source, _, projs = direct_sum([omega_left] * len(homs))
    mat = np.hstack([h.matrix for h in homs]) % m.field.p
    return source, Morphism(source, m, mat)


def is_in_add(m: Module, omega_left: Module) -> bool:
    """m ∈ add(ω): the canonical approximation splits.  Decided by one
    linear solve over Hom(m, ω^h), no decomposition search (memoized)."""
    if m.dim == 0:
        return True
    cache = getattr(m, "_in_add_cache", None)
    if cache is None:
        cache = m._in_add_cache = {}
    hit = cache.get(id(omega_left))
    if hit is not None and hit[0] is omega_left:
        return hit[1]
    verdict = _is_in_add(m, omega_left)
    cache[id(omega_left)] = (omega_left, verdict)
    return verdict


def _is_in_add(m: Module, omega_left: Module) -> bool:
    covers = hom_space(omega_left, m)
    if not covers:
        return False
    fld = m.field
    if fld.rank(np.hstack([f.matrix for f in covers])) < m.dim:
        return False
    backs = hom_space(m, omega_left)
    if not backs:
        return False
    # sections of the approximation are stacks of maps m -> ω, so the
    # split equation Σ fᵢ∘sⱼ = id lives over the small product basis
    cols = np.stack(
        [((f.matrix @ s.matrix) % fld.p).reshape(-1) for f in covers for s in backs],
        axis=1,
    )
    target = np.eye(m.dim, dtype=np.int64).reshape(-1)
    return fld.solve(cols, target) is not None


# -- duality -------------------------------------------------------------


def dual_module(m: Module) -> Module:
    """D(m) over the opposite algebra: action matrices transposed."""
    op = m.algebra.opposite()
    act = np.ascontiguousarray(np.transpose(m.action, (0, 2, 1)))
    return Module(op, act, name=f"D({m.name})" if m.name else "D")


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual_module(f.target), dual_module(f.source), f.matrix.T.copy())


# -- representation-format constructors ---------------------------------


def from_representation(
    a: FDAlgebra,
    vdims: dict[str, int],
    arrow_mats: dict[str, np.ndarray],
    name: str = "",
) -> Module:
    """Module from per-vertex dimensions and arrow matrices.

    Basis layout: vertex blocks in quiver order.  An arrow u -> w acts by
    its matrix from the u-block into the w-block; a basis path acts by
    composing its arrows in traversal order; relations are verified.
    """
    pres = _require_presentation(a)
    fld = a.field
    order = pres.vertex_order
    offs = {}
    off = 0
    for v in order:
        offs[v] = off
        off += int(vdims.get(v, 0))
    total = off
    arrow_full = {}
    for arr in pres.quiver.arrows:
        mat = arrow_mats.get(arr.name)
        du, dw = int(vdims.get(arr.source, 0)), int(vdims.get(arr.target, 0))
        if mat is None:
            mat = np.zeros((dw, du), dtype=np.int64)
        if mat.shape != (dw, du):
            raise InputError(f"arrow {arr.name}: matrix must be {dw}x{du}")
        full = np.zeros((total, total), dtype=np.int64)
        full[offs[arr.target] : offs[arr.target] + dw, offs[arr.source] : offs[arr.source] + du] = mat
        arrow_full[arr.name] = full % fld.p

    def path_matrix(path) -> np.ndarray:
        if path.length == 0:
            full = np.zeros((total, total), dtype=np.int64)
            dv = int(vdims.get(path.source, 0))
            full[offs[path.source] : offs[path.source] + dv, offs[path.source] : offs[path.source] + dv] = np.eye(dv, dtype=np.int64)
            return full
        out = np.eye(total, dtype=np.int64)
        for arrow_name in path.arrows:
            out = (arrow_full[arrow_name] @ out) % fld.p
        return out

    for rel in pres.relations:
        acc = np.zeros((total, total), dtype=np.int64)
        for coeff, names in rel.terms:
            pm = np.eye(total, dtype=np.int64)
            for arrow_name in names:
                pm = (arrow_full[arrow_name] @ pm) % fld.p
            acc = (acc + coeff * pm) % fld.p
        if acc.any():
            raise InputError("arrow matrices violate a relation")

    act = np.stack([path_matrix(pth) for pth in pres.basis_paths])
    mod = Module(a, act, name=name)
    mod.vertex_dims = {v: int(vdims.get(v, 0)) for v in order}
    return mod


def to_representation(m: Module) -> tuple[dict[str, int], dict[str, np.ndarray]]:
    """Vertex dimensions and arrow matrices of a module, in the canonical
    vertex-graded basis (inverse of from_representation up to iso)."""
    a = m.algebra
    pres = _require_presentation(a)
    fld = m.field
    blocks = []
    vdims = {}
    for v in pres.vertex_order:
        e = a.basis_vector(pres.trivial_index[v])
        b = fld.image_basis(m.act(e))
        vdims[v] = b.shape[1]
        blocks.append(b)
    t = np.hstack(blocks) if blocks else np.zeros((m.dim, 0), dtype=np.int64)
    if t.shape[1] != m.dim:
        raise InternalInvariantViolation("vertex blocks do not span the module")
    tinv = fld.invert(t)
    offs = {}
    off = 0
    for v in pres.vertex_order:
        offs[v] = off
        off += vdims[v]
    arrows = {}
    for arr in pres.quiver.arrows:
        i = pres.arrow_basis_index[arr.name]
        graded = (tinv @ m.action[i] @ t) % fld.p
        arrows[arr.name] = graded[
            offs[arr.target] : offs[arr.target] + vdims[arr.target],
            offs[arr.source] : offs[arr.source] + vdims[arr.source],
        ].copy()
    return vdims, arrows


# -- pullback / pushout --------------------------------------------------


def pullback(f: Morphism, g: Morphism) -> tuple[Module, Morphism, Morphism]:
    """Limit of f: X -> Z <- Y: g, with the two projections."""
    if f.target is not g.target and f.target.dim != g.target.dim:
        raise InputError("pullback: codomains differ")
    x, y = f.source, g.source
    s, incls, projs = direct_sum([x, y])
    fld = f.field
    big = np.hstack([f.matrix, (-g.matrix) % fld.p])
    ker = fld.kernel_basis(big)
    pb, incl = submodule(s, ker)
    to_x = projs[0].compose(incl)
    to_y = projs[1].compose(incl)
    return pb, to_x, to_y


def pushout(f: Morphism, g: Morphism) -> tuple[Module, Morphism, Morphism]:
    """Colimit of X <- Z -> Y (f: Z->X, g: Z->Y), with the two inclusions."""
    if f.source is not g.source and f.source.dim != g.source.dim:
        raise InputError("pushout: domains differ")
    x, y = f.target, g.target
    s, incls, _ = direct_sum([x, y])
    fld = f.field
    big = np.vstack([f.matrix, (-g.matrix) % fld.p])
    q, proj = quotient_by(s, fld.image_basis(big))
    from_x = proj.compose(incls[0])
    from_y = proj.compose(incls[1])
    return q, from_x, from_y


# -- bimodules ------------------------------------------------------------


@dataclass(eq=False)
class Bimodule:
    left_algebra: FDAlgebra
    right_algebra: FDAlgebra
    left_action: np.ndarray   # (dim R, m, m)
    right_action: np.ndarray  # (dim S, m, m)
    name: str = ""
    element_labels: tuple[str, ...] = ()

    @classmethod
    def build(cls, r, s, m_dim, left_list, right_list, name="", element_labels=()):
        left = np.stack(left_list) if left_list else np.zeros((r.dim, m_dim, m_dim), dtype=np.int64)
        right = np.stack(right_list) if right_list else np.zeros((s.dim, m_dim, m_dim), dtype=np.int64)
        return cls(r, s, left, right, name=name, element_labels=tuple(element_labels))

    def __post_init__(self):
        p = self.left_algebra.field.p
        self.left_action = self.left_action % p
        self.right_action = self.right_action % p
        self._left_module = Module(self.left_algebra, self.left_action, name=self.name)
        self._right_module = Module(
            self.right_algebra.opposite(), self.right_action, name=f"{self.name}|right"
        )
        # commuting actions
        m = self.dim
        if m:
            for i in range(self.left_algebra.dim):
                li = self.left_action[i]
                lhs = (li @ self.right_action) % p
                rhs = (self.right_action @ li) % p
                if not np.array_equal(lhs, rhs):
                    raise InputError("left and right actions do not commute")

    @property
    def dim(self) -> int:
        return self.left_action.shape[1]

    @property
    def field(self):
        return self.left_algebra.field

    def as_left_module(self) -> Module:
        return self._left_module

    def as_right_module(self) -> Module:
        """As a left module over the opposite of the right algebra."""
        return self._right_module

    def as_env_module(self) -> Module:
        env = enveloping(self.left_algebra, self.right_algebra)
        dr, ds, m = self.left_algebra.dim, self.right_algebra.dim, self.dim
        acts = np.einsum("iab,jbc->ijac", self.left_action, self.right_action) % self.field.p
        return Module(env, acts.reshape(dr * ds, m, m), name=self.name)

    def flip(self) -> "Bimodule":
        """The same space viewed as an (S^op, R^op)-bimodule.

        Involution (cached): the flip of the flip is this object, so
        right-handed statements can be run through the left-handed code.
        """
        cached = getattr(self, "_flip_cache", None)
        if cached is not None:
            return cached
        flipped = Bimodule(
            self.right_algebra.opposite(),
            self.left_algebra.opposite(),
            self.right_action,
            self.left_action,
            name=f"{self.name}|flip" if self.name else "flip",
            element_labels=self.element_labels,
        )
        flipped._flip_cache = self
        self._flip_cache = flipped
        return flipped

    def __repr__(self):
        return f"<bimodule {self.name or ''}: dim {self.dim}>"


def bimodule_from_left_module_with_endo_action(
    omega_left: Module, endo: FDAlgebra, endo_matrices: Sequence[np.ndarray]
) -> Bimodule:
    """ω as an (R, End)-bimodule: the right action of the i-th basis
    element of End is its matrix (evaluation on the right)."""
    return Bimodule.build(
        omega_left.algebra,
        endo,
        omega_left.dim,
        [omega_left.action[i] for i in range(omega_left.algebra.dim)],
        list(endo_matrices),
        name=omega_left.name,
    )


# -- endomorphism algebras ------------------------------------------------


def endomorphism_algebra(m: Module, name: str = "") -> tuple[FDAlgebra, list[np.ndarray]]:
    """End(m) with the product set up so that m is a right End(m)-module
    by evaluation: basis product b_i.b_j corresponds to F_j ∘ F_i.

    Returns the algebra and the matrices realizing each basis element.
    """
    from .algebra import FDAlgebra as _FDA

    ends = hom_space(m, m)
    if not ends:
        raise InputError("endomorphism algebra of the zero module")
    fld = m.field
    h = len(ends)
    structure = np.zeros((h, h, h), dtype=np.int64)
    for i in range(h):
        for j in range(h):
            comp = (ends[j].matrix @ ends[i].matrix) % fld.p
            coords = hom_coordinates(ends, comp)
            if coords is None:
                raise InternalInvariantViolation("End space not closed under composition")
            structure[i, j] = coords
    unit = hom_coordinates(ends, np.eye(m.dim, dtype=np.int64))
    if unit is None:
        raise InternalInvariantViolation("identity not in End basis span")
    alg = _FDA(
        field=fld,
        basis_labels=tuple(f"f{i}" for i in range(h)),
        structure=structure,
        unit=unit,
        name=name or f"End({m.name})",
    )
    return alg, [e.matrix for e in ends]


def endomorphism_algebra_of_direct_sum(
    summands: Sequence[Module], name: str = ""
) -> tuple[FDAlgebra, Module, list[np.ndarray]]:
    """End(⊕ summands) with summand data attached.

    Requires every summand to have scalar endomorphisms and the summands
    to be pairwise non-isomorphic (both verified); then the diagonal
    scalars cut out the radical and the simple modules, which is what
    the resolution-free machinery over an endomorphism algebra needs.
    """
    for t, s in enumerate(summands):
        if len(hom_space(s, s)) != 1:
            raise UnsupportedPresentation(
                f"summand {t} has a non-scalar endomorphism ring"
            )
    for i in range(len(summands)):
        for j in range(i + 1, len(summands)):
            if is_isomorphic(summands[i], summands[j]) is not None:
                raise UnsupportedPresentation("summands are not pairwise non-isomorphic")
    total, incls, projs = direct_sum(list(summands))
    alg, mats = endomorphism_algebra(total, name=name)
    ends = [Morphism(total, total, mm) for mm in mats]
    fld = total.field
    idem_vecs = []
    functionals = []
    for t in range(len(summands)):
        e_t = (incls[t].matrix @ projs[t].matrix) % fld.p
        coords = hom_coordinates(ends, e_t)
        if coords is None:
            raise InternalInvariantViolation("summand idempotent missing from End")
        idem_vecs.append(coords)
        lam = np.zeros(alg.dim, dtype=np.int64)
        for i, mat in enumerate(mats):
            diag = (projs[t].matrix @ mat @ incls[t].matrix) % fld.p
            lam[i] = diag[0, 0] if diag.size else 0
        functionals.append(lam)
    alg.summand_data = SummandData(
        labels=tuple(s.name or f"w{t}" for t, s in enumerate(summands)),
        idempotent_vectors=tuple(idem_vecs),
        diagonal_functionals=tuple(functionals),
    )
    alg.idempotent_vectors = tuple(idem_vecs)
    # idempotents + radical span S, so they generate it; downstream Hom
    # solvers then assemble fewer intertwining systems
    alg.generator_vectors = tuple(idem_vecs) + tuple(algebra_radical(alg))
    return alg, total, mats


# -- star / cotensor / theta / mu -----------------------------------------


@dataclass(eq=False)
class StarData:
    """Hom_R(ω, m) as an S-module plus the realizing basis morphisms."""

    module: Module
    basis: list[np.ndarray]  # matrices ω -> m
    of: Module

    def evaluate(self, coords: np.ndarray) -> np.ndarray:
        """The morphism ω -> of with the given star coordinates."""
        if not self.basis:
            return np.zeros((self.of.dim, 0), dtype=np.int64)
        return np.einsum("t,tjk->jk", coords, np.stack(self.basis)) % self.module.field.p


def star(omega: Bimodule, m: Module) -> StarData:
    """(−)_* = Hom_R(ω, −) with left S-action (s·f)(x) = f(x·s)."""
    if m.algebra is not omega.left_algebra:
        raise InputError("star: module is not over ω's left algebra")
    cache = getattr(m, "_star_cache", None)
    if cache is None:
        cache = m._star_cache = {}
    hit = cache.get(id(omega))
    if hit is not None and hit[0] is omega:
        return hit[1]
    s_alg = omega.right_algebra
    fld = omega.field
    homs = hom_space(omega.as_left_module(), m)
    basis = [h.matrix for h in homs]
    hdim = len(basis)
    acts = np.zeros((s_alg.dim, hdim, hdim), dtype=np.int64)
    if hdim:
        for j in range(s_alg.dim):
            rj = omega.right_action[j]
            for t, fmat in enumerate(basis):
                moved = (fmat @ rj) % fld.p
                coords = hom_coordinates(homs, moved)
                if coords is None:
                    raise InternalInvariantViolation("star action leaves the Hom space")
                acts[j, :, t] = coords
    sm = Module(s_alg, acts, name=f"({m.name})*" if m.name else "star")
    data = StarData(module=sm, basis=basis, of=m)
    # the stored ω reference keeps its id from being recycled
    cache[id(omega)] = (omega, data)
    return data


def star_morphism(omega: Bimodule, f: Morphism, src: StarData, tgt: StarData) -> Morphism:
    """f_* : Hom(ω, src.of) -> Hom(ω, tgt.of), post-composition."""
    fld = omega.field
    mat = np.zeros((tgt.module.dim, src.module.dim), dtype=np.int64)
    tgt_homs = [Morphism(omega.as_left_module(), tgt.of, b) for b in tgt.basis]
    for t, fmat in enumerate(src.basis):
        comp = (f.matrix @ fmat) % fld.p
        coords = hom_coordinates(tgt_homs, comp)
        if coords is None:
            raise InternalInvariantViolation("star of morphism leaves the Hom space")
        mat[:, t] = coords
    return Morphism(src.module, tgt.module, mat)


@dataclass(eq=False)
class CotensorData:
    """ω ⊗_S n with the defining projection from ω ⊗_k n and a section."""

    module: Module
    projection: np.ndarray  # (q, dim ω * dim n), row-major (w, y) index
    section: np.ndarray     # (dim ω * dim n, q)
    of: Module


def cotensor(omega: Bimodule, n: Module) -> CotensorData:
    """ω ⊗_S n: quotient of ω ⊗_k n by {x·s ⊗ y − x ⊗ s·y}.

    Spanning the relations over algebra generators s suffices: the
    relation for a product st is a sum of images of the generator
    relations (associativity telescopes), so the span is unchanged.
    """
    if n.algebra is not omega.right_algebra:
        raise InputError("cotensor: module is not over ω's right algebra")
    cache = getattr(n, "_cotensor_cache", None)
    if cache is None:
        cache = n._cotensor_cache = {}
    hit = cache.get(id(omega))
    if hit is not None and hit[0] is omega:
        return hit[1]
    fld = omega.field
    mw, mn = omega.dim, n.dim
    big = mw * mn
    if big == 0:
        z = zero_module(omega.left_algebra)
        return CotensorData(z, np.zeros((0, big), dtype=np.int64), np.zeros((big, 0), dtype=np.int64), n)
    rel_blocks = []
    eye_w = np.eye(mw, dtype=np.int64)
    eye_n = np.eye(mn, dtype=np.int64)
    for g in omega.right_algebra.generator_vectors:
        sig = np.einsum("i,ijk->jk", g, omega.right_action) % fld.p
        rho = n.act(g)
        t_g = (np.kron(sig, eye_n) - np.kron(eye_w, rho)) % fld.p
        rel_blocks.append(t_g)
    rel_span = fld.image_basis(np.hstack(rel_blocks)) if rel_blocks else np.zeros((big, 0), dtype=np.int64)
    s = rel_span.shape[1]
    comp = fld.complement_pivots(rel_span, big) if s else list(range(big))
    if s:
        full = np.hstack([rel_span, np.eye(big, dtype=np.int64)[:, comp]])
        inv = fld.invert(full)
        proj = inv[s:, :]
        section = full[:, s:]
    else:
        proj = np.eye(big, dtype=np.int64)
        section = np.eye(big, dtype=np.int64)
    q = big - s
    acts = np.zeros((omega.left_algebra.dim, q, q), dtype=np.int64)
    for i in range(omega.left_algebra.dim):
        lifted = np.kron(omega.left_action[i], eye_n) % fld.p
        acts[i] = (proj @ lifted @ section) % fld.p
    mod = Module(omega.left_algebra, acts, name=f"w(x){n.name}" if n.name else "cotensor")
    data = CotensorData(mod, proj, section, n)
    cache[id(omega)] = (omega, data)
    return data


def cotensor_morphism(
    omega: Bimodule, g: Morphism, src: CotensorData, tgt: CotensorData
) -> Morphism:
    """1_ω ⊗ g, descended to the cotensor quotients."""
    fld = omega.field
    lifted = np.kron(np.eye(omega.dim, dtype=np.int64), g.matrix) % fld.p
    # well-definedness: relations of the source map into relations of the target
    if src.projection.shape[1]:
        ker_src = fld.kernel_basis(src.projection)
        if ((tgt.projection @ lifted @ ker_src) % fld.p).any():
            raise InternalInvariantViolation("cotensor of morphism not well-defined")
    mat = (tgt.projection @ lifted @ src.section) % fld.p
    return Morphism(src.module, tgt.module, mat)


def theta(omega: Bimodule, m: Module, star_data: Optional[StarData] = None,
          ct_data: Optional[CotensorData] = None) -> Morphism:
    """Evaluation θ_m : ω ⊗_S m_* -> m, (x ⊗ f) -> f(x)."""
    sd = star_data if star_data is not None else star(omega, m)
    cd = ct_data if ct_data is not None else cotensor(omega, sd.module)
    fld = omega.field
    mw, h = omega.dim, sd.module.dim
    raw = np.zeros((m.dim, mw * h), dtype=np.int64)
    for w in range(mw):
        for t in range(h):
            raw[:, w * h + t] = sd.basis[t][:, w]
    # θ kills the defining relations, so it factors through the section
    ker = fld.kernel_basis(cd.projection)
    if ker.size and ((raw @ ker) % fld.p).any():
        raise InternalInvariantViolation("theta does not kill cotensor relations")
    return Morphism(cd.module, m, (raw @ cd.section) % fld.p)


def mu(omega: Bimodule, n: Module, ct_data: Optional[CotensorData] = None,
       star_data: Optional[StarData] = None) -> Morphism:
    """Unit μ_n : n -> (ω ⊗_S n)_*, y -> (x -> x ⊗ y)."""
    cd = ct_data if ct_data is not None else cotensor(omega, n)
    sd = star_data if star_data is not None else star(omega, cd.module)
    fld = omega.field
    mw, mn = omega.dim, n.dim
    homs = [Morphism(omega.as_left_module(), cd.module, b) for b in sd.basis]
    mat = np.zeros((sd.module.dim, mn), dtype=np.int64)
    for y in range(mn):
        f_y = np.zeros((cd.module.dim, mw), dtype=np.int64)
        for w in range(mw):
            f_y[:, w] = cd.projection[:, w * mn + y]
        coords = hom_coordinates(homs, f_y)
        if coords is None:
            raise InternalInvariantViolation("mu image leaves the Hom space")
        mat[:, y] = coords
    return Morphism(n, sd.module, mat)
