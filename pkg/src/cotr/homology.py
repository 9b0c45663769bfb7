"""Minimal resolutions, Ext and Tor, and bounded dimension certificates.

Nothing here decides an "for all degrees" statement outright: a run only
ever inspects finitely many steps of a resolution.  Every dimension-like
quantity is therefore reported as a :class:`~cotr.answers.BoundedAnswer`
whose certified statuses come from one of two sources:

* the minimal resolution terminates within the bound, or
* two (co)syzygies in the minimal resolution are isomorphic, which pins
  the resolution into a cycle forever (minimal covers/envelopes are
  unique up to isomorphism, so a repeat at steps j < k forces the same
  repeat at j+1 < k+1, and so on).

The second certificate is only sound for *minimal* resolutions, which is
why everything below insists on projective covers and injective
envelopes rather than arbitrary presentations.

Ext groups are computed twice, once from a projective resolution of the
first argument and once from an injective resolution of the second, and
the two answers are compared on every call.  When the first argument is
a bimodule the injective-resolution route also carries the module
structure over the other ring, so that is the copy handed back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .algebra import trivial_algebra
from .answers import EXACT, BoundedAnswer
from .errors import InputError, InternalInvariantViolation
from .modrep import (
    Bimodule,
    Module,
    Morphism,
    ShortExactSequence,
    StarData,
    cotensor,
    cotensor_morphism,
    dual_module,
    extend_along,
    factor_through_epi,
    factor_through_mono,
    hom_coordinates,
    hom_space,
    indecomposable_decomposition,
    injective_envelope,
    injective_module,
    is_isomorphic,
    kernel,
    lift_through,
    primitive_idempotents,
    projective_cover,
    projective_module,
    quotient_by,
    star,
    star_morphism,
    subquotient,
    zero_module,
    zero_morphism,
)

DEFAULT_BOUND = 20

PROJECTIVE = "projective"
INJECTIVE = "injective"


@dataclass(eq=False)
class Resolution:
    """A minimal projective or injective resolution, built stepwise.

    ``syzygies[0]`` is the resolved module itself; for each stage i the
    triple (syzygies, terms, syzygies) forms a short exact sequence:

    projective:  0 -> syzygies[i+1] --connects[i]--> terms[i] --augments[i]--> syzygies[i] -> 0
    injective:   0 -> syzygies[i] --augments[i]--> terms[i] --connects[i]--> syzygies[i+1] -> 0

    ``complete`` means some (co)syzygy vanished, i.e. the resolution
    terminated and ``length_computed`` is the actual homological
    dimension.
    """

    kind: str
    base: Module
    terms: list[Module] = field(default_factory=list)
    maps: list[Morphism] = field(default_factory=list)
    syzygies: list[Module] = field(default_factory=list)
    augments: list[Morphism] = field(default_factory=list)
    connects: list[Morphism] = field(default_factory=list)
    complete: bool = False
    minimal: bool = True

    @property
    def length_computed(self) -> int:
        return len(self.terms) - 1

    @property
    def augmentation(self) -> Optional[Morphism]:
        return self.augments[0] if self.augments else None

    def term(self, i: int) -> Optional[Module]:
        """terms[i], or None once the resolution has run out."""
        if 0 <= i < len(self.terms):
            return self.terms[i]
        return None

    def map_between(self, i: int) -> Optional[Morphism]:
        """maps[i] if both of its endpoints were computed."""
        if 0 <= i < len(self.maps):
            return self.maps[i]
        return None

    def syzygy_module(self, n: int) -> Module:
        if n < len(self.syzygies):
            return self.syzygies[n]
        if self.complete:
            return zero_module(self.base.algebra)
        raise InternalInvariantViolation(
            f"syzygy {n} was never computed (have {len(self.syzygies)})"
        )

    def stage_ses(self, i: int) -> ShortExactSequence:
        if self.kind == PROJECTIVE:
            return ShortExactSequence(
                self.syzygy_module(i + 1), self.terms[i], self.syzygy_module(i),
                self.connects[i], self.augments[i],
            )
        return ShortExactSequence(
            self.syzygy_module(i), self.terms[i], self.syzygy_module(i + 1),
            self.augments[i], self.connects[i],
        )

    def verify(self) -> None:
        """Recheck d∘d = 0 and exactness away from the base."""
        fld = self.base.field
        for i in range(len(self.maps) - 1):
            if self.kind == PROJECTIVE:
                comp = (self.maps[i].matrix @ self.maps[i + 1].matrix) % fld.p
            else:
                comp = (self.maps[i + 1].matrix @ self.maps[i].matrix) % fld.p
            if comp.any():
                raise InternalInvariantViolation("resolution maps do not square to zero")
        for i in range(len(self.terms)):
            want = self.terms[i].dim - self.augments[i].rank() - self.connects[i].rank()
            if want != 0:
                raise InternalInvariantViolation(f"resolution not exact at stage {i}")


def _res_cache(m: Module) -> dict:
    cache = getattr(m, "_min_res_cache", None)
    if cache is None:
        cache = {}
        m._min_res_cache = cache
    return cache


def _resolve(m: Module, kind: str, length: int) -> Resolution:
    """Minimal resolution of ``m`` with terms 0..length (cached; the
    cached object is shared and only ever extended, never trimmed)."""
    if kind not in (PROJECTIVE, INJECTIVE):
        raise InputError(f"unknown resolution kind {kind!r}")
    cache = _res_cache(m)
    res = cache.get(kind)
    if res is None:
        res = Resolution(kind, m, syzygies=[m], complete=(m.dim == 0))
        cache[kind] = res
    fld = m.field
    while not res.complete and len(res.terms) < length + 1:
        tail = res.syzygies[-1]
        i = len(res.terms)
        if kind == PROJECTIVE:
            cover, eps = projective_cover(tail)
            nxt, link = kernel(eps)
            nxt.name = f"syz{i + 1}({m.name})"
            res.terms.append(cover)
            res.augments.append(eps)
            res.connects.append(link)
            if i >= 1:
                mat = (res.connects[i - 1].matrix @ eps.matrix) % fld.p
                res.maps.append(Morphism(cover, res.terms[i - 1], mat))
        else:
            env, eta = injective_envelope(tail)
            nxt, link = subquotient(eta, "cokernel")
            nxt.name = f"cosyz{i + 1}({m.name})"
            res.terms.append(env)
            res.augments.append(eta)
            res.connects.append(link)
            if i >= 1:
                mat = (eta.matrix @ res.connects[i - 1].matrix) % fld.p
                res.maps.append(Morphism(res.terms[i - 1], env, mat))
        res.syzygies.append(nxt)
        if nxt.dim == 0:
            res.complete = True
    return res


def min_projective_resolution(m: Module, bound: int = DEFAULT_BOUND) -> Resolution:
    return _resolve(m, PROJECTIVE, bound)


def min_injective_resolution(m: Module, bound: int = DEFAULT_BOUND) -> Resolution:
    return _resolve(m, INJECTIVE, bound)


def syzygy(m: Module, n: int) -> Module:
    """The n-th syzygy along the minimal projective resolution."""
    if n < 0:
        raise InputError("syzygy index must be nonnegative")
    return _resolve(m, PROJECTIVE, n).syzygy_module(n)


def cosyzygy(m: Module, n: int) -> Module:
    """The n-th cosyzygy along the minimal injective resolution."""
    if n < 0:
        raise InputError("cosyzygy index must be nonnegative")
    return _resolve(m, INJECTIVE, n).syzygy_module(n)


# -- Ext and Tor -----------------------------------------------------------


def _k_space(fld, d: int, name: str = "") -> Module:
    """A plain d-dimensional vector space as a module over the ground field."""
    a = trivial_algebra(fld)
    act = np.eye(d, dtype=np.int64).reshape(1, d, d)
    return Module(a, act, name=name)


def _induced_matrix(src_basis: list[Morphism], tgt_basis: list[Morphism],
                    induce, fld) -> np.ndarray:
    """Matrix (|tgt| x |src|) of a linear map between Hom spaces given by
    ``induce`` acting on each basis morphism's matrix."""
    out = np.zeros((len(tgt_basis), len(src_basis)), dtype=np.int64)
    for j, g in enumerate(src_basis):
        coords = hom_coordinates(tgt_basis, induce(g.matrix) % fld.p)
        if coords is None:
            raise InternalInvariantViolation("induced map left the Hom space")
        out[:, j] = coords
    return out


def _cochain_dims(spaces: list[int], mats: list[np.ndarray], i: int, fld) -> int:
    """dim H^i of a cochain complex given dims and differential matrices
    (mats[j]: spaces[j] -> spaces[j+1])."""
    rank_out = fld.rank(mats[i]) if i < len(mats) else 0
    rank_in = fld.rank(mats[i - 1]) if i >= 1 else 0
    return spaces[i] - rank_out - rank_in


def _ext_dim_via_projective(m: Module, n: Module, i: int) -> int:
    """dim Ext^i(m, n) from the minimal projective resolution of m."""
    if m.dim == 0 or n.dim == 0:
        return 0
    fld = m.field
    res = _resolve(m, PROJECTIVE, i + 1)
    bases = [hom_space(t, n) if (t := res.term(j)) is not None else []
             for j in range(i + 2)]
    mats = []
    for j in range(i + 1):
        d = res.map_between(j)  # terms[j+1] -> terms[j]
        if d is None or not bases[j] or not bases[j + 1]:
            mats.append(np.zeros((len(bases[j + 1]), len(bases[j])), dtype=np.int64))
        else:
            mats.append(_induced_matrix(bases[j], bases[j + 1],
                                        lambda g: g @ d.matrix, fld))
    return _cochain_dims([len(b) for b in bases], mats, i, fld)


def _ext_dim_via_injective(m: Module, n: Module, i: int) -> int:
    """dim Ext^i(m, n) from the minimal injective resolution of n."""
    if m.dim == 0 or n.dim == 0:
        return 0
    fld = m.field
    res = _resolve(n, INJECTIVE, i + 1)
    bases = [hom_space(m, t) if (t := res.term(j)) is not None else []
             for j in range(i + 2)]
    mats = []
    for j in range(i + 1):
        d = res.map_between(j)  # terms[j] -> terms[j+1]
        if d is None or not bases[j] or not bases[j + 1]:
            mats.append(np.zeros((len(bases[j + 1]), len(bases[j])), dtype=np.int64))
        else:
            mats.append(_induced_matrix(bases[j], bases[j + 1],
                                        lambda g: d.matrix @ g, fld))
    return _cochain_dims([len(b) for b in bases], mats, i, fld)


def homology_at(incoming: Optional[Morphism], outgoing: Optional[Morphism],
                at: Module, name: str = "") -> tuple[Module, Morphism, Morphism]:
    """ker(outgoing)/im(incoming) at ``at``; either map may be absent.

    Returns (H, kernel inclusion K -> at, projection K -> H)."""
    fld = at.field
    if outgoing is None:
        k = at
        k_incl = Morphism(at, at, np.eye(at.dim, dtype=np.int64))
    else:
        k, k_incl = kernel(outgoing)
    if incoming is None or k.dim == 0 or not incoming.matrix.any():
        h = Module(k.algebra, k.action.copy(), name=name)
        return h, k_incl, Morphism(k, h, np.eye(k.dim, dtype=np.int64))
    img = fld.image_basis(incoming.matrix)
    coords = fld.solve(k_incl.matrix, img)
    if coords is None:
        raise InternalInvariantViolation("image does not land in the kernel")
    h, proj = quotient_by(k, fld.image_basis(coords), name=name)
    return h, k_incl, proj


def _ext_at(omega: Bimodule, n: Module, i: int
            ) -> tuple[Module, Optional[Morphism], Optional[Morphism]]:
    """Ext^i(omega, n) with its cocycle inclusion and homology projection
    inside Hom(omega, I^i(n)); the witnesses are None when the spot is
    structurally zero (nothing to carry them)."""
    s_alg = omega.right_algebra
    if n.dim == 0:
        return zero_module(s_alg), None, None
    res = _resolve(n, INJECTIVE, i + 1)
    data: list[Optional[StarData]] = []
    for j in (i - 1, i, i + 1):
        t = res.term(j) if j >= 0 else None
        data.append(star(omega, t) if t is not None else None)
    prev, here, nxt = data
    if here is None:
        return zero_module(s_alg), None, None
    incoming = None
    if prev is not None:
        d = res.map_between(i - 1)
        incoming = star_morphism(omega, d, prev, here)
    outgoing = None
    if nxt is not None:
        d = res.map_between(i)
        if d is not None:
            outgoing = star_morphism(omega, d, here, nxt)
    return homology_at(incoming, outgoing, here.module,
                       name=f"Ext{i}({omega.name},{n.name})")


def _ext_structured(omega: Bimodule, n: Module, i: int) -> Module:
    """Ext^i(omega, n) as a module over the right-hand algebra of omega,
    via Hom(omega, -) applied to the minimal injective resolution of n."""
    return _ext_at(omega, n, i)[0]


def ext(first: Union[Bimodule, Module], second: Module, i: int,
        bound: int = DEFAULT_BOUND) -> Module:
    """Ext^i(first, second), cross-checked along two resolutions.

    A bimodule first argument yields a module over its right-hand
    algebra; a plain module yields a vector space over the ground field.
    """
    if i < 0:
        raise InputError("ext degree must be nonnegative")
    if i > bound:
        raise InputError(f"ext degree {i} exceeds the bound {bound}")
    if isinstance(first, Bimodule):
        structured = _ext_structured(first, second, i)
        check = _ext_dim_via_projective(first.as_left_module(), second, i)
        if structured.dim != check:
            raise InternalInvariantViolation(
                f"Ext^{i} disagreement: injective route {structured.dim}, "
                f"projective route {check}"
            )
        return structured
    via_p = _ext_dim_via_projective(first, second, i)
    via_i = _ext_dim_via_injective(first, second, i)
    if via_p != via_i:
        raise InternalInvariantViolation(
            f"Ext^{i} disagreement: projective route {via_p}, injective route {via_i}"
        )
    return _k_space(first.field, via_p, name=f"Ext{i}({first.name},{second.name})")


def _omega_plus(omega: Bimodule) -> Module:
    """The ground-field dual of omega as a right module, i.e. a left
    module over the right-hand algebra.  Cached on the bimodule."""
    cached = getattr(omega, "_plus_cache", None)
    if cached is None:
        cached = dual_module(omega.as_right_module())
        cached.name = f"{omega.name}+" if omega.name else "omega+"
        omega._plus_cache = cached
    return cached


def _tor_at(omega: Bimodule, n: Module, i: int
            ) -> tuple[Module, Optional[Morphism], Optional[Morphism]]:
    """Tor_i(omega, n) with its cycle inclusion and homology projection
    inside omega ⊗ P_i(n); witnesses None when structurally zero."""
    r_alg = omega.left_algebra
    if n.dim == 0 or omega.dim == 0:
        return zero_module(r_alg), None, None
    res = _resolve(n, PROJECTIVE, i + 1)
    data = []
    for j in (i - 1, i, i + 1):
        t = res.term(j) if j >= 0 else None
        data.append(cotensor(omega, t) if t is not None else None)
    prev, here, nxt = data
    if here is None:
        return zero_module(r_alg), None, None
    outgoing = None
    if prev is not None:
        d = res.map_between(i - 1)  # terms[i] -> terms[i-1]
        outgoing = cotensor_morphism(omega, d, here, prev)
    incoming = None
    if nxt is not None:
        d = res.map_between(i)  # terms[i+1] -> terms[i]
        if d is not None:
            incoming = cotensor_morphism(omega, d, nxt, here)
    return homology_at(incoming, outgoing, here.module,
                       name=f"Tor{i}({omega.name},{n.name})")


def tor(omega: Bimodule, n: Module, i: int, bound: int = DEFAULT_BOUND) -> Module:
    """Tor_i(omega, n) over the right-hand algebra of omega, as a module
    over the left-hand algebra.

    Computed as homology of omega tensored onto the minimal projective
    resolution of n; the dimension is cross-checked against
    Ext^i(n, omega^+) computed on an injective resolution.
    """
    if i < 0:
        raise InputError("tor degree must be nonnegative")
    if i > bound:
        raise InputError(f"tor degree {i} exceeds the bound {bound}")
    if n.algebra is not omega.right_algebra:
        raise InputError("tor: second argument must live over the right-hand algebra")
    if n.dim == 0 or omega.dim == 0:
        return zero_module(omega.left_algebra)
    result, _, _ = _tor_at(omega, n, i)
    check = _ext_dim_via_injective(n, _omega_plus(omega), i)
    if result.dim != check:
        raise InternalInvariantViolation(
            f"Tor_{i} disagreement: tensor route {result.dim}, dual-Ext route {check}"
        )
    return result


# -- functorial Ext and Tor -------------------------------------------------


def injective_chain_map(f: Morphism, top: int) -> list[Morphism]:
    """A chain map over f between minimal injective resolutions,
    degrees 0..top.  An exhausted resolution continues with zero terms.

    Each degree extends the previous cosyzygy square along the envelope
    inclusion, so the comparison maps always exist; the induced map on
    the next cosyzygies is the descent through the cokernel.
    """
    if top < 0:
        raise InputError("chain map degree must be nonnegative")
    rs = _resolve(f.source, INJECTIVE, top + 1)
    rt = _resolve(f.target, INJECTIVE, top + 1)
    a = f.source.algebra
    out: list[Morphism] = []
    cur = f  # between the j-th cosyzygies
    for j in range(top + 1):
        ts, tt = rs.term(j), rt.term(j)
        s_term = ts if ts is not None else zero_module(a)
        t_term = tt if tt is not None else zero_module(a)
        if ts is None or tt is None or cur.source.dim == 0:
            fj = zero_morphism(s_term, t_term)
        else:
            fj = extend_along(rs.augments[j], rt.augments[j].compose(cur))
        out.append(fj)
        nxt_s, nxt_t = rs.syzygy_module(j + 1), rt.syzygy_module(j + 1)
        if nxt_s.dim == 0 or nxt_t.dim == 0:
            cur = zero_morphism(nxt_s, nxt_t)
        else:
            cur = factor_through_epi(rs.connects[j], rt.connects[j].compose(fj))
    return out


def projective_chain_map(f: Morphism, top: int) -> list[Morphism]:
    """A chain map over f between minimal projective resolutions,
    degrees 0..top (mirror of :func:`injective_chain_map`)."""
    if top < 0:
        raise InputError("chain map degree must be nonnegative")
    rs = _resolve(f.source, PROJECTIVE, top + 1)
    rt = _resolve(f.target, PROJECTIVE, top + 1)
    a = f.source.algebra
    out: list[Morphism] = []
    cur = f  # between the j-th syzygies
    for j in range(top + 1):
        ts, tt = rs.term(j), rt.term(j)
        s_term = ts if ts is not None else zero_module(a)
        t_term = tt if tt is not None else zero_module(a)
        if ts is None or tt is None or cur.target.dim == 0:
            fj = zero_morphism(s_term, t_term)
        else:
            fj = lift_through(rt.augments[j], cur.compose(rs.augments[j]))
        out.append(fj)
        nxt_s, nxt_t = rs.syzygy_module(j + 1), rt.syzygy_module(j + 1)
        if nxt_s.dim == 0 or nxt_t.dim == 0:
            cur = zero_morphism(nxt_s, nxt_t)
        else:
            cur = factor_through_mono(rt.connects[j], fj.compose(rs.connects[j]))
    return out


def _induced_on_homology(fld, big: Morphism, kin_s: Morphism, prj_s: Morphism,
                         kin_t: Morphism, prj_t: Morphism) -> np.ndarray:
    """Descend a commuting square to homology: restrict ``big`` to the
    cocycles, check it kills the boundaries, and read the matrix on the
    quotient bases."""
    coords = fld.solve(kin_t.matrix, (big.matrix @ kin_s.matrix) % fld.p)
    if coords is None:
        raise InternalInvariantViolation("the lifted chain map leaves the cocycles")
    dead = fld.kernel_basis(prj_s.matrix)
    if dead.size and ((prj_t.matrix @ coords @ dead) % fld.p).any():
        raise InternalInvariantViolation("the induced map on homology is not well defined")
    sec = fld.solve(prj_s.matrix, np.eye(prj_s.target.dim, dtype=np.int64))
    return (prj_t.matrix @ coords @ sec) % fld.p


def ext_morphism(omega: Bimodule, f: Morphism, i: int
                 ) -> tuple[Module, Module, Morphism]:
    """Ext^i(omega, f) together with its source and target modules.

    Lifts f across the minimal injective resolutions, applies
    Hom(omega, -) in degree i, and descends to homology.
    """
    if i < 0:
        raise InputError("ext degree must be nonnegative")
    fld = f.field
    hs, kin_s, prj_s = _ext_at(omega, f.source, i)
    ht, kin_t, prj_t = _ext_at(omega, f.target, i)
    if hs.dim == 0 or ht.dim == 0:
        return hs, ht, zero_morphism(hs, ht)
    fi = injective_chain_map(f, i)[i]
    fstar = star_morphism(omega, fi, star(omega, fi.source), star(omega, fi.target))
    mat = _induced_on_homology(fld, fstar, kin_s, prj_s, kin_t, prj_t)
    return hs, ht, Morphism(hs, ht, mat)


def tor_morphism(omega: Bimodule, f: Morphism, i: int
                 ) -> tuple[Module, Module, Morphism]:
    """Tor_i(omega, f) together with its source and target modules."""
    if i < 0:
        raise InputError("tor degree must be nonnegative")
    if f.source.algebra is not omega.right_algebra:
        raise InputError("tor_morphism: the map must live over the right-hand algebra")
    fld = f.field
    ts_, kin_s, prj_s = _tor_at(omega, f.source, i)
    tt_, kin_t, prj_t = _tor_at(omega, f.target, i)
    if ts_.dim == 0 or tt_.dim == 0:
        return ts_, tt_, zero_morphism(ts_, tt_)
    fi = projective_chain_map(f, i)[i]
    fct = cotensor_morphism(omega, fi, cotensor(omega, fi.source),
                            cotensor(omega, fi.target))
    mat = _induced_on_homology(fld, fct, kin_s, prj_s, kin_t, prj_t)
    return ts_, tt_, Morphism(ts_, tt_, mat)


# -- bounded dimensions -----------------------------------------------------


def _has_split_summand(mod: Module, kind: str) -> bool:
    """Does ``mod`` have an indecomposable projective/injective summand?"""
    a = mod.algebra
    build = projective_module if kind == PROJECTIVE else injective_module
    standard = [build(a, lab) for lab, _ in primitive_idempotents(a)]
    for piece, _ in indecomposable_decomposition(mod):
        for s in standard:
            if piece.dim == s.dim and is_isomorphic(piece, s) is not None:
                return True
    return False


def _normalize_kind(kind: str) -> str:
    if kind in (PROJECTIVE, "pd", "fd"):
        return PROJECTIVE
    if kind in (INJECTIVE, "id"):
        return INJECTIVE
    raise InputError(f"unknown resolution kind {kind!r}")


def detect_syzygy_cycle(m: Module, kind: str, bound: int = DEFAULT_BOUND
                        ) -> Optional[tuple[int, int, Morphism]]:
    """First pair j < k <= bound with isomorphic nonzero (co)syzygies.

    The witness is required to carry no projective (resp. injective)
    direct summand, so a hit certifies the resolution never terminates.
    Only minimal resolutions are searched; None means no cycle found
    within the bound (it does not certify finiteness).
    """
    rkind = _normalize_kind(kind)
    res = _resolve(m, rkind, bound)
    if res.complete:
        return None
    syz = res.syzygies[: bound + 1]
    checked: dict[int, bool] = {}

    def clean(idx: int) -> bool:
        if idx not in checked:
            checked[idx] = not _has_split_summand(syz[idx], rkind)
        return checked[idx]

    for k in range(1, len(syz)):
        for j in range(k):
            if syz[j].dim == 0 or syz[j].dim != syz[k].dim:
                continue
            iso = is_isomorphic(syz[j], syz[k])
            if iso is not None and clean(j):
                return j, k, iso
    return None


def dimension(m: Module, kind: str = "pd", bound: int = DEFAULT_BOUND) -> BoundedAnswer:
    """Projective/injective/flat dimension as a bounded certificate.

    Flat and projective dimension agree here: everything in sight is a
    finitely generated module over a finite-dimensional algebra.
    """
    if kind not in ("pd", "id", "fd"):
        raise InputError(f"unknown dimension kind {kind!r}")
    if m.dim == 0:
        return BoundedAnswer.zero_module()
    rkind = _normalize_kind(kind)
    res = _resolve(m, rkind, bound)
    if res.complete:
        return BoundedAnswer.exactly(
            res.length_computed, reason="minimal resolution terminated"
        )
    hit = detect_syzygy_cycle(m, rkind, bound)
    if hit is not None:
        j, k, iso = hit
        return BoundedAnswer.infinite(
            j, k, reason=f"minimal resolution cycles: step {j} ≅ step {k}", witness=iso
        )
    return BoundedAnswer.unknown_beyond(bound)


def ext_dims(omega: Union[Bimodule, Module], m: Module, top: int) -> list[int]:
    """dim Ext^i(omega, m) for i = 0..top (each cross-checked)."""
    return [ext(omega, m, i, bound=top).dim for i in range(top + 1)]


def tor_dims(omega: Bimodule, n: Module, top: int) -> list[int]:
    """dim Tor_i(omega, n) for i = 0..top (each cross-checked)."""
    return [tor(omega, n, i, bound=top).dim for i in range(top + 1)]


def _sup_with_certificates(dims: list[int], probes, bound: int, label: str) -> BoundedAnswer:
    """Bounded sup{i : dims[i] != 0} given certification probes.

    Each probe is (finiteness answer, cycle hit or None, description); a
    finite answer kills all degrees beyond it, a (co)syzygy cycle makes
    the dims periodic past its first index.
    """
    nonzero = [i for i, d in enumerate(dims) if d]
    last = nonzero[-1] if nonzero else None

    def finish(reason: str) -> BoundedAnswer:
        if last is None:
            return BoundedAnswer.zero_module(f"every {label} group vanishes: {reason}")
        return BoundedAnswer.exactly(last, reason=reason)

    for fin, _, desc in probes:
        if fin is not None and fin.status == EXACT and fin.value <= bound:
            return finish(f"{desc} is {fin.value}")
    for _, hit, desc in probes:
        if hit is None:
            continue
        j, k, _ = hit
        if all(dims[i] == 0 for i in range(j + 1, k + 1)):
            # one full period vanishes, hence everything past j does
            trimmed = [i for i in nonzero if i <= j]
            if not trimmed:
                return BoundedAnswer.zero_module(
                    f"every {label} group vanishes: periodic tail is zero"
                )
            return BoundedAnswer.exactly(
                trimmed[-1], reason=f"periodic tail (period {k - j}) vanishes"
            )
        return BoundedAnswer.infinite(
            j, k, reason=f"{label} nonzero on a full period ({desc} cycles)"
        )
    return BoundedAnswer.unknown_beyond(bound)


def ext_sup(omega: Bimodule, m: Module, bound: int = DEFAULT_BOUND,
            dims: Optional[list[int]] = None) -> BoundedAnswer:
    """sup of the degrees with Ext^i(omega, m) nonzero, certified when
    possible.

    Certification paths: finite injective dimension of m, finite
    projective dimension of omega (as a left module), or a (co)syzygy
    cycle whose full period of Ext groups vanishes.  A ZeroModule answer
    encodes "every group vanishes" (sup over the empty set).
    """
    if m.dim == 0 or omega.dim == 0:
        return BoundedAnswer.zero_module()
    if dims is None:
        dims = ext_dims(omega, m, bound)
    ol = omega.as_left_module()
    probes = [
        (dimension(m, "id", bound), detect_syzygy_cycle(m, INJECTIVE, bound),
         "injective dimension of the argument"),
        (dimension(ol, "pd", bound), detect_syzygy_cycle(ol, PROJECTIVE, bound),
         "projective dimension of the bimodule"),
    ]
    return _sup_with_certificates(dims, probes, bound, "Ext")


def tor_sup(omega: Bimodule, n: Module, bound: int = DEFAULT_BOUND,
            dims: Optional[list[int]] = None) -> BoundedAnswer:
    """sup of the degrees with Tor_i(omega, n) nonzero, certified when
    possible (mirror of ext_sup on the tensor side)."""
    if n.dim == 0 or omega.dim == 0:
        return BoundedAnswer.zero_module()
    if dims is None:
        dims = tor_dims(omega, n, bound)
    orr = omega.as_right_module()
    probes = [
        (dimension(n, "pd", bound), detect_syzygy_cycle(n, PROJECTIVE, bound),
         "projective dimension of the argument"),
        (dimension(orr, "pd", bound), detect_syzygy_cycle(orr, PROJECTIVE, bound),
         "projective dimension of the bimodule (right side)"),
    ]
    return _sup_with_certificates(dims, probes, bound, "Tor")
