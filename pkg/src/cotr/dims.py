"""Relative homological dimensions measured against add ω.

Three rulers live here.  The relative projective dimension resolves a
module by quotients of finite sums of ω; the relative injective
dimension on the S side coresolves into the class that ω carves out of
the injective cogenerator; the Bass injective dimension walks the
ordinary injective coresolution and asks when the cosyzygy enters the
Bass class.  Every finite answer carries the chain that realizes it.

``theorem_4_2_approximations`` folds such a chain back into the two
sandwich sequences: one presenting the module inside a Bass-class
member with a short add-ω coresolution as cokernel, one presenting it
as a quotient of a module with such a coresolution, member kernel.
Both come from pullbacks against canonical approximations, so all the
verification data is produced along the way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

import numpy as np

from .answers import EXACT, INFINITE, UNKNOWN, ZERO, BoundedAnswer, ClassReport
from .errors import (
    InputError,
    InternalInvariantViolation,
    PreconditionNotCertified,
)
from .homology import (
    DEFAULT_BOUND,
    INJECTIVE,
    detect_syzygy_cycle,
    dimension,
    ext_dims,
    ext_sup,
    min_injective_resolution,
)
from .modrep import (
    Bimodule,
    Module,
    Morphism,
    ShortExactSequence,
    add_approximation,
    direct_sum,
    hom_space,
    identity_morphism,
    is_in_add,
    is_isomorphic,
    kernel,
    matlis_left_module,
    pullback,
    star,
    subquotient,
    zero_module,
    zero_morphism,
)
from .semidual import SemidualizingReport, _token, class_membership

PW_PD = "PwPd"
FW_PD = "FwPd"
PW_ID = "PwId"
IW_ID = "IwId"
BASS_ID = "BassId"
EXT_SUP = "ExtSup"

QUANTITIES = (PW_PD, FW_PD, PW_ID, IW_ID, BASS_ID, EXT_SUP)


@dataclass(eq=False)
class ApproximationChain:
    """A chain of canonical approximations realizing a relative dimension.

    With direction "resolution", steps[j] is the short exact sequence
    0 -> tail[j+1] -> A_j -> tail[j] -> 0 where tail[0] is the base and
    every A_j lies in add(generator); "coresolution" reverses the
    arrows.  ``final`` is the last tail.  A finite value means the final
    tail lies in add(generator) as well, so the glued chain has length
    len(steps) with all terms in the class.
    """

    direction: str  # "resolution" | "coresolution"
    base: Module
    generator: Module
    class_label: str
    steps: list[ShortExactSequence]
    final: Module

    @property
    def length(self) -> int:
        return len(self.steps)

    def terms(self) -> list[Module]:
        return [s.middle for s in self.steps]

    def verify(self) -> None:
        """Recheck the gluing and every term-class membership.

        Exactness of each step was enforced at construction; this is the
        replay hook for tests and the acceptance suite.
        """
        cur = self.base
        for j, s in enumerate(self.steps):
            if self.direction == "resolution":
                outer, nxt = s.right, s.left
            else:
                outer, nxt = s.left, s.right
            if outer is not cur:
                raise InternalInvariantViolation(f"chain does not glue at step {j}")
            if not is_in_add(s.middle, self.generator):
                raise InternalInvariantViolation(
                    f"step {j} term is not in add({self.class_label})"
                )
            cur = nxt
        if cur is not self.final:
            raise InternalInvariantViolation("chain final module mismatch")
        if not is_in_add(self.final, self.generator):
            raise InternalInvariantViolation(
                f"final module is not in add({self.class_label})"
            )

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "class": self.class_label,
            "length": self.length,
            "terms": [{"name": t.name, "dim": t.dim} for t in self.terms()],
            "final": {"name": self.final.name, "dim": self.final.dim},
        }


@dataclass(eq=False)
class BassChain:
    """Initial segment of the minimal injective coresolution, with the
    class verdict of every cosyzygy along the way; the final one is the
    member that stops the scan."""

    base: Module
    steps: list[ShortExactSequence]  # 0 -> cosyz j -> I^j -> cosyz j+1 -> 0
    final: Module
    reports: list[ClassReport]

    @property
    def length(self) -> int:
        return len(self.steps)

    def verify(self, cert: SemidualizingReport) -> None:
        omega = _token(cert)
        cogen = matlis_left_module(omega.left_algebra)
        cur = self.base
        for j, s in enumerate(self.steps):
            if s.left is not cur:
                raise InternalInvariantViolation(f"chain does not glue at step {j}")
            if not is_in_add(s.middle, cogen):
                raise InternalInvariantViolation(f"step {j} term is not injective")
            cur = s.right
        if cur is not self.final:
            raise InternalInvariantViolation("chain final module mismatch")
        if not class_membership(cert, self.final, "bass").holds:
            raise InternalInvariantViolation("final cosyzygy is not in the class")

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "terms": [{"name": s.middle.name, "dim": s.middle.dim} for s in self.steps],
            "final": {"name": self.final.name, "dim": self.final.dim},
            "cosyzygy_verdicts": [r.verdict for r in self.reports],
        }


Certificate = Union[ApproximationChain, BassChain]


@dataclass(eq=False)
class DimAnswer:
    """A relative dimension together with its realizing chain.

    ``certificate`` is present exactly when the value is Exactly(n) and
    it then has length n.  ``cross_check`` carries an independently
    computed companion number when one exists (the Ext-degree sup for
    the Bass dimension); ``note`` records scope annotations and the
    reconciliation story when the companion is uncertified.
    """

    quantity: str
    value: BoundedAnswer
    certificate: Optional[Certificate] = None
    cross_check: Optional[BoundedAnswer] = None
    note: str = ""

    def __str__(self) -> str:
        extra = f"  ({self.note})" if self.note else ""
        return f"{self.quantity} = {self.value}{extra}"

    def to_json(self) -> dict:
        out = {"quantity": self.quantity, "value": self.value.to_json()}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check.to_json()
        if self.note:
            out["note"] = self.note
        return out


def _require_side(m: Module, alg, op: str, side: str) -> None:
    if m.algebra is not alg:
        raise InputError(f"{op}: module lives over the wrong algebra "
                         f"(expected the {side}-hand one of ω)")


# -- the greedy engine ----------------------------------------------------


def _approximation_step(cur: Module, gen: Module, label: str, direction: str):
    """One canonical approximation step; (None, reason) when the class
    cannot reach (resolution) or separate (coresolution) the module."""
    fld = cur.field
    if direction == "resolution":
        src, eps = add_approximation(gen, cur)
        if not eps.is_surjective():
            return None, (f"the canonical map from add({label}) onto {cur.name} "
                          f"has image of dimension {eps.rank()} < {cur.dim}")
        ker, incl = kernel(eps)
        return ShortExactSequence(ker, src, cur, incl, eps), None
    homs = hom_space(cur, gen)
    if homs:
        tgt, _, _ = direct_sum([gen] * len(homs))
        eta = Morphism(cur, tgt, np.vstack([f.matrix for f in homs]) % fld.p)
    else:
        tgt = zero_module(cur.algebra)
        eta = zero_morphism(cur, tgt)
    if not eta.is_injective():
        return None, (f"the canonical map from {cur.name} into add({label}) "
                      f"has a kernel of dimension {cur.dim - eta.rank()}")
    cok, proj = subquotient(eta, "cokernel")
    return ShortExactSequence(cur, tgt, cok, eta, proj), None


def _greedy(base: Module, gen: Module, label: str, bound: int, direction: str
            ) -> tuple[BoundedAnswer, Optional[ApproximationChain]]:
    """Greedy canonical-approximation chain out to ``bound``.

    The approximations stack a full hom basis, so the construction is
    functorial: an isomorphism between two tails transports the entire
    remaining chain.  A repeat among tails that never meet add(gen)
    therefore certifies that no tail ever will.
    """
    if base.dim == 0:
        return BoundedAnswer.zero_module(), None
    fail = (BoundedAnswer.no_resolution if direction == "resolution"
            else BoundedAnswer.no_coresolution)
    tails = [base]
    steps: list[ShortExactSequence] = []
    for j in range(bound + 1):
        cur = tails[-1]
        if is_in_add(cur, gen):
            reason = ("greedy-certified: the module itself lies in the class"
                      if j == 0 else
                      f"greedy-certified: the chain terminates after {j} steps")
            chain = ApproximationChain(direction, base, gen, label, steps, cur)
            return BoundedAnswer.exactly(j, reason=reason), chain
        if j == bound:
            break
        ses, why = _approximation_step(cur, gen, label, direction)
        if ses is None:
            return fail(f"at stage {j}: {why}"), None
        steps.append(ses)
        tails.append(ses.left if direction == "resolution" else ses.right)
    for k in range(1, len(tails)):
        for j in range(k):
            if tails[j].dim != tails[k].dim or tails[j].dim == 0:
                continue
            iso = is_isomorphic(tails[j], tails[k])
            if iso is not None:
                return BoundedAnswer.infinite(
                    j, k,
                    reason=f"canonical approximation tails repeat: stage {j} ≅ stage {k}",
                    witness=iso,
                ), None
    return BoundedAnswer.unknown_beyond(bound), None


# -- the dimensions --------------------------------------------------------


def p_omega_pd(cert: SemidualizingReport, m: Module,
               bound: int = DEFAULT_BOUND) -> DimAnswer:
    """Length of the greedy proper resolution of m by finite sums of ω.

    Each step maps ω^h onto the current kernel through a full Hom(ω, -)
    basis; a module the class cannot surject onto gets the NoResolution
    status instead of a number.
    """
    omega = _token(cert)
    _require_side(m, omega.left_algebra, "p_omega_pd", "left")
    value, chain = _greedy(m, omega.as_left_module(), "ω", bound, "resolution")
    return DimAnswer(PW_PD, value, chain)


def f_omega_pd(cert: SemidualizingReport, m: Module,
               bound: int = DEFAULT_BOUND) -> DimAnswer:
    """The flat-flavored relative dimension.

    Finite-dimensional modules leave no room between sums of ω and their
    direct limits, so this is p_omega_pd under another name; the note on
    the answer records the collapse.
    """
    ans = p_omega_pd(cert, m, bound)
    return DimAnswer(FW_PD, ans.value, ans.certificate, ans.cross_check,
                     note="flat = projective at finite dimension")


def p_omega_id(cert: SemidualizingReport, m: Module,
               bound: int = DEFAULT_BOUND) -> DimAnswer:
    """Greedy coresolution length of an R-module by finite sums of ω.

    This is the ruler applied to the cokernel terms of the sandwich
    sequences; summands inherit the bound because the canonical
    approximation of a direct sum is the direct sum of the canonical
    approximations.
    """
    omega = _token(cert)
    _require_side(m, omega.left_algebra, "p_omega_id", "left")
    value, chain = _greedy(m, omega.as_left_module(), "ω", bound, "coresolution")
    return DimAnswer(PW_ID, value, chain)


def _cogenerator_image(omega: Bimodule) -> Module:
    """Hom(ω, D of the regular module): the S-side class whose add
    measures the relative injective dimension (cached on ω)."""
    cached = getattr(omega, "_cogenerator_image", None)
    if cached is not None:
        return cached
    dr = matlis_left_module(omega.left_algebra)
    cogen = star(omega, dr).module
    cogen.name = f"({dr.name})_*"
    omega._cogenerator_image = cogen
    return cogen


def i_omega_id(cert: SemidualizingReport, n: Module,
               bound: int = DEFAULT_BOUND) -> DimAnswer:
    """Greedy coresolution length of an S-module into the dualized
    cogenerator class; NoCoresolution when the class cannot separate the
    module (no injective canonical map)."""
    omega = _token(cert)
    _require_side(n, omega.right_algebra, "i_omega_id", "right")
    cogen = _cogenerator_image(omega)
    value, chain = _greedy(n, cogen, cogen.name, bound, "coresolution")
    return DimAnswer(IW_ID, value, chain)


def bass_id(cert: SemidualizingReport, m: Module,
            bound: int = DEFAULT_BOUND) -> DimAnswer:
    """Smallest n with the n-th cosyzygy of m in the Bass class.

    The scan walks the minimal injective coresolution and keeps the full
    membership report of every cosyzygy; Exactly(n) is only claimed when
    the first n verdicts are certified "out".  The Ext-degree sup is
    computed independently and attached as a cross-check.  A certified
    finite value on both sides must agree; a vanishing Ext tail alone
    never pulls the dimension down, because without a finiteness
    certificate it does not have to (the note records which side won).
    """
    omega = _token(cert)
    _require_side(m, omega.left_algebra, "bass_id", "left")
    es = ext_sup(omega, m, bound)
    if m.dim == 0:
        return DimAnswer(BASS_ID, BoundedAnswer.zero_module(), None, es)
    res = min_injective_resolution(m, bound)
    reports: list[ClassReport] = []
    value: Optional[BoundedAnswer] = None
    chain: Optional[BassChain] = None
    for n in range(bound + 1):
        cos = res.syzygy_module(n)
        rep = class_membership(cert, cos, "bass", bound)
        reports.append(rep)
        if rep.verdict == "in":
            reason = (f"cosyzygy {n} is a certified member and the earlier "
                      f"ones are certified out" if n else
                      "the module itself is a certified member")
            value = BoundedAnswer.exactly(n, reason=reason)
            chain = BassChain(m, [res.stage_ses(i) for i in range(n)], cos, reports)
            break
        if rep.verdict != "out":
            value = BoundedAnswer.unknown_beyond(
                bound,
                reason=f"membership of cosyzygy {n} was not decided either way",
            )
            break
    if value is None:
        # every cosyzygy through the bound is certified out
        hit = detect_syzygy_cycle(m, INJECTIVE, bound)
        if hit is not None:
            j, k, iso = hit
            value = BoundedAnswer.infinite(
                j, k,
                reason="cosyzygies repeat and every one in the period is certified out",
                witness=iso,
            )
        else:
            value = BoundedAnswer.unknown_beyond(bound)
    note = ""
    if value.status == EXACT:
        if es.status in (EXACT, ZERO):
            expected = es.value if es.status == EXACT else 0
            if expected != value.value:
                raise InternalInvariantViolation(
                    f"membership scan says {value.value} but the certified "
                    f"Ext-degree sup is {expected}"
                )
        elif es.status == INFINITE:
            raise InternalInvariantViolation(
                "membership certified finite, yet the Ext groups are "
                "certified nonvanishing on a full period"
            )
        else:
            note = ("Ext-side sup uncertified beyond the bound; the membership "
                    "chain alone certifies the value")
    elif value.status == INFINITE and es.status in (EXACT, ZERO):
        note = ("Ext groups stop, but vanishing alone does not bound the "
                "dimension without a finiteness certificate; the membership "
                "cycle stands")
    return DimAnswer(BASS_ID, value, chain, es, note)


# -- sandwich sequences ----------------------------------------------------


@dataclass(eq=False)
class ApproximationPair:
    """The two sandwich sequences around a module of finite Bass
    injective dimension, with their verification artifacts.

    ``above``: 0 -> M -> X -> W -> 0 with X in the class and W carrying
    an add-ω coresolution of length ≤ n-1; ``below``: 0 -> X' -> W' -> M
    -> 0 with X' in the class and the coresolution of W' of length ≤ n.
    Unpacks as the pair (above, below).
    """

    module: Module
    level: int
    precondition: DimAnswer
    above: ShortExactSequence
    below: ShortExactSequence
    member_above: ClassReport
    member_below: ClassReport
    chain_above: ApproximationChain
    chain_below: ApproximationChain

    def __iter__(self) -> Iterator[ShortExactSequence]:
        return iter((self.above, self.below))

    def to_json(self) -> dict:
        dims = lambda s: [s.left.dim, s.middle.dim, s.right.dim]  # noqa: E731
        return {
            "module": self.module.name,
            "level": self.level,
            "above": dims(self.above),
            "below": dims(self.below),
            "member_above": self.member_above.to_json(),
            "member_below": self.member_below.to_json(),
            "chain_above": self.chain_above.to_json(),
            "chain_below": self.chain_below.to_json(),
        }


def _factor_through_pullback(pb: Module, to_a: Morphism, to_b: Morphism,
                             src: Module, a_mat: Optional[np.ndarray],
                             b_mat: Optional[np.ndarray]) -> Morphism:
    """The unique map src -> pb with the prescribed two components
    (None meaning zero).  Solvability is the pullback property; the
    Morphism constructor rechecks equivariance."""
    fld = pb.field
    a_part = a_mat if a_mat is not None else fld.zeros(to_a.target.dim, src.dim)
    b_part = b_mat if b_mat is not None else fld.zeros(to_b.target.dim, src.dim)
    sol = fld.solve(np.vstack([to_a.matrix, to_b.matrix]),
                    np.vstack([a_part, b_part]))
    if sol is None:
        raise InternalInvariantViolation("pullback factorization failed")
    return Morphism(src, pb, sol)


def _seq_above(cert: SemidualizingReport, omega: Bimodule, x: Module,
               depth: int) -> tuple[ShortExactSequence, ApproximationChain]:
    """0 -> x -> X -> W -> 0 with X in the Bass class and W carrying an
    add-ω coresolution of length ≤ depth-1."""
    ol = omega.as_left_module()
    if x.dim == 0 or class_membership(cert, x, "bass").holds:
        z = zero_module(x.algebra)
        ses = ShortExactSequence(x, x, z, identity_morphism(x), zero_morphism(x, z))
        return ses, ApproximationChain("coresolution", z, ol, "ω", [], z)
    if depth == 0:
        raise InternalInvariantViolation(
            "certified depth exhausted before reaching the class")
    stage = min_injective_resolution(x, 1).stage_ses(0)  # 0 -> x -> I -> C -> 0
    below_c, chain_c = _seq_below(cert, omega, stage.right, depth - 1)
    pb, to_env, to_w = pullback(stage.proj, below_c.proj)
    pb.name = f"X^({x.name})"
    lift = _factor_through_pullback(pb, to_env, to_w, x, stage.incl.matrix, None)
    return ShortExactSequence(x, pb, below_c.middle, lift, to_w), chain_c


def _seq_below(cert: SemidualizingReport, omega: Bimodule, x: Module,
               depth: int) -> tuple[ShortExactSequence, ApproximationChain]:
    """0 -> X' -> W -> x -> 0 with X' in the Bass class and W carrying an
    add-ω coresolution of length ≤ depth.

    Built from the "above" sequence of x: pull its inclusion back along
    the canonical add-ω cover of the member; the kernel of the cover is
    the new member, and the middle row 0 -> W -> ω^h -> W_above -> 0
    starts the coresolution of W.
    """
    ol = omega.as_left_module()
    above_x, chain_x = _seq_above(cert, omega, x, depth)
    member = above_x.middle
    src, eps = add_approximation(ol, member)
    if not eps.is_surjective():
        raise InternalInvariantViolation(
            "the canonical add-ω map onto a Bass-class member is not onto")
    ker, kincl = kernel(eps)
    ker.name = f"X_({x.name})"
    pb, to_x, to_src = pullback(above_x.incl, eps)
    pb.name = f"W_({x.name})"
    lift = _factor_through_pullback(pb, to_x, to_src, ker, None, kincl.matrix)
    ses = ShortExactSequence(ker, pb, x, lift, to_x)
    if above_x.right.dim == 0:
        # the cover was pulled back along an identity: W is already in add ω
        chain = ApproximationChain("coresolution", pb, ol, "ω", [], pb)
    else:
        head = ShortExactSequence(
            pb, src, above_x.right, to_src,
            above_x.proj.compose(eps),
        )
        chain = ApproximationChain("coresolution", pb, ol, "ω",
                                   [head] + chain_x.steps, chain_x.final)
    return ses, chain


def theorem_4_2_approximations(cert: SemidualizingReport, m: Module, n: int,
                               bound: int = DEFAULT_BOUND) -> ApproximationPair:
    """Sandwich m between a Bass-class member and a short add-ω
    coresolution, in both orders, for a certified level n.

    Peels one injective envelope at a time until the cosyzygy enters the
    class, then folds back with pullbacks against canonical covers.  All
    claims are re-verified on the constructed objects: memberships of
    the X terms, gluing and term classes of the W coresolutions, and the
    length budgets n-1 (above) and n (below).
    """
    omega = _token(cert)
    _require_side(m, omega.left_algebra, "theorem_4_2_approximations", "left")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("the coresolution budget n must be a nonnegative integer")
    ba = bass_id(cert, m, bound)
    if ba.value.status == ZERO:
        level = 0
    elif ba.value.status == EXACT and ba.value.value <= n:
        level = ba.value.value
    else:
        raise PreconditionNotCertified(
            f"needs a certified Bass injective dimension ≤ {n}; got {ba.value}")
    above, chain_above = _seq_above(cert, omega, m, level)
    below, chain_below = _seq_below(cert, omega, m, level)
    rep_above = class_membership(cert, above.middle, "bass", bound)
    rep_below = class_membership(cert, below.left, "bass", bound)
    if not rep_above.holds or not rep_below.holds:
        raise InternalInvariantViolation(
            "a constructed sandwich term fell outside the class")
    chain_above.verify()
    chain_below.verify()
    if chain_above.base.dim and chain_above.length > n - 1:
        raise InternalInvariantViolation(
            f"upper cokernel coresolution too long: {chain_above.length} > {n - 1}")
    if chain_below.base.dim and chain_below.length > n:
        raise InternalInvariantViolation(
            f"lower kernel coresolution too long: {chain_below.length} > {n}")
    return ApproximationPair(m, n, ba, above, below,
                             rep_above, rep_below, chain_above, chain_below)


# -- global invariants of ω ------------------------------------------------


def semi_tilting(cert: SemidualizingReport, side: str,
                 bound: int = DEFAULT_BOUND) -> BoundedAnswer:
    """Projective dimension of ω over R (left) or over the opposite of S
    (right); Exactly(finite) here is the gateway hypothesis for the
    regular module's Bass dimension and the Ext-sup collapse."""
    _token(cert)
    omega = cert.omega
    if side == "left":
        return dimension(omega.as_left_module(), "pd", bound)
    if side == "right":
        return dimension(omega.as_right_module(), "pd", bound)
    raise InputError(f"side must be 'left' or 'right', not {side!r}")


def ext_based_pd(cert: SemidualizingReport, m: Module,
                 bound: int = DEFAULT_BOUND) -> BoundedAnswer:
    """sup of the degrees with Ext^i(m, ω) nonzero: the shortcut formula
    for the relative projective dimension.

    Only answers once the greedy resolution has certified a finite
    value; that resolution is the finiteness certificate which turns the
    raw degree scan into a certified sup, and the two numbers are
    asserted equal.
    """
    omega = _token(cert)
    _require_side(m, omega.left_algebra, "ext_based_pd", "left")
    pa = p_omega_pd(cert, m, bound)
    if pa.value.status == ZERO:
        return BoundedAnswer.zero_module()
    if pa.value.status != EXACT:
        raise PreconditionNotCertified(
            f"needs a certified finite relative projective dimension; got {pa.value}")
    degs = ext_dims(m, omega.as_left_module(), bound)
    nonzero = [i for i, d in enumerate(degs) if d]
    if not nonzero:
        raise InternalInvariantViolation(
            "every Ext degree vanished despite a finite proper resolution")
    sup = nonzero[-1]
    if sup != pa.value.value:
        raise InternalInvariantViolation(
            f"Ext-degree sup {sup} disagrees with the resolution length "
            f"{pa.value.value}")
    return BoundedAnswer.exactly(
        sup,
        reason=(f"matches the greedy resolution length; degrees beyond {sup} "
                f"vanish along the length-{sup} add-ω resolution"),
    )
