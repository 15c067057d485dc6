"""Structural queries for groups already known nilpotent: finiteness,
order, complete reducibility, primary/Sylow decomposition, center."""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .config import DEFAULT, Config
from .congruence import finite_image_presentation, kernel_normal_generators
from .errors import ImperfectField, VerdictUnavailable
from .fields import FiniteField, FunctionField
from .groups import Elt, GroupSpec
from .nilpotency import (
    SylowSystem,
    Verdict,
    adjoint_rep,
    is_finite_nilpotent,
    is_nilpotent,
)
from .splitting import finite_order
from .witness import WItem, Witness


@dataclass
class StructureReport:
    nilpotent: bool
    finite: bool | None = None
    order: int | None = None
    completely_reducible: bool | None = None
    cr_series_dims: list | None = None
    primary: SylowSystem | None = None
    primary_is_extension: bool = False
    center_gens: list | None = None
    witness: Witness | None = None
    route: str = ""
    notes: list = dfield(default_factory=list)


def _require_nilpotent(G, config, verdict):
    if verdict is None:
        verdict = is_nilpotent(G, config)
    if not verdict.nilpotent:
        raise ValueError("structural queries expect a nilpotent group")
    return verdict


def is_finite(G: GroupSpec, config: Config = DEFAULT, verdict: Verdict | None = None):
    """(finite?, route marker, witness for the infinite case)."""
    verdict = _require_nilpotent(G, config, verdict)
    F = G.field
    if isinstance(F, FiniteField):
        return True, "finite-field", None, verdict
    if verdict.artifacts.get("trivial"):
        return True, "trivial", None, verdict
    if isinstance(F, FunctionField) and F.characteristic() > 0:
        return _is_finite_ff_char_p(G, config, verdict)
    split = verdict.artifacts.get("split")
    for i, u in enumerate(split.gens_u):
        if not u.is_identity():
            return (
                False,
                "unipotent-part",
                Witness(
                    kind="nontrivial_unipotent_part",
                    context="input",
                    items=(
                        WItem("g", G.gens[i], ((i, 1),)),
                        WItem("s", split.gens_s[i]),
                        WItem("u", u),
                    ),
                    note="a generator has a nontrivial unipotent part, which has infinite order in characteristic zero",
                ),
                verdict,
            )
    kernel = verdict.artifacts.get("kernel_gens", [])
    for z in kernel:
        if not z.is_identity():
            items = (WItem("z", z.mat, z.word),) + tuple(
                WItem(f"context_gen_{i}", g) for i, g in enumerate(split.gens_s)
            )
            return (
                False,
                "congruence-kernel",
                Witness(
                    kind="nontrivial_kernel_element",
                    context="s_parts",
                    items=items,
                    note="a congruence kernel generator is nontrivial, and the kernel is torsion-free",
                ),
                verdict,
            )
    return True, "congruence-kernel", None, verdict


def _is_finite_ff_char_p(G, config, verdict):
    kernel = verdict.artifacts.get("kernel_gens", [])
    for z in kernel:
        m = finite_order(z.mat, config)
        if m is None:
            return (
                False,
                "evaluation-kernel",
                Witness(
                    kind="infinite_order_element",
                    context="input",
                    items=(WItem("z", z.mat, z.word),),
                    note="an evaluation kernel generator has infinite order",
                ),
                verdict,
            )
    return True, "evaluation-kernel", None, verdict


def order(G: GroupSpec, config: Config = DEFAULT, verdict: Verdict | None = None) -> int:
    """Exact order of a finite nilpotent group."""
    verdict = _require_nilpotent(G, config, verdict)
    F = G.field
    if verdict.artifacts.get("trivial"):
        return 1
    if isinstance(F, FiniteField):
        pres = finite_image_presentation(list(G.gens), config.cayley_cap, identity=G.identity)
        return pres.image_order
    fin, route, witness, verdict = is_finite(G, config, verdict)
    if not fin:
        raise ValueError("order is defined for finite groups only")
    if isinstance(F, FunctionField) and F.characteristic() > 0:
        from .testkit import closure_elts

        image_order = verdict.artifacts["presentation"].image_order
        kernel = verdict.artifacts.get("kernel_gens", [])
        kernel = [z for z in kernel if not z.is_identity()]
        ksize = len(closure_elts(kernel, config.closure_cap)) if kernel else 1
        return image_order * ksize
    pres = verdict.artifacts.get("presentation")
    if pres is None:
        # purely unipotent finite group in char 0 is trivial
        return 1
    return pres.image_order


def is_completely_reducible(G: GroupSpec, config: Config = DEFAULT, verdict: Verdict | None = None):
    """(completely reducible?, module series dimensions); the series factors
    are completely reducible in either case."""
    F = G.field
    if isinstance(F, FunctionField) and F.characteristic() > 0:
        raise ImperfectField("complete reducibility testing needs a perfect field")
    verdict = _require_nilpotent(G, config, verdict)
    split = verdict.artifacts.get("split")
    if split is None:
        from .splitting import reduction_split

        split = reduction_split(G, config)
    flag = list(split.cert_u.flag)
    cr = all(u.is_identity() for u in split.gens_u)
    return cr, flag


def primary_decomposition(G: GroupSpec, config: Config = DEFAULT, verdict: Verdict | None = None):
    """Sylow/primary system: exact Sylow decomposition for finite groups,
    and for infinite groups the components of the diagonalizable part
    modulo its center (an extension of the finite notion, labeled as such)."""
    verdict = _require_nilpotent(G, config, verdict)
    F = G.field
    if verdict.artifacts.get("trivial"):
        return SylowSystem({}, {}), False, verdict
    if isinstance(F, FiniteField):
        v = is_finite_nilpotent(G, config) if "sylow" not in verdict.artifacts else verdict
        return v.artifacts["sylow"], False, verdict
    fin, route, witness, verdict = is_finite(G, config, verdict)
    if isinstance(F, FunctionField) and F.characteristic() > 0:
        if not fin:
            raise VerdictUnavailable(
                "primary decomposition over char-p function fields is provided for finite groups only"
            )
        kernel = [z for z in verdict.artifacts.get("kernel_gens", []) if not z.is_identity()]
        if kernel:
            raise VerdictUnavailable(
                "primary decomposition needs a faithful evaluation image here"
            )
        image_sylow = verdict.artifacts["image_sylow"]
        comps = {
            p: [Elt(G.evaluate(e.word), e.word) for e in elts]
            for p, elts in image_sylow.components.items()
        }
        return SylowSystem(comps, dict(image_sylow.orders)), False, verdict
    if fin:
        # faithful congruence image: pull the image Sylow system back by words
        image_sylow = verdict.artifacts.get("image_sylow")
        if image_sylow is None:
            return SylowSystem({}, {}), False, verdict
        comps = {
            p: [Elt(G.evaluate(e.word), e.word) for e in elts]
            for p, elts in image_sylow.components.items()
        }
        return SylowSystem(comps, dict(image_sylow.orders)), False, verdict
    # infinite: decompose the adjoint image of the diagonalizable part
    split = verdict.artifacts.get("split")
    Gs = GroupSpec(F, split.gens_s)
    if all(s.is_identity() for s in split.gens_s):
        return SylowSystem({}, {}, central_part=()), True, verdict
    from .nilpotency import is_nilpotent_adjoint

    v_adj = is_nilpotent_adjoint(Gs, config)
    if not v_adj.nilpotent:
        raise ValueError("adjoint decomposition failed on a nilpotent input")
    adj_sylow = v_adj.artifacts.get("sylow")
    comps = {}
    if adj_sylow is not None:
        for p, elts in adj_sylow.components.items():
            comps[p] = [Elt(Gs.evaluate(e.word), e.word) for e in elts]
    central = center_generators(Gs, config)
    sylow = SylowSystem(comps, dict(adj_sylow.orders) if adj_sylow else {}, central_part=tuple(central))
    return sylow, True, verdict


def center_generators(G: GroupSpec, config: Config = DEFAULT):
    """Generators of the center of a completely reducible nilpotent group,
    as relator evaluations through the adjoint representation."""
    if not G.gens or G.is_trivial():
        return [Elt(G.identity, ())]
    ad = adjoint_rep(G)
    pres = finite_image_presentation(list(ad.adj_gens), config.cayley_cap)
    out = []
    seen = set()
    for z in kernel_normal_generators(G, pres):
        if z.mat in seen:
            continue
        seen.add(z.mat)
        out.append(z)
    if not out:
        out = [Elt(G.identity, ())]
    return out


def analyze(G: GroupSpec, config: Config = DEFAULT) -> StructureReport:
    """Full structural report: nilpotency first, then every query that
    applies to the input."""
    verdict = is_nilpotent(G, config)
    if not verdict.nilpotent:
        return StructureReport(nilpotent=False, witness=verdict.witness)
    report = StructureReport(nilpotent=True)
    fin, route, witness, verdict = is_finite(G, config, verdict)
    report.finite = fin
    report.route = route
    if not fin:
        report.witness = witness
    if fin:
        report.order = order(G, config, verdict)
    F = G.field
    if not (isinstance(F, FunctionField) and F.characteristic() > 0):
        cr, flag = is_completely_reducible(G, config, verdict)
        report.completely_reducible = cr
        report.cr_series_dims = [s.dim for s in flag]
    try:
        sylow, extension, verdict = primary_decomposition(G, config, verdict)
        report.primary = sylow
        report.primary_is_extension = extension
        if extension:
            report.notes.append(
                "primary components of an infinite group are reported modulo the center "
                "of the diagonalizable part; this extends the finite-group notion"
            )
    except VerdictUnavailable as e:
        report.notes.append(str(e))
    if report.completely_reducible:
        report.center_gens = center_generators(G, config)
    return report
