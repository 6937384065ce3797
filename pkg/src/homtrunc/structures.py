"""Coalgebraic and algebraic structures on chain complexes, with exact checkers.

All structure maps are plain graded maps of degree 0; constructors enforce
only shape (endpoints, degrees, conformability) so that deliberately broken
instances can be built and then *reported* by the checkers, which verify
every axiom as an entrywise matrix identity and return the first failing
basis vector as a printable witness.

Structures are non-counital and non-unital throughout.  Coassociativity is
always compared after the explicit reassociation ``(X⊗X)⊗X -> X⊗(X⊗X)``.
The relative tensor ``M ⊗_A B`` is the degreewise cokernel of

    m⊗a⊗b  |->  (m·a)⊗b - m⊗(a·b),

computed with the canonical complement of the relation span, so its basis
(and hence the matrix form of every coring comultiplication or coaction in
a workspace file) is reproducible.  Identities that live over ``⊗_A`` are
checked by lifting along the canonical section and projecting back; for
the triple product the two relation slots are quotiented together.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple

from .complexes import ChainComplex, NotAComplex, Witness, tensor_complexes
from .graded import (
    GradedMap,
    GradedModule,
    first_difference,
    quotient,
    reassociator,
    reassociator_inv,
    tensor_maps,
    tensor_modules,
)
from .matrices import Matrix, rank, solve


# ---- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Witness | None = None


@dataclass(frozen=True)
class AxiomReport:
    """Ordered per-identity verdicts for one structure."""

    structure: str
    entries: tuple[tuple[str, Verdict], ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for _, v in self.entries)

    @property
    def witness(self) -> Witness | None:
        for _, v in self.entries:
            if not v.ok:
                return v.witness
        return None


def _verdict_eq(identity: str, lhs: GradedMap, rhs: GradedMap) -> Verdict:
    diff = first_difference(lhs, rhs)
    if diff is None:
        return Verdict(True)
    return Verdict(False, Witness(diff[0], diff[1], identity))


def _chain_map_verdict(identity: str, f: GradedMap, d_src: GradedMap, d_tgt: GradedMap) -> Verdict:
    return _verdict_eq(identity, f @ d_src, d_tgt @ f)


# ---- structure types ---------------------------------------------------------


@dataclass(frozen=True)
class Comonoid:
    carrier: ChainComplex
    delta: GradedMap

    def __post_init__(self):
        x = self.carrier.module
        _expect_endpoints(self.delta, x, tensor_modules(x, x), "comultiplication")


@dataclass(frozen=True)
class Comodule:
    coalgebra: Comonoid
    carrier: ChainComplex
    coaction: GradedMap

    def __post_init__(self):
        m = self.carrier.module
        b = self.coalgebra.carrier.module
        _expect_endpoints(self.coaction, m, tensor_modules(m, b), "coaction")


@dataclass(frozen=True)
class Monoid:
    carrier: ChainComplex
    mu: GradedMap

    def __post_init__(self):
        a = self.carrier.module
        _expect_endpoints(self.mu, tensor_modules(a, a), a, "multiplication")

    @classmethod
    def zero(cls, field) -> Monoid:
        z = ChainComplex.zero(field)
        return cls(z, GradedMap.zero_map(GradedModule.zero(field), z.module))


@dataclass(frozen=True)
class RightModule:
    algebra: Monoid
    carrier: ChainComplex
    action: GradedMap

    def __post_init__(self):
        m = self.carrier.module
        a = self.algebra.carrier.module
        _expect_endpoints(self.action, tensor_modules(m, a), m, "right action")


@dataclass(frozen=True)
class LeftModule:
    algebra: Monoid
    carrier: ChainComplex
    action: GradedMap

    def __post_init__(self):
        m = self.carrier.module
        a = self.algebra.carrier.module
        _expect_endpoints(self.action, tensor_modules(a, m), m, "left action")


def _expect_endpoints(f: GradedMap, source: GradedModule, target: GradedModule, what: str):
    if f.degree != 0:
        raise ValueError(f"{what} must have degree 0, got {f.degree}")
    if f.source != source or f.target != target:
        raise ValueError(f"{what} endpoints do not match the declared carriers")


# ---- relative tensor ----------------------------------------------------------


@dataclass(frozen=True)
class RelTensorData:
    """Graded presentation of ``M ⊗_A B`` with its canonical projection/section.

    ``differential`` is the candidate induced by the plain tensor
    differential; it squares to zero exactly when ``stable`` holds, i.e.
    when the relation span is preserved by the differential (always the
    case once both actions are chain maps).
    """

    module: GradedModule
    projection: GradedMap
    section: GradedMap
    differential: GradedMap
    stable: bool

    def complex(self) -> ChainComplex:
        return ChainComplex(self.module, self.differential)


def _relation_map(
    m: GradedModule, a: GradedModule, b: GradedModule,
    right_action: GradedMap, left_action: GradedMap,
) -> GradedMap:
    """``(M⊗A)⊗B -> M⊗B`` sending m⊗a⊗b to (m·a)⊗b - m⊗(a·b)."""
    id_m = GradedMap.identity(m)
    id_b = GradedMap.identity(b)
    act = tensor_maps(right_action, id_b)
    absorb = tensor_maps(id_m, left_action) @ reassociator(m, a, b)
    return act - absorb


def relative_tensor_data(
    mx: ChainComplex, action: GradedMap,
    ax: ChainComplex, bx: ChainComplex, left_action: GradedMap,
) -> RelTensorData:
    plain = tensor_complexes(mx, bx)
    rel = _relation_map(mx.module, ax.module, bx.module, action, left_action)
    mod, proj, sect = quotient(plain.module, dict(rel.blocks))
    diff = proj @ plain.differential @ sect
    stable = ((proj @ plain.differential) @ rel).is_zero
    return RelTensorData(mod, proj, sect, diff, stable)


class RelativeTensor(NamedTuple):
    complex: ChainComplex
    projection: GradedMap


def relative_tensor(m: RightModule, b: LeftModule) -> RelativeTensor:
    """``M ⊗_A B`` as a chain complex with the projection from the plain tensor."""
    if m.algebra != b.algebra:
        raise ValueError("algebra mismatch: both sides must be modules over the same monoid")
    data = relative_tensor_data(m.carrier, m.action, m.algebra.carrier, b.carrier, b.action)
    return RelativeTensor(data.complex(), data.projection)


def triple_relative_data(
    mx: ChainComplex, action: GradedMap,
    ax: ChainComplex, bx: ChainComplex, left_action: GradedMap, right_action: GradedMap,
) -> tuple[GradedModule, GradedMap]:
    """``M ⊗_A B ⊗_A B`` as a quotient of M⊗(B⊗B), with its projection.

    Both relation slots are divided out at once; sections into the plain
    triple tensor then compute any map valued in the balanced product.
    """
    m, a, b = mx.module, ax.module, bx.module
    bb = tensor_modules(b, b)
    base = tensor_modules(m, bb)
    id_m = GradedMap.identity(m)
    id_b = GradedMap.identity(b)
    rel_mb = _relation_map(m, a, b, action, left_action)
    slot12 = reassociator(m, b, b) @ tensor_maps(rel_mb, id_b)
    rel_bb = _relation_map(b, a, b, right_action, left_action)
    slot23 = tensor_maps(id_m, rel_bb)
    subs: dict[int, Matrix] = {}
    for deg in sorted(set(slot12.blocks) | set(slot23.blocks)):
        subs[deg] = slot12.block(deg).hstack(slot23.block(deg))
    mod, proj, _ = quotient(base, subs)
    return mod, proj


# ---- corings and their comodules ----------------------------------------------


@dataclass(frozen=True)
class Coring:
    """A comonoid in (A,A)-bimodules; its comultiplication lands in ``B ⊗_A B``."""

    algebra: Monoid
    carrier: ChainComplex
    left_action: GradedMap
    right_action: GradedMap
    delta: GradedMap

    def __post_init__(self):
        a = self.algebra.carrier.module
        b = self.carrier.module
        _expect_endpoints(self.left_action, tensor_modules(a, b), b, "left action")
        _expect_endpoints(self.right_action, tensor_modules(b, a), b, "right action")
        _expect_endpoints(self.delta, b, self.bimodule_tensor.module, "coring comultiplication")

    @cached_property
    def bimodule_tensor(self) -> RelTensorData:
        return relative_tensor_data(
            self.carrier, self.right_action, self.algebra.carrier, self.carrier, self.left_action
        )


@dataclass(frozen=True)
class CoringComodule:
    coring: Coring
    carrier: RightModule
    coaction: GradedMap

    def __post_init__(self):
        if self.carrier.algebra != self.coring.algebra:
            raise ValueError("algebra mismatch between module and coring")
        m = self.carrier.carrier.module
        _expect_endpoints(self.coaction, m, self.relative.module, "coring coaction")

    @cached_property
    def relative(self) -> RelTensorData:
        return relative_tensor_data(
            self.carrier.carrier,
            self.carrier.action,
            self.coring.algebra.carrier,
            self.coring.carrier,
            self.coring.left_action,
        )


# ---- checkers -------------------------------------------------------------------


def check_comonoid(c: Comonoid) -> AxiomReport:
    x = c.carrier
    xx = tensor_complexes(x, x)
    ident = GradedMap.identity(x.module)
    rho = reassociator(x.module, x.module, x.module)
    lhs = rho @ tensor_maps(c.delta, ident) @ c.delta
    rhs = tensor_maps(ident, c.delta) @ c.delta
    return AxiomReport(
        "comonoid",
        (
            ("chain_map", _chain_map_verdict("chain_map", c.delta, x.differential, xx.differential)),
            ("coassociativity", _verdict_eq("coassociativity", lhs, rhs)),
        ),
    )


def check_comodule(m: Comodule) -> AxiomReport:
    mx = m.carrier
    b = m.coalgebra
    mb = tensor_complexes(mx, b.carrier)
    id_m = GradedMap.identity(mx.module)
    id_b = GradedMap.identity(b.carrier.module)
    rho = reassociator(mx.module, b.carrier.module, b.carrier.module)
    lhs = rho @ tensor_maps(m.coaction, id_b) @ m.coaction
    rhs = tensor_maps(id_m, b.delta) @ m.coaction
    return AxiomReport(
        "comodule",
        (
            ("chain_map", _chain_map_verdict("chain_map", m.coaction, mx.differential, mb.differential)),
            ("coassociativity", _verdict_eq("coassociativity", lhs, rhs)),
        ),
    )


def check_monoid(a: Monoid) -> AxiomReport:
    ax = a.carrier
    aa = tensor_complexes(ax, ax)
    ident = GradedMap.identity(ax.module)
    lhs = a.mu @ tensor_maps(a.mu, ident)
    rhs = a.mu @ tensor_maps(ident, a.mu) @ reassociator(ax.module, ax.module, ax.module)
    return AxiomReport(
        "monoid",
        (
            ("chain_map", _chain_map_verdict("chain_map", a.mu, aa.differential, ax.differential)),
            ("associativity", _verdict_eq("associativity", lhs, rhs)),
        ),
    )


def _right_module_entries(m: RightModule) -> tuple[tuple[str, Verdict], ...]:
    mx = m.carrier
    ax = m.algebra.carrier
    ma = tensor_complexes(mx, ax)
    id_m = GradedMap.identity(mx.module)
    id_a = GradedMap.identity(ax.module)
    lhs = m.action @ tensor_maps(m.action, id_a)
    rhs = m.action @ tensor_maps(id_m, m.algebra.mu) @ reassociator(mx.module, ax.module, ax.module)
    return (
        ("chain_map", _chain_map_verdict("chain_map", m.action, ma.differential, mx.differential)),
        ("associativity", _verdict_eq("associativity", lhs, rhs)),
    )


def check_right_module(m: RightModule) -> AxiomReport:
    return AxiomReport("right_module", _right_module_entries(m))


def check_left_module(m: LeftModule) -> AxiomReport:
    mx = m.carrier
    ax = m.algebra.carrier
    am = tensor_complexes(ax, mx)
    id_m = GradedMap.identity(mx.module)
    id_a = GradedMap.identity(ax.module)
    lhs = m.action @ tensor_maps(m.algebra.mu, id_m)
    rhs = m.action @ tensor_maps(id_a, m.action) @ reassociator(ax.module, ax.module, mx.module)
    return AxiomReport(
        "left_module",
        (
            ("chain_map", _chain_map_verdict("chain_map", m.action, am.differential, mx.differential)),
            ("associativity", _verdict_eq("associativity", lhs, rhs)),
        ),
    )


def check_coring(b: Coring) -> AxiomReport:
    ax = b.algebra.carrier
    bx = b.carrier
    a_mod, b_mod = ax.module, bx.module
    ab = tensor_complexes(ax, bx)
    ba = tensor_complexes(bx, ax)
    id_a = GradedMap.identity(a_mod)
    id_b = GradedMap.identity(b_mod)
    rel = b.bimodule_tensor

    entries = [
        ("left_action_chain_map",
         _chain_map_verdict("left_action_chain_map", b.left_action, ab.differential, bx.differential)),
        ("right_action_chain_map",
         _chain_map_verdict("right_action_chain_map", b.right_action, ba.differential, bx.differential)),
        ("left_associativity", _verdict_eq(
            "left_associativity",
            b.left_action @ tensor_maps(b.algebra.mu, id_b),
            b.left_action @ tensor_maps(id_a, b.left_action) @ reassociator(a_mod, a_mod, b_mod),
        )),
        ("right_associativity", _verdict_eq(
            "right_associativity",
            b.right_action @ tensor_maps(b.right_action, id_a),
            b.right_action @ tensor_maps(id_b, b.algebra.mu) @ reassociator(b_mod, a_mod, a_mod),
        )),
        ("bimodule_commute", _verdict_eq(
            "bimodule_commute",
            b.right_action @ tensor_maps(b.left_action, id_a),
            b.left_action @ tensor_maps(id_a, b.right_action) @ reassociator(a_mod, b_mod, a_mod),
        )),
        ("delta_chain_map",
         _verdict_eq("delta_chain_map", b.delta @ bx.differential, rel.differential @ b.delta)),
    ]

    lbar = (rel.projection @ tensor_maps(b.left_action, id_b)
            @ reassociator_inv(a_mod, b_mod, b_mod) @ tensor_maps(id_a, rel.section))
    rbar = (rel.projection @ tensor_maps(id_b, b.right_action)
            @ reassociator(b_mod, b_mod, a_mod) @ tensor_maps(rel.section, id_a))
    entries.append(("left_linearity", _verdict_eq(
        "left_linearity", b.delta @ b.left_action, lbar @ tensor_maps(id_a, b.delta))))
    entries.append(("right_linearity", _verdict_eq(
        "right_linearity", b.delta @ b.right_action, rbar @ tensor_maps(b.delta, id_a))))

    lift = rel.section @ b.delta
    _, proj3 = triple_relative_data(bx, b.right_action, ax, bx, b.left_action, b.right_action)
    lhs = proj3 @ reassociator(b_mod, b_mod, b_mod) @ tensor_maps(lift, id_b) @ lift
    rhs = proj3 @ tensor_maps(id_b, lift) @ lift
    entries.append(("coassociativity", _verdict_eq("coassociativity", lhs, rhs)))
    return AxiomReport("coring", tuple(entries))


def check_coring_comodule(cm: CoringComodule) -> AxiomReport:
    coring = cm.coring
    ax = coring.algebra.carrier
    bx = coring.carrier
    mod = cm.carrier
    mx = mod.carrier
    m_mod, a_mod, b_mod = mx.module, ax.module, bx.module
    id_m = GradedMap.identity(m_mod)
    id_a = GradedMap.identity(a_mod)
    id_b = GradedMap.identity(b_mod)
    rel = cm.relative

    entries = list(_right_module_entries(mod))
    entries[0] = ("action_chain_map", entries[0][1])
    entries[1] = ("action_associativity", entries[1][1])

    entries.append(("coaction_chain_map", _verdict_eq(
        "coaction_chain_map", cm.coaction @ mx.differential, rel.differential @ cm.coaction)))

    rbar = (rel.projection @ tensor_maps(id_m, coring.right_action)
            @ reassociator(m_mod, b_mod, a_mod) @ tensor_maps(rel.section, id_a))
    entries.append(("a_linearity", _verdict_eq(
        "a_linearity", cm.coaction @ mod.action, rbar @ tensor_maps(cm.coaction, id_a))))

    lift = rel.section @ cm.coaction
    delta_lift = coring.bimodule_tensor.section @ coring.delta
    _, proj3 = triple_relative_data(
        mx, mod.action, ax, bx, coring.left_action, coring.right_action
    )
    lhs = proj3 @ reassociator(m_mod, b_mod, b_mod) @ tensor_maps(lift, id_b) @ lift
    rhs = proj3 @ tensor_maps(id_m, delta_lift) @ lift
    entries.append(("coassociativity", _verdict_eq("coassociativity", lhs, rhs)))
    return AxiomReport("coring_comodule", tuple(entries))


# ---- constructions ---------------------------------------------------------------


def cofree_comodule(x: ChainComplex, b: Comonoid) -> Comodule:
    """``X ⊗ B`` with coaction ``Id_X ⊗ δ_B`` (reassociated into ``(X⊗B)⊗B``)."""
    if x.field != b.carrier.field:
        raise ValueError("field mismatch")
    carrier = tensor_complexes(x, b.carrier)
    id_x = GradedMap.identity(x.module)
    coaction = (
        reassociator_inv(x.module, b.carrier.module, b.carrier.module)
        @ tensor_maps(id_x, b.delta)
    )
    return Comodule(b, carrier, coaction)


# ---- transport along isomorphisms --------------------------------------------------


def invert_iso(phi: GradedMap) -> GradedMap:
    """Invert a degree-0 map with square invertible blocks on every degree."""
    if phi.degree != 0:
        raise ValueError("only degree-0 maps can be inverted")
    blocks = {}
    for deg in phi.source.degrees():
        blk = phi.block(deg)
        if blk.rows != blk.cols:
            raise ValueError(f"block at degree {deg} is not square")
        if blk.cols == 0:
            continue
        if rank(blk) != blk.cols:
            raise ValueError(f"block at degree {deg} is not invertible")
        blocks[deg] = solve(blk, Matrix.identity(blk.field, blk.cols))
    return GradedMap(phi.target, phi.source, 0, blocks)


def transport_complex(
    x: ChainComplex, blocks: Mapping[int, Matrix]
) -> tuple[ChainComplex, GradedMap, GradedMap]:
    """Conjugate the differential by a degreewise isomorphism of the same module."""
    phi = GradedMap(x.module, x.module, 0, dict(blocks))
    phi_inv = invert_iso(phi)
    moved = ChainComplex(x.module, phi @ x.differential @ phi_inv)
    return moved, phi, phi_inv


def transport_comonoid(c: Comonoid, blocks: Mapping[int, Matrix]) -> Comonoid:
    moved, phi, phi_inv = transport_complex(c.carrier, blocks)
    return Comonoid(moved, tensor_maps(phi, phi) @ c.delta @ phi_inv)


def transport_comodule(m: Comodule, blocks: Mapping[int, Matrix]) -> Comodule:
    moved, phi, phi_inv = transport_complex(m.carrier, blocks)
    id_b = GradedMap.identity(m.coalgebra.carrier.module)
    return Comodule(m.coalgebra, moved, tensor_maps(phi, id_b) @ m.coaction @ phi_inv)


def transport_monoid(a: Monoid, blocks: Mapping[int, Matrix]) -> Monoid:
    moved, phi, phi_inv = transport_complex(a.carrier, blocks)
    return Monoid(moved, phi @ a.mu @ tensor_maps(phi_inv, phi_inv))


def transport_right_module(m: RightModule, blocks: Mapping[int, Matrix]) -> RightModule:
    moved, phi, phi_inv = transport_complex(m.carrier, blocks)
    id_a = GradedMap.identity(m.algebra.carrier.module)
    return RightModule(m.algebra, moved, phi @ m.action @ tensor_maps(phi_inv, id_a))


def transport_coring_comodule(cm: CoringComodule, blocks: Mapping[int, Matrix]) -> CoringComodule:
    """Conjugate the underlying module; the coaction moves through the two quotients."""
    moved, phi, phi_inv = transport_complex(cm.carrier.carrier, blocks)
    id_a = GradedMap.identity(cm.coring.algebra.carrier.module)
    id_b = GradedMap.identity(cm.coring.carrier.module)
    mod2 = RightModule(cm.carrier.algebra, moved, phi @ cm.carrier.action @ tensor_maps(phi_inv, id_a))
    rel2 = relative_tensor_data(
        moved, mod2.action, cm.coring.algebra.carrier, cm.coring.carrier, cm.coring.left_action
    )
    coaction2 = rel2.projection @ tensor_maps(phi, id_b) @ cm.relative.section @ cm.coaction @ phi_inv
    return CoringComodule(cm.coring, mod2, coaction2)
