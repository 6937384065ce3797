"""Finitely supported graded modules with labeled bases and homogeneous maps.

A graded module is a finite map ``degree -> ordered basis labels``; a
graded map of degree ``d`` stores one exact matrix per source degree
(absent blocks are zero).  Tensor products carry the Koszul convention

    (f tensor g)(a tensor b) = (-1)^(|g| |a|) f(a) tensor g(b),

so the differential on a tensor product is ``d tensor id + id tensor d``
with the sign appearing automatically, and all degree-0 structure maps
compose without signs.

The canonical tensor basis order is ascending left-factor degree, then
left index, then right index; labels are joined with "⊗".  Quotients pick
the canonical complement from `matrices.quotient_data` and mark surviving
labels with a combining macron so printed witnesses read as classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, NamedTuple, Sequence

from .fields import Field
from .matrices import Matrix, quotient_data

MACRON = "̄"  # combining overline: "x" -> "x̄"


@dataclass(frozen=True)
class GradedModule:
    field: Field
    basis: Mapping[int, tuple[str, ...]]

    def __post_init__(self):
        norm: dict[int, tuple[str, ...]] = {}
        for deg in sorted(self.basis):
            labels = tuple(self.basis[deg])
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate basis labels in degree {deg}")
            if not all(isinstance(lab, str) for lab in labels):
                raise ValueError(f"basis labels in degree {deg} must be strings")
            norm[deg] = labels
        object.__setattr__(self, "basis", norm)

    @classmethod
    def zero(cls, field: Field) -> GradedModule:
        return cls(field, {})

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.basis)

    def dim(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    def labels(self, degree: int) -> tuple[str, ...]:
        return self.basis.get(degree, ())

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.basis.values())

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def min_degree(self) -> int | None:
        return min(self.basis) if self.basis else None

    def max_degree(self) -> int | None:
        return max(self.basis) if self.basis else None


@dataclass(frozen=True)
class GradedMap:
    source: GradedModule
    target: GradedModule
    degree: int
    blocks: Mapping[int, Matrix] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise ValueError("field mismatch between source and target")
        norm: dict[int, Matrix] = {}
        for deg in sorted(self.blocks):
            blk = self.blocks[deg]
            want = (self.target.dim(deg + self.degree), self.source.dim(deg))
            if (blk.rows, blk.cols) != want:
                raise ValueError(
                    f"block at degree {deg} has shape {blk.rows}x{blk.cols}, expected {want[0]}x{want[1]}"
                )
            if blk.field != self.source.field:
                raise ValueError("block field mismatch")
            if blk.rows and blk.cols and not blk.is_zero:
                norm[deg] = blk
        object.__setattr__(self, "blocks", norm)

    # ---- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, module: GradedModule) -> GradedMap:
        blocks = {d: Matrix.identity(module.field, module.dim(d)) for d in module.degrees()}
        return cls(module, module, 0, blocks)

    @classmethod
    def zero_map(cls, source: GradedModule, target: GradedModule, degree: int = 0) -> GradedMap:
        return cls(source, target, degree, {})

    # ---- access ----------------------------------------------------------

    def block(self, degree: int) -> Matrix:
        blk = self.blocks.get(degree)
        if blk is not None:
            return blk
        return Matrix.zeros(self.source.field, self.target.dim(degree + self.degree), self.source.dim(degree))

    @property
    def is_zero(self) -> bool:
        return not self.blocks

    # ---- algebra -----------------------------------------------------------

    def __matmul__(self, other: GradedMap) -> GradedMap:
        """Composition ``self ∘ other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise ValueError("module mismatch: inner modules of composition differ")
        blocks = {}
        for deg in other.blocks:
            blk = self.block(deg + other.degree) @ other.blocks[deg]
            blocks[deg] = blk
        return GradedMap(other.source, self.target, self.degree + other.degree, blocks)

    def __add__(self, other: GradedMap) -> GradedMap:
        self._same_endpoints(other)
        blocks = {d: self.block(d) + other.block(d) for d in set(self.blocks) | set(other.blocks)}
        return GradedMap(self.source, self.target, self.degree, blocks)

    def __sub__(self, other: GradedMap) -> GradedMap:
        self._same_endpoints(other)
        blocks = {d: self.block(d) - other.block(d) for d in set(self.blocks) | set(other.blocks)}
        return GradedMap(self.source, self.target, self.degree, blocks)

    def __neg__(self) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree, {d: -b for d, b in self.blocks.items()})

    def _same_endpoints(self, other: GradedMap):
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("maps have different endpoints or degrees")


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """Blockwise matrix product ``g ∘ f``; degrees add."""
    return g @ f


def first_difference(f: GradedMap, g: GradedMap) -> tuple[int, str] | None:
    """First (degree, source label) where two parallel maps disagree, if any."""
    f._same_endpoints(g)
    for deg in sorted(set(f.blocks) | set(g.blocks)):
        a, b = f.block(deg), g.block(deg)
        if a == b:
            continue
        for j in range(a.cols):
            if a.column(j) != b.column(j):
                return deg, f.source.labels(deg)[j]
    return None


def first_nonzero(f: GradedMap) -> tuple[int, str] | None:
    return first_difference(f, GradedMap.zero_map(f.source, f.target, f.degree))


# ---- tensor products ------------------------------------------------------


def _tensor_positions(m: GradedModule, n: GradedModule, total: int) -> list[tuple[int, int, int]]:
    """Canonical basis of ``(m ⊗ n)_total`` as (left degree, left index, right index)."""
    out = []
    for i in m.degrees():
        dm, dn = m.dim(i), n.dim(total - i)
        if dm and dn:
            for ai in range(dm):
                for bi in range(dn):
                    out.append((i, ai, bi))
    return out


def tensor_modules(m: GradedModule, n: GradedModule) -> GradedModule:
    if m.field != n.field:
        raise ValueError("field mismatch")
    basis: dict[int, tuple[str, ...]] = {}
    if m.basis and n.basis:
        lo = m.min_degree() + n.min_degree()
        hi = m.max_degree() + n.max_degree()
        for total in range(lo, hi + 1):
            labels = [
                f"{m.labels(i)[ai]}⊗{n.labels(total - i)[bi]}"
                for i, ai, bi in _tensor_positions(m, n, total)
            ]
            if labels:
                basis[total] = tuple(labels)
    return GradedModule(m.field, basis)


def tensor_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """Koszul-signed tensor of maps: ``(f⊗g)(a⊗b) = (-1)^(|g||a|) f(a)⊗g(b)``."""
    fld = f.source.field
    if fld != g.source.field:
        raise ValueError("field mismatch")
    src = tensor_modules(f.source, g.source)
    tgt = tensor_modules(f.target, g.target)
    deg = f.degree + g.degree
    blocks: dict[int, Matrix] = {}
    for total in src.degrees():
        src_pos = _tensor_positions(f.source, g.source, total)
        tgt_pos = _tensor_positions(f.target, g.target, total + deg)
        if not src_pos or not tgt_pos:
            continue
        tgt_index = {pos: k for k, pos in enumerate(tgt_pos)}
        rows = [[fld.zero] * len(src_pos) for _ in range(len(tgt_pos))]
        for col, (i, ai, bi) in enumerate(src_pos):
            fblk = f.blocks.get(i)
            gblk = g.blocks.get(total - i)
            if fblk is None or gblk is None:
                continue
            sign = fld.one if (g.degree * i) % 2 == 0 else fld.neg(fld.one)
            for a2 in range(fblk.rows):
                fv = fblk.entries[a2][ai]
                if fv == 0:
                    continue
                fv = fld.mul(sign, fv)
                for b2 in range(gblk.rows):
                    gv = gblk.entries[b2][bi]
                    if gv == 0:
                        continue
                    row = tgt_index[(i + f.degree, a2, b2)]
                    rows[row][col] = fld.add(rows[row][col], fld.mul(fv, gv))
        blocks[total] = Matrix.from_rows(fld, [tuple(r) for r in rows])
    return GradedMap(src, tgt, deg, blocks)


def _triple_positions_left(a: GradedModule, b: GradedModule, c: GradedModule, total: int):
    """Basis of ``((a⊗b)⊗c)_total`` as 6-tuples (i, ai, j, bj, k, ck), in order."""
    ab = tensor_modules(a, b)
    out = []
    for s, pair_idx, ci in _tensor_positions(ab, c, total):
        i, ai, bj = _tensor_positions(a, b, s)[pair_idx]
        out.append((i, ai, s - i, bj, total - s, ci))
    return out


def _triple_positions_right(a: GradedModule, b: GradedModule, c: GradedModule, total: int):
    """Basis of ``(a⊗(b⊗c))_total`` as the same 6-tuples, in its own order."""
    bc = tensor_modules(b, c)
    out = []
    for i, ai, pair_idx in _tensor_positions(a, bc, total):
        j, bj, ci = _tensor_positions(b, c, total - i)[pair_idx]
        out.append((i, ai, j, bj, total - i - j, ci))
    return out


def reassociator(a: GradedModule, b: GradedModule, c: GradedModule) -> GradedMap:
    """The basis permutation ``(a⊗b)⊗c -> a⊗(b⊗c)`` (no signs)."""
    left = tensor_modules(tensor_modules(a, b), c)
    right = tensor_modules(a, tensor_modules(b, c))
    fld = a.field
    blocks = {}
    for total in left.degrees():
        lp = _triple_positions_left(a, b, c, total)
        rp = _triple_positions_right(a, b, c, total)
        rindex = {pos: k for k, pos in enumerate(rp)}
        rows = [[fld.zero] * len(lp) for _ in range(len(rp))]
        for col, pos in enumerate(lp):
            rows[rindex[pos]][col] = fld.one
        blocks[total] = Matrix.from_rows(fld, [tuple(r) for r in rows])
    return GradedMap(left, right, 0, blocks)


def reassociator_inv(a: GradedModule, b: GradedModule, c: GradedModule) -> GradedMap:
    """The inverse permutation ``a⊗(b⊗c) -> (a⊗b)⊗c``."""
    fwd = reassociator(a, b, c)
    blocks = {d: blk.transpose() for d, blk in fwd.blocks.items()}
    return GradedMap(fwd.target, fwd.source, 0, blocks)


# ---- direct sums and quotients ---------------------------------------------


class DirectSum(NamedTuple):
    module: GradedModule
    include_left: GradedMap
    include_right: GradedMap
    project_left: GradedMap
    project_right: GradedMap


def direct_sum(m: GradedModule, n: GradedModule) -> DirectSum:
    """Degreewise concatenation; labels must not collide."""
    if m.field != n.field:
        raise ValueError("field mismatch")
    basis = {}
    for deg in sorted(set(m.degrees()) | set(n.degrees())):
        basis[deg] = m.labels(deg) + n.labels(deg)
    total = GradedModule(m.field, basis)
    fld = m.field
    inc_l, inc_r, pr_l, pr_r = {}, {}, {}, {}
    for deg in total.degrees():
        dm, dn = m.dim(deg), n.dim(deg)
        ident = Matrix.identity(fld, dm + dn)
        inc_l[deg] = ident.submatrix_cols(range(dm))
        inc_r[deg] = ident.submatrix_cols(range(dm, dm + dn))
        pr_l[deg] = inc_l[deg].transpose()
        pr_r[deg] = inc_r[deg].transpose()
    return DirectSum(
        total,
        GradedMap(m, total, 0, {d: b for d, b in inc_l.items() if m.dim(d)}),
        GradedMap(n, total, 0, {d: b for d, b in inc_r.items() if n.dim(d)}),
        GradedMap(total, m, 0, {d: b for d, b in pr_l.items() if m.dim(d)}),
        GradedMap(total, n, 0, {d: b for d, b in pr_r.items() if n.dim(d)}),
    )


class Quotient(NamedTuple):
    module: GradedModule
    projection: GradedMap
    section: GradedMap


def quotient(m: GradedModule, subspaces: Mapping[int, Matrix]) -> Quotient:
    """Degreewise quotient of ``m`` by the span of the given columns.

    Degrees without an entry in ``subspaces`` are untouched (labels kept);
    degrees with one, even a zero-column one, are replaced by the canonical
    complement and their surviving labels gain a macron.  The projection is
    surjective with kernel exactly the given subspaces; the section embeds
    the chosen complement representatives.
    """
    basis: dict[int, tuple[str, ...]] = {}
    proj_blocks: dict[int, Matrix] = {}
    sec_blocks: dict[int, Matrix] = {}
    for deg, sub in subspaces.items():
        if sub.rows != m.dim(deg):
            raise ValueError(
                f"subspace at degree {deg} lives in dimension {sub.rows}, module has {m.dim(deg)}"
            )
    for deg in m.degrees():
        labels = m.labels(deg)
        sub = subspaces.get(deg)
        if sub is None:
            basis[deg] = labels
            ident = Matrix.identity(m.field, len(labels))
            proj_blocks[deg] = ident
            sec_blocks[deg] = ident
            continue
        data = quotient_data(sub)
        if data.dim:
            basis[deg] = tuple(labels[i] + MACRON for i in data.kept)
        proj_blocks[deg] = data.projection
        sec_blocks[deg] = data.section
    quot = GradedModule(m.field, basis)
    projection = GradedMap(m, quot, 0, {d: b for d, b in proj_blocks.items() if b.rows and b.cols})
    section_blocks = {}
    for deg, blk in sec_blocks.items():
        if blk.rows and blk.cols:
            section_blocks[deg] = blk
    section = GradedMap(quot, m, 0, section_blocks)
    return Quotient(quot, projection, section)
