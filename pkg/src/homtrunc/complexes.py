"""Chain complexes, chain maps, homology, and truncation above a degree.

The truncation of a complex X at n keeps X_i for i <= n, replaces degree
n+1 by the quotient of X_{n+1} by the kernel of its differential (with the
canonical complement basis), and kills everything above.  Its quotient map
q is the identity below n+1, the canonical projection at n+1, and zero
above; it is always a chain map, the truncated complex has no homology
above n, and q induces isomorphisms on homology in degrees <= n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .fields import Field
from .graded import (
    GradedMap,
    GradedModule,
    first_difference,
    quotient,
    tensor_maps,
    tensor_modules,
)
from .matrices import Matrix, image_basis, kernel_basis, rank, rref, solve


@dataclass(frozen=True)
class Witness:
    """A printable failure location: a degree, a basis vector, and the identity that broke."""

    degree: int
    basis: str
    identity: str


class NotAComplex(Exception):
    def __init__(self, degree: int, witness: str):
        self.degree = degree
        self.witness = witness
        super().__init__(f"d∘d ≠ 0 on basis vector '{witness}' in degree {degree}")


class NotAChainMap(Exception):
    def __init__(self, degree: int, witness: str):
        self.degree = degree
        self.witness = witness
        super().__init__(f"map does not commute with differentials on '{witness}' in degree {degree}")


@dataclass(frozen=True)
class ChainComplex:
    module: GradedModule
    differential: GradedMap

    def __post_init__(self):
        d = self.differential
        if d.source != self.module or d.target != self.module:
            raise ValueError("differential endpoints must be the underlying module")
        if d.degree != -1:
            raise ValueError(f"differential must have degree -1, got {d.degree}")
        bad = first_difference(d @ d, GradedMap.zero_map(self.module, self.module, -2))
        if bad is not None:
            raise NotAComplex(*bad)

    @property
    def field(self) -> Field:
        return self.module.field

    @classmethod
    def zero(cls, field: Field) -> ChainComplex:
        mod = GradedModule.zero(field)
        return cls(mod, GradedMap.zero_map(mod, mod, -1))


def validate_complex(module: GradedModule, differential: GradedMap) -> ChainComplex:
    """Package a module and differential, raising NotAComplex unless d∘d = 0."""
    return ChainComplex(module, differential)


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    map: GradedMap

    def __post_init__(self):
        f = self.map
        if f.source != self.source.module or f.target != self.target.module:
            raise ValueError("chain map endpoints do not match the given complexes")
        if f.degree != 0:
            raise ValueError(f"chain maps have degree 0, got {f.degree}")
        bad = first_difference(self.target.differential @ f, f @ self.source.differential)
        if bad is not None:
            raise NotAChainMap(*bad)

    @classmethod
    def identity(cls, x: ChainComplex) -> ChainMap:
        return cls(x, x, GradedMap.identity(x.module))

    def __matmul__(self, other: ChainMap) -> ChainMap:
        if other.target is not self.source and other.target != self.source:
            raise ValueError("chain maps not composable")
        return ChainMap(other.source, self.target, self.map @ other.map)


def tensor_complexes(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Tensor product complex; the Koszul sign lives in ``tensor_maps``."""
    idx = GradedMap.identity(x.module)
    idy = GradedMap.identity(y.module)
    d = tensor_maps(x.differential, idy) + tensor_maps(idx, y.differential)
    return ChainComplex(tensor_modules(x.module, y.module), d)


class ComplexSum(NamedTuple):
    complex: ChainComplex
    include_left: GradedMap
    include_right: GradedMap
    project_left: GradedMap
    project_right: GradedMap


def direct_sum_complexes(x: ChainComplex, y: ChainComplex) -> ComplexSum:
    """Degreewise direct sum with its inclusions and projections."""
    from .graded import direct_sum

    ds = direct_sum(x.module, y.module)
    d = (ds.include_left @ x.differential @ ds.project_left) + (
        ds.include_right @ y.differential @ ds.project_right
    )
    return ComplexSum(
        ChainComplex(ds.module, d),
        ds.include_left,
        ds.include_right,
        ds.project_left,
        ds.project_right,
    )


# ---- homology ---------------------------------------------------------------


def _format_combination(labels: tuple[str, ...], coeffs) -> str:
    parts = []
    for lab, c in zip(labels, coeffs):
        if c == 0:
            continue
        if c == 1:
            parts.append(lab)
        elif c == -1:
            parts.append(f"-{lab}")
        else:
            parts.append(f"{c}*{lab}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


@dataclass(frozen=True)
class Homology:
    """Graded homology with chosen cycle representatives.

    ``representatives[i]`` columns are cycles in X_i spanning H_i past the
    boundaries, picked by extending the boundary basis inside the cycle
    space via rref pivots; ``boundaries[i]`` is the image basis of d_{i+1}.
    """

    module: GradedModule
    representatives: Mapping[int, Matrix]
    boundaries: Mapping[int, Matrix]

    def dim(self, degree: int) -> int:
        return self.module.dim(degree)


def homology(x: ChainComplex) -> Homology:
    basis: dict[int, tuple[str, ...]] = {}
    reps: dict[int, Matrix] = {}
    bnds: dict[int, Matrix] = {}
    d = x.differential
    for deg in x.module.degrees():
        cycles = kernel_basis(d.block(deg))
        bound, _ = image_basis(d.block(deg + 1))
        _, pivots = rref(bound.hstack(cycles))
        chosen = [p - bound.cols for p in pivots if p >= bound.cols]
        rep = cycles.submatrix_cols(chosen)
        if rep.cols:
            labels = tuple(
                f"[{_format_combination(x.module.labels(deg), rep.column(j))}]"
                for j in range(rep.cols)
            )
            basis[deg] = labels
            reps[deg] = rep
        bnds[deg] = bound
    return Homology(GradedModule(x.field, basis), reps, bnds)


def homology_map(
    f: ChainMap, hx: Homology | None = None, hy: Homology | None = None
) -> dict[int, Matrix]:
    """Matrices of H_i(f) on the chosen representatives, one per degree."""
    hx = hx or homology(f.source)
    hy = hy or homology(f.target)
    fld = f.source.field
    out: dict[int, Matrix] = {}
    for deg in sorted(set(hx.module.degrees()) | set(hy.module.degrees())):
        hs, ht = hx.dim(deg), hy.dim(deg)
        if hs == 0 or ht == 0:
            out[deg] = Matrix.zeros(fld, ht, hs)
            continue
        images = f.map.block(deg) @ hx.representatives[deg]
        bound = hy.boundaries[deg]
        space = bound.hstack(hy.representatives[deg])
        sol = solve(space, images)
        out[deg] = Matrix.from_rows(fld, sol.entries[bound.cols:])
    return out


# ---- truncation --------------------------------------------------------------


class Truncation(NamedTuple):
    complex: ChainComplex
    map: ChainMap


def truncate(x: ChainComplex, n: int) -> Truncation:
    """Kill homology above n: X_i for i <= n, X_{n+1} mod ker d at n+1, zero above.

    The quotient basis at n+1 is the canonical complement of ker d_{n+1}
    (macron labels), the differentials are induced, and the returned chain
    map is the quotient map: identity below n+1, projection at n+1, zero
    above.
    """
    subs: dict[int, Matrix] = {}
    for deg in x.module.degrees():
        if deg == n + 1:
            subs[deg] = kernel_basis(x.differential.block(deg))
        elif deg > n + 1:
            subs[deg] = Matrix.identity(x.field, x.module.dim(deg))
    mod, proj, sect = quotient(x.module, subs)
    d = proj @ x.differential @ sect
    truncated = ChainComplex(mod, d)
    return Truncation(truncated, ChainMap(x, truncated, proj))


def is_local(x: ChainComplex, n: int, h: Homology | None = None) -> tuple[bool, Witness | None]:
    """Whether H_i(x) = 0 for all i > n; the witness is the first nonzero class above n."""
    h = h or homology(x)
    for deg in h.module.degrees():
        if deg > n:
            return False, Witness(deg, h.module.labels(deg)[0], "local")
    return True, None


def is_local_equivalence(f: ChainMap, n: int) -> tuple[bool, Witness | None]:
    """Whether H_i(f) is invertible for every i <= n."""
    hx = homology(f.source)
    hy = homology(f.target)
    hmap = homology_map(f, hx, hy)
    for deg in sorted(hmap):
        if deg > n:
            continue
        m = hmap[deg]
        if m.rows != m.cols or rank(m) != m.rows:
            detail = f"H_{deg} has rank {rank(m)} on {m.rows}x{m.cols}"
            return False, Witness(deg, detail, "local_equivalence")
    return True, None
