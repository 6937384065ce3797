"""Seeded random generators for complexes and provably valid structures.

Coassociative or associative structure maps are essentially impossible to
hit by rejection sampling, so structured families are built instead and
then conjugated by random degreewise isomorphisms to produce dense, messy
matrices that still satisfy every axiom:

* complexes: random dimensions, random differential entries projected
  column-by-column into the kernel of the differential below (the
  correction step that forces d . d = 0);
* comonoids: the divided-power pattern delta(g_i) = sum_{a+b=i} g_a (x) g_b
  on one generator per degree -i*w, optionally direct-summed with an
  acyclic two-step complex carrying zero comultiplication;
* comodules: cofree ones X (x) B over a generated comonoid;
* monoids: truncated polynomial algebras a_i.a_j = a_{i+j} in positive
  degrees, optionally with an acyclic summand multiplying to zero;
* coring comodules: a free module Z + Z(x)A (all the action) direct-summed
  with a cofree part X(x)B (all the coaction) over a zero-action coring.

Everything is driven by an explicit `random.Random`, so runs are
reproducible from the seed alone.
"""

from __future__ import annotations

from random import Random

from .complexes import ChainComplex, direct_sum_complexes, tensor_complexes
from .fields import Field
from .graded import GradedMap, GradedModule, reassociator, reassociator_inv, tensor_maps, tensor_modules
from .matrices import Matrix, kernel_basis
from .structures import (
    Comodule,
    Comonoid,
    Coring,
    CoringComodule,
    Monoid,
    RightModule,
    cofree_comodule,
    relative_tensor_data,
    transport_comodule,
    transport_comonoid,
    transport_coring_comodule,
    transport_monoid,
)

ENTRY_POOL = (0, 0, 0, 1, -1, 1, -1, 2)


def random_complex(
    rng: Random,
    field: Field,
    lo: int = -4,
    hi: int = 2,
    max_dim: int = 3,
    label: str = "x",
    density: float = 0.8,
) -> ChainComplex:
    """Random complex supported in [lo, hi] with d²=0 enforced by correction.

    Differential entries are drawn freely, then each block is replaced by
    kernel-basis × coefficients so its columns land in the kernel of the
    block below.
    """
    basis = {}
    for deg in range(lo, hi + 1):
        dim = rng.randint(0, max_dim) if rng.random() < density else 0
        if dim:
            basis[deg] = tuple(f"{label}{deg}_{j}" for j in range(dim))
    module = GradedModule(field, basis)
    blocks: dict[int, Matrix] = {}
    kernels: dict[int, Matrix] = {}
    for deg in range(lo, hi + 1):
        n_src = module.dim(deg)
        if n_src == 0:
            continue
        n_tgt = module.dim(deg - 1)
        if n_tgt == 0:
            kernels[deg] = Matrix.identity(field, n_src)
            continue
        ker_below = kernels.get(deg - 1, Matrix.identity(field, n_tgt))
        coeffs = Matrix.from_rows(
            field,
            [
                [field.from_int(rng.choice(ENTRY_POOL)) for _ in range(n_src)]
                for _ in range(ker_below.cols)
            ],
        )
        blk = ker_below @ coeffs
        if not blk.is_zero:
            blocks[deg] = blk
        kernels[deg] = kernel_basis(blk)
    return ChainComplex(module, GradedMap(module, module, -1, blocks))


def random_iso_blocks(rng: Random, module: GradedModule) -> dict[int, Matrix]:
    """Degreewise invertible matrices: unit-triangular L·D·U with small entries."""
    field = module.field
    blocks = {}
    for deg in module.degrees():
        n = module.dim(deg)
        lower = [[field.one if i == j else (field.from_int(rng.choice(ENTRY_POOL)) if i > j else field.zero)
                  for j in range(n)] for i in range(n)]
        upper = [[field.one if i == j else (field.from_int(rng.choice(ENTRY_POOL)) if i < j else field.zero)
                  for j in range(n)] for i in range(n)]
        diag = [[field.from_int(rng.choice((1, -1, 2))) if i == j else field.zero
                 for j in range(n)] for i in range(n)]
        blocks[deg] = (
            Matrix.from_rows(field, lower) @ Matrix.from_rows(field, diag) @ Matrix.from_rows(field, upper)
        )
    return blocks


def divided_power_comonoid(field: Field, gens: int, weight: int) -> Comonoid:
    """delta(g_i) = sum over a+b=i of g_a⊗g_b on generators g_i in degree -i*weight."""
    basis = {-i * weight: (f"g{i}",) for i in range(1, gens + 1)}
    module = GradedModule(field, basis)
    square = tensor_modules(module, module)
    blocks = {}
    for i in range(2, gens + 1):
        deg = -i * weight
        dim = square.dim(deg)  # one basis pair per splitting a+b = i
        if dim:
            blocks[deg] = Matrix.from_cols(field, [[field.one] * dim], rows=dim)
    carrier = ChainComplex(module, GradedMap.zero_map(module, module, -1))
    return Comonoid(carrier, GradedMap(module, square, 0, blocks))


def acyclic_complex(field: Field, top_degree: int, label: str = "u") -> ChainComplex:
    """Two-step complex ``u1 -> u0`` with identity differential (no homology)."""
    module = GradedModule(field, {top_degree: (f"{label}1",), top_degree - 1: (f"{label}0",)})
    d = GradedMap(module, module, -1, {top_degree: Matrix.identity(field, 1)})
    return ChainComplex(module, d)


def random_comonoid(
    rng: Random,
    field: Field,
    top: int = -2,
    gens_choices: tuple[int, ...] = (2, 3),
    acyclic_prob: float = 0.5,
    conjugate: bool = True,
) -> Comonoid:
    """Divided-power comonoid supported in degrees <= top, decorated and conjugated."""
    w_min = max(1, -top)
    weight = rng.choice([w_min, w_min + 1])
    gens = rng.choice(gens_choices)
    como = divided_power_comonoid(field, gens, weight)
    if rng.random() < acyclic_prob:
        summand = acyclic_complex(field, rng.randint(top - 2, top))
        total = direct_sum_complexes(como.carrier, summand)
        delta = (
            tensor_maps(total.include_left, total.include_left)
            @ como.delta
            @ total.project_left
        )
        como = Comonoid(total.complex, delta)
    if conjugate:
        como = transport_comonoid(como, random_iso_blocks(rng, como.carrier.module))
    return como


def random_comodule(
    rng: Random,
    field: Field,
    factor_lo: int = -3,
    factor_hi: int = 0,
    factor_max_dim: int = 2,
    gens_choices: tuple[int, ...] = (2,),
    acyclic_prob: float = 0.3,
) -> Comodule:
    """Cofree comodule X⊗B over a comonoid with no basis in degrees >= 0, conjugated."""
    b = random_comonoid(rng, field, top=-1, gens_choices=gens_choices, acyclic_prob=acyclic_prob,
                        conjugate=False)
    x = random_complex(rng, field, factor_lo, factor_hi, factor_max_dim, label="y", density=0.6)
    m = cofree_comodule(x, b)
    return transport_comodule(m, random_iso_blocks(rng, m.carrier.module))


def truncated_polynomial_monoid(field: Field, gens: int, weight: int) -> Monoid:
    """a_i·a_j = a_{i+j} (zero past the top generator), degrees i*weight >= 1."""
    basis = {i * weight: (f"a{i}",) for i in range(1, gens + 1)}
    module = GradedModule(field, basis)
    square = tensor_modules(module, module)
    blocks = {}
    for s in range(2, gens + 1):
        deg = s * weight
        dim = square.dim(deg)
        if dim:
            blocks[deg] = Matrix.from_rows(field, [[field.one] * dim])
    carrier = ChainComplex(module, GradedMap.zero_map(module, module, -1))
    return Monoid(carrier, GradedMap(square, module, 0, blocks))


def random_monoid(
    rng: Random,
    field: Field,
    gens_choices: tuple[int, ...] = (1, 2),
    acyclic_prob: float = 0.4,
    conjugate: bool = True,
) -> Monoid:
    """Truncated polynomial monoid in strictly positive degrees, decorated and conjugated."""
    gens = rng.choice(gens_choices)
    weight = rng.choice((1, 2))
    mono = truncated_polynomial_monoid(field, gens, weight)
    if rng.random() < acyclic_prob:
        summand = acyclic_complex(field, rng.randint(2, 4))
        total = direct_sum_complexes(mono.carrier, summand)
        mu = (
            total.include_left
            @ mono.mu
            @ tensor_maps(total.project_left, total.project_left)
        )
        mono = Monoid(total.complex, mu)
    if conjugate:
        mono = transport_monoid(mono, random_iso_blocks(rng, mono.carrier.module))
    return mono


def free_right_module(algebra: Monoid, z: ChainComplex) -> RightModule:
    """The free module ``Z ⊕ Z⊗A`` with action z·a = z⊗a and (z⊗a)·a' = z⊗aa'."""
    ax = algebra.carrier
    za = tensor_complexes(z, ax)
    total = direct_sum_complexes(z, za)
    id_a = GradedMap.identity(ax.module)
    onto_za = total.include_right @ tensor_maps(total.project_left, id_a)
    multiply = (
        total.include_right
        @ tensor_maps(GradedMap.identity(z.module), algebra.mu)
        @ reassociator(z.module, ax.module, ax.module)
        @ tensor_maps(total.project_right, id_a)
    )
    return RightModule(algebra, total.complex, onto_za + multiply)


def zero_action_coring(algebra: Monoid, como: Comonoid) -> Coring:
    """View a comonoid as an A-coring with zero actions (so B⊗_A B = B⊗B)."""
    a_mod = algebra.carrier.module
    b_mod = como.carrier.module
    return Coring(
        algebra,
        como.carrier,
        GradedMap.zero_map(tensor_modules(a_mod, b_mod), b_mod),
        GradedMap.zero_map(tensor_modules(b_mod, a_mod), b_mod),
        como.delta,
    )


def random_coring_comodule(
    rng: Random,
    field: Field,
    free_lo: int = -2,
    free_hi: int = 0,
    cofree_lo: int = -2,
    cofree_hi: int = -1,
) -> CoringComodule:
    """Free-plus-cofree comodule over a zero-action coring, conjugated.

    The free part carries all of the A-action and the cofree part all of
    the coaction, so both the action square and A-linearity of the induced
    coaction are exercised with nonzero maps.
    """
    algebra = random_monoid(rng, field, gens_choices=(1, 2), acyclic_prob=0.3, conjugate=False)
    como = random_comonoid(rng, field, top=-1, gens_choices=(2,), acyclic_prob=0.0, conjugate=False)
    coring = zero_action_coring(algebra, como)

    z = random_complex(rng, field, free_lo, free_hi, 1, label="z", density=0.7)
    free_part = free_right_module(algebra, z)
    x = random_complex(rng, field, cofree_lo, cofree_hi, 1, label="w", density=0.7)
    cofree_carrier = tensor_complexes(x, como.carrier)

    total = direct_sum_complexes(free_part.carrier, cofree_carrier)
    a_mod = algebra.carrier.module
    b_mod = como.carrier.module
    id_a = GradedMap.identity(a_mod)
    id_b = GradedMap.identity(b_mod)
    action = total.include_left @ free_part.action @ tensor_maps(total.project_left, id_a)
    module = RightModule(algebra, total.complex, action)

    plain_coaction = (
        reassociator_inv(x.module, b_mod, b_mod)
        @ tensor_maps(GradedMap.identity(x.module), como.delta)
    )
    lifted = tensor_maps(total.include_right, id_b) @ plain_coaction @ total.project_right
    rel = relative_tensor_data(total.complex, action, algebra.carrier, como.carrier, coring.left_action)
    cm = CoringComodule(coring, module, rel.projection @ lifted)
    return transport_coring_comodule(cm, random_iso_blocks(rng, total.complex.module))


# ---- raw candidates for counterexample search ----------------------------------


def random_comonoid_candidate(rng: Random, field: Field, lo: int, hi: int, max_dim: int) -> Comonoid:
    """Unconstrained comonoid data in the window; the caller filters by checker."""
    x = random_complex(rng, field, lo, hi, max_dim, density=0.9)
    square = tensor_modules(x.module, x.module)
    blocks = {}
    for deg in x.module.degrees():
        rows, cols = square.dim(deg), x.module.dim(deg)
        if rows and cols:
            blocks[deg] = Matrix.from_rows(
                field,
                [[field.from_int(rng.choice(ENTRY_POOL)) for _ in range(cols)] for _ in range(rows)],
            )
    return Comonoid(x, GradedMap(x.module, square, 0, blocks))


def random_comodule_candidate(
    rng: Random, field: Field, lo: int, hi: int, max_dim: int
) -> tuple[Comonoid, Comodule]:
    b = random_comonoid_candidate(rng, field, lo, hi, max_dim)
    m = random_complex(rng, field, lo, hi, max_dim, label="m", density=0.9)
    target = tensor_modules(m.module, b.carrier.module)
    blocks = {}
    for deg in m.module.degrees():
        rows, cols = target.dim(deg), m.module.dim(deg)
        if rows and cols:
            blocks[deg] = Matrix.from_rows(
                field,
                [[field.from_int(rng.choice(ENTRY_POOL)) for _ in range(cols)] for _ in range(rows)],
            )
    return b, Comodule(b, m, GradedMap(m.module, target, 0, blocks))
