"""Cohomology of subgroup towers acting on integer lattices.

For a lattice M with generator action A and the subgroup of order p^j
generated by s = A^(p^(n-j)), the two groups computed here are

  * ``tate_h1``:  ker(Norm_j) / im(s - 1)   (the degree -1 group, which for
    a cyclic subgroup is the same as first cohomology), and
  * ``tate_h0``:  fixed points of s modulo Norm_j applied to the lattice,

both returned as finite module presentations in the coordinates of an
integer basis of the ambient kernel (resp. fixed) sublattice.  Restriction
down the tower acts on representatives by the relative norm; corestriction
up the tower is induced by the literal inclusion of norm kernels.  The
whole tower assembles into a ladder diagram (``yakovlev_diagram``) whose
rung identities hold on the nose and are re-checked on every build.
"""

from __future__ import annotations

from . import intmat
from .diagrams import YakovlevDiagram, _check_diagram
from .finmod import FiniteGammaModule, GammaMap


def _h1_data(lattice, j):
    """(module, kernel_basis) for the level-j group, cached on the lattice.

    ``kernel_basis`` has the basis of ker(Norm_j) as columns (None when the
    kernel is trivial); the module presents that kernel modulo the image of
    s_j - 1 with the induced sigma action.
    """
    params = lattice.params
    params.check_level(j)
    cache = lattice.__dict__.setdefault("_h1_cache", {})
    if j in cache:
        return cache[j]
    if j == 0 or lattice.rank == 0:
        cache[j] = (FiniteGammaModule.zero(params), None)
        return cache[j]
    norm = lattice.norm_matrix(j)
    basis = intmat.kernel(norm, ncols=lattice.rank)
    k = len(basis[0]) if basis and basis[0] else 0
    if k == 0:
        cache[j] = (FiniteGammaModule.zero(params), None)
        return cache[j]
    gen = lattice.subgroup_generator_matrix(j)
    co_move = [
        [gen[r][c] - (1 if r == c else 0) for c in range(lattice.rank)]
        for r in range(lattice.rank)
    ]
    relations = intmat.solve_exact(basis, co_move)
    action = intmat.solve_exact(basis, intmat.mat_mul(lattice.action, basis))
    module = FiniteGammaModule(params, k, relations, action)
    cache[j] = (module, basis)
    return cache[j]


def tate_h1(lattice, j):
    """Degree -1 group of the order-p^j subgroup acting on the lattice."""
    return _h1_data(lattice, j)[0]


def tate_h0(lattice, j):
    """Fixed points of the order-p^j subgroup modulo its norm image."""
    params = lattice.params
    params.check_level(j)
    if j == 0 or lattice.rank == 0:
        return FiniteGammaModule.zero(params)
    gen = lattice.subgroup_generator_matrix(j)
    moved = [
        [gen[r][c] - (1 if r == c else 0) for c in range(lattice.rank)]
        for r in range(lattice.rank)
    ]
    fixed = intmat.kernel(moved, ncols=lattice.rank)
    f = len(fixed[0]) if fixed and fixed[0] else 0
    if f == 0:
        return FiniteGammaModule.zero(params)
    relations = intmat.solve_exact(fixed, lattice.norm_matrix(j))
    action = intmat.solve_exact(fixed, intmat.mat_mul(lattice.action, fixed))
    return FiniteGammaModule(params, f, relations, action)


def fixed_rank(lattice, j):
    """Rank of the sublattice fixed by the order-p^j subgroup."""
    if lattice.rank == 0:
        return 0
    if j == 0:
        return lattice.rank
    gen = lattice.subgroup_generator_matrix(j)
    moved = [
        [gen[r][c] - (1 if r == c else 0) for c in range(lattice.rank)]
        for r in range(lattice.rank)
    ]
    return lattice.rank - intmat.rank(moved)


def down_map(lattice, i):
    """Restriction from level i to level i-1 (1 <= i <= n).

    On norm-kernel representatives this is the relative norm of the step,
    which lands in the lower norm kernel.  For i = 1 the target level is the
    zero module, so the map is the zero map.
    """
    if not 1 <= i <= lattice.params.n:
        raise ValueError(f"down map level {i} outside 1..{lattice.params.n}")
    src, src_basis = _h1_data(lattice, i)
    tgt, tgt_basis = _h1_data(lattice, i - 1)
    if src_basis is None or tgt_basis is None:
        return GammaMap.zero(src, tgt)
    moved = intmat.mat_mul(lattice.relative_norm_matrix(i), src_basis)
    return GammaMap(src, tgt, intmat.solve_exact(tgt_basis, moved))


def up_map(lattice, i):
    """Corestriction from level i-1 to level i (1 <= i <= n).

    Induced by the inclusion of the lower norm kernel in the upper one.
    For i = 1 the source level is the zero module, so the map is zero.
    """
    if not 1 <= i <= lattice.params.n:
        raise ValueError(f"up map level {i} outside 1..{lattice.params.n}")
    src, src_basis = _h1_data(lattice, i - 1)
    tgt, tgt_basis = _h1_data(lattice, i)
    if src_basis is None or tgt_basis is None:
        return GammaMap.zero(src, tgt)
    return GammaMap(src, tgt, intmat.solve_exact(tgt_basis, src_basis))


def yakovlev_diagram(lattice):
    """Full ladder diagram of the lattice, on minimized level presentations."""
    params = lattice.params
    n = params.n
    raw_levels = [tate_h1(lattice, i) for i in range(1, n + 1)]
    mins = [m.minimized() for m in raw_levels]
    levels = [m[0] for m in mins]

    def transport(raw_map, src_idx, tgt_idx):
        src, tgt = levels[src_idx], levels[tgt_idx]
        if src.gens == 0 or tgt.gens == 0:
            return GammaMap.zero(src, tgt)
        mat = intmat.mat_mul(
            mins[tgt_idx][1], intmat.mat_mul(raw_map.matrix, mins[src_idx][2])
        )
        return GammaMap(src, tgt, mat)

    ups = [transport(up_map(lattice, i + 1), i - 1, i) for i in range(1, n)]
    downs = [transport(down_map(lattice, i + 1), i, i - 1) for i in range(1, n)]
    diagram = YakovlevDiagram(params, levels, ups, downs)
    _check_diagram(diagram)
    return diagram


def is_cohomologically_trivial(lattice):
    """Whether every subgroup level has vanishing degree -1 and 0 groups."""
    return all(
        tate_h1(lattice, j).is_zero() and tate_h0(lattice, j).is_zero()
        for j in range(1, lattice.params.n + 1)
    )
