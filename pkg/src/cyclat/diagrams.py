"""Ladder diagrams of level modules linked by up and down maps.

A diagram holds one finite module per level i = 1..n (the level-i module is
p^i-torsion and the subgroup of index p^i acts trivially on it) together
with an up map A_i -> A_(i+1) and a down map A_(i+1) -> A_i for each rung.
The two composites are constrained exactly: up after down is multiplication
by p on the upper level, and down after up is the relative-norm operator
(the sum of the p translates by the subgroup one step down) on the lower
level.  ``validate_diagram`` checks all of it and is run on everything this
package constructs.

The module also knows the closed-form diagrams of the ideal-lattice library
(``library_diagram``), decides isomorphism of diagrams by an invariant
screen followed by an exact equivariant search (``diagram_isomorphic``),
and matches a diagram against the library (``subtract_library``).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from . import intmat
from .finmod import (
    FiniteGammaModule,
    GammaMap,
    NotStandard,
    gamma_generator_indices,
    module_direct_sum,
    recognize_standard_sum,
)
from .groupring import GroupParams


class DiagramError(RuntimeError):
    """A ladder diagram violates one of its structural constraints."""


class IsoResult(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __repr__(self):
        return f"IsoResult.{self.name}"


class YakovlevDiagram:
    """Levels A_1..A_n with up maps A_i -> A_(i+1) and down maps A_(i+1) -> A_i."""

    def __init__(self, params, levels, ups, downs):
        if not isinstance(params, GroupParams):
            raise TypeError("params must be a GroupParams")
        levels = list(levels)
        ups = list(ups)
        downs = list(downs)
        if len(levels) != params.n:
            raise ValueError(f"need {params.n} levels, got {len(levels)}")
        if len(ups) != params.n - 1 or len(downs) != params.n - 1:
            raise ValueError("need n-1 up maps and n-1 down maps")
        for i, u in enumerate(ups):
            if u.source is not levels[i] or u.target is not levels[i + 1]:
                raise ValueError(f"up map {i + 1} does not connect levels {i + 1}, {i + 2}")
        for i, d in enumerate(downs):
            if d.source is not levels[i + 1] or d.target is not levels[i]:
                raise ValueError(f"down map {i + 1} does not connect levels {i + 2}, {i + 1}")
        self.params = params
        self.levels = levels
        self.ups = ups
        self.downs = downs

    @property
    def n(self):
        return self.params.n

    def level(self, i):
        """Level module A_i, 1-based."""
        if not 1 <= i <= self.n:
            raise ValueError(f"level {i} outside 1..{self.n}")
        return self.levels[i - 1]

    def up(self, i):
        """Up map A_i -> A_(i+1), defined for 1 <= i <= n-1."""
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"up map index {i} outside 1..{self.n - 1}")
        return self.ups[i - 1]

    def down(self, i):
        """Down map A_(i+1) -> A_i, defined for 1 <= i <= n-1."""
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"down map index {i} outside 1..{self.n - 1}")
        return self.downs[i - 1]

    def total_order_log(self):
        return sum(m.order_log() for m in self.levels)

    def is_zero(self):
        return self.total_order_log() == 0

    def level_invariants(self):
        return tuple(m.invariants() for m in self.levels)

    def __repr__(self):
        sizes = ", ".join(
            "0" if m.is_zero() else "p^" + str(m.order_log()) for m in self.levels
        )
        return f"YakovlevDiagram(p={self.params.p}, n={self.n}, |A_i|=[{sizes}])"


def _check_diagram(diagram):
    """Check every structural constraint; raises DiagramError on the first failure."""
    params = diagram.params
    p, n = params.p, params.n
    for i in range(1, n + 1):
        mod = diagram.level(i)
        if mod.params != params:
            raise DiagramError(f"level {i} has mismatched group parameters")
        if mod.exponent_log() > i:
            raise DiagramError(
                f"level {i} is not killed by p^{i} (exponent p^{mod.exponent_log()})"
            )
        if mod.gens:
            power = mod.action_power(p ** (n - i))
            for c in range(mod.gens):
                diff = [power[r][c] - (1 if r == c else 0) for r in range(mod.gens)]
                if not mod.is_zero_vec(diff):
                    raise DiagramError(
                        f"index-p^{i} subgroup does not act trivially on level {i}"
                    )
    for i in range(1, n):
        up, down = diagram.up(i), diagram.down(i)
        try:
            up._validate()
            down._validate()
        except Exception as exc:
            raise DiagramError(f"rung {i} map is not a module map: {exc}") from exc
        upper, lower = diagram.level(i + 1), diagram.level(i)
        # up after down = multiplication by p on the upper level
        if upper.gens and down.source.gens:
            comp = intmat.mat_mul(up.matrix, down.matrix)
            for c in range(upper.gens):
                diff = [comp[r][c] - (p if r == c else 0) for r in range(upper.gens)]
                if not upper.is_zero_vec(diff):
                    raise DiagramError(f"up(down(.)) != p . on level {i + 1}")
        # down after up = relative-norm operator on the lower level
        if lower.gens:
            comp = intmat.mat_mul(down.matrix, up.matrix)
            step = p ** (n - i - 1)
            rel_norm = intmat.zeros(lower.gens, lower.gens)
            for k in range(p):
                rel_norm = intmat.mat_add(rel_norm, lower.action_power(k * step))
            for c in range(lower.gens):
                diff = [comp[r][c] - rel_norm[r][c] for r in range(lower.gens)]
                if not lower.is_zero_vec(diff):
                    raise DiagramError(f"down(up(.)) != relative norm on level {i}")
    return True


def validate_diagram(diagram):
    """True iff every structural constraint holds.

    Checks, as exact congruences modulo each level's relations: levels share the
    diagram's group parameters, level i is annihilated by p^i and fixed by the
    index-p^i subgroup, the rung maps are module maps, and both composites
    (up after down = multiplication by p; down after up = the relative-norm
    operator) hold on every rung.  Never raises on a malformed diagram.
    """
    try:
        return _check_diagram(diagram)
    except DiagramError:
        return False


def zero_diagram(params):
    levels = [FiniteGammaModule.zero(params) for _ in range(params.n)]
    ups = [GammaMap.zero(levels[i], levels[i + 1]) for i in range(params.n - 1)]
    downs = [GammaMap.zero(levels[i + 1], levels[i]) for i in range(params.n - 1)]
    return YakovlevDiagram(params, levels, ups, downs)


def _stack_map(sources, targets, blocks, joined_src, joined_tgt):
    """Block-diagonal map matrix from per-summand map matrices."""
    rows = sum(t.gens for t in targets)
    cols = sum(s.gens for s in sources)
    out = intmat.zeros(rows, cols)
    ro = co = 0
    for src, tgt, blk in zip(sources, targets, blocks):
        for r in range(tgt.gens):
            for c in range(src.gens):
                out[ro + r][co + c] = blk[r][c]
        ro += tgt.gens
        co += src.gens
    return GammaMap(joined_src, joined_tgt, out, _trusted=True)


def diagram_direct_sum(diagrams):
    """Levelwise direct sum with block-diagonal maps."""
    diagrams = list(diagrams)
    if not diagrams:
        raise ValueError("direct sum needs at least one diagram")
    params = diagrams[0].params
    if any(d.params != params for d in diagrams):
        raise ValueError("diagrams have mismatched group parameters")
    n = params.n
    levels = [
        module_direct_sum([d.levels[i] for d in diagrams]) for i in range(n)
    ]
    ups, downs = [], []
    for i in range(n - 1):
        ups.append(
            _stack_map(
                [d.levels[i] for d in diagrams],
                [d.levels[i + 1] for d in diagrams],
                [d.ups[i].matrix for d in diagrams],
                levels[i],
                levels[i + 1],
            )
        )
        downs.append(
            _stack_map(
                [d.levels[i + 1] for d in diagrams],
                [d.levels[i] for d in diagrams],
                [d.downs[i].matrix for d in diagrams],
                levels[i + 1],
                levels[i],
            )
        )
    return YakovlevDiagram(params, levels, ups, downs)


def _library_summand_diagram(params, a, b):
    """Closed-form diagram of the ideal lattice with label (a, b).

    Level i is the standard module with coefficient exponent min(i, a) on the
    cosets of the subgroup at level max(i, a+b).  While both rungs sit at or
    below level a+b the modules have equal coset rank and the rung maps are
    identity down / multiply-by-p up; above a+b the down map spreads a coset
    over its p preimage cosets and the up map projects cosets.
    """
    n, p = params.n, params.p
    c = a + b
    levels = [
        FiniteGammaModule.standard(params, min(i, a), max(i, c))
        for i in range(1, n + 1)
    ]
    ups, downs = [], []
    for i in range(1, n):
        lower, upper = levels[i - 1], levels[i]
        if i + 1 <= c:
            down = intmat.identity(lower.gens)
            up = intmat.mat_scale(p, intmat.identity(lower.gens))
        else:
            m_low, m_high = lower.gens, upper.gens  # p^(n-i), p^(n-i-1)
            down = [
                [1 if r % m_high == t else 0 for t in range(m_high)]
                for r in range(m_low)
            ]
            up = [
                [1 if t % m_high == r else 0 for t in range(m_low)]
                for r in range(m_high)
            ]
        ups.append(GammaMap(lower, upper, up))
        downs.append(GammaMap(upper, lower, down))
    return YakovlevDiagram(params, levels, ups, downs)


def library_diagram(params, multiset):
    """Canonical diagram of a direct sum of library lattices.

    ``multiset`` maps labels (a, b) — with a >= 1, b >= 0, a + b <= n — to
    multiplicities.  The empty multiset gives the zero diagram.
    """
    parts = []
    for (a, b) in sorted(multiset):
        mult = multiset[(a, b)]
        if mult < 0:
            raise ValueError("negative multiplicity")
        if not (1 <= a and 0 <= b and a + b <= params.n):
            raise ValueError(f"label ({a}, {b}) outside the library range")
        parts.extend(_library_summand_diagram(params, a, b) for _ in range(mult))
    if not parts:
        return zero_diagram(params)
    out = diagram_direct_sum(parts)
    _check_diagram(out)
    return out


# -- isomorphism testing ------------------------------------------------------


def _minimized_diagram(diagram):
    """Same diagram on invariant-factor presentations (maps transported)."""
    n = diagram.n
    mins = [lvl.minimized() for lvl in diagram.levels]
    levels = [m[0] for m in mins]
    ups, downs = [], []

    def transport(raw, src_idx, tgt_idx):
        src, tgt = levels[src_idx], levels[tgt_idx]
        if src.gens == 0 or tgt.gens == 0:
            return GammaMap.zero(src, tgt)
        to_tgt = mins[tgt_idx][1]
        from_src = mins[src_idx][2]
        mat = intmat.mat_mul(to_tgt, intmat.mat_mul(raw.matrix, from_src))
        return GammaMap(src, tgt, mat)

    for i in range(n - 1):
        ups.append(transport(diagram.ups[i], i, i + 1))
        downs.append(transport(diagram.downs[i], i + 1, i))
    return YakovlevDiagram(diagram.params, levels, ups, downs)


def _same_presentation(d1, d2):
    for m1, m2 in zip(d1.levels, d2.levels):
        if m1.gens != m2.gens or m1.relations != m2.relations or m1.action != m2.action:
            return False
    for u1, u2 in zip(d1.ups, d2.ups):
        if not u1.equals_mod(u2):
            return False
    for w1, w2 in zip(d1.downs, d2.downs):
        if not w1.equals_mod(w2):
            return False
    return True


def _word_matrices(source, target, q):
    """Per-generator matrices expressing a hom by its values on Gamma-generators.

    For every presentation generator e_l of ``source`` and every chosen
    Gamma-generator slot j, returns P[(l, j)] with: any hom h sending the
    j-th Gamma-generator to y_j has h(e_l) = sum_j P[(l, j)] y_j modulo the
    target relations, where P is the word of e_l in the sigma-orbit of the
    Gamma-generators, evaluated on the target action.  Entries are reduced
    mod q.
    """
    params = source.params
    order = params.order
    gen_idx = gamma_generator_indices(source)
    s = len(gen_idx)
    g = source.gens
    gt = target.gens
    orbit_cols = []
    for j in range(s):
        k = gen_idx[j]
        for t in range(order):
            power = source.action_power(t)
            orbit_cols.append([power[r][k] for r in range(g)])
    rel_cols = [
        [source.relations[r][c] for r in range(g)] for c in range(g)
    ]
    aug = intmat.transpose(orbit_cols + rel_cols)
    words = {}
    for l in range(g):
        e = [1 if r == l else 0 for r in range(g)]
        coeff = intmat.express_in_colspan(aug, e)
        if coeff is None:
            raise DiagramError("generator not reached by the Gamma-orbit span")
        words[l] = coeff[: s * order]
    pmats = {}
    for l in range(g):
        for j in range(s):
            acc = intmat.zeros(gt, gt)
            base = j * order
            for t in range(order):
                cf = words[l][base + t]
                if cf:
                    acc = intmat.mat_add(
                        acc, intmat.mat_scale(cf, target.action_power(t))
                    )
            pmats[(l, j)] = intmat.mat_mod(acc, q)
    return gen_idx, pmats


def _surjective_mod_p(h, rows, p):
    """Full row rank of h over F_p (Nakayama: equivalent to surjectivity)."""
    if rows == 0:
        return True
    w = [[x % p for x in row] for row in h]
    cols = len(w[0]) if w else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if w[r][c]), None)
        if piv is None:
            continue
        w[rank], w[piv] = w[piv], w[rank]
        inv = pow(w[rank][c], -1, p)
        for r in range(rank + 1, rows):
            if w[r][c]:
                f = (w[r][c] * inv) % p
                w[r] = [(x - f * y) % p for x, y in zip(w[r], w[rank])]
        rank += 1
        if rank == rows:
            return True
    return rank == rows


@dataclass
class _HomSystem:
    """Linear parametrization of levelwise hom tuples commuting with the rungs."""

    q: int
    layout: list  # per level: (base index, s, target gens)
    hsyms: list  # per level: hsym[r][l] = coefficient row over all unknowns
    total: int
    basis: list = field(default_factory=list)  # triangular lattice basis columns
    pivots: list = field(default_factory=list)


def _build_hom_system(md1, md2):
    params = md1.params
    n = params.n
    q = params.p**params.n
    layout = []
    hsyms = []
    total = 0
    word_data = []
    for i in range(n):
        src, tgt = md1.levels[i], md2.levels[i]
        if src.gens == 0:
            layout.append((total, 0, tgt.gens))
            hsyms.append([])
            word_data.append(([], {}))
            continue
        gen_idx, pmats = _word_matrices(src, tgt, q)
        s = len(gen_idx)
        layout.append((total, s, tgt.gens))
        word_data.append((gen_idx, pmats))
        total += s * tgt.gens
    for i in range(n):
        src, tgt = md1.levels[i], md2.levels[i]
        base, s, gt = layout[i]
        gen_idx, pmats = word_data[i]
        hsym = [[[0] * total for _ in range(src.gens)] for _ in range(gt)]
        for l in range(src.gens):
            for j in range(s):
                pm = pmats[(l, j)]
                for r in range(gt):
                    row = hsym[r][l]
                    off = base + j * gt
                    prow = pm[r]
                    for c in range(gt):
                        if prow[c]:
                            row[off + c] = (row[off + c] + prow[c]) % q
        hsyms.append(hsym)
    rows = []

    def add_row(form, modulus):
        scale = q // modulus
        row = [(scale * x) % q for x in form]
        if any(row):
            rows.append(row)

    for i in range(n):
        src, tgt = md1.levels[i], md2.levels[i]
        if src.gens == 0 or tgt.gens == 0:
            continue
        hsym = hsyms[i]
        # h kills the (diagonal) source relations
        for l in range(src.gens):
            mu = src.relations[l][l]
            for r in range(tgt.gens):
                form = [(mu * x) % q for x in hsym[r][l]]
                add_row(form, tgt.relations[r][r])
        # h commutes with sigma
        s_src, s_tgt = src.action, tgt.action
        for l in range(src.gens):
            for r in range(tgt.gens):
                form = [0] * total
                for rp in range(tgt.gens):
                    cf = s_tgt[r][rp]
                    if cf:
                        hrow = hsym[rp][l]
                        for k in range(total):
                            if hrow[k]:
                                form[k] = (form[k] + cf * hrow[k]) % q
                for lp in range(src.gens):
                    cf = s_src[lp][l]
                    if cf:
                        hrow = hsym[r][lp]
                        for k in range(total):
                            if hrow[k]:
                                form[k] = (form[k] - cf * hrow[k]) % q
                add_row(form, tgt.relations[r][r])
    # h commutes with the rung maps
    for i in range(n - 1):
        low_s, high_s = md1.levels[i], md1.levels[i + 1]
        low_t, high_t = md2.levels[i], md2.levels[i + 1]
        up_s, up_t = md1.ups[i].matrix, md2.ups[i].matrix
        dn_s, dn_t = md1.downs[i].matrix, md2.downs[i].matrix
        # up: h_(i+1) . up_source = up_target . h_i   (maps low_s -> high_t)
        if high_t.gens and low_s.gens:
            for l in range(low_s.gens):
                for r in range(high_t.gens):
                    form = [0] * total
                    if high_s.gens:
                        for lp in range(high_s.gens):
                            cf = up_s[lp][l]
                            if cf:
                                hrow = hsyms[i + 1][r][lp]
                                for k in range(total):
                                    if hrow[k]:
                                        form[k] = (form[k] + cf * hrow[k]) % q
                    if low_t.gens:
                        for rp in range(low_t.gens):
                            cf = up_t[r][rp]
                            if cf:
                                hrow = hsyms[i][rp][l]
                                for k in range(total):
                                    if hrow[k]:
                                        form[k] = (form[k] - cf * hrow[k]) % q
                    add_row(form, high_t.relations[r][r])
        # down: h_i . down_source = down_target . h_(i+1)  (maps high_s -> low_t)
        if low_t.gens and high_s.gens:
            for l in range(high_s.gens):
                for r in range(low_t.gens):
                    form = [0] * total
                    if low_s.gens:
                        for lp in range(low_s.gens):
                            cf = dn_s[lp][l]
                            if cf:
                                hrow = hsyms[i][r][lp]
                                for k in range(total):
                                    if hrow[k]:
                                        form[k] = (form[k] + cf * hrow[k]) % q
                    if high_t.gens:
                        for rp in range(high_t.gens):
                            cf = dn_t[r][rp]
                            if cf:
                                hrow = hsyms[i + 1][rp][l]
                                for k in range(total):
                                    if hrow[k]:
                                        form[k] = (form[k] - cf * hrow[k]) % q
                    add_row(form, low_t.relations[r][r])
    system = _HomSystem(q=q, layout=layout, hsyms=hsyms, total=total)
    if total == 0:
        return system
    if rows:
        h, _ = intmat.row_hnf(rows)
        h = [row for row in h if any(row)]
    else:
        h = []
    if not h:
        lattice = intmat.identity(total)
    else:
        qblock = [[q if i == k else 0 for k in range(len(h))] for i in range(len(h))]
        ker = intmat.kernel(intmat.hstack(h, qblock))
        proj = ker[:total] if ker and ker[0] else [[] for _ in range(total)]
        qfull = intmat.mat_scale(q, intmat.identity(total))
        lattice = intmat.hnf_cols(intmat.hstack(proj, qfull))
    system.basis = lattice
    system.pivots = [lattice[i][i] for i in range(total)]
    return system


def _candidate_maps(system, coeffs, md1, md2):
    """Evaluate the parametrization at one coefficient tuple."""
    q = system.q
    total = system.total
    y = [0] * total
    for idx, c in enumerate(coeffs):
        if c:
            col = [system.basis[k][idx] for k in range(total)]
            for k in range(total):
                if col[k]:
                    y[k] = (y[k] + c * col[k]) % q
    mats = []
    for i in range(md1.params.n):
        src, tgt = md1.levels[i], md2.levels[i]
        hsym = system.hsyms[i]
        h = [
            [
                sum(
                    cf * y[k]
                    for k, cf in enumerate(hsym[r][l])
                    if cf
                )
                % q
                for l in range(src.gens)
            ]
            for r in range(tgt.gens)
        ]
        mats.append(h)
    return mats


def _isomorphism_search(d1, d2, budget, seed):
    """(IsoResult, witness): exact decision whenever the screen or search settles it."""
    if d1.params != d2.params:
        raise ValueError("cannot compare diagrams over different groups")
    params = d1.params
    n = params.n
    # invariant screen: any mismatch is a definitive No
    for i in range(n):
        a, b = d1.levels[i], d2.levels[i]
        if a.invariants() != b.invariants():
            return IsoResult.NO, None
        if a.coinvariants_order_log() != b.coinvariants_order_log():
            return IsoResult.NO, None
        ra, rb = recognize_standard_sum(a), recognize_standard_sum(b)
        if (ra is NotStandard) != (rb is NotStandard):
            return IsoResult.NO, None
        if ra is not NotStandard and ra != rb:
            return IsoResult.NO, None
    for i in range(n - 1):
        if d1.ups[i].image_order_log() != d2.ups[i].image_order_log():
            return IsoResult.NO, None
        if d1.downs[i].image_order_log() != d2.downs[i].image_order_log():
            return IsoResult.NO, None
    if d1.is_zero():
        return IsoResult.YES, [[] for _ in range(n)]
    md1, md2 = _minimized_diagram(d1), _minimized_diagram(d2)
    if _same_presentation(md1, md2):
        return IsoResult.YES, [intmat.identity(m.gens) for m in md1.levels]
    system = _build_hom_system(md1, md2)
    if system.total == 0:
        # nonzero diagram with no hom unknowns cannot happen (screen passed)
        return IsoResult.NO, None
    q = system.q
    ranges = [q // t for t in system.pivots]
    group_size = 1
    for r in ranges:
        group_size *= r
        if group_size > budget:
            break
    exhaustive = group_size <= budget
    p = params.p

    def check(coeffs):
        mats = _candidate_maps(system, coeffs, md1, md2)
        for i in range(n):
            if not _surjective_mod_p(mats[i], md2.levels[i].gens, p):
                return None
        return mats

    tested = 0
    if exhaustive:
        coeffs = [0] * system.total
        while True:
            mats = check(coeffs)
            tested += 1
            if mats is not None:
                return IsoResult.YES, mats
            pos = 0
            while pos < system.total:
                coeffs[pos] += 1
                if coeffs[pos] < ranges[pos]:
                    break
                coeffs[pos] = 0
                pos += 1
            if pos == system.total:
                return IsoResult.NO, None
    rng = random.Random(seed)
    while tested < budget:
        coeffs = [rng.randrange(r) for r in ranges]
        mats = check(coeffs)
        tested += 1
        if mats is not None:
            return IsoResult.YES, mats
    return IsoResult.UNKNOWN, None


def diagram_isomorphic(d1, d2, budget=10**6, seed=0):
    """Decide isomorphism of two diagrams: Yes, No, or Unknown.

    No is returned only from genuine invariant mismatches or an exhausted
    search over the full hom space; Unknown means the sampling budget ran
    out before a witness appeared.
    """
    result, _ = _isomorphism_search(d1, d2, budget, seed)
    return result


def indecomposability_certificate(diagram):
    """True when the diagram is certified indecomposable.

    The certificate: every nonzero level is generated by one element over
    the group ring, the nonzero levels form one contiguous block, and each
    rung inside the block carries at least one nonzero map.  A True answer
    is a proof; False means only that this certificate does not apply.
    The zero diagram is True by convention.
    """
    nz = [i for i in range(diagram.n) if not diagram.levels[i].is_zero()]
    if not nz:
        return True
    if nz != list(range(nz[0], nz[-1] + 1)):
        return False
    for i in nz:
        if diagram.levels[i].coinvariants_order_log() > 1:
            return False
    for i in range(nz[0], nz[-1]):
        if diagram.ups[i].is_zero_map() and diagram.downs[i].is_zero_map():
            return False
    return True


# -- matching against the library ---------------------------------------------


class _Unresolved:
    """Sentinel: the diagram could not be fully matched against the library."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unresolved"

    def __bool__(self):
        return False


Unresolved = _Unresolved()


@dataclass
class SubtractResult:
    """Outcome of matching a diagram against the lattice library.

    ``extracted`` maps labels (a, b) to multiplicities; ``remainder`` is the
    zero diagram when the match is complete, or the ``Unresolved`` sentinel
    when it is not.  Partial extraction is never attempted: either the whole
    diagram is accounted for or nothing is.
    """

    extracted: dict
    remainder: object  # YakovlevDiagram | Unresolved

    @property
    def fully_resolved(self):
        return self.remainder is not Unresolved


def _library_labels(n):
    return [(a, b) for a in range(1, n + 1) for b in range(0, n - a + 1)]


def library_level_type(a, b, i):
    """Standard-module label of level i of the library diagram (a, b)."""
    return (min(i, a), max(i, a + b))


def subtract_library(diagram, budget=10**6, seed=0):
    """Match the whole diagram against a sum of library diagrams.

    Recognizes every level as a sum of standard modules, solves the exact
    linear system for a library multiset reproducing all level types at
    once, and confirms by an isomorphism search against the canonical
    library diagram.  Any failure along the way returns the input unmatched.
    """
    params = diagram.params
    n = params.n
    recog = []
    for i in range(1, n + 1):
        r = recognize_standard_sum(diagram.level(i))
        if r is NotStandard:
            return SubtractResult({}, Unresolved)
        recog.append(r)
    labels = _library_labels(n)
    type_index = {}
    for i in range(1, n + 1):
        for lab in labels:
            type_index.setdefault((i, library_level_type(lab[0], lab[1], i)), len(type_index))
        for t in recog[i - 1]:
            type_index.setdefault((i, t), len(type_index))
    nrows = len(type_index)
    a_mat = intmat.zeros(nrows, len(labels))
    for col, (a, b) in enumerate(labels):
        for i in range(1, n + 1):
            a_mat[type_index[(i, library_level_type(a, b, i))]][col] += 1
    rhs = [[0] for _ in range(nrows)]
    for i in range(1, n + 1):
        for t, count in recog[i - 1].items():
            rhs[type_index[(i, t)]][0] = count
    try:
        sol = intmat.solve_exact(a_mat, rhs)
    except ValueError:
        return SubtractResult({}, Unresolved)
    mults = [sol[c][0] for c in range(len(labels))]
    if any(m < 0 for m in mults):
        return SubtractResult({}, Unresolved)
    multiset = {lab: m for lab, m in zip(labels, mults) if m}
    canonical = library_diagram(params, multiset)
    verdict, _ = _isomorphism_search(diagram, canonical, budget, seed)
    if verdict is not IsoResult.YES:
        return SubtractResult({}, Unresolved)
    return SubtractResult(multiset, zero_diagram(params))
