"""Lefschetz operators, hard Lefschetz checks, primitive decomposition and
positivity of the signed Lefschetz pairings, all in exact arithmetic.

Degrees are algebraic: N^j sits in cohomological degree 2j, so the classical
statements about H^k appear here with k = 2j.  Odd degrees vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cohomology import (BlownUp, GradedRing, Product, Projective, GEN_H,
                         gen_e, normalize_divisor)
from .geometry import ambient_geometry, point_count


class LefschetzError(ValueError):
    pass


@dataclass
class LefschetzContext:
    ring: GradedRing
    divisor: list                  # N^1 coordinates of the operator class
    operators: list = field(default_factory=list)  # matrices N^j -> N^(j+1)

    @property
    def n(self):
        return self.ring.n


def make_context(ring, divisor):
    """Context with the cup-action matrices of a degree-1 class.

    `divisor` is either an N^1 coordinate vector or a generator->coefficient
    dict (normalized through the hyperplane relation first).
    """
    if ring.n == 0:
        return LefschetzContext(ring, [], [])
    if isinstance(divisor, dict):
        divisor = ring.divisor_vector(divisor)
    if len(divisor) != len(ring.basis[1]):
        raise LefschetzError("operator class is not a degree-1 class")
    divisor = [Fraction(x) for x in divisor]
    ops = []
    for j in range(ring.n):
        cols = []
        for mono in ring.basis[j]:
            unit = ring.zero(j)
            unit[ring.index[j][mono]] = Fraction(1)
            cols.append(ring.multiply(1, divisor, j, unit))
        rows = len(ring.basis[j + 1])
        ops.append([[cols[c][r] for c in range(len(cols))] for r in range(rows)])
    return LefschetzContext(ring, divisor, ops)


def lefschetz_power(ctx, j, power):
    """Matrix of L^power from N^j to N^(j+power); zero map past top degree."""
    ring = ctx.ring
    if j + power > ring.n:
        return [[Fraction(0)] * len(ring.basis[j]) for _ in range(0)]
    m = linalg.identity(len(ring.basis[j]))
    for step in range(power):
        m = linalg.matmul(ctx.operators[j + step], m)
    return m


def check_hard_lefschetz(ctx):
    """L^(n-2j): N^j -> N^(n-j) bijective for all j <= n/2, with rank report."""
    ring = ctx.ring
    n = ring.n
    report = []
    ok = True
    for j in range(0, n // 2 + 1):
        m = lefschetz_power(ctx, j, n - 2 * j)
        dim_lo = len(ring.basis[j])
        dim_hi = len(ring.basis[n - j])
        r = linalg.rank(m)
        good = (r == dim_lo == dim_hi)
        ok = ok and good
        report.append({"degree": 2 * j, "power": n - 2 * j, "rank": r,
                       "expected": dim_lo, "ok": good})
    return ok, report


@dataclass
class PrimitiveDecomposition:
    primitive: dict      # j -> matrix whose columns span P_j inside N^j
    splitting: dict      # j -> list of (i, column block L^i P_(j-i))


def primitive_decomposition(ctx):
    """P_j = Ker(L^(n-2j+1)) on N^j plus the splitting N^j = sum L^i P_(j-i)."""
    ok, _ = check_hard_lefschetz(ctx)
    if not ok:
        raise LefschetzError("hard Lefschetz fails; decomposition undefined")
    ring = ctx.ring
    n = ring.n
    prim = {}
    for j in range(0, n // 2 + 1):
        m = lefschetz_power(ctx, j, n - 2 * j + 1)
        if len(m) == 0:
            cols = linalg.identity(len(ring.basis[j]))
        else:
            ker = linalg.kernel_basis(m)
            cols = [[v[i] for v in ker] for i in range(len(ring.basis[j]))]
        prim[j] = cols
        expected = len(ring.basis[j]) - (len(ring.basis[j - 1]) if j > 0 else 0)
        if linalg.shape(cols)[1] != expected:
            raise LefschetzError("primitive part dimension %d != %d in degree %d"
                                 % (linalg.shape(cols)[1], expected, 2 * j))
    splitting = {}
    for j in range(0, n + 1):
        blocks = []
        total = None
        for i in range(0, j + 1):
            base = j - i
            if base > n // 2 or base < 0 or (n - 2 * base) < i:
                continue
            src = prim.get(base)
            if src is None or linalg.shape(src)[1] == 0:
                continue
            block = linalg.matmul(lefschetz_power(ctx, base, i), src)
            blocks.append((i, block))
            total = block if total is None else linalg.stack_columns(total, block)
        splitting[j] = blocks
        dim = len(ring.basis[j])
        got = linalg.rank(total) if total is not None else 0
        width = sum(linalg.shape(b)[1] for _, b in blocks)
        if got != dim or width != dim:
            raise LefschetzError("Lefschetz splitting does not span N^%d" % j)
    return PrimitiveDecomposition(prim, splitting)


def lefschetz_pairing_gram(ctx, j):
    """Gram matrix of <x,y> = (-1)^j sum(L^(n-2j) x cup y) on all of N^j."""
    ring = ctx.ring
    n = ring.n
    if 2 * j > n:
        raise LefschetzError("no Lefschetz pairing above the middle degree")
    m = lefschetz_power(ctx, j, n - 2 * j)
    sign = Fraction(-1) ** j
    dim = len(ring.basis[j])
    gram = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim):
        va = [m[r][a] for r in range(len(m))]
        for b in range(dim):
            vb = ring.zero(j)
            vb[b] = Fraction(1)
            gram[a][b] = sign * ring.pair(n - j, va, vb)
    return gram


def primitive_gram(ctx, k):
    """Gram of the signed Lefschetz pairing on the primitive part of H^k.

    k is the cohomological degree; odd k gives the empty matrix.
    """
    if k % 2 == 1:
        return []
    j = k // 2
    dec = primitive_decomposition(ctx)
    if j not in dec.primitive:
        return []
    cols = dec.primitive[j]
    width = linalg.shape(cols)[1]
    if width == 0:
        return []
    g = lefschetz_pairing_gram(ctx, j)
    return linalg.matmul(linalg.transpose(cols), linalg.matmul(g, cols))


def check_hodge_standard(ctx):
    """Positive definiteness of every primitive Gram block, plus the
    signature identity sign(N^j) = sum_i (-1)^i dim P_(j-i).
    """
    ok, hl_report = check_hard_lefschetz(ctx)
    if not ok:
        raise LefschetzError("hard Lefschetz fails; Hodge check undefined")
    dec = primitive_decomposition(ctx)
    ring = ctx.ring
    n = ring.n
    verdict = True
    report = []
    for j in range(0, n // 2 + 1):
        gram = primitive_gram(ctx, 2 * j)
        pos = linalg.is_positive_definite(gram)
        full = lefschetz_pairing_gram(ctx, j)
        sig = linalg.symmetric_signature(full)
        expected_sig = 0
        for i in range(0, j + 1):
            base = j - i
            if base in dec.primitive:
                expected_sig += (-1) ** i * linalg.shape(dec.primitive[base])[1]
        sig_ok = sig.signature == expected_sig
        orth_ok = _splitting_orthogonal(ctx, dec, j)
        verdict = verdict and pos and sig_ok and orth_ok
        report.append({
            "degree": 2 * j,
            "primitive_dim": linalg.shape(dec.primitive[j])[1],
            "positive_definite": pos,
            "inertia": {"n_plus": sig.n_plus, "n_minus": sig.n_minus,
                        "n_zero": sig.n_zero},
            "signature": sig.signature,
            "signature_expected": expected_sig,
            "orthogonal_splitting": orth_ok,
            "ok": pos and sig_ok and orth_ok,
        })
    return verdict, {"hard_lefschetz": hl_report, "degrees": report}


def _splitting_orthogonal(ctx, dec, j):
    """The blocks L^i P_(j-i) are orthogonal for the Lefschetz pairing."""
    blocks = dec.splitting[j]
    if len(blocks) <= 1:
        return True
    g = lefschetz_pairing_gram(ctx, j)
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            cross = linalg.matmul(linalg.transpose(blocks[a][1]),
                                  linalg.matmul(g, blocks[b][1]))
            if not linalg.is_zero_matrix(cross):
                return False
    return True


# -- invariant divisors --------------------------------------------------------

@dataclass(frozen=True)
class InvariantDivisorForm:
    """alpha * h + sum a_d * (level sum of the D_V in dimension d).

    Normal form: the top level (d = n-1) is folded into alpha and the lower
    levels through the hyperplane relation, so levels[n-1] == 0.
    """
    n: int
    q: int
    alpha: Fraction
    levels: tuple

    def as_divisor(self, spec):
        coeffs = {GEN_H: Fraction(self.alpha)}
        geom = ambient_geometry(spec.n, spec.field)
        for d, a in enumerate(self.levels):
            if not a:
                continue
            for V in geom.subvarieties(d):
                k = gen_e(V)
                coeffs[k] = coeffs.get(k, Fraction(0)) + a
        return normalize_divisor(spec, coeffs)


def invariant_form(spec, divisor):
    """Recognize a class constant on each dimension level, or fail.

    Accepts a normalized generator dict and returns the (alpha, a_0..a_(n-1))
    form with a_(n-1) = 0.
    """
    if not isinstance(spec, BlownUp):
        raise LefschetzError("invariant forms live on blow-up rings")
    coeffs = normalize_divisor(spec, divisor)
    geom = ambient_geometry(spec.n, spec.field)
    alpha = Fraction(coeffs.get(GEN_H, 0))
    levels = []
    for d in range(spec.n - 1):
        vals = {Fraction(coeffs.get(gen_e(V), 0)) for V in geom.subvarieties(d)}
        if len(vals) != 1:
            raise LefschetzError("class is not PGL-invariant: level %d varies" % d)
        levels.append(vals.pop())
    levels.append(Fraction(0))
    extra = set(coeffs) - {GEN_H} - {gen_e(V) for d in range(spec.n - 1)
                                     for V in geom.subvarieties(d)}
    if extra:
        raise LefschetzError("unknown generators %r" % (extra,))
    return InvariantDivisorForm(spec.n, spec.field.q, alpha, tuple(levels))


def normalize_invariant(n, q, alpha, levels):
    """Fold a possibly nonzero top level into alpha and the lower levels."""
    levels = [Fraction(a) for a in levels]
    if len(levels) != n:
        raise LefschetzError("expected %d level coefficients" % n)
    alpha = Fraction(alpha)
    top = levels[n - 1]
    if top:
        # sum of all blown-up hyperplanes = |P^n| h - sum |P^(n-d-1)| D_d
        alpha += top * point_count(n, q)
        for d in range(n - 1):
            levels[d] -= top * point_count(n - d - 1, q)
        levels[n - 1] = Fraction(0)
    return InvariantDivisorForm(n, q, alpha, tuple(levels))


def is_positive(form: InvariantDivisorForm):
    """Positivity criterion: alpha > 0 and every level weight
    a_d + alpha |P^(n-d-1)| / |P^n| is positive."""
    n, q = form.n, form.q
    if form.alpha <= 0:
        return False
    pn = point_count(n, q)
    for d in range(n):
        a_d = form.levels[d] if d < len(form.levels) else Fraction(0)
        if a_d + form.alpha * Fraction(point_count(n - d - 1, q), pn) <= 0:
            return False
    return True


def omega_form(n, q):
    """The canonical ample invariant class: -(n+1) h + sum (n-d) D_d."""
    return normalize_invariant(n, q, -(n + 1), [n - d for d in range(n)])


def omega_class(spec, q=None):
    """omega as a normalized generator dict on B^n (n >= 1).

    For n <= 1 the blow-up is projective space itself and omega degenerates
    to (q-1) h; q must then be passed explicitly.
    """
    if isinstance(spec, Projective):
        if spec.n == 0:
            return {}
        scale = Fraction((q or 2) - 1)
        return {GEN_H: scale}
    form = omega_form(spec.n, spec.field.q)
    return form.as_divisor(spec)


def omega_vector(ring, q=None):
    """omega in N^1 coordinates of a blow-up or projective ring."""
    return ring.divisor_vector(omega_class(ring.spec, q))


def product_lefschetz_vector(ring, factor_vectors):
    """pr_1* L_1 + ... + pr_k* L_k in N^1 coordinates of a product ring."""
    if not isinstance(ring.spec, Product):
        raise LefschetzError("needs a product ring")
    v = ring.zero(1)
    for i, (fring, fvec) in enumerate(zip(ring.factors, factor_vectors)):
        for a, c in enumerate(fvec):
            if not c:
                continue
            label = tuple(fring.basis[1][a] if t == i else ()
                          for t in range(len(ring.factors)))
            v[ring.index[1][label]] += Fraction(c)
    return v


def hodge_sweep(ring, l0, l1, steps):
    """Run the Lefschetz and positivity checks along (1-t) L0 + t L1.

    Rational grid t = i/steps, i = 0..steps.  Returns one verdict row per t;
    Hodge positivity is reported only where hard Lefschetz holds.
    """
    if steps < 2:
        raise LefschetzError("steps must be >= 2")
    if isinstance(l0, dict):
        l0 = ring.divisor_vector(l0)
    if isinstance(l1, dict):
        l1 = ring.divisor_vector(l1)
    rows = []
    for i in range(steps + 1):
        t = Fraction(i, steps)
        vec = [(1 - t) * a + t * b for a, b in zip(l0, l1)]
        ctx = make_context(ring, vec)
        hl, _ = check_hard_lefschetz(ctx)
        if hl:
            hodge, _ = check_hodge_standard(ctx)
        else:
            hodge = None
        rows.append({"t": t, "hard_lefschetz": hl, "hodge_standard": hodge})
    return rows
