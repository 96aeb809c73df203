"""Weight spectral sequence of a combinatorial strictly semistable fiber.

A complex is a family of stratum records: the components (index subsets of
size 1) and, for every larger index subset with nonempty intersection, one
record per connected piece, each carrying an exact cohomology ring and the
restriction matrices from its parents.  Gysin maps are never supplied: they
are the pairing adjoints of the restrictions, which forces the restriction /
Gysin duality exactly.

The first page has entries

    E1[i][j] = sum over k >= max(0, i) of H^(j+2i-2k) of the level-(2k-i+1)
               strata, carrying weight tag j,

with the differential assembled from signed restriction blocks (Cech signs,
with the extra (-1)^(r+k) factor per summand) and signed Gysin blocks (Cech
signs with the factor (-1)^k).  d1 o d1 = 0 is checked, not trusted, and the
monodromy map N (reindexing with per-column sign) is checked to commute with
d1 and to give isomorphisms E1[-r, w+r] -> E1[r, w-r].
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cohomology import GradedRing, build_ring
from .lefschetz import make_context, lefschetz_power


class ComplexValidationError(ValueError):
    """Raised when an input complex is rejected; maps to CLI exit code 2."""


class SpectralSequenceError(RuntimeError):
    """An internal consistency check on the assembled pages failed."""


def _subset_name(subset):
    return "{%s}" % ",".join(str(i) for i in sorted(subset))


@dataclass
class Stratum:
    id: str
    subset: frozenset
    ring: GradedRing
    parents: dict          # removed index m -> (parent_id, [matrix per degree])

    @property
    def level(self):
        return len(self.subset)


class SemistableComplex:
    def __init__(self, strata, q, name="complex"):
        self.strata = {s.id: s for s in strata}
        if len(self.strata) != len(strata):
            raise ComplexValidationError("duplicate stratum ids")
        self.q = q
        self.name = name
        comps = [s for s in strata if s.level == 1]
        if not comps:
            raise ComplexValidationError("no components (level-1 strata)")
        dims = {s.ring.n for s in comps}
        if len(dims) != 1:
            raise ComplexValidationError(
                "components have mixed dimensions %s" % sorted(dims))
        self.n = dims.pop()
        self.max_level = max(s.level for s in strata)
        self.levels = {}
        for s in strata:
            self.levels.setdefault(s.level, []).append(s.id)
        for t in self.levels:
            self.levels[t].sort()
        self.children = {}
        for s in strata:
            for m, (pid, _) in s.parents.items():
                self.children.setdefault(pid, []).append((s.id, m))
        for pid in self.children:
            self.children[pid].sort()
        self._gysin_cache = {}
        self._validate()

    # -- data access ----------------------------------------------------------

    def stratum(self, sid):
        return self.strata[sid]

    def restriction(self, child_id, m):
        pid, mats = self.strata[child_id].parents[m]
        return pid, mats

    def gysin(self, child_id, m):
        """Pairing adjoint of the restriction from parent to child, per degree.

        In degree j it maps N^j(child) -> N^(j+1)(parent) and satisfies
        <gysin(b), x>_parent = <b, restriction(x)>_child exactly.
        """
        key = (child_id, m)
        if key not in self._gysin_cache:
            pid, mats = self.restriction(child_id, m)
            child = self.strata[child_id].ring
            parent = self.strata[pid].ring
            a = child.n
            out = []
            for j in range(a + 1):
                # G^T . pairing_parent[j+1] = pairing_child[j] . R_(a-j)
                pp = parent.pairing[j + 1]
                pa = child.pairing[j]
                r = mats[a - j]
                rhs = linalg.matmul(pa, r)
                out.append(linalg.transpose(linalg.matmul(rhs, linalg.inverse(pp))))
            self._gysin_cache[key] = out
        return self._gysin_cache[key]

    # -- validation -------------------------------------------------------------

    def _validate(self):
        for s in self.strata.values():
            expected_dim = self.n - s.level + 1
            if s.ring.n != expected_dim:
                raise ComplexValidationError(
                    "stratum %s %s has dimension %d, expected %d"
                    % (s.id, _subset_name(s.subset), s.ring.n, expected_dim))
            if s.level == 1:
                if s.parents:
                    raise ComplexValidationError("component %s has parents" % s.id)
                continue
            if set(s.parents) != set(s.subset):
                raise ComplexValidationError(
                    "stratum %s %s must name one parent per removed index"
                    % (s.id, _subset_name(s.subset)))
            for m, (pid, mats) in s.parents.items():
                if pid not in self.strata:
                    raise ComplexValidationError("unknown parent id %r" % pid)
                parent = self.strata[pid]
                if parent.subset != s.subset - {m}:
                    raise ComplexValidationError(
                        "parent of %s under %d has subset %s, expected %s"
                        % (s.id, m, _subset_name(parent.subset),
                           _subset_name(s.subset - {m})))
                if len(mats) < s.ring.n + 1:
                    raise ComplexValidationError(
                        "restriction %s->%s misses degrees"
                        % (pid, s.id))
                for j in range(s.ring.n + 1):
                    rows, cols = linalg.shape(mats[j])
                    if rows != len(s.ring.basis[j]) or cols != len(parent.ring.basis[j]):
                        raise ComplexValidationError(
                            "restriction %s->%s degree %d has shape %dx%d, "
                            "expected %dx%d" % (pid, s.id, j, rows, cols,
                                                len(s.ring.basis[j]),
                                                len(parent.ring.basis[j])))
        self._check_unit_and_rings()
        self._check_squares()

    def _check_unit_and_rings(self):
        for s in self.strata.values():
            for j in range(s.ring.n + 1):
                if linalg.rank(s.ring.pairing[j]) != len(s.ring.basis[j]):
                    raise ComplexValidationError(
                        "stratum %s: Poincare pairing degenerate in degree %d"
                        % (s.id, j))
            for m, (pid, mats) in s.parents.items():
                parent = self.strata[pid]
                unit = [[Fraction(1)]]
                if mats[0] != unit:
                    raise ComplexValidationError(
                        "restriction %s->%s does not preserve the unit"
                        % (pid, s.id))
                self._check_multiplicative(parent, s, mats)

    def _check_multiplicative(self, parent, child, mats):
        """rho(x.y) = rho(x).rho(y) on degree-1 basis classes, where defined."""
        pring, cring = parent.ring, child.ring
        if cring.n < 2 or pring.n < 1:
            return
        nb = len(pring.basis[1])
        for a in range(nb):
            va = pring.zero(1)
            va[a] = Fraction(1)
            ra = linalg.matvec(mats[1], va)
            for b in range(a, nb):
                vb = pring.zero(1)
                vb[b] = Fraction(1)
                prod = pring.multiply(1, va, 1, vb)
                lhs = linalg.matvec(mats[2], prod)
                rhs = cring.multiply(1, ra, 1, linalg.matvec(mats[1], vb))
                if lhs != rhs:
                    raise ComplexValidationError(
                        "restriction %s->%s is not a ring homomorphism"
                        % (parent.id, child.id))

    def _check_squares(self):
        for s in self.strata.values():
            if s.level < 3:
                continue
            for m1, m2 in itertools.combinations(sorted(s.subset), 2):
                p1_id, mats1 = s.parents[m1]
                p2_id, mats2 = s.parents[m2]
                p1 = self.strata[p1_id]
                p2 = self.strata[p2_id]
                if m2 not in p1.parents or m1 not in p2.parents:
                    raise ComplexValidationError(
                        "missing grandparent links at %s" % _subset_name(s.subset))
                g1_id, g_mats1 = p1.parents[m2]
                g2_id, g_mats2 = p2.parents[m1]
                if g1_id != g2_id:
                    raise ComplexValidationError(
                        "grandparents disagree at %s" % _subset_name(s.subset))
                for j in range(s.ring.n + 1):
                    path1 = linalg.matmul(mats1[j], g_mats1[j])
                    path2 = linalg.matmul(mats2[j], g_mats2[j])
                    if not linalg.mat_equal(path1, path2):
                        raise ComplexValidationError(
                            "restriction square does not commute at strata "
                            "%s->%s" % (_subset_name(self.strata[g1_id].subset),
                                        _subset_name(s.subset)))


# -- JSON input ---------------------------------------------------------------

SCHEMA_VERSION = 1


def _frac(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise ComplexValidationError("matrix entries must be integers or 'p/q' strings")


def _matrix(data):
    return [[_frac(x) for x in row] for row in data]


def _variety_from_json(node):
    from . import cohomology
    if not isinstance(node, dict) or "kind" not in node:
        raise ComplexValidationError("variety spec must be an object with 'kind'")
    kind = node["kind"]
    if kind == "projective":
        return build_ring(cohomology.proj(int(node["n"])))
    if kind == "blowup":
        return build_ring(cohomology.blowup(int(node["n"]), int(node["q"])))
    if kind == "product":
        factors = []
        for f in node["factors"]:
            if f["kind"] == "projective":
                factors.append(cohomology.proj(int(f["n"])))
            elif f["kind"] == "blowup":
                factors.append(cohomology.blowup(int(f["n"]), int(f["q"])))
            else:
                raise ComplexValidationError("nested product factors unsupported")
        return build_ring(cohomology.product(*factors))
    if kind == "surface":
        return explicit_surface_ring(node["labels"], _matrix(node["intersection"]))
    raise ComplexValidationError("unknown variety kind %r" % kind)


def explicit_surface_ring(labels, intersection):
    """Ring of a smooth projective surface given by its N^1 intersection matrix."""
    labels = [str(x) for x in labels]
    r = len(labels)
    if linalg.shape(intersection) != (r, r):
        raise ComplexValidationError("intersection matrix shape mismatch")
    if linalg.rank(intersection) != r:
        raise ComplexValidationError("surface intersection form is degenerate")
    gens = [("s", lbl) for lbl in labels]
    pivot = None
    for i in range(r):
        for j in range(r):
            if intersection[i][j]:
                pivot = (i, j)
                break
        if pivot:
            break

    lookup = {g: i for i, g in enumerate(gens)}

    def topeval(mono):
        if len(mono) != 2:
            raise ValueError("surface topeval expects degree-2 monomials")
        a, b = mono
        return intersection[lookup[a]][lookup[b]]

    basis = [[()], [(g,) for g in gens],
             [tuple(sorted((gens[pivot[0]], gens[pivot[1]])))]]
    top = basis[2][0]
    pairing = [
        [[topeval(top)]],
        [[intersection[i][j] for j in range(r)] for i in range(r)],
        [[topeval(top)]],
    ]
    spec = SurfaceSpec(tuple(labels), _freeze(intersection))
    return GradedRing(spec, basis, pairing, topeval=topeval)


@dataclass(frozen=True)
class SurfaceSpec:
    labels: tuple
    intersection: tuple


def _freeze(m):
    return tuple(tuple(x for x in row) for row in m)


def load_complex(data):
    """Build and validate a complex from a parsed JSON object (or a path)."""
    if isinstance(data, str):
        with open(data) as fh:
            data = json.load(fh)
    if not isinstance(data, dict):
        raise ComplexValidationError("top-level JSON must be an object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ComplexValidationError("unsupported schema_version %r"
                                     % data.get("schema_version"))
    try:
        q = int(data["q"])
        strata_json = data["strata"]
    except KeyError as exc:
        raise ComplexValidationError("missing required key %s" % exc)
    strata = []
    for node in strata_json:
        try:
            sid = str(node["id"])
            subset = frozenset(int(x) for x in node["subset"])
            ring = _variety_from_json(node["variety"])
            parents = {}
            for m, pnode in node.get("parents", {}).items():
                parents[int(m)] = (str(pnode["of"]),
                                   [_matrix(mj) for mj in pnode["restriction"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ComplexValidationError("malformed stratum record: %s" % exc)
        strata.append(Stratum(sid, subset, ring, parents))
    return SemistableComplex(strata, q, name=str(data.get("name", "complex")))


def complex_to_json(cx):
    """Serialize a complex; rings built from specs keep their spec description."""
    from . import cohomology

    def variety_json(ring):
        spec = ring.spec
        if isinstance(spec, SurfaceSpec):
            return {"kind": "surface", "labels": list(spec.labels),
                    "intersection": [[str(x) for x in row]
                                     for row in spec.intersection]}
        if isinstance(spec, cohomology.Projective):
            return {"kind": "projective", "n": spec.n}
        if isinstance(spec, cohomology.BlownUp):
            return {"kind": "blowup", "n": spec.n, "q": spec.field.q}
        return {"kind": "product",
                "factors": [variety_json(f) for f in ring.factors]}

    strata = []
    for sid in sorted(cx.strata):
        s = cx.strata[sid]
        node = {"id": s.id, "subset": sorted(s.subset),
                "variety": variety_json(s.ring), "parents": {}}
        for m, (pid, mats) in sorted(s.parents.items()):
            node["parents"][str(m)] = {
                "of": pid,
                "restriction": [[[str(x) for x in row] for row in mat]
                                for mat in mats],
            }
        strata.append(node)
    return {"schema_version": SCHEMA_VERSION, "q": cx.q, "name": cx.name,
            "dimension": cx.n, "strata": strata}


# -- the E1 page ------------------------------------------------------------------

@dataclass
class Summand:
    stratum: str
    k: int
    s: int          # cohomological stratum degree (even)
    offset: int
    dim: int


class WeightTable:
    """Full E1/E2 table with differentials and monodromy, all degrees at once."""

    def __init__(self, cx):
        self.cx = cx
        n = cx.n
        self.entries = {}
        for i in range(-(n + 2), n + 3):
            for j in range(0, 2 * n + 3):
                summands = []
                offset = 0
                for k in range(max(0, i), n + 2):
                    t = 2 * k - i + 1
                    if t < 1 or t > cx.max_level:
                        continue
                    s = j + 2 * i - 2 * k
                    if s < 0 or s % 2 or s > 2 * (n - t + 1):
                        continue
                    for sid in cx.levels.get(t, []):
                        d = len(cx.strata[sid].ring.basis[s // 2])
                        if d:
                            summands.append(Summand(sid, k, s, offset, d))
                            offset += d
                if summands:
                    self.entries[(i, j)] = summands
        self._d1 = {}
        self._n_map = {}
        self._e2 = None
        self._build_d1()
        self._check_d1_squared()
        self._check_monodromy()

    # dimensions ------------------------------------------------------------------

    def e1_dim(self, i, j):
        summands = self.entries.get((i, j), [])
        return sum(s.dim for s in summands)

    def slots(self):
        return sorted(self.entries)

    # -- d1 -------------------------------------------------------------------------

    def _build_d1(self):
        cx = self.cx
        for (i, j), summands in self.entries.items():
            target = self.entries.get((i + 1, j), [])
            tgt_index = {(s.stratum, s.k, s.s): s for s in target}
            rows = sum(s.dim for s in target)
            cols = sum(s.dim for s in summands)
            m = [[Fraction(0)] * cols for _ in range(rows)]
            r = -i
            for src in summands:
                stratum = cx.strata[src.stratum]
                # restriction blocks: k -> k+1, same s
                for child_id, madd in cx.children.get(src.stratum, []):
                    tgt = tgt_index.get((child_id, src.k + 1, src.s))
                    if tgt is None:
                        continue
                    _, mats = cx.restriction(child_id, madd)
                    child = cx.strata[child_id]
                    sign = _cech_sign(madd, child.subset) * (-1) ** (r + src.k)
                    _insert_block(m, mats[src.s // 2], tgt.offset, src.offset, sign)
                # Gysin blocks: same k, s -> s+2
                for mrem in sorted(stratum.subset):
                    if stratum.level == 1:
                        break
                    pid, _ = stratum.parents[mrem]
                    tgt = tgt_index.get((pid, src.k, src.s + 2))
                    if tgt is None:
                        continue
                    gys = cx.gysin(src.stratum, mrem)
                    sign = _cech_sign(mrem, stratum.subset) * (-1) ** src.k
                    _insert_block(m, gys[src.s // 2], tgt.offset, src.offset, sign)
            self._d1[(i, j)] = m

    def d1(self, i, j):
        return self._d1.get((i, j), [])

    def _check_d1_squared(self):
        for (i, j) in self.entries:
            a = self.d1(i, j)
            b = self.d1(i + 1, j)
            if a and b and not linalg.is_zero_matrix(linalg.matmul(b, a)):
                raise SpectralSequenceError(
                    "d1 o d1 != 0 at entry (%d, %d); sign assembly or input "
                    "geometry is inconsistent" % (i, j))

    # -- monodromy ---------------------------------------------------------------------

    def n_map(self, i, j):
        """Matrix of N: E1[i,j] -> E1[i+2, j-2] (reindex k -> k+1, sign (-1)^i)."""
        key = (i, j)
        if key not in self._n_map:
            src = self.entries.get((i, j), [])
            tgt = self.entries.get((i + 2, j - 2), [])
            tgt_index = {(s.stratum, s.k, s.s): s for s in tgt}
            rows = sum(s.dim for s in tgt)
            cols = sum(s.dim for s in src)
            m = [[Fraction(0)] * cols for _ in range(rows)]
            sign = (-1) ** i
            for s in src:
                t = tgt_index.get((s.stratum, s.k + 1, s.s))
                if t is None:
                    continue
                for a in range(s.dim):
                    m[t.offset + a][s.offset + a] = Fraction(sign)
            self._n_map[key] = m
        return self._n_map[key]

    def _check_monodromy(self):
        for (i, j) in self.entries:
            rows = self.e1_dim(i + 3, j - 2)
            cols = self.e1_dim(i, j)
            if rows == 0 or cols == 0:
                continue
            zero = [[Fraction(0)] * cols for _ in range(rows)]
            a = linalg.matmul(self.n_map(i + 1, j), self.d1(i, j)) \
                if self.e1_dim(i + 1, j) else zero
            b = linalg.matmul(self.d1(i + 2, j - 2), self.n_map(i, j)) \
                if self.e1_dim(i + 2, j - 2) else zero
            a = _pad(a, rows, cols)
            b = _pad(b, rows, cols)
            if not linalg.mat_equal(a, b):
                raise SpectralSequenceError(
                    "N does not commute with d1 at entry (%d, %d)" % (i, j))
        # N^r: E1[-r, w+r] -> E1[r, w-r] must be bijective
        n = self.cx.n
        for w in range(0, 2 * n + 1):
            for r in range(1, n + 2):
                src_dim = self.e1_dim(-r, w + r)
                tgt_dim = self.e1_dim(r, w - r)
                if src_dim != tgt_dim:
                    raise SpectralSequenceError(
                        "E1 N^%d source/target dims differ at w=%d" % (r, w))
                if src_dim == 0:
                    continue
                m = _compose_chain(self, -r, w + r, r, power_map="n")
                if linalg.rank(m) != src_dim:
                    raise SpectralSequenceError(
                        "N^%d is not an isomorphism on E1 at w=%d" % (r, w))

    # -- E2 --------------------------------------------------------------------------

    def e2(self):
        if self._e2 is None:
            self._e2 = {}
            for (i, j), summands in self.entries.items():
                total = sum(s.dim for s in summands)
                out = self.d1(i, j)
                inn = self.d1(i - 1, j)
                kerb = linalg.kernel_basis(out) if out and linalg.shape(out)[0] \
                    else [_unit(total, a) for a in range(total)]
                kmat = [[v[r] for v in kerb] for r in range(total)]
                imat = inn if inn and linalg.shape(inn)[1] else \
                    [[] for _ in range(total)]
                imcols = linalg.column_space(imat) if linalg.shape(imat)[1] \
                    else [[] for _ in range(total)]
                if linalg.shape(imcols)[1] and not linalg.subspace_leq(imcols, kmat):
                    raise SpectralSequenceError(
                        "boundaries not contained in cycles at (%d,%d)" % (i, j))
                quot = _quotient_basis(kmat, imcols)
                self._e2[(i, j)] = {"cycles": kmat, "boundaries": imcols,
                                    "quotient": quot}
        return self._e2

    def e2_dim(self, i, j):
        slot = self.e2().get((i, j))
        return linalg.shape(slot["quotient"])[1] if slot else 0

    def induced_n(self, i, j):
        """Matrix of N on E2 quotient bases, (i,j) -> (i+2, j-2)."""
        e2 = self.e2()
        src = e2.get((i, j))
        tgt = e2.get((i + 2, j - 2))
        src_q = src["quotient"] if src else None
        sdim = linalg.shape(src_q)[1] if src else 0
        tdim = linalg.shape(tgt["quotient"])[1] if tgt else 0
        if sdim == 0 or tdim == 0:
            return [[Fraction(0)] * sdim for _ in range(tdim)]
        nm = self.n_map(i, j)
        images = linalg.matmul(nm, src_q)
        basis = linalg.stack_columns(tgt["boundaries"], tgt["quotient"])
        nb = linalg.shape(tgt["boundaries"])[1]
        coords = linalg.solve(basis, images) if linalg.shape(basis)[1] else []
        return [row for row in coords[nb:]]

    def euler_characteristics(self):
        e1 = sum((-1) ** (i + j) * self.e1_dim(i, j) for (i, j) in self.entries)
        e2 = sum((-1) ** (i + j) * self.e2_dim(i, j) for (i, j) in self.entries)
        return e1, e2


def _unit(n, a):
    v = [Fraction(0)] * n
    v[a] = Fraction(1)
    return v


def _pad(m, rows, cols):
    if linalg.shape(m) == (rows, cols):
        return m
    return [[Fraction(0)] * cols for _ in range(rows)]


def _insert_block(m, block, row0, col0, sign):
    br, bc = linalg.shape(block)
    for r in range(br):
        row = block[r]
        for c in range(bc):
            if row[c]:
                m[row0 + r][col0 + c] += sign * row[c]


def _cech_sign(m, subset):
    pos = sorted(subset).index(m)
    return (-1) ** pos


def _quotient_basis(cycles, boundaries):
    """Columns of `cycles` extending the boundary space to the cycle space."""
    rows = len(cycles)
    chosen = [[] for _ in range(rows)]
    base = boundaries
    rank0 = linalg.rank(base) if linalg.shape(base)[1] else 0
    current = rank0
    for c in range(linalg.shape(cycles)[1]):
        col = [cycles[r][c] for r in range(rows)]
        cand = linalg.stack_columns(base, chosen, [[x] for x in col])
        if linalg.rank(cand) > current:
            for r in range(rows):
                chosen[r].append(col[r])
            current += 1
    return chosen


def _compose_chain(table, i, j, steps, power_map="n"):
    m = None
    ci, cj = i, j
    for _ in range(steps):
        step = table.n_map(ci, cj)
        m = step if m is None else linalg.matmul(step, m)
        ci, cj = ci + 2, cj - 2
    return m if m is not None else []


def weight_table(cx):
    if not hasattr(cx, "_weight_table"):
        cx._weight_table = WeightTable(cx)
    return cx._weight_table


@dataclass
class SpectralTable:
    """Per-degree view of the full table for one cohomological degree w."""
    table: WeightTable
    w: int

    def e1_entry_dims(self):
        w = self.w
        return {(i, w - i): self.table.e1_dim(i, w - i)
                for i in range(-self.table.cx.n - 1, self.table.cx.n + 2)
                if self.table.e1_dim(i, w - i)}

    def e2_entry_dims(self):
        w = self.w
        return {(i, w - i): self.table.e2_dim(i, w - i)
                for i in range(-self.table.cx.n - 1, self.table.cx.n + 2)
                if self.table.e2_dim(i, w - i)}

    def d1(self, i, j):
        return self.table.d1(i, j)

    def monodromy(self, i, j):
        return self.table.n_map(i, j)

    def weight_tags(self):
        return sorted({j for (_, j) in self.e2_entry_dims()})


def build_e1(cx, w):
    if not (0 <= w <= 2 * cx.n):
        raise ValueError("degree w out of range 0..%d" % (2 * cx.n))
    return SpectralTable(weight_table(cx), w)


def compute_e2(table: SpectralTable):
    table.table.e2()
    return table


def check_purity(cx, w):
    """N^r: E2[-r, w+r] -> E2[r, w-r] bijective for every r >= 1."""
    table = weight_table(cx)
    table.e2()
    report = []
    verdict = True
    for r in range(1, cx.n + 2):
        sdim = table.e2_dim(-r, w + r)
        tdim = table.e2_dim(r, w - r)
        if sdim == 0 and tdim == 0:
            report.append({"r": r, "dim_source": 0, "dim_target": 0,
                           "rank": 0, "ok": True})
            continue
        m = None
        ci, cj = -r, w + r
        for _ in range(r):
            step = table.induced_n(ci, cj)
            m = step if m is None else linalg.matmul(step, m)
            ci, cj = ci + 2, cj - 2
        rk = linalg.rank(m) if m else 0
        ok = (sdim == tdim == rk)
        verdict = verdict and ok
        report.append({"r": r, "dim_source": sdim, "dim_target": tdim,
                       "rank": rk, "ok": ok})
    return verdict, report


def inertia_invariants(cx, w):
    """Kernel of the induced N on the degree-w E2 column, graded by weight tag.

    Defined only when purity holds in degree w; the weight-j part carries the
    Frobenius scalar q^(j/2)."""
    ok, _ = check_purity(cx, w)
    if not ok:
        raise SpectralSequenceError("purity fails in degree %d; inertia "
                                    "invariants undefined" % w)
    table = weight_table(cx)
    out = {}
    for i in range(-cx.n - 1, cx.n + 2):
        j = w - i
        dim = table.e2_dim(i, j)
        if not dim:
            continue
        ind = table.induced_n(i, j)
        if linalg.shape(ind)[0] == 0:
            kdim = dim
        else:
            kdim = dim - linalg.rank(ind)
        if kdim:
            out[j] = out.get(j, 0) + kdim
    return out


def euler_check(cx):
    table = weight_table(cx)
    e1, e2 = table.euler_characteristics()
    return e1 == e2, {"e1": e1, "e2": e2}


# -- the level-map lemma suite -----------------------------------------------------

class LevelMaps:
    """Raw restriction/Gysin maps between total stratum levels, with Cech signs
    but without the page-position signs, plus a Lefschetz system."""

    def __init__(self, cx, l_system):
        self.cx = cx
        self.l_system = l_system
        self.records = {t: [cx.strata[sid] for sid in cx.levels[t]]
                        for t in cx.levels}
        self.ctx = {}
        for t, recs in self.records.items():
            for s in recs:
                if s.id not in l_system:
                    raise ValueError("no Lefschetz class supplied for stratum %s"
                                     % s.id)
                self.ctx[s.id] = make_context(s.ring, l_system[s.id])

    def dims(self, t, i):
        if i % 2 or i < 0:
            return 0
        j = i // 2
        return sum(len(s.ring.basis[j]) for s in self.records.get(t, [])
                   if j <= s.ring.n)

    def offsets(self, t, i):
        out = {}
        off = 0
        j = i // 2
        for s in self.records.get(t, []):
            out[s.id] = off
            if i % 2 == 0 and 0 <= j <= s.ring.n:
                off += len(s.ring.basis[j])
        return out

    def rho(self, t, i):
        """H^i(X^(t)) -> H^i(X^(t+1)) with Cech signs."""
        cx = self.cx
        rows = self.dims(t + 1, i)
        cols = self.dims(t, i)
        m = [[Fraction(0)] * cols for _ in range(rows)]
        src_off = self.offsets(t, i)
        tgt_off = self.offsets(t + 1, i)
        for s in self.records.get(t, []):
            for child_id, madd in cx.children.get(s.id, []):
                child = cx.strata[child_id]
                if child.level != t + 1 or i // 2 > child.ring.n:
                    continue
                _, mats = cx.restriction(child_id, madd)
                sign = _cech_sign(madd, child.subset)
                _insert_block(m, mats[i // 2], tgt_off[child_id], src_off[s.id],
                              sign)
        return m

    def tau(self, t, i):
        """H^i(X^(t)) -> H^(i+2)(X^(t-1)) with Cech signs (t >= 2)."""
        cx = self.cx
        rows = self.dims(t - 1, i + 2)
        cols = self.dims(t, i)
        m = [[Fraction(0)] * cols for _ in range(rows)]
        src_off = self.offsets(t, i)
        tgt_off = self.offsets(t - 1, i + 2)
        for s in self.records.get(t, []):
            if i // 2 > s.ring.n:
                continue
            for mrem in sorted(s.subset):
                pid, _ = s.parents[mrem]
                gys = cx.gysin(s.id, mrem)
                sign = _cech_sign(mrem, s.subset)
                _insert_block(m, gys[i // 2], tgt_off[pid], src_off[s.id], sign)
        return m

    def lef_power(self, t, i, power):
        """Block-diagonal L^power: H^i(X^(t)) -> H^(i+2 power)(X^(t))."""
        rows = self.dims(t, i + 2 * power)
        cols = self.dims(t, i)
        m = [[Fraction(0)] * cols for _ in range(rows)]
        src_off = self.offsets(t, i)
        tgt_off = self.offsets(t, i + 2 * power)
        for s in self.records.get(t, []):
            if i // 2 > s.ring.n or (i // 2) + power > s.ring.n:
                continue
            blk = lefschetz_power(self.ctx[s.id], i // 2, power)
            if linalg.shape(blk)[0]:
                _insert_block(m, blk, tgt_off[s.id], src_off[s.id], 1)
        return m

    def gram(self, t, i):
        """Sum of Lefschetz pairings <a, b> = sigma(L^(dim - i) a cup b)."""
        dim_t = self.cx.n - t + 1
        power = dim_t - i
        cols = self.dims(t, i)
        g = [[Fraction(0)] * cols for _ in range(cols)]
        off = self.offsets(t, i)
        for s in self.records.get(t, []):
            ring = s.ring
            j = i // 2
            if j > ring.n or j + power > ring.n or power < 0:
                continue
            lp = lefschetz_power(self.ctx[s.id], j, power)
            nb = len(ring.basis[j])
            for a in range(nb):
                va = [lp[r][a] for r in range(len(lp))]
                for b in range(nb):
                    vb = ring.zero(j)
                    vb[b] = Fraction(1)
                    g[off[s.id] + a][off[s.id] + b] = ring.pair(ring.n - j, va, vb)
        return g

    def primitive(self, t, i):
        """Columns spanning the primitive part of H^i(X^(t))."""
        dim_t = self.cx.n - t + 1
        power = dim_t - i + 1
        cols = self.dims(t, i)
        if power <= 0:
            return [[] for _ in range(cols)]
        m = self.lef_power(t, i, power)
        if linalg.shape(m)[0] == 0:
            return linalg.identity(cols)
        ker = linalg.kernel_basis(m)
        return [[v[r] for v in ker] for r in range(cols)]


def verify_rz_lemmas(cx, l_system):
    """Run the positivity lemma suite; returns (verdict, report rows).

    l_system maps stratum id -> Lefschetz class (N^1 coordinates or generator
    dict).  Hard Lefschetz must hold on every stratum for its class.
    """
    lm = LevelMaps(cx, l_system)
    report = []
    ok_all = True

    def add(name, ok, detail=""):
        nonlocal ok_all
        ok_all = ok_all and ok
        report.append({"lemma": name, "ok": ok, "detail": detail})

    from .lefschetz import check_hard_lefschetz
    for sid, ctx in sorted(lm.ctx.items()):
        hl, _ = check_hard_lefschetz(ctx)
        if not hl:
            raise ValueError("hard Lefschetz fails on stratum %s; lemma suite "
                             "undefined" % sid)

    n = cx.n
    max_i = 2 * n + 2
    # composition identities
    def dims_ok(*pairs):
        return all(lm.dims(t_, i_) for t_, i_ in pairs)

    for t in sorted(cx.levels):
        for i in range(0, max_i, 2):
            if lm.dims(t, i) == 0:
                continue
            if dims_ok((t + 1, i), (t + 2, i)):
                add("rho_rho_zero[t=%d,i=%d]" % (t, i),
                    linalg.is_zero_matrix(
                        linalg.matmul(lm.rho(t + 1, i), lm.rho(t, i))))
            if t >= 3 and dims_ok((t - 1, i + 2), (t - 2, i + 4)):
                add("tau_tau_zero[t=%d,i=%d]" % (t, i),
                    linalg.is_zero_matrix(
                        linalg.matmul(lm.tau(t - 1, i + 2), lm.tau(t, i))))
            if t >= 2 and lm.dims(t, i + 2):
                # tau rho + rho tau = 0 between interior levels
                rows = lm.dims(t, i + 2)
                cols = lm.dims(t, i)
                zero = [[Fraction(0)] * cols for _ in range(rows)]
                a = linalg.matmul(lm.tau(t + 1, i), lm.rho(t, i)) \
                    if lm.dims(t + 1, i) else zero
                b = linalg.matmul(lm.rho(t - 1, i + 2), lm.tau(t, i)) \
                    if lm.dims(t - 1, i + 2) else zero
                a = _pad(a, rows, cols)
                b = _pad(b, rows, cols)
                add("anticommute[t=%d,i=%d]" % (t, i),
                    linalg.is_zero_matrix(linalg.add(a, b)))
            # rho tau rho = 0 including the boundary level
            if dims_ok((t + 1, i), (t, i + 2), (t + 1, i + 2)):
                m = linalg.matmul(lm.rho(t, i + 2),
                                  linalg.matmul(lm.tau(t + 1, i), lm.rho(t, i)))
                add("rho_tau_rho_zero[t=%d,i=%d]" % (t, i),
                    linalg.is_zero_matrix(m))

    for t in sorted(cx.levels):
        if t + 1 not in cx.levels:
            continue
        dim_hi = n - t          # dim X^(t+1)
        im0_rho = {}
        im_rho = {}
        for i in range(0, 2 * dim_hi + 1, 2):
            im_rho[i] = linalg.column_space(lm.rho(t, i)) \
                if lm.dims(t, i) else [[] for _ in range(lm.dims(t + 1, i))]
            prims = lm.primitive(t + 1, i)
            p_im0 = linalg.subspace_intersection(im_rho[i], prims)
            im0_rho[i] = p_im0
        # close Im0 under L
        for i in range(0, 2 * dim_hi + 1, 2):
            total = im0_rho[i]
            for jj in range(1, i // 2 + 1):
                lower = im0_rho.get(i - 2 * jj)
                if lower is None or not linalg.shape(lower)[1]:
                    continue
                total = linalg.subspace_sum(
                    total, linalg.matmul(lm.lef_power(t + 1, i - 2 * jj, jj),
                                         lower))
            im0_rho[i] = total
        im0_tau = {}
        im_tau = {}
        dim_lo = n - t + 1      # dim X^(t)
        for i in range(0, 2 * dim_hi + 1, 2):
            im_tau[i] = linalg.column_space(lm.tau(t + 1, i)) \
                if lm.dims(t + 1, i) else [[] for _ in range(lm.dims(t, i + 2))]
            prims = lm.primitive(t, i + 2)
            im0_tau[i] = linalg.subspace_intersection(im_tau[i], prims)
        for i in range(0, 2 * dim_hi + 1, 2):
            total = im0_tau[i]
            for jj in range(1, i // 2 + 1):
                lower = im0_tau.get(i - 2 * jj)
                if lower is None or not linalg.shape(lower)[1]:
                    continue
                total = linalg.subspace_sum(
                    total, linalg.matmul(lm.lef_power(t, i + 2 - 2 * jj, jj),
                                         lower))
            im0_tau[i] = total

        def sdim(mat):
            return linalg.shape(mat)[1]

        def im1_rho_dim(i):
            if i not in im_rho:
                return 0
            return sdim(im_rho[i]) - sdim(im0_rho[i])

        for i in range(0, 2 * dim_hi + 1, 2):
            d_im_rho = sdim(im_rho[i])
            d_im0_rho = sdim(im0_rho[i])
            # hard Lefschetz for Im0: L^(dim-i) is an isomorphism onto the
            # Im0 space in the dual degree
            p0 = dim_hi - i
            if p0 >= 0:
                tgt = im0_rho[2 * dim_hi - i]
                if d_im0_rho:
                    img = linalg.matmul(lm.lef_power(t + 1, i, p0), im0_rho[i])
                    ok = linalg.rank(img) == d_im0_rho \
                        and linalg.subspace_equal(img, tgt)
                else:
                    ok = sdim(tgt) == 0
                add("hard_lefschetz_im0_rho[t=%d,i=%d]" % (t, i), ok)
            # hard Lefschetz for Im1: symmetry center shifted by one
            p1 = dim_hi + 1 - i
            i_tgt = 2 * (dim_hi + 1) - i
            if p1 >= 0:
                src_q = im1_rho_dim(i)
                tgt_q = im1_rho_dim(i_tgt)
                if i_tgt > 2 * dim_hi:
                    add("hard_lefschetz_im1_rho[t=%d,i=%d]" % (t, i), src_q == 0)
                elif src_q or tgt_q:
                    img = linalg.matmul(lm.lef_power(t + 1, i, p1), im_rho[i]) \
                        if d_im_rho else im_rho[i]
                    inside = linalg.subspace_leq(img, im_rho[i_tgt]) \
                        if d_im_rho else True
                    quot_rank = linalg.rank(linalg.stack_columns(
                        im0_rho[i_tgt], img)) - sdim(im0_rho[i_tgt]) \
                        if d_im_rho else 0
                    add("hard_lefschetz_im1_rho[t=%d,i=%d]" % (t, i),
                        inside and src_q == tgt_q == quot_rank)
            # duality of dimensions: dim Im0 rho_i = dim Im1 tau_i and
            # dim Im1 rho_(i+2) = dim Im0 tau_i
            d_im0_tau = sdim(im0_tau[i])
            d_im1_tau = sdim(im_tau[i]) - d_im0_tau
            add("duality_dims[t=%d,i=%d]" % (t, i),
                d_im0_rho == d_im1_tau and im1_rho_dim(i + 2) == d_im0_tau)
            # nondegeneracy of the Lefschetz pairing on Im0 (middle range)
            if d_im0_rho and i <= dim_hi:
                g_hi = lm.gram(t + 1, i)
                sub = linalg.matmul(linalg.transpose(im0_rho[i]),
                                    linalg.matmul(g_hi, im0_rho[i]))
                add("nondegenerate_im0_rho[t=%d,i=%d]" % (t, i),
                    linalg.rank(sub) == d_im0_rho)
            g_lo = lm.gram(t, i + 2) if i + 2 <= dim_lo else None
            if d_im0_tau and g_lo is not None:
                sub = linalg.matmul(linalg.transpose(im0_tau[i]),
                                    linalg.matmul(g_lo, im0_tau[i]))
                add("nondegenerate_im0_tau[t=%d,i=%d]" % (t, i),
                    linalg.rank(sub) == d_im0_tau)
            # isomorphism Im0 rho -> Im1 tau and the orthogonal splitting
            if d_im0_rho or d_im1_tau:
                img = linalg.matmul(lm.tau(t + 1, i), im0_rho[i]) \
                    if d_im0_rho else im0_rho[i]
                st = linalg.stack_columns(im0_tau[i], img)
                got = linalg.rank(st) - sdim(im0_tau[i]) if d_im0_rho else 0
                add("isomorphism_im0_to_im1[t=%d,i=%d]" % (t, i),
                    got == d_im0_rho == d_im1_tau)
                whole = linalg.subspace_sum(im0_tau[i], img) if d_im0_rho \
                    else im0_tau[i]
                split_ok = linalg.subspace_equal(whole, im_tau[i]) \
                    and sdim(im0_tau[i]) + got == sdim(im_tau[i])
                cross_ok = True
                if d_im0_tau and d_im0_rho and g_lo is not None:
                    cross = linalg.matmul(linalg.transpose(im0_tau[i]),
                                          linalg.matmul(g_lo, img))
                    cross_ok = linalg.is_zero_matrix(cross)
                add("orthogonal_splitting_tau[t=%d,i=%d]" % (t, i),
                    split_ok and cross_ok)
            # Ker tau cap Im rho = Im(rho o tau)
            kmat = _kernel_columns(lm.tau(t + 1, i), lm.dims(t + 1, i),
                                   lm.dims(t, i + 2))
            lhs = linalg.subspace_intersection(kmat, im_rho[i])
            rot = linalg.matmul(lm.rho(t, i), lm.tau(t + 1, i - 2)) \
                if i >= 2 and lm.dims(t + 1, i - 2) and lm.dims(t, i) else None
            rhs = linalg.column_space(rot) if rot else \
                [[] for _ in range(lm.dims(t + 1, i))]
            add("ker_tau_cap_im_rho[t=%d,i=%d]" % (t, i),
                linalg.subspace_equal(lhs, rhs))
            # Ker rho cap Im tau = Im(tau o rho) one degree up
            kmat2 = _kernel_columns(lm.rho(t, i + 2), lm.dims(t, i + 2),
                                    lm.dims(t + 1, i + 2))
            lhs2 = linalg.subspace_intersection(kmat2, im_tau[i])
            tor = linalg.matmul(lm.tau(t + 1, i), lm.rho(t, i)) \
                if lm.dims(t + 1, i) and lm.dims(t, i) else None
            rhs2 = linalg.column_space(tor) if tor else \
                [[] for _ in range(lm.dims(t, i + 2))]
            add("ker_rho_cap_im_tau[t=%d,i=%d]" % (t, i),
                linalg.subspace_equal(lhs2, rhs2))

    return ok_all, report


def _kernel_columns(matrix, source_dim, target_dim):
    """Kernel of a map as a column matrix; the whole space if the target is 0."""
    if source_dim == 0:
        return []
    if target_dim == 0:
        return linalg.identity(source_dim)
    ker = linalg.kernel_basis(matrix)
    return [[v[r] for v in ker] for r in range(source_dim)]


def gysin_adjoint(cx, child_id, m):
    """Public accessor for the per-degree Gysin matrices of one inclusion."""
    return cx.gysin(child_id, m)
