"""Independent brute-force enumeration of linear subspaces of F_q^n.

Shares nothing with the package's echelon enumeration: field arithmetic is
rebuilt from the modulus, subspaces of low dimension are grown as explicitly
closed sets of packed vectors (orderly extension by a point above the current
maximum), and the upper half of the dimension range comes from orthogonal
complements for the standard dot product.  Each subspace is reported as the
frozenset of its nonzero vectors, packed base q.
"""

from functools import lru_cache


class OracleField:
    def __init__(self, q):
        for p in range(2, q + 1):
            if q % p == 0:
                break
        e = 0
        m = q
        while m % p == 0:
            m //= p
            e += 1
        self.p, self.e, self.q = p, e, q
        if e == 1:
            self.add = lambda a, b: (a + b) % p
            self.mul = lambda a, b: (a * b) % p
        else:
            modulus = {4: (1, 1, 1), 8: (1, 1, 0, 1), 9: (1, 0, 1),
                       16: (1, 1, 0, 0, 1)}[q]

            def digits(a):
                out = []
                for _ in range(e):
                    out.append(a % p)
                    a //= p
                return out

            def pack(d):
                v = 0
                for x in reversed(d):
                    v = v * p + x
                return v

            def poly_mul(da, db):
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for top in range(2 * e - 2, e - 1, -1):
                    lead = prod[top]
                    if lead:
                        prod[top] = 0
                        for i in range(e):
                            prod[top - e + i] = (prod[top - e + i]
                                                 - lead * modulus[i]) % p
                return prod[:e]

            add_t = [[pack([(x + y) % p for x, y in zip(digits(a), digits(b))])
                      for b in range(q)] for a in range(q)]
            mul_t = [[pack(poly_mul(digits(a), digits(b)))
                      for b in range(q)] for a in range(q)]
            self.add = lambda a, b: add_t[a][b]
            self.mul = lambda a, b: mul_t[a][b]

    def neg(self, a):
        for b in range(self.q):
            if self.add(a, b) == 0:
                return b
        raise AssertionError

    def inv(self, a):
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError


@lru_cache(maxsize=None)
def _ops(q, n):
    f = OracleField(q)
    size = q ** n

    def unpack(v):
        out = []
        for _ in range(n):
            out.append(v % q)
            v //= q
        return out

    def pack(d):
        v = 0
        for x in reversed(d):
            v = v * q + x
        return v

    if f.p == 2:
        # in characteristic 2 packed addition is digitwise xor: the base-q
        # digits occupy disjoint bit fields and field addition is xor
        def add(a, b):
            return a ^ b
    else:
        table = [[pack([f.add(x, y) for x, y in zip(unpack(a), unpack(b))])
                  for b in range(size)] for a in range(size)]

        def add(a, b):
            return table[a][b]

    scal = [[pack([f.mul(c, x) for x in unpack(a)]) for a in range(size)]
            for c in range(q)]
    return f, add, scal, pack, unpack


def _point_reps(q, n):
    _, _, scal, _, _ = _ops(q, n)
    rep_of = {}
    reps = []
    for v in range(1, q ** n):
        if v in rep_of:
            continue
        orbit = {scal[c][v] for c in range(1, q)}
        rep = min(orbit)
        for w in orbit:
            rep_of[w] = rep
        reps.append(rep)
    return reps, rep_of


def _basis_of(sub, q, n):
    """Row-reduce the vectors of a packed subspace to an F_q basis."""
    f, _, _, _, unpack = _ops(q, n)
    rows = []
    for v in sorted(sub):
        vec = unpack(v)
        for row in rows:
            lead = next(i for i, x in enumerate(row) if x)
            if vec[lead]:
                factor = f.mul(vec[lead], f.inv(row[lead]))
                vec = [f.add(x, f.neg(f.mul(factor, y)))
                       for x, y in zip(vec, row)]
        if any(vec):
            rows.append(vec)
    return rows


def _orthogonal_complement(rows, q, n):
    """All nonzero vectors of the standard-form orthogonal complement."""
    f, add, scal, pack, unpack = _ops(q, n)
    # solve rows . x = 0 by elimination on the k x n system
    sys_rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(sys_rows)) if sys_rows[i][c]), None)
        if piv is None:
            continue
        sys_rows[r], sys_rows[piv] = sys_rows[piv], sys_rows[r]
        inv = f.inv(sys_rows[r][c])
        sys_rows[r] = [f.mul(inv, x) for x in sys_rows[r]]
        for i in range(len(sys_rows)):
            if i != r and sys_rows[i][c]:
                fac = sys_rows[i][c]
                sys_rows[i] = [f.add(x, f.neg(f.mul(fac, y)))
                               for x, y in zip(sys_rows[i], sys_rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for row, piv in zip(sys_rows, pivots):
            vec[piv] = f.neg(row[fc])
        basis.append(pack(vec))
    # span the basis
    span = {0}
    for b in basis:
        new = set(span)
        for c in range(1, q):
            cb = scal[c][b]
            for s in span:
                new.add(add(s, cb))
        span = new
    span.discard(0)
    return frozenset(span)


def subspaces_by_dim(q, n):
    """dict: linear dimension -> list of frozensets of nonzero packed vectors."""
    f, add, scal, pack, unpack = _ops(q, n)
    reps, rep_of = _point_reps(q, n)
    levels = {0: [frozenset()]}
    low = n // 2
    for k in range(1, low + 1):
        found = set()
        for sub in levels[k - 1]:
            mx = max(rep_of[s] for s in sub) if sub else 0
            with_zero = list(sub) + [0]
            for p in reps:
                if p <= mx or p in sub:
                    continue
                new = set()
                for c in range(1, q):
                    cp = scal[c][p]
                    for s in with_zero:
                        new.add(add(s, cp))
                new.update(sub)
                found.add(frozenset(new))
        levels[k] = list(found)
    for k in range(low + 1, n + 1):
        comp = levels[n - k]
        out = []
        for sub in comp:
            rows = _basis_of(sub, q, n)
            out.append(_orthogonal_complement(rows, q, n))
        levels[k] = out
    return levels
