"""Finite matroids stored as explicit independence families over bitmasks.

Subsets of the ground set are ints: bit i is the i-th entry of ``elements``.
Public functions accept either such a mask or an iterable of element names,
and hand back frozensets of names.  Families come back sorted by
(size, sorted names) so that output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import MatroidError, PreconditionError


def popcount(m: int) -> int:
    return m.bit_count()


def bits(m: int):
    """Indices of the set bits of m, ascending."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def submasks(m: int):
    """All submasks of m, from m down to 0."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def minimal_masks(masks) -> list[int]:
    """Inclusion-minimal members of a collection of masks."""
    out = []
    for m in sorted(set(masks), key=popcount):
        if not any(o & m == o for o in out):
            out.append(m)
    return out


def family_key(s):
    return (len(s), sorted(s))


def sort_family(fam):
    return sorted((frozenset(s) for s in fam), key=family_key)


class SetSystem:
    """A ground set with a family of subsets, nothing more."""

    def __init__(self, elements, independent):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise MatroidError("duplicate element names")
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        full = (1 << len(elements)) - 1
        fam = set()
        for x in independent:
            m = x if isinstance(x, int) else self.mask(x)
            if m & ~full:
                raise MatroidError("independent set not inside the ground set")
            fam.add(m)
        self.independent = frozenset(fam)
        self._key = None

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask(self, X) -> int:
        if isinstance(X, int):
            if X < 0 or X & ~self.full:
                raise MatroidError(f"mask {X} outside ground set")
            return X
        if isinstance(X, str):
            X = [X]
        m = 0
        for e in X:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise MatroidError(f"unknown element {e!r}") from None
        return m

    def names(self, m: int) -> frozenset:
        els = self.elements
        return frozenset(els[i] for i in bits(m))

    def sorted_names(self, m: int) -> list:
        return sorted(self.names(m))

    def is_independent(self, X) -> bool:
        return self.mask(X) in self.independent

    def key(self):
        """Name-based canonical form, used for equality and hashing."""
        if self._key is None:
            order = sorted(range(self.n), key=lambda i: self.elements[i])
            pos = [0] * self.n
            for new, old in enumerate(order):
                pos[old] = new
            fam = frozenset(sum(1 << pos[i] for i in bits(m)) for m in self.independent)
            self._key = (tuple(self.elements[i] for i in order), fam)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"{type(self).__name__}({' '.join(self.elements)}; {len(self.independent)} independent sets)"


def check_matroid(S: SetSystem) -> bool:
    """Do the independence axioms hold?  Total: never raises."""
    ind = S.independent
    if 0 not in ind:
        return False
    for m in ind:
        for i in bits(m):
            if m ^ (1 << i) not in ind:
                return False
    # with heredity in hand, augmentation only needs |Y| = |X| + 1
    levels: dict[int, list[int]] = {}
    for m in ind:
        levels.setdefault(popcount(m), []).append(m)
    for s, xs in levels.items():
        ys = levels.get(s + 1)
        if not ys:
            continue
        for X in xs:
            ext = 0
            for i in range(S.n):
                b = 1 << i
                if not X & b and X | b in ind:
                    ext |= b
            for Y in ys:
                if not (Y & ~X & ext):
                    return False
    return True


class Matroid(SetSystem):
    """A set-system known to satisfy the independence axioms.

    Rank, circuits and friends are computed lazily and cached; the object is
    otherwise immutable.
    """

    def __init__(self, elements, independent, check=True):
        super().__init__(elements, independent)
        if check and not check_matroid(self):
            raise MatroidError("set-system is not a matroid")
        self._rank = None
        self._circuits = None
        self._dual = None
        self._components = None
        self._cyclic_flats = None

    # --- constructors -------------------------------------------------

    @classmethod
    def from_circuits(cls, elements, circuits, check=True):
        """Independent sets are the sets containing no listed circuit."""
        elements = tuple(elements)
        tmp = SetSystem(elements, [])
        cmasks = {c if isinstance(c, int) else tmp.mask(c) for c in circuits}
        n = len(elements)
        dep = bytearray(1 << n)
        for c in cmasks:
            dep[c] = 1
        for m in range(1, 1 << n):
            if dep[m]:
                continue
            for i in bits(m):
                if dep[m ^ (1 << i)]:
                    dep[m] = 1
                    break
        ind = [m for m in range(1 << n) if not dep[m]]
        M = cls(elements, ind, check=check)
        if check and set(M.circuit_masks()) != set(minimal_masks(cmasks)):
            raise MatroidError("listed sets are not the circuits of a matroid")
        return M

    @classmethod
    def from_bases(cls, elements, bases, check=True):
        elements = tuple(elements)
        tmp = SetSystem(elements, [])
        ind = set()
        for b in bases:
            ind.update(submasks(b if isinstance(b, int) else tmp.mask(b)))
        return cls(elements, ind, check=check)

    @classmethod
    def from_rank(cls, elements, rank_fn, check=True):
        """rank_fn maps a mask to its rank."""
        elements = tuple(elements)
        ind = [m for m in range(1 << len(elements)) if rank_fn(m) == popcount(m)]
        return cls(elements, ind, check=check)

    # --- rank machinery ----------------------------------------------

    def _build_rank(self):
        # greedy: a maximal independent subset of m, grown one element at a
        # time, is a basis of m in any matroid
        n = self.n
        ind = self.independent
        basis = [0] * (1 << n)
        rk = bytearray(1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            b = basis[m ^ low]
            if b | low in ind:
                basis[m] = b | low
                rk[m] = rk[m ^ low] + 1
            else:
                basis[m] = b
                rk[m] = rk[m ^ low]
        self._rank = rk
        self._basis = basis

    @property
    def rank_table(self) -> bytearray:
        if self._rank is None:
            self._build_rank()
        return self._rank

    def r(self, m: int) -> int:
        """Rank of a mask; no validation, for inner loops."""
        return self.rank_table[m]

    def rank(self, X=None) -> int:
        if X is None:
            return self.rank_table[self.full]
        return self.rank_table[self.mask(X)]

    def corank(self) -> int:
        return self.n - self.rank()

    def closure_mask(self, m: int) -> int:
        rk = self.rank_table
        base = rk[m]
        out = m
        for i in range(self.n):
            b = 1 << i
            if not m & b and rk[m | b] == base:
                out |= b
        return out

    def is_flat_mask(self, m: int) -> bool:
        return self.closure_mask(m) == m

    def lam(self, m: int) -> int:
        rk = self.rank_table
        return rk[m] + rk[self.full ^ m] - rk[self.full]

    def is_loop(self, e) -> bool:
        return self.rank_table[self.mask(e)] == 0

    def is_coloop(self, e) -> bool:
        m = self.mask(e)
        return self.rank_table[self.full ^ m] < self.rank_table[self.full]

    # --- circuits --------------------------------------------------

    def circuit_masks(self) -> list[int]:
        if self._circuits is None:
            ind = self.independent
            out = []
            for m in range(1, 1 << self.n):
                if m in ind:
                    continue
                if all(m ^ (1 << i) in ind for i in bits(m)):
                    out.append(m)
            self._circuits = out
        return self._circuits

    def dual(self) -> "Matroid":
        if self._dual is None:
            rk = self.rank_table
            r = rk[self.full]
            full = self.full
            ind = [m for m in range(1 << self.n) if rk[full ^ m] == r]
            D = Matroid(self.elements, ind, check=False)
            D._dual = self
            self._dual = D
        return self._dual

    def cocircuit_masks(self) -> list[int]:
        return self.dual().circuit_masks()

    def component_masks(self) -> list[int]:
        if self._components is None:
            parent = list(range(self.n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for c in self.circuit_masks():
                idx = list(bits(c))
                r0 = find(idx[0])
                for j in idx[1:]:
                    rj = find(j)
                    if rj != r0:
                        parent[rj] = r0
            groups: dict[int, int] = {}
            for i in range(self.n):
                groups[find(i)] = groups.get(find(i), 0) | (1 << i)
            self._components = sorted(groups.values(), key=lambda m: sorted(self.names(m)))
        return self._components

    def is_connected(self) -> bool:
        return len(self.component_masks()) <= 1

    def cyclic_flat_masks(self) -> list[int]:
        if self._cyclic_flats is None:
            rk = self.rank_table
            out = []
            for m in range(1 << self.n):
                if not self.is_flat_mask(m):
                    continue
                if all(rk[m ^ (1 << i)] == rk[m] for i in bits(m)):
                    out.append(m)
            self._cyclic_flats = out
        return self._cyclic_flats

    # --- minors ----------------------------------------------------

    def restrict_mask(self, keep: int) -> "Matroid":
        idx = list(bits(keep))
        els = [self.elements[i] for i in idx]
        ind = []
        for m in self.independent:
            if m & ~keep:
                continue
            ind.append(sum(1 << k for k, i in enumerate(idx) if m >> i & 1))
        return Matroid(els, ind, check=False)

    def contract_mask(self, X: int) -> "Matroid":
        rk = self.rank_table
        keep = self.full ^ X
        rX = rk[X]
        idx = list(bits(keep))
        els = [self.elements[i] for i in idx]
        ind = []
        for m in self.independent:
            if m & X:
                continue
            if rk[m | X] == popcount(m) + rX:
                ind.append(sum(1 << k for k, i in enumerate(idx) if m >> i & 1))
        return Matroid(els, ind, check=False)

    def relabel(self, mapping) -> "Matroid":
        """Rename elements via a dict (missing names stay as they are)."""
        els = [mapping.get(e, e) for e in self.elements]
        return Matroid(els, self.independent, check=False)


# ---------------------------------------------------------------------
# functional interface (names in, names out)


def rank(M: Matroid, X) -> int:
    return M.rank(X)


def closure(M: Matroid, X) -> frozenset:
    return M.names(M.closure_mask(M.mask(X)))


def coclosure(M: Matroid, X) -> frozenset:
    D = M.dual()
    return D.names(D.closure_mask(D.mask(X)))


def dual(M: Matroid) -> Matroid:
    return M.dual()


def delete(M: Matroid, X) -> Matroid:
    return M.restrict_mask(M.full ^ M.mask(X))


def restrict(M: Matroid, X) -> Matroid:
    return M.restrict_mask(M.mask(X))


def contract(M: Matroid, X) -> Matroid:
    return M.contract_mask(M.mask(X))


def circuits(M: Matroid) -> list:
    return sort_family(M.names(c) for c in M.circuit_masks())


def cocircuits(M: Matroid) -> list:
    return sort_family(M.names(c) for c in M.cocircuit_masks())


def connectivity(M: Matroid, A) -> int:
    """lambda(A) = r(A) + r(E - A) - r(M)."""
    return M.lam(M.mask(A))


@dataclass(frozen=True)
class Separation:
    side_a: frozenset
    side_b: frozenset
    order: int


def separation_masks(M: Matroid, k: int) -> list[int]:
    """Masks A (containing the least-named element) of k-separations."""
    if k < 1:
        raise MatroidError("k must be at least 1")
    if M.n == 0:
        return []
    first = min(range(M.n), key=lambda i: M.elements[i])
    fb = 1 << first
    full = M.full
    out = []
    for m in range(1 << M.n):
        if not m & fb:
            continue
        if popcount(m) < k or popcount(full ^ m) < k:
            continue
        if M.lam(m) < k:
            out.append(m)
    return out


def k_separations(M: Matroid, k: int) -> list:
    out = []
    for m in separation_masks(M, k):
        out.append(Separation(M.names(m), M.names(M.full ^ m), M.lam(m)))
    out.sort(key=lambda s: (family_key(s.side_a), sorted(s.side_b)))
    return out


def components(M: Matroid) -> list:
    return [M.names(c) for c in M.component_masks()]


def is_connected(M: Matroid) -> bool:
    return M.is_connected()


def cyclic_flats(M: Matroid) -> list:
    return sort_family(M.names(z) for z in M.cyclic_flat_masks())


def are_clones(M: Matroid, e, f) -> bool:
    a, b = M.mask(e), M.mask(f)
    for z in M.cyclic_flat_masks():
        if bool(z & a) != bool(z & b):
            return False
    return True


def clonal_class_masks(M: Matroid) -> list[int]:
    groups: dict = {}
    zs = M.cyclic_flat_masks()
    for i in range(M.n):
        sig = tuple(bool(z >> i & 1) for z in zs)
        groups[sig] = groups.get(sig, 0) | (1 << i)
    return sorted(groups.values(), key=lambda m: sorted(M.names(m)))


def clonal_classes(M: Matroid) -> list:
    return sort_family(M.names(c) for c in clonal_class_masks(M))


def rank2_clonal_classes(M: Matroid) -> list:
    return sort_family(M.names(c) for c in clonal_class_masks(M) if M.r(c) == 2)


@dataclass(frozen=True)
class TwoSumSpec:
    left: Matroid
    right: Matroid
    basepoint: str

    def matroid(self) -> Matroid:
        return two_sum(self.left, self.right, self.basepoint)


def two_sum(left, right=None, basepoint=None) -> Matroid:
    """2-sum along a shared basepoint.  Accepts a TwoSumSpec or three args."""
    if isinstance(left, TwoSumSpec):
        left, right, basepoint = left.left, left.right, left.basepoint
    if set(left.elements) & set(right.elements) != {basepoint}:
        raise MatroidError("summand grounds must meet exactly in the basepoint")
    for side in (left, right):
        if side.is_loop(basepoint) or side.is_coloop(basepoint):
            raise MatroidError(f"basepoint {basepoint} is a separator of a summand")
    els = [e for e in left.elements if e != basepoint] + [e for e in right.elements if e != basepoint]
    pos = {e: i for i, e in enumerate(els)}

    def move(M, c):
        return sum(1 << pos[M.elements[i]] for i in bits(c) if M.elements[i] != basepoint)

    lb, rb = left.mask(basepoint), right.mask(basepoint)
    lc = [c for c in left.circuit_masks()]
    rc = [c for c in right.circuit_masks()]
    circs = [move(left, c) for c in lc if not c & lb]
    circs += [move(right, c) for c in rc if not c & rb]
    for c1 in lc:
        if c1 & lb:
            for c2 in rc:
                if c2 & rb:
                    circs.append(move(left, c1) | move(right, c2))
    return Matroid.from_circuits(els, circs, check=False)


def fresh_name(taken, prefix="__bp") -> str:
    i = 0
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"


def split_along(M: Matroid, A, basepoint=None):
    """Undo a 2-sum: returns (M_A, M_B, basepoint) with two_sum(...) == M."""
    a = M.mask(A)
    b = M.full ^ a
    if not M.is_connected():
        raise PreconditionError("split_along needs a connected matroid")
    if popcount(a) < 2 or popcount(b) < 2 or M.lam(a) >= 2:
        raise PreconditionError("not a 2-separation")
    if basepoint is None:
        basepoint = fresh_name(set(M.elements))
    elif basepoint in M.index:
        raise MatroidError("basepoint name already used")
    parts = []
    for side, other in ((a, b), (b, a)):
        idx = list(bits(side))
        els = [M.elements[i] for i in idx]
        if side == a:
            els = els + [basepoint]
        else:
            els = [basepoint] + els
        pos = {i: (k if side == a else k + 1) for k, i in enumerate(idx)}
        bp = 1 << (len(idx) if side == a else 0)
        circs = []
        for c in M.circuit_masks():
            inner = sum(1 << pos[i] for i in bits(c & side))
            if not c & other:
                circs.append(inner)
            elif c & side:
                circs.append(inner | bp)
        parts.append(Matroid.from_circuits(els, minimal_masks(circs), check=False))
    return parts[0], parts[1], basepoint


def skew(M: Matroid, X, Y) -> bool:
    x, y = M.mask(X), M.mask(Y)
    if x & y:
        raise MatroidError("skew needs disjoint sets")
    u = x | y
    for c in M.circuit_masks():
        if c & ~u == 0 and c & x and c & y:
            return False
    return True


def coskew(M: Matroid, X, Y) -> bool:
    return skew(M.dual(), X, Y)


def _require_cocircuit(M, C) -> int:
    c = M.mask(C)
    if c not in set(M.cocircuit_masks()):
        raise PreconditionError("not a cocircuit")
    return c


def is_nonseparating_cocircuit(M: Matroid, C) -> bool:
    c = _require_cocircuit(M, C)
    return M.restrict_mask(M.full ^ c).is_connected()


def is_good_cocircuit(M: Matroid, C) -> bool:
    """Strict reading: M\\C must have exactly one component of size > 1."""
    c = _require_cocircuit(M, C)
    return good_cocircuit_mask(M, c)


def good_cocircuit_mask(M: Matroid, c: int) -> bool:
    rest = M.full ^ c
    D = M.restrict_mask(rest)
    # positions of D are the set bits of rest, in order
    idx = list(bits(rest))

    def lift(m):
        return sum(1 << idx[k] for k in bits(m))

    big = [lift(p) for p in D.component_masks() if popcount(p) > 1]
    if len(big) != 1:
        return False
    dmask = big[0]
    coloops = [idx[k] for k in range(D.n) if D.rank_table[D.full ^ (1 << k)] < D.rank_table[D.full]]
    if not coloops:
        return True
    classes = [f for f in clonal_class_masks(M) if M.r(f) == 2 and f & ~c == 0]
    for x in coloops:
        xb = 1 << x
        ok = False
        for cir in M.circuit_masks():
            if not cir & xb or not cir & dmask:
                continue
            meet = cir & c
            if popcount(meet) != 2:
                continue
            if any(meet & ~f == 0 for f in classes):
                ok = True
                break
        if not ok:
            return False
    return True


def wedge_masks(M: Matroid, a: int) -> list[int]:
    if not M.is_connected():
        raise PreconditionError("wedges need a connected matroid")
    if M.lam(a) >= 2:
        raise PreconditionError("set is not 2-separating")
    b = M.full ^ a
    cands = [z for z in submasks(b) if z and z != b and M.lam(z) < 2]
    out = [z for z in cands if not any(w != z and w & z == z for w in cands)]
    return sorted(out, key=lambda m: sorted(M.names(m)))


def wedges(M: Matroid, A) -> list:
    return sort_family(M.names(z) for z in wedge_masks(M, M.mask(A)))


# ---------------------------------------------------------------------
# small constructions


def default_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"e{i}" for i in range(n)]


def uniform(r: int, n: int, names=None) -> Matroid:
    names = list(names) if names is not None else default_names(n)
    if len(names) != n or not 0 <= r <= n:
        raise MatroidError("bad uniform matroid parameters")
    ind = [m for m in range(1 << n) if popcount(m) <= r]
    return Matroid(names, ind, check=False)


def direct_sum(*ms: Matroid) -> Matroid:
    els = []
    for M in ms:
        els.extend(M.elements)
    if len(set(els)) != len(els):
        raise MatroidError("direct sum needs disjoint grounds")
    fams = [0]
    shift = 0
    for M in ms:
        fams = [f | (m << shift) for f in fams for m in M.independent]
        shift += M.n
    return Matroid(els, fams, check=False)


def isomorphism(M1: SetSystem, M2: SetSystem, fixed=None):
    """Find a bijection E1 -> E2 carrying independent sets onto independent
    sets, or None.  ``fixed`` pins some names.  Plain backtracking; fine for
    the handful of elements we ever compare."""
    if M1.n != M2.n or len(M1.independent) != len(M2.independent):
        return None
    n = M1.n
    ind1, ind2 = M1.independent, M2.independent
    fixed = dict(fixed or {})
    # cheap invariant: number of independent sets through each element
    def profile(S, i):
        b = 1 << i
        return sum(1 for m in S.independent if m & b)

    p1 = [profile(M1, i) for i in range(n)]
    p2 = [profile(M2, j) for j in range(n)]
    order = list(range(n))
    img = [-1] * n
    used = [False] * n

    def consistent(k):
        # check all subsets of the first k+1 placed elements that use the last
        i = order[k]
        placed = order[:k]
        for size in range(0, k + 1):
            for sub in combinations(placed, size):
                m1 = (1 << i) | sum(1 << x for x in sub)
                m2 = (1 << img[i]) | sum(1 << img[x] for x in sub)
                if (m1 in ind1) != (m2 in ind2):
                    return False
        return True

    def go(k):
        if k == n:
            return True
        i = order[k]
        name = M1.elements[i]
        cands = range(n)
        if name in fixed:
            cands = [M2.index[fixed[name]]] if fixed[name] in M2.index else []
        for j in cands:
            if used[j] or p1[i] != p2[j]:
                continue
            img[i] = j
            used[j] = True
            if consistent(k) and go(k + 1):
                return True
            used[j] = False
            img[i] = -1
        return False

    if not go(0):
        return None
    return {M1.elements[i]: M2.elements[img[i]] for i in range(n)}


def is_isomorphic(M1: SetSystem, M2: SetSystem) -> bool:
    return isomorphism(M1, M2) is not None


def all_permutations_isomorphic(M1, M2) -> bool:
    """Reference isomorphism test by trying every bijection (tiny inputs)."""
    if M1.n != M2.n:
        return False
    for perm in permutations(range(M2.n)):
        mp = [1 << p for p in perm]
        if all(sum(mp[i] for i in bits(m)) in M2.independent for m in M1.independent) and len(
            M1.independent
        ) == len(M2.independent):
            return True
    return False
