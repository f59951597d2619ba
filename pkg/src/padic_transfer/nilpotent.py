"""Signed-partition combinatorics of the nilpotent orbits and their (r, m) invariants.

A nilpotent element of the split-side space decomposes the underlying
2n-dimensional module into zigzag chains; the datum is a multiset of blocks
(w_i, delta_i) with total size 2n and as many odd blocks of each sign.  The
centralizer dimension r and the half weight-trace m are computed two ways:
from the closed-form table, and by an independent matrix oracle that builds
the nilpotent over Q and solves the commutant equations weight by weight.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from . import matrices
from .matrices import QRing


class SignedPartition:
    """Blocks (w_i >= 1, delta_i = +-1) with sum w_i = 2n and balanced odd signs."""

    def __init__(self, blocks):
        blocks = sorted(((int(w), int(d)) for w, d in blocks),
                        key=lambda b: (-b[0], -b[1]))
        if not blocks or any(w < 1 or d not in (1, -1) for w, d in blocks):
            raise ValueError("blocks must be (w >= 1, delta = +-1)")
        total = sum(w for w, _ in blocks)
        if total % 2 != 0:
            raise ValueError("total size must be even")
        plus = sum(1 for w, d in blocks if w % 2 == 1 and d == 1)
        minus = sum(1 for w, d in blocks if w % 2 == 1 and d == -1)
        if plus != minus:
            raise ValueError("odd blocks must balance between the two signs")
        self.blocks = tuple(blocks)
        self.n = total // 2

    def __repr__(self):
        return f"SignedPartition({list(self.blocks)})"

    def __eq__(self, other):
        return isinstance(other, SignedPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def is_zero(self) -> bool:
        return all(w == 1 for w, _ in self.blocks)

    @property
    def u(self) -> int:
        return sum(1 for w, d in self.blocks if w % 2 == 1 and d == 1)

    def half_sizes(self):
        return [w // 2 for w, _ in self.blocks]

    @staticmethod
    def enumerate(n: int):
        """All balanced signed partitions of 2n, size-lexicographic descending."""
        out = []
        for part in _partitions(2 * n):
            sizes = {}
            for w in part:
                sizes[w] = sizes.get(w, 0) + 1
            odd_sizes = [w for w in sizes if w % 2 == 1]
            even_sizes = [w for w in sizes if w % 2 == 0]
            # choose how many +1s each size class gets
            odd_choices = [range(sizes[w] + 1) for w in odd_sizes]
            even_choices = [range(sizes[w] + 1) for w in even_sizes]
            for odd_pick in product(*odd_choices):
                plus = sum(odd_pick)
                minus = sum(sizes[w] for w in odd_sizes) - plus
                if plus != minus:
                    continue
                for even_pick in product(*even_choices):
                    blocks = []
                    for w, k in zip(odd_sizes, odd_pick):
                        blocks += [(w, 1)] * k + [(w, -1)] * (sizes[w] - k)
                    for w, k in zip(even_sizes, even_pick):
                        blocks += [(w, 1)] * k + [(w, -1)] * (sizes[w] - k)
                    out.append(SignedPartition(blocks))
        seen = set()
        uniq = []
        for sp in sorted(out, key=lambda s: s.blocks):
            if sp.blocks not in seen:
                seen.add(sp.blocks)
                uniq.append(sp)
        uniq.sort(key=lambda s: tuple((-w, -d) for w, d in s.blocks))
        return uniq


def _partitions(total, maxpart=None):
    if maxpart is None:
        maxpart = total
    if total == 0:
        yield []
        return
    for first in range(min(total, maxpart), 0, -1):
        for rest in _partitions(total - first, first):
            yield [first] + rest


class NilpotentInvariants:
    """The pair (r, m) plus the per-pair contributions that built it."""

    def __init__(self, r: int, m: int, pieces=None):
        self.r = int(r)
        self.m = int(m)
        self.pieces = pieces or {}

    def __eq__(self, other):
        return isinstance(other, NilpotentInvariants) and (self.r, self.m) == (other.r, other.m)

    def __repr__(self):
        return f"NilpotentInvariants(r={self.r}, m={self.m})"


def _pair_contribution(wi, di, wj, dj):
    """(r_ij, m_ij) for two distinct blocks, from the closed-form table."""
    pi, pj = wi // 2, wj // 2
    same = di * dj == 1
    if wi % 2 == 0 and wj % 2 == 0:
        if same:
            return 2 * min(pi, pj), 2 * pi * pj
        return 2 * min(pi, pj), 2 * pi * pj - 2 * min(pi, pj)
    if wi % 2 == 1 and wj % 2 == 1:
        if same:
            return 2 * min(pi, pj), 2 * pi * pj
        return 2 * min(pi, pj) + 2, 2 * pi * pj + 2 * max(pi, pj)
    # mixed parity: pe/po are the half-sizes of the even and odd block
    if wi % 2 == 0:
        we, pe, po, wo = wi, pi, pj, wj
    else:
        we, pe, po, wo = wj, pj, pi, wi
    if we < wo:
        return 2 * pe, 2 * pe * po
    if same:
        return 2 * po + 1, 2 * pe * po + 2 * (pe - po) - 1
    return 2 * po + 1, 2 * pe * po


def table_invariants(sp: SignedPartition) -> NilpotentInvariants:
    """(r, m) summed from the diagonal and pairwise closed forms."""
    blocks = sp.blocks
    r = m = 0
    pieces = {}
    for i, (w, _) in enumerate(blocks):
        p = w // 2
        pieces[(i, i)] = (p, p * p)
        r += p
        m += p * p
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            rij, mij = _pair_contribution(*blocks[i], *blocks[j])
            pieces[(i, j)] = (rij, mij)
            r += rij
            m += mij
    return NilpotentInvariants(r, m, pieces)


# ---------------------------------------------------------------------------
# Matrix oracle over Q
# ---------------------------------------------------------------------------

def _chain_data(sp: SignedPartition):
    """Basis bookkeeping: per chain vector its parity and grading weight.

    Returns (parity list, weight list, successor list) where successor[k] is
    the index of Y*e_k or None at the end of a chain.
    """
    parity, weight, succ = [], [], []
    idx = 0
    for w, d in sp.blocks:
        g = 0 if d == 1 else 1
        start = idx
        for k in range(w):
            parity.append((g + k) % 2)
            weight.append(w - 1 - 2 * k)
            succ.append(idx + 1 if k < w - 1 else None)
            idx += 1
    return parity, weight, succ


def matrix_oracle(sp: SignedPartition) -> NilpotentInvariants:
    """(r, m) by explicit linear algebra over Q.

    Builds the lowering nilpotent Y on the zigzag chains, solves [Y, Z] = 0
    for Z in the odd part of the grading, one ad(-d)-weight at a time (the
    commutant equations are weight-homogeneous), and reads off
    r = dim ker, m = (1/2) * sum of weights.
    """
    dim = 2 * sp.n
    parity, weight, succ = _chain_data(sp)
    pred = [None] * dim
    for k, s in enumerate(succ):
        if s is not None:
            pred[s] = k

    units = [(a, b) for a in range(dim) for b in range(dim) if parity[a] != parity[b]]
    by_weight = {}
    for (a, b) in units:
        by_weight.setdefault(weight[b] - weight[a], []).append((a, b))

    r = 0
    msum = Fraction(0)
    for om, cols in sorted(by_weight.items()):
        col_index = {ab: i for i, ab in enumerate(cols)}
        rows = {}
        # [Y, Z]_{a', b} picks up Z_{pred(a'), b} - Z_{a', succ(b)}
        for (a, b) in cols:
            ci = col_index[(a, b)]
            sa = succ[a]
            if sa is not None:
                rows.setdefault((sa, b), {})[ci] = rows.setdefault((sa, b), {}).get(ci, Fraction(0)) + 1
            pb = pred[b]
            if pb is not None:
                rows.setdefault((a, pb), {})[ci] = rows.setdefault((a, pb), {}).get(ci, Fraction(0)) - 1
        mat = [[row.get(ci, Fraction(0)) for ci in range(len(cols))] for row in rows.values()]
        if not mat:
            k = len(cols)
        else:
            k = len(cols) - matrices.rank(mat)
        r += k
        msum += Fraction(om) * k
    m = msum / 2
    assert m.denominator == 1
    return NilpotentInvariants(r, int(m))


def verify_inequalities(sp: SignedPartition):
    """Report on r >= n and r + m > n^2 + n/2 for a nonzero nilpotent datum."""
    if sp.is_zero():
        return {"skipped": True, "note": "zero nilpotent (all blocks trivial)"}
    inv = table_invariants(sp)
    n = sp.n
    bound = Fraction(n * n) + Fraction(n, 2)
    slack = Fraction(inv.r + inv.m) - bound
    return {
        "skipped": False,
        "n": n,
        "r": inv.r,
        "m": inv.m,
        "r_ge_n": inv.r >= n,
        "sum_gt_bound": Fraction(inv.r + inv.m) > bound,
        "slack": slack,
        "single_block": len(sp.blocks) == 1,
        "r_eq_n": inv.r == n,
    }


# ---------------------------------------------------------------------------
# Twisted-side oracle: Jordan types over the quadratic extension
# ---------------------------------------------------------------------------

def _jordan_nilpotent_data(partition):
    """Chain data for the nilpotent Jordan matrix J of a partition of n."""
    n = sum(partition)
    weight, succ = [], []
    idx = 0
    for w in partition:
        for k in range(w):
            weight.append(w - 1 - 2 * k)
            succ.append(idx + 1 if k < w - 1 else None)
            idx += 1
    return n, weight, succ


def _graded_solution_dims(n, weight, succ, anti: bool):
    """Kernel dimensions by weight of [J, B] = 0 (anti=False) or JB + BJ = 0 (anti=True)."""
    pred = [None] * n
    for k, s in enumerate(succ):
        if s is not None:
            pred[s] = k
    units = [(a, b) for a in range(n) for b in range(n)]
    by_weight = {}
    for (a, b) in units:
        by_weight.setdefault(weight[b] - weight[a], []).append((a, b))
    dims = {}
    for om, cols in sorted(by_weight.items()):
        col_index = {ab: i for i, ab in enumerate(cols)}
        rows = {}
        sgn = 1 if anti else -1
        # (JB +- BJ)_{a', b}: B_{pred(a'), b} +- B_{a', succ(b)}
        for (a, b) in cols:
            ci = col_index[(a, b)]
            sa = succ[a]
            if sa is not None:
                rows.setdefault((sa, b), {})
                rows[(sa, b)][ci] = rows[(sa, b)].get(ci, Fraction(0)) + 1
            pb = pred[b]
            if pb is not None:
                rows.setdefault((a, pb), {})
                rows[(a, pb)][ci] = rows[(a, pb)].get(ci, Fraction(0)) + sgn
        mat = [[row.get(ci, Fraction(0)) for ci in range(len(cols))] for row in rows.values()]
        k = len(cols) - (matrices.rank(mat) if mat else 0)
        if k:
            dims[om] = k
    return dims


def dprime_oracle(partition) -> NilpotentInvariants:
    """(r, m) for the twisted-side nilpotent with Jordan type the given partition.

    The centralizer condition A conj(B) = B conj(A) for A = J real splits over
    the basis 1, delta of E into a commutant and an anti-commutant equation;
    both are solved weight by weight.
    """
    n, weight, succ = _jordan_nilpotent_data(partition)
    r = 0
    msum = Fraction(0)
    for anti in (False, True):
        dims = _graded_solution_dims(n, weight, succ, anti)
        for om, k in dims.items():
            r += k
            msum += Fraction(om) * k
    m = msum / 2
    assert m.denominator == 1
    return NilpotentInvariants(r, int(m))


def dprime_identities(n: int):
    """Check the twisted-side identities for every Jordan type of rank n.

    For each partition: m = (4n^2 - 2r)/4, r + m = n^2 + r/2, r >= 2n, and
    m' = m < n^2 computed from the fixed-subalgebra centralizer (which obeys
    the same two graded systems).
    """
    report = []
    for part in _partitions(n):
        inv = dprime_oracle(part)
        r, m = inv.r, inv.m
        mprime = m  # h'-centralizer solves the same graded systems
        ok = (Fraction(4 * n * n - 2 * r, 4) == m
              and r + m == n * n + Fraction(r, 2)
              and r >= 2 * n
              and mprime < n * n)
        report.append({
            "partition": list(part),
            "r": r,
            "m": m,
            "m_from_r": Fraction(4 * n * n - 2 * r, 4),
            "sum_identity": r + m == n * n + Fraction(r, 2),
            "r_ge_2n": r >= 2 * n,
            "mprime_lt_n2": mprime < n * n,
            "pass": bool(ok),
        })
    return report
