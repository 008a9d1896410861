"""Root datum of GSpin_(2n+1) / GSpin_(2n), Weyl combinatorics, the Siegel
element w0 = w_l(Delta) w_l(theta), and the block decomposition of w0 along a
partition of n (Langlands' lemma, realized constructively).

The character lattice is Z e_0 + Z e_1 + ... + Z e_n; the e_0 coordinate is
kept explicitly because the coroots involve e_0^*, so Weyl matrices are
(n+1) x (n+1).  Roots live in the span of e_1..e_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import UsageError

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def _dot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b))


def _mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(_dot(row, v) for row in m)


def _mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def _identity(size: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


class GSpinRootDatum:
    def __init__(self, n: int, parity: str):
        if parity not in ("odd", "even"):
            raise UsageError("gspin-root: parity must be 'odd' or 'even'")
        if n < 1 or (parity == "even" and n < 2):
            raise UsageError("gspin-root: need n >= 1 (n >= 2 for even parity)")
        self.n, self.parity = n, parity
        self.dim = n + 1  # coordinates e_0, e_1, ..., e_n

        def e(i):
            v = [0] * self.dim
            v[i] = 1
            return tuple(v)

        def estar(i, coef=1):
            v = [0] * self.dim
            v[i] = coef
            return tuple(v)

        simples, cosimples = [], []
        for i in range(1, n):
            simples.append(tuple(a - b for a, b in zip(e(i), e(i + 1))))
            cosimples.append(tuple(a - b for a, b in zip(estar(i), estar(i + 1))))
        if parity == "odd":
            simples.append(e(n))
            cosimples.append(tuple(2 * a - b for a, b in zip(estar(n), estar(0))))
        else:
            simples.append(tuple(a + b for a, b in zip(e(n - 1), e(n))))
            cosimples.append(
                tuple(a + b - c for a, b, c in zip(estar(n - 1), estar(n), estar(0)))
            )
        self.simple_roots: tuple[Vec, ...] = tuple(simples)
        self.simple_coroots: tuple[Vec, ...] = tuple(cosimples)
        for a, av in zip(simples, cosimples):
            assert _dot(a, av) == 2
        self._generate_roots()

    # -- root system --------------------------------------------------------

    def _generate_roots(self) -> None:
        pairs = {r: c for r, c in zip(self.simple_roots, self.simple_coroots)}
        frontier = list(pairs)
        while frontier:
            new = []
            for beta in frontier:
                cobeta = pairs[beta]
                for a, av in zip(self.simple_roots, self.simple_coroots):
                    r = tuple(x - _dot(beta, av) * y for x, y in zip(beta, a))
                    c = tuple(x - _dot(a, cobeta) * y for x, y in zip(cobeta, av))
                    if r not in pairs:
                        pairs[r] = c
                        new.append(r)
            frontier = new
        self.coroot: dict[Vec, Vec] = pairs
        self.roots: tuple[Vec, ...] = tuple(sorted(pairs))
        self.positive_roots: tuple[Vec, ...] = tuple(
            r for r in self.roots if self.is_positive(r)
        )
        assert 2 * len(self.positive_roots) == len(self.roots)

    @staticmethod
    def is_positive(root: Vec) -> bool:
        for x in root[1:]:
            if x:
                return x > 0
        return False

    def cartan_matrix(self) -> list[list[int]]:
        """Entries <alpha_i, alpha_j^vee>."""
        return [
            [_dot(a, av) for av in self.simple_coroots] for a in self.simple_roots
        ]

    @property
    def theta(self) -> tuple[Vec, ...]:
        """Simple roots of the Siegel Levi GL_n x GL_1 (drop alpha_n)."""
        return self.simple_roots[:-1]

    def adjoint_data(self) -> tuple[int, int]:
        """(dim of Sym^2/wedge^2, Iwahori measure exponent) = n(n+-1)/2 twice."""
        n = self.n
        d = n * (n + 1) // 2 if self.parity == "odd" else n * (n - 1) // 2
        return d, d

    # -- Weyl elements -------------------------------------------------------

    def reflection(self, root: Vec) -> Mat:
        cr = self.coroot[root]
        return tuple(
            tuple(
                (1 if r == c else 0) - root[r] * cr[c] for c in range(self.dim)
            )
            for r in range(self.dim)
        )

    def simple_reflection(self, i: int) -> Mat:
        """Reflection in alpha_i, 1-indexed."""
        return self.reflection(self.simple_roots[i - 1])

    def identity(self) -> Mat:
        return _identity(self.dim)

    def from_word(self, word) -> Mat:
        m = self.identity()
        for i in word:
            m = _mat_mul(m, self.simple_reflection(i))
        return m

    def length(self, m: Mat) -> int:
        return sum(
            1 for beta in self.positive_roots if not self.is_positive(_mat_vec(m, beta))
        )

    def reduced_word(self, m: Mat) -> tuple[int, ...]:
        """Deterministic leftmost-descent reduced word for m."""
        word = []
        inv = _matrix_inverse(m)
        cur, cur_inv = m, inv
        guard = len(self.positive_roots) + 1
        while cur != self.identity():
            for i in range(1, self.n + 1):
                if not self.is_positive(_mat_vec(cur_inv, self.simple_roots[i - 1])):
                    word.append(i)
                    s = self.simple_reflection(i)
                    cur = _mat_mul(s, cur)
                    cur_inv = _mat_mul(cur_inv, s)
                    break
            else:
                raise AssertionError("gspin-root: no descent found for non-identity")
            guard -= 1
            if guard < 0:
                raise AssertionError("gspin-root: descent loop stuck")
        return tuple(word)

    def element(self, m: Mat) -> "WeylElt":
        word = self.reduced_word(m)
        assert self.from_word(word) == m
        return WeylElt(m, word)

    def longest(self, simples) -> Mat:
        """Longest element of the reflection subgroup generated by `simples`
        (each a root of this datum), w.r.t. ambient positivity."""
        w = self.identity()
        progress = True
        while progress:
            progress = False
            for beta in simples:
                if self.is_positive(_mat_vec(w, beta)):
                    w = _mat_mul(w, self.reflection(beta))
                    progress = True
                    break
        return w

    def siegel_w0(self) -> "WeylElt":
        wl = self.longest(self.simple_roots)
        wlt = self.longest(self.theta)
        return self.element(_mat_mul(wl, wlt))

    def w0_stabilizes_theta(self) -> bool:
        w0 = self.siegel_w0().matrix
        images = {_mat_vec(w0, a) for a in self.theta}
        return images == set(self.theta)

    def w0_theta_image_in_delta(self) -> bool:
        w0 = self.siegel_w0().matrix
        return all(_mat_vec(w0, a) in self.simple_roots for a in self.theta)

    # -- segment sub-systems (for the block decomposition) -----------------------

    def _segment_gl_simples(self, lo: int, hi: int) -> list[Vec]:
        out = []
        for i in range(lo, hi):
            v = [0] * self.dim
            v[i], v[i + 1] = 1, -1
            out.append(tuple(v))
        return out

    def _segment_siegel(self, lo: int, hi: int) -> Mat:
        """Siegel element of the GSpin sub-datum on coordinates lo..hi."""
        gl = self._segment_gl_simples(lo, hi)
        tail: list[Vec] = []
        if self.parity == "odd":
            v = [0] * self.dim
            v[hi] = 1
            tail = [tuple(v)]
        elif hi > lo:
            v = [0] * self.dim
            v[hi - 1], v[hi] = 1, 1
            tail = [tuple(v)]
        simples = gl + tail
        if not simples:
            return self.identity()
        return _mat_mul(self.longest(simples), self.longest(gl))

    def _segment_swap(self, lo: int, mid: int, hi: int, flip: bool) -> Mat | None:
        """Weyl element moving segment [mid..hi] before [lo..mid-1], with an
        optional sign flip on both segments; None if not in the Weyl group."""
        size_b = hi - mid + 1
        perm = {}
        for i in range(mid, hi + 1):
            perm[i] = lo + (i - mid)
        for i in range(lo, mid):
            perm[i] = i + size_b
        sign = -1 if flip else 1
        block = [[0] * self.n for _ in range(self.n)]
        for i in range(1, self.n + 1):
            j = perm.get(i, i)
            block[j - 1][i - 1] = sign if i in perm else 1
        return self.realize_signed_perm(tuple(tuple(r) for r in block))

    def realize_signed_perm(self, block: Mat) -> Mat | None:
        """Full Weyl matrix (including the e_0 shear) whose action on
        e_1..e_n is the given signed permutation; None if outside W."""

        def bvec(b, v):
            return tuple(sum(b[r][c] * v[c + 1] for c in range(self.n)) for r in range(self.n))

        def bpos(v):
            for x in v:
                if x:
                    return x > 0
            return False

        ident = tuple(tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n))
        cur = block
        cur_inv = tuple(zip(*block))  # transpose
        word = []
        guard = len(self.positive_roots) + 1
        while cur != ident:
            for i in range(1, self.n + 1):
                if not bpos(bvec(cur_inv, self.simple_roots[i - 1])):
                    word.append(i)
                    s_block = tuple(
                        tuple(row[1:]) for row in self.simple_reflection(i)[1:]
                    )
                    cur = tuple(
                        tuple(sum(s_block[r][k] * cur[k][c] for k in range(self.n))
                              for c in range(self.n))
                        for r in range(self.n)
                    )
                    cur_inv = tuple(
                        tuple(sum(cur_inv[r][k] * s_block[k][c] for k in range(self.n))
                              for c in range(self.n))
                        for r in range(self.n)
                    )
                    break
            else:
                return None  # no descent: not a Weyl element
            guard -= 1
            if guard < 0:
                return None
        m = self.from_word(word)
        if tuple(tuple(row[1:]) for row in m[1:]) != block:
            return None
        return m


def _matrix_inverse(m: Mat) -> Mat:
    # Weyl matrices have block form [[1, 0], [v, S]] with S a signed
    # permutation, so the inverse is [[1, 0], [-S^T v, S^T]].
    size = len(m)
    s_inv = [[0] * size for _ in range(size)]
    s_inv[0][0] = 1
    for c in range(1, size):
        for r in range(1, size):
            if m[r][c]:
                s_inv[c][r] = m[r][c]
    for c in range(1, size):
        s_inv[c][0] = -sum(s_inv[c][r] * m[r][0] for r in range(1, size))
    inv = tuple(tuple(row) for row in s_inv)
    assert _mat_mul(inv, m) == _identity(size)
    return inv


@dataclass(frozen=True)
class WeylElt:
    matrix: Mat
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class BlockFactor:
    kind: str  # "block" or "pair"
    index: tuple  # (i,) or (i, j)
    element: WeylElt


@dataclass(frozen=True)
class BlockDecomposition:
    datum: GSpinRootDatum
    partition: tuple[int, ...]
    factors: tuple[BlockFactor, ...]  # paper order; rightmost acts first

    def product_matrix(self) -> Mat:
        m = self.datum.identity()
        for f in self.factors:
            m = _mat_mul(m, f.element.matrix)
        return m

    def total_length(self) -> int:
        return sum(f.element.length for f in self.factors)


def build_root_datum(n: int, parity: str) -> GSpinRootDatum:
    return _datum_cached(n, parity)


@lru_cache(maxsize=None)
def _datum_cached(n: int, parity: str) -> GSpinRootDatum:
    return GSpinRootDatum(n, parity)


def langlands_decomposition(datum: GSpinRootDatum, partition) -> BlockDecomposition:
    """Decompose w0 along a partition of n into one factor per block and one
    per pair of blocks, with additive lengths.

    This runs the algorithmic proof of Langlands' lemma: with theta the flag
    parabolic of the partition inside the Siegel Levi, repeatedly choose a
    simple root alpha outside the current theta with w(alpha) < 0, split off
    the relative longest element w_j = w_l(theta + alpha) w_l(theta), and
    replace (w, theta) by (w w_j^(-1), w_j(theta)).  Each step is labeled a
    block factor (the added root closes up a single block against the tail
    node) or a pair factor (it joins two distinct blocks); even-parity rank-1
    blocks contribute identity factors, which are appended explicitly.
    """
    partition = tuple(partition)
    n, d = datum.n, len(partition)
    if any(k < 1 for k in partition) or sum(partition) != n:
        raise UsageError(f"gspin-root: {partition} is not a partition of {n}")
    w0 = datum.siegel_w0()

    breaks = set()
    acc = 0
    block_of_coord = {}
    for i, ni in enumerate(partition, start=1):
        for c in range(acc + 1, acc + ni + 1):
            block_of_coord[c] = i
        acc += ni
        if i < d:
            breaks.add(acc)

    theta = [
        datum.simple_roots[k - 1]
        for k in range(1, n)
        if k not in breaks
    ]
    wt = w0.matrix
    wt_len = w0.length
    raw: list[tuple[str, tuple, Mat, int]] = []  # application order

    while wt != datum.identity():
        for k in range(1, n + 1):
            alpha = datum.simple_roots[k - 1]
            if alpha in theta:
                continue
            if not datum.is_positive(_mat_vec(wt, alpha)):
                break
        else:
            raise AssertionError("gspin-root: stuck chain; no negative simple root")
        omega = theta + [alpha]
        wj = _mat_mul(datum.longest(omega), datum.longest(theta))
        lj = datum.length(wj)
        # classify by which blocks the step moves
        moved = set()
        for c in range(1, n + 1):
            e_c = tuple(1 if t == c else 0 for t in range(datum.dim))
            if _mat_vec(wj, e_c) != e_c:
                moved.add(block_of_coord[c])
        if len(moved) == 1:
            label = ("block", (moved.pop(),))
        elif len(moved) == 2:
            hi, lo = max(moved), min(moved)
            label = ("pair", (hi, lo))
        else:
            raise AssertionError(f"gspin-root: step touches {len(moved)} blocks")
        raw.append((label[0], label[1], wj, lj))
        # advance the chain
        wt = _mat_mul(wt, _matrix_inverse(wj))
        new_len = datum.length(wt)
        assert new_len == wt_len - lj, "gspin-root: length not additive along chain"
        wt_len = new_len
        theta = [_mat_vec(wj, beta) for beta in theta]
        assert all(t in datum.simple_roots for t in theta)
        perm = {}
        for c in range(1, n + 1):
            img = _mat_vec(wj, tuple(1 if t == c else 0 for t in range(datum.dim)))
            tgt = next(t for t in range(1, n + 1) if img[t] != 0)
            perm[c] = tgt
        block_of_coord = {perm[c]: b for c, b in block_of_coord.items()}

    # validate counts and nominal lengths
    seen: dict[tuple, int] = {}
    for kind, idx, _m, lj in raw:
        key = (kind, idx)
        assert key not in seen, f"gspin-root: repeated factor {key}"
        seen[key] = lj
    for i, ni in enumerate(partition, start=1):
        nominal = ni * (ni + 1) // 2 if datum.parity == "odd" else ni * (ni - 1) // 2
        have = seen.get(("block", (i,)), None)
        if have is None:
            assert nominal == 0, f"gspin-root: missing block factor {i}"
            raw.append(("block", (i,), datum.identity(), 0))
        else:
            assert have == nominal, f"gspin-root: block {i} length {have} != {nominal}"
        for j in range(1, i):
            nominal_p = ni * partition[j - 1]
            assert seen.get(("pair", (i, j))) == nominal_p, (
                f"gspin-root: pair {(i, j)} length {seen.get(('pair', (i, j)))} "
                f"!= {nominal_p}"
            )

    # matrix product with rightmost factor applied first == chain order
    ordered = [
        BlockFactor(kind, idx, datum.element(m)) for kind, idx, m, _l in reversed(raw)
    ]
    deco = BlockDecomposition(datum, partition, tuple(ordered))
    assert deco.product_matrix() == w0.matrix
    assert deco.total_length() == w0.length
    return deco
