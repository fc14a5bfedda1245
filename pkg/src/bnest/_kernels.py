"""Array kernels behind tree construction.

The only heavy step in the whole package is computing, for each left end i,
the furthest right end R[i] such that (i..j) is a common interval, and the
mirror image L[j].  Everything downstream (strong intervals, trees, scans) is
linear-time bookkeeping in plain Python.

The sweep walks the left end i from n-1 down to 0 and maintains, in a
segment tree over right ends j, the nonnegative score

    V[j] = sum over permutations of (max_pos(i..j) - min_pos(i..j)) - E*(j-i)

where E is the number of non-identity permutations.  V[j] == 0 exactly when
the label range (i..j) is consecutive in every permutation.  Each
permutation's max/min terms are maintained with the usual monotone stacks of
step-function segments; every pop turns into one range-add.  The query
"rightmost j with V[j] == 0" is a single root-to-leaf descent, which is valid
because V[i] == 0 keeps the global minimum at zero.

Numba compiles these loops when available; the pure-Python path runs the same
code and is plenty for small instances and for the oracle-checked test sizes.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap

_BIG = np.int64(1) << np.int64(60)


@njit(cache=True)
def _st_add(mn, ad, size, l, r, v):
    # Add v on [l..r]; mn[x] excludes pending adds of x's proper ancestors.
    if l > r:
        return
    lx = l + size
    rx = r + size + 1
    l0 = lx
    r0 = rx - 1
    while lx < rx:
        if lx & 1:
            mn[lx] += v
            ad[lx] += v
            lx += 1
        if rx & 1:
            rx -= 1
            mn[rx] += v
            ad[rx] += v
        lx >>= 1
        rx >>= 1
    x = l0 >> 1
    while x >= 1:
        a = mn[2 * x]
        bv = mn[2 * x + 1]
        mn[x] = (a if a < bv else bv) + ad[x]
        x >>= 1
    x = r0 >> 1
    while x >= 1:
        a = mn[2 * x]
        bv = mn[2 * x + 1]
        mn[x] = (a if a < bv else bv) + ad[x]
        x >>= 1


@njit(cache=True)
def _st_rightmost_zero(mn, ad, size):
    # Root min is zero by construction; prefer the right child on ties.
    x = 1
    acc = np.int64(0)
    while x < size:
        acc += ad[x]
        if mn[2 * x + 1] + acc == 0:
            x = 2 * x + 1
        else:
            x = 2 * x
    return x - size


@njit(cache=True)
def _max_right_ends(pos):
    E = pos.shape[0]
    n = pos.shape[1]
    out = np.empty(n, dtype=np.int64)
    size = 1
    while size < n:
        size *= 2
    mn = np.zeros(2 * size, dtype=np.int64)
    ad = np.zeros(2 * size, dtype=np.int64)
    for j in range(n, size):
        mn[size + j] = _BIG
    for x in range(size - 1, 0, -1):
        a = mn[2 * x]
        bv = mn[2 * x + 1]
        mn[x] = a if a < bv else bv

    # One max stack and one min stack per permutation, segments of the step
    # functions j -> max pos(i..j) and j -> min pos(i..j).  The top segment is
    # always the leftmost one, because updates enter from the left.
    xs_start = np.empty((E, n), dtype=np.int64)
    xs_end = np.empty((E, n), dtype=np.int64)
    xs_val = np.empty((E, n), dtype=np.int64)
    xs_top = np.zeros(E, dtype=np.int64)
    ns_start = np.empty((E, n), dtype=np.int64)
    ns_end = np.empty((E, n), dtype=np.int64)
    ns_val = np.empty((E, n), dtype=np.int64)
    ns_top = np.zeros(E, dtype=np.int64)

    for i in range(n - 1, -1, -1):
        for k in range(E):
            v = pos[k, i]
            t = xs_top[k]
            new_end = i
            while t > 0 and xs_val[k, t - 1] < v:
                _st_add(mn, ad, size, xs_start[k, t - 1], xs_end[k, t - 1], v - xs_val[k, t - 1])
                new_end = xs_end[k, t - 1]
                t -= 1
            xs_start[k, t] = i
            xs_end[k, t] = new_end
            xs_val[k, t] = v
            xs_top[k] = t + 1

            t = ns_top[k]
            new_end = i
            while t > 0 and ns_val[k, t - 1] > v:
                _st_add(mn, ad, size, ns_start[k, t - 1], ns_end[k, t - 1], ns_val[k, t - 1] - v)
                new_end = ns_end[k, t - 1]
                t -= 1
            ns_start[k, t] = i
            ns_end[k, t] = new_end
            ns_val[k, t] = v
            ns_top[k] = t + 1

        if i + 1 <= n - 1:
            _st_add(mn, ad, size, i + 1, n - 1, -E)
        out[i] = _st_rightmost_zero(mn, ad, size)
    return out


def canonical_generator(posmat: np.ndarray, n: int) -> tuple:
    """Return (R, L), 0-based: R[i] = max j and L[j] = min i with (i..j)
    a common interval of the identity and the permutations in posmat.

    posmat holds one row per non-identity permutation: row k maps a 0-based
    label to its 0-based position.  Rows equal to the identity are harmless
    but wasted work; callers filter them out, which can leave posmat empty,
    hence the explicit n.
    """
    if n <= 0:
        raise ValueError("empty permutation")
    E = posmat.shape[0]
    if E == 0:
        R = np.full(n, n - 1, dtype=np.int64)
        L = np.zeros(n, dtype=np.int64)
        return R, L
    if posmat.shape[1] != n:
        raise ValueError("position rows disagree with n")
    posmat = np.ascontiguousarray(posmat, dtype=np.int64)
    R = _max_right_ends(posmat)
    mirrored = np.ascontiguousarray(posmat[:, ::-1])
    RB = _max_right_ends(mirrored)
    L = (n - 1) - RB[::-1]
    return R, np.ascontiguousarray(L)


def position_matrix(perms, skip_identity: bool = True) -> np.ndarray:
    """Stack 0-based label->position rows for the given permutations."""
    rows = []
    for perm in perms:
        elements = perm.elements
        n = len(elements)
        row = np.empty(n, dtype=np.int64)
        identity = True
        for p, v in enumerate(elements):
            row[v - 1] = p
            if v != p + 1:
                identity = False
        if skip_identity and identity:
            continue
        rows.append(row)
    if not rows:
        return np.empty((0, 0), dtype=np.int64)
    return np.stack(rows)


def find_left(par, x):
    """Largest live index <= x in a kill-to-the-left DSU, -1 if none.

    par[x] == x marks x live; killing x sets par[x] = x - 1.
    """
    root = x
    while root >= 0 and par[root] != root:
        root = par[root]
    while x >= 0 and par[x] != x:
        par[x], x = root, par[x]
    return root


def find_right(par, x):
    """Smallest live index >= x in a kill-to-the-right DSU, n if none.

    The sentinel n must be present and live: par[n] == n.
    """
    root = x
    while par[root] != root:
        root = par[root]
    while par[x] != x:
        par[x], x = root, par[x]
    return root


def warmup():
    """Force jit compilation on a toy instance (no-op without numba)."""
    pos = np.array([[2, 0, 1]], dtype=np.int64)
    canonical_generator(pos, 3)
