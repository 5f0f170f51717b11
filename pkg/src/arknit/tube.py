"""Finite-length serial categories: tubes of finite rank and the
doubly infinite nilpotent line.

Objects are uniserial and determined by their top simple and length, so
the whole category is carried symbolically. Every symbolic statement is
realizable as a nilpotent representation (of the oriented cycle, or of a
finite stretch of the ascending line) for cross-checking.

The translate rotates tops by v(i) = i + 1, in the arrow direction; the
direction is a genuine convention choice and is pinned down by the
linear-algebra realizations, not by symmetry.
"""

from collections import namedtuple

from .fields import QQ
from . import quiver as qv
from . import replin as rl


INFINITE_RANK = "inf"


class TubeError(ValueError):
    pass


class TubeCategory:
    """Rank n tube (n simples, cyclic translate) or the rank-"inf" line."""

    def __init__(self, rank):
        if rank == INFINITE_RANK or rank == float("inf"):
            rank = INFINITE_RANK
        elif not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise TubeError("rank must be a positive integer or %r"
                            % INFINITE_RANK)
        self.rank = rank

    @property
    def finite(self):
        return self.rank != INFINITE_RANK

    def v(self, i):
        """Top rotation of the translate."""
        return (i + 1) % self.rank if self.finite else i + 1

    def normalize_top(self, i):
        if not isinstance(i, int) or isinstance(i, bool):
            raise TubeError("simple index must be an integer")
        return i % self.rank if self.finite else i

    def object(self, top, length):
        return TubeObject(self, top, length)

    def simple(self, i):
        return self.object(i, 1)

    def __eq__(self, other):
        return isinstance(other, TubeCategory) and self.rank == other.rank

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(("TubeCategory", self.rank))

    def __repr__(self):
        return "TubeCategory(rank=%r)" % (self.rank,)


class TubeObject:
    """T(top, m): the unique length-m uniserial with the given top.

    Composition layers from the top are S_top, S_v(top), ..., down to the
    socle S_{v^{m-1}(top)}.
    """

    def __init__(self, tube, top, length):
        if not isinstance(tube, TubeCategory):
            raise TubeError("tube objects need a TubeCategory")
        if not isinstance(length, int) or isinstance(length, bool) or length < 1:
            raise TubeError("length must be a positive integer")
        self.tube = tube
        self.top = tube.normalize_top(top)
        self.length = length

    def socle_index(self):
        t = self.top + self.length - 1
        return t % self.tube.rank if self.tube.finite else t

    def layer(self, k):
        """Index of the k-th composition factor from the top, 0-based."""
        if not 0 <= k < self.length:
            raise TubeError("layer index out of range")
        t = self.top + k
        return t % self.tube.rank if self.tube.finite else t

    def to_json(self):
        return {"top": self.top, "length": self.length,
                "rank": self.tube.rank}

    def __eq__(self, other):
        return (isinstance(other, TubeObject) and self.tube == other.tube
                and self.top == other.top and self.length == other.length)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.tube, self.top, self.length))

    def __repr__(self):
        return "T(%r, %r; rank=%r)" % (self.top, self.length, self.tube.rank)


def tube_object_from_json(doc):
    cat = TubeCategory(doc["rank"])
    return cat.object(doc["top"], doc["length"])


def tau_tube(T):
    """Translate: rotate the top one step, keep the length."""
    return T.tube.object(T.tube.v(T.top), T.length)


def tau_tube_inv(T):
    back = T.top - 1
    return T.tube.object(back, T.length)


AlmostSplitTube = namedtuple("AlmostSplitTube", ["sub", "middle", "quot"])


def ass_tube(T):
    """Symbolic almost split sequence ending at T.

    Middle is the length-(m+1) overmodule sharing T's top, plus the
    rotated length-(m-1) piece, which drops out at m = 1. The indexing is
    oracle-fixed: T(v(i),m) embeds in T(i,m+1) as the socle-anchored
    submodule, and T(v(i),m-1) is both the top quotient of T(v(i),m) and
    the socle submodule of T(i,m). Length additivity is asserted.
    """
    cat, i, m = T.tube, T.top, T.length
    sub = cat.object(cat.v(i), m)
    middle = [cat.object(i, m + 1)]
    if m > 1:
        middle.append(cat.object(cat.v(i), m - 1))
    assert sum(x.length for x in middle) == 2 * m
    return AlmostSplitTube(sub, tuple(middle), T)


def hom_dim_tube(A, B):
    """Maps A -> B factor as top-preserving quotient of A onto a
    socle-anchored sub of B; independent choices are counted by the
    lengths q where the two coincide."""
    if not isinstance(A, TubeObject) or not isinstance(B, TubeObject):
        raise TubeError("hom_dim_tube takes two TubeObjects")
    if A.tube != B.tube:
        raise TubeError("objects live in different tubes")
    cat = A.tube
    hi = min(A.length, B.length)
    want = B.top + B.length - A.top
    if not cat.finite:
        return 1 if 1 <= want <= hi else 0
    n = cat.rank
    return sum(1 for q in range(1, hi + 1) if (want - q) % n == 0)


def realize_tube_object(T, field=QQ, nilpotency=None, window=None):
    """T as a nilpotent representation.

    Finite rank realizes over the oriented cycle with a path-length cap
    (default just above the object length; raise it when the translate
    oracle needs headroom). The rank-one loop comes out as a nilpotent
    Jordan block. Infinite rank realizes on a finite stretch of the
    ascending line; the window must cover [top, top+length].
    """
    cat, i, m = T.tube, T.top, T.length
    if cat.finite:
        n = cat.rank
        cap = nilpotency if nilpotency is not None else m + 2
        if cap <= m:
            raise TubeError("nilpotency cap %d cannot carry length %d"
                            % (cap, m))
        tq = qv.truncate(cat_spec(cat), 0, nilpotency=cap)
        verts = {v: [] for v in tq.vertices}
        for t in range(m):
            verts[(i + t) % n].append(t)
        dims = {v: len(ts) for v, ts in verts.items() if ts}
        maps = {}
        for a in tq.arrows:
            rows, cols = dims.get(a.tgt, 0), dims.get(a.src, 0)
            if not rows or not cols:
                continue
            mat = [[field.zero] * cols for _ in range(rows)]
            for t in verts[a.src]:
                if t + 1 < m:
                    mat[verts[a.tgt].index(t + 1)][verts[a.src].index(t)] \
                        = field.one
            maps[a.label] = mat
        label = "T(%d,%d)" % (i, m)
        return rl.Representation(tq, field, dims, maps, label=label)
    lo, hi = window if window is not None else (i - 1, i + m + 1)
    if not (lo <= i and i + m <= hi):
        raise TubeError("window [%d, %d] does not cover [%d, %d]"
                        % (lo, hi, i, i + m))
    spec = qv.QuiverSpec.finite(list(range(lo, hi + 1)),
                                [(v, v + 1, "a%d" % v) for v in range(lo, hi)])
    tq = qv.truncate(spec, 0)
    dims = {v: 1 for v in range(i, i + m)}
    maps = {}
    for a in tq.arrows:
        if a.src in dims and a.tgt in dims:
            maps[a.label] = [[field.one]]
    return rl.Representation(tq, field, dims, maps,
                             label="T(%d,%d)" % (i, m))


def cat_spec(cat):
    """The cycle quiver descriptor behind a finite-rank tube."""
    if not cat.finite:
        raise TubeError("the infinite-rank tube has no cycle quiver")
    return qv.QuiverSpec.family_quiver("cycle", n=cat.rank)


def classify_finite_length(descriptor):
    """Taxonomy of a connected finite-length block from its simple count."""
    if not isinstance(descriptor, dict):
        raise TubeError("descriptor must be a dict with keys "
                        "'simples' and 'connected'")
    if not descriptor.get("connected", True):
        raise TubeError("disconnected category: classify each connected "
                        "summand separately")
    n = descriptor.get("simples")
    if n == INFINITE_RANK or n == float("inf"):
        return "A∞∞-nilpotent"
    if isinstance(n, int) and not isinstance(n, bool) and n >= 1:
        return "tube(%d)" % n
    raise TubeError("'simples' must be a positive integer or %r"
                    % INFINITE_RANK)
