"""Representations of truncated quivers over an exact field.

This module is the brute-force oracle the combinatorial layers are checked
against: Hom spaces as kernels of the intertwiner system, Ext^1 as its
cokernel, radicals and socles, projective/injective/simple constructions
with explicit path bases, the interval and fork-pattern family objects,
and Krull-Schmidt decomposition with invertibility witnesses.

No floating point anywhere; scalars are Fractions or mod-p ints.
"""

from __future__ import annotations

import random
import re

from . import linalg as la
from .fields import QQ
from .quiver import (DEFAULT_LEVEL_BUDGET, _count_into, concat,
                     enumerate_paths, truncate)


class RepError(ValueError):
    pass


class Representation:
    """dims: vertex -> dimension; maps: arrow label -> matrix.

    Arrow matrices act on column vectors and have shape
    (dims[target] x dims[source]).
    """

    def __init__(self, quiver, field, dims, maps, label=None, path_basis=None):
        self.quiver = quiver
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        self.maps = maps
        self.label = label
        self.path_basis = path_basis
        self.validate()

    def at(self, v):
        return self.dims.get(v, 0)

    def map_for(self, arrow):
        key = arrow if isinstance(arrow, str) else arrow.label
        return self.maps[key]

    def dim_vector(self):
        return {v: d for v, d in self.dims.items() if d}

    def total_dim(self):
        return sum(self.dims.values())

    def is_zero(self):
        return self.total_dim() == 0

    def validate(self):
        for v, d in self.dims.items():
            if d < 0:
                raise RepError("negative dimension at %r" % (v,))
            if not self.quiver.has_vertex(v):
                raise RepError("dimension at unknown vertex %r" % (v,))
        for a in self.quiver.arrows:
            m = self.maps.get(a.label)
            if m is None:
                if self.at(a.src) and self.at(a.tgt):
                    raise RepError("missing matrix for arrow %r" % (a.label,))
                self.maps[a.label] = la.zeros(self.at(a.tgt), self.at(a.src),
                                              self.field)
                continue
            r, c = la.shape(m, self.at(a.src))
            if (r, c) != (self.at(a.tgt), self.at(a.src)):
                raise RepError(
                    "arrow %r matrix is %dx%d, expected %dx%d"
                    % (a.label, r, c, self.at(a.tgt), self.at(a.src)))
        if self.quiver.nilpotency is not None and not self.quiver.is_acyclic():
            self._check_nilpotent()

    def _check_nilpotent(self):
        # cyclic windows carry a cap; the summed arrow action must vanish
        # by that power or the object is not in the nilpotent category
        n = self.total_dim()
        if n == 0:
            return
        F = self.field
        off = vertex_offsets(self)
        big = la.zeros(n, n, F)
        for a in self.quiver.arrows:
            m = self.maps[a.label]
            ro, co = off[a.tgt], off[a.src]
            for i in range(self.at(a.tgt)):
                for j in range(self.at(a.src)):
                    big[ro + i][co + j] = F.add(big[ro + i][co + j], m[i][j])
        power = la.identity(n, F)
        for _ in range(self.quiver.nilpotency):
            power = la.mat_mul(power, big, F)
        if not la.is_zero_mat(power, F):
            raise RepError("arrow action is not nilpotent at the window cap %d"
                           % self.quiver.nilpotency)

    def __repr__(self):
        name = self.label or "Representation"
        return "%s(dims=%r)" % (name, self.dim_vector())

    def to_json(self):
        q = self.quiver.spec.to_json()
        q["level"] = self.quiver.level
        if self.quiver.nilpotency is not None:
            q["nilpotency"] = self.quiver.nilpotency
        F = self.field
        return {
            "quiver": q,
            "dims": {str(v): d for v, d in self.dims.items() if d},
            "maps": {lab: [[F.fmt(x) for x in row] for row in m]
                     for lab, m in self.maps.items()
                     if m and m[0]},
        }


def rep_from_json(doc, field):
    from .quiver import QuiverSpec
    qdoc = dict(doc["quiver"])
    level = qdoc.pop("level", 0)
    nilp = qdoc.pop("nilpotency", None)
    spec = QuiverSpec.from_json(qdoc)
    tq = truncate(spec, level, nilpotency=nilp)
    dims = {_parse_vertex(k, tq): v for k, v in doc["dims"].items()}
    maps = {lab: [[field.parse(x) for x in row] for row in m]
            for lab, m in doc["maps"].items()}
    return Representation(tq, field, dims, maps)


def _parse_vertex(s, tq):
    if tq.has_vertex(s):
        return s
    try:
        v = int(s)
    except ValueError:
        raise RepError("unknown vertex %r" % (s,))
    if not tq.has_vertex(v):
        raise RepError("unknown vertex %r" % (s,))
    return v


class Morphism:
    """Per-vertex matrices intertwining the two arrow actions."""

    def __init__(self, source, target, blocks, check=True):
        self.source = source
        self.target = target
        self.blocks = {v: blocks.get(v, la.zeros(target.at(v), source.at(v),
                                                 source.field))
                       for v in source.quiver.vertices}
        if check:
            self.check()

    def block(self, v):
        return self.blocks[v]

    def check(self):
        F = self.source.field
        for a in self.source.quiver.arrows:
            lhs = la.mat_mul(self.blocks[a.tgt], self.source.maps[a.label], F,
                             inner=self.source.at(a.tgt),
                             bcols=self.source.at(a.src))
            rhs = la.mat_mul(self.target.maps[a.label], self.blocks[a.src], F,
                             inner=self.target.at(a.src),
                             bcols=self.source.at(a.src))
            if lhs != rhs:
                raise RepError("intertwining fails at arrow %r" % (a.label,))

    def compose(self, other):
        """self after other."""
        if other.target is not self.source and \
                other.target.dims != self.source.dims:
            raise RepError("composition mismatch")
        F = self.source.field
        blocks = {v: la.mat_mul(self.blocks[v], other.blocks[v], F,
                                inner=other.target.at(v),
                                bcols=other.source.at(v))
                  for v in self.source.quiver.vertices}
        return Morphism(other.source, self.target, blocks, check=False)

    def add(self, other):
        F = self.source.field
        blocks = {v: la.mat_add(self.blocks[v], other.blocks[v], F)
                  for v in self.blocks}
        return Morphism(self.source, self.target, blocks, check=False)

    def scale(self, c):
        F = self.source.field
        blocks = {v: la.mat_scale(c, self.blocks[v], F) for v in self.blocks}
        return Morphism(self.source, self.target, blocks, check=False)

    def is_iso(self):
        for v in self.source.quiver.vertices:
            if self.source.at(v) != self.target.at(v):
                return False
            if la.inverse(self.blocks[v], self.source.field) is None:
                return False
        return True

    def inverse(self):
        F = self.source.field
        blocks = {}
        for v in self.source.quiver.vertices:
            inv = la.inverse(self.blocks[v], F)
            if inv is None:
                raise RepError("morphism is not invertible at %r" % (v,))
            blocks[v] = inv
        return Morphism(self.target, self.source, blocks, check=False)

    def is_zero(self):
        return all(la.is_zero_mat(m, self.source.field)
                   for m in self.blocks.values())

    def matrices_json(self):
        F = self.source.field
        return {str(v): [[F.fmt(x) for x in row] for row in m]
                for v, m in self.blocks.items()
                if m and m[0]}


def identity_morphism(X):
    return Morphism(X, X, {v: la.identity(X.at(v), X.field)
                           for v in X.quiver.vertices}, check=False)


def zero_morphism(X, Y):
    return Morphism(X, Y, {}, check=False)


def vertex_offsets(X):
    off = {}
    t = 0
    for v in X.quiver.vertices:
        off[v] = t
        t += X.at(v)
    return off


def total_matrix(f):
    """Block-diagonal matrix of a morphism on the total spaces."""
    F = f.source.field
    soff = vertex_offsets(f.source)
    toff = vertex_offsets(f.target)
    big = la.zeros(f.target.total_dim(), f.source.total_dim(), F)
    for v in f.source.quiver.vertices:
        m = f.blocks[v]
        for i in range(f.target.at(v)):
            for j in range(f.source.at(v)):
                big[toff[v] + i][soff[v] + j] = m[i][j]
    return big


# -- constructions -----------------------------------------------------------


def zero_rep(tq, F):
    return Representation(tq, F, {}, {}, label="0")


def simple_rep(tq, F, x):
    if not tq.has_vertex(x):
        raise RepError("unknown vertex %r" % (x,))
    return Representation(tq, F, {x: 1}, {}, label="S_%s" % (x,))


def projective_rep(tq, F, x):
    """P_x with basis at y the paths x to y; arrows append on the right."""
    _require_full_support(tq, x, into=False)
    return _path_rep(tq, F, x, into=False)


def injective_rep(tq, F, x):
    """I_x with basis at y the paths y to x; arrows strip their first arrow."""
    _require_full_support(tq, x, into=True)
    return _path_rep(tq, F, x, into=True)


def _path_rep(tq, F, x, into):
    basis = {}
    index = {}
    for y in tq.vertices:
        paths = enumerate_paths(tq, y, x) if into else enumerate_paths(tq, x, y)
        basis[y] = paths
        index[y] = {p: i for i, p in enumerate(paths)}
    dims = {y: len(basis[y]) for y in tq.vertices}
    cap = tq.nilpotency
    maps = {}
    for a in tq.arrows:
        m = la.zeros(dims[a.tgt], dims[a.src], F)
        for j, p in enumerate(basis[a.src]):
            if into:
                # strip the leading arrow when it matches a
                if p.length and p.arrows[0] == a:
                    q = _tail(p)
                    m[index[a.tgt][q]][j] = F.one
            else:
                if cap is not None and p.length + 1 >= cap:
                    continue
                q = concat(p, _arrow_path(a))
                m[index[a.tgt][q]][j] = F.one
        maps[a.label] = m
    kind = "I" if into else "P"
    return Representation(tq, F, dims, maps, label="%s_%s" % (kind, x),
                          path_basis=basis)


def _arrow_path(a):
    from .quiver import Path
    return Path((a,), a.src, a.tgt)


def _tail(p):
    from .quiver import Path
    return Path(p.arrows[1:], p.arrows[0].tgt, p.target)


def _require_full_support(tq, x, into):
    """Window must already contain every path through x in the given sense.

    Growing the window layer by layer, a single stationary step certifies
    stability, because any later path would pass through the first new
    layer. Family windows only; finite and capped windows are always full.
    """
    if tq.spec.kind == "finite" or tq.nilpotency is not None:
        return
    if not tq.has_vertex(x):
        raise RepError("unknown vertex %r" % (x,))
    here = _support_count(tq, x, into)
    for lvl in range(tq.level + 1, tq.level + DEFAULT_LEVEL_BUDGET + 1):
        bigger = truncate(tq.spec, lvl)
        nxt = _support_count(bigger, x, into)
        if nxt == here:
            if lvl == tq.level + 1:
                return
            raise RepError(
                "truncation too small: %s support of %r needs level >= %d"
                % ("injective" if into else "projective", x, lvl - 1))
        here = nxt
    raise RepError("%s support of %r looks infinite"
                   % ("injective" if into else "projective", x))


def _support_count(window, x, into):
    w = window if into else window.opposite()
    if not w.is_acyclic():
        raise RepError("uncapped cyclic window has no finite path spaces")
    return _count_into(w, x)


def direct_sum(reps):
    """Sum representation plus inclusion and projection witnesses."""
    if not reps:
        raise RepError("empty direct sum needs an ambient quiver")
    tq, F = reps[0].quiver, reps[0].field
    for r in reps[1:]:
        _same_quiver(reps[0], r)
    dims = {v: sum(r.at(v) for r in reps) for v in tq.vertices}
    maps = {}
    for a in tq.arrows:
        m = la.zeros(dims[a.tgt], dims[a.src], F)
        ro = co = 0
        for r in reps:
            blk = r.maps[a.label]
            for i in range(r.at(a.tgt)):
                for j in range(r.at(a.src)):
                    m[ro + i][co + j] = blk[i][j]
            ro += r.at(a.tgt)
            co += r.at(a.src)
        maps[a.label] = m
    total = Representation(tq, F, dims, maps,
                           label="(+)".join(r.label or "?" for r in reps))
    incs, projs = [], []
    off = {v: 0 for v in tq.vertices}
    for r in reps:
        iblocks, pblocks = {}, {}
        for v in tq.vertices:
            im = la.zeros(dims[v], r.at(v), F)
            pm = la.zeros(r.at(v), dims[v], F)
            for i in range(r.at(v)):
                im[off[v] + i][i] = F.one
                pm[i][off[v] + i] = F.one
            iblocks[v] = im
            pblocks[v] = pm
        incs.append(Morphism(r, total, iblocks, check=False))
        projs.append(Morphism(total, r, pblocks, check=False))
        for v in tq.vertices:
            off[v] += r.at(v)
    return total, incs, projs


def radical_of_projective(tq, F, x):
    """rad P_x as the sum over arrows x->y of P_y, with its inclusion.

    The arrow-wise direct sum description needs an uncapped acyclic window;
    on capped cyclic windows the radical is not a sum of projectives.
    """
    if tq.nilpotency is not None and not tq.is_acyclic():
        raise RepError("radical-of-projective needs an acyclic window")
    P = projective_rep(tq, F, x)
    outs = tq.out_arrows(x)
    if not outs:
        Z = zero_rep(tq, F)
        return Z, Morphism(Z, P, {}, check=False)
    summands = [projective_rep(tq, F, a.tgt) for a in outs]
    R, incs, _ = direct_sum(summands)
    cap = tq.nilpotency
    blocks = {v: la.zeros(P.at(v), R.at(v), F) for v in tq.vertices}
    col = {v: 0 for v in tq.vertices}
    for a, S in zip(outs, summands):
        pre = _arrow_path(a)
        for v in tq.vertices:
            for j, p in enumerate(S.path_basis[v]):
                if cap is not None and p.length + 1 >= cap:
                    continue
                q = concat(pre, p)
                i = P.path_basis[v].index(q)
                blocks[v][i][col[v] + j] = F.one
            col[v] += S.at(v)
    return R, Morphism(R, P, blocks)


# -- hom and ext -------------------------------------------------------------


def _same_quiver(X, Y):
    if X.quiver is Y.quiver:
        pass
    elif (X.quiver.vertices != Y.quiver.vertices
          or X.quiver.arrows != Y.quiver.arrows):
        raise RepError("representations live on different quivers")
    if X.field != Y.field:
        raise RepError("representations live over different fields")


def intertwiner_matrix(X, Y):
    """The one matrix behind both Hom and Ext^1.

    Maps h in (+)_v Hom(X_v, Y_v) to (h_t X_a - Y_a h_s)_a. Hom(X, Y) is the
    kernel; Ext^1(X, Y) is the cokernel. Row-major vectorization throughout.
    Returns (matrix, row_layout, col_layout) where row_layout lists
    (arrow, row_offset) and col_layout lists (vertex, col_offset).
    """
    _same_quiver(X, Y)
    F = X.field
    col_off = []
    c = 0
    for v in X.quiver.vertices:
        col_off.append((v, c))
        c += Y.at(v) * X.at(v)
    coff = dict(col_off)
    row_off = []
    r = 0
    for a in X.quiver.arrows:
        row_off.append((a, r))
        r += Y.at(a.tgt) * X.at(a.src)
    M = la.zeros(r, c, F)
    for a, ro in row_off:
        Xa, Ya = X.maps[a.label], Y.maps[a.label]
        nt, ns = X.at(a.tgt), Y.at(a.src)
        for i in range(Y.at(a.tgt)):
            for j in range(X.at(a.src)):
                row = M[ro + i * X.at(a.src) + j]
                for k in range(nt):
                    row[coff[a.tgt] + i * nt + k] = Xa[k][j]
                for k in range(ns):
                    cc = coff[a.src] + k * X.at(a.src) + j
                    row[cc] = F.sub(row[cc], Ya[i][k])
    return M, row_off, col_off


def hom_basis(X, Y):
    """Deterministic basis of Hom(X, Y) from the echelonized kernel."""
    M, _rows, cols = intertwiner_matrix(X, Y)
    ncols = cols[-1][1] + Y.at(cols[-1][0]) * X.at(cols[-1][0]) if cols else 0
    if ncols == 0:
        return []
    vecs = la.kernel_basis(M, X.field, ncols=ncols)
    return [ _morphism_from_vector(X, Y, v, cols) for v in vecs ]


def _morphism_from_vector(X, Y, vec, col_layout):
    blocks = {}
    for v, off in col_layout:
        m = la.zeros(Y.at(v), X.at(v), X.field)
        for i in range(Y.at(v)):
            for j in range(X.at(v)):
                m[i][j] = vec[off + i * X.at(v) + j]
        blocks[v] = m
    return Morphism(X, Y, blocks, check=False)


def hom_dim(X, Y):
    return len(hom_basis(X, Y))


def ext1_dim(X, Y):
    """dim coker of the intertwiner matrix; exact, no Euler shortcut."""
    M, rows, _cols = intertwiner_matrix(X, Y)
    nrows = len(M)
    if nrows == 0:
        return 0
    return nrows - la.rank(M, X.field)


def euler_form(X, Y):
    """Sum_v dX(v) dY(v) - Sum_{a: x->y} dX(x) dY(y)."""
    _same_quiver(X, Y)
    tot = sum(X.at(v) * Y.at(v) for v in X.quiver.vertices)
    for a in X.quiver.arrows:
        tot -= X.at(a.src) * Y.at(a.tgt)
    return tot


class ExtData:
    """Ext^1(X, Y) with explicit cocycle coordinates, one block per arrow.

    A cocycle z assembles the middle term E of an extension
    0 -> Y -> E -> X -> 0 via E_a = [[Y_a, Z_a], [0, X_a]]. Coboundaries are
    the column space of the intertwiner matrix; reduce() maps any cocycle to
    its canonical representative supported on non-pivot coordinates.
    """

    def __init__(self, X, Y):
        self.X = X
        self.Y = Y
        self.F = X.field
        M, self.row_layout, _ = intertwiner_matrix(X, Y)
        self.nrows = len(M)
        self.row_off = {a.label: off for a, off in self.row_layout}
        # row space of the transpose = coboundary space, echelonized
        if self.nrows and M and M[0]:
            R, piv = la.rref(la.transpose(M), self.F, ncols=self.nrows)
            self.red_rows = R[:len(piv)]
            self.red_pivots = piv
        else:
            self.red_rows = []
            self.red_pivots = []
        self.dim = self.nrows - len(self.red_pivots)

    def reduce(self, z):
        F = self.F
        z = list(z)
        for row, p in zip(self.red_rows, self.red_pivots):
            c = z[p]
            if not F.is_zero(c):
                z = [F.sub(x, F.mul(c, y)) for x, y in zip(z, row)]
        return z

    def is_coboundary(self, z):
        return all(self.F.is_zero(x) for x in self.reduce(z))

    def basis_vectors(self):
        pivset = set(self.red_pivots)
        return [la._unit(self.nrows, r, self.F)
                for r in range(self.nrows) if r not in pivset]

    def blocks_of(self, z):
        out = {}
        for a, off in self.row_layout:
            nr, nc = self.Y.at(a.tgt), self.X.at(a.src)
            m = la.zeros(nr, nc, self.F)
            for i in range(nr):
                for j in range(nc):
                    m[i][j] = z[off + i * nc + j]
            out[a.label] = m
        return out

    def vector_of(self, blocks):
        z = [self.F.zero] * self.nrows
        for a, off in self.row_layout:
            m = blocks[a.label]
            nc = self.X.at(a.src)
            for i in range(self.Y.at(a.tgt)):
                for j in range(nc):
                    z[off + i * nc + j] = m[i][j]
        return z

    def right_action(self, z, t):
        """Pull back the class along an endomorphism t of X."""
        blocks = self.blocks_of(z)
        out = {}
        for a, _off in self.row_layout:
            out[a.label] = la.mat_mul(blocks[a.label], t.blocks[a.src], self.F,
                                      inner=self.X.at(a.src))
        return self.vector_of(out)

    def left_action(self, s, z):
        """Push forward the class along an endomorphism s of Y."""
        blocks = self.blocks_of(z)
        out = {}
        for a, _off in self.row_layout:
            out[a.label] = la.mat_mul(s.blocks[a.tgt], blocks[a.label], self.F,
                                      inner=self.Y.at(a.tgt))
        return self.vector_of(out)

    def extension_middle(self, z):
        """(E, include Y->E, project E->X) for the class z."""
        X, Y, F = self.X, self.Y, self.F
        zb = self.blocks_of(z)
        dims = {v: Y.at(v) + X.at(v) for v in X.quiver.vertices}
        maps = {}
        for a in X.quiver.arrows:
            m = la.zeros(dims[a.tgt], dims[a.src], F)
            Ya, Xa, Za = Y.maps[a.label], X.maps[a.label], zb[a.label]
            for i in range(Y.at(a.tgt)):
                for j in range(Y.at(a.src)):
                    m[i][j] = Ya[i][j]
                for j in range(X.at(a.src)):
                    m[i][Y.at(a.src) + j] = Za[i][j]
            for i in range(X.at(a.tgt)):
                for j in range(X.at(a.src)):
                    m[Y.at(a.tgt) + i][Y.at(a.src) + j] = Xa[i][j]
            maps[a.label] = m
        E = Representation(X.quiver, F, dims, maps)
        iblocks, pblocks = {}, {}
        for v in X.quiver.vertices:
            im = la.zeros(dims[v], Y.at(v), F)
            pm = la.zeros(X.at(v), dims[v], F)
            for i in range(Y.at(v)):
                im[i][i] = F.one
            for i in range(X.at(v)):
                pm[i][Y.at(v) + i] = F.one
            iblocks[v] = im
            pblocks[v] = pm
        return E, Morphism(Y, E, iblocks, check=False), \
            Morphism(E, X, pblocks, check=False)


# -- radical, socle, top ----------------------------------------------------


def radical_subrep(X):
    """(rad X, inclusion): at each vertex the sum of incoming images."""
    F = X.field
    bases = {}
    for v in X.quiver.vertices:
        cols = []
        for a in X.quiver.in_arrows(v):
            m = X.maps[a.label]
            for j in range(X.at(a.src)):
                cols.append([m[i][j] for i in range(X.at(v))])
        bases[v] = _column_space_basis(cols, X.at(v), F)
    return _subrep_from_bases(X, bases, "rad")


def socle_subrep(X):
    """(soc X, inclusion): at each vertex the joint kernel of outgoing maps."""
    F = X.field
    bases = {}
    for v in X.quiver.vertices:
        outs = X.quiver.out_arrows(v)
        stacked = []
        for a in outs:
            stacked.extend(X.maps[a.label])
        if not stacked:
            bases[v] = [la._unit(X.at(v), j, F) for j in range(X.at(v))]
        else:
            bases[v] = la.kernel_basis(stacked, F, ncols=X.at(v))
    return _subrep_from_bases(X, bases, "soc")


def top_data(X):
    """(dims of X/rad X, projection blocks). Arrow maps on the top vanish."""
    F = X.field
    rad, _inc = radical_subrep(X)
    dims, blocks = {}, {}
    for v in X.quiver.vertices:
        U = _inc.blocks[v]
        # rows annihilating the radical give quotient coordinates
        if X.at(v) == 0:
            dims[v] = 0
            blocks[v] = []
            continue
        K = la.kernel_basis(la.transpose(U, ncols=rad.at(v)), F,
                            ncols=X.at(v)) if rad.at(v) else \
            [la._unit(X.at(v), j, F) for j in range(X.at(v))]
        dims[v] = len(K)
        blocks[v] = [list(k) for k in K]
    return dims, blocks


def _column_space_basis(cols, nrows, F):
    """Deterministic basis of the span of the given column vectors."""
    if not cols:
        return []
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
    _m, piv = la.rref(mat, F, ncols=len(cols))
    return [cols[j] for j in piv]


def _subrep_from_bases(X, bases, tag):
    """Build the subrepresentation spanned vertex-wise by the given columns.

    The spans must be arrow-stable; induced matrices are solved for exactly.
    """
    F = X.field
    dims = {v: len(bases[v]) for v in X.quiver.vertices}
    U = {v: [[bases[v][j][i] for j in range(dims[v])]
             for i in range(X.at(v))] for v in X.quiver.vertices}
    maps = {}
    for a in X.quiver.arrows:
        rhs = la.mat_mul(X.maps[a.label], U[a.src], F, inner=X.at(a.src))
        m = la.zeros(dims[a.tgt], dims[a.src], F)
        for j in range(dims[a.src]):
            col = [rhs[i][j] for i in range(X.at(a.tgt))]
            sol = la.solve(U[a.tgt], col, F, ncols=dims[a.tgt])
            if sol is None:
                raise RepError("span is not arrow-stable at %r" % (a.label,))
            for i in range(dims[a.tgt]):
                m[i][j] = sol[i]
        maps[a.label] = m
    S = Representation(X.quiver, F, dims, maps,
                       label="%s(%s)" % (tag, X.label or "X"))
    return S, Morphism(S, X, U, check=False)


# -- decomposition ----------------------------------------------------------


class DecompositionReport:
    """pieces: (summand, include, project) triples; summands: grouped classes."""

    def __init__(self, rep, pieces, summands):
        self.rep = rep
        self.pieces = pieces
        self.summands = summands

    def check(self):
        F = self.rep.field
        total = zero_morphism(self.rep, self.rep)
        for S, inc, proj in self.pieces:
            comp = proj.compose(inc)
            if comp.blocks != identity_morphism(S).blocks:
                raise RepError("projection after inclusion is not the identity")
            total = total.add(inc.compose(proj))
        if total.blocks != identity_morphism(self.rep).blocks:
            raise RepError("summand witnesses do not resolve the identity")
        dv = {}
        for S, mult in self.summands:
            for v, d in S.dims.items():
                dv[v] = dv.get(v, 0) + mult * d
        for v in self.rep.quiver.vertices:
            if dv.get(v, 0) != self.rep.at(v):
                raise RepError("dimension vectors do not add up")
        return True


def end_radical(X, ends):
    """Basis of rad End(X) as morphisms via the trace form, or None.

    Trace-form degeneracy could only arise when the characteristic divides
    a summand dimension; the nilpotency verification keeps the conclusion
    sound regardless, returning None instead of a wrong radical.
    """
    F = X.field
    if not ends:
        return []
    bigs = [total_matrix(f) for f in ends]
    n = len(bigs)
    gram = la.zeros(n, n, F)
    for i in range(n):
        for j in range(i, n):
            prod = la.mat_mul(bigs[i], bigs[j], F)
            tr = F.zero
            for d in range(len(prod)):
                tr = F.add(tr, prod[d][d])
            gram[i][j] = tr
            gram[j][i] = tr
    combos = la.kernel_basis(gram, F, ncols=n)
    radmats = []
    radmorphs = []
    for c in combos:
        m = la.zeros(len(bigs[0]), len(bigs[0]), F) if bigs[0] else []
        f = zero_morphism(X, X)
        for coef, b, g in zip(c, bigs, ends):
            if not F.is_zero(coef):
                m = la.mat_add(m, la.mat_scale(coef, b, F), F)
                f = f.add(g.scale(coef))
        radmats.append(m)
        radmorphs.append(f)
    if not _ideal_is_nilpotent(radmats, F):
        return None
    return radmorphs


def _ideal_is_nilpotent(mats, F):
    # powers of an ideal are nested, so the layer dimension strictly drops
    # until it hits zero or stabilizes at a non-nilpotent remainder
    basis = _span_basis(mats, F)
    layer = basis
    while layer:
        products = [la.mat_mul(a, b, F) for a in layer for b in basis]
        nxt = _span_basis(products, F)
        if len(nxt) == len(layer):
            return False
        layer = nxt
    return True


def _span_basis(mats, F):
    if not mats:
        return []
    n = len(mats[0])
    rows = [[m[i][j] for i in range(n) for j in range(n)] for m in mats]
    R, piv = la.rref(rows, F, ncols=n * n)
    out = []
    for r in range(len(piv)):
        out.append([[R[r][i * n + j] for j in range(n)] for i in range(n)])
    return out


def _span_dim(mats, F):
    if not mats:
        return 0
    n = len(mats[0])
    rows = [[m[i][j] for i in range(n) for j in range(n)] for m in mats]
    return la.rank(rows, F, ncols=n * n)


def is_indecomposable(X, seed=0):
    if X.is_zero():
        return False
    ends = hom_basis(X, X)
    rad = end_radical(X, ends)
    if rad is not None and len(ends) - len(rad) == 1:
        return True
    return len(decompose(X, seed=seed).pieces) == 1


def decompose(X, seed=0):
    """Full Krull-Schmidt decomposition with explicit witnesses.

    Splitting idempotents come from spectral projectors of endomorphisms
    whose minimal polynomial has coprime factors; candidates are the End
    basis itself, then seeded random combinations. When neither a split nor
    an indecomposability certificate is found the failure is loud.
    """
    pieces = _decompose_pieces(X, identity_morphism(X), identity_morphism(X),
                               seed)
    pieces.sort(key=lambda t: (-t[0].total_dim(),
                               sorted((str(v), d) for v, d in
                                      t[0].dim_vector().items())))
    groups = []
    for S, inc, proj in pieces:
        placed = False
        for g in groups:
            if S.dims == g[0].dims and iso_witness(g[0], S, seed=seed) is not None:
                g[1] += 1
                placed = True
                break
        if not placed:
            groups.append([S, 1])
    summands = [(S, m) for S, m in groups]
    return DecompositionReport(X, pieces, summands)


def _decompose_pieces(X, inc0, proj0, seed):
    if X.is_zero():
        return []
    ends = hom_basis(X, X)
    F = X.field
    rad = end_radical(X, ends)
    if rad is not None and len(ends) - len(rad) == 1:
        return [(X, inc0, proj0)]
    pi = _splitting_idempotent(X, ends, seed)
    if pi is None:
        raise RepError(
            "cannot certify a splitting: a generic endomorphism has an "
            "irreducible minimal-polynomial factor of degree > 1; "
            "extend scalars or switch field")
    img, iinc, iproj = _subrep_from_endo(X, pi)
    ker, kinc, kproj = _subrep_from_endo(X, _complement_idempotent(X, pi))
    out = []
    out.extend(_decompose_pieces(img, inc0.compose(iinc),
                                 iproj.compose(proj0), seed))
    out.extend(_decompose_pieces(ker, inc0.compose(kinc),
                                 kproj.compose(proj0), seed))
    return out


def _complement_idempotent(X, pi):
    return identity_morphism(X).add(pi.scale(X.field.neg(X.field.one)))


def _splitting_idempotent(X, ends, seed, extra_tries=24):
    F = X.field
    rng = random.Random(seed)
    candidates = list(ends)
    for _ in range(extra_tries):
        if not ends:
            break
        combo = zero_morphism(X, X)
        for f in ends:
            c = rng.randint(-5, 5) if F.p == 0 else rng.randint(0, F.p - 1)
            combo = combo.add(f.scale(F.of(c)))
        candidates.append(combo)
    for f in candidates:
        big = total_matrix(f)
        mp = la.min_poly(big, F)
        factors = _poly_factors(mp, F)
        if len(factors) < 2:
            continue
        g1 = factors[0]
        g2 = _poly_product(factors[1:], F)
        u, v = _bezout(g1, g2, F)
        # projector onto the generalized kernel of g1(f): v*g2 evaluated at f
        proj_coeffs = _poly_mul(v, g2, F)
        pi_big = la.poly_eval_mat(proj_coeffs, big, F)
        pi = _endo_from_total(X, pi_big)
        if pi is not None:
            return pi
    return None


def _poly_factors(coeffs, F):
    """Coprime factor powers of a monic polynomial, low-degree first."""
    import sympy
    t = sympy.symbols("t")
    if F.p == 0:
        expr = sum(sympy.Rational(c) * t ** i for i, c in enumerate(coeffs))
        fl = sympy.factor_list(expr)[1]
    else:
        expr = sum(int(c) * t ** i for i, c in enumerate(coeffs))
        fl = sympy.factor_list(expr, modulus=F.p)[1]
    parts = []
    for base, mult in fl:
        poly = sympy.Poly(base ** mult, t)
        cs = [F.parse(str(c)) for c in reversed(poly.all_coeffs())]
        lead = cs[-1]
        cs = [F.div(c, lead) for c in cs]
        parts.append(cs)
    parts.sort(key=lambda cs: (len(cs), [str(x) for x in cs]))
    return parts


def _poly_mul(a, b, F):
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _poly_product(polys, F):
    out = [F.one]
    for p in polys:
        out = _poly_mul(out, p, F)
    return out


def _poly_divmod(a, b, F):
    a = list(a)
    q = [F.zero] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(not F.is_zero(x) for x in a):
        while a and F.is_zero(a[-1]):
            a.pop()
        if len(a) < len(b):
            break
        c = F.div(a[-1], b[-1])
        d = len(a) - len(b)
        q[d] = F.add(q[d], c)
        for i in range(len(b)):
            a[d + i] = F.sub(a[d + i], F.mul(c, b[i]))
        a.pop()
    while a and F.is_zero(a[-1]):
        a.pop()
    return q, a if a else [F.zero]


def _bezout(g1, g2, F):
    """u, v with u*g1 + v*g2 = 1 for coprime g1, g2."""
    r0, r1 = list(g1), list(g2)
    s0, s1 = [F.one], [F.zero]
    t0, t1 = [F.zero], [F.one]
    while any(not F.is_zero(x) for x in r1):
        q, r = _poly_divmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, F), F)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, F), F)
    lead = next(x for x in reversed(r0) if not F.is_zero(x))
    inv = F.inv(lead)
    u = [F.mul(inv, x) for x in s0]
    v = [F.mul(inv, x) for x in t0]
    return u, v


def _poly_sub(a, b, F):
    n = max(len(a), len(b))
    a = a + [F.zero] * (n - len(a))
    b = b + [F.zero] * (n - len(b))
    return [F.sub(x, y) for x, y in zip(a, b)]


def _endo_from_total(X, big):
    """Read a block-diagonal total matrix back as an endomorphism.

    Rejects idempotents that are 0 or 1 (no splitting information).
    """
    F = X.field
    off = vertex_offsets(X)
    blocks = {}
    for v in X.quiver.vertices:
        d = X.at(v)
        blocks[v] = [[big[off[v] + i][off[v] + j] for j in range(d)]
                     for i in range(d)]
    pi = Morphism(X, X, blocks, check=False)
    r = sum(la.rank(blocks[v], F) for v in X.quiver.vertices)
    if r == 0 or r == X.total_dim():
        return None
    return pi


def _subrep_from_endo(X, pi):
    """Image of an idempotent endomorphism as a subrepresentation."""
    F = X.field
    bases = {}
    for v in X.quiver.vertices:
        m = pi.blocks[v]
        _r, piv = la.rref(m, F, ncols=X.at(v))
        bases[v] = [[m[i][j] for i in range(X.at(v))] for j in piv]
    S, inc = _subrep_from_bases(X, bases, "smd")
    # project = coordinates of pi in the image basis
    blocks = {}
    for v in X.quiver.vertices:
        U = inc.blocks[v]
        m = la.zeros(S.at(v), X.at(v), F)
        for j in range(X.at(v)):
            col = [pi.blocks[v][i][j] for i in range(X.at(v))]
            sol = la.solve(U, col, F, ncols=S.at(v))
            if sol is None:
                raise RepError("idempotent image is inconsistent")
            for i in range(S.at(v)):
                m[i][j] = sol[i]
        blocks[v] = m
    return S, inc, Morphism(X, S, blocks, check=False)


def iso_witness(X, Y, seed=0, tries=8):
    """An invertible morphism X -> Y, or None. Soundness: only the witness
    counts; equal dimension vectors alone prove nothing."""
    if X.dims != Y.dims:
        return None
    if X.total_dim() == 0:
        return zero_morphism(X, Y)
    H = hom_basis(X, Y)
    if not H:
        return None
    for f in H:
        if f.is_iso():
            return f
    F = X.field
    rng = random.Random(seed)
    for _ in range(tries):
        combo = zero_morphism(X, Y)
        for f in H:
            c = rng.randint(-7, 7) if F.p == 0 else rng.randint(0, F.p - 1)
            combo = combo.add(f.scale(F.of(c)))
        if combo.is_iso():
            return combo
    return None


# -- named family objects ----------------------------------------------------

_LABEL_RE = re.compile(r"^([AB])(?:\^?\{?\(?([01])\)?\}?)?"
                       r"\s*[_(]\{?\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?[)}]?$")


def parse_object_label(label):
    """Accepts A(n,m), B(n,m), A0(m), A1(m) and the braced variants."""
    if isinstance(label, (tuple, list)):
        return tuple(label)
    s = label.strip().replace(" ", "")
    m = _LABEL_RE.match(s)
    if not m:
        raise RepError("cannot parse object label %r" % (label,))
    fam, sup, first, second = m.groups()
    if fam == "A" and sup is not None:
        if second is not None:
            raise RepError("A^(%s) takes a single index" % sup)
        return ("A%s" % sup, int(first))
    if second is None:
        raise RepError("%s needs two indices" % fam)
    return (fam, int(first), int(second))


def realize_family_object(tq, label, field=QQ):
    """Interval and fork-pattern representations on zigzag family windows.

    A(n,m): k on [n,m]. On the three-ended window additionally
    A0(m): k on {1} and [2,m]; A1(m): k on {0} and [2,m];
    B(n,m): k at the two tips, k^2 on [2,n], k on [n+1,m], n < m.
    All results are indecomposable; B maps are fixed so the two tip
    projections differ and the zone collapse is the coordinate sum.
    """
    desc = parse_object_label(label)
    fam = tq.spec.family if tq.spec.kind == "family" else None
    if fam not in ("A_inf", "A_biinf", "D_inf"):
        raise RepError("family objects need an A or D family window")
    kind = desc[0]
    if kind in ("A0", "A1", "B") and fam != "D_inf":
        raise RepError("%s objects live on the three-ended family" % kind)
    if kind == "A":
        n, m = desc[1], desc[2]
        if n > m:
            raise RepError("A(n,m) needs n <= m")
        if fam == "D_inf" and n < 2:
            raise RepError("interval objects on this family start at 2; "
                           "use B or the tip variants")
        support = list(range(n, m + 1))
        return _thin_rep(tq, field, support, "A(%d,%d)" % (n, m))
    if kind in ("A0", "A1"):
        m = desc[1]
        if m < 1:
            raise RepError("%s(m) needs m >= 1" % kind)
        tip = 1 if kind == "A0" else 0
        support = [tip] + list(range(2, m + 1))
        return _thin_rep(tq, field, support, "%s(%d)" % (kind, m))
    n, m = desc[1], desc[2]
    if not (1 <= n < m):
        raise RepError("B(n,m) needs 1 <= n < m")
    return _fork_rep(tq, field, n, m)


def _thin_rep(tq, field, support, label):
    sset = set(support)
    for v in support:
        if not tq.has_vertex(v):
            raise RepError("window too small for %s: missing vertex %r"
                           % (label, v))
    dims = {v: 1 for v in support}
    maps = {}
    for a in tq.arrows:
        if a.src in sset and a.tgt in sset:
            maps[a.label] = [[field.one]]
    return Representation(tq, field, dims, maps, label=label)


def _fork_rep(tq, field, n, m):
    F = field
    label = "B(%d,%d)" % (n, m)
    for v in [0, 1] + list(range(2, m + 1)):
        if not tq.has_vertex(v):
            raise RepError("window too small for %s: missing vertex %r"
                           % (label, v))
    dims = {0: 1, 1: 1}
    for v in range(2, n + 1):
        dims[v] = 2
    for v in range(n + 1, m + 1):
        dims[v] = 1
    maps = {}
    for a in tq.arrows:
        ds, dt = dims.get(a.src, 0), dims.get(a.tgt, 0)
        if not ds or not dt:
            continue
        if (a.src, a.tgt) == (2, 0):
            maps[a.label] = [[F.one, F.zero]] if ds == 2 else [[F.one]]
        elif (a.src, a.tgt) == (2, 1):
            maps[a.label] = [[F.zero, F.one]] if ds == 2 else [[F.one]]
        elif ds == 2 and dt == 2:
            maps[a.label] = la.identity(2, F)
        elif ds == 2 and dt == 1:
            maps[a.label] = [[F.one, F.one]]
        elif ds == 1 and dt == 2:
            maps[a.label] = [[F.one], [F.one]]
        else:
            maps[a.label] = [[F.one]]
    return Representation(tq, F, dims, maps, label=label)


def path_action(X, p):
    """Matrix of X along a path, X_target x X_source; identity when trivial."""
    F = X.field
    m = la.identity(X.at(p.source), F)
    for a in p.arrows:
        m = la.mat_mul(X.maps[a.label], m, F, inner=X.at(a.src),
                       bcols=X.at(p.source))
    return m


def random_rep(tq, field, rng, max_dim=4):
    """Seeded random representation, for property tests and spot checks."""
    F = field
    dims = {v: rng.randint(0, max_dim) for v in tq.vertices}
    maps = {}
    for a in tq.arrows:
        r, c = dims[a.tgt], dims[a.src]
        if F.p == 0:
            maps[a.label] = [[F.of(rng.randint(-3, 3)) for _ in range(c)]
                             for _ in range(r)]
        else:
            maps[a.label] = [[F.of(rng.randint(0, F.p - 1)) for _ in range(c)]
                             for _ in range(r)]
    return Representation(tq, F, dims, maps)
