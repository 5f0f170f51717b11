"""Translation-quiver combinatorics on top of the exact layer: repetition
lattices and their sections, mesh knitting of preprojective and preinjective
components, hammock counting of Hom dimensions, formal inverse-translate
objects, and the joined component models of the two-sided zigzag families.

Everything here is window-based. Infinite lattices are materialized on a
finite range, operations track which cells they can answer for honestly,
and questions that depend on cells outside the window raise instead of
guessing. Dimension vectors are plain dicts over the base quiver vertices;
cells living in the shifted half of a joined model count negatively in the
mesh rule (their dict stores the underlying dimensions, the sign is the
`shifted` flag).

Coordinate conventions, fixed once:
  - repetition lattice of Q: cells (n, x); per arrow x -> y of Q the lattice
    has (n, x) -> (n, y) and (n, y) -> (n+1, x); translate (n, x) -> (n-1, x).
  - knitted preprojective component of Q: cells (c, x) meaning the c-th
    inverse translate of P_x; arrows (c, y) -> (c, x) and (c, x) -> (c+1, y)
    per arrow x -> y. This is the lattice of the opposite quiver.
  - preinjective component: cells (c, x) meaning the c-th translate of I_x.
  - grid components of the joined family models: cells (c, r) with row
    r >= 1, translate (c, r) -> (c-1, r), arrows (c, r+1) -> (c, r) and
    (c, r) -> (c+1, r+1); the mesh ending at (c, r) has middle cells
    (c, r+1) and, for r >= 2, (c-1, r-1).
"""

from __future__ import annotations

from collections import namedtuple

from . import quiver as qv
from . import replin as rl
from . import artheory as ar
from .fields import QQ


class KnitError(ValueError):
    pass


# -- repetition lattice -------------------------------------------------------


class TranslationQuiver:
    """Materialized window [lo, hi] of the repetition lattice of a finite
    acyclic quiver. `base` keeps the quiver; cells are (n, vertex) pairs."""

    def __init__(self, base, lo, hi):
        if lo > hi:
            raise KnitError("empty lattice window")
        if not base.is_acyclic():
            raise KnitError("repetition lattice needs an acyclic base")
        self.base = base
        self.lo = lo
        self.hi = hi
        self.vertices = [(n, x) for n in range(lo, hi + 1)
                         for x in base.vertices]
        self._vset = set(self.vertices)
        self.arrows = []
        for n in range(lo, hi + 1):
            for a in base.arrows:
                self.arrows.append(qv.Arrow((n, a.src), (n, a.tgt),
                                            "%s@%d" % (a.label, n)))
                if n < hi:
                    self.arrows.append(qv.Arrow((n, a.tgt), (n + 1, a.src),
                                                "%s'@%d" % (a.label, n)))
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.src].append(a)
            self._in[a.tgt].append(a)

    def has_vertex(self, v):
        return v in self._vset

    def out_arrows(self, v):
        return self._out[v]

    def in_arrows(self, v):
        return self._in[v]

    def tau(self, v):
        n, x = v
        return (n - 1, x)

    def tau_inv(self, v):
        n, x = v
        return (n + 1, x)

    def count_paths(self, frm, to):
        """Number of paths frm -> to inside the window (the window is a
        finite directed acyclic graph, so this is a plain memoized count)."""
        for v in (frm, to):
            if not self.has_vertex(v):
                raise KnitError("cell %r outside the lattice window" % (v,))
        memo = {to: 1}

        def count(v):
            if v not in memo:
                memo[v] = sum(count(a.tgt) for a in self._out[v])
            return memo[v]

        return count(frm)

    def to_json(self):
        return {"window": [self.lo, self.hi],
                "vertices": [_cell_str(v) for v in self.vertices],
                "arrows": [[_cell_str(a.src), _cell_str(a.tgt)]
                           for a in self.arrows]}

    def to_dot(self):
        lines = ["digraph zq {", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append('  "%s";' % _cell_str(v))
        for a in self.arrows:
            lines.append('  "%s" -> "%s";'
                         % (_cell_str(a.src), _cell_str(a.tgt)))
        for v in self.vertices:
            if self.has_vertex(self.tau(v)):
                lines.append('  "%s" -> "%s" [style=dashed, constraint=false];'
                             % (_cell_str(v), _cell_str(self.tau(v))))
        lines.append("}")
        return "\n".join(lines)


def _cell_str(cell):
    if isinstance(cell, tuple):
        return "(" + ",".join(str(c) for c in cell) + ")"
    return str(cell)


def _resolve_base(Q, level, purpose):
    """Accept a finite QuiverSpec, a family spec plus level, or an already
    truncated window; hand back the TruncatedQuiver to work on."""
    if isinstance(Q, qv.TruncatedQuiver):
        return Q
    if not isinstance(Q, qv.QuiverSpec):
        raise KnitError("%s needs a quiver spec or truncated window" % purpose)
    if Q.kind == "finite":
        return qv.truncate(Q, 0)
    if level is None:
        raise KnitError("%s on an infinite family needs a truncation level"
                        % purpose)
    return qv.truncate(Q, level)


def zq(Q, window, level=None):
    """Repetition lattice window. `window` is the inclusive (lo, hi) pair of
    translate columns. Base must be connected, acyclic and without infinite
    forward path trouble; family specs are truncated at `level` first."""
    base = _resolve_base(Q, level, "zq")
    if not qv.check_p2(base.spec):
        raise KnitError("repetition lattice precondition fails: "
                        "an infinite path ends at a vertex")
    if not base.is_connected():
        raise KnitError("repetition lattice needs a connected base")
    lo, hi = window
    return TranslationQuiver(base, lo, hi)


def nq(Q, depth, level=None):
    """The non-negative part of the repetition lattice, columns 0..depth."""
    return zq(Q, (0, depth), level=level)


def zq_model(Q, window, level=None):
    """Repetition lattice window wrapped as a component model, so the
    hammock counters run on it.

    No cell is marked projective or injective: the lattice is boundaryless
    and the window edge shows up as unknown hammock values instead, which
    callers dodge by keeping enough margin around their cells of interest."""
    tqz = zq(Q, window, level=level)
    comp = Component("zq", "zq")
    for cell in tqz.vertices:
        comp.add_cell(cell)
    comp.arrows = [(a.src, a.tgt) for a in tqz.arrows]
    for cell in tqz.vertices:
        tcell = tqz.tau(cell)
        if not tqz.has_vertex(tcell):
            continue
        comp.tau_map[cell] = tcell
        n, x = cell
        mids = [(n, a.src) for a in tqz.base.in_arrows(x)]
        mids += [(n - 1, a.tgt) for a in tqz.base.out_arrows(x)]
        if all(m in tqz._vset for m in mids):
            comp.meshes[cell] = (tcell, tuple(mids))
    comp.freeze()
    fam = tqz.base.spec.family if tqz.base.spec.kind == "family" else None
    return ARComponentModel("repetition lattice", [comp], family=fam,
                            partial=True, base=tqz.base)


Section = namedtuple("Section", ["vertices", "arrows"])


def is_section(tqz, candidate):
    """One cell per translate orbit plus the two local arrow rules.

    For each candidate cell u and lattice arrow u -> v the set must contain
    v or its translate; for each arrow w -> u it must contain w or the
    inverse translate of w. Candidate cells must sit strictly inside the
    window so both rules are decidable; cells on the boundary raise.
    """
    cand = set(tuple(v) for v in candidate)
    for v in cand:
        if not tqz.has_vertex(v):
            raise KnitError("candidate cell %r is outside the window" % (v,))
        if v[0] in (tqz.lo, tqz.hi):
            raise KnitError("window too small: candidate cell %r sits on the "
                            "boundary column" % (v,))
    per_orbit = {}
    for (n, x) in cand:
        per_orbit.setdefault(x, []).append(n)
    if set(per_orbit) != set(tqz.base.vertices):
        return False
    if any(len(ns) != 1 for ns in per_orbit.values()):
        return False
    for u in cand:
        for a in tqz.out_arrows(u):
            v = a.tgt
            if v not in cand and tqz.tau(v) not in cand:
                return False
        for a in tqz.in_arrows(u):
            w = a.src
            if w not in cand and tqz.tau_inv(w) not in cand:
                return False
    return True


def make_section(tqz, vertices):
    """Validated section with its induced arrows."""
    verts = [tuple(v) for v in vertices]
    if not is_section(tqz, verts):
        raise KnitError("not a section of the lattice window")
    vset = set(verts)
    arrows = [a for a in tqz.arrows if a.src in vset and a.tgt in vset]
    return Section(sorted(verts), arrows)


# -- component containers -----------------------------------------------------


class Component:
    """One AR-component window.

    cells: coordinates in knit order. labels: display names. dimvecs: cell ->
    {vertex: dim} or None when the window cannot realize the cell. marks:
    subsets of {"projective", "injective", "simple"}. meshes: end cell ->
    (translate cell, middle cell tuple), stored only when every participant
    exists in the window. shifted: cells whose dimension vector counts with
    a minus sign in the mesh rule (the glued-in half of a joined model).
    """

    def __init__(self, name, kind):
        self.name = name
        self.kind = kind
        self.cells = []
        self._cset = set()
        self.labels = {}
        self.dimvecs = {}
        self.marks = {}
        self.arrows = []
        self.tau_map = {}
        self.meshes = {}
        self.shifted = set()
        self._out = None
        self._in = None
        self._tau_inv = None
        self._topo = None

    def add_cell(self, cell, label=None, dimvec=None, marks=(), shifted=False):
        if cell in self._cset:
            raise KnitError("duplicate cell %r" % (cell,))
        self.cells.append(cell)
        self._cset.add(cell)
        if label is not None:
            self.labels[cell] = label
        self.dimvecs[cell] = dimvec
        self.marks[cell] = set(marks)
        if shifted:
            self.shifted.add(cell)

    def has_cell(self, cell):
        return cell in self._cset

    def tau(self, cell):
        return self.tau_map.get(cell)

    def tau_inv(self, cell):
        if self._tau_inv is None:
            raise KnitError("component not frozen")
        return self._tau_inv.get(cell)

    def out_cells(self, cell):
        return self._out[cell]

    def in_cells(self, cell):
        return self._in[cell]

    def freeze(self):
        self._out = {c: [] for c in self.cells}
        self._in = {c: [] for c in self.cells}
        for s, t in self.arrows:
            if s not in self._cset or t not in self._cset:
                raise KnitError("arrow endpoint outside the component")
            self._out[s].append(t)
            self._in[t].append(s)
        self._tau_inv = {t: c for c, t in self.tau_map.items()}
        indeg = {c: len(self._in[c]) for c in self.cells}
        queue = sorted([c for c in self.cells if indeg[c] == 0], key=_cell_key)
        topo = []
        while queue:
            c = queue.pop(0)
            topo.append(c)
            added = []
            for t in self._out[c]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    added.append(t)
            queue.extend(sorted(added, key=_cell_key))
            queue.sort(key=_cell_key)
        if len(topo) != len(self.cells):
            raise KnitError("component window contains an oriented cycle")
        self._topo = topo
        self.verify_meshes()
        return self

    def verify_meshes(self):
        """Signed mesh additivity wherever all participants carry dimvecs."""
        for end, (tcell, mids) in self.meshes.items():
            cells = [end, tcell] + list(mids)
            if any(self.dimvecs.get(c) is None for c in cells):
                continue
            total = {}
            for c, sgn in [(end, 1), (tcell, 1)] + [(m, -1) for m in mids]:
                s = sgn * (-1 if c in self.shifted else 1)
                for v, d in self.dimvecs[c].items():
                    total[v] = total.get(v, 0) + s * d
            if any(total.values()):
                raise KnitError("mesh additivity fails at %r" % (end,))

    def to_json(self):
        return {
            "kind": self.kind,
            "vertices": [_cell_str(c) for c in self.cells],
            "labels": {_cell_str(c): l for c, l in sorted(
                self.labels.items(), key=lambda kv: _cell_key(kv[0]))},
            "arrows": [[_cell_str(s), _cell_str(t)] for s, t in self.arrows],
            "dimvecs": {_cell_str(c): {str(v): d for v, d in sorted(
                dv.items(), key=lambda kv: str(kv[0]))}
                for c, dv in self.dimvecs.items() if dv is not None},
            "marks": {_cell_str(c): sorted(m)
                      for c, m in self.marks.items() if m},
            "shifted": [_cell_str(c) for c in sorted(self.shifted,
                                                     key=_cell_key)],
            "tau": {_cell_str(c): _cell_str(t)
                    for c, t in sorted(self.tau_map.items(),
                                       key=lambda kv: _cell_key(kv[0]))},
        }


def _cell_key(cell):
    if isinstance(cell, tuple):
        return tuple((0, c, "") if isinstance(c, int) else (1, 0, str(c))
                     for c in cell)
    if isinstance(cell, int):
        return ((0, cell, ""),)
    return ((1, 0, str(cell)),)


class ARComponentModel:
    """Immutable-after-build container of knitted component windows."""

    def __init__(self, shape, components, family=None, partial=False,
                 base=None):
        self.shape = shape
        self.components = {c.name: c for c in components}
        self.family = family
        self.partial = partial
        self.base = base
        self._hammock_cache = {}

    def component(self, name):
        if name not in self.components:
            raise KnitError("no component %r" % (name,))
        return self.components[name]

    def find(self, ref):
        """Resolve a cell reference: (component, cell), a bare cell tuple
        unique across components, or a display label."""
        if (isinstance(ref, tuple) and len(ref) == 2
                and isinstance(ref[0], str) and ref[0] in self.components):
            comp, cell = ref
            cell = tuple(cell) if isinstance(cell, (list, tuple)) else cell
            if not self.components[comp].has_cell(cell):
                raise KnitError("cell %r not in component %r" % (cell, comp))
            return comp, cell
        hits = []
        for name, comp in self.components.items():
            if isinstance(ref, (tuple, list)) and comp.has_cell(tuple(ref)):
                hits.append((name, tuple(ref)))
            elif isinstance(ref, str):
                for c, lab in comp.labels.items():
                    if lab == ref:
                        hits.append((name, c))
        if not hits:
            raise KnitError("no cell matches %r" % (ref,))
    # a label may decorate at most one cell per component; across
    # components it must be unique to be usable as an address
        if len(set(hits)) > 1:
            raise KnitError("ambiguous cell reference %r: %r" % (ref, hits))
        return hits[0]

    def dimvec(self, ref):
        comp, cell = self.find(ref)
        return self.components[comp].dimvecs.get(cell)

    def label(self, ref):
        comp, cell = self.find(ref)
        return self.components[comp].labels.get(cell)

    def to_json(self):
        return {"shape": self.shape,
                "family": self.family,
                "partial": self.partial,
                "components": {name: comp.to_json()
                               for name, comp in self.components.items()}}

    def to_dot(self):
        lines = ["digraph components {", "  rankdir=LR;"]
        for name, comp in self.components.items():
            lines.append("  subgraph cluster_%s {" % name)
            lines.append('    label="%s";' % name)
            for c in comp.cells:
                lab = comp.labels.get(c, _cell_str(c))
                shape = "box" if "projective" in comp.marks.get(c, ()) else \
                    "diamond" if "injective" in comp.marks.get(c, ()) else \
                    "ellipse"
                lines.append('    "%s:%s" [label="%s", shape=%s];'
                             % (name, _cell_str(c), lab, shape))
            for s, t in comp.arrows:
                lines.append('    "%s:%s" -> "%s:%s";'
                             % (name, _cell_str(s), name, _cell_str(t)))
            for c, t in sorted(comp.tau_map.items(),
                               key=lambda kv: _cell_key(kv[0])):
                lines.append('    "%s:%s" -> "%s:%s" '
                             '[style=dashed, constraint=false];'
                             % (name, _cell_str(c), name, _cell_str(t)))
            lines.append("  }")
        lines.append("}")
        return "\n".join(lines)


# -- knitting -----------------------------------------------------------------


def _paths_from(tq, x):
    """Dimension vector of the projective at x: path counts out of x."""
    memo = {}

    def outof(v):
        if v not in memo:
            total = {v: 1}
            for a in tq.out_arrows(v):
                for w, d in outof(a.tgt).items():
                    total[w] = total.get(w, 0) + d
            memo[v] = total
        return memo[v]

    return dict(outof(x))


def _paths_into(tq, x):
    """Dimension vector of the injective at x: path counts into x."""
    memo = {}

    def into(v):
        if v not in memo:
            total = {v: 1}
            for a in tq.in_arrows(v):
                for w, d in into(a.src).items():
                    total[w] = total.get(w, 0) + d
            memo[v] = total
        return memo[v]

    return dict(into(x))


def _frontier(tq):
    """Vertices present at this truncation level but not one level down."""
    if tq.spec.kind not in ("family", "composite") or tq.level == 0:
        return set()
    inner = set(qv.truncate(tq.spec, tq.level - 1).vertices)
    return set(tq.vertices) - inner


def _descendants(tq, x):
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        for a in tq.out_arrows(v):
            if a.tgt not in seen:
                seen.add(a.tgt)
                stack.append(a.tgt)
    return seen


def _reverse_topo(tq):
    """Base vertices, sinks first; a target of an arrow precedes its source."""
    order = []
    state = {v: 0 for v in tq.vertices}

    def visit(v):
        state[v] = 1
        for a in tq.out_arrows(v):
            if state[a.tgt] == 0:
                visit(a.tgt)
        state[v] = 2
        order.append(v)

    for v in tq.vertices:
        if state[v] == 0:
            visit(v)
    return order


def _dv_eq(a, b):
    keys = set(a) | set(b)
    return all(a.get(k, 0) == b.get(k, 0) for k in keys)


def _knit_forward(tq, depth, family):
    """Shared knitting sweep. Returns the component plus liveness data.

    Finite base: orbits halt when their dimension vector matches an
    injective (on a finite quiver distinct indecomposables in these
    components never collide on dimension vectors at the scales handled
    here; the acceptance suite re-derives every cell with the exact
    translate to back this up). Family base: orbits near the truncation
    boundary erode silently, one ring per generation, so every surviving
    cell has an honestly computed mesh.
    """
    if not tq.is_acyclic():
        raise KnitError("knitting needs an acyclic base")
    if not tq.is_connected():
        raise KnitError("knitting needs a connected base")
    if family and not qv.is_strongly_locally_finite(tq.spec):
        raise KnitError("family knitting needs finite-length projectives; "
                        "this orientation has none")
    comp = Component("main", "preprojective")
    frontier = _frontier(tq)
    order = _reverse_topo(tq)
    proj_dv = {x: _paths_from(tq, x) for x in tq.vertices}
    inj_dv = {} if family else {x: _paths_into(tq, x) for x in tq.vertices}

    alive = {}
    for x in tq.vertices:
        if family and _descendants(tq, x) & frontier:
            continue
        alive[x] = True
    if not alive:
        raise KnitError("window level too small: no honest projectives")

    def inj_match(dv):
        for w, idv in inj_dv.items():
            if _dv_eq(dv, idv):
                return w
        return None

    dead = set()
    for x in order:
        if x not in alive:
            continue
        dv = proj_dv[x]
        marks = {"projective"}
        label = None
        if family:
            label = _family_label(tq.spec, dv)
        else:
            w = inj_match(dv)
            label = "P_%s" % (x,)
            if w is not None:
                marks.add("injective")
                label += " = I_%s" % (w,)
                dead.add(x)
        comp.add_cell((0, x), label=label, dimvec=dv, marks=marks)
    for a in tq.arrows:
        if comp.has_cell((0, a.tgt)) and comp.has_cell((0, a.src)):
            comp.arrows.append(((0, a.tgt), (0, a.src)))

    current = {x for x in alive if not (not family and x in dead)}
    partial = False
    for c in range(depth):
        nxt = set()
        halted = set()
        for x in order:
            if x not in current:
                continue
            need_prev = [a.src for a in tq.in_arrows(x)]
            need_next = [a.tgt for a in tq.out_arrows(x)]
            if family:
                # erosion: a missing neighbour means the mesh cannot be
                # computed honestly, so the orbit ends here, silently
                if any(w not in current for w in need_prev):
                    continue
                if any(y not in nxt for y in need_next):
                    continue
                mids = ([(c, w) for w in need_prev]
                        + [(c + 1, y) for y in need_next])
            else:
                mids = ([(c, w) for w in need_prev if comp.has_cell((c, w))]
                        + [(c + 1, y) for y in need_next
                           if comp.has_cell((c + 1, y))])
            dv = {}
            for m in mids:
                for v, d in comp.dimvecs[m].items():
                    dv[v] = dv.get(v, 0) + d
            for v, d in comp.dimvecs[(c, x)].items():
                dv[v] = dv.get(v, 0) - d
            dv = {v: d for v, d in dv.items() if d}
            if not dv or any(d < 0 for d in dv.values()):
                raise KnitError("knitting produced a non-positive dimension "
                                "vector at generation %d, orbit %r" % (c + 1, x))
            marks = set()
            if family:
                label = _family_label(tq.spec, dv)
            else:
                w = inj_match(dv)
                label = "t-%d P_%s" % (c + 1, x)
                if w is not None:
                    marks.add("injective")
                    label += " = I_%s" % (w,)
                    halted.add(x)
            comp.add_cell((c + 1, x), label=label, dimvec=dv, marks=marks)
            comp.tau_map[(c + 1, x)] = (c, x)
            comp.meshes[(c + 1, x)] = ((c, x), tuple(mids))
            for m in mids:
                comp.arrows.append((m, (c + 1, x)))
            nxt.add(x)
        current = nxt - halted
        if not current:
            break
    else:
        if current:
            partial = True
    if family and depth > 0 and not any(n == depth for (n, _x) in comp.cells):
        raise KnitError("window level too small for the requested depth")
    comp.freeze()
    return comp, partial


def knit_preprojective(Q, depth, level=None):
    """Knit the component of the projectives, depth generations forward.

    Finite quivers halt at injectives and flag `partial` when the depth ran
    out with live orbits. Zigzag family windows label every cell with its
    interval or fork pattern name.
    """
    default = 2 * depth + 6
    tq = _resolve_base(Q, level if level is not None else default,
                       "knit_preprojective")
    family = tq.spec.kind == "family"
    comp, partial = _knit_forward(tq, depth, family)
    fam = tq.spec.family if family else None
    return ARComponentModel("preprojective", [comp], family=fam,
                            partial=partial, base=tq)


def knit_preinjective(Q, depth, level=None):
    """Dual knit: cells (c, x) name the c-th translate of I_x. Computed by
    knitting the opposite quiver and transporting the result (duality keeps
    dimension vectors and swaps the two boundary kinds)."""
    default = 2 * depth + 6
    tq = _resolve_base(Q, level if level is not None else default,
                       "knit_preinjective")
    family = tq.spec.kind == "family"
    dual, partial = _knit_forward(tq.opposite(), depth, family)
    comp = Component("main", "preinjective")
    swap = {"projective": "injective", "injective": "projective"}
    for cell in dual.cells:
        marks = {swap[m] for m in dual.marks[cell] if m in swap}
        if family:
            label = _family_label(tq.spec, dual.dimvecs[cell])
        else:
            c, x = cell
            label = "I_%s" % (x,) if c == 0 else "t+%d I_%s" % (c, x)
            w = _label_iso_suffix(dual, cell)
            if w is not None:
                label += " = P_%s" % (w,)
        comp.add_cell(cell, label=label, dimvec=dict(dual.dimvecs[cell]),
                      marks=marks)
    comp.arrows = [(t, s) for s, t in dual.arrows]
    for end, (tcell, mids) in dual.meshes.items():
        # the same sequence read in the original category: it ends at the
        # higher translate of I_x, whose translate cell is one step deeper
        comp.tau_map[tcell] = end
        comp.meshes[tcell] = (end, mids)
    comp.freeze()
    fam = tq.spec.family if family else None
    return ARComponentModel("preinjective", [comp], family=fam,
                            partial=partial, base=tq)


def _label_iso_suffix(dual, cell):
    """Vertex w when the dual knit halted this cell at an injective, i.e.
    the original cell is the projective P_w."""
    for m in dual.marks[cell]:
        if m == "injective":
            lab = dual.labels.get(cell, "")
            if "= I_" in lab:
                return lab.split("= I_", 1)[1]
    return None


# -- family labels ------------------------------------------------------------


def _family_label(spec, dv):
    """Name a dimension vector on a zigzag family window: interval names on
    the two-sided line, interval / one-tip / fork names on the three-ended
    one. Unrecognized shapes raise; knitting must never emit them."""
    fam = spec.family
    sup = sorted(v for v, d in dv.items() if d)
    vals = sorted({dv[v] for v in sup})
    if fam in ("A_inf", "A_biinf"):
        if vals == [1] and sup == list(range(sup[0], sup[-1] + 1)):
            return "A(%d,%d)" % (sup[0], sup[-1])
        raise KnitError("unrecognized dimension vector %r" % (dv,))
    if fam == "D_inf":
        tips = [t for t in (0, 1) if dv.get(t, 0)]
        tail = [v for v in sup if v >= 2]
        if vals == [1]:
            if not tips:
                if tail == list(range(tail[0], tail[-1] + 1)):
                    return "A(%d,%d)" % (tail[0], tail[-1])
            elif len(tips) == 2:
                if tail and tail == list(range(2, tail[-1] + 1)):
                    return "B(1,%d)" % tail[-1]
            else:
                m = tail[-1] if tail else 1
                if not tail or tail == list(range(2, m + 1)):
                    # A0 keeps tip 1, A1 keeps tip 0
                    return "A%d(%d)" % (1 - tips[0], m)
        elif vals in ([2], [1, 2]) and len(tips) == 2 \
                and dv.get(0) == 1 and dv.get(1) == 1:
            twos = [v for v in tail if dv[v] == 2]
            ones = [v for v in tail if dv[v] == 1]
            n = twos[-1] if twos else 1
            m = ones[-1] if ones else n
            if twos == list(range(2, n + 1)) and \
                    ones == list(range(n + 1, m + 1)):
                return "B(%d,%d)" % (n, m)
        raise KnitError("unrecognized dimension vector %r" % (dv,))
    raise KnitError("no label scheme for family %r" % (fam,))


def normalize_label(label):
    """Parse and normalize an object label; the fork names are symmetric in
    their two indices, so B(m,n) with m > n is folded to B(n,m) before any
    lookup."""
    desc = rl.parse_object_label(label)
    if desc[0] == "B":
        n, m = desc[1], desc[2]
        if n == m:
            raise KnitError("fork label needs two distinct indices")
        if n > m:
            n, m = m, n
        return ("B", n, m)
    return desc


def component_membership(family, label):
    """Which component of the module category an object label belongs to.

    Two-sided line: both indices odd -> preprojective, both even ->
    preinjective, even-odd -> za1, odd-even -> za2. Three-ended family:
    parity of the index sum decides between the regular grid (odd sum) and
    the two boundary components (even sum, odd-odd preprojective and
    even-even preinjective); the one-tip names alternate with their single
    index. One-sided line: the right endpoint's parity decides.
    """
    if family not in ("A_biinf", "D_inf", "A_inf"):
        raise KnitError("membership rules cover the zigzag families only")
    desc = normalize_label(label)
    kind = desc[0]
    if family == "A_biinf":
        if kind != "A":
            raise KnitError("invalid label %r for the two-sided line" % (label,))
        n, m = desc[1], desc[2]
        if n > m:
            raise KnitError("interval label needs n <= m")
        if n % 2 and m % 2:
            return "preprojective"
        if n % 2 == 0 and m % 2 == 0:
            return "preinjective"
        return "za1" if n % 2 == 0 else "za2"
    if family == "A_inf":
        if kind != "A":
            raise KnitError("invalid label %r for the one-sided line" % (label,))
        n, m = desc[1], desc[2]
        if not 1 <= n <= m:
            raise KnitError("interval label out of range")
        return "preprojective" if m % 2 else "preinjective"
    if kind in ("A0", "A1"):
        m = desc[1]
        if m < 1:
            raise KnitError("tip label out of range")
        return "preprojective" if m % 2 else "preinjective"
    n, m = desc[1], desc[2]
    if kind == "A":
        if n == 0:
            # the convention folding the empty double zone into a fork name
            if m < 2:
                raise KnitError("interval label out of range")
            n = 1
        elif not 2 <= n <= m:
            raise KnitError("interval label out of range")
    if (n + m) % 2:
        return "za"
    if n % 2:
        return "preprojective"
    return "preinjective"


# -- hammocks -----------------------------------------------------------------


HammockRun = namedtuple("HammockRun", ["source", "values", "clamps",
                                       "unknown"])


def hammock_run(model, comp_name, X, clamp_zones=frozenset()):
    """Counting pass of the covariant Hom functor at X over one component.

    Cells not reachable from X get 0. Projective-marked cells take the sum
    over their incoming arrows; every other reachable cell needs its full
    mesh inside the window, else it is marked unknown (and so is anything
    depending on it). Negative values clamp to 0 only inside clamp_zones;
    elsewhere they raise, since a wrong count must not propagate.
    """
    comp = model.component(comp_name)
    if not comp.has_cell(X):
        raise KnitError("cell %r not in component %r" % (X, comp_name))
    reach = {X}
    stack = [X]
    while stack:
        v = stack.pop()
        for t in comp.out_cells(v):
            if t not in reach:
                reach.add(t)
                stack.append(t)
    values = {}
    clamps = []
    unknown = set()
    for V in comp._topo:
        if V not in reach:
            values[V] = 0
            continue
        delta = 1 if V == X else 0
        if "projective" in comp.marks.get(V, ()):
            ins = [values[u] for u in comp.in_cells(V)]
            if any(i is None for i in ins):
                values[V] = None
                unknown.add(V)
                continue
            values[V] = delta + sum(ins)
            continue
        mesh = comp.meshes.get(V)
        if mesh is None:
            values[V] = None
            unknown.add(V)
            continue
        tcell, mids = mesh
        parts = [values[tcell]] + [values[m] for m in mids]
        if any(p is None for p in parts):
            values[V] = None
            unknown.add(V)
            continue
        val = delta + sum(values[m] for m in mids) - values[tcell]
        if val < 0:
            clamps.append((V, val))
            if V not in clamp_zones:
                raise KnitError("negative hammock count %d at %r; the window "
                                "does not close cleanly" % (val, V))
            val = 0
        values[V] = val
    return HammockRun(X, values, clamps, unknown)


def hammock_hom_dim(model, X, Y, clamp_zones=frozenset()):
    """dim Hom(X, Y) by mesh counting inside one component window."""
    cx, xcell = model.find(X)
    cy, ycell = model.find(Y)
    if cx != cy:
        raise KnitError("hammocks count maps within a single component; "
                        "%r and %r live in different ones" % (X, Y))
    key = (cx, xcell)
    run = model._hammock_cache.get(key)
    if run is None or clamp_zones:
        run = hammock_run(model, cx, xcell, clamp_zones=clamp_zones)
        if not clamp_zones:
            model._hammock_cache[key] = run
    val = run.values.get(ycell)
    if val is None:
        raise KnitError("hammock from %r does not close before the window "
                        "boundary at %r; enlarge the window" % (X, Y))
    return val


def between(model, X, Y):
    """All cells on directed paths from X to Y; the finite enumeration that
    backs the chain-stabilization checks."""
    cx, xcell = model.find(X)
    cy, ycell = model.find(Y)
    if cx != cy:
        return []
    comp = model.component(cx)
    fwd = {xcell}
    stack = [xcell]
    while stack:
        v = stack.pop()
        for t in comp.out_cells(v):
            if t not in fwd:
                fwd.add(t)
                stack.append(t)
    back = {ycell}
    stack = [ycell]
    while stack:
        v = stack.pop()
        for s in comp.in_cells(v):
            if s not in back:
                back.add(s)
                stack.append(s)
    return sorted(fwd & back, key=_cell_key)


def preproj_hom_dim_closed_form(a, b):
    """The 0/1 law on ray-grid coordinates (column, ray index): maps flow
    rightward along columns and downward along rays."""
    (c, m), (c2, m2) = a, b
    return 1 if (c <= c2 and m >= m2) else 0


# -- formal inverse-translate objects ------------------------------------------


class FormalObject:
    """Pair (t, base) standing for the t-th inverse translate of base.

    The base must be indecomposable. `canonical` is set by canonicalize();
    fresh instances are unverified.
    """

    def __init__(self, base, t, _canonical=False):
        if not isinstance(t, int) or t < 0:
            raise KnitError("the translate exponent must be a non-negative "
                            "integer")
        if base.total_dim() == 0:
            raise KnitError("zero object has no formal translates")
        if not rl.is_indecomposable(base):
            raise KnitError("formal objects take an indecomposable base")
        self.base = base
        self.t = t
        self.canonical = _canonical

    def __repr__(self):
        return "FormalObject(t=%d, %r)" % (self.t, self.base)


def _relift(X, pad):
    """The same matrices on a window enlarged by pad levels."""
    tq = X.quiver
    big = qv.truncate(tq.spec, tq.level + pad, nilpotency=tq.nilpotency)
    return rl.Representation(big, X.field, dict(X.dims),
                             {l: m for l, m in X.maps.items()}, label=X.label)


def _window_rep(X):
    """X re-housed on a finite copy of its window.

    Projective and injective constructions on a growing-family window refuse
    vertices whose support never stabilizes; the alignment computations want
    the plain finite-quiver answers, with trustworthiness handled separately
    by the frontier and two-level checks."""
    tq = X.quiver
    if tq.spec.kind == "finite":
        return X
    spec = qv.QuiverSpec.finite(list(tq.vertices),
                                [(a.src, a.tgt, a.label) for a in tq.arrows])
    fin = qv.truncate(spec, 0, nilpotency=tq.nilpotency)
    return rl.Representation(fin, X.field, dict(X.dims),
                             {l: m for l, m in X.maps.items()}, label=X.label)


def _real_injective_vertex(X):
    """Vertex w when X is the injective at w of the actual category, not
    merely of the truncated window: the window injective must keep clear of
    the truncation frontier to count."""
    Xf = _window_rep(X)
    w = ar.injective_vertex_of(Xf)
    if w is None:
        return None
    frontier = _frontier(X.quiver)
    if not frontier:
        return w
    I = rl.injective_rep(Xf.quiver, Xf.field, w)
    if set(v for v, d in I.dims.items() if d) & frontier:
        return None
    return w


def _stable_tau_inv(X, pad=2):
    """Inverse translate trusted at two window levels, or None when the base
    is a finitely generated projective seen through the window (which is
    exactly how the genuinely new formal objects announce themselves).

    A base whose support reaches the frontier is read as an ascending
    object. Only window projectives admit that reading; anything else at
    the frontier is an under-truncated input and fails loudly."""
    if X.quiver.spec.kind not in ("family", "composite"):
        return ar.tau_inv(X)
    frontier = _frontier(X.quiver)
    if set(v for v, d in X.dims.items() if d) & frontier:
        if ar.projective_vertex_of(_window_rep(X)) is not None:
            return None
        raise KnitError("the base reaches the truncation frontier but is "
                        "not a window projective; enlarge the window")
    try:
        r1 = ar.tau_inv(_window_rep(X))
    except ar.ARError:
        r1 = None
    try:
        r2 = ar.tau_inv(_window_rep(_relift(X, pad)))
    except ar.ARError:
        r2 = None
    if r1 is None or r2 is None:
        return None
    if not _dv_eq(r1.dim_vector(), r2.dim_vector()):
        return None
    frontier = _frontier(X.quiver)
    if set(v for v, d in r1.dim_vector().items() if d) & frontier:
        raise KnitError("window too small: a reduced base touches the "
                        "truncation frontier")
    return rl.Representation(X.quiver, X.field, dict(r1.dims),
                             {l: m for l, m in r1.maps.items()},
                             label=r1.label)


def canonicalize(obj, pad=2):
    """Reduce the translate exponent while the base is itself a translate.

    An injective base with positive exponent is not an object of the
    category at all (its inverse translate leaves the heart), so it raises.
    Exponent steps use the two-level stability test; the moment the window
    computation stops being trustworthy, the object is genuinely new and
    the form is canonical.
    """
    base, t = obj.base, obj.t
    while t > 0:
        if _real_injective_vertex(base) is not None:
            raise KnitError("no such object: the inverse translate of an "
                            "injective leaves the category")
        nxt = None
        try:
            nxt = _stable_tau_inv(base, pad=pad)
        except ar.ARError:
            raise KnitError("no such object: the inverse translate of an "
                            "injective leaves the category")
        if nxt is None:
            break
        base, t = nxt, t - 1
    return FormalObject(base, t, _canonical=True)


def _serre_steps(X, e):
    """e forward powers of the Serre twist as shifted window objects, with a
    truncation guard after every step."""
    frontier = _frontier(X.quiver)
    pieces = [ar.ShiftedObject(_window_rep(X), 0)]
    for _ in range(e):
        pieces = ar.serre_power_shifted(pieces, 1)
        for so in pieces:
            if set(v for v, d in so.rep.dims.items() if d) & frontier:
                raise KnitError("truncation insufficient: a Serre power "
                                "reached the window frontier")
    return pieces


def _aligned_hom(A, B, c):
    sA = _serre_steps(A.base, c - A.t)
    sB = _serre_steps(B.base, c - B.t)
    total = 0
    for pa in sA:
        for pb in sB:
            i = pa.shift + A.t - c
            j = pb.shift + B.t - c
            if i == j:
                total += rl.hom_dim(pa.rep, pb.rep)
            elif j == i + 1:
                total += rl.ext1_dim(pa.rep, pb.rep)
    return total


def formal_hom_dim(A, B, verify=True):
    """Hom dimension between formal objects: align both to a common
    translate exponent with Serre powers, then read Hom and one-step
    extension blocks off the shifted pieces. With verify the alignment is
    repeated one exponent higher and must agree."""
    if not A.canonical:
        A = canonicalize(A)
    if not B.canonical:
        B = canonicalize(B)
    qa, qb = A.base.quiver, B.base.quiver
    if qa.spec.to_json() != qb.spec.to_json() or qa.level != qb.level:
        raise KnitError("formal objects must share a window")
    c = max(A.t, B.t)
    val = _aligned_hom(A, B, c)
    if verify:
        val2 = _aligned_hom(A, B, c + 1)
        if val != val2:
            raise KnitError("alignment exponents disagree (%d vs %d); the "
                            "window truncation is insufficient" % (val, val2))
    return val


def formal_classify(A):
    """projective / injective / neither, in the enlarged category."""
    if not A.canonical:
        A = canonicalize(A)
    if A.t > 0:
        return "neither"
    if ar.projective_vertex_of(_window_rep(A.base)) is not None:
        return "projective"
    if _real_injective_vertex(A.base) is not None:
        return "injective"
    return "neither"


# -- joined models -------------------------------------------------------------


def _is_dynkin(tq):
    """Underlying graph is one of the simply laced finite-type diagrams."""
    verts = list(tq.vertices)
    edges = [(a.src, a.tgt) for a in tq.arrows]
    if len(edges) != len(verts) - 1:
        return False
    deg = {v: 0 for v in verts}
    adj = {v: [] for v in verts}
    for s, t in edges:
        deg[s] += 1
        deg[t] += 1
        adj[s].append(t)
        adj[t].append(s)
    if not tq.is_connected():
        return False
    branch = [v for v in verts if deg[v] >= 3]
    if any(deg[v] >= 4 for v in verts):
        return False
    if not branch:
        return True  # a path
    if len(branch) > 1:
        return False
    b = branch[0]
    arms = []
    for start in adj[b]:
        ln, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            ln += 1
        arms.append(ln)
    arms.sort()
    return arms[:2] == [1, 1] or (arms[0] == 1 and arms[1] == 2
                                  and arms[2] <= 4)


def _za_label_a_biinf_1(c, r):
    # even-odd intervals; the translate slides them outward
    n = 2 * c - 2 * r
    return "A(%d,%d)" % (n, 2 * c - 1)


def _za_label_a_biinf_2(c, r):
    # odd-even intervals; the translate slides them the other way
    n = 1 - 2 * c
    return "A(%d,%d)" % (n, n + 2 * r - 1)


def _za_label_d_inf(c, r):
    """Row r holds the objects of total tail width 2r with odd index sum:
    plain intervals on both flanks and an r-cell fork zone in between."""
    if c >= r:
        n = 2 * (c - r) + 2
        return "A(%d,%d)" % (n, n + 2 * r - 1)
    if c <= -1:
        n = 1 - 2 * c
        return "A(%d,%d)" % (n, n + 2 * r - 1)
    n = 2 * c + 1 if 2 * c + 1 <= r else 2 * (r - c)
    return "B(%d,%d)" % (n, 2 * r + 1 - n)


def _grid_component(name, labeler, cols, rows, realize_tq=None):
    """A ZA-infinity grid window: rows r in [1, rows], columns in
    [-cols, cols], wall meshes at r = 1."""
    comp = Component(name, "za")
    for c in range(-cols, cols + 1):
        for r in range(1, rows + 1):
            label = labeler(c, r)
            dv = None
            if realize_tq is not None:
                try:
                    X = rl.realize_family_object(realize_tq, label, QQ)
                    dv = {v: d for v, d in X.dim_vector().items() if d}
                except rl.RepError:
                    dv = None
            comp.add_cell((c, r), label=label, dimvec=dv)
    for (c, r) in comp.cells:
        if comp.has_cell((c, r - 1)):
            comp.arrows.append(((c, r), (c, r - 1)))
        if comp.has_cell((c + 1, r + 1)):
            comp.arrows.append(((c, r), (c + 1, r + 1)))
        if comp.has_cell((c - 1, r)):
            comp.tau_map[(c, r)] = (c - 1, r)
            mids = [(c, r + 1)]
            if r >= 2:
                mids.append((c - 1, r - 1))
            if all(comp.has_cell(m) for m in mids):
                comp.meshes[(c, r)] = ((c - 1, r), tuple(mids))
    comp.freeze()
    return comp


def tilt_join(Q, depth=6, level=None):
    """Glue the preinjective component, shifted one degree left, onto the
    preprojective one; the seam meshes run from the old injectives to the
    old projectives and the translate acts everywhere on the result.

    Finite-type quivers raise: both halves are one finite component and
    there is nothing to join. For the two-sided zigzag families the model
    additionally carries the untouched grid components with their family
    labels.
    """
    default = 2 * depth + 8
    tq = _resolve_base(Q, level if level is not None else default,
                       "tilt_join")
    family = tq.spec.family if tq.spec.kind == "family" else None
    if family is None and _is_dynkin(tq):
        raise KnitError("finite representation type: the two halves are one "
                        "finite component and never join")
    if family is not None and family not in ("A_biinf", "D_inf", "A_inf"):
        raise KnitError("no join model for family %r" % (family,))

    pro = knit_preprojective(tq, depth).components["main"]
    inj = knit_preinjective(tq, depth).components["main"]

    sigma = Component("sigma", "sigma")
    for cell in inj.cells:
        c, x = cell
        mapped = (-1 - c, x)
        label = (inj.labels.get(cell) or _cell_str(cell)) + "[-1]"
        sigma.add_cell(mapped, label=label, dimvec=dict(inj.dimvecs[cell]),
                       shifted=True)
    for cell in pro.cells:
        sigma.add_cell(cell, label=pro.labels.get(cell),
                       dimvec=dict(pro.dimvecs[cell]))

    def m_inj(cell):
        return (-1 - cell[0], cell[1])

    for s, t in inj.arrows:
        sigma.arrows.append((m_inj(s), m_inj(t)))
    for s, t in pro.arrows:
        sigma.arrows.append((s, t))
    for cell, tcell in inj.tau_map.items():
        sigma.tau_map[m_inj(cell)] = m_inj(tcell)
    for cell, tcell in pro.tau_map.items():
        sigma.tau_map[cell] = tcell
    for end, (tcell, mids) in inj.meshes.items():
        sigma.meshes[m_inj(end)] = (m_inj(tcell),
                                    tuple(m_inj(m) for m in mids))
    for end, (tcell, mids) in pro.meshes.items():
        sigma.meshes[end] = (tcell, mids)

    # the seam: translating tau^{-0} P_x lands on I_x shifted left
    for a in tq.arrows:
        src, tgt = (-1, a.src), (0, a.tgt)
        if sigma.has_cell(src) and sigma.has_cell(tgt):
            sigma.arrows.append((src, tgt))
    for x in tq.vertices:
        end = (0, x)
        tcell = (-1, x)
        if not (sigma.has_cell(end) and sigma.has_cell(tcell)):
            continue
        mids = ([(0, y.tgt) for y in tq.out_arrows(x)]
                + [(-1, w.src) for w in tq.in_arrows(x)])
        if all(sigma.has_cell(m) for m in mids):
            sigma.tau_map[end] = tcell
            sigma.meshes[end] = (tcell, tuple(mids))
    sigma.freeze()

    comps = [sigma]
    shape = "joined"
    if family == "A_biinf":
        shape = "two-sided-line model"
        cols = depth + 2
        rows = depth + 2
        big = qv.truncate(tq.spec, 4 * depth + 12)
        comps.append(_grid_component("za1", _za_label_a_biinf_1,
                                     cols, rows, realize_tq=big))
        comps.append(_grid_component("za2", _za_label_a_biinf_2,
                                     cols, rows, realize_tq=big))
    elif family == "D_inf":
        shape = "three-ended model"
        cols = depth + 2
        rows = depth + 2
        big = qv.truncate(tq.spec, 4 * depth + 12)
        comps.append(_grid_component("za", _za_label_d_inf,
                                     cols, rows, realize_tq=big))
    return ARComponentModel(shape, comps, family=family, partial=False,
                            base=tq)


SimpleReport = namedtuple("SimpleReport", ["orbits", "cells"])


def mark_simples(model):
    """Mark the simple objects of a joined family model and count their
    translate orbits: they are exactly the first row of each grid
    component, one orbit per grid."""
    if model.family not in ("A_biinf", "D_inf"):
        raise KnitError("simple marking is defined for the joined models of "
                        "the two-sided zigzag families only")
    grids = [c for c in model.components.values() if c.kind == "za"]
    if not grids:
        raise KnitError("model carries no grid components to mark")
    cells = []
    for comp in grids:
        for cell in comp.cells:
            if cell[1] == 1:
                comp.marks[cell].add("simple")
                cells.append((comp.name, cell))
    report = SimpleReport(orbits=len(grids), cells=sorted(cells))
    return model, report
