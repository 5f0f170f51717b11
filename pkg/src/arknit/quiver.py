"""Quiver data model: finite quivers, finitely described infinite families,
composite base+rays quivers, truncation windows, paths, and the structural
classifiers (local finiteness, no-backward-infinite-path, star shape).

Infinite quivers are never materialized; every query goes through a finite
truncation window and, where the answer could depend on the window, the
operation reports or checks stability under enlarging it.

Vertex ids are ints for family-generated vertices and strings otherwise.
An arrow x -> y corresponds to an irreducible map P_y -> P_x (and I_y -> I_x);
this convention is global.
"""

from __future__ import annotations

from collections import namedtuple

Arrow = namedtuple("Arrow", ["src", "tgt", "label"])

FAMILY_TYPES = ("A_inf", "A_biinf", "D_inf", "cycle", "comb")
ORIENTATIONS = ("linear-right", "linear-left", "zigzag")

#: truncation levels tried before declaring a count non-stabilizing
DEFAULT_LEVEL_BUDGET = 64


class QuiverError(ValueError):
    pass


class QuiverSpec:
    """Finite quiver, named infinite family, or finite base with rays.

    kind "finite": vertices + arrows.
    kind "family": family in FAMILY_TYPES with an orientation descriptor
        ("zigzag" fixes the phase: even vertices are the sources); cycle
        carries n and is always oriented i -> i+1 mod n.
    kind "composite": finite base plus finitely many rays, each ray oriented
        away from its attachment vertex.
    """

    def __init__(self, kind, vertices=None, arrows=None, family=None,
                 orientation=None, n=None, base=None, rays=None):
        self.kind = kind
        self.vertices = list(vertices) if vertices is not None else None
        self.arrows = [Arrow(*a) for a in arrows] if arrows is not None else None
        self.family = family
        self.orientation = orientation
        self.n = n
        self.base = base
        self.rays = list(rays) if rays is not None else None
        self._validate()

    def _validate(self):
        if self.kind == "finite":
            seen = set(self.vertices)
            if len(seen) != len(self.vertices):
                raise QuiverError("duplicate vertex id")
            for a in self.arrows:
                if a.src not in seen or a.tgt not in seen:
                    raise QuiverError("arrow %r has a dangling endpoint" % (a.label,))
            labels = [a.label for a in self.arrows]
            if len(set(labels)) != len(labels):
                raise QuiverError("duplicate arrow label")
        elif self.kind == "family":
            if self.family not in FAMILY_TYPES:
                raise QuiverError("unknown family %r" % (self.family,))
            if self.family == "cycle":
                if not (isinstance(self.n, int) and self.n >= 1):
                    raise QuiverError("cycle needs n >= 1")
            elif self.family in ("A_inf", "A_biinf"):
                if self.orientation not in ORIENTATIONS:
                    raise QuiverError("family %s needs an orientation in %r"
                                      % (self.family, ORIENTATIONS))
            elif self.family in ("D_inf", "comb"):
                if self.orientation not in (None, "zigzag", "linear-right"):
                    raise QuiverError("unsupported orientation for %s" % self.family)
        elif self.kind == "composite":
            if not isinstance(self.base, QuiverSpec) or self.base.kind != "finite":
                raise QuiverError("composite base must be a finite QuiverSpec")
            vs = set(self.base.vertices)
            for attach, _label in self.rays:
                if attach not in vs:
                    raise QuiverError("ray attached to unknown vertex %r" % (attach,))
        else:
            raise QuiverError("unknown kind %r" % (self.kind,))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def finite(vertices, arrows):
        labeled = []
        for i, a in enumerate(arrows):
            if len(a) == 2:
                labeled.append((a[0], a[1], "a%d" % i))
            else:
                labeled.append(tuple(a))
        return QuiverSpec("finite", vertices=vertices, arrows=labeled)

    @staticmethod
    def family_quiver(family, orientation=None, n=None):
        return QuiverSpec("family", family=family, orientation=orientation, n=n)

    @staticmethod
    def composite(base, rays):
        return QuiverSpec("composite", base=base, rays=rays)

    def __repr__(self):
        if self.kind == "finite":
            return "QuiverSpec(finite, %d vertices)" % len(self.vertices)
        if self.kind == "family":
            extra = self.orientation or self.n
            return "QuiverSpec(%s, %r)" % (self.family, extra)
        return "QuiverSpec(composite, %d rays)" % len(self.rays)

    def to_json(self):
        if self.kind == "finite":
            return {"kind": "finite",
                    "vertices": [str(v) for v in self.vertices],
                    "arrows": [[str(a.src), str(a.tgt), a.label] for a in self.arrows]}
        if self.kind == "family":
            fam = {"type": self.family}
            if self.orientation:
                fam["orientation"] = self.orientation
            if self.n is not None:
                fam["n"] = self.n
            return {"kind": "family", "family": fam}
        return {"kind": "composite",
                "base": self.base.to_json(),
                "rays": [[str(v), lab] for v, lab in self.rays]}

    @staticmethod
    def from_json(doc):
        kind = doc.get("kind")
        if kind == "finite":
            return QuiverSpec("finite", vertices=doc["vertices"],
                              arrows=[tuple(a) for a in doc["arrows"]])
        if kind == "family":
            fam = doc["family"]
            return QuiverSpec("family", family=fam["type"],
                              orientation=fam.get("orientation"),
                              n=fam.get("n"))
        if kind == "composite":
            base = QuiverSpec.from_json(doc["base"])
            return QuiverSpec("composite", base=base,
                              rays=[tuple(r) for r in doc["rays"]])
        raise QuiverError("unknown quiver kind %r" % (kind,))


class TruncatedQuiver:
    """Finite window onto a spec. For finite specs this is the whole quiver.

    nilpotency, when set, caps path length; it is how cyclic quivers are
    given a finite path combinatorics (nilpotent representation mode).
    """

    def __init__(self, spec, level, vertices, arrows, nilpotency=None):
        self.spec = spec
        self.level = level
        self.vertices = list(vertices)
        self.arrows = list(arrows)
        self.nilpotency = nilpotency
        self._vset = set(self.vertices)
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.src].append(a)
            self._in[a.tgt].append(a)
        for v in self.vertices:
            self._out[v].sort(key=lambda a: a.label)
            self._in[v].sort(key=lambda a: a.label)

    def has_vertex(self, v):
        return v in self._vset

    def out_arrows(self, v):
        return self._out[v]

    def in_arrows(self, v):
        return self._in[v]

    def arrow_by_label(self, label):
        for a in self.arrows:
            if a.label == label:
                return a
        raise QuiverError("no arrow labeled %r" % (label,))

    def opposite(self):
        rev = [Arrow(a.tgt, a.src, a.label) for a in self.arrows]
        return TruncatedQuiver(self.spec, self.level, self.vertices, rev,
                               nilpotency=self.nilpotency)

    def is_acyclic(self):
        state = {v: 0 for v in self.vertices}

        def visit(v):
            state[v] = 1
            for a in self._out[v]:
                if state[a.tgt] == 1:
                    return False
                if state[a.tgt] == 0 and not visit(a.tgt):
                    return False
            state[v] = 2
            return True

        for v in self.vertices:
            if state[v] == 0 and not visit(v):
                return False
        return True

    def is_connected(self):
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for a in self._out[v] + self._in[v]:
                w = a.tgt if a.src == v else a.src
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def to_dot(self):
        lines = ["digraph quiver {"]
        for v in self.vertices:
            lines.append('  "%s";' % (v,))
        for a in self.arrows:
            lines.append('  "%s" -> "%s" [label="%s"];' % (a.src, a.tgt, a.label))
        lines.append("}")
        return "\n".join(lines)


class Path:
    """Composable arrow sequence; length 0 is the trivial path at a vertex."""

    __slots__ = ("arrows", "source", "target")

    def __init__(self, arrows, source, target):
        self.arrows = tuple(arrows)
        self.source = source
        self.target = target
        prev = source
        for a in self.arrows:
            if a.src != prev:
                raise QuiverError("arrows do not compose")
            prev = a.tgt
        if prev != target:
            raise QuiverError("path target mismatch")

    @property
    def length(self):
        return len(self.arrows)

    def labels(self):
        return tuple(a.label for a in self.arrows)

    def __eq__(self, other):
        return (isinstance(other, Path) and self.arrows == other.arrows
                and self.source == other.source)

    def __hash__(self):
        return hash((self.arrows, self.source, self.target))

    def __repr__(self):
        if not self.arrows:
            return "Path(e_%s)" % (self.source,)
        return "Path(%s)" % "*".join(self.labels())


def trivial_path(v):
    return Path((), v, v)


def concat(p, q):
    """p then q; zero-length results never arise, mismatch raises."""
    if p.target != q.source:
        raise QuiverError("paths do not compose")
    return Path(p.arrows + q.arrows, p.source, q.target)


# -- truncation -------------------------------------------------------------

def truncate(spec, level, nilpotency=None):
    """Materialize the finite window at the given level.

    Finite specs return the whole quiver at every level. Family windows:
    A_inf starts at 0 (linear) or 1 (zigzag), A_biinf covers [-level, level],
    D_inf covers the fork {0,1} plus tail 2..level+2, comb carries its teeth,
    cycle returns all n vertices with nilpotency defaulting to level.
    """
    if level < 0:
        raise QuiverError("level must be >= 0")
    if spec.kind == "finite":
        return TruncatedQuiver(spec, level, spec.vertices, spec.arrows,
                               nilpotency=nilpotency)
    if spec.kind == "composite":
        vertices = list(spec.base.vertices)
        arrows = list(spec.base.arrows)
        for k, (attach, lab) in enumerate(spec.rays):
            prev = attach
            for i in range(1, level + 1):
                v = "%s.%d" % (lab, i)
                vertices.append(v)
                arrows.append(Arrow(prev, v, "%s_%d" % (lab, i)))
                prev = v
        return TruncatedQuiver(spec, level, vertices, arrows,
                               nilpotency=nilpotency)
    return _truncate_family(spec, level, nilpotency)


def _truncate_family(spec, level, nilpotency):
    fam, orient = spec.family, spec.orientation
    if fam == "cycle":
        n = spec.n
        vertices = list(range(n))
        if n == 1:
            arrows = [Arrow(0, 0, "loop")]
        else:
            arrows = [Arrow(i, (i + 1) % n, "c%d" % i) for i in range(n)]
        cap = nilpotency if nilpotency is not None else max(level, 1)
        return TruncatedQuiver(spec, level, vertices, arrows, nilpotency=cap)
    if fam == "A_inf":
        start = 1 if orient == "zigzag" else 0
        vertices = list(range(start, start + level + 1))
    elif fam == "A_biinf":
        vertices = list(range(-level, level + 1))
    elif fam == "D_inf":
        vertices = [0, 1] + list(range(2, level + 3))
    elif fam == "comb":
        vertices = list(range(0, level + 1)) + ["t%d" % i for i in range(level + 1)]
    arrows = []
    vset = set(vertices)
    if fam == "comb":
        for i in range(level + 1):
            if i + 1 in vset:
                arrows.append(Arrow(i, i + 1, "r%d" % i))
            arrows.append(Arrow(i, "t%d" % i, "b%d" % i))
    elif orient in ("linear-right", "linear-left"):
        ints = [v for v in vertices]
        for v in ints:
            if v + 1 in vset:
                if orient == "linear-right":
                    arrows.append(Arrow(v, v + 1, "a%d" % v))
                else:
                    arrows.append(Arrow(v + 1, v, "a%d" % v))
    else:
        # zigzag phase: even vertices are sources
        for v in vertices:
            if v % 2 == 0 and v != 0:
                for w in (v - 1, v + 1):
                    if w in vset and not (fam == "D_inf" and w < 2):
                        arrows.append(Arrow(v, w, "z%d_%d" % (v, w)))
        if fam == "D_inf" and 2 in vset:
            for w in (0, 1):
                arrows.append(Arrow(2, w, "z2_%d" % w))
        if fam == "A_biinf" and 0 in vset:
            for w in (-1, 1):
                if w in vset:
                    arrows.append(Arrow(0, w, "z0_%d" % w))
    arrows.sort(key=lambda a: a.label)
    return TruncatedQuiver(spec, level, vertices, arrows, nilpotency=nilpotency)


# -- path enumeration -------------------------------------------------------

def enumerate_paths(tq, frm, to):
    """All paths frm -> to in the window, lexicographic by arrow labels.

    Respects the nilpotency cap when one is set; without a cap the quiver
    must be acyclic or enumeration would not terminate.
    """
    for v in (frm, to):
        if not tq.has_vertex(v):
            raise QuiverError("unknown vertex %r" % (v,))
    if tq.nilpotency is None and not tq.is_acyclic():
        raise QuiverError("path enumeration without a nilpotency cap needs an acyclic window")
    cap = tq.nilpotency
    out = []

    def walk(v, acc):
        if cap is not None and len(acc) >= cap:
            return
        if v == to:
            out.append(Path(tuple(acc), frm, to))
        for a in tq.out_arrows(v):
            acc.append(a)
            walk(a.tgt, acc)
            acc.pop()

    # collect in DFS order, then order lexicographically by labels with
    # the trivial path first
    walk(frm, [])
    out.sort(key=lambda p: (p.length > 0, p.labels()))
    return out


def count_paths_ending_at(tq, x, budget=DEFAULT_LEVEL_BUDGET):
    """Stabilized number of paths ending at x, with the level it stabilized at.

    Recomputes on growing windows of the same spec until two consecutive
    levels agree; a valid no-backward-infinite-path spec always stabilizes.
    """
    if not tq.has_vertex(x):
        raise QuiverError("unknown vertex %r" % (x,))
    if tq.spec.kind == "finite":
        if not tq.is_acyclic():
            raise QuiverError("possible (P2) violation: finite quiver has a cycle")
        c = _count_into(tq, x)
        return PathCount(c, tq.level)
    prev = None
    for lvl in range(tq.level, tq.level + budget + 1):
        window = truncate(tq.spec, lvl, nilpotency=tq.nilpotency)
        if not window.has_vertex(x):
            continue
        if window.nilpotency is None and not window.is_acyclic():
            raise QuiverError("possible (P2) violation: cycle in window")
        c = _count_into(window, x)
        if prev is not None and c == prev:
            return PathCount(c, lvl - 1)
        prev = c
    raise QuiverError("possible (P2) violation: path count into %r did not "
                      "stabilize within budget %d" % (x, budget))


PathCount = namedtuple("PathCount", ["count", "level"])


def _count_into(tq, x):
    memo = {}

    def into(v):
        if v not in memo:
            memo[v] = 1 + sum(into(a.src) for a in tq.in_arrows(v))
        return memo[v]

    if tq.nilpotency is not None:
        # bounded mode: count paths of length < cap explicitly
        total = 0
        frontier = {x: 1}
        total += 1
        for _ in range(tq.nilpotency - 1):
            nxt = {}
            for v, m in frontier.items():
                for a in tq.in_arrows(v):
                    nxt[a.src] = nxt.get(a.src, 0) + m
            if not nxt:
                break
            total += sum(nxt.values())
            frontier = nxt
        return total
    return into(x)


# -- structural classifiers -------------------------------------------------

def check_p2(spec):
    """True iff no infinite path ends at a vertex (finite case: acyclicity)."""
    if spec.kind == "finite":
        return truncate(spec, 0).is_acyclic()
    if spec.kind == "composite":
        return truncate(spec.base, 0).is_acyclic()
    fam, orient = spec.family, spec.orientation
    if fam == "cycle":
        return False
    if fam in ("A_inf", "A_biinf") and orient == "linear-left":
        return False
    if fam == "A_biinf" and orient == "linear-right":
        # arrows i -> i+1 with i unbounded below: every vertex ends one
        return False
    return True


def is_strongly_locally_finite(spec):
    """True iff every projective and every injective has finite length,
    i.e. finite path counts out of and into every vertex."""
    if spec.kind == "finite":
        return truncate(spec, 0).is_acyclic()
    if spec.kind == "composite":
        return truncate(spec.base, 0).is_acyclic() and not spec.rays
    fam, orient = spec.family, spec.orientation
    if fam == "cycle" or fam == "comb":
        return False
    if fam in ("A_inf", "A_biinf") and orient in ("linear-right", "linear-left"):
        return False
    return True  # the zigzag families: P and I supported on <= 3 vertices


StarReport = namedtuple("StarReport", ["is_star", "core", "rays", "witness"])


def is_star(spec):
    """Decompose into a strongly locally finite core plus rays, when possible.

    Preconditions: connected and (P1)(P2); violations raise with a witness.
    The negative case reports the obstruction: branch vertices arbitrarily
    far along an infinite path.
    """
    if not check_p2(spec):
        raise QuiverError("precondition (P2) fails: an infinite path ends at a vertex")
    window = truncate(spec, 3)
    if not window.is_connected():
        raise QuiverError("quiver is not connected")
    if spec.kind == "finite":
        return StarReport(True, spec, [], None)
    if spec.kind == "composite":
        return StarReport(True, spec.base, list(spec.rays), None)
    fam, orient = spec.family, spec.orientation
    if fam == "comb":
        return StarReport(False, None, None,
                          "branch arrows x_n -> t_n occur for every n along the ray")
    if fam == "A_inf" and orient == "linear-right":
        ray = (0, "the ray 0 -> 1 -> 2 -> ...")
        core = QuiverSpec.finite([str(0)], [])
        return StarReport(True, core, [ray], None)
    if is_strongly_locally_finite(spec):
        return StarReport(True, spec, [], None)
    return StarReport(False, None, None, "no strongly locally finite core")
