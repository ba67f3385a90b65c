"""Finite and rational Sigma-trees, cutting, and the raw order by cutting.

Finite trees are inductive values built from :class:`Op` and :class:`Var`.
Rational (regular) trees are pointed finite state systems,
:class:`RationalTree`, whose labels point at successor states by index.
Equality of rational trees is equality of their unfoldings (bisimilarity),
decided by partition refinement in :func:`minimize`.

Depth convention: the root has depth 0, a root-only tree has height 0, and
``cut(t, n, p)`` keeps depths ``0..n-1`` and relabels every node at depth
``n`` by the leaf ``p``.
"""
from __future__ import annotations

import math
from collections import deque
from typing import Callable, Iterable, NamedTuple, Sequence, Union

from .errors import BadCutPoint, InfiniteTree, NotAChain, NotRational

# normalize(head, args) -> (head, args); args are ints whose order is meaningful
Normalizer = Callable[[str, tuple], tuple]


def identity_normalize(head, args):
    return head, args


class Op:
    """Inner node (or nullary constant) ``name(children...)``."""

    __slots__ = ("name", "children", "height", "_hash")

    def __init__(self, name: str, children: Iterable["FiniteTree"] = ()):
        children = tuple(children)
        self.name = name
        self.children = children
        self.height = 1 + max(c.height for c in children) if children else 0
        self._hash = hash((name, children))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Op)
            and self._hash == other._hash
            and self.name == other.name
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.children:
            return f"Op({self.name!r})"
        return f"Op({self.name!r}, {list(self.children)!r})"

    @property
    def is_leaf(self):
        return not self.children


class Var:
    __slots__ = ("name", "_hash")

    height = 0
    children = ()
    is_leaf = True

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return isinstance(other, Var) and self.name == other.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"


FiniteTree = Union[Op, Var]
# the relabelling leaf used by cutting: a variable or a nullary operation
CutPoint = Union[Op, Var]


class Label(NamedTuple):
    head: str
    args: tuple = ()
    is_var: bool = False


def leaf_label(p: CutPoint) -> Label:
    if isinstance(p, Var):
        return Label(p.name, (), True)
    if isinstance(p, Op) and not p.children:
        return Label(p.name, ())
    raise BadCutPoint(f"cut point must be a leaf, got {p!r}")


class RationalTree:
    """A pointed finite state system; state ``i`` carries ``labels[i]``.

    Two instances are equal when they present the same (possibly infinite)
    tree.  ``from_labels`` drops unreachable states and renumbers the rest in
    breadth-first order from the root.
    """

    __slots__ = ("labels", "root", "_canon")

    def __init__(self, labels: Sequence[Label], root: int = 0):
        labels = tuple(Label(*lab) for lab in labels)
        n = len(labels)
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range for {n} states")
        for lab in labels:
            if lab.is_var and lab.args:
                raise ValueError(f"variable {lab.head} with successors")
            for a in lab.args:
                if not 0 <= a < n:
                    raise ValueError(f"successor {a} out of range")
        self.labels = labels
        self.root = root
        self._canon = None

    @classmethod
    def from_labels(cls, labels: Sequence[Label], root: int = 0) -> "RationalTree":
        order = _bfs(labels, root)
        renum = {s: i for i, s in enumerate(order)}
        out = []
        for s in order:
            lab = labels[s]
            out.append(Label(lab.head, tuple(renum[a] for a in lab.args), lab.is_var))
        return cls(out, 0)

    @classmethod
    def _trusted(cls, labels: tuple, root: int = 0) -> "RationalTree":
        obj = cls.__new__(cls)
        obj.labels = labels
        obj.root = root
        obj._canon = None
        return obj

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"RationalTree({list(self.labels)!r}, root={self.root})"

    def reachable(self) -> list[int]:
        return _bfs(self.labels, self.root)

    def gc(self) -> "RationalTree":
        return RationalTree.from_labels(self.labels, self.root)

    def rooted_at(self, state: int) -> "RationalTree":
        return RationalTree.from_labels(self.labels, state)

    def is_finite(self) -> bool:
        return self.root in _finite_states(self.labels, self.reachable())[0]

    @property
    def height(self):
        fin, heights = _finite_states(self.labels, self.reachable())
        return heights[self.root] if self.root in fin else math.inf

    def canonical(self) -> "RationalTree":
        """Minimal breadth-first-numbered system presenting the same tree."""
        if self._canon is None:
            self._canon = minimize(self)
        return self._canon

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RationalTree):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.labels == b.labels

    def __hash__(self):
        return hash(self.canonical().labels)


Tree = Union[Op, Var, RationalTree]


def _bfs(labels, root) -> list[int]:
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for a in labels[s].args:
            if a not in seen:
                seen.add(a)
                order.append(a)
                queue.append(a)
    return order


def _finite_states(labels, states):
    """States whose unfolding is finite, with their heights.

    Peels states bottom-up: a state is finite once every successor is.  The
    peel order is returned implicitly through dict insertion order.
    """
    states = list(states)
    preds: dict[int, list[int]] = {s: [] for s in states}
    pending: dict[int, int] = {}
    ready = []
    for s in states:
        args = labels[s].args
        pending[s] = len(args)
        for a in args:
            preds[a].append(s)
        if not args:
            ready.append(s)
    heights: dict[int, int] = {}
    while ready:
        s = ready.pop()
        args = labels[s].args
        heights[s] = 1 + max(heights[a] for a in args) if args else 0
        for q in preds[s]:
            pending[q] -= 1
            if pending[q] == 0:
                ready.append(q)
    return heights.keys(), heights


# -- conversions -----------------------------------------------------------


def as_system(t: Tree) -> RationalTree:
    """View any tree as a state system (finite trees are hash-consed)."""
    if isinstance(t, RationalTree):
        return t
    labels: list[Label] = []
    index: dict[Label, int] = {}
    memo: dict[int, int] = {}

    def visit(node) -> int:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            lab = Label(node.name, (), True)
        elif isinstance(node, Op):
            lab = Label(node.name, tuple(visit(c) for c in node.children))
        else:
            raise TypeError(f"not a tree: {node!r}")
        state = index.get(lab)
        if state is None:
            state = index[lab] = len(labels)
            labels.append(lab)
        memo[key] = state
        return state

    root = visit(t)
    return RationalTree.from_labels(labels, root)


def to_finite(t: Tree) -> FiniteTree:
    if isinstance(t, (Op, Var)):
        return t
    finite, _ = _finite_states(t.labels, t.reachable())
    if t.root not in finite:
        raise InfiniteTree("a cycle is reachable from the root")
    memo: dict[int, FiniteTree] = {}

    def build(s):
        if s not in memo:
            lab = t.labels[s]
            memo[s] = Var(lab.head) if lab.is_var else Op(lab.head, [build(a) for a in lab.args])
        return memo[s]

    return build(t.root)


def is_finite(t: Tree) -> bool:
    return not isinstance(t, RationalTree) or t.is_finite()


def height(t: Tree):
    """Height of a finite tree; ``math.inf`` for infinite ones."""
    return t.height


def tree_equal(s: Tree, t: Tree) -> bool:
    if isinstance(s, RationalTree) or isinstance(t, RationalTree):
        return as_system(s) == as_system(t)
    return s == t


# -- cutting ---------------------------------------------------------------


def cut(t: Tree, n: int, p: CutPoint) -> FiniteTree:
    """Keep depths ``< n`` and replace every node at depth ``n`` by ``p``."""
    if n < 0:
        raise ValueError("cut depth must be non-negative")
    leaf_label(p)
    if isinstance(t, RationalTree):
        labels = t.labels
        memo: dict[tuple, FiniteTree] = {}

        def go(s, d):
            key = (s, d)
            if key in memo:
                return memo[key]
            lab = labels[s]
            if d == n:
                out = p
            elif lab.is_var:
                out = Var(lab.head)
            else:
                out = Op(lab.head, [go(a, d + 1) for a in lab.args])
            memo[key] = out
            return out

        return go(t.root, 0)

    memo2: dict[tuple, FiniteTree] = {}

    def go2(node, d):
        if d == n:
            return p
        if node.height + d < n:
            return node
        key = (id(node), d)
        if key not in memo2:
            memo2[key] = Op(node.name, [go2(c, d + 1) for c in node.children])
        return memo2[key]

    return go2(t, 0)


def leq_cut(s: Tree, s2: Tree, p: CutPoint) -> bool:
    """``s`` equals ``s2`` or is one of its cuttings."""
    if tree_equal(s, s2):
        return True
    if not is_finite(s):
        return False
    s = to_finite(s)
    return any(cut(s2, n, p) == s for n in range(s.height + 2))


# -- canonical forms -------------------------------------------------------


class Interner:
    """Hash-consing table producing canonical finite trees bottom-up.

    Children are ordered by a structural sort key (height, kind, head, child
    keys), which makes sort-based normalizers deterministic and independent
    of interning history.
    """

    def __init__(self, normalize: Normalizer = identity_normalize):
        self.normalize = normalize
        self.index: dict[Label, int] = {}
        self.labels: list[Label] = []
        self.skeys: list[tuple] = []
        self.heights: list[int] = []

    def _add(self, lab: Label, skey, h) -> int:
        i = self.index.get(lab)
        if i is None:
            i = self.index[lab] = len(self.labels)
            self.labels.append(lab)
            self.skeys.append(skey)
            self.heights.append(h)
        return i

    def var(self, name: str) -> int:
        return self._add(Label(name, (), True), (0, 0, name, ()), 0)

    def node(self, head: str, kids: Sequence[int]) -> int:
        skeys = self.skeys
        distinct = sorted(set(kids), key=skeys.__getitem__)
        local = {k: i for i, k in enumerate(distinct)}
        h, args = self.normalize(head, tuple(local[k] for k in kids))
        kids = tuple(distinct[a] for a in args)
        height = 1 + max(self.heights[k] for k in kids) if kids else 0
        skey = (height, 1, h, tuple(skeys[k] for k in kids))
        return self._add(Label(h, kids), skey, height)

    def add_tree(self, t: Tree) -> int:
        if isinstance(t, RationalTree):
            return self.add_system(t)
        memo: dict[int, int] = {}

        def visit(node):
            key = id(node)
            if key not in memo:
                if isinstance(node, Var):
                    memo[key] = self.var(node.name)
                else:
                    memo[key] = self.node(node.name, [visit(c) for c in node.children])
            return memo[key]

        return visit(t)

    def add_system(self, t: RationalTree) -> int:
        finite, _ = _finite_states(t.labels, t.reachable())
        if t.root not in finite:
            raise InfiniteTree("a cycle is reachable from the root")
        ids: dict[int, int] = {}
        for s in finite:  # children are peeled before parents
            lab = t.labels[s]
            ids[s] = self.var(lab.head) if lab.is_var else self.node(lab.head, [ids[a] for a in lab.args])
        return ids[t.root]

    def system(self, i: int) -> RationalTree:
        out = RationalTree.from_labels(self.labels, i)
        out._canon = out
        return out


def canonical_finite(t: Tree, normalize: Normalizer = identity_normalize) -> RationalTree:
    it = Interner(normalize)
    return it.system(it.add_tree(t))


def minimize(t: RationalTree, normalize: Normalizer = identity_normalize) -> RationalTree:
    """Canonical minimal system for ``t`` modulo the congruence of ``normalize``.

    Moore-style refinement: a state's signature in each round is its previous
    block followed by ``normalize(head, successor blocks)``.  Blocks keep a
    total order that depends only on the presented trees, so the resulting
    numbering is canonical.  Finite blocks are then keyed structurally (as in
    :class:`Interner`) and placed before infinite ones.
    """
    labels = t.labels
    states = t.reachable()
    if t.root in _finite_states(labels, states)[0]:
        it = Interner(normalize)
        return it.system(it.add_system(t))
    rank = {s: 0 for s in states}
    nblocks = 1
    while True:
        sigs = {}
        for s in states:
            lab = labels[s]
            if lab.is_var:
                sigs[s] = (rank[s], 0, lab.head, ())
            else:
                h, a = normalize(lab.head, tuple(rank[c] for c in lab.args))
                sigs[s] = (rank[s], 1, h, a)
        ordered = sorted(set(sigs.values()))
        if len(ordered) == nblocks:
            break
        pos = {sig: i for i, sig in enumerate(ordered)}
        rank = {s: pos[sigs[s]] for s in states}
        nblocks = len(ordered)

    # quotient graph on block ids (the current ranks)
    rep: dict[int, int] = {}
    for s in states:
        rep.setdefault(rank[s], s)
    qlabels = {}
    for b, s in rep.items():
        lab = labels[s]
        qlabels[b] = Label(lab.head, tuple(rank[c] for c in lab.args), lab.is_var)

    finite, _ = _finite_states(qlabels, list(qlabels))
    skey: dict[int, tuple] = {}
    height: dict[int, int] = {}
    normed: dict[int, Label] = {}
    for b in finite:
        lab = qlabels[b]
        if lab.is_var:
            skey[b], height[b], normed[b] = (0, 0, lab.head, ()), 0, lab
            continue
        distinct = sorted(set(lab.args), key=skey.__getitem__)
        local = {k: i for i, k in enumerate(distinct)}
        h, a = normalize(lab.head, tuple(local[k] for k in lab.args))
        kids = tuple(distinct[i] for i in a)
        height[b] = 1 + max(height[k] for k in kids) if kids else 0
        skey[b] = (height[b], 1, h, tuple(skey[k] for k in kids))
        normed[b] = Label(h, kids)

    def order_key(b):
        return (0, skey[b]) if b in skey else (1, b)

    glob = sorted(qlabels, key=order_key)
    grank = {b: i for i, b in enumerate(glob)}
    for b, lab in qlabels.items():
        if b in normed:
            continue
        h, a = normalize(lab.head, tuple(grank[c] for c in lab.args))
        normed[b] = Label(h, tuple(glob[i] for i in a))

    out = RationalTree.from_labels(normed, rank[t.root])
    out._canon = out
    return out


# -- joins of chains -------------------------------------------------------


def default_join_bound(chain: Sequence[Tree]) -> int:
    it = Interner()
    for t in chain:
        it.add_tree(t)
    return len(it.labels)


def join_chain(
    chain,
    p: CutPoint,
    bound: int | None = None,
    normalize: Normalizer | None = None,
) -> RationalTree:
    """Least upper bound of a chain of cuttings.

    ``chain`` is either a :class:`RationalTree` ``r`` standing for the chain of
    its cuttings (whose join is ``r``) or an explicit increasing list of
    trees.  For a list that does not stabilize, an eventually periodic tree
    is sought whose cuttings reproduce every supplied element.  With a
    ``normalize`` hook, comparisons are made modulo its congruence.
    """
    if isinstance(chain, RationalTree):
        return chain.gc()
    chain = list(chain)
    if not chain:
        raise NotAChain("empty chain")
    canon = _canon_fn(normalize)
    keys = [canon(t) for t in chain]
    for i in range(len(chain) - 1):
        a, b = chain[i], chain[i + 1]
        if not is_finite(a):
            raise NotAChain(f"infinite element at position {i} is not the top")
        if keys[i] == keys[i + 1]:
            continue
        h = to_finite(a).height
        if not any(canon(cut(b, n, p)) == keys[i] for n in range(h + 2)):
            raise NotAChain(f"element {i} is not below element {i + 1}")
    if len(chain) == 1 or keys[-1] == keys[-2] or not is_finite(chain[-1]):
        return keys[-1]

    top = to_finite(chain[-1])
    if bound is None:
        bound = default_join_bound([top])
    levels = [(to_finite(t).height, k) for t, k in zip(chain, keys)]
    norm = normalize or identity_normalize
    for window in range(0, min(bound, top.height - 1) + 1):
        # deep nodes of a normalized top may be collapsed, so fewer trusted
        # levels are tried as well; every candidate is checked on all levels
        for depth in range(top.height - window, 0, -1):
            cand = _fold(top, window, p, norm, depth)
            if cand is not None and all(canon(cut(cand, h, p)) == k for h, k in levels):
                return minimize(cand, norm)
    raise NotRational(f"no periodic closure with window <= {bound}")


def _canon_fn(normalize):
    if normalize is None:
        return lambda t: canonical_finite(t) if is_finite(t) else as_system(t).canonical()

    def canon(t):
        if is_finite(t):
            return canonical_finite(t, normalize)
        return minimize(as_system(t), normalize)

    return canon


def _fold(top: FiniteTree, window: int, p: CutPoint, normalize, depth: int | None = None) -> RationalTree | None:
    """Identify the nodes of ``top`` by their depth-``window`` tails.

    Nodes above ``depth`` (default ``H - window``) contribute transitions;
    nodes at ``depth`` only need their tail to exist as a state.
    """
    H = top.height
    D = H - window if depth is None else depth
    tails = Interner(normalize)
    tail_of: dict[int, int] = {}

    def tail(node):
        key = id(node)
        if key not in tail_of:
            tail_of[key] = tails.add_tree(cut(node, window, p))
        return tail_of[key]

    shape = Interner()
    shape_of: dict[int, int] = {}

    def same_shape(node):
        key = id(node)
        if key not in shape_of:
            shape_of[key] = (
                shape.var(node.name) if isinstance(node, Var)
                else shape.node(node.name, [same_shape(c) for c in node.children])
            )
        return shape_of[key]

    trans: dict[int, Label] = {}
    boundary: set[int] = set()
    frontier = [top]
    for d in range(D + 1):
        nxt = []
        for node in frontier:
            tau = tail(node)
            if d == D:
                boundary.add(tau)
                continue
            if isinstance(node, Var):
                lab = Label(node.name, (), True)
            else:
                kids = [tail(c) for c in node.children]
                distinct = sorted(set(kids), key=tails.skeys.__getitem__)
                local = {k: i for i, k in enumerate(distinct)}
                h, a = normalize(node.name, tuple(local[k] for k in kids))
                lab = Label(h, tuple(distinct[i] for i in a))
                nxt.extend(node.children)
            old = trans.get(tau)
            if old is None:
                trans[tau] = lab
            elif old != lab:
                return None
        # equal subtrees at the same depth behave identically
        uniq = {}
        for node in nxt:
            uniq.setdefault(same_shape(node), node)
        frontier = list(uniq.values())
    if not boundary <= trans.keys():
        return None
    states = sorted(trans)
    renum = {s: i for i, s in enumerate(states)}
    labels = []
    for s in states:
        lab = trans[s]
        if any(a not in renum for a in lab.args):
            return None
        labels.append(Label(lab.head, tuple(renum[a] for a in lab.args), lab.is_var))
    return RationalTree.from_labels(labels, renum[tail(top)])
