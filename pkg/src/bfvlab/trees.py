"""Decorated binary trees and homotopy transfer along a contraction.

A tree node is either ``("leaf", d)`` or ``("node", left, right, d)``; ``d``
is the decoration of the edge leaving the node towards the root.  Trees are
evaluated left to right: the leaves receive the arguments in orientation
order.

Conventions for m_T (everything lives in the L-infinity[1] picture, where
mu1 and mu2 have degree +1 and h has degree -1):

* leaf edge with decoration d:      (-h mu1)^d i
* internal edge with decoration d:  (-h mu1)^d (-h)
* root edge of nu:                  p (mu1 (-h))^d
* root edge of lambda:              (-h mu1)^d (-h)

Every subtree together with the edge above it is a degree-0 map, so moving
these blocks past arguments never costs a sign; the only signs are the Koszul
signs of the permutations in the symmetrization.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Sequence

from .graded import is_zero, koszul_sign

Node = tuple


class NotNilpotent(RuntimeError):
    pass


@dataclass(frozen=True)
class Contraction:
    """Contraction data (d, h, i, p) given by callables."""
    d: Callable
    h: Callable
    i: Callable
    p: Callable


@dataclass(frozen=True)
class TransferInput:
    """The pair (mu1_delta, mu2) of a filtered DGLA seen as an L-infinity[1] algebra.

    ``mu1`` is the perturbation D - d (None when zero).  ``degree`` returns the
    shifted degree of a homogeneous element.  ``limit`` caps the length of
    the geometric series in (-h mu1); exceeding it raises NotNilpotent.
    """
    mu2: Callable
    degree: Callable
    mu1: Callable | None = None
    limit: int = 32


# combinatorics ----------------------------------------------------------------

def encode(node: Node) -> str:
    if node[0] == "leaf":
        return f"l{node[1]}"
    a, b = sorted((encode(node[1]), encode(node[2])))
    return f"({a},{b}){node[3]}"


def leaf_count(node: Node) -> int:
    if node[0] == "leaf":
        return 1
    return leaf_count(node[1]) + leaf_count(node[2])


def vertex_count(node: Node) -> int:
    if node[0] == "leaf":
        return 0
    return 1 + vertex_count(node[1]) + vertex_count(node[2])


def total_decoration(node: Node) -> int:
    if node[0] == "leaf":
        return node[1]
    return node[3] + total_decoration(node[1]) + total_decoration(node[2])


def automorphisms(node: Node) -> int:
    if node[0] == "leaf":
        return 1
    left, right = node[1], node[2]
    n = automorphisms(left) * automorphisms(right)
    return 2 * n if encode(left) == encode(right) else n


def canonical(node: Node) -> Node:
    """Orientation with children sorted by encoding."""
    if node[0] == "leaf":
        return node
    a, b = canonical(node[1]), canonical(node[2])
    if encode(a) > encode(b):
        a, b = b, a
    return ("node", a, b, node[3])


@dataclass(frozen=True)
class DecoratedTree:
    root: Node

    @property
    def encoding(self) -> str:
        return encode(self.root)

    @property
    def leaves(self) -> int:
        return leaf_count(self.root)

    @property
    def vertices(self) -> int:
        return vertex_count(self.root)

    @property
    def decoration(self) -> int:
        return total_decoration(self.root)

    @property
    def aut(self) -> int:
        return automorphisms(self.root)

    def __str__(self):
        return self.encoding


@lru_cache(maxsize=None)
def _subtrees(n: int, d: int) -> tuple[Node, ...]:
    """Canonical subtrees with n leaves and total decoration exactly d (edge above included)."""
    if n == 1:
        return (("leaf", d),)
    out = {}
    for top in range(d + 1):
        rest = d - top
        for n1 in range(1, n // 2 + 1):
            n2 = n - n1
            for d1 in range(rest + 1):
                d2 = rest - d1
                for a in _subtrees(n1, d1):
                    for b in _subtrees(n2, d2):
                        t = canonical(("node", a, b, top))
                        out.setdefault(encode(t), t)
    return tuple(out[k] for k in sorted(out))


def enumerate_trees(n: int, max_total_decoration: int) -> list[DecoratedTree]:
    """One tree per unoriented decorated class, sorted by (decoration, encoding)."""
    if n < 1:
        raise ValueError("a tree needs at least one leaf")
    out = []
    for d in range(max_total_decoration + 1):
        if n == 1 and d == 0:
            continue
        out.extend(DecoratedTree(t) for t in _subtrees(n, d))
    return out


def shapes(n: int) -> list[DecoratedTree]:
    """Undecorated trees with n >= 2 leaves."""
    return [DecoratedTree(t) for t in _subtrees(n, 0)]


def dump(trees: Sequence[DecoratedTree]) -> str:
    return "".join(f"{t.encoding}\n" for t in trees)


# evaluation -------------------------------------------------------------------

def _edge_steps(C: Contraction, L: TransferInput, x, d: int):
    for _ in range(d):
        x = -C.h(L.mu1(x))
    return x


def _eval_sub(node: Node, args, pos: int, C: Contraction, L: TransferInput):
    """Value of a subtree including the edge above it, and the next argument position.

    The value is None when decorations appear without a perturbation.
    """
    if node[0] == "leaf":
        if node[1] and L.mu1 is None:
            return None, pos + 1
        return _edge_steps(C, L, C.i(args[pos]), node[1]), pos + 1
    y, pos = _eval_vertex(node, args, pos, C, L)
    if y is None or (node[3] and L.mu1 is None):
        return None, pos
    return _edge_steps(C, L, -C.h(y), node[3]), pos


def _eval_vertex(node, args, pos, C, L):
    a, pos = _eval_sub(node[1], args, pos, C, L)
    b, pos = _eval_sub(node[2], args, pos, C, L)
    if a is None or b is None:
        return None, pos
    return L.mu2(a, b), pos


def eval_tree(T: DecoratedTree | Node, C: Contraction, L: TransferInput, args, root: str = "p"):
    """m_T (root="p") or n_T (root="h") on the given arguments, no symmetrization.

    Returns None when the tree is zero because it carries decorations but
    there is no perturbation.
    """
    node = T.root if isinstance(T, DecoratedTree) else T
    if leaf_count(node) != len(args):
        raise ValueError(f"tree with {leaf_count(node)} leaves given {len(args)} arguments")
    if node[0] == "leaf":
        d = node[1]
        if d < 1:
            raise ValueError("the one-leaf tree needs a positive decoration")
        if L.mu1 is None:
            return None
        x = C.i(args[0])
        if root == "p":
            x = L.mu1(x)
            for _ in range(d - 1):
                x = L.mu1(-C.h(x))
            return C.p(x)
        return _edge_steps(C, L, x, d)
    y, _ = _eval_vertex(node, args, 0, C, L)
    if y is None:
        return None
    if root == "p":
        if node[3] and L.mu1 is None:
            return None
        for _ in range(node[3]):
            y = L.mu1(-C.h(y))
        return C.p(y)
    if node[3] and L.mu1 is None:
        return None
    return _edge_steps(C, L, -C.h(y), node[3])


def eval_tree_nu(T, C, L, args):
    return eval_tree(T, C, L, args, root="p")


def eval_tree_lambda(T, C, L, args):
    return eval_tree(T, C, L, args, root="h")


def _symmetrize(fn, args, degree, weight):
    degs = [degree(a) for a in args]
    total = None
    for perm in permutations(range(len(args))):
        val = fn([args[k] for k in perm])
        if val is None or is_zero(val):
            continue
        sign = koszul_sign(perm, degs)
        val = val if sign > 0 else -val
        total = val if total is None else total + val
    if total is None:
        return None
    return weight * total


def symmetrized(T, C, L, args, root="p"):
    """sum over permutations sigma of eps(sigma) m_T(x_sigma) / |Aut T|."""
    T = T if isinstance(T, DecoratedTree) else DecoratedTree(T)
    return _symmetrize(lambda xs: eval_tree(T, C, L, xs, root), args, L.degree,
                       Fraction(1, T.aut))


# dressed evaluation: all decorations of each edge summed at once ----------------

def _series(step, x, limit):
    total, term = x, x
    for _ in range(limit):
        term = step(term)
        if is_zero(term):
            return total
        total = total + term
    raise NotNilpotent(f"series did not terminate after {limit} steps")


def _dressed_leaf(C, L, x):
    x = C.i(x)
    if L.mu1 is None:
        return x
    return _series(lambda v: -C.h(L.mu1(v)), x, L.limit)


def _dressed_edge(C, L, y):
    y = -C.h(y)
    if L.mu1 is None or is_zero(y):
        return y
    return _series(lambda v: -C.h(L.mu1(v)), y, L.limit)


def _dressed_sub(node, args, pos, C, L):
    if node[0] == "leaf":
        return _dressed_leaf(C, L, args[pos]), pos + 1
    a, pos = _dressed_sub(node[1], args, pos, C, L)
    b, pos = _dressed_sub(node[2], args, pos, C, L)
    return _dressed_edge(C, L, L.mu2(a, b)), pos


def _dressed_tree(node, C, L, args, root):
    a, pos = _dressed_sub(node[1], args, 0, C, L)
    b, _ = _dressed_sub(node[2], args, pos, C, L)
    y = L.mu2(a, b)
    if root == "h":
        return _dressed_edge(C, L, y)
    if L.mu1 is not None and not is_zero(y):
        y = _series(lambda v: L.mu1(-C.h(v)), y, L.limit)
    return C.p(y)


def _sum_k(C, L, k, args, root, max_decoration):
    if len(args) != k:
        raise ValueError(f"arity {k} given {len(args)} arguments")
    if max_decoration is not None:
        total = None
        for T in enumerate_trees(k, max_decoration):
            v = symmetrized(T, C, L, args, root)
            if v is not None:
                total = v if total is None else total + v
        return total
    if k == 1:
        if root == "h":
            return _dressed_leaf(C, L, args[0])
        if L.mu1 is None:
            return None
        return C.p(L.mu1(_dressed_leaf(C, L, args[0])))
    total = None
    for T in shapes(k):
        v = _symmetrize(lambda xs: _dressed_tree(T.root, C, L, xs, root), args, L.degree,
                        Fraction(1, T.aut))
        if v is not None:
            total = v if total is None else total + v
    return total


def nu_k(C: Contraction, L: TransferInput, k: int, args, max_decoration: int | None = None):
    """Transferred operation nu^k; None stands for zero.

    With ``max_decoration`` the sum runs over the explicit decorated trees of
    total decoration at most that bound; without it, each edge carries the
    full geometric series in (-h mu1), which is the same sum when the
    perturbation is nilpotent.
    """
    return _sum_k(C, L, k, args, "p", max_decoration)


def lambda_k(C: Contraction, L: TransferInput, k: int, args, max_decoration: int | None = None):
    """Component lambda^k of the transfer morphism; lambda^1 includes i itself."""
    v = _sum_k(C, L, k, args, "h", max_decoration)
    if k == 1 and max_decoration is not None:
        base = C.i(args[0])
        v = base if v is None else v + base
    return v


def push_mc(C: Contraction, L: TransferInput, a, max_vertices: int):
    """sum_k lambda^k(a, ..., a) / k! for an element a of shifted degree 0.

    Only undecorated trees are used, so this requires mu1 = None.  The sum
    over all leaf orders collapses to one evaluation per tree weighted by
    1/|Aut T|.
    """
    if L.mu1 is not None:
        raise ValueError("push_mc handles unperturbed contractions only")
    total = C.i(a)
    for v in range(1, max_vertices + 1):
        for T in shapes(v + 1):
            val = _dressed_tree(T.root, C, L, [a] * (v + 1), "h")
            if not is_zero(val):
                total = total + Fraction(1, T.aut) * val
    return total


def transfer_complex(C: Contraction, D_R: Callable, limit: int = 32):
    """Induced differential p D_R sum(-h D_R)^k i and the chain map sum(-h D_R)^k i."""
    def itilde(x):
        return _series(lambda v: -C.h(D_R(v)), C.i(x), limit)

    def induced(x):
        return C.p(D_R(itilde(x)))

    return induced, itilde


def check_contraction(C: Contraction, big: Sequence, small: Sequence = ()) -> list[str]:
    """Names of the contraction identities that fail on the given samples."""
    bad = []

    def fail(name):
        if name not in bad:
            bad.append(name)

    for x in big:
        if not is_zero(C.d(C.h(x)) + C.h(C.d(x)) - (x - C.i(C.p(x)))):
            fail("dh + hd = id - ip")
        if not is_zero(C.h(C.h(x))):
            fail("h h = 0")
        if not is_zero(C.p(C.h(x))):
            fail("p h = 0")
        if not is_zero(C.p(C.d(x))):
            fail("p d = 0")
        if not is_zero(C.d(C.d(x))):
            fail("d d = 0")
    for y in small:
        if not is_zero(C.p(C.i(y)) - y):
            fail("p i = id")
        if not is_zero(C.h(C.i(y))):
            fail("h i = 0")
        if not is_zero(C.d(C.i(y))):
            fail("d i = 0")
    return bad

