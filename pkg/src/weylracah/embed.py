"""Embedding of the pair Casimirs into the enveloping algebra of the
ambient sl realization.

Every operator here is assembled from generator images of the one-lower-rank
sl model (t_op, ttilde_op, the Euler combination) together with u-free
scalars, sums, and products. The assembly is recorded as a provenance tree,
so enveloping-algebra membership is a checkable property of the expression
rather than a side effect of operator equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .poly import Poly, Rat
from .racah import RacahContext
from .report import Report, timed_check
from .weyl import WeylOp

__all__ = [
    "EmbeddedExpr",
    "l_op",
    "l_op_pair",
    "embedded_c_pair",
    "embedded_c_set",
    "verify_embedding",
]


# -- provenance tree ---------------------------------------------------------


@dataclass(frozen=True)
class GenT:
    i: int
    j: int


@dataclass(frozen=True)
class GenTtilde:
    d: int


@dataclass(frozen=True)
class GenEuler:
    pass


@dataclass(frozen=True)
class ScalarNode:
    value: Poly


@dataclass(frozen=True)
class SumNode:
    parts: tuple


@dataclass(frozen=True)
class ProdNode:
    parts: tuple


def eval_tree(ctx: RacahContext, node) -> WeylOp:
    """Rebuild the operator from generator images only.

    The Euler leaf expands through -(k + sum_d ttilde_d)/m, so the result
    witnesses membership in the enveloping algebra of the sl model.
    """
    dm = ctx.dm
    if isinstance(node, GenT):
        return dm.t_op(node.i, node.j)
    if isinstance(node, GenTtilde):
        return dm.ttilde_op(node.d)
    if isinstance(node, GenEuler):
        total = WeylOp.from_poly(ctx.ring.k())
        for d in range(1, dm.m):
            total = total + dm.ttilde_op(d)
        return Rat(-1, dm.m) * total
    if isinstance(node, ScalarNode):
        return WeylOp.from_poly(node.value)
    if isinstance(node, SumNode):
        out = WeylOp.zero(ctx.ring)
        for part in node.parts:
            out = out + eval_tree(ctx, part)
        return out
    if isinstance(node, ProdNode):
        out = WeylOp.identity(ctx.ring)
        for part in node.parts:
            out = out * eval_tree(ctx, part)
        return out
    raise TypeError(f"not a provenance node: {node!r}")


def eval_tree_matrix(ctx: RacahContext, node, basis, assignment, cache=None):
    """Evaluate the provenance tree in the exact matrix model.

    Generator leaves become their matrices on the bounded-degree basis and
    products become matrix products, bypassing symbolic composition
    entirely.
    """
    from .repmat import OpMatrix, to_matrix

    if cache is None:
        cache = {}

    def rec(nd):
        if isinstance(nd, (GenT, GenTtilde, GenEuler)):
            hit = cache.get(nd)
            if hit is not None:
                return hit
            if isinstance(nd, GenEuler):
                total = OpMatrix.scalar(basis.size, Rat(assignment["k"]))
                for d in range(1, ctx.dm.m):
                    total = total + rec(GenTtilde(d))
                mat = Rat(-1, ctx.dm.m) * total
            elif isinstance(nd, GenT):
                mat = to_matrix(ctx.dm.t_op(nd.i, nd.j), basis, assignment)
            else:
                mat = to_matrix(ctx.dm.ttilde_op(nd.d), basis, assignment)
            cache[nd] = mat
            return mat
        if isinstance(nd, ScalarNode):
            return OpMatrix.scalar(basis.size, nd.value.subs(assignment).constant_value())
        if isinstance(nd, SumNode):
            parts = [rec(p) for p in nd.parts]
            out = parts[0]
            for p in parts[1:]:
                out = out + p
            return out
        if isinstance(nd, ProdNode):
            parts = [rec(p) for p in nd.parts]
            out = parts[0]
            for p in parts[1:]:
                out = out @ p
            return out
        raise TypeError(f"not a provenance node: {nd!r}")

    return rec(node)


# -- embedded expressions ----------------------------------------------------


class EmbeddedExpr:
    """A normal-form operator paired with its generator-only assembly."""

    __slots__ = ("ctx", "op", "tree")

    def __init__(self, ctx: RacahContext, op: WeylOp, tree):
        self.ctx = ctx
        self.op = op
        self.tree = tree

    @staticmethod
    def scalar(ctx: RacahContext, value) -> "EmbeddedExpr":
        p = value if isinstance(value, Poly) else ctx.ring.const(value)
        if not p.is_u_free():
            raise ValueError("embedded scalars must be free of the u variables")
        return EmbeddedExpr(ctx, WeylOp.from_poly(p), ScalarNode(p))

    @staticmethod
    def zero(ctx: RacahContext) -> "EmbeddedExpr":
        return EmbeddedExpr.scalar(ctx, 0)

    @staticmethod
    def gen_t(ctx: RacahContext, i: int, j: int) -> "EmbeddedExpr":
        return EmbeddedExpr(ctx, ctx.dm.t_op(i, j), GenT(i, j))

    @staticmethod
    def gen_ttilde(ctx: RacahContext, d: int) -> "EmbeddedExpr":
        return EmbeddedExpr(ctx, ctx.dm.ttilde_op(d), GenTtilde(d))

    @staticmethod
    def euler(ctx: RacahContext) -> "EmbeddedExpr":
        return EmbeddedExpr(ctx, ctx.dm.euler_op(), GenEuler())

    def _join(self, other) -> "EmbeddedExpr":
        if not isinstance(other, EmbeddedExpr):
            other = EmbeddedExpr.scalar(self.ctx, other)
        if other.ctx.n != self.ctx.n:
            raise ValueError("embedded expressions from different contexts")
        return other

    def __add__(self, other):
        other = self._join(other)
        return EmbeddedExpr(self.ctx, self.op + other.op, SumNode((self.tree, other.tree)))

    def __radd__(self, other):
        return self._join(other).__add__(self)

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        return self + (-self._join(other))

    def __mul__(self, other):
        other = self._join(other)
        return EmbeddedExpr(self.ctx, self.op * other.op, ProdNode((self.tree, other.tree)))

    def __rmul__(self, scalar):
        left = EmbeddedExpr.scalar(self.ctx, scalar)
        return EmbeddedExpr(
            self.ctx, left.op * self.op, ProdNode((left.tree, self.tree))
        )

    def check_tree(self) -> bool:
        """True when re-evaluating the provenance tree reproduces the operator."""
        return eval_tree(self.ctx, self.tree) == self.op

    def __repr__(self):
        return f"EmbeddedExpr({self.op!r})"


# -- generator-level building blocks ----------------------------------------


def partial_expr(ctx: RacahContext, alpha: int) -> EmbeddedExpr:
    """d_alpha as the generator -t_op(alpha, m); zero at the convention index."""
    m = ctx.dm.m
    if alpha == m:
        return EmbeddedExpr.zero(ctx)
    return (-1) * EmbeddedExpr.gen_t(ctx, alpha, m)


def u_partial_expr(ctx: RacahContext, B: Iterable[int], alpha: int) -> EmbeddedExpr:
    """u_B d_alpha from generators; zero at the convention index."""
    m = ctx.dm.m
    if alpha == m:
        return EmbeddedExpr.zero(ctx)
    b = ctx.dm._check_subset(B)
    expr = None
    if alpha in b:
        expr = (-1) * (EmbeddedExpr.gen_ttilde(ctx, alpha) + EmbeddedExpr.euler(ctx))
    for j in b:
        if j == alpha:
            continue
        piece = (-1) * EmbeddedExpr.gen_t(ctx, alpha, j)
        expr = piece if expr is None else expr + piece
    return expr


def u_euler_expr(ctx: RacahContext, B: Iterable[int]) -> EmbeddedExpr:
    """u_B times the Euler operator as a sum of raising generators."""
    b = ctx.dm._check_subset(B)
    expr = None
    for j in b:
        piece = EmbeddedExpr.gen_t(ctx, ctx.dm.m, j)
        expr = piece if expr is None else expr + piece
    return expr


# -- the six L operators -----------------------------------------------------


def l_op(ctx: RacahContext, tag: str, j: int) -> EmbeddedExpr:
    """The four single-index building blocks of the embedded Casimirs.

    With B = {1..j-2}: L1 = (1-u_B)(d_{j-2} - d_{j-1}), L2 = (1-u_B) Euler,
    L3 = u_B (d_{j-2} - d_{j-1}), L4 = u_B (-d_1 + Euler).
    """
    if not 3 <= j <= ctx.n:
        raise ValueError(f"index {j} out of range 3..{ctx.n}")
    B = range(1, j - 1)
    if tag == "L1":
        bare = partial_expr(ctx, j - 2) - partial_expr(ctx, j - 1)
        return bare - (u_partial_expr(ctx, B, j - 2) - u_partial_expr(ctx, B, j - 1))
    if tag == "L2":
        return EmbeddedExpr.euler(ctx) - u_euler_expr(ctx, B)
    if tag == "L3":
        return u_partial_expr(ctx, B, j - 2) - u_partial_expr(ctx, B, j - 1)
    if tag == "L4":
        return -u_partial_expr(ctx, B, 1) + u_euler_expr(ctx, B)
    raise ValueError(f"unknown tag {tag!r}, expected L1..L4")


def l_op_pair(ctx: RacahContext, tag: str, i: int, j: int) -> EmbeddedExpr:
    """The two-index blocks: over B = {j-1..i-2},
    L5 = u_B (d_{i-2} - d_{i-1}) and L6 = u_B (d_{j-2} - d_{j-1})."""
    if not 3 <= j < i <= ctx.n:
        raise ValueError(f"need 3 <= j < i <= {ctx.n}, got ({i},{j})")
    B = range(j - 1, i - 1)
    if tag == "L5":
        return u_partial_expr(ctx, B, i - 2) - u_partial_expr(ctx, B, i - 1)
    if tag == "L6":
        return u_partial_expr(ctx, B, j - 2) - u_partial_expr(ctx, B, j - 1)
    raise ValueError(f"unknown tag {tag!r}, expected L5 or L6")


# -- embedded Casimirs -------------------------------------------------------


def embedded_c_pair(ctx: RacahContext, i: int, j: int) -> EmbeddedExpr:
    """Pair Casimir assembled inside the enveloping algebra.

    Branch by the sorted pair (lo, hi):
      (1,2):    -(-Euler - 1)(-d_1 + Euler) + 2 nu_2 (-Euler)
                - 2 nu_1 (-d_1 + Euler) + const
      (1,hi):   L1 L2 - (2 nu_hi - 1) L2 - 2 nu_1 L1 + const
      (2,hi):   -L3 L4 - (2 nu_hi - 1) L4 + 2 nu_2 L3 + const
      (lo,hi):  -L5 L6 - (2 nu_hi - 1) L6 + 2 nu_lo L5 + const
    where const = (nu_lo + nu_hi)(nu_lo + nu_hi - 1).
    """
    if i == j:
        raise ValueError("pair Casimir needs two distinct factors")
    if not (1 <= i <= ctx.n and 1 <= j <= ctx.n):
        raise ValueError(f"pair ({i},{j}) out of range 1..{ctx.n}")
    lo, hi = sorted((i, j))
    ring = ctx.ring
    const = EmbeddedExpr.scalar(ctx, (ring.nu(lo) + ring.nu(hi)) * (ring.nu(lo) + ring.nu(hi) - 1))
    if (lo, hi) == (1, 2):
        euler = EmbeddedExpr.euler(ctx)
        lower = -partial_expr(ctx, 1) + euler
        return (
            -((-euler - EmbeddedExpr.scalar(ctx, 1)) * lower)
            + (2 * ring.nu(2)) * (-euler)
            - (2 * ring.nu(1)) * lower
            + const
        )
    if lo == 1:
        l1 = l_op(ctx, "L1", hi)
        l2 = l_op(ctx, "L2", hi)
        return l1 * l2 - (2 * ring.nu(hi) - 1) * l2 - (2 * ring.nu(1)) * l1 + const
    if lo == 2:
        l3 = l_op(ctx, "L3", hi)
        l4 = l_op(ctx, "L4", hi)
        return -(l3 * l4) - (2 * ring.nu(hi) - 1) * l4 + (2 * ring.nu(2)) * l3 + const
    l5 = l_op_pair(ctx, "L5", hi, lo)
    l6 = l_op_pair(ctx, "L6", hi, lo)
    return -(l5 * l6) - (2 * ring.nu(hi) - 1) * l6 + (2 * ring.nu(lo)) * l5 + const


def embedded_c_set(ctx: RacahContext, A: Iterable[int]) -> EmbeddedExpr:
    """Subset Casimir assembled from embedded pairs and scalar singletons."""
    a = ctx.subset_key(A)
    if len(a) == 1:
        nu = ctx.ring.nu(a[0])
        return EmbeddedExpr.scalar(ctx, nu * (nu - 1))
    expr = None
    for i, j in combinations(a, 2):
        piece = embedded_c_pair(ctx, i, j)
        expr = piece if expr is None else expr + piece
    if len(a) > 2:
        singles = None
        for i in a:
            nu = ctx.ring.nu(i)
            piece = EmbeddedExpr.scalar(ctx, nu * (nu - 1))
            singles = piece if singles is None else singles + piece
        expr = expr - (len(a) - 2) * singles
    return expr


# -- verification ------------------------------------------------------------


def _rewriting_checks(ctx: RacahContext, report: Report) -> None:
    """The normal-ordering steps that justify each embedded product form."""
    ring = ctx.ring
    k = ring.k()
    eu = ctx.euler_sum()
    euler = ctx.dm.euler_op()
    for j in range(3, ctx.n + 1):
        u_b = ctx.u_range(1, j - 2)
        front = ring.one() - u_b
        step = ctx.partial_or_zero(j - 2) - ctx.partial_or_zero(j - 1)
        l1 = l_op(ctx, "L1", j)
        l2 = l_op(ctx, "L2", j)
        l3 = l_op(ctx, "L3", j)
        l4 = l_op(ctx, "L4", j)
        lower = -ctx.partial_or_zero(1) + euler

        report.add(
            timed_check(
                f"rw1a({j})",
                "degree factor commutes through the step derivative",
                lambda front=front, step=step: (
                    -(front**2 * ((WeylOp.from_poly(k - 1) - eu) * step)),
                    front**2 * (step * euler),
                ),
            )
        )
        report.add(
            timed_check(
                f"rw1b({j})",
                "first term splits as L1 L2 + L2",
                lambda front=front, step=step, l1=l1, l2=l2: (
                    front**2 * (step * euler),
                    l1.op * l2.op + l2.op,
                ),
            )
        )
        report.add(
            timed_check(
                f"rw2a({j})",
                "lowering factor commutes through the step derivative",
                lambda u_b=u_b, step=step, lower=lower: (
                    -(u_b**2 * ((WeylOp.from_poly(1 - k) - ctx.partial_or_zero(1) + eu) * step)),
                    -(u_b**2 * (step * lower)),
                ),
            )
        )
        report.add(
            timed_check(
                f"rw2b({j})",
                "first term splits as -L3 L4 + L4",
                lambda u_b=u_b, step=step, lower=lower, l3=l3, l4=l4: (
                    -(u_b**2 * (step * lower)),
                    -(l3.op * l4.op) + l4.op,
                ),
            )
        )
    for lo, hi in combinations(range(3, ctx.n + 1), 2):
        u_b = ctx.u_range(lo - 1, hi - 2)
        step_hi = ctx.partial_or_zero(hi - 2) - ctx.partial_or_zero(hi - 1)
        step_lo = ctx.partial_or_zero(lo - 2) - ctx.partial_or_zero(lo - 1)
        l5 = l_op_pair(ctx, "L5", hi, lo)
        l6 = l_op_pair(ctx, "L6", hi, lo)
        report.add(
            timed_check(
                f"rw3({lo},{hi})",
                "first term splits as -L5 L6 + L6",
                lambda u_b=u_b, step_hi=step_hi, step_lo=step_lo, l5=l5, l6=l6: (
                    -(u_b**2 * (step_hi * step_lo)),
                    -(l5.op * l6.op) + l6.op,
                ),
            )
        )


def verify_embedding(ctx: RacahContext) -> Report:
    """Certify embedded = direct for every pair, plus the rewriting steps."""
    report = Report("embedding", {"n": ctx.n, "k_mode": "symbolic"})
    _rewriting_checks(ctx, report)
    for lo in range(1, ctx.n + 1):
        for hi in range(lo + 1, ctx.n + 1):
            expr = embedded_c_pair(ctx, hi, lo)
            report.add(
                timed_check(
                    f"prov({lo},{hi})",
                    "provenance tree reproduces the stored operator",
                    lambda expr=expr: (eval_tree(ctx, expr.tree), expr.op),
                )
            )
            report.add(
                timed_check(
                    f"C({lo},{hi})",
                    "embedded pair Casimir equals the direct realization",
                    lambda expr=expr, lo=lo, hi=hi: (expr.op, ctx.c_pair(lo, hi)),
                )
            )
    return report
