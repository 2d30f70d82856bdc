"""Differential realization of sl_m in m-1 variables.

The generators act on polynomials in u1..u_{m-1} and carry a deformation
parameter k. The abstract side is the trace-zero matrix algebra with basis
E_ij (i != j) and H_d = E_dd - E_mm; its bracket is computed from matrix
units rather than hard-coded tables.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .poly import Poly, Rat, Ring
from .report import Report, timed_check
from .weyl import WeylOp

__all__ = [
    "DmContext",
    "SlElement",
    "nonempty_subsets",
    "check_sl_homomorphism",
    "check_lemma1",
    "check_generator_membership",
]


def nonempty_subsets(limit: int) -> list[tuple[int, ...]]:
    """Non-empty subsets of {1..limit}, ordered by size then lexicographically."""
    universe = range(1, limit + 1)
    out: list[tuple[int, ...]] = []
    for size in range(1, limit + 1):
        out.extend(combinations(universe, size))
    return out


class SlElement:
    """Rational combination of the trace-zero basis E_ij, H_d = E_dd - E_mm."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: dict):
        self.m = m
        self.coeffs = {key: Rat(c) for key, c in coeffs.items() if c}

    @staticmethod
    def zero(m: int) -> "SlElement":
        return SlElement(m, {})

    @staticmethod
    def E(m: int, i: int, j: int) -> "SlElement":
        if i == j or not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"E({i},{j}) is not a basis element of sl_{m}")
        return SlElement(m, {("E", i, j): Rat(1)})

    @staticmethod
    def H(m: int, d: int) -> "SlElement":
        if not 1 <= d <= m - 1:
            raise ValueError(f"H({d}) out of range 1..{m - 1}")
        return SlElement(m, {("H", d): Rat(1)})

    @staticmethod
    def basis(m: int) -> list["SlElement"]:
        """The m^2 - 1 basis elements in deterministic order."""
        elems = [
            SlElement.E(m, i, j)
            for i in range(1, m + 1)
            for j in range(1, m + 1)
            if i != j
        ]
        elems.extend(SlElement.H(m, d) for d in range(1, m))
        return elems

    def label(self) -> str:
        parts = []
        for key in sorted(self.coeffs, key=lambda t: (t[0], t[1:])):
            c = self.coeffs[key]
            name = f"E({key[1]},{key[2]})" if key[0] == "E" else f"H({key[1]})"
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts) if parts else "0"

    def _check_rank(self, other: "SlElement"):
        if self.m != other.m:
            raise ValueError("sl elements of different rank")

    def __eq__(self, other):
        return (
            isinstance(other, SlElement)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "SlElement") -> "SlElement":
        self._check_rank(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, Rat(0)) + c
        return SlElement(self.m, out)

    def __neg__(self):
        return SlElement(self.m, {key: -c for key, c in self.coeffs.items()})

    def __sub__(self, other: "SlElement") -> "SlElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "SlElement":
        s = Rat(scalar)
        return SlElement(self.m, {key: s * c for key, c in self.coeffs.items()})

    def to_matrix(self) -> list[list[Rat]]:
        m = self.m
        mat = [[Rat(0)] * m for _ in range(m)]
        for key, c in self.coeffs.items():
            if key[0] == "E":
                _, i, j = key
                mat[i - 1][j - 1] += c
            else:
                _, d = key
                mat[d - 1][d - 1] += c
                mat[m - 1][m - 1] -= c
        return mat

    @staticmethod
    def from_matrix(m: int, mat: Sequence[Sequence[Rat]]) -> "SlElement":
        trace = sum(mat[i][i] for i in range(m))
        if trace:
            raise ValueError("matrix is not trace-free")
        coeffs = {}
        for i in range(m):
            for j in range(m):
                if i != j and mat[i][j]:
                    coeffs[("E", i + 1, j + 1)] = mat[i][j]
        for d in range(m - 1):
            if mat[d][d]:
                coeffs[("H", d + 1)] = mat[d][d]
        return SlElement(m, coeffs)

    def bracket(self, other: "SlElement") -> "SlElement":
        """Lie bracket computed as the matrix commutator XY - YX."""
        self._check_rank(other)
        m = self.m
        x = self.to_matrix()
        y = other.to_matrix()
        out = [[Rat(0)] * m for _ in range(m)]
        for i in range(m):
            xi = x[i]
            yi = y[i]
            for l in range(m):
                acc = Rat(0)
                for j in range(m):
                    acc += xi[j] * y[j][l] - yi[j] * x[j][l]
                out[i][l] = acc
        return SlElement.from_matrix(m, out)

    def __repr__(self):
        return f"SlElement({self.label()})"


class DmContext:
    """The m-1 variable differential model of sl_m with parameter k."""

    def __init__(self, m: int, ring: Ring | None = None):
        if m < 2:
            raise ValueError("rank m must be at least 2")
        if ring is None:
            ring = Ring(m - 1, 0)
        elif ring.num_vars != m - 1:
            raise ValueError(f"ring has {ring.num_vars} variables, expected {m - 1}")
        self.m = m
        self.ring = ring
        self._euler: WeylOp | None = None
        self._gens: dict = {}

    def __repr__(self):
        return f"DmContext(m={self.m})"

    def euler_op(self) -> WeylOp:
        """sum_i u_i d_i - k, the degree operator shifted by the parameter."""
        if self._euler is None:
            ring = self.ring
            op = WeylOp.from_poly(-ring.k())
            for i in range(1, self.m):
                op = op + ring.u(i) * WeylOp.partial(ring, i)
            self._euler = op
        return self._euler

    def t_op(self, i: int, j: int) -> WeylOp:
        """Generator image of E_ij: -u_j d_i, -d_i, or u_j times the Euler operator."""
        if i == j:
            raise ValueError("diagonal index pair: use ttilde_op")
        if not (1 <= i <= self.m and 1 <= j <= self.m):
            raise ValueError(f"index pair ({i},{j}) out of range 1..{self.m}")
        key = ("t", i, j)
        op = self._gens.get(key)
        if op is None:
            ring = self.ring
            if i < self.m and j < self.m:
                op = -(ring.u(j) * WeylOp.partial(ring, i))
            elif j == self.m:
                op = -WeylOp.partial(ring, i)
            else:
                op = ring.u(j) * self.euler_op()
            self._gens[key] = op
        return op

    def ttilde_op(self, d: int) -> WeylOp:
        """Generator image of E_dd - E_mm: -u_d d_d minus the Euler operator."""
        if not 1 <= d <= self.m - 1:
            raise ValueError(f"diagonal index {d} out of range 1..{self.m - 1}")
        key = ("tt", d)
        op = self._gens.get(key)
        if op is None:
            ring = self.ring
            op = -(ring.u(d) * WeylOp.partial(ring, d)) - self.euler_op()
            self._gens[key] = op
        return op

    def sigma(self, x: SlElement) -> WeylOp:
        """Linear extension of E_ij -> t_op(i,j), H_d -> ttilde_op(d)."""
        if x.m != self.m:
            raise ValueError(f"element of sl_{x.m} fed to {self!r}")
        op = WeylOp.zero(self.ring)
        for key in sorted(x.coeffs, key=lambda t: (t[0], t[1:])):
            c = x.coeffs[key]
            gen = self.t_op(key[1], key[2]) if key[0] == "E" else self.ttilde_op(key[1])
            op = op + c * gen
        return op

    def _check_subset(self, B: Iterable[int]) -> tuple[int, ...]:
        b = tuple(sorted(set(B)))
        if not b:
            raise ValueError("empty variable subset")
        if b[0] < 1 or b[-1] > self.m - 1:
            raise ValueError(f"subset {b} not contained in 1..{self.m - 1}")
        return b

    def u_sum(self, B: Iterable[int]) -> Poly:
        return self.ring.u_sum(self._check_subset(B))

    def u_set_euler(self, B: Iterable[int]) -> WeylOp:
        """u_B times the Euler operator, assembled from generators alone."""
        b = self._check_subset(B)
        op = WeylOp.zero(self.ring)
        for j in b:
            op = op + self.t_op(self.m, j)
        return op

    def u_set_partial(self, B: Iterable[int], alpha: int) -> WeylOp:
        """u_B d_alpha assembled from generators alone.

        Equals -delta(alpha in B) (ttilde_alpha + Euler) minus the sum of
        t_op(alpha, j) over j in B other than alpha.
        """
        b = self._check_subset(B)
        if not 1 <= alpha <= self.m - 1:
            raise ValueError(f"derivative index {alpha} out of range 1..{self.m - 1}")
        op = WeylOp.zero(self.ring)
        if alpha in b:
            op = op - (self.ttilde_op(alpha) + self.euler_op())
        for j in b:
            if j != alpha:
                op = op - self.t_op(alpha, j)
        return op


def check_sl_homomorphism(ctx: DmContext) -> Report:
    """Verify [sigma(x), sigma(y)] = sigma([x, y]) on all ordered basis pairs."""
    basis = SlElement.basis(ctx.m)
    report = Report("sln", {"m": ctx.m, "k_mode": "symbolic"})
    images = [ctx.sigma(x) for x in basis]
    for x, sx in zip(basis, images):
        for y, sy in zip(basis, images):
            report.add(
                timed_check(
                    f"[{x.label()},{y.label()}]",
                    "commutator of images matches image of bracket",
                    lambda sx=sx, sy=sy, x=x, y=y: (
                        sx.commutator(sy),
                        ctx.sigma(x.bracket(y)),
                    ),
                )
            )
    return report


def check_lemma1(ctx: DmContext) -> Report:
    """Commutators of u_B * Euler and of plain u_A against each derivative."""
    report = Report("lemma1", {"m": ctx.m, "k_mode": "symbolic"})
    ring = ctx.ring
    euler = ctx.euler_op()
    subsets = nonempty_subsets(ctx.m - 1)
    for B in subsets:
        u_b = ring.u_sum(B)
        ub_euler = u_b * euler
        for alpha in range(1, ctx.m):
            d_alpha = WeylOp.partial(ring, alpha)
            delta = 1 if alpha in B else 0

            def build(ub_euler=ub_euler, d_alpha=d_alpha, u_b=u_b, delta=delta):
                lhs = ub_euler.commutator(d_alpha)
                rhs = -(u_b * d_alpha) - delta * euler
                return lhs, rhs

            report.add(
                timed_check(
                    f"[uE{set(B)},d{alpha}]",
                    "raising commutator reduces to -u_B d_alpha - delta Euler",
                    build,
                )
            )
    for A in subsets:
        u_a = WeylOp.from_poly(ring.u_sum(A))
        for alpha in range(1, ctx.m):
            delta = 1 if alpha in A else 0

            def build(u_a=u_a, alpha=alpha, delta=delta):
                lhs = u_a.commutator(WeylOp.partial(ring, alpha))
                rhs = WeylOp.scalar(ring, -delta)
                return lhs, rhs

            report.add(
                timed_check(
                    f"[u{set(A)},d{alpha}]",
                    "multiplication operator commutator is -delta",
                    build,
                )
            )
    return report


def check_generator_membership(ctx: DmContext) -> Report:
    """Generator-only assemblies reproduce u_B Euler, u_B d_alpha, and Euler."""
    report = Report("membership", {"m": ctx.m, "k_mode": "symbolic"})
    ring = ctx.ring
    euler = ctx.euler_op()

    def build_euler():
        total = WeylOp.from_poly(ring.k())
        for d in range(1, ctx.m):
            total = total + ctx.ttilde_op(d)
        return euler, Rat(-1, ctx.m) * total

    report.add(
        timed_check(
            "euler",
            "Euler operator equals -(k + sum ttilde)/m",
            build_euler,
        )
    )
    for B in nonempty_subsets(ctx.m - 1):
        u_b = ring.u_sum(B)
        report.add(
            timed_check(
                f"uE{set(B)}",
                "generator sum equals u_B composed with Euler",
                lambda B=B, u_b=u_b: (ctx.u_set_euler(B), u_b * euler),
            )
        )
        for alpha in range(1, ctx.m):
            report.add(
                timed_check(
                    f"uD{set(B)},d{alpha}",
                    "generator assembly equals u_B composed with d_alpha",
                    lambda B=B, u_b=u_b, alpha=alpha: (
                        ctx.u_set_partial(B, alpha),
                        u_b * WeylOp.partial(ring, alpha),
                    ),
                )
            )
    return report
